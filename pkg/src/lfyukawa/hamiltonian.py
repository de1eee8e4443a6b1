"""Light-front charges and the four-part Yukawa Hamiltonian as Pauli sums.

``H = H_M + H_V + H_S + H_F``: a mass/number part, a cubic vertex part and two
quartic parts (seagull and fork).  Every interaction coefficient is a momentum
bracket evaluated explicitly, so only momentum-conserving index tuples emit
terms and the assembled operator commutes with both charges by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fock import ModeConfig, QubitLayout
from .pauli import PauliSum, boson_ladder, fermion_ladder, product

__all__ = [
    "ModelParams",
    "PARTS",
    "bracket",
    "self_inertia",
    "build_part",
    "build_h",
    "build_charge",
]

TWO_PI = 2.0 * math.pi
PARTS = ("HM", "HV", "HS", "HF")


@dataclass(frozen=True)
class ModelParams:
    """Physics configuration, masses in pion-mass units.

    ``coupling`` is the bare lambda; the vertex strength is g = lambda/sqrt(4*pi).
    ``box_length`` defaults to 2*pi (in 1/m_pi) so the assembled operator is the
    light-front time-evolution generator itself; other values rescale evolution
    time by box_length/(2*pi).  ``inertia_cutoff`` bounds the self-induced
    inertia sums and must not be below the largest mode number in play.
    """

    fermion_mass: float = 6.7
    boson_mass: float = 1.0
    coupling: float = 1.0
    inertia_cutoff: int = 2048
    box_length: float = TWO_PI
    include_inertias: bool = False

    @property
    def g(self) -> float:
        return self.coupling / math.sqrt(4.0 * math.pi)

    def validate(self, config: ModeConfig | None = None):
        if self.fermion_mass <= 0 or self.boson_mass <= 0:
            raise ValueError("masses must be positive (massive-field regularization)")
        if self.box_length <= 0:
            raise ValueError("box_length must be positive")
        if config is not None:
            n_max = max(config.n_fermion_modes, config.n_antifermion_modes, config.n_boson_modes)
            if self.inertia_cutoff < n_max:
                raise ValueError(
                    f"inertia_cutoff {self.inertia_cutoff} below the largest mode number {n_max}"
                )


def bracket(n: int, m: int) -> float:
    """Momentum bracket {n|m}: zero when either argument is zero, else (1/n) delta(m, -n)."""
    if n == 0 or m == 0:
        return 0.0
    return 1.0 / n if m == -n else 0.0


def self_inertia(kind: str, n: int, cutoff: int) -> float:
    """Self-induced inertia alpha_n, beta_n or gamma_n summed up to the cutoff."""
    if n < 1:
        raise ValueError("mode number must be at least 1")
    total = 0.0
    if kind == "alpha":
        for m in range(1, cutoff + 1):
            total += bracket(n - m, m - n) - bracket(n + m, -m - n)
    elif kind == "beta":
        for m in range(1, cutoff + 1):
            total += (n / m) * bracket(n - m, m - n)
    elif kind == "gamma":
        for m in range(1, cutoff + 1):
            total += (n / m) * bracket(n + m, -m - n)
    else:
        raise ValueError(f"unknown inertia kind {kind!r}")
    return total


class _Ladders:
    """Per-build cache of ladder operators and their bilinear products."""

    def __init__(self, layout: QubitLayout, cross_species_string: bool):
        self.layout = layout
        self.cross = cross_species_string
        self._ops: dict[tuple, PauliSum] = {}

    def f(self, species: str, mode: int, dagger: bool) -> PauliSum:
        key = (species, mode, dagger)
        if key not in self._ops:
            self._ops[key] = fermion_ladder(species, mode, dagger, self.layout, self.cross)
        return self._ops[key]

    def c(self, mode: int, dagger: bool) -> PauliSum:
        """c_n = a_n / sqrt(n)."""
        key = ("c", mode, dagger)
        if key not in self._ops:
            self._ops[key] = boson_ladder(mode, dagger, self.layout) * (1.0 / math.sqrt(mode))
        return self._ops[key]

    def f_bilinear(self, species: str, k_dag: int, m_ann: int) -> PauliSum:
        key = ("fb", species, k_dag, m_ann)
        if key not in self._ops:
            self._ops[key] = product(self.f(species, k_dag, True), self.f(species, m_ann, False))
        return self._ops[key]

    def c_bilinear(self, l_dag: int, n_ann: int) -> PauliSum:
        key = ("cb", l_dag, n_ann)
        if key not in self._ops:
            self._ops[key] = product(self.c(l_dag, True), self.c(n_ann, False))
        return self._ops[key]

    def c_pair(self, l: int, n: int, dagger: bool) -> PauliSum:
        key = ("cp", l, n, dagger)
        if key not in self._ops:
            self._ops[key] = product(self.c(l, dagger), self.c(n, dagger))
        return self._ops[key]


def _accumulate(acc: dict, op: PauliSum, scale: float):
    for key, c in op._terms.items():
        val = acc.get(key)
        acc[key] = c * scale if val is None else val + c * scale


def build_part(
    part: str,
    config: ModeConfig,
    params: ModelParams,
    layout: QubitLayout,
    cross_species_string: bool = True,
) -> PauliSum:
    """One of the four Hamiltonian parts as a canonical Pauli sum."""
    if part not in PARTS:
        raise ValueError(f"unknown Hamiltonian part {part!r}")
    params.validate(config)
    nf, na, nb = config.n_fermion_modes, config.n_antifermion_modes, config.n_boson_modes
    g = params.g
    mf, mb = params.fermion_mass, params.boson_mass
    lam_cut = params.inertia_cutoff
    lad = _Ladders(layout, cross_species_string)
    acc: dict = {}

    if part == "HM":
        for n in range(1, nb + 1):
            coeff = mb**2
            if params.include_inertias:
                coeff += g**2 * self_inertia("alpha", n, lam_cut)
            number = product(
                boson_ladder(n, True, layout), boson_ladder(n, False, layout)
            )
            _accumulate(acc, number, coeff / n)
        for n in range(1, nf + 1):
            coeff = mf**2
            if params.include_inertias:
                coeff += g**2 * self_inertia("beta", n, lam_cut)
            _accumulate(acc, lad.f_bilinear("fermion", n, n), coeff / n)
        for n in range(1, na + 1):
            coeff = mf**2
            if params.include_inertias:
                coeff += g**2 * self_inertia("gamma", n, lam_cut)
            _accumulate(acc, lad.f_bilinear("antifermion", n, n), coeff / n)

    elif part == "HV":
        # b_k^dag b_m c_l^dag + h.c. with m = k + l, and the d twin
        for species, n_modes in (("fermion", nf), ("antifermion", na)):
            for k in range(1, n_modes + 1):
                for l in range(1, nb + 1):
                    m = k + l
                    if m > n_modes:
                        continue
                    w = g * mf * (bracket(k + l, -m) + bracket(k, l - m))
                    if w == 0.0:
                        continue
                    _accumulate(acc, product(lad.f_bilinear(species, k, m), lad.c(l, True)), w)
                    _accumulate(acc, product(lad.f_bilinear(species, m, k), lad.c(l, False)), w)
        # pair production/annihilation: -(b_k d_m c_l^dag + d_m^dag b_k^dag c_l)
        for k in range(1, nf + 1):
            for m in range(1, na + 1):
                l = k + m
                if l > nb:
                    continue
                w = g * mf * (bracket(k - l, m) + bracket(k, m - l))
                if w == 0.0:
                    continue
                pair = product(lad.f("fermion", k, False), lad.f("antifermion", m, False))
                _accumulate(acc, product(pair, lad.c(l, True)), -w)
                pair_dag = product(lad.f("antifermion", m, True), lad.f("fermion", k, True))
                _accumulate(acc, product(pair_dag, lad.c(l, False)), -w)

    elif part == "HS":
        for species, n_modes in (("fermion", nf), ("antifermion", na)):
            for k in range(1, n_modes + 1):
                for m in range(1, n_modes + 1):
                    for l in range(1, nb + 1):
                        n = k + l - m
                        if not 1 <= n <= nb:
                            continue
                        w = g**2 * (bracket(k - n, l - m) + bracket(k + l, -m - n))
                        if w == 0.0:
                            continue
                        term = product(lad.f_bilinear(species, k, m), lad.c_bilinear(l, n))
                        _accumulate(acc, term, w)
        # d_k b_m c_l^dag c_n^dag + h.c.: pair annihilation into two bosons
        for k in range(1, na + 1):
            for m in range(1, nf + 1):
                for l in range(1, nb + 1):
                    n = k + m - l
                    if not 1 <= n <= nb:
                        continue
                    w = g**2 * bracket(l - k, n - m)
                    if w == 0.0:
                        continue
                    pair = product(lad.f("antifermion", k, False), lad.f("fermion", m, False))
                    _accumulate(acc, product(pair, lad.c_pair(l, n, True)), w)
                    pair_dag = product(lad.f("fermion", m, True), lad.f("antifermion", k, True))
                    _accumulate(acc, product(pair_dag, lad.c_pair(n, l, False)), w)

    elif part == "HF":
        # b_k^dag b_m c_l^dag c_n^dag + h.c. with m = k + l + n, and the d twin
        for species, n_modes in (("fermion", nf), ("antifermion", na)):
            for k in range(1, n_modes + 1):
                for l in range(1, nb + 1):
                    for n in range(1, nb + 1):
                        m = k + l + n
                        if m > n_modes:
                            continue
                        w = g**2 * bracket(k + l, n - m)
                        if w == 0.0:
                            continue
                        _accumulate(
                            acc,
                            product(lad.f_bilinear(species, k, m), lad.c_pair(l, n, True)),
                            w,
                        )
                        _accumulate(
                            acc,
                            product(lad.f_bilinear(species, m, k), lad.c_pair(n, l, False)),
                            w,
                        )
        # boson splitting into a pair plus a boson: b_k^dag d_m^dag c_l^dag c_n + h.c.
        for k in range(1, nf + 1):
            for m in range(1, na + 1):
                for l in range(1, nb + 1):
                    n = k + l + m
                    if n > nb:
                        continue
                    w = g**2 * (bracket(k - n, m + l) + bracket(k + l, m - n))
                    if w == 0.0:
                        continue
                    pair_dag = product(lad.f("fermion", k, True), lad.f("antifermion", m, True))
                    _accumulate(
                        acc, product(pair_dag, lad.c_bilinear(l, n)), w
                    )
                    pair = product(lad.f("antifermion", m, False), lad.f("fermion", k, False))
                    _accumulate(
                        acc, product(pair, product(lad.c(n, True), lad.c(l, False))), w
                    )

    return PauliSum(layout.total_qubits, acc).prune()


def build_h(
    config: ModeConfig,
    params: ModelParams,
    layout: QubitLayout,
    parts: tuple[str, ...] = PARTS,
    cross_species_string: bool = True,
) -> PauliSum:
    """Canonical sum of the requested Hamiltonian parts (all four by default)."""
    total = PauliSum.zero(layout.total_qubits)
    for part in parts:
        total = total + build_part(part, config, params, layout, cross_species_string)
    return total


def build_charge(which: str, config: ModeConfig, layout: QubitLayout) -> PauliSum:
    """Diagonal charge operator: harmonic resolution K or baryon number Q."""
    acc: dict = {}
    lad = _Ladders(layout, True)
    if which == "K":
        for n in range(1, config.n_boson_modes + 1):
            number = product(boson_ladder(n, True, layout), boson_ladder(n, False, layout))
            _accumulate(acc, number, float(n))
        for n in range(1, config.n_fermion_modes + 1):
            _accumulate(acc, lad.f_bilinear("fermion", n, n), float(n))
        for n in range(1, config.n_antifermion_modes + 1):
            _accumulate(acc, lad.f_bilinear("antifermion", n, n), float(n))
    elif which == "Q":
        for n in range(1, config.n_fermion_modes + 1):
            _accumulate(acc, lad.f_bilinear("fermion", n, n), 1.0)
        for n in range(1, config.n_antifermion_modes + 1):
            _accumulate(acc, lad.f_bilinear("antifermion", n, n), -1.0)
    else:
        raise ValueError(f"unknown charge {which!r}")
    return PauliSum(layout.total_qubits, acc).prune()
