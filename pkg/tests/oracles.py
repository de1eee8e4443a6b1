"""Independent reference constructions for the test suite.

The Hamiltonian oracle works directly on occupancy tuples: ladder operators
are applied combinatorially with explicit Jordan-Wigner signs and momentum
brackets are evaluated as exact fractions over the full index ranges.  No
Pauli-string machinery is used anywhere, so agreement with the package's
operator assembly checks both constructions at once.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from lfyukawa.fock import FockState, ModeConfig


def bracket_exact(n: int, m: int) -> Fraction:
    if n == 0 or m == 0:
        return Fraction(0)
    return Fraction(1, n) if m == -n else Fraction(0)


def inertia_exact(kind: str, n: int, cutoff: int) -> Fraction:
    total = Fraction(0)
    for m in range(1, cutoff + 1):
        if kind == "alpha":
            total += bracket_exact(n - m, m - n) - bracket_exact(n + m, -m - n)
        elif kind == "beta":
            total += Fraction(n, m) * bracket_exact(n - m, m - n)
        elif kind == "gamma":
            total += Fraction(n, m) * bracket_exact(n + m, -m - n)
        else:
            raise ValueError(kind)
    return total


def apply_monomial(state: FockState, ops, modals: tuple[int, ...]):
    """Apply a product of ladder operators (leftmost written first) to a state.

    ``ops`` entries are ``(species, mode, dagger)`` with species 'f', 'a' or
    'c' (the boson entry already carries the 1/sqrt(mode) of c_n).  Returns
    (amplitude, FockState) or None when the action annihilates the state.
    Fermionic signs count occupied modes preceding the target in register
    order, with antifermion strings extending over all fermion modes.
    """
    f = list(state.fermions)
    a = list(state.antifermions)
    b = list(state.bosons)
    amp = 1.0
    for species, mode, dagger in reversed(ops):
        i = mode - 1
        if species == "f":
            sign = -1.0 if sum(f[:i]) % 2 else 1.0
            if dagger:
                if f[i]:
                    return None
                f[i] = 1
            else:
                if not f[i]:
                    return None
                f[i] = 0
            amp *= sign
        elif species == "a":
            sign = -1.0 if (sum(f) + sum(a[:i])) % 2 else 1.0
            if dagger:
                if a[i]:
                    return None
                a[i] = 1
            else:
                if not a[i]:
                    return None
                a[i] = 0
            amp *= sign
        elif species == "c":
            if dagger:
                if b[i] >= modals[i]:
                    return None
                amp *= math.sqrt(b[i] + 1) / math.sqrt(mode)
                b[i] += 1
            else:
                if b[i] == 0:
                    return None
                amp *= math.sqrt(b[i]) / math.sqrt(mode)
                b[i] -= 1
        else:
            raise ValueError(species)
    return amp, FockState(tuple(f), tuple(a), tuple(b))


def _monomials(config: ModeConfig):
    """All interaction monomials with their exact weights and coupling power.

    Yields (power, weight, ops) where power 1 tags the vertex part (overall
    g*m_F) and power 2 tags the quartic parts (overall g**2); index sums run
    over the full mode ranges with the brackets deciding what survives.
    """
    nf, na, nb = config.n_fermion_modes, config.n_antifermion_modes, config.n_boson_modes
    # vertex: fermion and antifermion scattering with boson emission/absorption
    for species, n_modes in (("f", nf), ("a", na)):
        for k in range(1, n_modes + 1):
            for l in range(1, nb + 1):
                for m in range(1, n_modes + 1):
                    w = bracket_exact(k + l, -m) + bracket_exact(k, l - m)
                    if w:
                        yield 1, w, ((species, k, True), (species, m, False), ("c", l, True))
                        yield 1, w, ((species, m, True), (species, k, False), ("c", l, False))
    # vertex: pair production/annihilation (carries the overall minus sign)
    for k in range(1, nf + 1):
        for l in range(1, nb + 1):
            for m in range(1, na + 1):
                w = bracket_exact(k - l, m) + bracket_exact(k, -l + m)
                if w:
                    yield 1, -w, (("f", k, False), ("a", m, False), ("c", l, True))
                    yield 1, -w, (("a", m, True), ("f", k, True), ("c", l, False))
    # seagull: scattering off a boson, and pair <-> two bosons
    for species, n_modes in (("f", nf), ("a", na)):
        for k in range(1, n_modes + 1):
            for l in range(1, nb + 1):
                for m in range(1, n_modes + 1):
                    for n in range(1, nb + 1):
                        w = bracket_exact(k - n, l - m) + bracket_exact(k + l, -m - n)
                        if w:
                            yield 2, w, (
                                (species, k, True),
                                (species, m, False),
                                ("c", l, True),
                                ("c", n, False),
                            )
    for k in range(1, na + 1):
        for l in range(1, nb + 1):
            for m in range(1, nf + 1):
                for n in range(1, nb + 1):
                    w = bracket_exact(l - k, n - m)
                    if w:
                        yield 2, w, (
                            ("a", k, False),
                            ("f", m, False),
                            ("c", l, True),
                            ("c", n, True),
                        )
                        yield 2, w, (
                            ("f", m, True),
                            ("a", k, True),
                            ("c", n, False),
                            ("c", l, False),
                        )
    # fork: boson pair emission/absorption and boson <-> pair + boson
    for species, n_modes in (("f", nf), ("a", na)):
        for k in range(1, n_modes + 1):
            for l in range(1, nb + 1):
                for m in range(1, n_modes + 1):
                    for n in range(1, nb + 1):
                        w = bracket_exact(k + l, n - m)
                        if w:
                            yield 2, w, (
                                (species, k, True),
                                (species, m, False),
                                ("c", l, True),
                                ("c", n, True),
                            )
                            yield 2, w, (
                                (species, m, True),
                                (species, k, False),
                                ("c", n, False),
                                ("c", l, False),
                            )
    for k in range(1, nf + 1):
        for l in range(1, nb + 1):
            for m in range(1, na + 1):
                for n in range(1, nb + 1):
                    w = bracket_exact(k - n, m + l) + bracket_exact(k + l, m - n)
                    if w:
                        yield 2, w, (
                            ("f", k, True),
                            ("a", m, True),
                            ("c", l, True),
                            ("c", n, False),
                        )
                        yield 2, w, (
                            ("a", m, False),
                            ("f", k, False),
                            ("c", n, True),
                            ("c", l, False),
                        )


class FockOracle:
    """Coupling-resolved dense Hamiltonian blocks built without Pauli strings."""

    def __init__(self, config: ModeConfig, fermion_mass: float, boson_mass: float,
                 inertia_cutoff: int):
        self.config = config
        self.mf = fermion_mass
        self.mb = boson_mass
        self.cutoff = inertia_cutoff
        self.monomials = list(_monomials(config))
        n_max = max(config.n_fermion_modes, config.n_antifermion_modes, config.n_boson_modes)
        self._inertia = {
            (kind, n): float(inertia_exact(kind, n, inertia_cutoff))
            for kind in ("alpha", "beta", "gamma")
            for n in range(1, n_max + 1)
        }

    def components(self, states: list[FockState]):
        """(mass diag, inertia diag, vertex block, quartic block) at unit couplings.

        The full sector block is mass + g^2*inertia + g*m_F*vertex + g^2*quartic.
        """
        dim = len(states)
        pos = {s: i for i, s in enumerate(states)}
        mass = np.zeros((dim, dim), dtype=complex)
        inertia = np.zeros((dim, dim), dtype=complex)
        vertex = np.zeros((dim, dim), dtype=complex)
        quartic = np.zeros((dim, dim), dtype=complex)
        for i, s in enumerate(states):
            for n, occ in enumerate(s.bosons, start=1):
                mass[i, i] += occ * self.mb**2 / n
                inertia[i, i] += occ * self._inertia["alpha", n] / n
            for n, occ in enumerate(s.fermions, start=1):
                mass[i, i] += occ * self.mf**2 / n
                inertia[i, i] += occ * self._inertia["beta", n] / n
            for n, occ in enumerate(s.antifermions, start=1):
                mass[i, i] += occ * self.mf**2 / n
                inertia[i, i] += occ * self._inertia["gamma", n] / n
            for power, w, ops in self.monomials:
                hit = apply_monomial(s, ops, self.config.boson_modals)
                if hit is None:
                    continue
                amp, out = hit
                j = pos.get(out)
                if j is None:
                    # momentum-conserving monomials stay inside a (K, Q) sector
                    raise AssertionError("monomial left the sector")
                target = vertex if power == 1 else quartic
                target[j, i] += float(w) * amp
        return mass, inertia, vertex, quartic

    def matrix(self, states, coupling: float, include_inertias: bool) -> np.ndarray:
        g = coupling / math.sqrt(4.0 * math.pi)
        mass, inertia, vertex, quartic = self.components(states)
        out = mass + g * self.mf * vertex + g**2 * quartic
        if include_inertias:
            out = out + g**2 * inertia
        return out


def rabi_transition(v: float, delta: float, times: np.ndarray) -> np.ndarray:
    """Closed-form two-level transition probability for H = [[0, v], [v, delta]]."""
    omega = math.hypot(v, delta / 2.0)
    if omega == 0.0:
        return np.zeros_like(times)
    return (v**2 / omega**2) * np.sin(omega * times) ** 2
