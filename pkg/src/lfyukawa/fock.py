"""Truncated Fock space of the light-front Yukawa model and its qubit encoding.

A basis state lists the occupancies of fermion, antifermion and boson momentum
modes (mode ``n`` carries light-front momentum ``n`` in box units).  The qubit
register holds, left to right, one qubit per fermion mode, one per antifermion
mode, then a block of ``t = log2(m+1)`` qubits per boson mode storing the
occupancy in big-endian binary, so occupancy 1 with a 3-qubit block reads
``001``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "ModeConfig",
    "FockState",
    "QubitLayout",
    "qubit_count",
    "encode",
    "decode",
    "k_of",
    "q_of",
    "enumerate_sector",
    "charge_tables",
]


@dataclass(frozen=True)
class ModeConfig:
    """Mode and modal cutoffs for each particle species.

    Fermion and antifermion modes hold at most one quantum.  Boson mode ``i``
    holds up to ``boson_modals[i-1]`` quanta; the cap must equal ``2**t - 1``
    so the occupancy fills ``t`` qubits exactly and every bit pattern decodes
    to a valid state.
    """

    n_fermion_modes: int
    n_antifermion_modes: int
    n_boson_modes: int
    boson_modals: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "boson_modals", tuple(int(m) for m in self.boson_modals))
        if min(self.n_fermion_modes, self.n_antifermion_modes, self.n_boson_modes) < 1:
            raise ValueError("every species needs at least one mode")
        if len(self.boson_modals) != self.n_boson_modes:
            raise ValueError(
                f"boson_modals has {len(self.boson_modals)} entries, expected {self.n_boson_modes}"
            )
        for i, m in enumerate(self.boson_modals, start=1):
            if m < 1 or (m & (m + 1)) != 0:  # m = 2**t - 1
                raise ValueError(f"boson mode {i}: modal cap {m} is not of the form 2**t - 1")

    @classmethod
    def uniform(cls, n_modes: int, modals: int = 3) -> "ModeConfig":
        """Equal number of modes for all species, same modal cap per boson mode."""
        return cls(n_modes, n_modes, n_modes, (modals,) * n_modes)

    @property
    def max_k(self) -> int:
        """Largest harmonic resolution any representable state can carry."""
        triangle = lambda n: n * (n + 1) // 2
        boson = sum(n * m for n, m in enumerate(self.boson_modals, start=1))
        return triangle(self.n_fermion_modes) + triangle(self.n_antifermion_modes) + boson


@dataclass(frozen=True)
class FockState:
    """Occupancies per mode, mode 1 first; fermionic entries are 0/1."""

    fermions: tuple[int, ...]
    antifermions: tuple[int, ...]
    bosons: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "fermions", tuple(int(b) for b in self.fermions))
        object.__setattr__(self, "antifermions", tuple(int(b) for b in self.antifermions))
        object.__setattr__(self, "bosons", tuple(int(p) for p in self.bosons))
        if any(b not in (0, 1) for b in self.fermions + self.antifermions):
            raise ValueError("fermionic occupancies must be 0 or 1")
        if any(p < 0 for p in self.bosons):
            raise ValueError("boson occupancies must be non-negative")

    @classmethod
    def vacuum(cls, config: ModeConfig) -> "FockState":
        return cls(
            (0,) * config.n_fermion_modes,
            (0,) * config.n_antifermion_modes,
            (0,) * config.n_boson_modes,
        )


def k_of(state: FockState) -> int:
    """Harmonic resolution K = sum of mode number times occupancy, all species."""
    k = 0
    for occ in (state.fermions, state.antifermions, state.bosons):
        k += sum(n * o for n, o in enumerate(occ, start=1))
    return k


def q_of(state: FockState) -> int:
    """Baryon number Q = fermion count minus antifermion count."""
    return sum(state.fermions) - sum(state.antifermions)


class QubitLayout:
    """Fixed register map: fermion modes | antifermion modes | boson blocks."""

    def __init__(self, config: ModeConfig):
        self.config = config
        self.boson_widths = tuple((m + 1).bit_length() - 1 for m in config.boson_modals)
        starts = []
        pos = config.n_fermion_modes + config.n_antifermion_modes
        for w in self.boson_widths:
            starts.append(pos)
            pos += w
        self.boson_starts = tuple(starts)
        self.total_qubits = pos

    def fermion_qubit(self, mode: int) -> int:
        if not 1 <= mode <= self.config.n_fermion_modes:
            raise ValueError(f"fermion mode {mode} out of range")
        return mode - 1

    def antifermion_qubit(self, mode: int) -> int:
        if not 1 <= mode <= self.config.n_antifermion_modes:
            raise ValueError(f"antifermion mode {mode} out of range")
        return self.config.n_fermion_modes + mode - 1

    def boson_block(self, mode: int) -> tuple[int, int]:
        """(first qubit, width) of the mode's occupancy block."""
        if not 1 <= mode <= self.config.n_boson_modes:
            raise ValueError(f"boson mode {mode} out of range")
        return self.boson_starts[mode - 1], self.boson_widths[mode - 1]

    # -- encoding ----------------------------------------------------------

    def _bit(self, qubit: int) -> int:
        return 1 << (self.total_qubits - 1 - qubit)

    def encode(self, state: FockState) -> int:
        cfg = self.config
        if (
            len(state.fermions) != cfg.n_fermion_modes
            or len(state.antifermions) != cfg.n_antifermion_modes
            or len(state.bosons) != cfg.n_boson_modes
        ):
            raise ValueError("state does not match the layout's mode counts")
        index = 0
        for mode, occ in enumerate(state.fermions, start=1):
            if occ:
                index |= self._bit(self.fermion_qubit(mode))
        for mode, occ in enumerate(state.antifermions, start=1):
            if occ:
                index |= self._bit(self.antifermion_qubit(mode))
        for mode, occ in enumerate(state.bosons, start=1):
            start, width = self.boson_block(mode)
            if occ > cfg.boson_modals[mode - 1]:
                raise ValueError(
                    f"boson mode {mode} occupancy {occ} exceeds modal cap "
                    f"{cfg.boson_modals[mode - 1]}"
                )
            index |= occ << (self.total_qubits - start - width)
        return index

    def decode(self, index: int) -> FockState:
        if not 0 <= index < (1 << self.total_qubits):
            raise ValueError(f"index {index} outside the {self.total_qubits}-qubit register")
        cfg = self.config
        fermions = tuple(
            (index >> (self.total_qubits - 1 - self.fermion_qubit(n))) & 1
            for n in range(1, cfg.n_fermion_modes + 1)
        )
        antifermions = tuple(
            (index >> (self.total_qubits - 1 - self.antifermion_qubit(n))) & 1
            for n in range(1, cfg.n_antifermion_modes + 1)
        )
        bosons = []
        for n in range(1, cfg.n_boson_modes + 1):
            start, width = self.boson_block(n)
            bosons.append((index >> (self.total_qubits - start - width)) & ((1 << width) - 1))
        return FockState(fermions, antifermions, tuple(bosons))

    # -- text rendering ----------------------------------------------------

    def format_bits(self, index: int) -> str:
        """Register bitstring with species groups separated by spaces.

        Matches the rendering used throughout the CLI, e.g. ``010 000 00 00 00``
        for a fermion in mode 2 at three modes per species and 3 modals.
        """
        bits = format(index, f"0{self.total_qubits}b")
        cfg = self.config
        groups = [bits[: cfg.n_fermion_modes]]
        pos = cfg.n_fermion_modes
        groups.append(bits[pos : pos + cfg.n_antifermion_modes])
        pos += cfg.n_antifermion_modes
        for w in self.boson_widths:
            groups.append(bits[pos : pos + w])
            pos += w
        return " ".join(groups)

    def parse_bits(self, text: str) -> int:
        bits = text.replace(" ", "")
        if len(bits) != self.total_qubits or set(bits) - {"0", "1"}:
            raise ValueError(f"bitstring {text!r} does not fit a {self.total_qubits}-qubit register")
        return int(bits, 2)

    def basis_vector(self, state: FockState | int) -> np.ndarray:
        """Statevector with unit amplitude on the given basis state."""
        index = state if isinstance(state, int) else self.encode(state)
        psi = np.zeros(1 << self.total_qubits, dtype=complex)
        psi[index] = 1.0
        return psi


def qubit_count(config: ModeConfig) -> int:
    """Register size: one qubit per fermionic mode plus log2(m+1) per boson mode."""
    return QubitLayout(config).total_qubits


def encode(state: FockState, layout: QubitLayout) -> int:
    return layout.encode(state)


def decode(index: int, layout: QubitLayout) -> FockState:
    return layout.decode(index)


def _occupation_patterns(n_modes: int, k_budget: int):
    """All 0/1 occupation tuples over modes 1..n_modes with K-sum at most k_budget."""
    patterns: list[tuple[tuple[int, ...], int, int]] = []  # (occ, k, count)

    def rec(mode: int, occ: list[int], k: int, count: int):
        if mode > n_modes:
            patterns.append((tuple(occ), k, count))
            return
        rec(mode + 1, occ + [0], k, count)
        if k + mode <= k_budget:
            rec(mode + 1, occ + [1], k + mode, count + 1)

    rec(1, [], 0, 0)
    return patterns


def _boson_fills(modals: tuple[int, ...], target_k: int):
    """All boson occupancy tuples with K-sum exactly target_k, within modal caps."""
    fills: list[tuple[int, ...]] = []
    n_modes = len(modals)

    def rec(mode: int, occ: list[int], remaining: int):
        if mode > n_modes:
            if remaining == 0:
                fills.append(tuple(occ))
            return
        cap = min(modals[mode - 1], remaining // mode)
        for p in range(cap + 1):
            rec(mode + 1, occ + [p], remaining - p * mode)

    rec(1, [], target_k)
    return fills


def enumerate_sector(config: ModeConfig, K: int, Q: int) -> list[FockState]:
    """All states with k_of = K and q_of = Q, ordered by encoded index.

    Generated by recursive occupancy construction with a K budget at every
    step, so large registers never require a full-space scan.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    layout = QubitLayout(config)
    out = []
    for f_occ, f_k, f_count in _occupation_patterns(config.n_fermion_modes, K):
        for a_occ, a_k, a_count in _occupation_patterns(config.n_antifermion_modes, K - f_k):
            if f_count - a_count != Q:
                continue
            for b_occ in _boson_fills(config.boson_modals, K - f_k - a_k):
                out.append(FockState(f_occ, a_occ, b_occ))
    out.sort(key=layout.encode)
    return out


@lru_cache(maxsize=16)
def _charge_tables_cached(config: ModeConfig) -> tuple[np.ndarray, np.ndarray]:
    layout = QubitLayout(config)
    n = layout.total_qubits
    idx = np.arange(1 << n, dtype=np.int64)
    k = np.zeros(idx.shape, dtype=np.int16)
    q = np.zeros(idx.shape, dtype=np.int16)
    for mode in range(1, config.n_fermion_modes + 1):
        occ = (idx >> (n - 1 - layout.fermion_qubit(mode))) & 1
        k += mode * occ
        q += occ
    for mode in range(1, config.n_antifermion_modes + 1):
        occ = (idx >> (n - 1 - layout.antifermion_qubit(mode))) & 1
        k += mode * occ
        q -= occ
    for mode in range(1, config.n_boson_modes + 1):
        start, width = layout.boson_block(mode)
        occ = (idx >> (n - start - width)) & ((1 << width) - 1)
        k += mode * occ
    k.setflags(write=False)
    q.setflags(write=False)
    return k, q


def charge_tables(layout: QubitLayout) -> tuple[np.ndarray, np.ndarray]:
    """Per-basis-index K and Q over the whole register (read-only arrays)."""
    return _charge_tables_cached(layout.config)
