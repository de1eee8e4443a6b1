"""Experiment presets and the configuration document parser.

Each preset reproduces one of the reference experiments: the exact two-level
oscillation, the Trotter-step study, the coupling sweep over four initial
states, the mode-cutoff study, the two-proton collision and the minimal
two-mode run.  A configuration document is JSON; any field given overrides the
preset default and the fully resolved configuration is echoed in the run
manifest so every run can be reproduced without the preset table.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from . import __version__
from .diagnostics import EvolutionRecord, leakage, records_to_csv, survival, transition_prob
from .evolve import exact_evolve, make_plan, sample_counts, trotter_evolve
from .fock import FockState, ModeConfig, QubitLayout, enumerate_sector, k_of, q_of
from .hamiltonian import PARTS, ModelParams, build_h
from .pauli import dumps

__all__ = [
    "ConfigError",
    "SchemaError",
    "PhysicsError",
    "ScenarioConfig",
    "PRESETS",
    "parse_config",
    "run_scenario",
]


class ConfigError(ValueError):
    """Invalid configuration document."""


class SchemaError(ConfigError):
    """Malformed document: wrong type, unknown field, inconsistent grid."""


class PhysicsError(ConfigError):
    """Well-formed document describing unphysical parameters."""


PRESETS: dict[str, dict] = {
    "rabi": {
        "description": "exact two-level oscillation of a mode-2 fermion (3 modes, lambda=4)",
        "n_modes": 3,
        "coupling": 4.0,
        "initial_state": "f2",
        "evolution": {"mode": "exact", "t_max": 1.0, "dt": 0.01},
    },
    "trotter-study": {
        "description": "first-order Trotter vs exact for 1..10 steps (3 modes, lambda=4)",
        "n_modes": 3,
        "coupling": 4.0,
        "initial_state": "f2",
        "evolution": {"mode": "trotter", "t_max": 1.0, "dt": 0.05, "order": 1},
        "trotter_steps": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    },
    "coupling-sweep": {
        "description": "survival of four initial states vs coupling at t=0.2, 10 steps",
        "n_modes": 4,
        "lambdas": [1.0, 2.0, 3.0, 4.0, 5.0],
        "initial_states": ["phi2", "f2", "fbar2", "f2-fbar2-phi2"],
        "evolution": {"mode": "trotter", "t_max": 0.2, "n_steps": 10, "order": 1},
        "shots": 8192,
    },
    "nmax-study": {
        "description": "same four initial states while the mode cutoff grows",
        "n_values": [4, 5, 6],
        "lambdas": [1.0, 4.0],
        "initial_states": ["phi2", "f2", "fbar2", "f2-fbar2-phi2"],
        "evolution": {"mode": "trotter", "t_max": 0.2, "n_steps": 10, "order": 1},
    },
    "pp-collision": {
        "description": "two protons in modes 4+5 producing pion pairs (5 modes, lambda=13.315)",
        "n_modes": 5,
        "coupling": 13.315,
        "initial_state": "f4f5",
        "evolution": {"mode": "trotter", "t_max": 0.4, "dt": 0.005, "order": 1},
    },
    "hardware-minimal": {
        "description": "two modes, one modal, H_M+H_V only, a single Trotter step",
        "n_modes": 2,
        "modals": 1,
        "parts": ["HM", "HV"],
        "lambdas": [1.0, 4.0],
        "initial_state": "f2",
        "evolution": {"mode": "trotter", "t_max": 0.2, "n_steps": 1, "order": 1},
        "shots": 8192,
    },
}

_TOLERANCES = {"coeff_drop": 1e-12, "canonical_compare": 1e-10, "norm": 1e-9}


@dataclass
class ScenarioConfig:
    """Fully resolved run description (all defaults applied)."""

    scenario: str
    mode_config: ModeConfig
    params: ModelParams
    parts: tuple[str, ...]
    initial_state: str
    mode: str
    t_max: float
    dt: float | None
    n_steps: int | None
    order: int
    shots: int
    seed: int
    output_dir: str
    lambdas: tuple[float, ...] | None = None
    trotter_steps: tuple[int, ...] | None = None
    n_values: tuple[int, ...] | None = None
    initial_states: tuple[str, ...] | None = None
    cross_species_string: bool = True

    def echo(self) -> dict:
        out = {
            "scenario": self.scenario,
            "n_fermion_modes": self.mode_config.n_fermion_modes,
            "n_antifermion_modes": self.mode_config.n_antifermion_modes,
            "n_boson_modes": self.mode_config.n_boson_modes,
            "boson_modals": list(self.mode_config.boson_modals),
            "fermion_mass": self.params.fermion_mass,
            "boson_mass": self.params.boson_mass,
            "coupling": self.params.coupling,
            "g": self.params.g,
            "inertia_cutoff": self.params.inertia_cutoff,
            "box_length": self.params.box_length,
            "include_inertias": self.params.include_inertias,
            "parts": list(self.parts),
            "initial_state": self.initial_state,
            "evolution": {
                "mode": self.mode,
                "t_max": self.t_max,
                "dt": self.dt,
                "n_steps": self.n_steps,
                "order": self.order,
            },
            "shots": self.shots,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "cross_species_string": self.cross_species_string,
            "tolerances": dict(_TOLERANCES),
        }
        for key in ("lambdas", "trotter_steps", "n_values", "initial_states"):
            value = getattr(self, key)
            if value is not None:
                out[key] = list(value)
        return out


_KNOWN_KEYS = {
    "scenario",
    "description",
    "n_modes",
    "n_fermion_modes",
    "n_antifermion_modes",
    "n_boson_modes",
    "modals",
    "fermion_mass",
    "boson_mass",
    "coupling",
    "inertia_cutoff",
    "box_length",
    "include_inertias",
    "parts",
    "initial_state",
    "evolution",
    "shots",
    "seed",
    "output_dir",
    "lambdas",
    "trotter_steps",
    "n_values",
    "initial_states",
    "cross_species_string",
}
_EVOLUTION_KEYS = {"mode", "t_max", "dt", "n_steps", "order"}


def _require(cond: bool, path: str, message: str):
    if not cond:
        raise SchemaError(f"{path}: {message}")


def parse_config(text: str) -> ScenarioConfig:
    """Validate a JSON configuration document and apply preset defaults."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"document is not valid JSON: {err}") from None
    _require(isinstance(doc, dict), "$", "top level must be a JSON object")
    scenario = doc.get("scenario")
    _require(isinstance(scenario, str), "scenario", "a scenario name is required")
    if scenario not in PRESETS:
        raise SchemaError(f"scenario: unknown scenario {scenario!r}, see list-scenarios")
    merged: dict = {k: v for k, v in PRESETS[scenario].items() if k != "description"}
    for key, value in doc.items():
        if key == "evolution":
            evo = dict(merged.get("evolution", {}))
            _require(isinstance(value, dict), "evolution", "must be an object")
            for ek, ev in value.items():
                _require(ek in _EVOLUTION_KEYS, f"evolution.{ek}", "unknown field")
                evo[ek] = ev
            merged["evolution"] = evo
        else:
            _require(key in _KNOWN_KEYS, key, "unknown field")
            merged[key] = value

    n_modes = merged.get("n_modes", 3)
    nf = merged.get("n_fermion_modes", n_modes)
    na = merged.get("n_antifermion_modes", n_modes)
    nb = merged.get("n_boson_modes", n_modes)
    modals = merged.get("modals", 3)
    for path, value in (("n_fermion_modes", nf), ("n_antifermion_modes", na), ("n_boson_modes", nb)):
        _require(isinstance(value, int) and value >= 1, path, "must be a positive integer")
    _require(isinstance(modals, int) and modals >= 1, "modals", "must be a positive integer")
    if modals & (modals + 1):
        raise PhysicsError(f"modals: cap {modals} is not of the form 2**t - 1")
    try:
        mode_config = ModeConfig(nf, na, nb, (modals,) * nb)
    except ValueError as err:
        raise PhysicsError(str(err)) from None

    fermion_mass = merged.get("fermion_mass", 6.7)
    boson_mass = merged.get("boson_mass", 1.0)
    coupling = merged.get("coupling", 1.0)
    inertia_cutoff = merged.get("inertia_cutoff", 2048)
    box_length = merged.get("box_length", 2.0 * math.pi)
    include_inertias = merged.get("include_inertias", False)
    for path, value in (
        ("fermion_mass", fermion_mass),
        ("boson_mass", boson_mass),
        ("coupling", coupling),
        ("box_length", box_length),
    ):
        _require(isinstance(value, (int, float)) and not isinstance(value, bool), path, "must be a number")
    _require(isinstance(inertia_cutoff, int), "inertia_cutoff", "must be an integer")
    _require(isinstance(include_inertias, bool), "include_inertias", "must be a boolean")
    if fermion_mass <= 0 or boson_mass <= 0:
        raise PhysicsError("masses must be positive (massive-field regularization)")
    largest_n = max(nf, na, nb, *(merged.get("n_values") or [1]))
    if inertia_cutoff < largest_n:
        raise PhysicsError(
            f"inertia_cutoff: {inertia_cutoff} is below the largest mode number {largest_n}"
        )
    params = ModelParams(
        fermion_mass=float(fermion_mass),
        boson_mass=float(boson_mass),
        coupling=float(coupling),
        inertia_cutoff=inertia_cutoff,
        box_length=float(box_length),
        include_inertias=include_inertias,
    )

    parts = tuple(merged.get("parts", list(PARTS)))
    for p in parts:
        _require(p in PARTS, "parts", f"unknown Hamiltonian part {p!r}")

    evo = merged.get("evolution", {})
    mode = evo.get("mode", "exact")
    _require(mode in ("exact", "trotter"), "evolution.mode", "must be 'exact' or 'trotter'")
    t_max = evo.get("t_max", 0.2)
    _require(
        isinstance(t_max, (int, float)) and t_max > 0, "evolution.t_max", "must be a positive number"
    )
    dt = evo.get("dt")
    n_steps = evo.get("n_steps")
    order = evo.get("order", 1)
    _require(order in (1, 2), "evolution.order", "must be 1 or 2")
    if dt is not None:
        _require(isinstance(dt, (int, float)) and dt > 0, "evolution.dt", "must be a positive number")
    if n_steps is not None:
        _require(
            isinstance(n_steps, int) and n_steps >= 1,
            "evolution.n_steps",
            "must be a positive integer",
        )
    if dt is None and n_steps is None:
        _require(mode == "exact", "evolution", "trotter evolution needs dt or n_steps")
        dt = 0.02  # reference resolution
    if dt is not None and n_steps is not None:
        _require(
            abs(dt * n_steps - t_max) <= 1e-9,
            "evolution",
            f"dt*n_steps = {dt * n_steps!r} inconsistent with t_max = {t_max!r}",
        )
    if mode == "trotter" and n_steps is None:
        ratio = t_max / dt
        _require(
            abs(ratio - round(ratio)) <= 1e-9, "evolution", "t_max must be a multiple of dt"
        )
        n_steps = int(round(ratio))

    shots = merged.get("shots", 0)
    _require(isinstance(shots, int) and shots >= 0, "shots", "must be a non-negative integer")
    seed = merged.get("seed", 1234)
    _require(isinstance(seed, int), "seed", "must be an integer")
    output_dir = merged.get("output_dir", os.path.join("runs", scenario))
    _require(isinstance(output_dir, str), "output_dir", "must be a string")
    cross = merged.get("cross_species_string", True)
    _require(isinstance(cross, bool), "cross_species_string", "must be a boolean")

    def _tuple_or_none(key, kind, label):
        value = merged.get(key)
        if value is None:
            return None
        _require(isinstance(value, list) and value, key, f"must be a non-empty list of {label}")
        for v in value:
            _require(isinstance(v, kind) and not isinstance(v, bool), key, f"entries must be {label}")
        return tuple(value)

    lambdas = _tuple_or_none("lambdas", (int, float), "numbers")
    trotter_steps = _tuple_or_none("trotter_steps", int, "integers")
    n_values = _tuple_or_none("n_values", int, "integers")
    raw_states = merged.get("initial_states")
    initial_states = tuple(raw_states) if raw_states is not None else None

    cfg = ScenarioConfig(
        scenario=scenario,
        mode_config=mode_config,
        params=params,
        parts=parts,
        initial_state=merged.get("initial_state", "f2"),
        mode=mode,
        t_max=float(t_max),
        dt=None if dt is None else float(dt),
        n_steps=n_steps,
        order=order,
        shots=shots,
        seed=seed,
        output_dir=output_dir,
        lambdas=lambdas,
        trotter_steps=trotter_steps,
        n_values=n_values,
        initial_states=initial_states,
        cross_species_string=cross,
    )
    # fail early on unresolvable initial states
    _resolve_state(cfg.initial_state, mode_config)
    if initial_states:
        for label in initial_states:
            _resolve_state(label, mode_config)
    return cfg


def _resolve_state(label: str, config: ModeConfig) -> FockState:
    """Named initial states, or an explicit grouped bitstring."""
    layout = QubitLayout(config)
    zeros_f = [0] * config.n_fermion_modes
    zeros_a = [0] * config.n_antifermion_modes
    zeros_b = [0] * config.n_boson_modes

    def single(species, mode):
        f, a, b = list(zeros_f), list(zeros_a), list(zeros_b)
        target = {"f": f, "a": a, "b": b}[species]
        if mode > len(target):
            raise SchemaError(f"initial_state: mode {mode} outside the configured cutoff")
        target[mode - 1] = 1
        return FockState(tuple(f), tuple(a), tuple(b))

    if set(label) <= {"0", "1", " "}:
        try:
            return layout.decode(layout.parse_bits(label))
        except ValueError as err:
            raise SchemaError(f"initial_state: {err}") from None
    named = {
        "f2": lambda: single("f", 2),
        "fbar2": lambda: single("a", 2),
        "phi2": lambda: single("b", 2),
        "f4f5": lambda: FockState(
            tuple(1 if n in (4, 5) else 0 for n in range(1, config.n_fermion_modes + 1)),
            tuple(zeros_a),
            tuple(zeros_b),
        ),
        "f2-fbar2-phi2": lambda: FockState(
            tuple(1 if n == 2 else 0 for n in range(1, config.n_fermion_modes + 1)),
            tuple(1 if n == 2 else 0 for n in range(1, config.n_antifermion_modes + 1)),
            tuple(1 if n == 2 else 0 for n in range(1, config.n_boson_modes + 1)),
        ),
    }
    if label not in named:
        raise SchemaError(f"initial_state: unknown state label {label!r}")
    state = named[label]()
    if label == "f4f5" and config.n_fermion_modes < 5:
        raise SchemaError("initial_state: f4f5 needs at least five fermion modes")
    return state


# -- runners ----------------------------------------------------------------------


def _record(psi, psi0, targets, layout, K0, Q0, time, metadata) -> EvolutionRecord:
    leak_k, leak_q = leakage(psi, K0, Q0, layout)
    return EvolutionRecord(
        time=time,
        survival=survival(psi, psi0),
        transition=transition_prob(psi, targets, layout),
        leak_k=leak_k,
        leak_q=leak_q,
        metadata=metadata,
    )


def _sample_seed(base_seed: int, *key) -> int:
    text = json.dumps([base_seed, *key], sort_keys=True)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:4], "big")


def _plan_meta(plan) -> dict:
    return {
        "plan_order": plan.order,
        "plan_steps": plan.n_steps,
        "plan_hash": plan.term_order_hash,
    }


def _probability_map(psi, layout, floor: float = 1e-12) -> dict[str, float]:
    probs = np.abs(psi) ** 2
    hits = np.nonzero(probs > floor)[0]
    return {layout.format_bits(int(i)): float(probs[i]) for i in hits}


def _sampled_survival(psi, index, layout, shots, seed) -> float:
    counts = sample_counts(psi, shots, seed)
    bits = format(index, f"0{layout.total_qubits}b")
    return counts.get(bits, 0) / shots


def _run_rabi(cfg: ScenarioConfig):
    layout = QubitLayout(cfg.mode_config)
    state0 = _resolve_state(cfg.initial_state, cfg.mode_config)
    K0, Q0 = k_of(state0), q_of(state0)
    h = build_h(cfg.mode_config, cfg.params, layout, cfg.parts, cfg.cross_species_string)
    psi0 = layout.basis_vector(state0)
    times = np.round(np.arange(0.0, cfg.t_max + cfg.dt / 2, cfg.dt), 12)
    evolved = exact_evolve(h, psi0, times, sector=(K0, Q0), layout=layout)
    sector = enumerate_sector(cfg.mode_config, K0, Q0)
    targets = [s for s in sector if s != state0]
    records = [
        _record(evolved[i], psi0, targets, layout, K0, Q0, float(t), {})
        for i, t in enumerate(times)
    ]
    return records, (), (), {"hamiltonians": [h], "sector_dim": len(sector)}


def _run_trotter_study(cfg: ScenarioConfig):
    layout = QubitLayout(cfg.mode_config)
    state0 = _resolve_state(cfg.initial_state, cfg.mode_config)
    K0, Q0 = k_of(state0), q_of(state0)
    h = build_h(cfg.mode_config, cfg.params, layout, cfg.parts, cfg.cross_species_string)
    psi0 = layout.basis_vector(state0)
    times = np.round(np.arange(cfg.dt, cfg.t_max + cfg.dt / 2, cfg.dt), 12)
    exact = exact_evolve(h, psi0, times, sector=(K0, Q0), layout=layout)
    sector = enumerate_sector(cfg.mode_config, K0, Q0)
    targets = [s for s in sector if s != state0]
    records = []
    for n_t in cfg.trotter_steps:
        for i, t in enumerate(times):
            plan = make_plan(h, float(t), n_t, cfg.order)
            psi = trotter_evolve(plan, psi0)
            meta = {
                "n_trotter": n_t,
                "transition_exact": transition_prob(exact[i], targets, layout),
                **_plan_meta(plan),
            }
            records.append(_record(psi, psi0, targets, layout, K0, Q0, float(t), meta))
    return records, ("n_trotter",), ("transition_exact",), {"hamiltonians": [h]}


def _run_coupling_sweep(cfg: ScenarioConfig):
    layout = QubitLayout(cfg.mode_config)
    records = []
    hams = []
    for lam in cfg.lambdas:
        params = ModelParams(
            fermion_mass=cfg.params.fermion_mass,
            boson_mass=cfg.params.boson_mass,
            coupling=float(lam),
            inertia_cutoff=cfg.params.inertia_cutoff,
            box_length=cfg.params.box_length,
            include_inertias=cfg.params.include_inertias,
        )
        h = build_h(cfg.mode_config, params, layout, cfg.parts, cfg.cross_species_string)
        hams.append(h)
        plan = make_plan(h, cfg.t_max, cfg.n_steps, cfg.order)
        for label in cfg.initial_states:
            state0 = _resolve_state(label, cfg.mode_config)
            K0, Q0 = k_of(state0), q_of(state0)
            psi0 = layout.basis_vector(state0)
            psi = trotter_evolve(plan, psi0)
            sector = enumerate_sector(cfg.mode_config, K0, Q0)
            targets = [s for s in sector if s != state0]
            meta = {"lambda": float(lam), "state": label, **_plan_meta(plan)}
            if cfg.shots:
                seed = _sample_seed(cfg.seed, "coupling-sweep", lam, label)
                meta["survival_sampled"] = _sampled_survival(
                    psi, layout.encode(state0), layout, cfg.shots, seed
                )
            records.append(_record(psi, psi0, targets, layout, K0, Q0, cfg.t_max, meta))
    extra = ("survival_sampled",) if cfg.shots else ()
    return records, ("lambda", "state"), extra, {"hamiltonians": hams}


def _run_nmax_study(cfg: ScenarioConfig):
    records = []
    hams = []
    for n_max in cfg.n_values:
        config = ModeConfig.uniform(n_max, cfg.mode_config.boson_modals[0])
        layout = QubitLayout(config)
        for lam in cfg.lambdas:
            params = ModelParams(
                fermion_mass=cfg.params.fermion_mass,
                boson_mass=cfg.params.boson_mass,
                coupling=float(lam),
                inertia_cutoff=cfg.params.inertia_cutoff,
                box_length=cfg.params.box_length,
                include_inertias=cfg.params.include_inertias,
            )
            h = build_h(config, params, layout, cfg.parts, cfg.cross_species_string)
            hams.append(h)
            plan = make_plan(h, cfg.t_max, cfg.n_steps, cfg.order)
            for label in cfg.initial_states:
                state0 = _resolve_state(label, config)
                K0, Q0 = k_of(state0), q_of(state0)
                psi0 = layout.basis_vector(state0)
                psi = trotter_evolve(plan, psi0)
                sector = enumerate_sector(config, K0, Q0)
                targets = [s for s in sector if s != state0]
                meta = {
                    "n_max": n_max,
                    "lambda": float(lam),
                    "state": label,
                    **_plan_meta(plan),
                }
                records.append(_record(psi, psi0, targets, layout, K0, Q0, cfg.t_max, meta))
    return records, ("n_max", "lambda", "state"), (), {"hamiltonians": hams}


def _run_pp_collision(cfg: ScenarioConfig):
    layout = QubitLayout(cfg.mode_config)
    state0 = _resolve_state(cfg.initial_state, cfg.mode_config)
    K0, Q0 = k_of(state0), q_of(state0)
    h = build_h(cfg.mode_config, cfg.params, layout, cfg.parts, cfg.cross_species_string)
    psi0 = layout.basis_vector(state0)
    targets = [
        s
        for s in enumerate_sector(cfg.mode_config, K0, Q0)
        if sum(s.fermions) == 2 and sum(s.antifermions) == 0 and sum(s.bosons) == 2
    ]
    plan = make_plan(h, cfg.t_max, cfg.n_steps, cfg.order)
    records = []

    def observer(step, psi):
        records.append(
            _record(
                psi, psi0, targets, layout, K0, Q0, round(step * cfg.dt, 12), _plan_meta(plan)
            )
        )

    trotter_evolve(plan, psi0, observer=observer)
    return records, (), (), {"hamiltonians": [h], "n_targets": len(targets)}


def _run_hardware_minimal(cfg: ScenarioConfig):
    layout = QubitLayout(cfg.mode_config)
    state0 = _resolve_state(cfg.initial_state, cfg.mode_config)
    K0, Q0 = k_of(state0), q_of(state0)
    psi0 = layout.basis_vector(state0)
    sector = enumerate_sector(cfg.mode_config, K0, Q0)
    targets = [s for s in sector if s != state0]
    records = []
    hams = []
    for lam in cfg.lambdas:
        params = ModelParams(
            fermion_mass=cfg.params.fermion_mass,
            boson_mass=cfg.params.boson_mass,
            coupling=float(lam),
            inertia_cutoff=cfg.params.inertia_cutoff,
            box_length=cfg.params.box_length,
            include_inertias=cfg.params.include_inertias,
        )
        h = build_h(cfg.mode_config, params, layout, cfg.parts, cfg.cross_species_string)
        hams.append(h)
        plan = make_plan(h, cfg.t_max, cfg.n_steps, cfg.order)
        psi = trotter_evolve(plan, psi0)
        exact = exact_evolve(h, psi0, cfg.t_max, sector=(K0, Q0), layout=layout)
        meta = {
            "lambda": float(lam),
            "transition_exact": transition_prob(exact, targets, layout),
            **_plan_meta(plan),
        }
        if cfg.shots:
            seed = _sample_seed(cfg.seed, "hardware-minimal", lam)
            counts = sample_counts(psi, cfg.shots, seed)
            hit = sum(
                counts.get(format(layout.encode(s), f"0{layout.total_qubits}b"), 0)
                for s in targets
            )
            meta["transition_sampled"] = hit / cfg.shots
        rec = _record(psi, psi0, targets, layout, K0, Q0, cfg.t_max, meta)
        rec.probabilities = _probability_map(psi, layout)
        records.append(rec)
    extra = ("transition_exact",) + (("transition_sampled",) if cfg.shots else ())
    return records, ("lambda",), extra, {"hamiltonians": hams}


_RUNNERS = {
    "rabi": _run_rabi,
    "trotter-study": _run_trotter_study,
    "coupling-sweep": _run_coupling_sweep,
    "nmax-study": _run_nmax_study,
    "pp-collision": _run_pp_collision,
    "hardware-minimal": _run_hardware_minimal,
}


def run_scenario(cfg: ScenarioConfig, write_files: bool = True):
    """Execute a scenario; returns its records and writes CSV plus a manifest."""
    if cfg.scenario not in _RUNNERS:
        raise SchemaError(f"scenario: unknown scenario {cfg.scenario!r}")
    records, sweep_cols, extra_cols, extras = _RUNNERS[cfg.scenario](cfg)
    csv_text = records_to_csv(records, sweep_cols, extra_cols)
    manifest = {
        "package_version": __version__,
        "config": cfg.echo(),
        "qubits": QubitLayout(cfg.mode_config).total_qubits,
        "hamiltonian_term_counts": [len(h) for h in extras.get("hamiltonians", [])],
        "hamiltonian_hashes": [
            hashlib.sha256(dumps(h).encode()).hexdigest()
            for h in extras.get("hamiltonians", [])
        ],
        "records": len(records),
        "csv_columns": list(sweep_cols) + list(("time", "survival", "transition", "leak_K", "leak_Q")) + list(extra_cols),
    }
    for key, value in extras.items():
        if key != "hamiltonians":
            manifest[key] = value
    files = {}
    if write_files:
        os.makedirs(cfg.output_dir, exist_ok=True)
        csv_path = os.path.join(cfg.output_dir, f"{cfg.scenario}.csv")
        manifest_path = os.path.join(cfg.output_dir, f"{cfg.scenario}.manifest.json")
        with open(csv_path, "w") as fh:
            fh.write(csv_text)
        with open(manifest_path, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        files = {"csv": csv_path, "manifest": manifest_path}
        detailed = [
            {"time": r.time, **{k: v for k, v in r.metadata.items() if k != "plan_hash"},
             "probabilities": r.probabilities}
            for r in records
            if r.probabilities is not None
        ]
        if detailed:
            prob_path = os.path.join(cfg.output_dir, f"{cfg.scenario}.probabilities.json")
            with open(prob_path, "w") as fh:
                json.dump(detailed, fh, indent=2, sort_keys=True)
                fh.write("\n")
            files["probabilities"] = prob_path
    return records, csv_text, manifest, files
