import numpy as np
import pytest

from lfyukawa.fock import (
    FockState,
    ModeConfig,
    QubitLayout,
    charge_tables,
    decode,
    encode,
    enumerate_sector,
    k_of,
    q_of,
    qubit_count,
)


def test_qubit_count_reference_registers():
    assert qubit_count(ModeConfig.uniform(3, 3)) == 12
    assert qubit_count(ModeConfig.uniform(1, 1)) == 3
    assert qubit_count(ModeConfig.uniform(5, 3)) == 20
    assert qubit_count(ModeConfig(2, 3, 2, (7, 1))) == 2 + 3 + 3 + 1


def test_modal_cap_must_fill_qubits():
    with pytest.raises(ValueError):
        ModeConfig(1, 1, 1, (2,))
    with pytest.raises(ValueError):
        ModeConfig(1, 1, 1, (0,))
    with pytest.raises(ValueError):
        ModeConfig(1, 1, 0, ())


def test_encode_reference_bitstrings():
    layout = QubitLayout(ModeConfig.uniform(3, 3))
    f2 = FockState((0, 1, 0), (0, 0, 0), (0, 0, 0))
    assert layout.format_bits(layout.encode(f2)) == "010 000 00 00 00"
    vac = FockState.vacuum(layout.config)
    assert layout.format_bits(layout.encode(vac)) == "000 000 00 00 00"
    three = FockState((0, 0, 0), (0, 0, 0), (3, 0, 0))
    assert layout.format_bits(layout.encode(three)) == "000 000 11 00 00"


def test_boson_occupancy_big_endian():
    layout = QubitLayout(ModeConfig(1, 1, 1, (7,)))
    one = FockState((0,), (0,), (1,))
    assert layout.format_bits(layout.encode(one)) == "0 0 001"


def test_encode_rejects_over_cap():
    layout = QubitLayout(ModeConfig.uniform(3, 3))
    with pytest.raises(ValueError):
        layout.encode(FockState((0, 0, 0), (0, 0, 0), (4, 0, 0)))


def test_decode_reference_state():
    layout = QubitLayout(ModeConfig.uniform(3, 3))
    state = decode(layout.parse_bits("100 000 01 00 00"), layout)
    assert state == FockState((1, 0, 0), (0, 0, 0), (1, 0, 0))
    assert decode(0, layout) == FockState.vacuum(layout.config)


def test_encode_decode_roundtrip_exhaustive():
    layout = QubitLayout(ModeConfig.uniform(3, 3))
    for index in range(1 << layout.total_qubits):
        assert encode(decode(index, layout), layout) == index


def test_charges_reference_values():
    f2 = FockState((0, 1, 0), (0, 0, 0), (0, 0, 0))
    assert k_of(f2) == 2 and q_of(f2) == 1
    assert k_of(FockState.vacuum(ModeConfig.uniform(3, 3))) == 0
    f45 = FockState((0, 0, 0, 1, 1), (0,) * 5, (0,) * 5)
    assert k_of(f45) == 9 and q_of(f45) == 2
    trio = FockState((0, 1, 0), (0, 1, 0), (0, 1, 0))
    assert q_of(trio) == 0 and k_of(trio) == 6


def test_charges_additive_over_disjoint_union():
    a = FockState((1, 0, 0), (0, 0, 0), (0, 2, 0))
    b = FockState((0, 0, 1), (0, 1, 0), (1, 0, 0))
    union = FockState((1, 0, 1), (0, 1, 0), (1, 2, 0))
    assert k_of(union) == k_of(a) + k_of(b)
    assert q_of(union) == q_of(a) + q_of(b)


def test_sector_k2_q1_is_the_two_level_space():
    config = ModeConfig.uniform(3, 3)
    layout = QubitLayout(config)
    states = enumerate_sector(config, 2, 1)
    bits = [layout.format_bits(layout.encode(s)) for s in states]
    assert bits == ["010 000 00 00 00", "100 000 01 00 00"]


def test_sector_vacuum_only_at_origin():
    config = ModeConfig.uniform(4, 3)
    assert enumerate_sector(config, 0, 0) == [FockState.vacuum(config)]
    assert enumerate_sector(config, 0, 1) == []


@pytest.mark.parametrize("config", [ModeConfig.uniform(3, 3), ModeConfig(2, 2, 2, (3, 1))])
def test_sector_enumeration_matches_full_scan(config):
    layout = QubitLayout(config)
    k_arr, q_arr = charge_tables(layout)
    seen = 0
    for K in range(config.max_k + 1):
        for Q in range(-config.n_antifermion_modes, config.n_fermion_modes + 1):
            states = enumerate_sector(config, K, Q)
            expect = np.nonzero((k_arr == K) & (q_arr == Q))[0]
            assert [layout.encode(s) for s in states] == expect.tolist()
            seen += len(states)
    assert seen == 1 << layout.total_qubits  # sectors partition the space


def test_sector_k9_q2_matches_scan_on_pp_register():
    config = ModeConfig.uniform(5, 3)
    layout = QubitLayout(config)
    k_arr, q_arr = charge_tables(layout)
    expect = np.nonzero((k_arr == 9) & (q_arr == 2))[0]
    states = enumerate_sector(config, 9, 2)
    assert [layout.encode(s) for s in states] == expect.tolist()
    assert len(states) > 0


def test_parse_bits_rejects_wrong_length():
    layout = QubitLayout(ModeConfig.uniform(3, 3))
    with pytest.raises(ValueError):
        layout.parse_bits("010 000")
