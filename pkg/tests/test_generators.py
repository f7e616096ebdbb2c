"""Generators and the JSON file formats."""

import json

import numpy as np
import pytest

from mixbounds import (
    build_canonical_flow,
    classify,
    dhn,
    directed_cycle,
    generate,
    load_chain,
    load_flow,
    random_reversible,
    save_chain,
    save_flow,
    two_state,
    two_state_uniform_flow,
    uniform_walk,
    validate_flow,
)
from mixbounds.errors import BadParams, MixboundsError


def test_two_state_matrix():
    chain = two_state(0.25)
    np.testing.assert_array_equal(chain.P, [[0.25, 0.75], [0.75, 0.25]])
    assert chain.labels == ("a", "b")
    for bad in (0.0, 1.0, -0.5, 2.0):
        with pytest.raises(BadParams):
            two_state(bad)


def test_dhn_rows():
    chain = dhn(2)
    # enumerate the four rows by the two congruences mod 4
    want = np.zeros((4, 4))
    idx = {v: i for i, v in enumerate([-1, 0, 1, 2])}
    for v in [-1, 0, 1, 2]:
        ahead = ((v + 1 + 1) % 4) - 1  # value of (v+1) mod 4 in [-1, 2]
        flip = ((-v + 1) % 4) - 1
        want[idx[v], idx[ahead]] += 0.5
        want[idx[v], idx[flip]] += 0.5
    np.testing.assert_array_equal(chain.P, want)


def test_dhn_rows_sum_exactly_to_one():
    for n in range(2, 65):
        chain = dhn(n)
        sums = np.asarray(chain.P).sum(axis=1)
        assert np.all(sums == 1.0), f"n={n}"


def test_dhn_labels_ascending():
    chain = dhn(3)
    assert chain.labels == ("-2", "-1", "0", "1", "2", "3")
    with pytest.raises(BadParams):
        dhn(1)


def test_uniform_walk_and_cycle():
    np.testing.assert_array_equal(uniform_walk(2).P, [[0.5, 0.5], [0.5, 0.5]])
    c = directed_cycle(4)
    assert classify(c).period == 4
    with pytest.raises(BadParams):
        uniform_walk(1)
    with pytest.raises(BadParams):
        directed_cycle(0)


def test_random_reversible_properties():
    chain = random_reversible(8, seed=42)
    assert classify(chain).ergodic and classify(chain).reversible
    again = random_reversible(8, seed=42)
    np.testing.assert_array_equal(chain.P, again.P)
    other = random_reversible(8, seed=43)
    assert np.abs(chain.P - other.P).max() > 1e-3


def test_generate_dispatch():
    chain = generate("two_state", delta=0.1)
    assert chain.n == 2
    chain = generate("lazy_of", of="two_state", delta=0.1)
    assert chain.P[0, 0] >= 0.5
    assert generate("random_reversible", N=4).n == 4  # seed optional
    with pytest.raises(BadParams):
        generate("nope")
    with pytest.raises(BadParams):
        generate("two_state")  # missing delta
    with pytest.raises(BadParams):
        generate("two_state", delta=0.1, n=3)  # stray parameter
    with pytest.raises(BadParams):
        generate("lazy_of", delta=0.1)  # missing inner kind


def test_explicit_flow_masses():
    flow = two_state_uniform_flow(0.25)
    assert [p.mass for p in flow.paths] == [0.25, 0.25, 0.25, 0.25]
    valid, odd, _ = validate_flow(flow)
    assert valid and not odd


# ---------------------------------------------------------------- files


def test_chain_round_trip_bit_for_bit(tmp_path):
    for chain in (two_state(0.1), dhn(5), random_reversible(7, seed=3), uniform_walk(3)):
        path = tmp_path / "chain.json"
        save_chain(chain, path, meta={"seed": 3})
        loaded = load_chain(path)
        np.testing.assert_array_equal(loaded.P, chain.P)
        assert loaded.labels == chain.labels
        assert loaded.name == chain.name
        # and a second cycle stays identical
        save_chain(loaded, path)
        np.testing.assert_array_equal(load_chain(path).P, chain.P)


def test_chain_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"states": ["a", "b"]}))
    with pytest.raises(MixboundsError):
        load_chain(path)


def test_flow_round_trip(tmp_path):
    base = two_state(0.25)
    target = uniform_walk(2, labels=["a", "b"])
    flow = build_canonical_flow(base, target, odd=True)
    path = tmp_path / "flow.json"
    save_flow(flow, path)
    loaded = load_flow(path, base, target)
    assert [(p.states, p.mass) for p in loaded.paths] == [
        (p.states, p.mass) for p in flow.paths
    ]
    wrong = two_state(0.1)
    with pytest.raises(MixboundsError):
        load_flow(path, wrong, target)


def test_flow_file_bad_indices(tmp_path):
    base = two_state(0.25)
    target = uniform_walk(2, labels=["a", "b"])
    path = tmp_path / "flow.json"
    path.write_text(json.dumps({"paths": [{"path": [0, 7], "mass": 0.25}]}))
    with pytest.raises(MixboundsError):
        load_flow(path, base, target)
