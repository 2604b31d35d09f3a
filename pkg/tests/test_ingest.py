from math import comb

import pytest

from decomp.axioms import check_complete, check_decomposition, check_segal
from decomp.ingest import (
    CategorySpec,
    MonoidSpec,
    PosetSpec,
    SpecError,
    boolean_poset,
    chain_poset,
    divisor_poset,
    nerve,
    nerve_category,
    nerve_monoid,
    nerve_poset,
    truncated_addition,
)
from decomp.interval import ssets_isomorphic
from decomp.presheaf import ez_level_nondegenerate, point_sset, validate_sset


def test_poset_closure_and_interval():
    spec = divisor_poset(12)
    assert spec.leq("1", "12") and spec.leq("2", "4")
    assert not spec.leq("4", "6")
    sub = spec.interval("2", "12")
    assert sorted(sub.elements) == ["12", "2", "4", "6"]
    assert spec.longest_strict_chain() == 3


def test_poset_antisymmetry_rejected():
    with pytest.raises(SpecError):
        PosetSpec.from_pairs(["a", "b"], [("a", "b"), ("b", "a")])


def test_nerve_chain_counts():
    X = nerve_poset(chain_poset(1), 3)
    assert [len(X.levels[k]) for k in range(3)] == [2, 3, 4]


def test_nerve_default_cap():
    X = nerve_poset(divisor_poset(12))
    assert X.cap == 6  # longest strict chain 3, plus headroom
    assert X.stable_from == 3


def test_nerve_rejects_tiny_cap():
    with pytest.raises(SpecError):
        nerve_poset(chain_poset(1), 1)


def test_nerve_poset_axioms(poset_nerves):
    for X in poset_nerves.values():
        assert validate_sset(X).ok
        assert check_segal(X).ok
        assert check_complete(X)
        assert check_decomposition(X, "both").ok


def test_nerve_stable_from_certified(poset_nerves):
    for X in poset_nerves.values():
        for k in range(X.stable_from + 1, X.cap + 1):
            assert not ez_level_nondegenerate(X, k)


def test_trivial_monoid_is_point():
    spec = MonoidSpec.build(["e"], "e", {("e", "e"): "e"})
    X = nerve_monoid(spec, 4)
    assert ssets_isomorphic(X, point_sset(4)) is not None


def test_monoid_rejects_unit_factorisation():
    with pytest.raises(SpecError) as err:
        MonoidSpec.build(
            ["e", "g"], "e",
            {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g",
             ("g", "g"): "e"})
    assert "unit" in str(err.value)


def test_monoid_rejects_idempotent():
    with pytest.raises(SpecError) as err:
        MonoidSpec.build(
            ["0", "1"], "0",
            {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1",
             ("1", "1"): "1"})
    assert "factorisations" in str(err.value)


def test_truncated_addition_monoid():
    spec = truncated_addition(3)
    assert spec.chain_bound() == 3
    X = nerve_monoid(spec, 5)
    assert validate_sset(X).ok
    # level k holds the <=3 sums split into k ordered parts
    for k in range(6):
        assert len(X.levels[k]) == comb(k + 3, 3)


def test_two_object_category_matches_chain():
    spec = CategorySpec.build(
        ["x", "y"],
        {"ix": ("x", "x"), "iy": ("y", "y"), "f": ("x", "y")},
        {"x": "ix", "y": "iy"},
        {},
    )
    X = nerve_category(spec, 3)
    Y = nerve_poset(chain_poset(1), 3)
    assert ssets_isomorphic(X, Y) is not None


def test_category_requires_composites():
    with pytest.raises(SpecError):
        CategorySpec.build(
            ["x"],
            {"ix": ("x", "x"), "f": ("x", "x")},
            {"x": "ix"},
            {},
        )


def test_category_cycle_has_no_default_cap():
    spec = CategorySpec.build(
        ["x"],
        {"ix": ("x", "x"), "f": ("x", "x")},
        {"x": "ix"},
        {("f", "f"): "f"},
    )
    # an idempotent endo-arrow composes with itself forever
    assert spec.chain_bound() is None
    with pytest.raises(SpecError):
        nerve_category(spec)
    X = nerve_category(spec, 4)
    assert X.stable_from is None
    assert validate_sset(X).ok


def test_level_guard(monkeypatch):
    monkeypatch.setenv("DECOMP_MAX_LEVEL_SIZE", "10")
    with pytest.raises(SpecError) as err:
        nerve_poset(divisor_poset(60), 4)
    assert "DECOMP_MAX_LEVEL_SIZE" in str(err.value)


def test_nerve_dispatch():
    assert nerve(chain_poset(1), 3).cap == 3
    assert nerve(truncated_addition(2), 4).cap == 4
    with pytest.raises(SpecError):
        nerve(object())


def test_boolean_poset_shape():
    b3 = boolean_poset(3)
    assert len(b3.elements) == 8
    assert b3.longest_strict_chain() == 3
