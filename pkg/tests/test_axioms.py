from decomp.axioms import (
    check_cartesian,
    check_complete,
    check_decomposition,
    check_flanked,
    check_locally_finite,
    check_map_class,
    check_mobius,
    check_segal,
    check_tight,
    check_wide,
)
from decomp.ingest import chain_poset, divisor_poset, nerve_poset
from decomp.presheaf import (
    FinSSet,
    dec_bot,
    point_sset,
    transpose_arrow,
    u_star,
    unit_eta,
    xi_representable,
)
from conftest import chipped_object, spine_object

SEP = "≤"


def test_segal_on_nerves(poset_nerves):
    for X in poset_nerves.values():
        assert check_segal(X).ok


def test_segal_point():
    assert check_segal(point_sset(4)).ok


def test_segal_fails_on_spine_with_witness():
    rep = check_segal(spine_object())
    assert not rep.ok
    lines = "\n".join(rep.lines())
    assert "degree=2" in lines
    assert SEP.join(["0", "1"]) in lines and SEP.join(["1", "2"]) in lines


def test_decomposition_on_nerves(poset_nerves):
    X = poset_nerves["d12"]
    assert check_decomposition(X, "direct").ok
    assert check_decomposition(X, "decalage").ok
    assert check_decomposition(X, "both").ok


def test_decomposition_point():
    assert check_decomposition(point_sset(4)).ok


def test_decomposition_methods_agree_on_planted_objects():
    spine = spine_object()
    d = check_decomposition(spine, "direct")
    dec = check_decomposition(spine, "decalage")
    assert d.status == dec.status
    # the spine composes no pair of its nondegenerate edges, yet every
    # exactness square is a pullback: it decomposes without being Segal
    assert d.ok
    chipped = chipped_object()
    d = check_decomposition(chipped, "direct")
    dec = check_decomposition(chipped, "decalage")
    assert d.status == dec.status == "FAIL"
    both = check_decomposition(chipped, "both")
    assert not both.ok


def test_non_segal_decomposition_example(trunc_add):
    assert not check_segal(trunc_add).ok
    assert check_decomposition(trunc_add, "both").ok


def test_complete_on_nerves(poset_nerves):
    for X in poset_nerves.values():
        assert check_complete(X)


def test_complete_planted_failure():
    X = FinSSet(
        cap=1,
        levels={0: ["a", "b"], 1: ["e"]},
        faces={(1, 0): {"e": "a"}, (1, 1): {"e": "a"}},
        degens={(0, 0): {"a": "e", "b": "e"}},
    )
    assert not check_complete(X)


def test_complete_implies_all_degeneracies_injective(poset_nerves):
    for X in poset_nerves.values():
        if not check_complete(X):
            continue
        for (k, j), table in X.degens.items():
            assert len(set(table.values())) == len(table), (k, j)


def test_map_class_identity():
    X = nerve_poset(divisor_poset(6), 5)
    from decomp.presheaf import SSetMap

    F = SSetMap(X, X, {k: {x: x for x in X.levels[k]}
                       for k in range(X.cap + 1)})
    assert check_map_class(F, "culf").ok


def test_map_class_counit(poset_nerves):
    _, counit = dec_bot(poset_nerves["chain2"])
    assert check_map_class(counit, "culf").ok
    assert check_map_class(counit, "conservative").ok
    assert check_map_class(counit, "ulf").ok


def test_map_class_subposet_inclusion():
    """The edge 0<=1 includes the 1-chain into the 2-chain as a full
    subcategory closed under factorisations, hence cartesian on generics."""
    from decomp.presheaf import SSetMap

    small = nerve_poset(chain_poset(1), 4)
    big = nerve_poset(chain_poset(2), 4)
    comps = {k: {x: x for x in small.levels[k]} for k in range(small.cap + 1)}
    F = SSetMap(small, big, comps)
    assert check_map_class(F, "ulf").ok
    assert check_map_class(F, "culf").ok


def test_flanked_examples(poset_nerves):
    assert check_flanked(u_star(poset_nerves["d6"])).ok
    assert check_flanked(xi_representable(1, 4)).ok
    assert check_flanked(xi_representable(1, 4), bonus=True).ok


def test_flanked_planted_failure(poset_nerves):
    A = u_star(poset_nerves["d6"])
    table = dict(A.sbot[-1])
    src = next(iter(table))
    others = [v for v in A.levels[0] if v != table[src]]
    table[src] = others[0]
    A.sbot[-1] = table
    rep = check_flanked(A)
    assert not rep.ok


def test_wide_and_cartesian(poset_nerves):
    X = poset_nerves["d12"]
    A = u_star(X)
    eta = unit_eta(A)
    assert check_cartesian(eta)
    g = transpose_arrow(X, SEP.join(["1", "12"]))
    assert not check_wide(g)  # codomain degree -1 has many arrows
    from decomp.presheaf import XiSetMap

    ident = XiSetMap(A, A, {k: {x: x for x in A.levels[k]}
                            for k in range(-1, A.cap + 1)})
    assert check_wide(ident) and check_cartesian(ident)


def test_locally_finite(poset_nerves):
    for X in poset_nerves.values():
        assert check_locally_finite(X) is True


def test_tight_requires_certificate(poset_nerves):
    X = nerve_poset(divisor_poset(12), 6)
    rep = check_tight(X)
    assert rep.ok
    assert rep.data["bounds"][SEP.join(["1", "12"])] == 3
    X.stable_from = None
    assert check_tight(X).status == "INCONCLUSIVE"


def test_tight_bounds_simple_cases():
    pt = point_sset(4)
    rep = check_tight(pt)
    assert rep.ok and set(rep.data["bounds"].values()) == {0}
    X = nerve_poset(chain_poset(1), 4)
    rep = check_tight(X)
    assert rep.data["bounds"][SEP.join(["0", "1"])] == 1


def test_tight_detects_false_claim():
    X = nerve_poset(divisor_poset(6), 5)
    X.stable_from = 1  # false: there are nondegenerate 2-simplices
    rep = check_tight(X)
    assert rep.status == "FAIL"


def test_mobius_verdicts(poset_nerves, trunc_add):
    for X in poset_nerves.values():
        assert check_mobius(X).ok
    assert check_mobius(trunc_add).ok
    assert check_mobius(point_sset(4)).ok
    loose = nerve_poset(divisor_poset(6), 5)
    loose.stable_from = None
    assert check_mobius(loose).status == "INCONCLUSIVE"


def test_mobius_fails_on_incomplete():
    X = FinSSet(
        cap=1,
        levels={0: ["a", "b"], 1: ["e"]},
        faces={(1, 0): {"e": "a"}, (1, 1): {"e": "a"}},
        degens={(0, 0): {"a": "e", "b": "e"}},
    )
    assert check_mobius(X).status == "FAIL"


def test_invalid_input_fails_both_methods():
    from conftest import invalid_object

    X = invalid_object()
    d = check_decomposition(X, "direct")
    dec = check_decomposition(X, "decalage")
    assert d.status == dec.status == "FAIL"
