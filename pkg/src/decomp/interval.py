"""Algebraic intervals and the factorisation-interval construction.

An interval is a reduced complete flanked presheaf on the strict-interval
site whose underlying simplicial set satisfies the exactness axiom.  The
interval of an arrow is cut out of the ambient object by the long-edge
fiber formula; canonicalization truncates at the intrinsic nondegeneracy
bound and relabels by canonical position, so isomorphic intervals get
identical serializations and content digests.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .axioms import (
    check_complete,
    check_decomposition,
    check_flanked,
    check_mobius,
)
from .ingest import CategorySpec, nerve_category
from .labeling import UnarySystem, canonical_order, find_isomorphism
from .presheaf import (
    CapError,
    FinSSet,
    FinXiSet,
    SSetMap,
    XiSetMap,
    degenerate_edges,
    long_edge_table,
    nondeg_bound,
    principal_edge_tables,
    truncate_xiset,
    validate_xiset,
    xi_generators,
)
from .report import Report


class IntervalError(ValueError):
    pass


@dataclass
class AlgebraicInterval:
    """A reduced complete flanked exact presheaf, with optional provenance."""

    data: FinXiSet
    provenance: tuple[str, str] | None = None


@dataclass
class IntervalClass:
    """An interval in canonical form together with its content digest."""

    canonical: AlgebraicInterval
    digest: str


@dataclass
class SubdividedInterval:
    """A k-simplex of an interval whose long edge is the longest edge."""

    k: int
    target: str
    widemap: str


def longest_edge(A: FinXiSet) -> str:
    """The image of the unique degree -1 element under both outer
    degeneracies."""
    (base,) = A.levels[-1]
    return A.sbot[0][A.stop[-1][base]]


def validate_interval(A: AlgebraicInterval) -> Report:
    """Reduced + valid + complete + flanked (+ exactness when cap allows)."""
    rep = Report("validate_interval")
    data = A.data
    if len(data.levels[-1]) != 1:
        rep.fail(degree=-1, note="not-reduced")
        return rep
    base = validate_xiset(data)
    if not base.ok:
        rep.absorb(base)
        return rep
    under = i_star_interval(A)
    if not check_complete(under):
        rep.fail(degree=0, note="not-complete")
    fl = check_flanked(data)
    if not fl.ok:
        rep.absorb(fl)
    if data.cap >= 3:
        dc = check_decomposition(under, "direct")
        if not dc.ok:
            rep.absorb(dc)
        rep.verified_upto = data.cap
    else:
        rep.verified_upto = data.cap
    return rep


def i_star_interval(A: AlgebraicInterval) -> FinSSet:
    from .presheaf import i_star

    return i_star(A.data)


# ---------------------------------------------------------------------------
# the wide-cartesian factorisation


def wide_cartesian_factor(g: XiSetMap) -> tuple[XiSetMap, XiSetMap]:
    """Factor g: B -> A through the pullback of A along B_{-1} -> A_{-1}.

    The middle object has level n the fiber product B_{-1} x_{A_{-1}} A_n
    over the unique structure map to degree -1; the first factor is a
    bijection in degree -1, the second is a levelwise pullback.
    """
    from .presheaf import xi_edge_to_initial

    B, A = g.dom, g.cod
    if B.cap > A.cap:
        raise CapError("wide-cartesian factorisation needs dom.cap <= cod.cap")
    cap = B.cap
    gm1 = g.components[-1]

    to_init = {n: xi_edge_to_initial(A, n) for n in range(-1, cap + 1)}
    levels: dict[int, list[str]] = {}
    pairs: dict[int, list[tuple[str, str]]] = {}
    for n in range(-1, cap + 1):
        ps = [(b, x) for b in B.levels[-1] for x in A.levels[n]
              if gm1[b] == to_init[n][x]]
        pairs[n] = ps
        levels[n] = [f"{b}&{x}" for b, x in ps]

    def lift(table, n_src, n_tgt):
        return {f"{b}&{x}": f"{b}&{table[x]}" for b, x in pairs[n_src]}

    faces = {(k, i): lift(A.faces[(k, i)], k, k - 1)
             for k in range(1, cap + 1) for i in range(k + 1)}
    degens = {(k, j): lift(A.degens[(k, j)], k, k + 1)
              for k in range(cap) for j in range(k + 1)}
    dnew = lift(A.dnew, 0, -1)
    sbot = {k: lift(A.sbot[k], k, k + 1) for k in range(-1, cap)}
    stop = {k: lift(A.stop[k], k, k + 1) for k in range(-1, cap)}
    mid = FinXiSet(cap, levels, faces, degens, dnew, sbot, stop)

    to_init_B = {n: xi_edge_to_initial(B, n) for n in range(-1, cap + 1)}
    wide_comps = {
        n: {y: f"{to_init_B[n][y]}&{g.components[n][y]}" for y in B.levels[n]}
        for n in range(-1, cap + 1)
    }
    cart_comps = {n: {f"{b}&{x}": x for b, x in pairs[n]}
                  for n in range(-1, cap + 1)}
    wide = XiSetMap(B, mid, wide_comps)
    cart = XiSetMap(mid, A, cart_comps)
    return wide, cart


# ---------------------------------------------------------------------------
# factorisation intervals


def factorisation_interval(
    X: FinSSet, a: str, check: bool = False
) -> tuple[AlgebraicInterval, SSetMap]:
    """The interval of the arrow a: level k is the X_{k+2} long-edge fiber.

    Also returns the embedding of the underlying simplicial set back into X
    (the double outer face), which is cartesian on all generic maps.
    """
    if X.cap < 3:
        raise CapError("factorisation interval needs cap >= 3")
    if a not in set(X.levels[1]):
        raise IntervalError(f"{a!r} is not an arrow of the input")
    if not check_complete(X):
        raise IntervalError("input fails completeness")
    if check:
        dc = check_decomposition(X, "direct")
        if not dc.ok:
            raise IntervalError("input fails the exactness axiom:\n" + str(dc))

    cap = X.cap - 2
    fibers: dict[int, list[str]] = {}
    for k in range(-1, cap + 1):
        table = long_edge_table(X, k + 2)
        fibers[k] = [x for x in X.levels[k + 2] if table[x] == a]

    def restrict(table, k):
        return {x: table[x] for x in fibers[k]}

    levels = dict(fibers)
    faces = {(k, i): restrict(X.faces[(k + 2, i + 1)], k)
             for k in range(1, cap + 1) for i in range(k + 1)}
    degens = {(k, j): restrict(X.degens[(k + 2, j + 1)], k)
              for k in range(cap) for j in range(k + 1)}
    dnew = restrict(X.faces[(2, 1)], 0)
    sbot = {k: restrict(X.degens[(k + 2, 0)], k) for k in range(-1, cap)}
    stop = {k: restrict(X.degens[(k + 2, k + 2)], k) for k in range(-1, cap)}
    data = FinXiSet(cap, levels, faces, degens, dnew, sbot, stop)

    certified = X.stable_from is not None and X.stable_from <= X.cap - 2
    if certified:
        from .presheaf import i_star

        data.stable_from = nondeg_bound(i_star(data))
    interval = AlgebraicInterval(data, provenance=("interval", a))

    comps = {}
    for k in range(0, cap + 1):
        top = X.faces[(k + 1, k + 1)]
        bot = X.faces[(k + 2, 0)]
        comps[k] = {x: top[bot[x]] for x in fibers[k]}
    embed = SSetMap(i_star_interval(interval), X, comps)
    return interval, embed


# ---------------------------------------------------------------------------
# canonical forms


def sset_system(X: FinSSet) -> UnarySystem:
    maps = [(f"d[{k},{i}]", k, k - 1, X.faces[(k, i)])
            for k in range(1, X.cap + 1) for i in range(k + 1)]
    maps += [(f"s[{k},{j}]", k, k + 1, X.degens[(k, j)])
             for k in range(X.cap) for j in range(k + 1)]
    return UnarySystem({k: list(X.levels[k]) for k in range(X.cap + 1)}, maps)


def xi_system(A: FinXiSet) -> UnarySystem:
    maps = [(name, arrow.tgt, arrow.src, table)
            for name, arrow, table in xi_generators(A)]
    return UnarySystem({k: list(A.levels[k]) for k in range(-1, A.cap + 1)}, maps)


def canonicalize_with_map(
    A: AlgebraicInterval,
) -> tuple[IntervalClass, dict[int, dict[str, str]]]:
    """Canonical form plus the relabeling from the truncated input.

    The interval is truncated at its certified nondegeneracy bound (which
    pins down everything above it) and relabeled n<degree>_<position>; the
    digest is the hash of the canonical serialization, so it agrees for
    isomorphic intervals regardless of provenance or ambient cap.
    """
    data = A.data
    if data.stable_from is None:
        raise IntervalError(
            "interval has no certified stabilization degree; "
            "canonical truncation would be unsound")
    canon_cap = max(1, data.stable_from)
    if canon_cap > data.cap:
        raise IntervalError(
            f"stabilization degree {data.stable_from} exceeds cap {data.cap}")
    T = truncate_xiset(data, canon_cap)
    order = canonical_order(xi_system(T))
    relabel = {k: {x: f"n{k}_{order[k][x]}" for x in T.levels[k]}
               for k in range(-1, canon_cap + 1)}
    levels = {k: sorted(relabel[k].values()) for k in range(-1, canon_cap + 1)}
    faces = {(k, i): {relabel[k][x]: relabel[k - 1][y] for x, y in t.items()}
             for (k, i), t in T.faces.items()}
    degens = {(k, j): {relabel[k][x]: relabel[k + 1][y] for x, y in t.items()}
              for (k, j), t in T.degens.items()}
    dnew = {relabel[0][x]: relabel[-1][y] for x, y in T.dnew.items()}
    sbot = {k: {relabel[k][x]: relabel[k + 1][y] for x, y in t.items()}
            for k, t in T.sbot.items()}
    stop = {k: {relabel[k][x]: relabel[k + 1][y] for x, y in t.items()}
            for k, t in T.stop.items()}
    canon = FinXiSet(canon_cap, levels, faces, degens, dnew, sbot, stop,
                     stable_from=T.stable_from)
    from .formats import write_xiset

    text = write_xiset(canon)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    cls = IntervalClass(AlgebraicInterval(canon, A.provenance), digest)
    return cls, relabel


def canonicalize(A: AlgebraicInterval) -> IntervalClass:
    return canonicalize_with_map(A)[0]


def intervals_isomorphic(
    A: AlgebraicInterval | FinXiSet, B: AlgebraicInterval | FinXiSet
) -> dict[int, dict[str, str]] | None:
    """Levelwise bijection commuting with all structure maps, or None."""
    da = A.data if isinstance(A, AlgebraicInterval) else A
    db = B.data if isinstance(B, AlgebraicInterval) else B
    if da.cap != db.cap:
        raise CapError("isomorphism search needs equal caps")
    return find_isomorphism(xi_system(da), xi_system(db))


def ssets_isomorphic(X: FinSSet, Y: FinSSet) -> dict[int, dict[str, str]] | None:
    if X.cap != Y.cap:
        raise CapError("isomorphism search needs equal caps")
    return find_isomorphism(sset_system(X), sset_system(Y))


# ---------------------------------------------------------------------------
# rebuilding the category and extending the level data


@dataclass
class ExtendedInterval:
    """An interval rebuilt at a larger cap from its arrow category."""

    interval: AlgebraicInterval
    nerve: FinSSet
    embed: SSetMap
    arrow_name: dict[str, str]
    longest: str

    def chain_id(self, arrows: list[str]) -> str:
        """Nerve id of a composable chain given by source-interval arrows."""
        return "*".join(self.arrow_name[f] for f in arrows)


def interval_category(data: FinXiSet) -> tuple[CategorySpec, dict[str, str]]:
    """The finite category with objects A_0 and arrows A_1.

    Composition is read off the (unique, by the Segal property) level-2
    fillers; elements are renamed to neutral identifiers since ambient
    simplex names may use reserved characters.
    """
    objs = sorted(data.levels[0])
    arrs = sorted(data.levels[1])
    obj_name = {x: f"o{i}" for i, x in enumerate(objs)}
    arr_name = {f: f"a{i}" for i, f in enumerate(arrs)}
    d0, d1 = data.faces[(1, 0)], data.faces[(1, 1)]
    s0 = data.degens[(0, 0)]
    arrows = {arr_name[f]: (obj_name[d1[f]], obj_name[d0[f]]) for f in arrs}
    idents = {obj_name[x]: arr_name[s0[x]] for x in objs}
    comp: dict[tuple[str, str], str] = {}
    if data.cap >= 2:
        ident_set = set(s0.values())
        dd0, dd1, dd2 = data.faces[(2, 0)], data.faces[(2, 1)], data.faces[(2, 2)]
        for sig in data.levels[2]:
            f, g, h = dd2[sig], dd0[sig], dd1[sig]
            if f in ident_set or g in ident_set:
                continue
            key = (arr_name[f], arr_name[g])
            if key in comp and comp[key] != arr_name[h]:
                raise IntervalError(f"ambiguous composite for {f};{g}")
            comp[key] = arr_name[h]
    spec = CategorySpec.build(list(obj_name.values()), arrows, idents, comp)
    return spec, arr_name


def extend_interval(A: AlgebraicInterval | FinXiSet, xi_cap: int) -> ExtendedInterval:
    """Rebuild the interval at the requested cap via its arrow category."""
    data = A.data if isinstance(A, AlgebraicInterval) else A
    if xi_cap < 1:
        raise CapError("extension cap must be >= 1")
    spec, arr_name = interval_category(data)
    X = nerve_category(spec, xi_cap + 2)
    top_arrow = arr_name[longest_edge(data)]
    interval, embed = factorisation_interval(X, top_arrow)
    return ExtendedInterval(interval, X, embed, arr_name, top_arrow)


# ---------------------------------------------------------------------------
# subdivisions and certification


def _fiber(data: FinXiSet, k: int, nondeg: bool) -> list[str]:
    from .presheaf import i_star

    under = i_star(data)
    target = longest_edge(data)
    table = long_edge_table(under, k)
    hits = [x for x in under.levels[k] if table[x] == target]
    if nondeg and k >= 1:
        bad = degenerate_edges(under)
        tables = principal_edge_tables(under, k)
        hits = [x for x in hits if all(t[x] not in bad for t in tables)]
    return hits


def subdivisions(
    c: IntervalClass, k: int, nondegenerate: bool = False
) -> list[SubdividedInterval]:
    """All k-simplices over the longest edge; the degree-k fiber of the
    forget-the-subdivision projection over this interval."""
    if k < 0:
        raise CapError("subdivision degree must be >= 0")
    if k <= c.canonical.data.cap:
        data = c.canonical.data
    else:
        data = extend_interval(c.canonical, k).interval.data
    return [SubdividedInterval(k, c.digest, x)
            for x in sorted(_fiber(data, k, nondegenerate))]


def certify_mobius_interval(c: IntervalClass) -> Report:
    """Mobius conditions on the underlying simplicial set, plus the finite
    total of nondegenerate simplices and the longest-edge profile."""
    from .presheaf import ez_level_nondegenerate, i_star

    bound = c.canonical.data.stable_from or 0
    ext = extend_interval(c.canonical, max(1, bound + 2))
    under = i_star(ext.interval.data)
    rep = check_mobius(under)
    rep.check = "certify_mobius_interval"
    profile = []
    for r in range(0, bound + 1):
        profile.append(len(_fiber(ext.interval.data, r, nondeg=True)))
    rep.data["phi_profile"] = profile
    rep.data["nondegenerate_total"] = sum(
        len(ez_level_nondegenerate(under, r)) for r in range(under.cap + 1))
    return rep
