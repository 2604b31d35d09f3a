"""Canonical labeling and isomorphism search for finite unary structures.

A structure is a family of sorted carriers with labeled total functions
between them (faces, degeneracies, the extra interval-site maps).  Colors
are refined by in/out neighborhood signatures; remaining ties are broken
by individualization with full backtracking, taking the minimum serialized
form, so equal canonical forms mean isomorphic structures and conversely.
Desk-scale inputs keep the search tiny; no automorphism pruning is done.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class UnarySystem:
    """sorts: sort-key -> element ids; maps: (label, src sort, tgt sort, table)."""

    sorts: dict
    maps: list

    def elements(self):
        return [(s, x) for s in sorted(self.sorts) for x in self.sorts[s]]


def _edges(sys: UnarySystem):
    out_edges = {e: [] for e in sys.elements()}
    in_edges = {e: [] for e in sys.elements()}
    for label, src, tgt, table in sorted(sys.maps, key=lambda m: m[0]):
        for x, y in table.items():
            out_edges[(src, x)].append((label, (tgt, y)))
            in_edges[(tgt, y)].append((label, (src, x)))
    return out_edges, in_edges


def _refine(elements, out_edges, in_edges, colors):
    ncolors = len(set(colors.values()))
    while True:
        sigs = {}
        for e in elements:
            sigs[e] = (
                colors[e],
                tuple((lbl, colors[y]) for lbl, y in out_edges[e]),
                tuple(sorted((lbl, colors[y]) for lbl, y in in_edges[e])),
            )
        ranks = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
        colors = {e: ranks[sigs[e]] for e in elements}
        n = len(set(colors.values()))
        if n == ncolors:
            return colors
        ncolors = n


def _initial_colors(sys: UnarySystem):
    order = {s: i for i, s in enumerate(sorted(sys.sorts))}
    return {(s, x): order[s] for s in sys.sorts for x in sys.sorts[s]}


def canonical_order(sys: UnarySystem) -> dict:
    """Canonical position of every element within its sort.

    Returns {sort: {id: position}}; isomorphic systems produce orderings
    under which their serializations coincide.
    """
    elements = sys.elements()
    out_edges, in_edges = _edges(sys)
    maps = sorted(sys.maps, key=lambda m: m[0])
    best: list = [None, None]

    def serialize(order):
        key = [tuple(len(sys.sorts[s]) for s in sorted(sys.sorts))]
        for label, src, tgt, table in maps:
            ids = sorted(sys.sorts[src], key=lambda x: order[(src, x)])
            key.append(tuple(order[(tgt, table[x])] for x in ids))
        return tuple(key)

    def descend(colors):
        classes: dict[int, list] = {}
        for e in elements:
            classes.setdefault(colors[e], []).append(e)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            order = dict(colors)
            key = serialize(order)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, order
            return
        fresh = max(colors.values()) + 1
        for e in target:
            nxt = dict(colors)
            nxt[e] = fresh
            descend(_refine(elements, out_edges, in_edges, nxt))

    descend(_refine(elements, out_edges, in_edges, _initial_colors(sys)))
    order = best[1]
    result: dict = {}
    for s in sys.sorts:
        ranked = sorted(sys.sorts[s], key=lambda x: order[(s, x)])
        result[s] = {x: i for i, x in enumerate(ranked)}
    return result


def find_isomorphism(sys_a: UnarySystem, sys_b: UnarySystem) -> dict | None:
    """A sort-preserving bijection commuting with every labeled map, or None.

    Joint color refinement seeds the search; candidates are tried within
    matching color classes with incremental consistency checks.
    """
    if sorted(sys_a.sorts) != sorted(sys_b.sorts):
        return None
    for s in sys_a.sorts:
        if len(sys_a.sorts[s]) != len(sys_b.sorts[s]):
            return None
    labels_a = sorted(m[0] for m in sys_a.maps)
    labels_b = sorted(m[0] for m in sys_b.maps)
    if labels_a != labels_b:
        return None

    union = UnarySystem(
        sorts={s: [("a", x) for x in sys_a.sorts[s]] + [("b", x) for x in sys_b.sorts[s]]
               for s in sys_a.sorts},
        maps=(
            [(lbl, src, tgt, {("a", x): ("a", y) for x, y in tab.items()})
             for lbl, src, tgt, tab in sys_a.maps]
            + [(lbl, src, tgt, {("b", x): ("b", y) for x, y in tab.items()})
               for lbl, src, tgt, tab in sys_b.maps]
        ),
    )
    elements = union.elements()
    out_edges, in_edges = _edges(union)
    colors = _refine(elements, out_edges, in_edges, _initial_colors(union))

    a_by_color: dict[int, list] = {}
    b_by_color: dict[int, list] = {}
    for s in union.sorts:
        for tag, x in union.sorts[s]:
            c = colors[(s, (tag, x))]
            (a_by_color if tag == "a" else b_by_color).setdefault(c, []).append((s, x))
    for c in set(a_by_color) | set(b_by_color):
        if len(a_by_color.get(c, ())) != len(b_by_color.get(c, ())):
            return None

    def color_of(e):
        return colors[(e[0], ("a", e[1]))]

    todo = sorted(
        ((s, x) for s in sys_a.sorts for x in sys_a.sorts[s]),
        key=lambda e: (len(a_by_color[color_of(e)]), color_of(e), e[1]),
    )
    out_a = {e: [] for e in ((s, x) for s in sys_a.sorts for x in sys_a.sorts[s])}
    in_a = {e: [] for e in out_a}
    tables_b = {}
    for lbl, src, tgt, tab in sys_a.maps:
        for x, y in tab.items():
            out_a[(src, x)].append((lbl, (tgt, y)))
            in_a[(tgt, y)].append((lbl, (src, x)))
    for lbl, src, tgt, tab in sys_b.maps:
        tables_b[lbl] = tab

    assign: dict = {}
    used: set = set()

    def consistent(e, f):
        for lbl, e2 in out_a[e]:
            if e2 in assign and tables_b[lbl][f[1]] != assign[e2][1]:
                return False
        for lbl, e0 in in_a[e]:
            if e0 in assign and tables_b[lbl][assign[e0][1]] != f[1]:
                return False
        return True

    def search():
        n = len(todo)
        iters: list = [None] * n
        chosen: list = [None] * n
        depth = 0
        while depth >= 0:
            if depth == n:
                return True
            e = todo[depth]
            if iters[depth] is None:
                iters[depth] = iter(b_by_color[color_of(e)])
            advanced = False
            for y in iters[depth]:
                if y[0] != e[0] or y in used or not consistent(e, y):
                    continue
                assign[e] = y
                used.add(y)
                chosen[depth] = y
                depth += 1
                advanced = True
                break
            if not advanced:
                iters[depth] = None
                depth -= 1
                if depth >= 0:
                    used.remove(chosen[depth])
                    del assign[todo[depth]]
        return False

    if not search():
        return None
    result: dict = {s: {} for s in sys_a.sorts}
    for (s, x), (_, y) in assign.items():
        result[s][x] = y
    return result
