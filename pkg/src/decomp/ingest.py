"""Finite posets, partial monoids and categories, and their nerves.

Monoid multiplication tables may be partial: a string of elements is a
simplex only when all its contiguous products are defined.  That is what
makes truncations of infinite monoids (the additive naturals cut at a
bound, say) ingestible while genuinely non-stabilizing monoids are
rejected up front.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .presheaf import FinSSet

MAX_LEVEL_ENV = "DECOMP_MAX_LEVEL_SIZE"


class SpecError(ValueError):
    pass


def max_level_size() -> int:
    raw = os.environ.get(MAX_LEVEL_ENV, "")
    try:
        return int(raw) if raw else 100000
    except ValueError:
        return 100000


def _guard_level(k: int, size: int) -> None:
    if size > max_level_size():
        raise SpecError(
            f"level {k} would hold {size} simplices, over the "
            f"{MAX_LEVEL_ENV} limit {max_level_size()}"
        )


_FORBIDDEN = ("->", ";", "#", "≤", "*", "+", "&")


def check_name(name: str) -> str:
    if not name or any(c.isspace() for c in name):
        raise SpecError(f"bad element name {name!r}")
    for frag in _FORBIDDEN:
        if frag in name:
            raise SpecError(f"element name {name!r} contains reserved {frag!r}")
    return name


# ---------------------------------------------------------------------------
# posets


@dataclass
class PosetSpec:
    elements: list[str]
    le: set[tuple[str, str]] = field(default_factory=set)

    @classmethod
    def from_pairs(cls, elements, pairs) -> PosetSpec:
        """Build the reflexive-transitive closure and check antisymmetry."""
        elems = [check_name(e) for e in elements]
        if len(set(elems)) != len(elems):
            raise SpecError("duplicate poset elements")
        known = set(elems)
        rel = {(e, e) for e in elems}
        for a, b in pairs:
            if a not in known or b not in known:
                raise SpecError(f"relation {a} <= {b} uses unknown element")
            rel.add((a, b))
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c in elems:
                    if (b, c) in rel and (a, c) not in rel:
                        rel.add((a, c))
                        changed = True
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise SpecError(f"antisymmetry violated by {a} and {b}")
        return cls(sorted(elems), rel)

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.le

    def covers(self) -> list[tuple[str, str]]:
        out = []
        for a, b in sorted(self.le):
            if a == b:
                continue
            if any(z not in (a, b) and self.leq(a, z) and self.leq(z, b)
                   for z in self.elements):
                continue
            out.append((a, b))
        return out

    def up_sets(self) -> dict[str, list[str]]:
        return {a: [b for b in self.elements if self.leq(a, b)]
                for a in self.elements}

    def interval(self, x: str, y: str) -> PosetSpec:
        """The sub-poset of elements between x and y."""
        if not self.leq(x, y):
            raise SpecError(f"{x} is not below {y}")
        elems = [z for z in self.elements if self.leq(x, z) and self.leq(z, y)]
        keep = {p for p in self.le if p[0] in elems and p[1] in elems}
        return PosetSpec(elems, keep)

    def longest_strict_chain(self) -> int:
        depth = {e: 0 for e in self.elements}
        order = sorted(self.elements, key=lambda e: sum(
            1 for z in self.elements if self.leq(z, e)))
        for b in order:
            for a in self.elements:
                if a != b and self.leq(a, b):
                    depth[b] = max(depth[b], depth[a] + 1)
        return max(depth.values(), default=0)


def nerve_poset(spec: PosetSpec, cap: int | None = None) -> FinSSet:
    """Nerve with one simplex per weakly increasing chain, ids joined by <=."""
    longest = spec.longest_strict_chain()
    if cap is None:
        cap = longest + 3
    if cap < 2:
        raise SpecError("nerve needs cap >= 2")
    ups = spec.up_sets()
    sep = "≤"
    chains: dict[int, list[tuple[str, ...]]] = {0: [(e,) for e in spec.elements]}
    for k in range(1, cap + 1):
        nxt = [c + (b,) for c in chains[k - 1] for b in ups[c[-1]]]
        _guard_level(k, len(nxt))
        chains[k] = nxt
    levels = {k: [sep.join(c) for c in sorted(chains[k])] for c_ in (0,) for k in range(cap + 1)}
    faces = {}
    degens = {}
    for k in range(1, cap + 1):
        for i in range(k + 1):
            faces[(k, i)] = {sep.join(c): sep.join(c[:i] + c[i + 1:])
                             for c in chains[k]}
    for k in range(cap):
        for j in range(k + 1):
            degens[(k, j)] = {sep.join(c): sep.join(c[:j + 1] + c[j:])
                              for c in chains[k]}
    return FinSSet(cap, levels, faces, degens, stable_from=min(longest, cap))


# ---------------------------------------------------------------------------
# partial monoids


@dataclass
class MonoidSpec:
    elements: list[str]
    unit: str
    table: dict[tuple[str, str], str]

    @classmethod
    def build(cls, elements, unit, table) -> MonoidSpec:
        elems = [check_name(e) for e in elements]
        if len(set(elems)) != len(elems):
            raise SpecError("duplicate monoid elements")
        known = set(elems)
        if unit not in known:
            raise SpecError(f"unit {unit} is not an element")
        tbl = dict(table)
        for (a, b), c in tbl.items():
            if a not in known or b not in known or c not in known:
                raise SpecError(f"product {a}.{b}={c} uses unknown element")
        spec = cls(sorted(elems), unit, tbl)
        spec._validate()
        return spec

    def mul(self, a: str, b: str) -> str | None:
        return self.table.get((a, b))

    def _validate(self) -> None:
        e = self.unit
        for a in self.elements:
            if self.mul(e, a) != a or self.mul(a, e) != a:
                raise SpecError(f"unit laws fail at {a}")
        for a in self.elements:
            for b in self.elements:
                ab = self.mul(a, b)
                for c in self.elements:
                    bc = self.mul(b, c)
                    left = self.mul(ab, c) if ab is not None else None
                    right = self.mul(a, bc) if bc is not None else None
                    if ab is not None and left is not None:
                        if bc is None or right is None or left != right:
                            raise SpecError(
                                f"associativity fails on ({a},{b},{c})")
                    elif bc is not None and right is not None:
                        raise SpecError(f"associativity fails on ({a},{b},{c})")
        for (a, b), c in self.table.items():
            if c == e and (a, b) != (e, e):
                raise SpecError(
                    f"decomposition property fails: {a}.{b} = unit")
        # factorisations into non-units must die out, else no Mobius inversion
        nonunits = frozenset(x for x in self.elements if x != e)
        current = nonunits
        seen = set()
        length = 0
        while current:
            if current in seen:
                witness = sorted(current)[0]
                raise SpecError(
                    "decomposition property fails: element "
                    f"{witness} admits arbitrarily long factorisations")
            seen.add(current)
            length += 1
            nxt = set()
            for x in current:
                for u in nonunits:
                    xu = self.mul(x, u)
                    if xu is not None:
                        nxt.add(xu)
            current = frozenset(nxt)
        self._chain_bound = length

    def chain_bound(self) -> int:
        """Longest defined product of non-unit elements."""
        return self._chain_bound


def nerve_monoid(spec: MonoidSpec, cap: int | None = None) -> FinSSet:
    """One-object nerve; k-simplices are strings with all products defined."""
    bound = spec.chain_bound()
    if cap is None:
        cap = bound + 3
    if cap < 2:
        raise SpecError("nerve needs cap >= 2")
    e = spec.unit
    strings: dict[int, list[tuple[str, ...]]] = {0: [()]}
    products: dict[tuple[str, ...], str] = {(): e}
    for k in range(1, cap + 1):
        nxt = []
        for s in strings[k - 1]:
            for m in spec.elements:
                p = spec.mul(products[s], m)
                if p is not None:
                    t = s + (m,)
                    products[t] = p
                    nxt.append(t)
        _guard_level(k, len(nxt))
        strings[k] = sorted(nxt)

    def name(s: tuple[str, ...]) -> str:
        return "+".join(s) if s else "*"

    levels = {k: [name(s) for s in strings[k]] for k in range(cap + 1)}
    faces = {}
    degens = {}
    for k in range(1, cap + 1):
        for i in range(k + 1):
            table = {}
            for s in strings[k]:
                if i == 0:
                    out = s[1:]
                elif i == k:
                    out = s[:-1]
                else:
                    out = s[:i - 1] + (spec.mul(s[i - 1], s[i]),) + s[i + 1:]
                table[name(s)] = name(out)
            faces[(k, i)] = table
    for k in range(cap):
        for j in range(k + 1):
            degens[(k, j)] = {name(s): name(s[:j] + (e,) + s[j:])
                              for s in strings[k]}
    return FinSSet(cap, levels, faces, degens, stable_from=min(bound, cap))


def truncated_addition(bound: int) -> MonoidSpec:
    """The additive naturals cut off above `bound` (a partial monoid)."""
    elems = [str(i) for i in range(bound + 1)]
    table = {}
    for i in range(bound + 1):
        for j in range(bound + 1 - i):
            table[(str(i), str(j))] = str(i + j)
    return MonoidSpec.build(elems, "0", table)


# ---------------------------------------------------------------------------
# categories


@dataclass
class CategorySpec:
    objects: list[str]
    arrows: dict[str, tuple[str, str]]
    identities: dict[str, str]
    comp: dict[tuple[str, str], str]

    @classmethod
    def build(cls, objects, arrows, identities, comp) -> CategorySpec:
        objs = [check_name(o) for o in objects]
        if len(set(objs)) != len(objs):
            raise SpecError("duplicate objects")
        arrs = {check_name(f): (s, t) for f, (s, t) in arrows.items()}
        for f, (s, t) in arrs.items():
            if s not in objs or t not in objs:
                raise SpecError(f"arrow {f}: {s} -> {t} uses unknown object")
        idents = dict(identities)
        if sorted(idents) != sorted(objs):
            raise SpecError("every object needs exactly one identity arrow")
        for x, i in idents.items():
            if arrs.get(i) != (x, x):
                raise SpecError(f"identity {i} of {x} is not an endo-arrow")
        spec = cls(sorted(objs), arrs, idents,
                   {tuple(k): v for k, v in comp.items()})
        spec._validate()
        return spec

    def src(self, f: str) -> str:
        return self.arrows[f][0]

    def tgt(self, f: str) -> str:
        return self.arrows[f][1]

    def is_identity(self, f: str) -> bool:
        return self.identities.get(self.src(f)) == f

    def compose(self, f: str, g: str) -> str:
        """f then g."""
        if self.tgt(f) != self.src(g):
            raise SpecError(f"{f} and {g} are not composable")
        if self.is_identity(f):
            return g
        if self.is_identity(g):
            return f
        return self.comp[(f, g)]

    def _validate(self) -> None:
        for (f, g), h in self.comp.items():
            if f not in self.arrows or g not in self.arrows or h not in self.arrows:
                raise SpecError(f"composite {f};{g}={h} uses unknown arrow")
            if self.tgt(f) != self.src(g):
                raise SpecError(f"composite listed for non-composable {f};{g}")
            if (self.src(h), self.tgt(h)) != (self.src(f), self.tgt(g)):
                raise SpecError(f"composite {f};{g}={h} has wrong endpoints")
            if self.is_identity(f) and h != g:
                raise SpecError(f"identity law fails on {f};{g}")
            if self.is_identity(g) and h != f:
                raise SpecError(f"identity law fails on {f};{g}")
        nonid = [f for f in self.arrows if not self.is_identity(f)]
        for f in nonid:
            for g in nonid:
                if self.tgt(f) == self.src(g) and (f, g) not in self.comp:
                    raise SpecError(f"missing composite for {f};{g}")
        for f in nonid:
            for g in nonid:
                if self.tgt(f) != self.src(g):
                    continue
                for h in nonid:
                    if self.tgt(g) != self.src(h):
                        continue
                    if self.compose(self.compose(f, g), h) != \
                            self.compose(f, self.compose(g, h)):
                        raise SpecError(f"associativity fails on ({f},{g},{h})")

    def chain_bound(self) -> int | None:
        """Longest identity-free composable string, None when unbounded."""
        nonid = [f for f in self.arrows if not self.is_identity(f)]
        frontier = set(nonid)
        seen = set()
        length = 0
        while frontier:
            key = frozenset(frontier)
            if key in seen:
                return None
            seen.add(key)
            length += 1
            frontier = {g for f in frontier for g in nonid
                        if self.tgt(f) == self.src(g)}
        return length


def nerve_category(spec: CategorySpec, cap: int | None = None) -> FinSSet:
    """k-simplices are composable arrow strings, ids joined by '*'."""
    bound = spec.chain_bound()
    if cap is None:
        if bound is None:
            raise SpecError("category has composable cycles; pass an explicit cap")
        cap = bound + 3
    if cap < 2:
        raise SpecError("nerve needs cap >= 2")
    strings: dict[int, list[tuple[str, ...]]] = {
        1: [(f,) for f in sorted(spec.arrows)]}
    for k in range(2, cap + 1):
        nxt = [s + (g,) for s in strings[k - 1] for g in sorted(spec.arrows)
               if spec.tgt(s[-1]) == spec.src(g)]
        _guard_level(k, len(nxt))
        strings[k] = nxt

    def name(s: tuple[str, ...]) -> str:
        return "*".join(s)

    levels = {0: sorted(spec.objects)}
    levels.update({k: sorted(name(s) for s in strings[k]) for k in range(1, cap + 1)})
    vertex = {}
    for s in strings[1]:
        vertex[s] = (spec.src(s[0]), spec.tgt(s[0]))
    faces = {}
    degens = {}
    for k in range(1, cap + 1):
        for i in range(k + 1):
            table = {}
            for s in strings[k]:
                if k == 1:
                    table[name(s)] = spec.tgt(s[0]) if i == 0 else spec.src(s[0])
                elif i == 0:
                    table[name(s)] = name(s[1:])
                elif i == k:
                    table[name(s)] = name(s[:-1])
                else:
                    mid = spec.compose(s[i - 1], s[i])
                    table[name(s)] = name(s[:i - 1] + (mid,) + s[i + 1:])
            faces[(k, i)] = table
    degens[(0, 0)] = {x: spec.identities[x] for x in spec.objects}
    for k in range(1, cap):
        for j in range(k + 1):
            table = {}
            for s in strings[k]:
                at = spec.src(s[0]) if j == 0 else spec.tgt(s[j - 1])
                table[name(s)] = name(s[:j] + (spec.identities[at],) + s[j:])
            degens[(k, j)] = table
    stable = None if bound is None else min(bound, cap)
    return FinSSet(cap, levels, faces, degens, stable_from=stable)


def nerve(spec, cap: int | None = None) -> FinSSet:
    if isinstance(spec, PosetSpec):
        return nerve_poset(spec, cap)
    if isinstance(spec, MonoidSpec):
        return nerve_monoid(spec, cap)
    if isinstance(spec, CategorySpec):
        return nerve_category(spec, cap)
    raise SpecError(f"cannot build a nerve from {type(spec).__name__}")


# ---------------------------------------------------------------------------
# stock posets used throughout the tests and docs


def divisor_poset(n: int) -> PosetSpec:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    pairs = [(str(a), str(b)) for a in divs for b in divs if b % a == 0]
    return PosetSpec.from_pairs([str(d) for d in divs], pairs)


def boolean_poset(n: int) -> PosetSpec:
    """Subsets of an n-element set ordered by inclusion."""
    subsets = [frozenset(c) for m in range(n + 1)
               for c in _combos(range(n), m)]

    def name(s):
        return "o" if not s else "".join(chr(ord("a") + i) for i in sorted(s))

    pairs = [(name(a), name(b)) for a in subsets for b in subsets if a <= b]
    return PosetSpec.from_pairs([name(s) for s in subsets], pairs)


def chain_poset(n: int) -> PosetSpec:
    elems = [str(i) for i in range(n + 1)]
    pairs = [(str(i), str(j)) for i in range(n + 1) for j in range(i, n + 1)]
    return PosetSpec.from_pairs(elems, pairs)


def _combos(pool, m):
    from itertools import combinations
    return combinations(pool, m)
