"""Content-addressed registry of interval classes, closure under
subintervals, and the finite fragment of the space of subdivided intervals.

Level k of the fragment collects, over every registered class, the
k-simplices whose long edge is the longest edge; inner faces act within a
class, outer faces pass to the subinterval of the dropped-vertex long edge
and transport the simplex along its arrow chain.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field

from .formats import parse_xiset, write_xiset
from .interval import (
    AlgebraicInterval,
    ExtendedInterval,
    IntervalClass,
    canonicalize,
    canonicalize_with_map,
    certify_mobius_interval,
    extend_interval,
    factorisation_interval,
    longest_edge,
)
from .presheaf import i_star, long_edge_table, xi_action
from .report import Report
from .simplex import MonotoneMap


class RegistryError(ValueError):
    pass


@dataclass
class RegistryEntry:
    digest: str
    name: str
    mobius: bool
    interval: IntervalClass


@dataclass
class Registry:
    entries: dict[str, RegistryEntry] = field(default_factory=dict)
    names: dict[str, str] = field(default_factory=dict)

    def insert(self, A: AlgebraicInterval | IntervalClass,
               name: str | None = None) -> str:
        """Certify, canonicalize and store; duplicates collapse by digest."""
        cls = A if isinstance(A, IntervalClass) else canonicalize(A)
        if cls.digest in self.entries:
            return cls.digest
        cert = certify_mobius_interval(cls)
        if not cert.ok:
            raise RegistryError(
                "entry fails interval certification:\n" + str(cert))
        if name is None:
            name = f"iv-{cls.digest[:10]}"
        if name in self.names:
            raise RegistryError(f"name {name!r} already in use")
        self.entries[cls.digest] = RegistryEntry(cls.digest, name, True, cls)
        self.names[name] = cls.digest
        return cls.digest

    def get(self, digest: str) -> RegistryEntry:
        try:
            return self.entries[digest]
        except KeyError:
            raise RegistryError(f"unknown digest {digest}")

    def close(self) -> Registry:
        """Insert the interval of every arrow of every entry to fixpoint."""
        queue = list(self.entries)
        while queue:
            digest = queue.pop()
            ext = _extension(self.get(digest).interval, minimum=1)
            for arrow in ext.nerve.levels[1]:
                sub, _ = factorisation_interval(ext.nerve, arrow)
                d = canonicalize(sub).digest
                if d not in self.entries:
                    self.insert(sub)
                    queue.append(d)
        return self

    def is_closed(self) -> bool:
        for digest in list(self.entries):
            ext = _extension(self.get(digest).interval, minimum=1)
            for arrow in ext.nerve.levels[1]:
                sub, _ = factorisation_interval(ext.nerve, arrow)
                if canonicalize(sub).digest not in self.entries:
                    return False
        return True

    # -- persistence --------------------------------------------------------

    def save(self, directory: str) -> None:
        os.makedirs(directory, exist_ok=True)
        rows = []
        for digest in sorted(self.entries):
            e = self.entries[digest]
            rows.append(f"{e.digest}\t{e.name}\t{int(e.mobius)}\t"
                        f"{e.interval.canonical.data.cap}")
            path = os.path.join(directory, f"{digest}.xiset")
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(write_xiset(e.interval.canonical.data))
        index = os.path.join(directory, "index.tsv")
        with open(index, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(rows) + ("\n" if rows else ""))

    @classmethod
    def load(cls, directory: str) -> Registry:
        reg = cls()
        index = os.path.join(directory, "index.tsv")
        if not os.path.exists(index):
            raise RegistryError(f"no index.tsv under {directory}")
        with open(index, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                digest, name, mobius, _cap = line.split("\t")
                path = os.path.join(directory, f"{digest}.xiset")
                with open(path, encoding="utf-8") as xfh:
                    data = parse_xiset(xfh.read(), path)
                iv = AlgebraicInterval(data)
                try:
                    recomputed = canonicalize(iv)
                except (ValueError, KeyError) as exc:
                    raise RegistryError(
                        f"stored entry {digest[:12]} is damaged: {exc}")
                if recomputed.digest != digest:
                    raise RegistryError(
                        f"stored entry {digest[:12]} does not match its digest")
                reg.entries[digest] = RegistryEntry(
                    digest, name, mobius == "1", recomputed)
                reg.names[name] = digest
        return reg


def _extension(cls: IntervalClass, minimum: int = 1) -> ExtendedInterval:
    bound = cls.canonical.data.stable_from or 0
    return extend_interval(cls.canonical, max(minimum, bound, 1))


# ---------------------------------------------------------------------------
# the fragment of subdivided intervals


@dataclass
class Fragment:
    """Finite levels of subdivided registry intervals with all face maps."""

    top: int
    levels: dict[int, list[tuple[str, str]]]
    faces: dict[tuple[int, int], dict[tuple[str, str], tuple[str, str]]]
    extensions: dict[str, ExtendedInterval]

    def face(self, k: int, i: int):
        return self.faces[(k, i)]


def build_fragment(reg: Registry, top: int = 3) -> Fragment:
    """Materialize degrees 0..top of the subdivided-interval space."""
    exts: dict[str, ExtendedInterval] = {}
    for digest, entry in reg.entries.items():
        exts[digest] = _extension(entry.interval, minimum=top + 1)

    levels: dict[int, list[tuple[str, str]]] = {}
    for k in range(top + 1):
        members = []
        for digest in sorted(reg.entries):
            data = exts[digest].interval.data
            table = long_edge_table(i_star(data), k)
            target = longest_edge(data)
            members += [(digest, x) for x in sorted(data.levels[k])
                        if table[x] == target]
        levels[k] = members

    cache: dict[tuple[str, str], tuple[str, dict]] = {}

    def subinterval(digest: str, arrow: str):
        """Canonical class and level-1 relabeling of an arrow's interval."""
        key = (digest, arrow)
        if key not in cache:
            sub, _ = factorisation_interval(exts[digest].nerve, arrow)
            cls, relabel = canonicalize_with_map(sub)
            if cls.digest not in reg.entries:
                raise RegistryError(
                    f"registry is not closed: missing {cls.digest[:12]}")
            cache[key] = (cls.digest, relabel[1], sub.data)
        return cache[key]

    def outer_face(digest: str, x: str, k: int, i: int) -> tuple[str, str]:
        ext = exts[digest]
        data = ext.interval.data
        tau = data.faces[(k, i)][x]
        under = i_star(data)
        ell = long_edge_table(under, k - 1)[tau]
        arrow = ext.embed.components[1][ell]
        sub_digest, sub_arrows, sub_data = subinterval(digest, arrow)
        N = ext.nerve
        tau_n = ext.embed.components[k - 1][tau]
        flank = N.degens[(k, 0)][N.degens[(k - 1, k - 1)][tau_n]]
        chain = []
        for pos in range(1, k + 2):
            rep = MonotoneMap(3, k + 1, (0, pos - 1, pos, k + 1))
            chain.append(xi_action(sub_data, rep)[flank])
        target_ext = exts[sub_digest]
        new_id = target_ext.chain_id([sub_arrows[h] for h in chain])
        return (sub_digest, new_id)

    faces: dict[tuple[int, int], dict] = {}
    for k in range(1, top + 1):
        for i in range(k + 1):
            table = {}
            for digest, x in levels[k]:
                if 0 < i < k:
                    table[(digest, x)] = (digest, exts[digest].interval.data.faces[(k, i)][x])
                else:
                    table[(digest, x)] = outer_face(digest, x, k, i)
            faces[(k, i)] = table
    level_sets = {k: set(members) for k, members in levels.items()}
    for (k, _i), table in faces.items():
        for value in table.values():
            if value not in level_sets[k - 1]:
                raise RegistryError(f"fragment face left the fragment: {value}")
    return Fragment(top, levels, faces, exts)


def fragment_square_report(frag: Fragment) -> Report:
    """The degree-3 exactness square of the fragment, checked fiberwise.

    The comparison sends a 3-subdivision to (inner face, (top face, bottom
    edge)); it must biject onto the matching pairs, and the per-entry
    counts are reported.
    """
    from .presheaf import pullback_failure

    rep = Report("fragment_square")
    if frag.top < 3:
        rep.inconclusive(note="fragment-too-shallow")
        return rep
    d = frag.faces
    u3, u2, u1, u0 = (frag.levels[k] for k in (3, 2, 1, 0))
    d0d0 = {x: d[(2, 0)][d[(3, 0)][x]] for x in u3}
    fp1 = []
    by_vertex: dict = {}
    for y in u1:
        by_vertex.setdefault(d[(1, 1)][y], []).append(y)
    for t in u2:
        for y in by_vertex.get(d[(1, 0)][d[(2, 0)][t]], ()):
            fp1.append((t, y))
    fp1_ids = {p: f"fp1#{n}" for n, p in enumerate(sorted(fp1))}
    q_table = {x: fp1_ids[(d[(3, 3)][x], d0d0[x])] for x in u3}
    lower_pair = {t: (d[(2, 2)][t], d[(2, 0)][t]) for t in u2}
    fp0 = []
    for y in u1:
        for y2 in by_vertex.get(d[(1, 0)][y], ()):
            fp0.append((y, y2))
    fp0_ids = {p: f"fp0#{n}" for n, p in enumerate(sorted(fp0))}
    f_table = {t: fp0_ids[lower_pair[t]] for t in u2}
    g_table = {fp1_ids[(t, y)]: fp0_ids[(d[(2, 1)][t], y)] for (t, y) in fp1}
    bad = pullback_failure(
        u3, u2, list(fp1_ids.values()),
        d[(3, 1)], q_table, f_table, g_table,
    )
    if bad is not None:
        rep.fail(degree=3, note=bad)
    counts = {}
    for digest in frag.extensions:
        counts[digest] = {
            k: sum(1 for c, _ in frag.levels[k] if c == digest)
            for k in range(4)
        }
    rep.data["counts"] = counts
    rep.verified_upto = 3
    return rep


# ---------------------------------------------------------------------------
# the registry coalgebra


def registry_comult(reg: Registry, frag: Fragment | None = None):
    """Comultiplication by midpoint subdivision, per registered class.

    Returns (pairs, counit): pairs maps a digest to the multiset of
    (lower digest, upper digest) over its 2-subdivisions; the counit is 1
    exactly on classes admitting a 0-subdivision.
    """
    if frag is None:
        frag = build_fragment(reg, top=2)
    pairs: dict[str, Counter] = {d: Counter() for d in reg.entries}
    for digest, x in frag.levels[2]:
        lower = frag.faces[(2, 2)][(digest, x)][0]
        upper = frag.faces[(2, 0)][(digest, x)][0]
        pairs[digest][(lower, upper)] += 1
    zero = {d for d, _ in frag.levels[0]}
    counit = {d: 1 if d in zero else 0 for d in reg.entries}
    return pairs, counit
