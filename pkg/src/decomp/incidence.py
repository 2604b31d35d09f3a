"""Exact-rational incidence coalgebras and Mobius inversion.

Comultiplication tables store multisets of arrow pairs read off the
degree-2 fibers; convolution, the nondegenerate-simplex counting vectors,
and their alternating sum all stay in exact rational arithmetic.  The
classifying map sends an arrow to the content digest of its interval and
is checked to be a homomorphism into the registry coalgebra.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import check_decomposition, check_map_class, check_mobius
from .interval import canonicalize, factorisation_interval
from .presheaf import FinSSet, SSetMap, long_edge_table, nondegenerate
from .registry import Registry, RegistryError, build_fragment, registry_comult
from .report import Report


class NotCertified(ValueError):
    pass


@dataclass
class QVec:
    """A finitely supported exact-rational vector over a fixed basis."""

    basis: frozenset[str]
    coeffs: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            if k not in self.basis:
                raise ValueError(f"coefficient on {k!r} outside the basis")
            v = Fraction(v)
            if v:
                clean[k] = v
        self.coeffs = clean

    def __getitem__(self, k: str) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def __add__(self, other: QVec) -> QVec:
        self._match(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return QVec(self.basis, out)

    def __sub__(self, other: QVec) -> QVec:
        return self + other.scale(-1)

    def scale(self, c) -> QVec:
        c = Fraction(c)
        return QVec(self.basis, {k: c * v for k, v in self.coeffs.items()})

    def _match(self, other: QVec) -> None:
        if self.basis != other.basis:
            raise ValueError("basis mismatch")

    def __eq__(self, other) -> bool:
        return (isinstance(other, QVec) and self.basis == other.basis
                and self.coeffs == other.coeffs)


@dataclass
class CoalgebraTable:
    """Per-arrow comultiplication multisets and the counit indicator."""

    basis: frozenset[str]
    pairs: dict[str, Counter]
    counit: dict[str, int]


def comult(X: FinSSet, check: bool = True) -> CoalgebraTable:
    """Comultiplication from the degree-2 long-edge fibers."""
    if X.cap < 2:
        raise NotCertified("comultiplication needs cap >= 2")
    if check:
        rep = check_decomposition(X, "direct")
        if not rep.ok:
            raise NotCertified("input fails the exactness axiom:\n" + str(rep))
    d0, d1, d2 = X.faces[(2, 0)], X.faces[(2, 1)], X.faces[(2, 2)]
    pairs: dict[str, Counter] = {a: Counter() for a in X.levels[1]}
    for sig in X.levels[2]:
        pairs[d1[sig]][(d2[sig], d0[sig])] += 1
    degenerate = set(X.degens[(0, 0)].values())
    counit = {a: 1 if a in degenerate else 0 for a in X.levels[1]}
    return CoalgebraTable(frozenset(X.levels[1]), pairs, counit)


def convolve(table: CoalgebraTable, f: QVec, g: QVec) -> QVec:
    """(f*g)(a) = sum over the degree-2 fiber of f(left) g(right)."""
    if f.basis != table.basis or g.basis != table.basis:
        raise ValueError("basis mismatch")
    out: dict[str, Fraction] = {}
    for a, ctr in table.pairs.items():
        total = Fraction(0)
        for (l, r), mult in ctr.items():
            total += mult * f[l] * g[r]
        if total:
            out[a] = total
    return QVec(table.basis, out)


def zeta(table: CoalgebraTable) -> QVec:
    return QVec(table.basis, {a: Fraction(1) for a in table.basis})


def counit_vec(table: CoalgebraTable) -> QVec:
    return QVec(table.basis, {a: Fraction(v) for a, v in table.counit.items()})


def phi(X: FinSSet, k: int) -> QVec:
    """Count of nondegenerate k-simplices over each long edge."""
    basis = frozenset(X.levels[1])
    table = long_edge_table(X, k)
    counts: dict[str, Fraction] = {}
    for x in nondegenerate(X, k):
        a = table[x]
        counts[a] = counts.get(a, Fraction(0)) + 1
    return QVec(basis, counts)


def mobius(X: FinSSet) -> QVec:
    """Alternating sum of the nondegenerate counting vectors.

    Only computed under a certified tightness bound; the sum is finite and
    exact, and refuses to run otherwise rather than answer approximately.
    """
    cert = check_mobius(X)
    if not cert.ok:
        raise NotCertified("Mobius conditions not certified:\n" + str(cert))
    out = QVec(frozenset(X.levels[1]))
    for k in range(X.stable_from + 1):
        term = phi(X, k)
        out = out + (term if k % 2 == 0 else term.scale(-1))
    return out


def phi_parity_sums(X: FinSSet) -> tuple[QVec, QVec]:
    even = QVec(frozenset(X.levels[1]))
    odd = QVec(frozenset(X.levels[1]))
    for k in range(X.stable_from + 1):
        if k % 2 == 0:
            even = even + phi(X, k)
        else:
            odd = odd + phi(X, k)
    return even, odd


def verify_inversion(X: FinSSet) -> Report:
    """zeta * mu = counit = mu * zeta, plus the sign-free form."""
    rep = Report("verify_inversion")
    cert = check_mobius(X)
    if not cert.ok:
        rep.absorb(cert)
        return rep
    table = comult(X, check=False)
    z = zeta(table)
    eps = counit_vec(table)
    mu = mobius(X)
    for name, got in (("zeta*mu", convolve(table, z, mu)),
                      ("mu*zeta", convolve(table, mu, z))):
        if got != eps:
            bad = sorted(set(got.coeffs) ^ set(eps.coeffs)
                         | {a for a in got.coeffs if got[a] != eps[a]})
            rep.fail(witness=bad[:3], note=f"{name}-differs-from-counit")
    even, odd = phi_parity_sums(X)
    lhs = convolve(table, z, even)
    rhs = eps + convolve(table, z, odd)
    if lhs != rhs:
        rep.fail(note="sign-free-identity-fails")
    for vec in (lhs, rhs):
        if any(v < 0 or v.denominator != 1 for v in vec.coeffs.values()):
            rep.fail(note="sign-free-identity-not-integral")
    rep.verified_upto = X.cap
    return rep


# ---------------------------------------------------------------------------
# functoriality


def culf_pushforward(F: SSetMap, check: bool = True) -> tuple[dict[str, str], Report]:
    """The arrow-level map, checked to be a coalgebra homomorphism."""
    rep = Report("culf_pushforward")
    if check:
        culf = check_map_class(F, "culf")
        if not culf.ok:
            raise NotCertified("map is not cartesian on generics:\n" + str(culf))
    Y, X = F.dom, F.cod
    m1 = F.components[1]
    table_x = comult(X, check=False)
    d0, d1, d2 = Y.faces[(2, 0)], Y.faces[(2, 1)], Y.faces[(2, 2)]
    fibers: dict[str, Counter] = {b: Counter() for b in Y.levels[1]}
    for sig in Y.levels[2]:
        fibers[d1[sig]][(m1[d2[sig]], m1[d0[sig]])] += 1
    degenerate = set(Y.degens[(0, 0)].values())
    for b in Y.levels[1]:
        if fibers[b] != table_x.pairs[m1[b]]:
            rep.fail(degree=2, witness=(b,), note="comultiplication-not-preserved")
        if (1 if b in degenerate else 0) != table_x.counit[m1[b]]:
            rep.fail(degree=1, witness=(b,), note="counit-not-preserved")
    rep.verified_upto = Y.cap
    return m1, rep


def classify(X: FinSSet, reg: Registry) -> tuple[dict[str, str], Report]:
    """Arrow -> digest of its interval, checked against the registry
    comultiplication; the registry must be closed under subintervals."""
    rep = Report("classify")
    cert = check_mobius(X)
    if not cert.ok:
        raise NotCertified("Mobius conditions not certified:\n" + str(cert))
    mapping: dict[str, str] = {}
    for a in X.levels[1]:
        iv, _ = factorisation_interval(X, a)
        digest = canonicalize(iv).digest
        if digest not in reg.entries:
            raise RegistryError(
                f"registry is not closed: arrow {a!r} classifies to "
                f"{digest[:12]} which is missing")
        mapping[a] = digest
    pairs_r, counit_r = registry_comult(reg)
    table = comult(X, check=False)
    for a in X.levels[1]:
        image = Counter()
        for (l, r), mult in table.pairs[a].items():
            image[(mapping[l], mapping[r])] += mult
        if image != pairs_r[mapping[a]]:
            rep.fail(degree=2, witness=(a,), note="not-a-coalgebra-homomorphism")
        if table.counit[a] != counit_r[mapping[a]]:
            rep.fail(degree=1, witness=(a,), note="counit-not-preserved")
    rep.verified_upto = X.cap
    return mapping, rep


def universal_mobius(reg: Registry) -> tuple[QVec, Report]:
    """Per-class Mobius values with the registry-level inversion check."""
    from .interval import subdivisions

    rep = Report("universal_mobius")
    basis = frozenset(reg.entries)
    values: dict[str, Fraction] = {}
    for digest, entry in reg.entries.items():
        bound = entry.interval.canonical.data.stable_from or 0
        total = Fraction(0)
        for k in range(bound + 1):
            count = len(subdivisions(entry.interval, k, nondegenerate=True))
            total += count if k % 2 == 0 else -count
        values[digest] = total
    mu = QVec(basis, values)
    frag = build_fragment(reg, top=2)
    pairs, counit = registry_comult(reg, frag)
    table = CoalgebraTable(basis, pairs, counit)
    z = zeta(table)
    eps = counit_vec(table)
    if convolve(table, z, mu) != eps or convolve(table, mu, z) != eps:
        rep.fail(note="registry-inversion-fails")
    rep.verified_upto = frag.top
    return mu, rep
