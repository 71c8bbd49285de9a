"""Brute-force permutation groups and factorization over real quadratic fields.

Groups here have at most 7! = 5040 elements, so every algorithm simply
enumerates. Factorization over Q(sqrt d) groups certified roots into
candidate factors, rounds the coefficients and then checks the candidate by
exact polynomial division; nothing is accepted on numerical evidence alone.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from mpmath import mp

from .errors import InconclusiveError, NotSquarefreeError
from .exactpoly import (
    DegreePattern,
    IntPoly,
    degree_pattern_mod_p,
    divides,
    good_primes,
    irreducible_witness,
    is_squarefree,
    normalize,
    ratio_polynomial,
    squarefree_part,
)
from .perms import GroupTable, Perm
from .roots import PREC_CAP, RootBag, isolate_roots

# ---------------------------------------------------------------------------
# groups


def generate(gens: Sequence[Perm], n: Optional[int] = None) -> GroupTable:
    """All elements of the group generated by ``gens``."""
    gens = tuple(gens)
    if n is None:
        if not gens:
            raise ValueError("need at least one generator or an explicit n")
        n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators act on different numbers of points")
    e = Perm.identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return GroupTable(n, tuple(sorted(seen)), gens)


def _table(n: int, elements: Iterable[Perm]) -> GroupTable:
    """GroupTable for a known subgroup, with a small greedy generating set."""
    elements = sorted(set(elements))
    gens: list[Perm] = []
    current = {Perm.identity(n)}
    for g in elements:
        if g not in current:
            gens.append(g)
            current = set(generate(gens, n).elements)
        if len(current) == len(elements):
            break
    return GroupTable(n, tuple(elements), tuple(gens))


def symmetric_group(n: int) -> GroupTable:
    if n < 2:
        return generate([], n)
    return generate([Perm.from_cycles([tuple(range(n))], n), Perm.from_cycles([(0, 1)], n)])


def alternating_group(n: int) -> GroupTable:
    if n < 3:
        return generate([], n)
    return generate([Perm.from_cycles([(0, 1, k)], n) for k in range(2, n)])


def cyclic_group(n: int) -> GroupTable:
    return generate([Perm.from_cycles([tuple(range(n))], n)] if n > 1 else [], n)


def _require_member(G: GroupTable, g: Perm) -> None:
    if g.n != G.n or g not in G:
        raise ValueError(f"{g} is not an element of the group")


def _require_subgroup(G: GroupTable, H: GroupTable) -> None:
    if H.n != G.n or any(h not in G for h in H):
        raise ValueError("H is not a subgroup of G")


def centralizer(G: GroupTable, g: Perm) -> GroupTable:
    _require_member(G, g)
    return _table(G.n, (s for s in G if s * g == g * s))


def conjugacy_class(G: GroupTable, g: Perm) -> frozenset:
    _require_member(G, g)
    return frozenset(g.conjugate_by(s) for s in G)


def fixed_cosets(G: GroupTable, H: GroupTable, c: Perm) -> int:
    """Number of left cosets sH of H in G with c sH = sH.

    Read as the count of real embeddings of the fixed field of H, when c is
    complex conjugation acting on the roots.
    """
    _require_subgroup(G, H)
    _require_member(G, c)
    cosets = {frozenset(s * h for h in H) for s in G}
    return sum(1 for K in cosets if frozenset(c * x for x in K) == K)


def is_normal(G: GroupTable, H: GroupTable) -> bool:
    _require_subgroup(G, H)
    return all(h.conjugate_by(s) in H for s in G for h in H.generators)


def is_simple(G: GroupTable) -> bool:
    """No normal subgroups besides 1 and G (normal closures of single elements)."""
    if G.order == 1:
        return False
    done: set[Perm] = set()
    for g in G:
        if g.is_identity() or g in done:
            continue
        cls = conjugacy_class(G, g)
        done |= cls
        if generate(sorted(cls), G.n).order < G.order:
            return False
    return True


# ---------------------------------------------------------------------------
# quintic Galois groups


@dataclass(frozen=True)
class GaloisEvidence:
    degree: int
    irreducible_witness: Optional[int]
    patterns: dict = field(default_factory=dict)  # prime -> DegreePattern


@dataclass(frozen=True)
class QuinticVerdict:
    status: str  # "ProvablyS5" or "Inconclusive"
    irreducible_prime: Optional[int] = None
    transposition_prime: Optional[int] = None
    transposition_pattern: Optional[DegreePattern] = None

    @property
    def is_s5(self) -> bool:
        return self.status == "ProvablyS5"


def gather_evidence(f: IntPoly, prime_budget: int = 200) -> GaloisEvidence:
    f = normalize(f)
    patterns = {p: degree_pattern_mod_p(f, p, check=False) for p in good_primes(f, prime_budget)}
    return GaloisEvidence(f.degree, irreducible_witness(f, prime_budget), patterns)


def classify_quintic_galois(evidence: GaloisEvidence) -> QuinticVerdict:
    """S5 if the group is transitive (irreducible) and contains a transposition.

    A transitive subgroup of S_p with a transposition is all of S_p. The
    transposition comes from a Frobenius of type {2,1,1,1}, or from the cube
    of one of type {3,2}. Never claims a smaller group.
    """
    if evidence.degree != 5:
        raise ValueError("classify_quintic_galois is for quintics")
    if evidence.irreducible_witness is None:
        raise ValueError("no irreducibility witness: transitivity is not established")
    for p in sorted(evidence.patterns):
        pat = tuple(evidence.patterns[p])
        if pat in ((2, 1, 1, 1), (3, 2)):
            return QuinticVerdict("ProvablyS5", evidence.irreducible_witness, p, pat)
    return QuinticVerdict("Inconclusive", evidence.irreducible_witness)


# ---------------------------------------------------------------------------
# real quadratic fields


@dataclass(frozen=True)
class QuadCoeff:
    """a + b*sqrt(d) with rational a, b and squarefree d."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d in (0, 1) or not _is_squarefree_int(self.d):
            raise ValueError(f"d = {self.d} is not a squarefree integer other than 0, 1")

    def _same(self, o: "QuadCoeff | int | Fraction") -> "QuadCoeff":
        if isinstance(o, QuadCoeff):
            if o.d != self.d:
                raise ValueError("coefficients from different fields")
            return o
        return QuadCoeff(Fraction(o), Fraction(0), self.d)

    def __add__(self, o):
        o = self._same(o)
        return QuadCoeff(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadCoeff(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._same(o))

    def __mul__(self, o):
        o = self._same(o)
        return QuadCoeff(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadCoeff":
        return QuadCoeff(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, o):
        o = self._same(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        t = self * o.conj()
        return QuadCoeff(t.a / n, t.b / n, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self) -> str:
        root = f"sqrt({self.d})"
        if self.b == 0:
            return str(self.a)
        bpart = root if abs(self.b) == 1 else f"{abs(self.b)}*{root}"
        if self.a == 0:
            return ("-" if self.b < 0 else "") + bpart
        return f"{self.a} {'-' if self.b < 0 else '+'} {bpart}"


def _is_squarefree_int(d: int) -> bool:
    d = abs(d)
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


QuadPoly = tuple  # ascending tuple of QuadCoeff


def _qp_mul(a: QuadPoly, b: QuadPoly, d: int) -> QuadPoly:
    out = [QuadCoeff(0, 0, d)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def _qp_divmod(a: QuadPoly, b: QuadPoly, d: int) -> tuple[QuadPoly, QuadPoly]:
    a = list(a)
    q = [QuadCoeff(0, 0, d)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a.pop()
        while a and a[-1].is_zero():
            a.pop()
    return tuple(q), tuple(a)


def format_quad_poly(p: QuadPoly) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if k and c.b == 0 and abs(c.a) == 1:
            body, neg = mono, c.a < 0
        elif c.b == 0 or c.a == 0:
            s = str(c)
            neg = s.startswith("-")
            s = s.lstrip("-")
            body = s if not mono else f"{s}*{mono}"
        else:
            # pull the sign of the rational part out: -(5 + 2*sqrt(6))
            neg = c.a < 0
            inner = str(-c if neg else c)
            body = f"({inner})" if not mono else f"({inner})*{mono}"
        terms.append((neg, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += f" {'-' if neg else '+'} {body}"
    return out


@dataclass(frozen=True)
class QuadFactorization:
    """f = unit * prod(factors) over Q(sqrt d), factors monic and irreducible.

    ``root_indices[k]`` lists the roots in ``bag`` belonging to factor k.
    """

    poly: IntPoly
    d: int
    unit: int
    factors: tuple
    root_indices: tuple
    bag: RootBag = field(compare=False, repr=False)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1

    def product(self) -> QuadPoly:
        acc: QuadPoly = (QuadCoeff(self.unit, 0, self.d),)
        for g in self.factors:
            acc = _qp_mul(acc, g, self.d)
        return acc

    def verify(self) -> bool:
        prod = self.product()
        target = tuple(QuadCoeff(c, 0, self.d) for c in self.poly.coeffs)
        return prod == target

    def format_factor(self, k: int) -> str:
        return format_quad_poly(self.factors[k])

    def __str__(self) -> str:
        body = "".join(f"({format_quad_poly(g)})" for g in self.factors)
        return body if self.unit == 1 else f"{self.unit}*{body}"


def _orbits(bag: RootBag, indices: Sequence[int]) -> list[tuple[int, ...]]:
    out, seen = [], set()
    for i in indices:
        if i in seen:
            continue
        j = bag.partners[i]
        orb = (i,) if i == j else (i, j)
        seen |= set(orb)
        out.append(orb)
    return out


def _monic_from_roots(roots: list) -> list:
    coeffs = [mp.mpc(1)]
    for r in roots:
        new = [mp.mpc(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] += c
            new[k] -= c * r
        coeffs = new
    return [c.real for c in coeffs]


def quadratic_field_factor(
    f: IntPoly,
    d: int,
    bag: Optional[RootBag] = None,
    denom_bound: int = 10**6,
    prec_cap: int = PREC_CAP,
    max_degree: int = 12,
) -> QuadFactorization:
    """Factor ``f`` into irreducibles over the real quadratic field Q(sqrt d).

    Coefficients of lc(f) * g, for a monic factor g, are integral over Z, so
    2*lc(f) times them are a + b*sqrt(d) with a, b in Z. Candidate subsets of
    roots are rounded against that lattice and kept only if they divide f
    exactly. Raises :class:`InconclusiveError` when 2*lc(f) exceeds
    ``denom_bound``.
    """
    if d <= 1 or not _is_squarefree_int(d):
        raise ValueError("d must be a squarefree integer > 1 (real quadratic field)")
    f = normalize(f)
    if f.degree < 1:
        raise ValueError("nothing to factor")
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    if f.degree > max_degree:
        raise InconclusiveError(f"degree {f.degree} exceeds the subset-search limit {max_degree}")
    scale = 2 * f.lc
    if scale > denom_bound:
        raise InconclusiveError(f"denominator 2*lc = {scale} exceeds the bound {denom_bound}")
    if bag is None:
        bag = isolate_roots(f, prec_cap=prec_cap)

    prec = max(bag.precision_bits, 128)
    with mp.workprec(prec):
        roots = list(bag.mp_centers) if bag.mp_centers else [mp.mpc(c) for c in bag.centers]
        sq = mp.sqrt(d)
        tol = mp.mpf(10) ** -8

        remaining = list(range(f.degree))
        rest: QuadPoly = tuple(QuadCoeff(Fraction(c, f.lc), 0, d) for c in f.coeffs)
        factors, indices = [], []
        k = 1
        while remaining and 2 * k <= len(remaining):
            found = _find_factor(bag, roots, remaining, rest, k, d, scale, sq, tol)
            if found is None:
                k += 1
                continue
            for g, idx in found:
                q, r = _qp_divmod(rest, g, d)
                assert not r
                rest = q
                factors.append(g)
                indices.append(idx)
                remaining = [i for i in remaining if i not in idx]
        if remaining:
            factors.append(rest)
            indices.append(tuple(sorted(remaining)))

    order = sorted(range(len(factors)), key=lambda k: indices[k])
    out = QuadFactorization(f, d, f.lc, tuple(factors[k] for k in order),
                            tuple(indices[k] for k in order), bag)
    if not out.verify():
        raise AssertionError(f"factorization of {f} over Q(sqrt {d}) does not multiply back")
    return out


def _find_factor(bag, roots, remaining, rest, k, d, scale, sq, tol):
    orbits = _orbits(bag, remaining)
    subsets = []
    for r in range(1, len(orbits) + 1):
        for combo in itertools.combinations(orbits, r):
            idx = tuple(sorted(i for o in combo for i in o))
            if len(idx) == k:
                subsets.append(idx)
    coeffs = {S: _monic_from_roots([roots[i] for i in S]) for S in subsets}
    for S in subsets:
        for T in subsets:
            if T != S and set(S) & set(T):
                continue
            cand = []
            for c, c2 in zip(coeffs[S], coeffs[T]):
                a = scale * (c + c2) / 2
                b = scale * (c - c2) / (2 * sq)
                ai, bi = int(mp.nint(a)), int(mp.nint(b))
                if abs(a - ai) > tol or abs(b - bi) > tol:
                    break
                cand.append(QuadCoeff(Fraction(ai, scale), Fraction(bi, scale), d))
            else:
                g = tuple(cand)
                if _qp_divmod(rest, g, d)[1]:
                    continue
                if T == S:
                    return [(g, S)]
                return [(g, S), (tuple(c.conj() for c in g), T)]
    return None


def ratio_contains_i(f: IntPoly) -> bool:
    """True iff i is a root of f or the ratio of two roots of f.

    The ratios a_j/a_i are the roots of Res_y(f(y), f(xy)); x^2 + 1 divides it
    iff i is among them.
    """
    f = normalize(f)
    if f.coeffs[0] == 0:
        raise ValueError("ratio_contains_i needs f(0) != 0")
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    x2p1 = IntPoly((1, 0, 1))
    if divides(x2p1, f):
        return True
    return divides(x2p1, squarefree_part(ratio_polynomial(f)))
