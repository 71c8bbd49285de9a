"""Mahler measure, Weil height and the lower bounds built on them.

Heights are attached to minimal polynomials: h(a) = log M(f) / deg f where
M(f) = |lc f| * prod max(1, |root|). Every numeric value is an enclosure
[lo, hi] computed with outward rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import iv

from .errors import IndecisionError, ReducibleError, ZeroPolynomialError
from .exactpoly import (
    IntPoly,
    exact_quotient,
    irreducible_witness,
    is_root_of_unity,
    is_squarefree,
    normalize,
    rational_roots,
    squarefree_decomposition,
    sturm_count,
)
from .roots import (
    PREC_CAP,
    _down,
    _iv_prec,
    _up,
    all_on_unit_circle,
    is_totally_real,
    isolate_roots,
    real_imag_polys,
)

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Enclosure:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def halved(self) -> "Enclosure":
        # division by 2 is exact in binary floating point
        return Enclosure(self.lo / 2, self.hi / 2)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def _enclose(x) -> Enclosure:
    return Enclosure(_down(x.a), _up(x.b))


def _enclose_fraction(q: Fraction) -> Enclosure:
    x = float(q)
    return Enclosure(x if Fraction(x) <= q else _down(x), x if Fraction(x) >= q else _up(x))


def _schinzel() -> Enclosure:
    with _iv_prec(128):
        return _enclose(iv.log((1 + iv.sqrt(5)) / 2) / 2)


# 1/2 log((1 + sqrt 5)/2), the height gap for totally real numbers off the unit circle
SCHINZEL = _schinzel()
SCHINZEL_CONSTANT = SCHINZEL.mid


@dataclass(frozen=True)
class HeightReport:
    """Enclosure of a Mahler measure (``kind="mahler"``) or Weil height.

    ``exact_log_arg`` is the Mahler measure itself when it is provably the
    rational number |lc| (all roots on the unit circle).
    """

    lo: float
    hi: float
    degree: int
    kind: str = "height"
    exact_log_arg: Optional[Fraction] = None
    irreducibility: str = "n/a"

    @property
    def enclosure(self) -> Enclosure:
        return Enclosure(self.lo, self.hi)

    @property
    def value(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.exact_log_arg is not None

    def to_json(self) -> dict:
        out = {"lo": self.lo, "hi": self.hi}
        if self.exact_log_arg is not None:
            out["exact"] = str(self.exact_log_arg)
        return out


@dataclass(frozen=True)
class EmbeddingStats:
    """Degree d, number r of real conjugates and the ratio R = r/d."""

    degree: int
    real_count: int
    ratio: Fraction

    def __post_init__(self):
        if not 0 <= self.real_count <= self.degree or self.degree < 1:
            raise ValueError(f"need 0 <= r <= d, d >= 1; got r={self.real_count}, d={self.degree}")
        if Fraction(self.ratio) != Fraction(self.real_count, self.degree):
            raise ValueError("ratio must equal real_count / degree")
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    @classmethod
    def from_counts(cls, degree: int, real_count: int) -> "EmbeddingStats":
        return cls(degree, real_count, Fraction(real_count, degree))


@dataclass(frozen=True)
class BoundCert:
    C: Fraction
    garza_value: Enclosure
    halved: bool
    final_c: Enclosure

    def to_json(self) -> dict:
        return {
            "C": str(self.C),
            "garza": self.garza_value.to_json(),
            "halved": self.halved,
            "final": self.final_c.to_json(),
        }


# ---------------------------------------------------------------------------


def mahler_measure(f: IntPoly, eps: float = DEFAULT_EPS, prec_cap: int = PREC_CAP) -> HeightReport:
    """Certified M(f) with relative width at most ``eps``.

    Exact (``exact_log_arg``) when every root lies on the unit circle, where
    M = |lc|, and for linear factors times a power of x.
    Roots are isolated on the squarefree factors and multiplicities reapplied.
    Reversed polynomials share one representative, so M(f) and M(rev f)
    come out bit-identical.
    """
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no Mahler measure")
    g = f
    while g.coeffs[0] == 0:
        g = exact_quotient(g, IntPoly((0, 1)))
    # M(f) = M(x^d f(1/x)) and M(-f) = M(f): work on one canonical representative
    g = min((h if h.lc > 0 else -h for h in (g, g.reverse())), key=lambda h: h.coeffs)
    lc = abs(g.lc)
    if g.degree == 0 or all_on_unit_circle(g, prec_cap).on_circle:
        m = Fraction(lc)
        return HeightReport(float(lc), float(lc), f.degree, "mahler", m)
    if g.degree == 1:
        # M(a x + b) = max(|a|, |b|)
        m = Fraction(max(abs(c) for c in g.coeffs))
        enc = _enclose_fraction(m)
        return HeightReport(enc.lo, enc.hi, f.degree, "mahler", m)

    pieces = squarefree_decomposition(g)
    target = max(eps / (8 * f.degree), 1e-15)
    while True:
        with _iv_prec(96):
            prod = iv.mpf(lc)
            for s, mult in pieces:
                bag = isolate_roots(s, target_radius=target, prec_cap=prec_cap)
                for c, r in zip(bag.centers, bag.radii):
                    mod = abs(iv.mpc(c.real, c.imag))
                    lo = max(_down(_down(mod.a) - r), 1.0)
                    hi = max(_up(_up(mod.b) + r), 1.0)
                    prod = prod * iv.mpf([lo, hi]) ** mult
            enc = _enclose(prod)
        if enc.width <= eps * enc.lo:
            return HeightReport(enc.lo, enc.hi, f.degree, "mahler")
        if target <= 1e-15:
            raise IndecisionError(f"Mahler measure of {f} not resolved to eps={eps}")
        target = max(target / 1000, 1e-15)


def _reducibility_check(f: IntPoly) -> None:
    """Reject polynomials that are visibly reducible (repeated or rational roots)."""
    if f.degree >= 2:
        if not is_squarefree(f):
            raise ReducibleError(f"{f} has a repeated factor")
        roots = rational_roots(f)
        if roots:
            raise ReducibleError(f"{f} has the rational root {roots[0]}")


def irreducibility_certificate(f: IntPoly, prime_budget: int = 200) -> str:
    """How irreducibility of ``f`` is known; raises on visible reducibility.

    One of ``"degree-1"``, ``"rational-root-test"`` (degrees 2 and 3),
    ``"witness:p"`` (irreducible mod p) or ``"asserted"`` (no witness found,
    the caller's claim is recorded instead).
    """
    f = normalize(f)
    _reducibility_check(f)
    if f.degree == 1:
        return "degree-1"
    if f.degree <= 3:
        # no rational root means irreducible in degrees 2 and 3
        return "rational-root-test"
    p = irreducible_witness(f, prime_budget)
    return f"witness:{p}" if p is not None else "asserted"


def weil_height(f: IntPoly, eps: float = DEFAULT_EPS, prec_cap: int = PREC_CAP) -> HeightReport:
    """Enclosure of h = log M(f) / deg f for the minimal polynomial ``f``."""
    f = normalize(f)
    if f.degree < 1:
        raise ValueError("a minimal polynomial has degree >= 1")
    cert = irreducibility_certificate(f)
    d = f.degree
    if f == IntPoly((0, 1)) or is_root_of_unity(f):
        return HeightReport(0.0, 0.0, d, "height", Fraction(1), cert)
    m = mahler_measure(f, eps, prec_cap)
    with _iv_prec(96):
        if m.exact_log_arg is not None:
            x = iv.mpf(m.exact_log_arg.numerator) / m.exact_log_arg.denominator
        else:
            x = iv.mpf([m.lo, m.hi])
        enc = _enclose(iv.log(x) / d)
    return HeightReport(max(enc.lo, 0.0), max(enc.hi, 0.0), d, "height", m.exact_log_arg, cert)


def embedding_stats(f: IntPoly) -> EmbeddingStats:
    """(d, r, r/d) for irreducible ``f``, r counted exactly by Sturm."""
    f = normalize(f)
    _reducibility_check(f)
    return EmbeddingStats.from_counts(f.degree, sturm_count(f))


def garza_bound(C) -> Enclosure:
    """Enclosure of (C/2) log((2^(1-1/C) + sqrt(4^(1-1/C) + 4)) / 2) for rational C in (0, 1]."""
    C = Fraction(C)
    if not 0 < C <= 1:
        raise ValueError(f"C must lie in (0, 1], got {C}")
    # 2^(1-1/C) is about 2^(-1/C); the precision must resolve it next to 1
    prec = 128 + 2 * (C.denominator // C.numerator + 1)
    with _iv_prec(prec):
        c = iv.mpf(C.numerator) / C.denominator
        e = iv.mpf(C.numerator - C.denominator) / C.numerator
        a = iv.exp(e * iv.log(2))
        val = c / 2 * iv.log((a + iv.sqrt(a * a + 4)) / 2)
        if not val.a > 0:
            raise IndecisionError(f"could not certify garza_bound({C}) > 0")
        return _enclose(val)


def theorem_constant(stats: EmbeddingStats, totally_imaginary: bool) -> BoundCert:
    """C = R from ``stats``; c = garza_bound(C), halved for the totally imaginary case."""
    if stats.real_count == 0:
        hint = "; pass the statistics of the maximal real subfield" if totally_imaginary else ""
        raise ValueError(f"no real embedding to anchor the bound (r = 0){hint}")
    C = stats.ratio
    g = garza_bound(C)
    final = g.halved() if totally_imaginary else g
    return BoundCert(C, g, totally_imaginary, final)


@dataclass(frozen=True)
class SchinzelCheck:
    satisfies: bool
    off_circle: bool
    height: HeightReport
    membership: str  # "totally-real", "cm-on-circle" or "asserted"

    @property
    def exempt(self) -> bool:
        return not self.off_circle


def schinzel_gap_check(f: IntPoly, tol: float = 1e-9, eps: float = DEFAULT_EPS,
                       prec_cap: int = PREC_CAP) -> SchinzelCheck:
    """Compare h(a) with 1/2 log((1+sqrt 5)/2) and record whether a is on the circle."""
    f = normalize(f)
    h = weil_height(f, eps, prec_cap)
    if f.coeffs[0] == 0:
        off = False  # a = 0 is outside the multiplicative group
    else:
        off = not all_on_unit_circle(f, prec_cap).on_circle
    if is_totally_real(f):
        membership = "totally-real"
    elif not off:
        re_p, im_p = real_imag_polys(f)
        membership = "cm-on-circle" if is_totally_real(re_p) and is_totally_real(im_p) else "asserted"
    else:
        membership = "asserted"
    return SchinzelCheck(h.lo >= SCHINZEL.lo - tol, off, h, membership)


@dataclass(frozen=True)
class Eq1Check:
    d: int
    lhs: Fraction
    mid: Fraction
    rhs: Fraction
    holds: bool
    factor: str

    def to_json(self) -> dict:
        return {"d": self.d, "lhs": str(self.lhs), "mid": str(self.mid),
                "rhs": str(self.rhs), "holds": self.holds, "factor": self.factor}


def eq1_chain_check(f: IntPoly, d: int, prec_cap: int = PREC_CAP) -> Eq1Check:
    """[K:Q] R_{a,Q} >= r_{a,K}[K:Q]/[Q(a):Q] >= R_{a,K} for K = Q(sqrt d), d > 1.

    The designated root a is the first root of the certified bag (the smallest
    real root if there is one). Its K-conjugates are the roots of the factor
    of f over K that vanishes at a.
    """
    from .galois import quadratic_field_factor  # galois builds on this module's peers

    if d <= 1:
        raise ValueError("eq1_chain_check supports real quadratic fields only (d > 1)")
    f = normalize(f)
    stats = embedding_stats(f)
    fact = quadratic_field_factor(f, d, prec_cap=prec_cap)
    k = next(i for i, idx in enumerate(fact.root_indices) if 0 in idx)
    idx = fact.root_indices[k]
    real = set(fact.bag.real_indices())
    r_k = sum(1 for i in idx if i in real)
    rel_deg = len(idx)
    lhs = 2 * stats.ratio
    mid = Fraction(2 * r_k, f.degree)
    rhs = Fraction(r_k, rel_deg)
    return Eq1Check(d, lhs, mid, rhs, lhs >= mid >= rhs, fact.format_factor(k))


def height_report(f: IntPoly, totally_imaginary: bool = False, eps: float = DEFAULT_EPS,
                  prec_cap: int = PREC_CAP) -> dict:
    """Everything known about the minimal polynomial ``f`` as a JSON-ready dict.

    ``bounds`` is None when r = 0.
    """
    f = normalize(f)
    h = weil_height(f, eps, prec_cap)
    m = mahler_measure(f, eps, prec_cap)
    stats = embedding_stats(f)
    bounds = None
    if stats.real_count > 0:
        bounds = theorem_constant(stats, totally_imaginary).to_json()
    return {
        "input": f.to_list_text(),
        "degree": f.degree,
        "r": stats.real_count,
        "R": str(stats.ratio),
        "mahler": m.to_json(),
        "height": h.to_json(),
        "irreducibility": h.irreducibility,
        "bounds": bounds,
    }
