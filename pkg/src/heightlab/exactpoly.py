"""Exact arithmetic on univariate integer polynomials.

Everything here is exact: integers and :class:`fractions.Fraction` only.
Polynomials are stored with ascending coefficients, so ``coeffs[k]`` is the
coefficient of ``x**k``.

The resultant convention used throughout is

    Res(f, g) = lc(f)**deg(g) * prod(g(a) for a in roots(f))

which fixes the sign of every discriminant computed from it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .errors import BadPrimeError, NotSquarefreeError, ZeroPolynomialError

Rat = Fraction
Number = Union[int, Fraction]
DegreePattern = tuple  # sorted (descending) tuple of factor degrees mod p


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial with ascending coefficients and no trailing zeros.

    The zero polynomial is representable (``coeffs == ()``) so that arithmetic
    closes, but nearly every public operation rejects it.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return parse_poly(text)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        _require_nonzero(self)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        _require_nonzero(self)
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def reverse(self) -> "IntPoly":
        """x**deg * f(1/x); the roots become reciprocals."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def subs_power(self, n: int) -> "IntPoly":
        """f(x**n)."""
        out = [0] * (n * self.degree + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[n * k] = c
        return IntPoly(tuple(out))

    def scale_var(self, t: int) -> "IntPoly":
        """f(t*x)."""
        return IntPoly(tuple(c * t**k for k, c in enumerate(self.coeffs)))

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _as_intpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_intpoly(other))

    def __rsub__(self, other):
        return _as_intpoly(other) - self

    def __mul__(self, other):
        other = _as_intpoly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_list_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def _as_intpoly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    raise TypeError(f"cannot treat {x!r} as an integer polynomial")


def _require_nonzero(f: IntPoly) -> None:
    if not f.coeffs:
        raise ZeroPolynomialError("the zero polynomial is not allowed here")


_TERM = re.compile(r"^([+-])?(\d+)?(x(?:\^(\d+))?)?$")


def parse_poly(text: str) -> IntPoly:
    """Parse ``"c0,c1,...,cd"`` (ascending) or symbolic ``"x^5+x^3+1"``."""
    s = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise ValueError("empty polynomial text")
    if "x" not in s:
        return IntPoly(tuple(int(c) for c in s.split(",")))
    if "," in s:
        raise ValueError(f"cannot mix list and symbolic forms: {text!r}")
    coeffs: dict[int, int] = {}
    for term in re.findall(r"[+-]?[^+-]+", s):
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"bad term {term!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(3) is None:
            k = 0
        else:
            k = int(m.group(4)) if m.group(4) is not None else 1
        coeffs[k] = coeffs.get(k, 0) + sign * c
    top = max(coeffs)
    return IntPoly(tuple(coeffs.get(k, 0) for k in range(top + 1)))


# ---------------------------------------------------------------------------
# rational polynomial helpers (lists of Fraction, ascending, trimmed)


def _q(f: IntPoly) -> list:
    return [Fraction(c) for c in f.coeffs]


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
        _trim(a)
    return _trim(q), a


def _qgcd(a: list, b: list) -> list:
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return a


def _qdiff(a: list) -> list:
    return _trim([k * c for k, c in enumerate(a)][1:])


def from_rational(coeffs: Sequence[Number]) -> IntPoly:
    """Clear denominators of a rational polynomial and normalize."""
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return normalize(IntPoly(tuple(int(Fraction(c) * den) for c in coeffs)))


def _primitive_positive(a: list) -> list:
    """Scale a rational polynomial by a positive rational to a primitive integer one."""
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [Fraction(c // g) for c in ints]


# ---------------------------------------------------------------------------
# public operations


def normalize(f: IntPoly) -> IntPoly:
    """Primitive part of ``f`` with positive leading coefficient."""
    _require_nonzero(f)
    g = f.content()
    if f.coeffs[-1] < 0:
        g = -g
    return IntPoly(tuple(c // g for c in f.coeffs))


def poly_divmod(f: IntPoly, g: IntPoly) -> tuple[list, list]:
    """Quotient and remainder over Q, as Fraction lists."""
    _require_nonzero(g)
    return _qdivmod(_q(f), _q(g))


def divides(g: IntPoly, f: IntPoly) -> bool:
    """True iff g divides f in Q[x]."""
    return not poly_divmod(f, g)[1]


def exact_quotient(f: IntPoly, g: IntPoly) -> IntPoly:
    """f / g for g | f in Z[x]; raises if the division is not exact and integral."""
    q, r = poly_divmod(f, g)
    if r or any(c.denominator != 1 for c in q):
        raise ValueError(f"{g} does not divide {f} in Z[x]")
    return IntPoly(tuple(int(c) for c in q))


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Normalized gcd over Q."""
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    return from_rational(_qgcd(_q(f), _q(g)))


def _res(f: list, g: list) -> Fraction:
    acc = Fraction(1)
    while True:
        m, n = len(f) - 1, len(g) - 1
        if m == 0:
            return acc * f[0] ** n
        if n == 0:
            return acc * g[0] ** m
        if n < m:
            if (m * n) % 2:
                acc = -acc
            f, g = g, f
            continue
        r = _qdivmod(g, f)[1]
        if not r:
            return Fraction(0)
        acc *= f[-1] ** (n - (len(r) - 1))
        g = r


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(a_i), by Euclidean remainders over Q."""
    _require_nonzero(f)
    _require_nonzero(g)
    r = _res(_q(f), _q(g))
    assert r.denominator == 1
    return int(r)


def discriminant(f: IntPoly) -> int:
    """(-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    _require_nonzero(f)
    d = f.degree
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = Fraction(resultant(f, f.derivative()), f.lc)
    if (d * (d - 1) // 2) % 2:
        r = -r
    assert r.denominator == 1
    return int(r)


def is_squarefree(f: IntPoly) -> bool:
    _require_nonzero(f)
    if f.degree < 1:
        return True
    return len(_qgcd(_q(f), _q(f.derivative()))) == 1


def squarefree_part(f: IntPoly) -> IntPoly:
    """f / gcd(f, f'), normalized."""
    _require_nonzero(f)
    if f.degree < 1:
        return IntPoly((1,))
    g = _qgcd(_q(f), _q(f.derivative()))
    return from_rational(_qdivmod(_q(f), g)[0])


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: [(s_i, i)] with f = c * prod s_i**i, each s_i squarefree."""
    _require_nonzero(f)
    out: list[tuple[IntPoly, int]] = []
    if f.degree < 1:
        return out
    a = _q(f)
    da = _qdiff(a)
    b = _qgcd(a, da)
    c = _qdivmod(a, b)[0]
    d = _qdivmod(da, b)[0]
    i = 1
    while len(c) > 1:
        e = _trim([x - y for x, y in _zip_pad(d, _qdiff(c))])
        g = _qgcd(c, e) if e else c
        if len(g) > 1:
            out.append((from_rational(g), i))
        c = _qdivmod(c, g)[0]
        d = _qdivmod(e, g)[0] if e else []
        i += 1
    return out


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def sturm_sequence(f: IntPoly) -> list[IntPoly]:
    """Sturm chain f, f', -rem(...), each scaled by a positive constant to Z[x]."""
    _require_nonzero(f)
    seq = [_q(f), _primitive_positive(_q(f.derivative()))] if f.degree > 0 else [_q(f)]
    while len(seq) > 1 and len(seq[-1]) > 1:
        r = _qdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(_primitive_positive([-c for c in r]))
    return [IntPoly(tuple(int(c) for c in s)) for s in seq]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _signs_at(seq: list[IntPoly], x: Optional[Fraction], side: int) -> list[int]:
    if x is None:
        # side = +1 for +infinity, -1 for -infinity
        return [_sign(p.lc) * (side ** p.degree if side < 0 else 1) for p in seq]
    return [_sign(p(x)) for p in seq]


def sturm_count(f: IntPoly, lo: Optional[Number] = None, hi: Optional[Number] = None) -> int:
    """Number of distinct real roots of squarefree ``f`` in (lo, hi].

    ``None`` stands for -inf (``lo``) or +inf (``hi``).
    """
    _require_nonzero(f)
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree; take squarefree_part first")
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    if f.degree < 1:
        return 0
    seq = sturm_sequence(f)
    return _variations(_signs_at(seq, lo, -1)) - _variations(_signs_at(seq, hi, +1))


def power_sums(f: IntPoly, k: int) -> tuple:
    """(p_1, ..., p_k) with p_j the sum of j-th powers of the roots (with multiplicity)."""
    _require_nonzero(f)
    d = f.degree
    if d < 1 or k < 1:
        raise ValueError("need deg f >= 1 and k >= 1")
    lc = Fraction(f.lc)
    # elementary symmetric functions e_1..e_d read off the coefficients
    e = [Fraction(1)] + [(-1) ** j * f.coeffs[d - j] / lc for j in range(1, d + 1)]
    p: list[Fraction] = []
    for j in range(1, k + 1):
        s = Fraction(0)
        for i in range(1, j):
            if i <= d:
                s += (-1) ** (i - 1) * e[i] * p[j - i - 1]
        if j <= d:
            s += (-1) ** (j - 1) * j * e[j]
        p.append(s)
    return tuple(p)


def rational_roots(f: IntPoly) -> list[Fraction]:
    """All rational roots, by the rational root theorem."""
    f = normalize(f)
    roots: list[Fraction] = []
    cs = f.coeffs
    shift = 0
    while cs and cs[0] == 0:
        cs = cs[1:]
        shift += 1
    if shift:
        roots.append(Fraction(0))
    g = IntPoly(cs)
    if g.degree < 1:
        return roots
    for p in _divisors(abs(g.coeffs[0])):
        for q in _divisors(g.lc):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and g(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------
# mod-p machinery


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _ptrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list, b: list, p: int) -> tuple[list, list]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _ptrim(a)
    return _ptrim(q), a


def _pmulmod(a: list, b: list, m: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pdivmod(_ptrim(out), m, p)[1]


def _ppowmod(base: list, e: int, m: list, p: int) -> list:
    result = [1]
    base = _pdivmod(base, m, p)[1]
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list, b: list, p: int) -> list:
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_good_prime(f: IntPoly, p: int) -> bool:
    """p does not divide lc(f) * disc(f)."""
    if f.lc % p == 0:
        return False
    return f.degree < 2 or discriminant(f) % p != 0


def degree_pattern_mod_p(f: IntPoly, p: int, *, check: bool = True) -> DegreePattern:
    """Degrees of the irreducible factors of f mod p (distinct-degree factorization)."""
    f = normalize(f)
    if check and not is_good_prime(f, p):
        raise BadPrimeError(f"p = {p} divides lc(f)*disc(f) for f = {f}")
    g = _ptrim([c % p for c in f.coeffs])
    inv = pow(g[-1], -1, p)
    g = [c * inv % p for c in g]
    pattern: list[int] = []
    h = [0, 1]
    i = 1
    while len(g) - 1 >= 2 * i:
        h = _ppowmod(h, p, g, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        d = _pgcd(g, _ptrim(hx), p)
        if len(d) > 1:
            pattern += [i] * ((len(d) - 1) // i)
            g = _pdivmod(g, d, p)[0]
            h = _pdivmod(h, g, p)[1]
        i += 1
    if len(g) > 1:
        pattern.append(len(g) - 1)
    return tuple(sorted(pattern, reverse=True))


def good_primes(f: IntPoly, budget: int = 200) -> list[int]:
    """Primes below ``budget`` not dividing lc(f)*disc(f), increasing."""
    f = normalize(f)
    lc = f.lc
    disc = discriminant(f) if f.degree >= 2 else 1
    return [p for p in primes_up_to(budget - 1) if lc % p and disc % p]


def irreducible_witness(f: IntPoly, prime_budget: int = 200) -> Optional[int]:
    """Smallest good prime p < prime_budget with f irreducible mod p, else None.

    None is inconclusive: some irreducible polynomials (e.g. x^4 + 1) are
    reducible modulo every prime.
    """
    f = normalize(f)
    if f.degree < 1:
        return None
    if f.degree >= 2 and discriminant(f) == 0:
        return None
    for p in good_primes(f, prime_budget):
        if degree_pattern_mod_p(f, p, check=False) == (f.degree,):
            return p
    return None


# ---------------------------------------------------------------------------
# roots of unity


_PHI_LIMIT = 2 * 64 * 64


@lru_cache(maxsize=None)
def _phi_table(limit: int) -> tuple:
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return tuple(phi)


def inverse_phi(d: int) -> list[int]:
    """All n with phi(n) = d (uses phi(n) >= sqrt(n/2))."""
    limit = max(_PHI_LIMIT, 2 * d * d)
    phi = _phi_table(limit)
    return [n for n in range(1, 2 * d * d + 1) if phi[n] == d]


def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial."""
    num = IntPoly.monomial(n) - 1
    for k in range(1, n):
        if n % k == 0:
            num = exact_quotient(num, cyclotomic(k))
    return num


def is_root_of_unity(f: IntPoly) -> bool:
    """True iff the roots of irreducible ``f`` are roots of unity.

    Decided by testing f | x^n - 1 for every n with phi(n) = deg f.
    """
    f = normalize(f)
    d = f.degree
    if d < 1 or f.lc != 1 or abs(f.coeffs[0]) != 1:
        return False
    return any(_xpow_mod_monic(n, f.coeffs) == [1] for n in inverse_phi(d))


def _xpow_mod_monic(n: int, m: tuple) -> list:
    """x^n mod m over Z, for monic m."""
    d = len(m) - 1

    def mulmod(a: list, b: list) -> list:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        for k in range(len(out) - 1, d - 1, -1):
            c = out[k]
            if c:
                for i in range(d + 1):
                    out[k - d + i] -= c * m[i]
        return _ptrim(out[:d])

    result, base = [1], mulmod([0, 1], [1])
    while n:
        if n & 1:
            result = mulmod(result, base)
        base = mulmod(base, base)
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# resultants in an auxiliary variable, by evaluation and interpolation


def interpolate(xs: Sequence[int], ys: Sequence[Number]) -> list[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial, Newton form."""
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs = coeffs * (x - xs[i]) + dd[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += coeffs[k]
            new[k] -= coeffs[k] * xs[i]
        new[0] += dd[i]
        coeffs = new
    return _trim(coeffs)


def _from_values(xs: Sequence[int], ys: Sequence[int]) -> IntPoly:
    cs = interpolate(xs, ys)
    assert all(c.denominator == 1 for c in cs)
    return IntPoly(tuple(int(c) for c in cs))


def power_polynomial(f: IntPoly, k: int) -> IntPoly:
    """Res_y(f(y), x - y^k) = lc(f)^k * prod (x - a_i^k)."""
    _require_nonzero(f)
    d = f.degree
    xs = list(range(d + 1))
    ys = [resultant(f, IntPoly.monomial(k, -1) + x0) for x0 in xs]
    return _from_values(xs, ys)


def ratio_polynomial(f: IntPoly) -> IntPoly:
    """Res_y(f(y), f(x*y)); its roots are the ratios a_j / a_i of roots of f."""
    _require_nonzero(f)
    if f.coeffs[0] == 0:
        raise ValueError("ratio polynomial needs f(0) != 0")
    d = f.degree
    xs = list(range(1, d * d + 2))
    ys = [resultant(f, f.scale_var(x0)) for x0 in xs]
    return _from_values(xs, ys)
