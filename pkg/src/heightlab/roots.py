"""Certified complex root isolation and the exact unit-circle decision.

Roots are approximated by Aberth-Ehrlich iteration in mpmath and certified a
posteriori: with Weierstrass corrections W_i = f(z_i) / (lc * prod_{j!=i}(z_i - z_j)),
the roots of f are the eigenvalues of diag(z) - W * ones^T, so Gershgorin
gives disks centred at z_i - W_i of radius (n - 1)|W_i|. Disjoint disks hold
exactly one root each. All of that is evaluated in interval arithmetic.

Floats never decide whether a root lies *on* the unit circle; that is done
exactly by :func:`all_on_unit_circle`.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from mpmath import iv, mp

from .errors import IndecisionError, NotSquarefreeError
from .exactpoly import (
    IntPoly,
    exact_quotient,
    is_squarefree,
    normalize,
    squarefree_part,
    sturm_count,
)
from .perms import Perm

START_PREC = 128
PREC_CAP = 4096

# mpmath's interval context has a single global precision
_IV_LOCK = threading.RLock()


@contextmanager
def _iv_prec(bits: int):
    with _IV_LOCK:
        old = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = old


def _up(x) -> float:
    return math.nextafter(float(x), math.inf)


def _down(x) -> float:
    return math.nextafter(float(x), -math.inf)


@dataclass(frozen=True)
class RootBag:
    """Disjoint disks, each certified to hold exactly one root of ``poly``.

    Real roots come first (ascending), then conjugate pairs with the upper
    half-plane member first. ``partners[i]`` is the index of the complex
    conjugate of root i (itself for real roots).
    """

    poly: IntPoly
    precision_bits: int
    centers: tuple
    radii: tuple
    partners: tuple
    # high-precision centers, kept for reconstruction work; not serialized
    mp_centers: tuple = field(default=(), compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(self.centers)

    @property
    def max_radius(self) -> float:
        return max(self.radii, default=0.0)

    def real_indices(self) -> list[int]:
        return [i for i, j in enumerate(self.partners) if i == j]

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_list_text(),
            "precision_bits": self.precision_bits,
            "roots": [
                {
                    "re": c.real.hex(),
                    "im": c.imag.hex(),
                    "radius": r.hex(),
                    "partner": p,
                }
                for c, r, p in zip(self.centers, self.radii, self.partners)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RootBag":
        roots = data["roots"]
        return cls(
            poly=IntPoly.parse(data["poly"]),
            precision_bits=int(data["precision_bits"]),
            centers=tuple(complex(float.fromhex(r["re"]), float.fromhex(r["im"])) for r in roots),
            radii=tuple(float.fromhex(r["radius"]) for r in roots),
            partners=tuple(int(r["partner"]) for r in roots),
        )


@dataclass(frozen=True)
class CircleWitness:
    index: int
    separation: Fraction  # certified lower bound for ||root| - 1|


@dataclass(frozen=True)
class CircleVerdict:
    on_circle: bool
    method: str  # "exact-self-inversive" or "certified-numeric"
    witness: Optional[CircleWitness] = None


# ---------------------------------------------------------------------------
# Aberth iteration and certification


def _seeds(g: IntPoly) -> list:
    n = g.degree
    seeds: list = []
    try:
        with np.errstate(all="raise"):
            approx = np.roots([float(c) for c in reversed(g.coeffs)])
        if len(approx) == n and np.all(np.isfinite(approx)):
            seeds = [complex(z) for z in approx]
    except (FloatingPointError, OverflowError, np.linalg.LinAlgError):
        seeds = []
    if not seeds:
        # Cauchy bound circle, rotated off the real axis
        bound = 1 + max(abs(Fraction(c, g.lc)) for c in g.coeffs[:-1])
        r = float(min(bound, 1e300))
        seeds = [r * complex(math.cos(a), math.sin(a))
                 for a in (2 * math.pi * (k + 0.25) / n for k in range(n))]
    out = []
    for k, z in enumerate(seeds):
        # separate coincident seeds; Aberth needs distinct starting points
        while any(abs(z - w) < 1e-12 * (1 + abs(z)) for w in out):
            z += complex(1e-7 * (k + 1), 3e-7 * (k + 1)) * (1 + abs(z))
        out.append(z)
    return [mp.mpc(z) for z in out]


def _aberth(g: IntPoly, z: list, prec: int, maxiter: int = 200) -> list:
    n = len(z)
    with mp.workprec(prec):
        # coefficients must be converted at working precision, not the 53-bit default
        cs = [mp.mpf(c) for c in g.coeffs]
        dcs = [mp.mpf(c) for c in g.derivative().coeffs]
        tol = mp.mpf(2) ** (-(prec - 8))
        z = [mp.mpc(w) for w in z]
        for _ in range(maxiter):
            worst = mp.mpf(0)
            for i in range(n):
                p = mp.polyval(cs[::-1], z[i])
                if p == 0:
                    continue
                dp = mp.polyval(dcs[::-1], z[i]) if dcs else mp.mpf(0)
                s = mp.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                ratio = p / dp if dp != 0 else None
                if ratio is None:
                    w = p / (cs[-1] * mp.fprod(z[i] - z[j] for j in range(n) if j != i))
                else:
                    w = ratio / (1 - ratio * s)
                z[i] -= w
                worst = max(worst, abs(w) / max(1, abs(z[i])))
            if worst < tol:
                break
    return z


def _certify(g: IntPoly, z: list, prec: int) -> tuple[list, list]:
    """Gershgorin disks (center, radius) as mp values, radius rounded outward."""
    n = len(z)
    with _iv_prec(prec + 16), mp.workprec(prec + 16):
        cs = [iv.mpf(c) for c in g.coeffs]
        lc = cs[-1]
        zi = [iv.mpc(w.real, w.imag) for w in z]
        centers, radii = [], []
        for i in range(n):
            p = cs[-1]
            for c in reversed(cs[:-1]):
                p = p * zi[i] + c
            den = lc
            for j in range(n):
                if j != i:
                    den = den * (zi[i] - zi[j])
            w = p / den
            gc = zi[i] - w
            c = mp.mpc(mp.mpf(gc.real.mid), mp.mpf(gc.imag.mid))
            spread = abs(gc - iv.mpc(c.real, c.imag)).b
            rad = spread + (n - 1) * abs(w).b
            centers.append(c)
            radii.append(mp.mpf(rad.b))
    return centers, radii


def _disks_disjoint(centers: list, radii: list) -> bool:
    n = len(centers)
    for i in range(n):
        for j in range(i + 1, n):
            d = abs(centers[i] - centers[j])
            if not d > radii[i] + radii[j]:
                return False
    return True


def _pair(centers: list, radii: list) -> Optional[list]:
    """Conjugate partners by mirror-disk overlap; None if ambiguous."""
    n = len(centers)
    partners = []
    for i in range(n):
        mirror = centers[i].conjugate()
        hits = [j for j in range(n) if abs(centers[j] - mirror) <= radii[i] + radii[j]]
        if len(hits) != 1:
            return None
        partners.append(hits[0])
    if any(partners[partners[i]] != i for i in range(n)):
        return None
    return partners


def _frac_pair(centers: tuple, radii: tuple) -> Optional[list]:
    """Exact (rational) version of disjointness plus pairing for float disks."""
    n = len(centers)
    cs = [(Fraction(c.real), Fraction(c.imag)) for c in centers]
    rs = [Fraction(r) for r in radii]

    def meet(a, b, r):
        return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 <= r * r

    for i in range(n):
        for j in range(i + 1, n):
            if meet(cs[i], cs[j], rs[i] + rs[j]):
                return None
    partners = []
    for i in range(n):
        mirror = (cs[i][0], -cs[i][1])
        hits = [j for j in range(n) if meet(cs[j], mirror, rs[i] + rs[j])]
        if len(hits) != 1:
            return None
        partners.append(hits[0])
    if any(partners[partners[i]] != i for i in range(n)):
        return None
    return partners


def isolate_roots(
    f: IntPoly,
    target_radius: float = 1e-12,
    prec_cap: int = PREC_CAP,
    start_prec: int = START_PREC,
) -> RootBag:
    """Certified disks around every root of squarefree ``f``.

    Precision doubles from ``start_prec`` up to ``prec_cap``. If the disks are
    disjoint and conjugate-paired but cannot be shrunk below ``target_radius``
    (float centers limit this to about 1e-16 relative), the bag is returned
    with its achieved radii; otherwise :class:`IndecisionError` is raised.
    """
    f = normalize(f)
    if f.degree < 1:
        raise ValueError("isolate_roots needs degree >= 1")
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    zero_root = f.coeffs[0] == 0
    g = exact_quotient(f, IntPoly((0, 1))) if zero_root else f

    z = _seeds(g) if g.degree > 0 else []
    prec = start_prec
    best = None
    float_limited = False
    while True:
        if g.degree > 0:
            z = _aberth(g, z, prec)
            centers, radii = _certify(g, z, prec)
            z = centers
        else:
            centers, radii = [], []
        if zero_root:
            centers = centers + [mp.mpc(0)]
            radii = radii + [mp.mpf(0)]
        with mp.workprec(prec + 16):
            partners = _pair(centers, radii) if _disks_disjoint(centers, radii) else None
        if partners is not None:
            bag = _build(f, prec, centers, radii, partners)
            if _frac_pair(bag.centers, bag.radii) != list(bag.partners):
                # separated at working precision, merged once rounded to doubles
                float_limited = True
            else:
                best = bag
                if best.max_radius <= target_radius:
                    return best
                if max(radii, default=0) < target_radius * 1e-3:
                    # float rounding of the centers dominates; more bits won't help
                    return best
        if prec * 2 > prec_cap:
            break
        prec *= 2
    if best is not None:
        return best
    if float_limited:
        raise IndecisionError(
            f"roots of {f} are closer than double-precision centers can separate")
    raise IndecisionError(
        f"could not isolate the roots of {f} within {prec_cap} bits")


def _build(f: IntPoly, prec: int, centers: list, radii: list, partners: list) -> RootBag:
    n = len(centers)
    real = [i for i in range(n) if partners[i] == i]
    upper = [i for i in range(n) if partners[i] != i and centers[i].imag > 0]
    real.sort(key=lambda i: centers[i].real)
    upper.sort(key=lambda i: (centers[i].real, centers[i].imag))
    order = list(real)
    for i in upper:
        order += [i, partners[i]]
    pos = {old: new for new, old in enumerate(order)}

    fc, fr, mc = [], [], []
    for i in order:
        c = centers[i]
        with mp.workprec(prec + 16):
            if partners[i] == i:
                # the root is real, so projecting the center keeps it inside the disk
                c = mp.mpc(c.real, 0)
            cf = complex(float(c.real), float(c.imag))
            shift = abs(c - mp.mpc(cf.real, cf.imag))
            r = _up(radii[i] + shift)
        fc.append(cf)
        fr.append(r)
        mc.append(c)
    return RootBag(
        poly=f,
        precision_bits=prec,
        centers=tuple(fc),
        radii=tuple(fr),
        partners=tuple(pos[partners[i]] for i in order),
        mp_centers=tuple(mc),
    )


def real_root_count_numeric(bag: RootBag) -> int:
    """Number of disks certified to hold a real root.

    Recomputed exactly from the disk geometry: a disk whose mirror image meets
    only itself holds a real root, one whose mirror meets exactly one other
    disk holds a non-real root.
    """
    partners = _frac_pair(bag.centers, bag.radii)
    if partners is None:
        raise IndecisionError("disks too wide to decide which roots are real")
    return sum(1 for i, j in enumerate(partners) if i == j)


def conjugation_pairing(bag: RootBag) -> Perm:
    """Complex conjugation acting on the root indices of ``bag``."""
    partners = _frac_pair(bag.centers, bag.radii)
    if partners is None:
        raise IndecisionError("conjugate pairing is ambiguous at this precision")
    return Perm(tuple(partners))


# ---------------------------------------------------------------------------
# unit circle


def self_inversive_sign(f: IntPoly) -> int:
    """+1 or -1 if x^d f(1/x) = +-f, else 0."""
    r = f.reverse()
    if r == f:
        return 1
    if r == -f:
        return -1
    return 0


def _strip_unit_roots(f: IntPoly) -> tuple[IntPoly, int, int]:
    """Divide out all factors x - 1 and x + 1; returns (rest, mult at 1, mult at -1)."""
    m1 = m2 = 0
    while f.degree >= 1 and f(1) == 0:
        f = exact_quotient(f, IntPoly((-1, 1)))
        m1 += 1
    while f.degree >= 1 and f(-1) == 0:
        f = exact_quotient(f, IntPoly((1, 1)))
        m2 += 1
    return f, m1, m2


def trace_polynomial(g: IntPoly) -> IntPoly:
    """For palindromic g of degree 2m, the h with g(x) = x^m h(x + 1/x)."""
    d = g.degree
    if d % 2 or g.reverse() != g:
        raise ValueError("trace_polynomial needs a palindromic even-degree polynomial")
    m = d // 2
    # x^k + x^-k = D_k(y) with D_0 = 2, D_1 = y, D_k = y D_{k-1} - D_{k-2}
    dick = [IntPoly((2,)), IntPoly((0, 1))]
    for _ in range(2, m + 1):
        dick.append(IntPoly((0, 1)) * dick[-1] - dick[-2])
    h = IntPoly((g.coeffs[m],))
    for k in range(1, m + 1):
        h = h + dick[k] * g.coeffs[m + k]
    return h


def _reduce_to_trace(f: IntPoly) -> Optional[IntPoly]:
    """Trace polynomial of f with its roots at +-1 removed, or None if f is not self-inversive."""
    if self_inversive_sign(f) == 0:
        return None
    g, _, _ = _strip_unit_roots(f)
    if g.degree == 0:
        return IntPoly((1,))
    # with +-1 roots removed, self-inversive forces the + sign and even degree
    if self_inversive_sign(g) != 1 or g.degree % 2:
        raise AssertionError(f"self-inversive reduction failed for {f}")
    return trace_polynomial(g)


def _trace_roots_in_window(h: IntPoly) -> bool:
    """All roots of h real and inside [-2, 2]."""
    if h.degree < 1:
        return True
    s = squarefree_part(h)
    inside = sturm_count(s, -2, 2) + (1 if s(-2) == 0 else 0)
    return inside == s.degree


def all_on_unit_circle(f: IntPoly, prec_cap: int = PREC_CAP) -> CircleVerdict:
    """Exact decision whether every root of ``f`` has modulus 1."""
    f = normalize(f)
    if f.coeffs[0] == 0:
        raise ValueError("all_on_unit_circle needs f(0) != 0")
    h = _reduce_to_trace(f)
    if h is not None and _trace_roots_in_window(h):
        return CircleVerdict(True, "exact-self-inversive")
    return CircleVerdict(False, "exact-self-inversive", off_circle_witness(f, prec_cap))


def _off_circle(center: complex, radius: float) -> Optional[Fraction]:
    """Certified lower bound on ||a| - 1| for every a in the disk, or None."""
    c2 = Fraction(center.real) ** 2 + Fraction(center.imag) ** 2
    r = Fraction(radius)
    guess = abs(math.hypot(center.real, center.imag) - 1) - radius
    if guess <= 0:
        return None
    s = Fraction(guess * (1 - 1e-9))
    for _ in range(60):
        if (c2 > (1 + r + s) ** 2) or (1 - r - s > 0 and c2 < (1 - r - s) ** 2):
            return s
        s /= 2
    return None


def off_circle_witness(f: IntPoly, prec_cap: int = PREC_CAP) -> Optional[CircleWitness]:
    """Index (in the bag of the squarefree part) of a root provably off the circle."""
    s = squarefree_part(f)
    target = 1e-12
    while True:
        bag = isolate_roots(s, target_radius=target, prec_cap=prec_cap)
        for i, (c, r) in enumerate(zip(bag.centers, bag.radii)):
            sep = _off_circle(c, r)
            if sep is not None:
                return CircleWitness(i, sep)
        if bag.max_radius > target or target < 1e-15:
            return None
        target /= 1000


def numeric_circle_check(bag: RootBag) -> Optional[bool]:
    """False if some disk provably misses the unit circle, else None (undecided).

    Numerics can refute but never establish that all roots lie on the circle.
    """
    for c, r in zip(bag.centers, bag.radii):
        if _off_circle(c, r) is not None:
            return False
    return None


def _compose(outer: IntPoly, inner: IntPoly) -> IntPoly:
    out = IntPoly(())
    for c in reversed(outer.coeffs):
        out = out * inner + c
    return out


def real_imag_polys(f: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Integer polynomials vanishing at Re(s(a)) and at +-Im(s(a)) for every root a.

    Only for self-inversive ``f`` with no roots at +-1. When all roots lie on
    the circle both polynomials are totally real, which is what puts such an
    element into K^tr(i).
    """
    h = _reduce_to_trace(f)
    if h is None or (f(1) == 0 or f(-1) == 0):
        raise ValueError("real_imag_polys needs a self-inversive f without roots at +-1")
    re_poly = normalize(h.scale_var(2))
    # h(y) h(-y) = E(y^2); Im^2 = (4 - y^2)/4, i.e. y^2 = 4 - 4x^2
    even = h * IntPoly(tuple(c * (-1) ** k for k, c in enumerate(h.coeffs)))
    e = IntPoly(even.coeffs[::2])
    im_poly = normalize(_compose(e, IntPoly((4, 0, -4))))
    return re_poly, im_poly


def is_totally_real(f: IntPoly) -> bool:
    """All roots of f real (exact, by Sturm on the squarefree part)."""
    s = squarefree_part(normalize(f))
    return sturm_count(s) == s.degree
