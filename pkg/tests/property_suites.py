"""Randomized property suites with fixed seeds.

Each suite returns ``(cases, failures)`` where failures is a list of
human-readable descriptions. The acceptance test and the per-module tests
share these.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction

from heightlab import (
    IntPoly,
    alternating_group,
    centralizer,
    fixed_cosets,
    generate,
    isolate_roots,
    mahler_measure,
    power_polynomial,
    sturm_count,
    symmetric_group,
    weil_height,
)
from heightlab.errors import ReducibleError
from heightlab.exactpoly import is_squarefree, normalize, squarefree_part
from heightlab.galois import conjugacy_class
from heightlab.height import irreducibility_certificate
from heightlab.roots import real_root_count_numeric

SEED = 20261015
CASES = 500


def random_poly(rng: random.Random, dmin=1, dmax=6, cmax=9) -> IntPoly:
    d = rng.randint(dmin, dmax)
    cs = [rng.randint(-cmax, cmax) for _ in range(d + 1)]
    while cs[-1] == 0:
        cs[-1] = rng.randint(-cmax, cmax)
    while cs[0] == 0:
        cs[0] = rng.randint(-cmax, cmax)
    return IntPoly(tuple(cs))


def random_squarefree(rng, **kw) -> IntPoly:
    while True:
        f = random_poly(rng, **kw)
        if is_squarefree(f):
            return f


def random_certified_irreducible(rng, **kw) -> IntPoly:
    while True:
        f = random_poly(rng, **kw)
        try:
            cert = irreducibility_certificate(f)
        except ReducibleError:
            continue
        if cert != "asserted":
            return f


def sturm_vs_numeric(cases=CASES, seed=SEED):
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        f = random_squarefree(rng, dmin=1, dmax=8)
        bag = isolate_roots(f)
        if sturm_count(f) != real_root_count_numeric(bag):
            failures.append(f"{f}: total real count")
            continue
        lo = Fraction(rng.randint(-40, 40), rng.randint(1, 8))
        hi = lo + Fraction(rng.randint(1, 60), rng.randint(1, 8))
        reals = [(bag.centers[i].real, bag.radii[i]) for i in bag.real_indices()]
        if any(abs(c - float(b)) <= r + 1e-12 for c, r in reals for b in (lo, hi)):
            continue  # a disk straddles an endpoint; the numeric side cannot decide
        numeric = sum(1 for c, _ in reals if float(lo) < c <= float(hi))
        if sturm_count(f, lo, hi) != numeric:
            failures.append(f"{f}: count in ({lo}, {hi}]")
    return cases, failures


def reciprocal_height(cases=CASES, seed=SEED + 1):
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        f = random_certified_irreducible(rng, dmin=1, dmax=6)
        a, b = weil_height(f), weil_height(f.reverse())
        if (a.lo, a.hi) != (b.lo, b.hi):
            failures.append(f"{f}: {a.enclosure} vs {b.enclosure}")
    return cases, failures


def power_height(cases=CASES, seed=SEED + 2, eps=1e-9):
    """h(a^k) = k h(a); the minimal polynomial of a^k is the primitive
    squarefree part of Res_y(f(y), x - y^k)."""
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        f = normalize(random_certified_irreducible(rng, dmin=1, dmax=4, cmax=6))
        k = rng.randint(2, 4)
        h = weil_height(f, eps)
        hk = weil_height(normalize(squarefree_part(power_polynomial(f, k))), eps)
        slack = 4 * eps * max(1.0, k * h.hi)
        if not (hk.lo - slack <= k * h.hi and k * h.lo <= hk.hi + slack):
            failures.append(f"{f}, k={k}: h(a^k) = {hk.enclosure} vs k*h = [{k * h.lo}, {k * h.hi}]")
    return cases, failures


def mahler_multiplicative(cases=CASES, seed=SEED + 3, eps=1e-9):
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        f = random_poly(rng, dmin=1, dmax=5)
        g = random_poly(rng, dmin=1, dmax=5)
        mf, mg, mfg = mahler_measure(f, eps), mahler_measure(g, eps), mahler_measure(f * g, eps)
        lo, hi = mf.lo * mg.lo, mf.hi * mg.hi
        if not (mfg.lo <= hi * (1 + 2 * eps) and lo <= mfg.hi * (1 + 2 * eps)):
            failures.append(f"M({f}) M({g}) = [{lo}, {hi}] vs M(fg) = [{mfg.lo}, {mfg.hi}]")
    return cases, failures


def orbit_stabilizer(cases=CASES, seed=SEED + 4):
    """|class(g)| |C(g)| = |G| and |H.i| |Stab_H(i)| = |H| in S5 and A5."""
    rng = random.Random(seed)
    groups = [symmetric_group(5), alternating_group(5)]
    failures = []
    for _ in range(cases):
        G = rng.choice(groups)
        g = rng.choice(G.elements)
        if len(conjugacy_class(G, g)) * centralizer(G, g).order != G.order:
            failures.append(f"class equation for {g} in group of order {G.order}")
        H = generate([rng.choice(G.elements) for _ in range(rng.randint(1, 2))], 5)
        i = rng.randrange(5)
        orbit = {h(i) for h in H}
        stab = sum(1 for h in H if h(i) == i)
        if len(orbit) * stab != H.order:
            failures.append(f"point orbit of {i} under {H.generators}")
    return cases, failures


def identity_fixes_all_cosets(cases=CASES, seed=SEED + 5):
    rng = random.Random(seed)
    groups = [symmetric_group(4), symmetric_group(5), alternating_group(5)]
    failures = []
    for _ in range(cases):
        G = rng.choice(groups)
        H = generate([rng.choice(G.elements) for _ in range(rng.randint(1, 2))], G.n)
        if fixed_cosets(G, H, G.identity()) != G.order // H.order:
            failures.append(f"H = <{', '.join(map(str, H.generators))}> in group of order {G.order}")
    return cases, failures


ALL_SUITES = {
    "sturm-vs-numeric": sturm_vs_numeric,
    "reciprocal-height": reciprocal_height,
    "power-height": power_height,
    "mahler-multiplicative": mahler_multiplicative,
    "orbit-stabilizer": orbit_stabilizer,
    "identity-fixed-cosets": identity_fixes_all_cosets,
}


@functools.lru_cache(maxsize=None)
def run_suite(name: str):
    """Memoized so the acceptance run and the per-suite tests share one pass."""
    cases, failures = ALL_SUITES[name]()
    return cases, tuple(failures)
