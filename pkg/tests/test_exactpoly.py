import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester

from conftest import X, from_sympy, to_sympy
from heightlab.errors import BadPrimeError, NotSquarefreeError, ZeroPolynomialError
from heightlab.exactpoly import (
    IntPoly,
    cyclotomic,
    degree_pattern_mod_p,
    discriminant,
    divides,
    exact_quotient,
    interpolate,
    inverse_phi,
    irreducible_witness,
    is_root_of_unity,
    is_squarefree,
    normalize,
    parse_poly,
    poly_divmod,
    poly_gcd,
    power_polynomial,
    power_sums,
    ratio_polynomial,
    rational_roots,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)

QUINTIC = IntPoly((1, 0, 0, 1, 0, 1))


def rand_poly(rng, dmax=6, cmax=12, dmin=1):
    d = rng.randint(dmin, dmax)
    cs = [rng.randint(-cmax, cmax) for _ in range(d)] + [rng.choice([-3, -2, -1, 1, 2, 3, 5])]
    return IntPoly(tuple(cs))


# --- parsing and arithmetic -------------------------------------------------

@pytest.mark.parametrize("text,coeffs", [
    ("x^5+x^3+1", (1, 0, 0, 1, 0, 1)),
    ("1,0,0,1,0,1", (1, 0, 0, 1, 0, 1)),
    ("5x^4 - 6x^2 + 5", (5, 0, -6, 0, 5)),
    ("-x**2 + 3*x - 2", (-2, 3, -1)),
    ("x", (0, 1)),
    ("7", (7,)),
    ("2x^3 - x", (0, -1, 0, 2)),
])
def test_parse(text, coeffs):
    assert parse_poly(text).coeffs == coeffs


def test_parse_roundtrip_through_str():
    rng = random.Random(1)
    for _ in range(200):
        f = rand_poly(rng)
        assert parse_poly(str(f)) == f
        assert parse_poly(f.to_list_text()) == f


def test_arithmetic_matches_sympy():
    rng = random.Random(2)
    for _ in range(200):
        f, g = rand_poly(rng), rand_poly(rng)
        assert to_sympy(f * g) == to_sympy(f) * to_sympy(g)
        assert to_sympy(f + g) == to_sympy(f) + to_sympy(g)
        q, r = poly_divmod(f * g + f, g)
        assert to_sympy(f * g + f).as_expr().expand() == sympy.expand(
            sympy.Poly(list(reversed(q)), X).as_expr() * to_sympy(g).as_expr()
            + sympy.Poly(list(reversed(r)) or [0], X).as_expr())
        assert exact_quotient(f * g, g) == f
        assert divides(g, f * g)


def test_gcd_matches_sympy():
    rng = random.Random(3)
    for _ in range(150):
        h = rand_poly(rng, dmax=3)
        f, g = rand_poly(rng, dmax=3) * h, rand_poly(rng, dmax=3) * h
        ours = normalize(poly_gcd(f, g))
        ref = from_sympy(sympy.gcd(to_sympy(f), to_sympy(g)))
        assert ours == normalize(ref)


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomialError):
        discriminant(IntPoly(()))


# --- resultants and discriminants --------------------------------------------

def test_known_discriminants():
    assert discriminant(QUINTIC) == 3233
    assert discriminant(IntPoly((1, 0, 1))) == -4
    assert discriminant(IntPoly((-2, 0, 0, 1))) == -108
    assert resultant(IntPoly((-2, 1)), IntPoly((-3, 1))) == -1
    # lc(f)^deg g * g(-5/3) = 27 * (1 - 5/3 + 25/9 - 125/27)
    assert resultant(IntPoly((5, 3)), IntPoly((1, 1, 1, 1))) == -68


def test_resultant_and_discriminant_match_sympy():
    rng = random.Random(4)
    for _ in range(300):
        f, g = rand_poly(rng), rand_poly(rng)
        # Sylvester determinant: sympy's Poly.resultant disagrees in sign on some inputs
        assert resultant(f, g) == sylvester(to_sympy(f).as_expr(), to_sympy(g).as_expr(), X).det()
        if f.degree >= 2:
            assert discriminant(f) == sympy.discriminant(to_sympy(f))
        else:
            with pytest.raises(ValueError):
                discriminant(f)


# --- squarefree ---------------------------------------------------------------

def test_squarefree_decomposition_reconstructs():
    rng = random.Random(5)
    for _ in range(150):
        a, b = rand_poly(rng, dmax=3), rand_poly(rng, dmax=2)
        f = a * b * b
        prod = IntPoly((1,))
        for part, mult in squarefree_decomposition(f):
            assert is_squarefree(part)
            prod = prod * part ** mult
        assert normalize(prod) == normalize(f)
        ref = from_sympy(sympy.sqf_part(to_sympy(f)))
        assert normalize(squarefree_part(f)) == normalize(ref)


# --- Sturm ----------------------------------------------------------------

def test_sturm_known():
    assert sturm_count(QUINTIC) == 1
    assert sturm_count(IntPoly((1, 0, 1))) == 0
    assert sturm_count(IntPoly((-2, 0, 1)), Fraction(0), None) == 1
    assert sturm_count(IntPoly((-2, 0, 1)), Fraction(-2), Fraction(-1)) == 1
    # half-open interval: a root at hi counts, a root at lo does not
    assert sturm_count(IntPoly((-1, 1)), Fraction(0), Fraction(1)) == 1
    assert sturm_count(IntPoly((-1, 1)), Fraction(1), Fraction(2)) == 0


def test_sturm_requires_squarefree():
    with pytest.raises(NotSquarefreeError):
        sturm_count(IntPoly((1, 2, 1)))


def test_sturm_matches_sympy_count_roots():
    rng = random.Random(6)
    n = 0
    while n < 300:
        f = rand_poly(rng, dmax=8)
        if not is_squarefree(f):
            continue
        n += 1
        lo = Fraction(rng.randint(-30, 30), rng.randint(1, 5))
        hi = lo + Fraction(rng.randint(1, 40), rng.randint(1, 5))
        sp = to_sympy(f)
        assert sturm_count(f) == sp.count_roots()
        # sympy counts the closed interval [lo, hi]
        expected = sp.count_roots(lo, hi) - (1 if sp.eval(lo) == 0 else 0)
        assert sturm_count(f, lo, hi) == expected


def brute_force_real_roots(f, lo=-1e4, hi=1e4, steps=200000):
    """Sign changes on a fine grid; a coarse independent oracle for small cases."""
    import numpy as np
    xs = np.linspace(lo, hi, steps)
    ys = np.polyval(list(reversed([float(c) for c in f.coeffs])), xs)
    return int(np.sum(np.signbit(ys[1:]) != np.signbit(ys[:-1])))


def test_sturm_matches_grid_on_well_separated_roots():
    for roots in [(-3, 1, 4), (-7, -2, 0, 5, 9), (1, 2, 3, 4, 5, 6)]:
        f = IntPoly.from_roots(roots) + IntPoly((0,))
        assert sturm_count(f) == len(roots) == brute_force_real_roots(f, -20.5, 20.3)


# --- symmetric functions, rational roots --------------------------------

def test_power_sums():
    assert power_sums(QUINTIC, 2) == (0, -2)
    rng = random.Random(7)
    n = 0
    while n < 200:
        f = rand_poly(rng, dmax=5)
        if not is_squarefree(f):
            continue  # clustered roots slow the oracle down, not the code under test
        n += 1
        k = 6
        with mpmath.workdps(50):
            roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=200, extraprec=200)
            for j, pj in enumerate(power_sums(f, k), 1):
                ref = sum(r ** j for r in roots)
                assert abs(ref - mpmath.mpf(pj.numerator) / pj.denominator) < mpmath.mpf(10) ** -30 * max(1, abs(ref))


def test_rational_roots():
    f = IntPoly((3, -5, 2)) * IntPoly((1, 0, 1))  # (2x-3)(x-1)(x^2+1)
    assert sorted(rational_roots(f)) == [1, Fraction(3, 2)]
    assert rational_roots(QUINTIC) == []


# --- mod p -----------------------------------------------------------------

def test_degree_patterns_match_sympy():
    rng = random.Random(8)
    checked = 0
    while checked < 150:
        f = normalize(rand_poly(rng, dmax=7))
        p = rng.choice([3, 5, 7, 11, 13, 17])
        try:
            ours = degree_pattern_mod_p(f, p)
        except BadPrimeError:
            continue
        checked += 1
        facs = sympy.factor_list(to_sympy(f).as_expr(), X, modulus=p)[1]
        ref = sorted((sympy.degree(g, X) for g, e in facs for _ in range(e)), reverse=True)
        assert list(ours) == ref


def test_quintic_patterns_and_bad_primes():
    assert degree_pattern_mod_p(QUINTIC, 5) == (3, 2)
    with pytest.raises(BadPrimeError):
        degree_pattern_mod_p(QUINTIC, 53)  # 3233 = 53 * 61
    assert irreducible_witness(QUINTIC) == 2
    assert irreducible_witness(IntPoly((1, 0, -2, 0, 1))) is None


def test_irreducible_witness_is_sound():
    rng = random.Random(9)
    for _ in range(200):
        f = rand_poly(rng, dmax=6)
        if irreducible_witness(f) is not None:
            assert len(sympy.factor_list(to_sympy(f))[1]) == 1
            assert sympy.factor_list(to_sympy(f))[1][0][1] == 1


# --- roots of unity -----------------------------------------------------

def test_cyclotomic_matches_sympy():
    for n in range(1, 40):
        assert cyclotomic(n) == from_sympy(sympy.cyclotomic_poly(n, X))


def test_inverse_phi():
    for d in range(1, 30):
        assert sorted(inverse_phi(d)) == [n for n in range(1, 200) if sympy.totient(n) == d]


def test_root_of_unity_detection():
    for n in range(1, 30):
        assert is_root_of_unity(cyclotomic(n))
    assert not is_root_of_unity(IntPoly((5, -6, 5)))
    assert not is_root_of_unity(IntPoly((1, 0, 0, 1, 0, 1)))
    assert not is_root_of_unity(IntPoly((1, -1, 0, 1)))


# --- auxiliary resultants -----------------------------------------------

def test_interpolate():
    f = IntPoly((3, -1, 0, 2))
    xs = list(range(5))
    assert interpolate(xs, [f(x) for x in xs]) == list(f.coeffs)


def test_power_and_ratio_polynomials_match_sympy():
    y = sympy.Symbol("y")
    rng = random.Random(10)
    for _ in range(15):
        f = rand_poly(rng, dmax=3, cmax=5)
        if f.coeffs[0] == 0:
            f = f + IntPoly((1,))
        fy = to_sympy(f).as_expr().subs(X, y)
        k = rng.randint(2, 3)
        ref = sylvester(fy, X - y ** k, y).det()
        assert power_polynomial(f, k) == from_sympy(sympy.expand(ref))
        ref = sylvester(fy, to_sympy(f).as_expr().subs(X, X * y), y).det()
        assert ratio_polynomial(f) == from_sympy(sympy.expand(ref))
