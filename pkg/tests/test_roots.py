import json
import random

import mpmath
import pytest

from heightlab.errors import IndecisionError
from heightlab.exactpoly import IntPoly, cyclotomic, is_squarefree, parse_poly
from heightlab.roots import (
    RootBag,
    all_on_unit_circle,
    conjugation_pairing,
    is_totally_real,
    isolate_roots,
    numeric_circle_check,
    off_circle_witness,
    real_imag_polys,
    real_root_count_numeric,
    self_inversive_sign,
    trace_polynomial,
)

QUINTIC = IntPoly((1, 0, 0, 1, 0, 1))


def reference_roots(f):
    with mpmath.workdps(60):
        return mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=400, extraprec=400)


def assert_bag_encloses(f, bag):
    """Every high-precision reference root sits in exactly one disk."""
    ref = reference_roots(f)
    assert bag.degree == len(ref) == f.degree
    hit = []
    for r in ref:
        inside = [i for i, (c, rad) in enumerate(zip(bag.centers, bag.radii))
                  if abs(complex(r) - c) <= rad + 1e-300]
        assert len(inside) == 1, (f, r)
        hit.append(inside[0])
    assert sorted(hit) == list(range(f.degree))


def test_quintic_bag():
    bag = isolate_roots(QUINTIC)
    assert_bag_encloses(QUINTIC, bag)
    assert real_root_count_numeric(bag) == 1
    assert bag.real_indices() == [0]
    c = conjugation_pairing(bag)
    assert c.cycle_type() == (2, 2, 1)
    assert str(c) == "(1 2)(3 4)"
    assert bag.max_radius <= 1e-12


def test_bag_ordering_and_partners():
    f = IntPoly((-2, 0, 0, 0, 1))  # x^4 - 2
    bag = isolate_roots(f)
    assert bag.real_indices() == [0, 1]
    assert bag.centers[0].real < 0 < bag.centers[1].real
    assert bag.centers[2].imag > 0 and bag.partners[2] == 3 and bag.partners[3] == 2


def test_random_isolation_against_mpmath():
    rng = random.Random(11)
    n = 0
    while n < 60:
        d = rng.randint(1, 9)
        f = IntPoly(tuple(rng.randint(-20, 20) for _ in range(d)) + (rng.choice([1, 2, -3]),))
        if f.coeffs[0] == 0 or not is_squarefree(f):
            continue
        n += 1
        assert_bag_encloses(f, isolate_roots(f))


def test_close_pair_isolated():
    # roots 1 +- 10^-12
    e = 10 ** 24
    f = IntPoly((e - 1, -2 * e, e))
    bag = isolate_roots(f, target_radius=1e-14)
    assert real_root_count_numeric(bag) == 2
    assert bag.centers[0].real < 1 < bag.centers[1].real


def test_pair_below_double_resolution_is_undecided():
    # roots 1 +- 10^-40 round to the same double: honest indecision, no merged bag
    e = 10 ** 80
    with pytest.raises(IndecisionError, match="double-precision"):
        isolate_roots(IntPoly((e - 1, -2 * e, e)))


def test_precision_cap_raises_indecision():
    # a 30-digit tight pair cannot be certified with a 128-bit budget
    e = 10 ** 30
    f = IntPoly((e - 1, -2 * e, e)) * IntPoly((0,) * 0 + (1,))
    with pytest.raises(IndecisionError):
        isolate_roots(IntPoly((e * e - 1, -2 * e * e, e * e)), prec_cap=64, start_prec=64)
    _ = f


def test_json_roundtrip_hex_floats():
    bag = isolate_roots(QUINTIC)
    data = json.loads(json.dumps(bag.to_json()))
    assert data["roots"][0]["re"].startswith(("0x", "-0x"))
    back = RootBag.from_json(data)
    assert back == bag


# --- unit circle ----------------------------------------------------------

@pytest.mark.parametrize("f,expected", [
    (IntPoly((5, -6, 5)), True),
    (IntPoly((5, 0, -6, 0, 5)), True),
    (IntPoly((1, 1, 1)), True),
    (IntPoly((1, -1, 0, 1)), False),
    (IntPoly((-1, -1, 1)), False),
    (QUINTIC, False),
    (IntPoly((1, 3, 1)), False),  # self-inversive but roots real, off the circle
    (IntPoly((1, 3, 2, 3, 1)), False),  # (x^2 + 3x + 1)(x^2 + 1): self-inversive, two roots off
    (IntPoly((-1, 1)), True),
    (IntPoly((1, 0, -2, 0, 1)), True),  # (x^2 - 1)^2
])
def test_all_on_unit_circle(f, expected):
    v = all_on_unit_circle(f)
    assert v.on_circle is expected
    if not expected:
        assert v.witness is not None and v.witness.separation > 0


def test_circle_against_reference_roots():
    rng = random.Random(12)
    for _ in range(150):
        d = rng.randint(1, 4)
        half = [rng.randint(-4, 4) for _ in range(d)] + [rng.randint(1, 4)]
        cs = half + half[-2::-1]  # palindromic, degree 2d
        f = IntPoly(tuple(reversed(cs)))
        if f.coeffs[0] == 0:
            continue
        ref = reference_roots(f)
        truth = all(abs(abs(r) - 1) < 1e-20 for r in ref)
        if not truth and min(abs(abs(r) - 1) for r in ref) < 1e-8:
            continue  # reference itself too close to call
        assert all_on_unit_circle(f).on_circle is truth, f


def test_self_inversive_sign_and_trace():
    assert self_inversive_sign(IntPoly((5, -6, 5))) == 1
    assert self_inversive_sign(IntPoly((-1, 0, 1))) == -1
    assert self_inversive_sign(QUINTIC) == 0
    # x^2 + 1 = x (x + 1/x): trace polynomial y
    assert trace_polynomial(IntPoly((1, 0, 1))) == IntPoly((0, 1))


def test_numeric_circle_check_only_refutes():
    assert numeric_circle_check(isolate_roots(QUINTIC)) is False
    assert numeric_circle_check(isolate_roots(cyclotomic(7))) is None
    assert off_circle_witness(cyclotomic(9)) is None


def test_real_imag_polys_cm_element():
    f = IntPoly((5, -6, 5))  # roots (3 +- 4i)/5
    re_p, im_p = real_imag_polys(f)
    assert re_p == IntPoly((-3, 5))
    assert im_p == IntPoly((-16, 0, 25))
    assert is_totally_real(re_p) and is_totally_real(im_p)


def test_real_imag_polys_vanish_at_parts():
    for n in (5, 7, 9, 12, 15):
        f = cyclotomic(n)
        re_p, im_p = real_imag_polys(f)
        with mpmath.workdps(60):
            for r in reference_roots(f):
                assert abs(mpmath.polyval(list(reversed(re_p.coeffs)), r.real)) < 1e-40
                assert abs(mpmath.polyval(list(reversed(im_p.coeffs)), r.imag)) < 1e-40


def test_real_imag_polys_rejects_non_self_inversive():
    with pytest.raises(ValueError):
        real_imag_polys(QUINTIC)
    with pytest.raises(ValueError):
        real_imag_polys(parse_poly("x^2-1"))


def test_totally_real():
    assert is_totally_real(parse_poly("x^2-x-1"))
    assert not is_totally_real(QUINTIC)
