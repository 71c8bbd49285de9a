import sympy

from heightlab import IntPoly

X = sympy.Symbol("x")

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE_RESULTS: dict = {}


def to_sympy(f: IntPoly) -> sympy.Poly:
    return sympy.Poly(list(reversed(f.coeffs)), X, domain="ZZ")


def from_sympy(p) -> IntPoly:
    return IntPoly(tuple(int(c) for c in reversed(sympy.Poly(p, X).all_coeffs())))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
