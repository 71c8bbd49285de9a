"""Exception hierarchy shared by all heightlab modules."""


class HeightlabError(Exception):
    """Base class for every error raised by heightlab."""


class ZeroPolynomialError(HeightlabError, ValueError):
    pass


class NotSquarefreeError(HeightlabError, ValueError):
    pass


class BadPrimeError(HeightlabError, ValueError):
    """The prime divides lc(f) * disc(f); pick another one."""


class ReducibleError(HeightlabError, ValueError):
    pass


class IndecisionError(HeightlabError, ArithmeticError):
    """Numerical certification did not succeed within the precision budget.

    Never a wrong answer: the caller may retry with a larger precision cap.
    """


class InconclusiveError(HeightlabError):
    """A search finished without proving or disproving the claim."""
