"""Exception hierarchy.

Precondition failures map to CLI exit code 1, certification and search
failures to exit code 2.
"""


class KneadError(Exception):
    pass


class InvalidGraph(KneadError):
    pass


class PreconditionViolation(KneadError):
    pass


class InvalidWord(PreconditionViolation):
    pass


class NotPeriodic(PreconditionViolation):
    pass


class NotExtremal(PreconditionViolation):
    pass


class NotAdmissible(PreconditionViolation):
    pass


class MinimalWord(PreconditionViolation):
    pass


class InvalidExponent(PreconditionViolation):
    pass


class ResourceBound(PreconditionViolation):
    pass


class CertificationFailure(KneadError):
    """A constructor produced a word that fails its own certificate."""


class SearchExhausted(KneadError):
    def __init__(self, cap, detail=""):
        self.cap = cap
        msg = f"search exhausted at cap {cap}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ConvergenceFailure(KneadError):
    def __init__(self, msg, iterations=None, residual=None):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"{msg} (iterations={iterations}, residual={residual})")


class DegenerateKernel(KneadError):
    pass
