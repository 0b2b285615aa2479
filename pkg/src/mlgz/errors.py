"""Exception hierarchy shared by all mlgz modules."""


class MilnorError(Exception):
    """Base class for every error raised by mlgz."""


# exact linear algebra
class NonSquare(MilnorError, ValueError):
    pass


class NotUnimodular(MilnorError, ValueError):
    pass


# cyclotomic engine
class NotCyclotomicProduct(MilnorError, ValueError):
    pass


class NoWitness(MilnorError):
    pass


class CapExceeded(MilnorError):
    pass


# Milnor lattice models
class EmptyFactorization(MilnorError, ValueError):
    pass


class BadDiagonal(MilnorError, ValueError):
    pass


class NotSymmetric(MilnorError, ValueError):
    pass


class UnsupportedFamily(MilnorError, ValueError):
    pass


class InvariantViolation(MilnorError, AssertionError):
    """A constructed object failed one of its structural invariants."""


# automorphism engines
class IndefiniteForm(MilnorError, ValueError):
    pass


class NotPositiveDefinite(MilnorError, ValueError):
    pass


class SearchBudgetExceeded(MilnorError):
    def __init__(self, budget: int):
        super().__init__(f"search exceeded budget of {budget} node expansions")
        self.budget = budget


class RepeatedFactor(MilnorError):
    pass


class NoCyclicCertificate(MilnorError):
    pass


class InfiniteOrder(MilnorError):
    pass


class NotD2k(MilnorError, ValueError):
    pass


class NotFound(MilnorError):
    """Bounded search exhausted. This is not a disproof."""

    def __init__(self, bound: int):
        super().__init__(f"no decomposition found with candidate norm <= {bound}")
        self.bound = bound


class BadSplit(MilnorError, ValueError):
    pass


# catalog
class ParseError(MilnorError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InconsistentDegree(MilnorError, ValueError):
    def __init__(self, name: str, degree: int, mu: int, lineno: int | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{name}: factor degrees sum to {degree}, expected mu={mu}")
        self.name = name
        self.degree = degree
        self.mu = mu
        self.lineno = lineno


class VerificationFailure(MilnorError):
    def __init__(self, failures: list[str], report: str = ""):
        super().__init__("verification failed: " + "; ".join(failures))
        self.failures = failures
        self.report = report
