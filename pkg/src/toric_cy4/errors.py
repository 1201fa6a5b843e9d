"""Exception taxonomy.

Every failure mode gets its own class so callers (and tests) can tell a bad
input apart from an internal inconsistency.  All carry enough payload to
locate the offending piece of data.
"""


class ToricCY4Error(Exception):
    """Base class for all errors raised by this package."""


# --- fan validation -------------------------------------------------------

class MalformedInput(ToricCY4Error):
    """Structurally broken fan data (bad ray, bad index, unused ray...)."""


class NonSmoothCone(ToricCY4Error):
    def __init__(self, cone_index: int, det: int):
        self.cone_index = cone_index
        self.det = det
        super().__init__(f"maximal cone #{cone_index} has |det| = {abs(det)} != 1")


class IncompleteFan(ToricCY4Error):
    def __init__(self, facet, count: int):
        self.facet = tuple(sorted(facet))
        self.count = count
        super().__init__(
            f"facet {self.facet} lies in {count} maximal cone(s), expected 2"
        )


# --- divisor map / Chow group --------------------------------------------

class RankDeficient(ToricCY4Error):
    """Divisor map has rank < dim: the fan has a torus factor."""


class TorsionFound(ToricCY4Error):
    def __init__(self, factors):
        self.factors = tuple(factors)
        super().__init__(f"divisor class group has torsion {self.factors}")


# --- quotient ring --------------------------------------------------------

class EliminationSingular(ToricCY4Error):
    """Linear forms cannot be solved on the chosen cone (non-unimodular)."""


class DegenerateTopDegree(ToricCY4Error):
    """Top graded piece of the quotient ring does not have rank 1."""


# --- pipeline -------------------------------------------------------------

class NonIntegralResult(ToricCY4Error):
    """A characteristic-number integral came out non-integral."""


class DivisibilityViolation(ToricCY4Error):
    """A Riemann-Roch integral failed its required divisibility."""


class NegativeHodgeNumber(ToricCY4Error):
    pass


class AhatNotIntegral(ToricCY4Error):
    pass


class PipelineInconsistency(ToricCY4Error):
    """Two independent routes to the same invariant disagreed."""


# --- CLI / file handling --------------------------------------------------

class ParseError(ToricCY4Error):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class ValidationError(ToricCY4Error):
    pass


class UnknownId(ToricCY4Error):
    pass
