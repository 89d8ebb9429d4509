"""Exception types shared across the package."""


class MoebiusError(Exception):
    """Base class for all library errors."""


class IndeterminateRatio(MoebiusError):
    """Ratio of two absolute zeros: no projective value exists."""


class IndeterminateSum(MoebiusError):
    """Extended-value combination hit an ill-posed form (0*inf, inf/inf, 0/0)."""


class DegenerateTriple(MoebiusError):
    """Cross-ratio entries collapse to a point outside the closed value triangle."""


class InadmissibleQuadruple(MoebiusError):
    """A point occurs three or more times in a quadruple."""


class BranchDisagreement(MoebiusError):
    """The two defining branches of a derived semi-metric differ beyond tolerance."""


class NoGoodPair(MoebiusError):
    """No candidate pair kept both tail distances above the floor."""


class NoCommonGoodPair(MoebiusError):
    """Two sequences share no good pair; equivalence is undefined."""


class NonConvergentTail(MoebiusError):
    """Tail oscillation of a needed distance exceeds tolerance."""
