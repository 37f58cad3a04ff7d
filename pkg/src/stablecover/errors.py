"""Exception types. Each carries a short machine-readable ``code`` used by the CLI."""


class StableCoverError(Exception):
    code = "error"


class LoopEdge(StableCoverError):
    code = "loop_edge"


class VertexOutOfRange(StableCoverError):
    code = "vertex_out_of_range"


class OverlappingSides(StableCoverError):
    code = "overlapping_sides"


class EmptySet(StableCoverError):
    code = "empty_set"


class SizeLimitExceeded(StableCoverError):
    code = "size_limit_exceeded"


class BadParams(StableCoverError):
    code = "bad_params"


class AsymmetricR(StableCoverError):
    code = "asymmetric_relation"


class RetryBudgetExhausted(StableCoverError):
    code = "retry_budget_exhausted"


class DegreeZeroVertex(StableCoverError):
    code = "degree_zero_vertex"


class BranchingBoundViolated(StableCoverError):
    code = "branching_bound_violated"


class InvariantViolation(StableCoverError):
    code = "invariant_violation"


class ParameterTooSmall(StableCoverError):
    code = "parameter_too_small"


class NotPopular(StableCoverError):
    code = "not_popular"


class NotAutomorphism(StableCoverError):
    code = "not_automorphism"


class ColorUndetermined(StableCoverError):
    code = "color_undetermined"


class FormatError(StableCoverError):
    code = "format_error"
