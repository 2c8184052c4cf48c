"""Exception types shared across the package."""


class TtlabError(Exception):
    """Base class for all errors raised by this package."""


class MalformedPathError(TtlabError):
    """An edge path is not composable in its graph, or contains bad letters."""


class MalformedMapError(TtlabError):
    """A map description is structurally invalid (empty or unreduced images,
    unknown symbols, inconsistent vertex data)."""


class RankMismatchError(MalformedMapError):
    """The inferred graph does not have the declared rank."""


class GrowthCapError(TtlabError):
    """An iterated image exceeded the configured length cap."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class PrimitivityError(TtlabError):
    """An operation required a primitive transition matrix (or growth) and
    the input does not have one."""


class PnpNotVerifiedError(TtlabError):
    """An operation needs a Nielsen-path-freeness certificate that is absent,
    stale, or not conclusive."""


class InconclusiveSearchError(TtlabError):
    """A bounded search hit a configured cap before reaching a verdict."""
