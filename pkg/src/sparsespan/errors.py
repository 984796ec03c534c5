"""Exception hierarchy.

Two families matter to callers: :class:`DomainError` for invalid inputs
(bad vertex ids, non-edges, malformed files) and :class:`RefusalError` for
requests that are well formed but deliberately refused because an exact
answer is out of reach (exhaustive-search caps, unrepresentable budgets).
The command line maps them to exit codes 1 and 2.
"""

from __future__ import annotations


class SparseSpanError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SparseSpanError, ValueError):
    """An argument lies outside the domain of the operation."""


class GraphFormatError(DomainError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class RefusalError(SparseSpanError):
    """The request is valid but its exact answer is refused by design."""


class ExhaustiveOnlyError(RefusalError):
    """An exhaustive search would exceed its configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(
            f"{what}: exhaustive-only computation refused for {size} vertices (cap {cap})"
        )


class BudgetOverflowError(RefusalError):
    """A query budget does not fit in a signed 64-bit integer."""


class TheoreticalKOverflow(RefusalError):
    """The ball radius from the epsilon/C formula is not representable.

    ``exponent`` is the inner exponent ``e`` of ``2^(2^e)`` and ``tower``
    a printable description of the value.
    """

    def __init__(self, exponent):
        self.exponent = exponent
        self.tower = f"2^(2^{_fmt(exponent)})"
        super().__init__(f"theoretical-k overflow: k = {self.tower}")


class EmbeddingFailed(AssertionError):
    """The greedy tree embedding found no free neighbour.

    Never raised when the precondition ``|E(T)| < girth`` holds; seeing it
    means a bug, so it carries enough state to reproduce the failure.
    """

    def __init__(self, message: str, *, tree_edges=None, partial_sigma=None, vertex=None):
        self.tree_edges = tree_edges
        self.partial_sigma = partial_sigma
        self.vertex = vertex
        super().__init__(
            f"{message} (vertex={vertex}, tree_edges={tree_edges}, partial_sigma={partial_sigma})"
        )


def _fmt(x) -> str:
    if isinstance(x, int) or (hasattr(x, "denominator") and x.denominator == 1):
        return str(int(x))
    return f"{float(x):g}"
