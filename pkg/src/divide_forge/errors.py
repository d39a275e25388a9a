"""Exception types shared across the package.

Validation failures that a scene author can cause are ValueError subclasses
carrying enough context to point at the offending input; internal assertion
failures (construction bugs) stay plain AssertionError.
"""

from __future__ import annotations


class SceneSyntaxError(ValueError):
    """Scene text failed to parse; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SceneValidationError(ValueError):
    """Structurally valid scene text with illegal content (duplicate label,
    hole overlap, endpoint off the boundary, ...)."""


class GenericityError(ValueError):
    """Base for rejected non-generic configurations."""


class TriplePointError(GenericityError):
    def __init__(self, point, curves):
        super().__init__(f"three or more branches meet at {_fmt_pt(point)} (curves {sorted(curves)})")
        self.point = point
        self.curves = sorted(curves)


class TangencyError(GenericityError):
    def __init__(self, point, detail=""):
        msg = f"tangential contact at {_fmt_pt(point)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.point = point


class ForbiddenCoincidence(GenericityError):
    """Front meets an oriented component orthogonally with the co-orientation
    equal to the orientation: the one orthogonal configuration that is rejected."""

    def __init__(self, point):
        super().__init__(
            f"front crosses oriented component at {_fmt_pt(point)} orthogonally with "
            "co-orientation equal to the orientation"
        )
        self.point = point


class CuspOnIntersection(GenericityError):
    def __init__(self, point):
        super().__init__(f"cusp coincides with an intersection at {_fmt_pt(point)}")
        self.point = point


class BoundaryContactError(GenericityError):
    """A component touches a boundary circle somewhere it must not."""

    def __init__(self, point, detail=""):
        msg = f"component touches a boundary circle at {_fmt_pt(point)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.point = point


class NotBipartite(ValueError):
    """Regions admit no checkerboard coloring; carries an odd closed chain of
    region ids as witness."""

    def __init__(self, cycle):
        super().__init__(f"region adjacency has an odd cycle: {list(cycle)}")
        self.cycle = list(cycle)


class BudgetExceeded(RuntimeError):
    """Admissibility completion failed to converge within its step budget."""


class TemplateCollision(RuntimeError):
    """Local construction templates could not be placed disjointly at the
    smallest allowed clearance."""


class MissingMaximum(RuntimeError):
    """A surgery route must cross a region that carries no peak (touches the
    boundary), and no pinch could fix it."""


class NotAllowable(ValueError):
    """A surgery cycle is null-homologous on the page; carries the cycle class."""

    def __init__(self, label, cycle_class):
        super().__init__(f"surgery cycle {label!r} is null-homologous on the page")
        self.label = label
        self.cycle_class = list(cycle_class)


class NothingToMerge(RuntimeError):
    """Stabilization was asked to merge binding components but none lie
    outside the kept set."""


def _fmt_pt(p) -> str:
    try:
        x, y = p
        return f"({x}, {y})"
    except Exception:
        return repr(p)
