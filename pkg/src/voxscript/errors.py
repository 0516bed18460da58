"""Exception types shared across the package.

Grouped here so the CLI can map whole families to exit codes: input or
format problems exit 1, internal budget/infeasibility problems exit 2.
"""
from __future__ import annotations


class VoxScriptError(Exception):
    """Base class for all errors raised by this package."""


class InputError(VoxScriptError):
    """Bad input: malformed text, tokens, files, or argument mismatches."""


class ResourceError(VoxScriptError):
    """Work refused or abandoned: budgets, infeasible sampling."""


class InvalidProgramError(InputError):
    """A program failed validation where a valid one is required."""

    def __init__(self, report):
        self.report = report
        first = report.violations[0]
        extra = f" (+{len(report.violations) - 1} more)" if len(report.violations) > 1 else ""
        super().__init__(f"invalid program: {first.path}: {first.message}{extra}")


class DslSyntaxError(InputError):
    """Source text does not match the grammar."""

    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        hint = f"; expected one of: {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"line {line}, col {col}: {message}{hint}")


class DslSemanticError(InputError):
    """Source parsed but a statement violates an argument rule."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class TokenError(InputError):
    """Malformed token sequence (unknown id, unbalanced loops, bad row)."""

    def __init__(self, step, message):
        self.step = step
        super().__init__(f"step {step}: {message}")


class BinvoxError(InputError):
    """Malformed binvox payload; carries the byte offset where detected."""

    def __init__(self, message, offset=None):
        self.offset = offset
        at = f" (byte {offset})" if offset is not None else ""
        super().__init__(f"{message}{at}")


class ShapeMismatchError(InputError):
    """Two grids that must share dims do not."""


class EmptyShapeError(InputError):
    """An operation that needs occupied voxels got an empty grid."""


class CardinalityError(InputError):
    """Point sets that must have equal size do not."""


class DistributionError(InputError):
    """A predicted class distribution does not sum to one."""


class AlignmentError(InputError):
    """Predicted and ground-truth step sequences have different lengths."""


class BudgetError(ResourceError):
    """An execution or search budget was exceeded."""


class TemplateInfeasibleError(ResourceError):
    """Rejection sampling for a template failed to find a feasible draw."""

    def __init__(self, template_id, attempts):
        self.template_id = template_id
        self.attempts = attempts
        super().__init__(
            f"template {template_id!r}: no feasible parameters after {attempts} attempts"
        )
