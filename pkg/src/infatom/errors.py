"""Exception hierarchy for the infatom package.

Errors fall into two families that the CLI maps onto exit codes:

* input-contract violations (bad files, bad selections, bad flags) are
  ``ValueError`` subclasses and exit with status 2;
* mathematical outcomes (an infeasible redundancy value, a distribution
  that admits no distributive decomposition, a failed validation) are
  plain ``InfatomError`` subclasses and exit with status 1.
"""

from __future__ import annotations


class InfatomError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------------------
# Input-contract violations (CLI exit code 2)
# ---------------------------------------------------------------------------


class TableError(InfatomError, ValueError):
    """A distribution table violates the input contract."""


class MalformedRow(TableError):
    """A table row cannot be parsed or has the wrong number of fields."""


class DuplicateOutcome(TableError):
    """The same outcome tuple appears more than once."""


class NegativeProbability(TableError):
    """A probability entry is negative."""


class TotalMassInvalid(TableError):
    """Total probability mass is not 1 within tolerance."""


class VariableSetError(InfatomError, ValueError):
    """A variable selection is empty, overlapping or out of range."""


class GateSpecError(InfatomError, ValueError):
    """A gate specification string cannot be interpreted."""


class LatticeRangeError(InfatomError, ValueError):
    """Requested variable count is outside the supported range."""


class AntichainError(InfatomError, ValueError):
    """Brackets are empty, overlapping, or the text form cannot be parsed."""


class WrongArity(InfatomError, ValueError):
    """An operation received a table with the wrong number of variables."""


class LabelError(InfatomError, ValueError):
    """An atom label cannot be parsed or is not a valid label."""


class DecompositionFormatError(InfatomError, ValueError):
    """A serialized decomposition does not match the expected schema."""


# ---------------------------------------------------------------------------
# Mathematical outcomes (CLI exit code 1)
# ---------------------------------------------------------------------------


class InfeasibleRedundancy(InfatomError):
    """A requested redundancy value lies outside the feasible interval."""


class NegativeAtomSize(InfatomError):
    """A solved atom came out negative beyond tolerance."""


class NotSetTheoretic(InfatomError):
    """The distribution admits no distributive (all non-negative) solution.

    ``negatives`` lists ``(label_text, size)`` for every offending atom.
    """

    def __init__(self, negatives: list[tuple[str, float]]):
        self.negatives = list(negatives)
        listing = ", ".join(f"{t} = {v:.9f}" for t, v in self.negatives)
        super().__init__(f"negative atoms: {listing}")


class ValidationFailed(InfatomError):
    """A decomposition failed validation against its distribution."""

    def __init__(self, report):
        self.report = report
        failed = [c.name for c in report.checks if not c.passed]
        super().__init__("failed checks: " + ", ".join(failed))
