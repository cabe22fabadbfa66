"""Exception types raised across configlab.

Two families matter to the CLI: ``ConfigError`` (bad input documents, unknown
names, shape mismatches) maps to exit code 2, and ``NumericalPrecondition``
(a requested computation cannot be carried out at the given resolution) maps
to exit code 3.
"""


class ConfigLabError(Exception):
    """Base class for every error raised deliberately by configlab."""


class ConfigError(ConfigLabError, ValueError):
    pass


class NumericalPrecondition(ConfigLabError, ValueError):
    pass


class InvalidArgument(ConfigError):
    pass


class DimensionMismatch(ConfigError):
    pass


class UnknownMap(ConfigError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown map"


class ParseError(ConfigError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class Unsupported(ConfigError):
    pass


class MaxKExceeded(ConfigError):
    pass


class SingularConfiguration(NumericalPrecondition):
    pass


class InfeasiblePacking(NumericalPrecondition):
    pass


class InsufficientResolution(NumericalPrecondition):
    pass


class BudgetTooSmall(NumericalPrecondition):
    pass


class ResolutionConflict(NumericalPrecondition):
    pass


class DegenerateFit(NumericalPrecondition):
    pass


class AllPairsDegenerate(NumericalPrecondition):
    pass


class AliasLimit(NumericalPrecondition):
    pass
