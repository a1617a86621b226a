"""Exception types shared across the package."""


class DitraceError(Exception):
    """Base class for every error this package raises deliberately."""


class ForeignElementError(DitraceError):
    """An element handle was used with a monoid or module that does not own it."""


class NotASubmonoidError(DitraceError):
    """A claimed sub-monoid is not closed under multiplication or misses zero."""


class NotASubmoduleError(DitraceError):
    """A claimed sub-module is not stable under the scalar action."""


class CompositionError(DitraceError):
    """Morphisms with mismatched source/target were composed."""


class ScalarMismatchError(DitraceError):
    """A module was passed to a scalar functor whose morphism does not match its scalars."""


class NondeterminismError(DitraceError):
    """A transition system has two successors for the same (state, letter) pair."""


class ScalarsNotFreeError(DitraceError):
    """An operation requiring a free scalar monoid received something else."""


class InfiniteInputError(DitraceError):
    """An exhaustive construction received an infinite monoid or carrier."""


class NormalizationBudgetError(DitraceError):
    """Word normalization exhausted its rewrite budget; equality is undecided."""


class ForeignSpaceError(DitraceError):
    """A path or trace was used with a directed space that does not contain it."""


class NonInjectiveMapError(DitraceError):
    """A map between directed spaces is not injective on vertices."""


class NotADMapError(DitraceError):
    """A map between directed spaces does not send directed steps to directed steps."""


class SwapViolationError(DitraceError):
    """A space map sends an allowed swap cell onto a forbidden cell of the target."""


class ParseError(DitraceError):
    """A model file is malformed; carries path and line number."""

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line
        self.message = message
