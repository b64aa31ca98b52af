import json


class AutostructException(Exception):

    def __init__(self, message):
        Exception.__init__(self, message)
        self.message = message

    def __str__(self):
        return str(self.message)

    def to_json(self) -> str:
        return json.dumps({"error": f"{type(self).__name__}: {self.message}"})


class AlphabetMismatch(AutostructException):
    pass


class UnknownSymbol(AutostructException):
    pass


class NotDeterministic(AutostructException):
    pass


class InvalidConvolution(AutostructException):
    pass


class ArityMismatch(AutostructException):
    pass


class UnknownRelation(AutostructException):
    pass


class InfiniteOutdegree(AutostructException):
    pass


class InfiniteSection(AutostructException):
    pass


class CountingBudgetExceeded(AutostructException):
    pass


class EmptyDomain(AutostructException):
    pass


class InvalidBase(AutostructException):
    pass


class FormulaSyntaxError(AutostructException):
    pass


class MalformedTerm(AutostructException):
    pass


class NotPolynomialGrowth(AutostructException):
    pass


class GrowthCheckFailed(AutostructException):
    pass


class CellMismatch(AutostructException):
    pass


class RangeNotInGuard(AutostructException):
    pass


class InfiniteValue(AutostructException):
    pass


class ZeroColumn(AutostructException):
    pass


class DimensionMismatch(AutostructException):
    pass


class ValidationFailure(AutostructException):
    pass


class NonFunctionalGraph(AutostructException):
    pass


class InfiniteFiber(AutostructException):
    pass


class NotEquivalence(AutostructException):
    pass


class PositivityFailure(AutostructException):
    pass


class QeCertificationFailed(AutostructException):
    pass


class SerializationError(AutostructException):
    pass


exception2exit_code = {
    AutostructException: 1,
    ValueError: 1,
}


def exit_code_for(error: Exception) -> int:
    for cls in type(error).__mro__:
        if cls in exception2exit_code:
            return exception2exit_code[cls]
    return 1
