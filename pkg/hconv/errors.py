import typing


class HconvError(Exception):
    pass


class InvalidParameter(HconvError, ValueError):
    pass


class NearZeroConstantTerm(HconvError, ZeroDivisionError):
    pass


class DenominatorVanishes(HconvError, ZeroDivisionError):
    def __init__(self, msg: str, witness: typing.Any = None):
        super().__init__(msg)
        self.witness = witness


class InconclusiveBoundary(HconvError):
    pass


class NoConvergence(HconvError):
    pass


class DegenerateCurve(HconvError):
    pass


class MapSpecError(HconvError, ValueError):
    pass
