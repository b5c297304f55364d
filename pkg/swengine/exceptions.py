from config.exceptions import InputError, ResourceBoundError


class NonCoprimeCoefficientError(InputError):
    """Surgery coefficient (p, q) with gcd(p, q) != 1."""


class InsufficientDataError(InputError):
    """A surgery step needs F(0,1) but neither a value nor a vanishing axiom was supplied."""


class NonCharacteristicClassError(InputError):
    pass


class StateSymmetryError(InputError):
    pass


class ChamberStructureError(InputError):
    pass


class SearchSpaceOverflowError(ResourceBoundError):
    pass


class StateTooLargeError(ResourceBoundError):
    pass
