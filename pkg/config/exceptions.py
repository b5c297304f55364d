"""
Base error families shared by every app.

InputError covers malformed input and violated preconditions,
ResourceBoundError covers configured bounds that were hit.
"""


class FourCalcError(Exception):
    """Root of all errors raised by the fourcalc apps."""

    family = 'internal'


class InputError(FourCalcError):
    family = 'input'


class ResourceBoundError(FourCalcError):
    family = 'resource'
