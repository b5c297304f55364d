from config.exceptions import InputError


class ProfileInvariantError(InputError):
    """A profile's chi, sigma, b1, pi1 and spin data are inconsistent."""


class UnsupportedOperationError(InputError):
    pass


class UnclassifiableProfileError(InputError):
    pass


class UnknownProfileError(InputError):
    pass
