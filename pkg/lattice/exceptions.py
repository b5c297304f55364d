from config.exceptions import InputError


class LatticeShapeError(InputError):
    """Dimension mismatch or a malformed Gram matrix."""


class NonUnimodularLatticeError(InputError):
    pass


class DegenerateLatticeError(InputError):
    pass


class SurfaceSmoothingError(InputError):
    pass


class LatticeLiteralError(InputError):
    pass
