from config.exceptions import InputError, ResourceBoundError


class PresentationSyntaxError(InputError):
    """Presentation text could not be parsed; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"position {position}: {message}")


class GeneratorIndexError(InputError):
    pass


class QuotientCeilingError(InputError):
    pass


class EnumerationBoundError(ResourceBoundError):
    pass
