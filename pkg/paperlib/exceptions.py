from config.exceptions import InputError


class UnknownScenarioError(InputError):
    pass


class ScenarioParameterError(InputError):
    """A scenario parameter is malformed or outside its configured range."""


class UnknownBlockError(InputError):
    pass
