"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConfigError(ValueError):
    """An experiment or run configuration is invalid.

    ``field`` names the offending configuration key when one can be identified.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "field": self.field, "message": str(self)}
