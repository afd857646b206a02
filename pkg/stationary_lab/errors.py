"""Exception hierarchy shared by services, controllers and routes.

Every error carries the process exit code the CLI should use for it.
"""


class LabError(Exception):
    """Numeric or domain failure inside a service."""

    exit_code = 3

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"ok": False, "error": str(self), "kind": type(self).__name__}
        if self.details:
            out["details"] = self.details
        return out


class DimensionError(LabError):
    pass


class ExprSyntaxError(LabError):
    exit_code = 2

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}", offset=offset)
        self.offset = offset


class UnknownFunctionError(ExprSyntaxError):
    pass


class ExponentError(ExprSyntaxError):
    pass


class EvaluationError(LabError):
    def __init__(self, message, offset=None):
        if offset is not None:
            super().__init__(f"{message} (node at offset {offset})", offset=offset)
        else:
            super().__init__(message)
        self.offset = offset


class QuadratureError(LabError):
    pass


class NotSpacelikeError(LabError):
    pass


class CodimensionError(LabError):
    pass


class DegenerateDataError(LabError):
    pass


class GaussMapCollisionError(LabError):
    pass


class BranchTrackingError(LabError):
    pass


class ConfigError(LabError):
    exit_code = 2


class UnknownScenarioError(ConfigError):
    pass
