from pydantic import ValidationError

from ..errors import LabError


def failure(e):
    """Map an exception to the (payload, exit code) pair returned by every controller."""
    if isinstance(e, LabError):
        return e.to_dict(), e.exit_code
    if isinstance(e, ValidationError):
        return {"ok": False, "error": "invalid configuration", "kind": "ValidationError",
                "details": e.errors(include_url=False, include_context=False)}, 2
    # services raise ValueError for out-of-range arguments (grid size, radius, step)
    if isinstance(e, ValueError):
        return {"ok": False, "error": str(e), "kind": "ValueError"}, 2
    if isinstance(e, OSError):
        return {"ok": False, "error": str(e), "kind": type(e).__name__}, 3
    raise e
