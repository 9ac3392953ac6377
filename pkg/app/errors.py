from typing import Any, Dict, Optional


class StirlingError(Exception):
    """Base class for every error raised by the engine library."""


class DomainError(StirlingError, ValueError):
    """Input lies outside the model (non-positive frequency, squeezed cold bath, ...)."""


class UsageError(StirlingError, ValueError):
    """Invalid sweep / command specification."""


class CutoffError(DomainError):
    """Fock-space truncation too small for the requested state."""


class ConvergenceError(StirlingError, RuntimeError):
    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"
