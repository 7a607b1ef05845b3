"""Exception types shared across the package."""


class WalkError(Exception):
    """Base class for all package-specific errors."""


class SpecError(WalkError):
    """A walk specification failed validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid walk spec: " + "; ".join(self.violations))


class DegenerateRoots(WalkError):
    """Characteristic discriminant at or below threshold (double root 1).

    Signals the symmetric zero-absorption regime (p = q, s = 0), where the
    geometric basis collapses to {1, n}.
    """

    def __init__(self, discriminant):
        self.discriminant = discriminant
        super().__init__(
            f"degenerate characteristic roots (discriminant={discriminant:.3e})"
        )


class UnsupportedCase(WalkError):
    """Parameters fall outside the cases the closed forms cover."""


class NotAbsorbing(WalkError):
    """Absorption is not certain, so the requested solve is undefined."""


class NonTerminating(WalkError):
    """Simulation cannot terminate (no absorption and no escape policy)."""


class ConsistencyError(WalkError):
    """An internal cross-check failed (e.g. residual imaginary part)."""
