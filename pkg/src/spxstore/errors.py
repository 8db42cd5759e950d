"""Exception types shared across the package."""

from __future__ import annotations

from typing import Iterable


class SpxStoreError(Exception):
    """Base class for every error raised by this package."""


class ChunkLengthError(SpxStoreError, ValueError):
    """Chunks of different lengths were combined, or a chunk has the wrong length."""


class UncorrectableError(SpxStoreError):
    """The erasure pattern does not allow recovery of the stored data.

    This is a well-defined outcome, not a malfunction: callers that need to
    branch on it (the simulator, the CLI) catch it explicitly.
    """

    def __init__(self, erased: Iterable[int] = ()):
        self.erased = sorted(erased)
        detail = f": erased nodes {self.erased}" if self.erased else ""
        super().__init__(f"erasure pattern is not correctable{detail}")


class LocalityExceededError(SpxStoreError, ValueError):
    """More erasures than the single-round parallel repair guarantee covers."""


class RepairPreconditionError(SpxStoreError, ValueError):
    """A repair step was applied to a cluster that does not satisfy its preconditions."""


class ManifestError(SpxStoreError, ValueError):
    """A manifest is malformed, inconsistent, or disagrees with the shard files."""


class ConfigError(SpxStoreError, ValueError):
    """A scenario configuration is invalid; the message names the offending field."""
