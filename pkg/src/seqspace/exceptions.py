"""Exception hierarchy shared across the package.

The three leaf classes map onto the CLI exit codes: invalid input exits
with 2, a failed certification with 3, and a breached resource cap with 4.
"""

from __future__ import annotations


class SeqspaceError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SeqspaceError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class CertificationError(SeqspaceError):
    """A certificate check failed; the message names the first violated
    inequality and its residual (CLI exit code 3)."""


class CapExceededError(SeqspaceError):
    """Work or index bound exceeded a configured cap (CLI exit code 4)."""
