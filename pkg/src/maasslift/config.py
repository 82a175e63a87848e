"""Run configuration shared by the CLI and the scripts."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import DomainError

ENV_TERMS = "MAASSLIFT_TERMS"
ENV_FLOAT_BITS = "MAASSLIFT_FLOAT_BITS"


@dataclass(frozen=True)
class RunConfig:
    terms: int = 60
    float_bits: int = 256
    divisor_exponent: int = 2
    output_format: str = "text"

    def __post_init__(self):
        if self.terms < 8:
            raise DomainError(f"terms must be at least 8, got {self.terms}")
        if self.float_bits < 64:
            raise DomainError(f"float bits must be at least 64, got {self.float_bits}")
        if self.output_format not in ("text", "json"):
            raise DomainError(f"output format must be text or json, got {self.output_format!r}")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "RunConfig":
        """Defaults, then environment variables, then explicit ``overrides`` (``None`` values ignored)."""
        environ = os.environ if environ is None else environ
        values = {}
        for key, var in (("terms", ENV_TERMS), ("float_bits", ENV_FLOAT_BITS)):
            raw = environ.get(var)
            if raw:
                try:
                    values[key] = int(raw)
                except ValueError:
                    raise DomainError(f"{var}={raw!r} is not an integer") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_(self, **changes) -> "RunConfig":
        return replace(self, **changes)
