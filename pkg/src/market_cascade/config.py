"""Solver defaults shared by the cascade, sweep and CLI layers."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path


@dataclass(frozen=True)
class RunConfig:
    """Named numeric settings for every iterative routine.

    All entries must be strictly positive. ``from_file`` reads ``key = value``
    lines with ``#`` comments and rejects keys that are not fields here.
    """

    burn_in: int = 10_000
    window: int = 4096
    period_tol: float = 1e-6
    max_period: int = 1024
    bisect_tol: float = 1e-6
    divergence_threshold: float = 1e12
    seed_z: float = 0.31830988
    seed_x: float = 0.1
    seed_y: float = 0.1
    perturbation: float = 1e-3
    lyapunov_steps: int = 100_000
    slow_burn_in_factor: int = 10
    slow_band: float = 1e-3
    k_max: int = 4
    samples: int = 200

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"RunConfig.{f.name} must be positive, got {value!r}")
        if self.window <= self.max_period:
            raise ValueError("RunConfig.window must exceed max_period")

    def replace(self, **changes) -> "RunConfig":
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ValueError(f"unknown RunConfig keys: {sorted(unknown)}")
        return dataclasses.replace(self, **changes)

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "RunConfig":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key or not value:
                raise ValueError(f"{source}:{lineno}: expected 'key = value'")
            if key not in types:
                raise ValueError(f"{source}:{lineno}: unknown key {key!r}")
            try:
                values[key] = int(value) if types[key] in ("int", int) else float(value)
            except ValueError:
                raise ValueError(f"{source}:{lineno}: bad value for {key}: {value!r}") from None
        return cls(**values)

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        path = Path(path)
        return cls.parse(path.read_text(), source=str(path))
