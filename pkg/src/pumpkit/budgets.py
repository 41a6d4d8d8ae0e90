"""Search and enumeration budgets, overridable via PUMPKIT_BUDGET_* env vars."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

_ENV_PREFIX = "PUMPKIT_BUDGET_"


@dataclass(frozen=True)
class EnumBudget:
    """Caps for the brute-force oracles and the engine's searches.

    Defaults are sized so the whole differential suite stays at
    minutes-scale.  Each field can be overridden by the environment
    variable ``PUMPKIT_BUDGET_<FIELD_NAME_UPPERCASED>``.
    """

    max_path_len: int = 14
    max_assembly_size: int = 30
    max_graph_vertices: int = 40
    max_pump_depth: int = 10
    max_nodes: int = 10 ** 6
    max_steps: int = 10 ** 4

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ValueError(f"budget {f.name} must be >= 1")

    @classmethod
    def from_env(cls, **overrides) -> "EnumBudget":
        values = dict(overrides)
        for f in fields(cls):
            env = os.environ.get(_ENV_PREFIX + f.name.upper())
            if env is not None and f.name not in values:
                values[f.name] = int(env)
        return cls(**values)
