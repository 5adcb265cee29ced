"""Run configuration: search budgets, degree bounds, output format.

Sourced from defaults, then an optional key=value config file, then CLI
flags.  QWEYL_SEED in the environment seeds every randomized search so runs
are reproducible.
"""

import os
from dataclasses import dataclass

from .errors import ParseError


@dataclass
class RunConfig:
    search_budget: int = 20000
    function_field_degree_bound: int = 4
    atlas_ext_degree: int = 2
    norm_image_bound: int = 10000
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        for name in (
            "search_budget",
            "function_field_degree_bound",
            "atlas_ext_degree",
            "norm_image_bound",
        ):
            if getattr(self, name) <= 0:
                raise ParseError(f"{name} must be positive")
        if self.output not in ("json", "text", "dot"):
            raise ParseError(f"unknown output format {self.output!r}")


def load_config(path=None, **overrides):
    values = {}
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ParseError(f"config line {line!r} is not key = value")
                key, val = (part.strip() for part in line.split("=", 1))
                key = key.replace("-", "_")
                if key == "output":
                    values[key] = val.strip("\"'")
                else:
                    values[key] = int(val)
    env_seed = os.environ.get("QWEYL_SEED")
    if env_seed is not None:
        values["seed"] = int(env_seed)
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    return RunConfig(**values)
