import os
from dataclasses import dataclass

from src.core.errors import ConfigError


def _env_int(name: str, default: int) -> int:
    try:
        v = os.getenv(name)
        return int(v) if v is not None and v != "" else default
    except ValueError:
        return default


def _env_bool(name: str, default: bool) -> bool:
    v = os.getenv(name)
    if v is None or v == "":
        return default
    return v.strip().lower() in ("1", "true", "yes", "on")


DEFAULT_MAX_REPAIRS = 2
DEFAULT_BEAM = 16
DEFAULT_EDGE_CAP = 10_000
DEFAULT_REPAIR_COST = 1


def debug_enabled() -> bool:
    return _env_bool("ILT_DEBUG", False)


def batch_jobs() -> int:
    return max(1, _env_int("ILT_JOBS", 1))


@dataclass(frozen=True)
class RepairConfig:
    """Bounds on the repair search.

    max_repairs caps the total repair cost of an analysis, beam caps how many
    ranked analyses are kept, edge_cap is a hard limit on stored chart edges.
    """

    max_repairs: int = DEFAULT_MAX_REPAIRS
    beam: int = DEFAULT_BEAM
    edge_cap: int = DEFAULT_EDGE_CAP
    repair_cost: int = DEFAULT_REPAIR_COST

    def __post_init__(self) -> None:
        if self.max_repairs < 0:
            raise ConfigError(f"max_repairs must be >= 0, got {self.max_repairs}")
        if self.beam < 1:
            raise ConfigError(f"beam must be >= 1, got {self.beam}")
        if self.edge_cap < 1:
            raise ConfigError(f"edge_cap must be >= 1, got {self.edge_cap}")
        if self.repair_cost < 1:
            raise ConfigError(f"repair_cost must be >= 1, got {self.repair_cost}")

    @classmethod
    def from_env(cls) -> "RepairConfig":
        return cls(
            max_repairs=_env_int("ILT_MAX_REPAIRS", DEFAULT_MAX_REPAIRS),
            beam=_env_int("ILT_BEAM", DEFAULT_BEAM),
            edge_cap=_env_int("ILT_EDGE_CAP", DEFAULT_EDGE_CAP),
            repair_cost=_env_int("ILT_REPAIR_COST", DEFAULT_REPAIR_COST),
        )
