"""Configuration settings."""

import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv


@dataclass(frozen=True)
class Settings:
    """Search caps, certification knobs and parallelism for ordered-turan."""

    jobs: int = 1

    # Brute-force and exhaustive-search caps
    chromatic_max_vertices: int = 12
    exhaustive_max_half: int = 12
    oracle_max_edges: int = 22
    transversal_cap: int = 10**6

    # Quasirandom block certification
    certify_retries: int = 64
    sampled_pairs: int = 1000
    power_tol: float = 1e-10
    power_max_iter: int = 10000

    # Exact P_k-free solver
    enumeration_cap: int = 10**8
    node_budget: int = 5_000_000

    # Random simplex draws use integers in [0, simplex_draw_max]
    simplex_draw_max: int = 1000

    def __post_init__(self):
        if self.jobs < 1:
            object.__setattr__(self, "jobs", 1)
        if self.certify_retries < 1:
            object.__setattr__(self, "certify_retries", 1)

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from ORDERED_TURAN_* environment variables."""
        load_dotenv()
        defaults = cls()
        return cls(
            jobs=int(os.getenv("ORDERED_TURAN_JOBS", defaults.jobs)),
            chromatic_max_vertices=int(
                os.getenv("ORDERED_TURAN_CHROMATIC_MAX_VERTICES", defaults.chromatic_max_vertices)
            ),
            exhaustive_max_half=int(
                os.getenv("ORDERED_TURAN_EXHAUSTIVE_MAX_HALF", defaults.exhaustive_max_half)
            ),
            oracle_max_edges=int(
                os.getenv("ORDERED_TURAN_ORACLE_MAX_EDGES", defaults.oracle_max_edges)
            ),
            transversal_cap=int(os.getenv("ORDERED_TURAN_TRANSVERSAL_CAP", defaults.transversal_cap)),
            certify_retries=int(os.getenv("ORDERED_TURAN_CERTIFY_RETRIES", defaults.certify_retries)),
            sampled_pairs=int(os.getenv("ORDERED_TURAN_SAMPLED_PAIRS", defaults.sampled_pairs)),
            power_tol=float(os.getenv("ORDERED_TURAN_POWER_TOL", defaults.power_tol)),
            power_max_iter=int(os.getenv("ORDERED_TURAN_POWER_MAX_ITER", defaults.power_max_iter)),
            enumeration_cap=int(os.getenv("ORDERED_TURAN_ENUMERATION_CAP", defaults.enumeration_cap)),
            node_budget=int(os.getenv("ORDERED_TURAN_NODE_BUDGET", defaults.node_budget)),
            simplex_draw_max=int(
                os.getenv("ORDERED_TURAN_SIMPLEX_DRAW_MAX", defaults.simplex_draw_max)
            ),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings, read from the environment once."""
    return Settings.from_env()
