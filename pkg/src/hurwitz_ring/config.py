"""Runtime caps and backend selection.

Every cap can be overridden through an environment variable of the form
``HURWITZ_RING_<NAME>`` (for example ``HURWITZ_RING_MAX_ORBIT=20000000``).
Setting ``HURWITZ_RING_DISABLE_NUMBA=1`` forces the pure numpy kernels.
"""

from __future__ import annotations

import dataclasses
import os

ENV_PREFIX = "HURWITZ_RING_"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{ENV_PREFIX}{name} must be positive, got {value}")
    return value


def _env_flag(name: str) -> bool:
    return os.environ.get(ENV_PREFIX + name, "").strip().lower() in {"1", "true", "yes", "on"}


@dataclasses.dataclass(frozen=True)
class Caps:
    max_degree_points: int = 10  # permutation degree d
    max_order: int = 10**6  # group order
    max_orbit: int = 10**7  # tuples held by one orbit search
    max_scan: int = 2 * 10**8  # raw tuple codes scanned when seeding orbits
    max_sym_degree: int = 12  # d for the closed-form symmetric spectrum

    @classmethod
    def from_env(cls) -> "Caps":
        base = cls()
        return cls(
            max_degree_points=_env_int("MAX_POINTS", base.max_degree_points),
            max_order=_env_int("MAX_ORDER", base.max_order),
            max_orbit=_env_int("MAX_ORBIT", base.max_orbit),
            max_scan=_env_int("MAX_SCAN", base.max_scan),
            max_sym_degree=_env_int("MAX_SYM_DEGREE", base.max_sym_degree),
        )


def numba_disabled() -> bool:
    return _env_flag("DISABLE_NUMBA")


DEFAULT_CAPS = Caps.from_env()
