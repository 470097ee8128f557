"""Resource guards.

Every exhaustive routine checks one of these limits before starting work.
The values are module-global so that the CLI's ``--config`` file can preset
them; worker processes inherit them through ``fork``.
"""

from __future__ import annotations

import contextlib
import dataclasses
from typing import Iterator

from .errors import InputError, ResourceGuardError


@dataclasses.dataclass
class Limits:
    # largest n for which {0,1}^n may be enumerated
    enum_max_n: int = 28
    # largest candidate set any optimal-set enumeration may hold
    output_max: int = 10**6
    # largest estimated 2^n * Delta^2 for a triangle census
    triangle_ops_max: int = 10**12
    # largest n for an all-pairs distance matrix over {0,1}^n
    pair_matrix_max_n: int = 11
    # largest estimated neighborhood candidate count C(n,k)^2 2^k
    neighborhood_max: int = 10**7
    # largest C(2c, c) that verify_extremal will enumerate
    extremal_max_mult: int = 10**5
    # rejection-sampling attempts before giving up
    sample_retries: int = 200_000


LIMITS = Limits()


def configure(**values: int) -> None:
    fields = {f.name for f in dataclasses.fields(Limits)}
    for key, value in values.items():
        if key not in fields:
            raise InputError(f"unknown limit {key!r}")
        setattr(LIMITS, key, int(value))


@contextlib.contextmanager
def override(**values: int) -> Iterator[Limits]:
    saved = dataclasses.asdict(LIMITS)
    configure(**values)
    try:
        yield LIMITS
    finally:
        configure(**saved)


def require(ok: bool, message: str) -> None:
    if not ok:
        raise ResourceGuardError(message)


def require_enumerable(n: int) -> None:
    require(n <= LIMITS.enum_max_n,
            f"n={n} exceeds the enumeration guard (enum_max_n={LIMITS.enum_max_n})")
