"""Scheme parameter sets: published proposals plus small CI instances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Union

from .errors import BadParameters
from .fields import is_prime


@dataclass(frozen=True)
class RamessesParams:
    m: int
    k: int
    w: int
    ell: int
    t: int
    q: int = 2

    @property
    def n(self) -> int:
        return self.m

    def validate(self) -> None:
        if not is_prime(self.q):
            raise BadParameters("q must be prime")
        if not all(1 <= v <= self.m for v in (self.w, self.k, self.ell, self.t)):
            raise BadParameters("need 1 <= w, k, ell, t <= m")
        if 2 * self.t > self.n - self.k - self.ell - self.w:
            raise BadParameters("decoding condition t <= (n-k-ell-w)/2 violated")


@dataclass(frozen=True)
class LigaParams:
    q: int
    n: int
    m: int
    k: int
    w: int
    u: int
    zeta: int

    @property
    def t_pub(self) -> int:
        return (self.n - self.k - self.w) // 2

    def validate(self) -> None:
        if not is_prime(self.q):
            raise BadParameters("q must be prime")
        if not (self.u < self.k < self.n <= self.m):
            raise BadParameters("need u < k < n <= m")
        if not (self.n - self.k > self.w > (self.n - self.k) // 2):
            raise BadParameters("need n-k > w > floor((n-k)/2)")
        if not (1 <= self.zeta <= self.u):
            raise BadParameters("need 1 <= zeta <= u")
        if self.t_pub < 1:
            raise BadParameters("public error rank t_pub must be >= 1")


SchemeParams = Union[RamessesParams, LigaParams]


# Published proposals (the four RAMESSES rows: three KEM sets and one PKE
# set; the three LIGA tuples) plus fast CI-scale instances.
REGISTRY: Dict[str, SchemeParams] = {
    "ramesses-64": RamessesParams(m=64, k=32, w=19, ell=3, t=5),
    "ramesses-80": RamessesParams(m=80, k=40, w=23, ell=3, t=7),
    "ramesses-96": RamessesParams(m=96, k=48, w=27, ell=3, t=9),
    "ramesses-164-pke": RamessesParams(m=164, k=116, w=27, ell=3, t=9),
    "liga-128": LigaParams(q=2, n=92, m=92, k=53, w=27, u=5, zeta=2),
    "liga-192": LigaParams(q=2, n=120, m=120, k=69, w=35, u=5, zeta=2),
    "liga-256": LigaParams(q=2, n=148, m=148, k=85, w=43, u=5, zeta=2),
    "ramesses-ci-32": RamessesParams(m=32, k=8, w=9, ell=2, t=4),
    "liga-ci-40": LigaParams(q=2, n=40, m=40, k=15, w=15, u=3, zeta=2),
}

PAPER_SETS = (
    "ramesses-64", "ramesses-80", "ramesses-96", "ramesses-164-pke",
    "liga-128", "liga-192", "liga-256",
)


def scheme_of(params: SchemeParams) -> str:
    return "ramesses" if isinstance(params, RamessesParams) else "liga"


def lookup(name: str) -> SchemeParams:
    try:
        return REGISTRY[name]
    except KeyError:
        raise BadParameters(f"unknown parameter set {name!r}") from None
