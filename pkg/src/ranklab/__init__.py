"""Rank-metric coding and cryptanalysis workbench.

Gabidulin codes with left- and right-sided Welch-Berlekamp decoding, the
supercode decoder, the RAMESSES and LIGA encryption schemes, and the
polynomial-time message-recovery attacks against both.
"""

from .errors import (
    AttackFailure,
    BadParameters,
    DecodingFailure,
    NotABasis,
    NotACodeword,
    RankDrop,
)
from .fields import Tower, ext_field, find_irreducible
from .gabidulin import DecodeResult, GabidulinCode, sample_error
from .params import REGISTRY, LigaParams, RamessesParams
from .qpoly import QPoly, interpolate, left_annihilator, right_annihilator
from .schemes import Liga, Ramesses, SubspacePlaintext
from .supercode import SupercodeSpec

__version__ = "0.1.0"

__all__ = [
    "AttackFailure",
    "BadParameters",
    "DecodeResult",
    "DecodingFailure",
    "GabidulinCode",
    "Liga",
    "LigaParams",
    "NotABasis",
    "NotACodeword",
    "QPoly",
    "Ramesses",
    "RamessesParams",
    "RankDrop",
    "REGISTRY",
    "SubspacePlaintext",
    "SupercodeSpec",
    "Tower",
    "ext_field",
    "find_irreducible",
    "interpolate",
    "left_annihilator",
    "right_annihilator",
    "sample_error",
    "__version__",
]
