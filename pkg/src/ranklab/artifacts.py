"""Self-describing text artifacts: keys, plaintexts, ciphertexts.

Format: a `%RANKLAB 1` magic line followed by `key: value` header lines and
`data-<name>: <hex>` payload lines.  Headers carry the artifact kind, the
scheme, the full parameter tuple and the field moduli, so a file can be
parsed without any out-of-band registry.  Payloads are little-endian
base-field digit streams: for q = 2 digits are bits packed LSB-first into
bytes (one element = ceil(m/8) bytes), otherwise one digit per byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .errors import BadParameters
from .fields import Tower, ext_field
from .params import LigaParams, RamessesParams, SchemeParams

MAGIC = "%RANKLAB 1"

KINDS = ("secret-key", "public-key", "plaintext", "ciphertext")


# ---------------------------------------------------------------------------
# digit packing


def _elem_size(q: int, m: int) -> int:
    return (m + 7) // 8 if q == 2 else m


def pack_digits(q: int, digits: Sequence[int]) -> bytes:
    if q == 2:
        out = bytearray((len(digits) + 7) // 8)
        for i, d in enumerate(digits):
            if d & 1:
                out[i >> 3] |= 1 << (i & 7)
        return bytes(out)
    if q > 255:
        raise BadParameters("byte-per-digit encoding requires q <= 255")
    return bytes(d % q for d in digits)


def unpack_digits(q: int, data: bytes, count: int) -> List[int]:
    if q == 2:
        return [(data[i >> 3] >> (i & 7)) & 1 for i in range(count)]
    return [data[i] % q for i in range(count)]


def mid_vec_to_bytes(F, vec: Sequence) -> bytes:
    out = bytearray()
    for v in vec:
        out += pack_digits(F.q, F.to_digits(v))
    return bytes(out)


def mid_vec_from_bytes(F, data: bytes, count: int) -> List:
    size = _elem_size(F.q, F.m)
    if len(data) != size * count:
        raise BadParameters("payload size mismatch for mid-field vector")
    return [F.from_digits(unpack_digits(F.q, data[i * size:(i + 1) * size], F.m))
            for i in range(count)]


def top_vec_to_bytes(top, vec: Sequence) -> bytes:
    out = bytearray()
    for v in vec:
        out += mid_vec_to_bytes(top.mid, list(v))
    return bytes(out)


def top_vec_from_bytes(top, data: bytes, count: int) -> List[tuple]:
    size = _elem_size(top.q, top.mid.m) * top.u
    if len(data) != size * count:
        raise BadParameters("payload size mismatch for top-field vector")
    return [tuple(mid_vec_from_bytes(top.mid, data[i * size:(i + 1) * size], top.u))
            for i in range(count)]


def base_matrix_to_bytes(q: int, rows: Sequence, ncols: int) -> bytes:
    out = bytearray()
    for row in rows:
        digits = [(row >> j) & 1 for j in range(ncols)] if isinstance(row, int) \
            else list(row)
        out += pack_digits(q, digits)
    return bytes(out)


def base_matrix_from_bytes(q: int, data: bytes, nrows: int, ncols: int):
    size = (ncols + 7) // 8 if q == 2 else ncols
    if len(data) != size * nrows:
        raise BadParameters("payload size mismatch for base-field matrix")
    rows = []
    for i in range(nrows):
        digits = unpack_digits(q, data[i * size:(i + 1) * size], ncols)
        if q == 2:
            rows.append(sum(d << j for j, d in enumerate(digits)))
        else:
            rows.append(digits)
    return rows


# ---------------------------------------------------------------------------
# artifact container


@dataclass
class Artifact:
    kind: str
    scheme: str
    params: SchemeParams
    fields: Dict[str, bytes]
    param_set: Optional[str] = None
    modulus_mid: Optional[tuple] = None
    modulus_top_bytes: Optional[bytes] = None

    def tower(self) -> Tower:
        p = self.params
        u = p.u if isinstance(p, LigaParams) else 1
        if u == 1:
            return Tower(p.q, p.m, 1, modulus_mid=self.modulus_mid)
        modulus_top = None
        if self.modulus_top_bytes is not None:
            mid = ext_field(p.q, p.m, self.modulus_mid)
            modulus_top = tuple(mid_vec_from_bytes(mid, self.modulus_top_bytes, u + 1))
        return Tower(p.q, p.m, u, modulus_mid=self.modulus_mid, modulus_top=modulus_top)


def _params_header(params: SchemeParams) -> List[str]:
    if isinstance(params, RamessesParams):
        return [f"q: {params.q}", f"m: {params.m}", f"k: {params.k}",
                f"w: {params.w}", f"ell: {params.ell}", f"t: {params.t}"]
    return [f"q: {params.q}", f"n: {params.n}", f"m: {params.m}", f"k: {params.k}",
            f"w: {params.w}", f"u: {params.u}", f"zeta: {params.zeta}"]


def write_artifact(path: str, kind: str, scheme: str, params: SchemeParams,
                   tower_or_field, fields: Dict[str, bytes],
                   param_set: Optional[str] = None) -> None:
    if kind not in KINDS:
        raise BadParameters(f"unknown artifact kind {kind!r}")
    lines = [MAGIC, f"kind: {kind}", f"scheme: {scheme}"]
    if param_set:
        lines.append(f"param-set: {param_set}")
    lines.extend(_params_header(params))
    mid = tower_or_field.mid if isinstance(tower_or_field, Tower) else tower_or_field
    lines.append("modulus-mid: " + pack_digits(params.q, mid.modulus_digits).hex())
    if isinstance(params, LigaParams):
        top = tower_or_field.top
        lines.append("modulus-top: " + mid_vec_to_bytes(mid, list(top.modulus)).hex())
    for name in sorted(fields):
        lines.append(f"data-{name}: {fields[name].hex()}")
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def read_artifact(path: str) -> Artifact:
    with open(path) as handle:
        lines = [ln.rstrip("\n") for ln in handle if ln.strip()]
    if not lines or lines[0] != MAGIC:
        raise BadParameters(f"{path}: not a ranklab artifact")
    header: Dict[str, str] = {}
    data: Dict[str, bytes] = {}
    for line in lines[1:]:
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key.startswith("data-"):
            data[key[5:]] = bytes.fromhex(value)
        else:
            header[key] = value
    kind = header.get("kind", "")
    scheme = header.get("scheme", "")
    if kind not in KINDS or scheme not in ("ramesses", "liga"):
        raise BadParameters(f"{path}: malformed header")
    q = int(header["q"])
    m = int(header["m"])
    if scheme == "ramesses":
        params: SchemeParams = RamessesParams(
            m=m, k=int(header["k"]), w=int(header["w"]),
            ell=int(header["ell"]), t=int(header["t"]), q=q)
    else:
        params = LigaParams(q=q, n=int(header["n"]), m=m, k=int(header["k"]),
                            w=int(header["w"]), u=int(header["u"]),
                            zeta=int(header["zeta"]))
    modulus_mid = None
    if "modulus-mid" in header:
        raw = bytes.fromhex(header["modulus-mid"])
        modulus_mid = tuple(unpack_digits(q, raw, m + 1))
    modulus_top_bytes = None
    if "modulus-top" in header:
        modulus_top_bytes = bytes.fromhex(header["modulus-top"])
    return Artifact(kind=kind, scheme=scheme, params=params, fields=data,
                    param_set=header.get("param-set"), modulus_mid=modulus_mid,
                    modulus_top_bytes=modulus_top_bytes)
