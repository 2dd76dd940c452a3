"""The RAMESSES and LIGA encryption schemes, implemented as attack targets.

RAMESSES is phrased entirely with q-polynomials: the secret key is a rank-w
q-polynomial, the public key the canonical representative of its coset
modulo qpoly_{<k}, a plaintext is a t-dimensional F_q-subspace of F_{q^m},
and a ciphertext a single q-polynomial class.

LIGA keeps the Faure-Loidreau shape: the public key is a Gabidulin codeword
over the top field corrupted by a structured rank-w vector, and a ciphertext
hides the message under a traced multiple of the public key plus a small
random error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import BadParameters, DecodingFailure, RankDrop
from .fields import (
    Tower,
    dual_basis,
    ext_field,
    rank_q,
    rank_q_top,
    rank_qm,
    sample_full_rank_vector,
    sample_gln,
    sample_qm_independent,
    sample_rank_t_vector,
    sample_subspace_full_rank_basis,
    vec_times_base_matrix,
)
from .gabidulin import GabidulinCode
from .params import LigaParams, RamessesParams
from .qpoly import QPoly, from_matrix, interpolate, left_annihilator


# ---------------------------------------------------------------------------
# plaintext subspaces (RAMESSES)


@dataclass(frozen=True)
class SubspacePlaintext:
    """A subspace of F_q^m in canonical form: RREF digit rows, one per dimension."""

    rows: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence[int]], m: int) -> "SubspacePlaintext":
        if q == 2:
            packed = [sum((int(r[j]) & 1) << j for j in range(m)) for r in rows]
            red, pivots = linalg.gf2_rref(packed, m)
            keep = [tuple((row >> j) & 1 for j in range(m)) for row in red[: len(pivots)]]
        else:
            from .fields import PrimeField
            red, pivots = linalg.rref(PrimeField(q), [list(r) for r in rows], m)
            keep = [tuple(row) for row in red[: len(pivots)]]
        return cls(rows=tuple(keep))

    @classmethod
    def random(cls, q: int, m: int, t: int, rng: random.Random) -> "SubspacePlaintext":
        while True:
            if q == 2:
                rows = [[rng.getrandbits(1) for _ in range(m)] for _ in range(t)]
            else:
                rows = [[rng.randrange(q) for _ in range(m)] for _ in range(t)]
            pt = cls.from_rows(q, rows, m)
            if pt.dim == t:
                return pt


# ---------------------------------------------------------------------------
# RAMESSES


@dataclass(frozen=True)
class RamessesKeyPair:
    secret: QPoly
    public: QPoly


@dataclass(frozen=True)
class RamessesTrace:
    """Encryption randomness, exposed for white-box tests."""

    code_part: QPoly        # C, uniform in qpoly_{<k}
    coset_draw: QPoly       # C0', uniform in qpoly_{<k}; C' = C0' + K_pub
    mask: QPoly             # T, q-degree exactly ell
    error_poly: QPoly       # E, row space of its matrix = the plaintext


class Ramesses:
    """Key generation, encryption and decryption over a fixed field."""

    def __init__(self, params: RamessesParams, mid_field=None):
        params.validate()
        self.params = params
        self.F = mid_field if mid_field is not None else ext_field(params.q, params.m)
        if self.F.m != params.m:
            raise BadParameters("field degree does not match the parameters")
        self.g = self.F.basis()
        self._decode_code: Optional[GabidulinCode] = None

    def decode_code(self) -> GabidulinCode:
        if self._decode_code is None:
            p = self.params
            self._decode_code = GabidulinCode(self.F, self.g, p.k + p.ell + p.w)
        return self._decode_code

    def keygen(self, rng: random.Random) -> RamessesKeyPair:
        p = self.params
        secret = from_matrix(self.F, _random_rank_matrix(p.q, p.m, p.m, p.w, rng))
        coeffs = secret.padded(p.m)
        public = QPoly(self.F, [self.F.zero] * p.k + coeffs[p.k:])
        return RamessesKeyPair(secret=secret, public=public)

    def random_plaintext(self, rng: random.Random) -> SubspacePlaintext:
        return SubspacePlaintext.random(self.params.q, self.params.m, self.params.t, rng)

    def encrypt(self, public: QPoly, plaintext: SubspacePlaintext,
                rng: random.Random) -> QPoly:
        return self.encrypt_traced(public, plaintext, rng)[0]

    def encrypt_traced(self, public: QPoly, plaintext: SubspacePlaintext,
                       rng: random.Random) -> Tuple[QPoly, RamessesTrace]:
        p = self.params
        F = self.F
        if plaintext.dim != p.t:
            raise BadParameters(f"plaintext must have dimension {p.t}")
        mask_coeffs = [F.rand(rng) for _ in range(p.ell)]
        lead = F.rand(rng)
        while lead == F.zero:
            lead = F.rand(rng)
        mask = QPoly(F, mask_coeffs + [lead])
        error_poly = self._sample_error_poly(plaintext, rng)
        code_part = QPoly(F, [F.rand(rng) for _ in range(p.k)])
        coset_draw = QPoly(F, [F.rand(rng) for _ in range(p.k)])
        coset_elem = coset_draw + public
        ciphertext = (code_part + coset_elem.compose_mod(mask) + error_poly).reduce_mod()
        return ciphertext, RamessesTrace(code_part, coset_draw, mask, error_poly)

    def _sample_error_poly(self, plaintext: SubspacePlaintext, rng) -> QPoly:
        """Uniform E whose matrix representation has the plaintext as row space."""
        p = self.params
        F = self.F
        while True:
            left = _sample_matrix(p.q, p.m, p.t, rng)
            if _matrix_rank(p.q, left, p.t) == p.t:
                break
        rows = _matmul_base(p.q, left, [list(r) for r in plaintext.rows], p.m)
        return from_matrix(F, rows)

    def decrypt(self, secret: QPoly, ciphertext: QPoly) -> SubspacePlaintext:
        p = self.params
        F = self.F
        annihilator = left_annihilator(secret)
        folded = annihilator.compose_mod(ciphertext)
        word = folded.evaluate_vec(self.g)
        result = self.decode_code().decode_left(word, t_max=p.t)
        error_poly = self.decode_code().interpolator().interpolate(result.error)
        if error_poly.rank() < p.t:
            raise RankDrop("rank of the folded error dropped below t")
        recovered = _matrix_row_space(F, error_poly)
        if recovered.dim != p.t:
            raise RankDrop("recovered subspace has wrong dimension")
        return recovered

    def plaintext_of_error_poly(self, error_poly: QPoly) -> SubspacePlaintext:
        """Row space of the matrix representation, as a canonical subspace."""
        return _matrix_row_space(self.F, error_poly)


def _matrix_row_space(F, poly: QPoly) -> SubspacePlaintext:
    mat = poly.matrix_rep()
    return SubspacePlaintext.from_rows(F.q, mat, F.m)


def _sample_matrix(q: int, rows: int, cols: int, rng) -> List[List[int]]:
    if q == 2:
        return [[rng.getrandbits(1) for _ in range(cols)] for _ in range(rows)]
    return [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]


def _matrix_rank(q: int, mat: Sequence[Sequence[int]], ncols: int) -> int:
    if q == 2:
        packed = [sum((r[j] & 1) << j for j in range(ncols)) for r in mat]
        return linalg.gf2_rank(packed, ncols)
    from .fields import PrimeField
    return linalg.rank(PrimeField(q), [list(r) for r in mat])


def _matmul_base(q: int, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]],
                 ncols: int) -> List[List[int]]:
    if q == 2:
        packed_b = [sum((row[j] & 1) << j for j in range(ncols)) for row in b]
        out = []
        for arow in a:
            acc = 0
            for digit, brow in zip(arow, packed_b):
                if digit & 1:
                    acc ^= brow
            out.append([(acc >> j) & 1 for j in range(ncols)])
        return out
    from .fields import PrimeField
    return linalg.matmul(PrimeField(q), [list(r) for r in a], [list(r) for r in b])


def _random_rank_matrix(q: int, rows: int, cols: int, rank: int, rng) -> List[List[int]]:
    """Uniform rows x cols base-field matrix of the exact given rank."""
    while True:
        left = _sample_matrix(q, rows, rank, rng)
        if _matrix_rank(q, left, rank) == rank:
            break
    while True:
        right = _sample_matrix(q, rank, cols, rng)
        if _matrix_rank(q, right, cols) == rank:
            break
    return _matmul_base(q, left, right, cols)


# ---------------------------------------------------------------------------
# LIGA


@dataclass(frozen=True)
class LigaSecretKey:
    x: tuple        # length k over the top field; last u entries form a basis
    z: tuple        # length n over the top field, F_q-rank w
    P: tuple        # invertible n x n matrix over F_q (packed rows when q = 2)


@dataclass(frozen=True)
class LigaKeyPair:
    secret: LigaSecretKey
    public: tuple   # k_pub = x G + z over the top field


@dataclass(frozen=True)
class LigaTrace:
    alpha: tuple
    error: tuple


class Liga:
    """LIGA (and the original Faure-Loidreau variant) over a fixed tower."""

    KEYGEN_RETRIES = 10_000

    def __init__(self, params: LigaParams, tower: Optional[Tower] = None):
        params.validate()
        self.params = params
        self.tower = tower if tower is not None else Tower(params.q, params.m, params.u)
        if (self.tower.q, self.tower.m, self.tower.u) != (params.q, params.m, params.u):
            raise BadParameters("tower does not match the parameters")
        self.mid = self.tower.mid
        self.top = self.tower.top
        self.g = self.mid.basis()[: params.n]
        self.code = GabidulinCode(self.mid, self.g, params.k)

    # --- key generation ---

    def keygen(self, rng: random.Random, variant: str = "liga") -> LigaKeyPair:
        if variant not in ("liga", "original"):
            raise BadParameters("variant must be 'liga' or 'original'")
        p = self.params
        top = self.top
        for _ in range(self.KEYGEN_RETRIES):
            x = self._sample_x(rng)
            if variant == "original":
                s = self._sample_full_qrank_s(rng)
            else:
                s = self._sample_liga_s(rng)
                if s is None:
                    continue
            P, P_inv = self._sample_support_compatible_gl(rng)
            padded = list(s) + [top.zero] * (p.n - p.w)
            z = tuple(vec_times_base_matrix(top, padded, list(P_inv), p.n))
            if rank_q_top(top, z) != p.w:
                continue
            if variant == "liga" and rank_qm(top, z) != p.zeta:
                continue
            k_pub = tuple(
                top.add(self._codeword_entry(x, j), z[j]) for j in range(p.n)
            )
            secret = LigaSecretKey(x=tuple(x), z=z, P=tuple(P))
            return LigaKeyPair(secret=secret, public=k_pub)
        raise BadParameters("key generation failed within the retry cap")

    def _codeword_entry(self, x: Sequence, j: int):
        """(x G)_j where G is the Gabidulin generator at the public support."""
        top = self.top
        acc = top.zero
        for i in range(self.params.k):
            gij = self.code.support_power(i)[j]
            if gij != self.mid.zero:
                acc = top.add(acc, top.scalar_mul(gij, x[i]))
        return acc

    def _sample_x(self, rng) -> list:
        p = self.params
        while True:
            x = [self.top.rand(rng) for _ in range(p.k)]
            if rank_qm(self.top, x[p.k - p.u:]) == p.u:
                return x

    def _sample_full_qrank_s(self, rng) -> list:
        p = self.params
        while True:
            s = [self.top.rand(rng) for _ in range(p.w)]
            if rank_q_top(self.top, s) == p.w:
                return s

    def _sample_liga_s(self, rng) -> Optional[list]:
        """Algorithm-2 style sampling: s = sum_i s_i gamma_i^*."""
        p = self.params
        top = self.top
        mid = self.mid
        gamma = sample_qm_independent(top, p.u, rng)
        gamma_dual = dual_basis(top, gamma)
        plane = sample_subspace_full_rank_basis(mid, p.w, p.zeta, rng)
        rows = []
        coeffs = []
        for _ in range(p.u):
            for _attempt in range(64):
                c = [mid.rand(rng) for _ in range(p.zeta)]
                vec = [mid.zero] * p.w
                for cj, base_vec in zip(c, plane):
                    if cj != mid.zero:
                        vec = [mid.add(vj, mid.mul(cj, bj)) for vj, bj in zip(vec, base_vec)]
                if rank_q(mid, vec) == p.w:
                    rows.append(vec)
                    coeffs.append(c)
                    break
            else:
                return None
        if linalg.rank(mid, coeffs) != p.zeta:
            return None
        s = []
        for j in range(p.w):
            acc = top.zero
            for i in range(p.u):
                if rows[i][j] != mid.zero:
                    acc = top.add(acc, top.scalar_mul(rows[i][j], gamma_dual[i]))
            s.append(acc)
        if rank_q_top(top, s) != p.w:
            return None
        return s

    def _sample_support_compatible_gl(self, rng):
        """P in GL_n(F_q) whose action leaves the punctured support full-rank."""
        p = self.params
        while True:
            P = sample_gln(p.q, p.n, rng)
            if p.q == 2:
                try:
                    P_inv = linalg.gf2_inverse(P, p.n)
                except ValueError:
                    continue
            else:
                from .fields import PrimeField
                try:
                    P_inv = linalg.inverse(PrimeField(p.q), P)
                except ValueError:
                    continue
            moved = vec_times_base_matrix(self.mid, self.g, list(P), p.n)
            if rank_q(self.mid, moved[p.w:]) == p.n - p.w:
                return P, P_inv

    # --- message space ---

    def random_message(self, rng: random.Random) -> list:
        p = self.params
        return [self.mid.rand(rng) for _ in range(p.k - p.u)] + \
               [self.mid.zero] * p.u

    # --- encryption / decryption ---

    def trace_public_multiple(self, k_pub: Sequence, factor) -> list:
        """Tr(factor * k_pub) entrywise, down to the mid field."""
        top = self.top
        return [top.trace_to_mid(top.mul(factor, kj)) for kj in k_pub]

    def encrypt(self, k_pub: Sequence, message: Sequence, rng: random.Random) -> list:
        return self.encrypt_traced(k_pub, message, rng)[0]

    def encrypt_traced(self, k_pub: Sequence, message: Sequence, rng: random.Random,
                       alpha=None, error=None) -> Tuple[list, LigaTrace]:
        p = self.params
        mid = self.mid
        if len(message) != p.k or any(c != mid.zero for c in message[p.k - p.u:]):
            raise BadParameters("message must have length k with a zero u-tail")
        if alpha is None:
            alpha = self.top.rand(rng)
        if error is None:
            error = sample_rank_t_vector(mid, p.n, p.t_pub, rng)
        if rank_q(mid, error) > p.t_pub:
            raise BadParameters("error rank exceeds t_pub")
        word = self.code.encode(list(message))
        masked = self.trace_public_multiple(k_pub, alpha)
        cipher = [mid.add(mid.add(w, t), e) for w, t, e in zip(word, masked, error)]
        return cipher, LigaTrace(alpha=tuple(alpha), error=tuple(error))

    def decrypt(self, secret: LigaSecretKey, ciphertext: Sequence) -> list:
        p = self.params
        mid = self.mid
        top = self.top
        moved = vec_times_base_matrix(mid, list(ciphertext), list(secret.P), p.n)
        support = vec_times_base_matrix(mid, self.g, list(secret.P), p.n)
        punct_code = GabidulinCode(mid, support[p.w:], p.k)
        result = punct_code.decode_left(moved[p.w:], t_max=p.t_pub)
        shifted = result.message  # m + Tr(alpha x)
        tail_basis = list(secret.x[p.k - p.u:])
        tail_dual = dual_basis(top, tail_basis)
        alpha = top.zero
        for coeff, dual_elem in zip(shifted[p.k - p.u:], tail_dual):
            if coeff != mid.zero:
                alpha = top.add(alpha, top.scalar_mul(coeff, dual_elem))
        unmask = [top.trace_to_mid(top.mul(alpha, xi)) for xi in secret.x]
        message = [mid.sub(s, t) for s, t in zip(shifted, unmask)]
        if any(c != mid.zero for c in message[p.k - p.u:]):
            raise DecodingFailure("decrypted message has a nonzero tail")
        return message
