"""Gabidulin codes and unique decoding.

A Gabidulin code of dimension k supported by a full-F_q-rank vector g is
the evaluation of q-polynomials of q-degree < k at g.  Two unique decoders
up to radius floor((n-k)/2) are provided:

* decode_left  -- find an annihilator acting on the left of the error
  (works for any n <= m);
* decode_right -- interpolate the received word, move the key equation to
  the right of the error via adjunction, and solve the resulting linear
  system (requires n = m so the interpolating polynomial is unique).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import linalg
from .errors import DecodingFailure, NotABasis, NotACodeword
from .fields import rank_q, sample_rank_t_vector
from .qpoly import Interpolator, QPoly, left_divide, right_divide


@dataclass
class DecodeResult:
    codeword: list
    message: list
    error: list
    error_rank: int


class GabidulinCode:
    """Evaluation code of qpoly_{<k} at a rank-n support vector."""

    def __init__(self, F, support: Sequence, k: int):
        n = len(support)
        if not (0 < k <= n <= F.m):
            raise NotABasis(f"need 0 < k <= n <= m, got k={k}, n={n}, m={F.m}")
        if rank_q(F, support) != n:
            raise NotABasis("support vector is not of full F_q-rank")
        self.F = F
        self.g = list(support)
        self.k = k
        self.n = n
        self._gpow: List[list] = [list(self.g)]
        self._interp: Optional[Interpolator] = None
        self._parity: Optional[List[list]] = None

    # --- cached Frobenius powers of the support ---

    def support_power(self, j: int) -> list:
        """The vector g^[j] = (g_1^(q^j), ..., g_n^(q^j))."""
        F = self.F
        j %= F.m
        while len(self._gpow) <= j:
            self._gpow.append([F.frob(x, 1) for x in self._gpow[-1]])
        return self._gpow[j]

    def generator_matrix(self) -> List[list]:
        return [self.support_power(i) for i in range(self.k)]

    # --- encoding ---

    def encode(self, message: Sequence) -> list:
        if len(message) != self.k:
            raise ValueError(f"message length must be {self.k}")
        F = self.F
        out = [F.zero] * self.n
        for i, c in enumerate(message):
            if c == F.zero:
                continue
            row = self.support_power(i)
            out = [F.add(o, F.mul(c, r)) for o, r in zip(out, row)]
        return out

    def unencode(self, word: Sequence) -> list:
        """Message of a codeword; raises NotACodeword for vectors off the code."""
        F = self.F
        if self.n == F.m:
            poly = self.interpolator().interpolate(list(word))
            if poly.qdeg >= self.k:
                raise NotACodeword("interpolant exceeds the code degree bound")
            return poly.padded(self.k)
        cols = [self.support_power(i) for i in range(self.k)]
        mat = [[cols[i][j] for i in range(self.k)] for j in range(self.n)]
        sol = linalg.solve(F, mat, list(word))
        if sol is None:
            raise NotACodeword("inconsistent system")
        return sol

    def contains(self, word: Sequence) -> bool:
        try:
            self.unencode(word)
            return True
        except NotACodeword:
            return False

    # --- dual / interpolation machinery ---

    def parity_check(self) -> List[list]:
        """(n-k) x n matrix H over F_{q^m} with H c^T = 0 exactly on the code."""
        if self._parity is None:
            self._parity = linalg.nullspace(self.F, self.generator_matrix(), self.n)
        return self._parity

    def syndrome(self, word: Sequence) -> list:
        return linalg.matvec(self.F, self.parity_check(), list(word))

    def interpolator(self) -> Interpolator:
        if self.n != self.F.m:
            raise NotABasis("interpolation requires n = m")
        if self._interp is None:
            self._interp = Interpolator(self.F, self.g)
        return self._interp

    # --- decoding ---

    @property
    def radius(self) -> int:
        return (self.n - self.k) // 2

    def _check_t(self, t_max: Optional[int]) -> int:
        if t_max is None:
            return self.radius
        if not (0 <= t_max <= self.radius):
            raise ValueError(f"t_max must lie in [0, {self.radius}]")
        return t_max

    def _finish(self, word, codeword_poly: QPoly, t_max: int) -> DecodeResult:
        F = self.F
        if codeword_poly.qdeg >= self.k:
            raise DecodingFailure("codeword polynomial exceeds degree bound")
        codeword = codeword_poly.evaluate_vec(self.g)
        error = [F.sub(y, c) for y, c in zip(word, codeword)]
        erank = rank_q(F, error)
        if erank > t_max:
            raise DecodingFailure(f"residual error rank {erank} exceeds {t_max}")
        return DecodeResult(
            codeword=codeword,
            message=codeword_poly.padded(self.k),
            error=error,
            error_rank=erank,
        )

    def decode_left(self, word: Sequence, t_max: Optional[int] = None) -> DecodeResult:
        """Welch-Berlekamp with a left annihilator: V(y_i) = N(g_i)."""
        F = self.F
        t = self._check_t(t_max)
        k = self.k
        word = list(word)
        rows = []
        for i in range(self.n):
            row = []
            yp = word[i]
            for _ in range(t + 1):
                row.append(yp)
                yp = F.frob(yp, 1)
            for l in range(k + t):
                row.append(F.neg(self.support_power(l)[i]))
            rows.append(row)
        basis = linalg.nullspace(F, rows, (t + 1) + (k + t))
        if not basis:
            raise DecodingFailure("no nonzero key-equation solution")
        for vec in basis:
            ann = QPoly(F, vec[: t + 1])
            num = QPoly(F, vec[t + 1:])
            if ann.is_zero:
                continue
            quot, rem = left_divide(num, ann)
            if not rem.is_zero:
                continue
            try:
                return self._finish(word, quot, t)
            except DecodingFailure:
                continue
        raise DecodingFailure("no key-equation solution yields a valid split")

    def decode_right(self, word: Sequence, t_max: Optional[int] = None) -> DecodeResult:
        """Right-hand-side Welch-Berlekamp (requires n = m).

        Interpolates the received word, then solves the adjointed linear
        system adj(V)(adj(Y)(g_i)) = adj(N)(g_i) and divides on the right.
        """
        F = self.F
        m = F.m
        if self.n != m:
            raise NotABasis("right decoding requires n = m")
        t = self._check_t(t_max)
        k = self.k
        word = list(word)
        received = self.interpolator().interpolate(word)
        y_hat = received.adjoint().evaluate_vec(self.g)
        rows = []
        for i in range(self.n):
            row = []
            for a in range(t + 1):
                row.append(F.frob(y_hat[i], (m - a) % m))
            for l in range(k + t):
                row.append(F.neg(F.frob(self.g[i], (m - l) % m)))
            rows.append(row)
        basis = linalg.nullspace(F, rows, (t + 1) + (k + t))
        if not basis:
            raise DecodingFailure("no nonzero key-equation solution")
        for vec in basis:
            ann = QPoly(F, [F.frob(c, a) for a, c in enumerate(vec[: t + 1])])
            num = QPoly(F, [F.frob(c, l) for l, c in enumerate(vec[t + 1:])])
            if ann.is_zero:
                continue
            quot, rem = right_divide(num, ann)
            if not rem.is_zero:
                continue
            try:
                return self._finish(word, quot, t)
            except DecodingFailure:
                continue
        raise DecodingFailure("no key-equation solution yields a valid split")


def sample_error(F, n: int, t: int, rng: random.Random) -> list:
    """Error vector of length n and F_q-rank exactly t."""
    return sample_rank_t_vector(F, n, t, rng)
