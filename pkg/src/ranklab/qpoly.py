"""Linearized (q-)polynomials over F_{q^m}.

A q-polynomial sum_i p_i X^(q^i) induces an F_q-linear endomorphism of
F_{q^m}.  Composition makes the set a non-commutative ring; reducing
modulo (X^(q^m) - X) identifies it with End_{F_q}(F_{q^m}).  Composition
is kept in two flavours: `compose` preserves q-degrees (needed for the
Euclidean division identities), `compose_mod` folds exponents mod m.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import NotABasis
from .fields import column_support

NEG_INF = -math.inf


class QPoly:
    """q-polynomial with coefficient i attached to X^(q^i)."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F, coeffs: Sequence = ()):
        trimmed = list(coeffs)
        while trimmed and trimmed[-1] == F.zero:
            trimmed.pop()
        self.F = F
        self.coeffs = tuple(trimmed)

    # --- constructors ---

    @classmethod
    def zero(cls, F) -> "QPoly":
        return cls(F, ())

    @classmethod
    def identity(cls, F) -> "QPoly":
        return cls(F, (F.one,))

    @classmethod
    def monomial(cls, F, j: int, coeff=None) -> "QPoly":
        c = F.one if coeff is None else coeff
        return cls(F, (F.zero,) * j + (c,))

    # --- structure ---

    @property
    def qdeg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.F.zero

    def padded(self, length: int) -> List:
        return list(self.coeffs) + [self.F.zero] * (length - len(self.coeffs))

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs \
            and self.F is other.F

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    # --- additive ops ---

    def __add__(self, other: "QPoly") -> "QPoly":
        F = self.F
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other: "QPoly") -> "QPoly":
        F = self.F
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(F, [F.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self) -> "QPoly":
        return QPoly(self.F, [self.F.neg(c) for c in self.coeffs])

    def scale(self, c) -> "QPoly":
        """Left scalar action (cX) o P, i.e. coefficient-wise c * p_i."""
        F = self.F
        return QPoly(F, [F.mul(c, p) for p in self.coeffs])

    def scale_right(self, c) -> "QPoly":
        """Right scalar action P o (cX): p_i -> p_i * c^(q^i)."""
        F = self.F
        out = []
        cc = c
        for p in self.coeffs:
            out.append(F.mul(p, cc))
            cc = F.frob(cc, 1)
        return QPoly(F, out)

    # --- evaluation ---

    def evaluate(self, x):
        F = self.F
        acc = F.zero
        xp = x
        for p in self.coeffs:
            if p != F.zero:
                acc = F.add(acc, F.mul(p, xp))
            xp = F.frob(xp, 1)
        return acc

    def evaluate_vec(self, xs: Sequence) -> List:
        return [self.evaluate(x) for x in xs]

    # --- multiplicative structure ---

    def compose(self, other: "QPoly") -> "QPoly":
        """P o Q without reduction; q-degrees add."""
        F = self.F
        if self.is_zero or other.is_zero:
            return QPoly.zero(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        q_f = list(other.coeffs)
        for i, p in enumerate(self.coeffs):
            if p != F.zero:
                for j, qc in enumerate(q_f):
                    if qc != F.zero:
                        out[i + j] = F.add(out[i + j], F.mul(p, qc))
            q_f = [F.frob(c, 1) for c in q_f]
        return QPoly(F, out)

    def compose_mod(self, other: "QPoly") -> "QPoly":
        """Class of P o Q modulo (X^(q^m) - X)."""
        F = self.F
        m = F.m
        if self.is_zero or other.is_zero:
            return QPoly.zero(F)
        out = [F.zero] * m
        q_f = list(other.coeffs)
        for i, p in enumerate(self.coeffs):
            if p != F.zero:
                for j, qc in enumerate(q_f):
                    if qc != F.zero:
                        k = (i + j) % m
                        out[k] = F.add(out[k], F.mul(p, qc))
            q_f = [F.frob(c, 1) for c in q_f]
        return QPoly(F, out)

    def reduce_mod(self) -> "QPoly":
        """Fold exponents mod m (X^(q^(m+i)) == X^(q^i))."""
        F = self.F
        m = F.m
        if len(self.coeffs) <= m:
            return self
        out = [F.zero] * m
        for i, c in enumerate(self.coeffs):
            if c != F.zero:
                out[i % m] = F.add(out[i % m], c)
        return QPoly(F, out)

    def qth_power(self) -> "QPoly":
        """P(X)^q = sum p_i^q X^(q^(i+1)); unreduced."""
        F = self.F
        if self.is_zero:
            return self
        return QPoly(F, [F.zero] + [F.frob(c, 1) for c in self.coeffs])

    def frob_shift(self, j: int) -> "QPoly":
        """Class of X^(q^j) o P: coefficients p_l^(q^j) at exponent (l+j) mod m."""
        F = self.F
        m = F.m
        out = [F.zero] * m
        red = self.reduce_mod()
        for l, c in enumerate(red.coeffs):
            if c != F.zero:
                k = (l + j) % m
                out[k] = F.add(out[k], F.frob(c, j))
        return QPoly(F, out)

    def shift_right(self, j: int) -> "QPoly":
        """Class of P o X^(q^j): coefficient p_l moves to exponent (l+j) mod m."""
        F = self.F
        m = F.m
        out = [F.zero] * m
        red = self.reduce_mod()
        for l, c in enumerate(red.coeffs):
            if c != F.zero:
                k = (l + j) % m
                out[k] = F.add(out[k], c)
        return QPoly(F, out)

    # --- adjoint ---

    def adjoint(self) -> "QPoly":
        """Transpose w.r.t. (x, y) -> Tr(xy): coefficient p_i^(q^(m-i)) at (m-i) mod m."""
        F = self.F
        m = F.m
        red = self.reduce_mod()
        out = [F.zero] * m
        for i, c in enumerate(red.coeffs):
            if c != F.zero:
                e = (m - i) % m
                out[e] = F.add(out[e], F.frob(c, e))
        return QPoly(F, out)

    # --- matrix view (w.r.t. the power basis unless told otherwise) ---

    def _images(self) -> List:
        return [self.evaluate(b) for b in self.F.basis()]

    def matrix_rep(self, basis: Optional[Sequence] = None) -> List[List[int]]:
        """m x m digit matrix M with M @ coords(x) = coords(P(x))."""
        F = self.F
        base_elems = basis if basis is not None else F.basis()
        images = [self.evaluate(b) for b in base_elems]
        if basis is None:
            digit_cols = [F.to_digits(v) for v in images]
        else:
            from .fields import coords_in_basis
            digit_cols = coords_in_basis(F, images, basis)
        return [[digit_cols[j][i] for j in range(F.m)] for i in range(F.m)]

    def rank(self) -> int:
        F = self.F
        images = self._images()
        if F.q == 2:
            return linalg.gf2_rank(images, F.m)
        return linalg.rank(F.base, [F.to_digits(v) for v in images])

    def kernel_basis(self) -> List:
        """Canonical basis of {x in F_{q^m} : P(x) = 0}."""
        F = self.F
        images = self._images()
        if F.q == 2:
            rows = linalg.gf2_transpose(images, F.m)
            return linalg.gf2_nullspace(rows, F.m)
        mat = [[F.to_digits(images[j])[i] for j in range(F.m)] for i in range(F.m)]
        return [F.from_digits(v) for v in linalg.nullspace(F.base, mat, F.m)]

    def image_basis(self) -> List:
        return column_support(self.F, self._images())


def from_matrix(F, mat: Sequence[Sequence[int]], basis: Optional[Sequence] = None) -> QPoly:
    """Inverse of matrix_rep: the q-polynomial acting as the given digit matrix."""
    if len(mat) != F.m:
        raise ValueError("matrix must be m x m")
    base_elems = list(basis) if basis is not None else F.basis()
    images = []
    for j in range(F.m):
        acc = F.zero
        for i in range(F.m):
            d = mat[i][j]
            if d:
                acc = F.add(acc, _scaled(F, d, base_elems[i]))
        images.append(acc)
    return interpolate(F, base_elems, images)


def _scaled(F, digit: int, elem):
    if F.q == 2:
        return elem
    acc = F.zero
    for _ in range(digit % F.q):
        acc = F.add(acc, elem)
    return acc


# ---------------------------------------------------------------------------
# interpolation


class Interpolator:
    """Newton-style interpolation over a fixed rank-n support.

    Precomputes the chain of minimal subspace polynomials of the prefixes of
    the support, so each interpolation costs O(n^2) multiplications.
    """

    def __init__(self, F, support: Sequence):
        self.F = F
        self.support = list(support)
        n = len(self.support)
        if n > F.m:
            raise NotABasis("support longer than m")
        self.n = n
        q = F.q
        chains: List[QPoly] = []
        lead_vals: List = []
        L = QPoly.identity(F)
        for i, g in enumerate(self.support):
            v = L.evaluate(g)
            if v == F.zero:
                raise NotABasis("support vector is F_q-linearly dependent")
            chains.append(L)
            lead_vals.append(v)
            if i < n - 1:
                L = L.qth_power() - L.scale(F.pow(v, q - 1))
        self.chains = chains
        self.lead_inv = [F.inv(v) for v in lead_vals]
        # Frobenius power tables of the support points
        self.point_powers = []
        for g in self.support:
            row = [g]
            for _ in range(n - 1):
                row.append(F.frob(row[-1], 1))
            self.point_powers.append(row)

    def _eval_with_powers(self, poly: QPoly, powers: List):
        F = self.F
        acc = F.zero
        for c, xp in zip(poly.coeffs, powers):
            if c != F.zero:
                acc = F.add(acc, F.mul(c, xp))
        return acc

    def interpolate(self, values: Sequence) -> QPoly:
        """The unique q-polynomial of q-degree < n matching the values."""
        if len(values) != self.n:
            raise ValueError("value count must match the support")
        F = self.F
        poly = QPoly.zero(F)
        for i, y in enumerate(values):
            cur = self._eval_with_powers(poly, self.point_powers[i])
            delta = F.sub(y, cur)
            if delta != F.zero:
                c = F.mul(delta, self.lead_inv[i])
                poly = poly + self.chains[i].scale(c)
        return poly


def interpolate(F, support: Sequence, values: Sequence) -> QPoly:
    """One-shot interpolation; raises NotABasis on a rank-deficient support."""
    return Interpolator(F, support).interpolate(values)


# ---------------------------------------------------------------------------
# Euclidean divisions (unreduced: q-degrees are meaningful)


def left_divide(a: QPoly, b: QPoly) -> Tuple[QPoly, QPoly]:
    """(quot, rem) with a = b o quot + rem and qdeg(rem) < qdeg(b)."""
    F = a.F
    if b.is_zero:
        raise ZeroDivisionError("division by the zero q-polynomial")
    beta = len(b.coeffs) - 1
    lead_inv = F.inv(b.coeffs[-1])
    rem = list(a.coeffs)
    quot = [F.zero] * max(0, len(rem) - beta)
    while len(rem) - 1 >= beta and rem:
        d = len(rem) - 1
        if rem[-1] == F.zero:
            rem.pop()
            continue
        j = d - beta
        # b_beta * c^(q^beta) = rem_d  =>  c = (rem_d / b_beta)^(q^(m-beta))
        c = F.frob(F.mul(rem[-1], lead_inv), (-beta) % F.m)
        quot[j] = F.add(quot[j], c)
        # subtract b o (c X^(q^j)): coefficient b_i * c^(q^i) at i + j
        cc = c
        for i, bi in enumerate(b.coeffs):
            if bi != F.zero:
                rem[i + j] = F.sub(rem[i + j], F.mul(bi, cc))
            cc = F.frob(cc, 1)
        while rem and rem[-1] == F.zero:
            rem.pop()
    return QPoly(F, quot), QPoly(F, rem)


def right_divide(a: QPoly, b: QPoly) -> Tuple[QPoly, QPoly]:
    """(quot, rem) with a = quot o b + rem and qdeg(rem) < qdeg(b)."""
    F = a.F
    if b.is_zero:
        raise ZeroDivisionError("division by the zero q-polynomial")
    beta = len(b.coeffs) - 1
    rem = list(a.coeffs)
    quot = [F.zero] * max(0, len(rem) - beta)
    while len(rem) - 1 >= beta and rem:
        d = len(rem) - 1
        if rem[-1] == F.zero:
            rem.pop()
            continue
        j = d - beta
        # c * b_beta^(q^j) = rem_d
        c = F.mul(rem[-1], F.inv(F.frob(b.coeffs[-1], j % F.m)))
        quot[j] = F.add(quot[j], c)
        # subtract (c X^(q^j)) o b: coefficient c * b_i^(q^j) at i + j
        for i, bi in enumerate(b.coeffs):
            if bi != F.zero:
                rem[i + j] = F.sub(rem[i + j], F.mul(c, F.frob(bi, j % F.m)))
        while rem and rem[-1] == F.zero:
            rem.pop()
    return QPoly(F, quot), QPoly(F, rem)


# ---------------------------------------------------------------------------
# subspace polynomials and annihilators


def subspace_polynomial(F, vectors: Sequence) -> QPoly:
    """Monic q-polynomial of minimal q-degree vanishing exactly on the span.

    Built by the recursion L <- L^q - L(b)^(q-1) L over a basis of the span;
    q-degree equals the dimension, kernel equals the span.
    """
    basis = column_support(F, list(vectors))
    L = QPoly.identity(F)
    for b in basis:
        v = L.evaluate(b)
        L = L.qth_power() - L.scale(F.pow(v, F.q - 1))
    return L


def left_annihilator(e: QPoly) -> QPoly:
    """Monic V of q-degree rank(e) with V o e == 0 mod (X^(q^m) - X)."""
    if e.is_zero:
        return QPoly.identity(e.F)
    return subspace_polynomial(e.F, e.image_basis())


def right_annihilator(e: QPoly) -> QPoly:
    """Monic V of q-degree rank(e) with e o V == 0 mod (X^(q^m) - X).

    Built from the minimal polynomial Q of Im(adjoint(e)): the adjoint of Q
    factors as V o X^(q^(m-t)), and the invertible right factor is dropped.
    """
    F = e.F
    if e.is_zero:
        return QPoly.identity(F)
    q_poly = subspace_polynomial(F, e.adjoint().image_basis())
    t = len(q_poly.coeffs) - 1
    m = F.m
    coeffs = []
    for i in range(t + 1):
        coeffs.append(F.frob(q_poly.coeffs[t - i], (m - t + i) % m))
    v = QPoly(F, coeffs)
    # make monic by a right scalar twist: leading coeff of V o (cX) is v_t c^(q^t)
    c = F.frob(F.inv(v.coeffs[-1]), (m - t) % m)
    return v.scale_right(c)


# ---------------------------------------------------------------------------
# spans of q-polynomial classes


def reduce_span(polys: Sequence[QPoly]) -> List[QPoly]:
    """Canonical F_{q^m}-basis (RREF) of the span of reduced classes."""
    if not polys:
        return []
    F = polys[0].F
    m = F.m
    mat = [p.reduce_mod().padded(m) for p in polys]
    rows, pivots = linalg.rref(F, mat, m)
    return [QPoly(F, rows[i]) for i in range(len(pivots))]


def span_dim(polys: Sequence[QPoly]) -> int:
    return len(reduce_span(polys))


def span_contains(basis: Sequence[QPoly], poly: QPoly) -> bool:
    return span_dim(list(basis) + [poly]) == span_dim(basis)
