"""Decoding supercodes qpoly_{<k} + T of a Gabidulin code.

Given a received word y = c + e with c in the evaluated supercode and e of
small rank t, solve the linearized key equation

    Lambda o Y == N   mod (X^(q^m) - X),

with Lambda of q-degree <= t and N ranging over qpoly_{<k+t} + qpoly_{<=t} o T.
When the solution spaces are in general position, the kernel of any nonzero
Lambda contains the image of the error term, and the error itself is
recovered by solving a base-field linear system over that support (Euclidean
division does not apply here: members of T carry no useful degree bound).

The right-sided variant conjugates everything by the adjoint and reuses the
same core, with N ranging over qpoly_{<k+t} + T o qpoly_{<=t}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import linalg
from .errors import DecodingFailure
from .fields import column_support, rank_q
from .gabidulin import GabidulinCode
from .qpoly import QPoly, reduce_span, span_dim


@dataclass
class SupercodeSpec:
    """A supercode instance: Gabidulin part of dimension k plus a space T.

    `t_basis` spans T as reduced q-polynomial classes; the support g must
    have length n = m so received words interpolate uniquely.
    """

    code: GabidulinCode
    t_basis: List[QPoly]
    t: int
    _caches: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, F, support: Sequence, k: int, t_basis: Sequence[QPoly], t: int):
        code = GabidulinCode(F, support, k)
        if code.n != F.m:
            raise ValueError("supercode decoding requires n = m")
        return cls(code=code, t_basis=[p.reduce_mod() for p in t_basis], t=t)

    @property
    def F(self):
        return self.code.F

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def n(self) -> int:
        return self.code.n

    # --- feasibility counts (conditions (4) and (5)) ---

    def dim_left_composition(self) -> int:
        """dim(qpoly_{<=t} o T)."""
        gens = [tb.frob_shift(j) for j in range(self.t + 1) for tb in self.t_basis]
        return span_dim(gens)

    def dim_right_composition(self) -> int:
        """dim(T o qpoly_{<=t})."""
        gens = [tb.shift_right(j) for j in range(self.t + 1) for tb in self.t_basis]
        return span_dim(gens)

    def feasible_left(self) -> bool:
        return self.k + 2 * self.t + self.dim_left_composition() <= self.n

    def feasible_right(self) -> bool:
        return self.k + 2 * self.t + self.dim_right_composition() <= self.n

    # --- generator / parity of the evaluated supercode ---

    def generator_rows(self) -> List[list]:
        rows = self._caches.get("gen")
        if rows is None:
            rows = [self.code.support_power(i) for i in range(self.k)]
            rows = rows + [tb.evaluate_vec(self.code.g) for tb in self.t_basis]
            self._caches["gen"] = rows
        return rows

    def parity_rows(self) -> List[list]:
        rows = self._caches.get("parity")
        if rows is None:
            rows = linalg.nullspace(self.F, self.generator_rows(), self.n)
            self._caches["parity"] = rows
        return rows

    def adjoint_generator_rows(self) -> List[list]:
        rows = self._caches.get("adj_gen")
        if rows is None:
            F = self.F
            m = F.m
            rows = [self.code.support_power((m - i) % m) for i in range(self.k)]
            rows = rows + [tb.adjoint().evaluate_vec(self.code.g) for tb in self.t_basis]
            self._caches["adj_gen"] = rows
        return rows

    def adjoint_parity_rows(self) -> List[list]:
        rows = self._caches.get("adj_parity")
        if rows is None:
            rows = linalg.nullspace(self.F, self.adjoint_generator_rows(), self.n)
            self._caches["adj_parity"] = rows
        return rows


@dataclass
class SupercodeDecodeResult:
    error: list
    error_support: list
    corrected: list
    annihilator: QPoly


def n_space_basis_left(spec: SupercodeSpec) -> List[QPoly]:
    """Canonical basis of qpoly_{<k+t} + qpoly_{<=t} o T."""
    return reduce_span(_n_space_generators_left(spec))


def n_space_basis_right(spec: SupercodeSpec) -> List[QPoly]:
    """Canonical basis of qpoly_{<k+t} + T o qpoly_{<=t}."""
    return reduce_span(_n_space_generators_right(spec))


def _n_space_generators_left(spec: SupercodeSpec) -> List[QPoly]:
    F = spec.F
    gens = [QPoly.monomial(F, l) for l in range(spec.k + spec.t)]
    gens += [tb.frob_shift(j) for j in range(spec.t + 1) for tb in spec.t_basis]
    return gens


def _n_space_generators_right(spec: SupercodeSpec) -> List[QPoly]:
    F = spec.F
    gens = [QPoly.monomial(F, l) for l in range(spec.k + spec.t)]
    gens += [tb.shift_right(j) for j in range(spec.t + 1) for tb in spec.t_basis]
    return gens


def _key_equation_solutions(spec: SupercodeSpec, received: QPoly,
                            n_generators: List[QPoly]) -> List[QPoly]:
    """Nonzero annihilator candidates from Lambda o Y == N mod (X^(q^m) - X).

    The N part ranges over the given generating set (dependencies among the
    generators only add Lambda = 0 kernel vectors, which are skipped).
    """
    F = spec.F
    m = F.m
    t = spec.t
    lam_cols = [received.frob_shift(j).padded(m) for j in range(t + 1)]
    n_cols = [gen.reduce_mod().padded(m) for gen in n_generators]
    rows = []
    for r in range(m):
        row = [col[r] for col in lam_cols]
        row.extend(F.neg(col[r]) for col in n_cols)
        rows.append(row)
    kernel = linalg.nullspace(F, rows, (t + 1) + len(n_cols))
    out = []
    for vec in kernel:
        lam = QPoly(F, vec[: t + 1])
        if not lam.is_zero:
            out.append(lam)
    return out


def support_erasure_decode(F, generator_rows: Sequence[Sequence], parity_rows,
                           word: Sequence, support: Sequence) -> list:
    """Recover the error knowing a space containing its column support.

    Writes e_i = sum_j a_ij v_j with base-field unknowns a_ij and imposes
    H (y - e)^T = 0; each F_{q^m} equation expands into m base-field
    equations.  Requires the solution to be unique (a rank-deficient system
    means several candidate errors and is reported as a failure).
    """
    n = len(word)
    s = len(support)
    if parity_rows is None:
        parity_rows = linalg.nullspace(F, [list(r) for r in generator_rows], n)
    syndrome = linalg.matvec(F, parity_rows, list(word))
    if s == 0:
        if any(x != F.zero for x in syndrome):
            raise DecodingFailure("empty support but nonzero syndrome")
        return [F.zero] * n
    ncols = n * s
    if F.q == 2:
        rows_bits: List[int] = []
        rhs_bits: List[int] = []
        for h_row, syn in zip(parity_rows, syndrome):
            block = [0] * F.m
            for i in range(n):
                h = h_row[i]
                if h == 0:
                    continue
                for j, v in enumerate(support):
                    w = F.mul(h, v)
                    colbit = 1 << (i * s + j)
                    while w:
                        lsb = w & -w
                        block[lsb.bit_length() - 1] |= colbit
                        w ^= lsb
            rows_bits.extend(block)
            rhs_bits.extend((syn >> b) & 1 for b in range(F.m))
        sol, kernel = linalg.gf2_solve_affine(rows_bits, ncols, rhs_bits)
        if sol is None:
            raise DecodingFailure("support erasure system is inconsistent")
        if kernel:
            raise DecodingFailure("support erasure system is ambiguous")
        error = []
        for i in range(n):
            acc = F.zero
            for j in range(s):
                if (sol >> (i * s + j)) & 1:
                    acc = F.add(acc, support[j])
            error.append(acc)
        return error
    # generic base field
    rows = []
    rhs = []
    for h_row, syn in zip(parity_rows, syndrome):
        block = [[0] * ncols for _ in range(F.m)]
        for i in range(n):
            h = h_row[i]
            if h == F.zero:
                continue
            for j, v in enumerate(support):
                digits = F.to_digits(F.mul(h, v))
                for b, d in enumerate(digits):
                    block[b][i * s + j] = d
        rows.extend(block)
        rhs.extend(F.to_digits(syn))
    sol, kernel = linalg.solve_affine(F.base, rows, rhs)
    if sol is None:
        raise DecodingFailure("support erasure system is inconsistent")
    if kernel:
        raise DecodingFailure("support erasure system is ambiguous")
    error = []
    for i in range(n):
        acc = F.zero
        for j in range(s):
            d = sol[i * s + j]
            for _ in range(d):
                acc = F.add(acc, support[j])
        error.append(acc)
    return error


def decode_left(spec: SupercodeSpec, word: Sequence,
                check_feasibility: bool = True) -> SupercodeDecodeResult:
    """Left-sided supercode decoding (condition (4): k + 2t + dim <= n)."""
    if check_feasibility and not spec.feasible_left():
        raise DecodingFailure("left feasibility condition violated (use check_feasibility=False to override)")
    F = spec.F
    word = list(word)
    received = spec.code.interpolator().interpolate(word)
    candidates = _key_equation_solutions(spec, received, _n_space_generators_left(spec))
    if not candidates:
        raise DecodingFailure("key equation has no solution with nonzero annihilator")
    parity = spec.parity_rows()
    gen = spec.generator_rows()
    last: Optional[DecodingFailure] = None
    for lam in candidates:
        support = lam.kernel_basis()
        if len(support) > spec.t:
            continue
        try:
            error = support_erasure_decode(F, gen, parity, word, support)
        except DecodingFailure as exc:
            last = exc
            continue
        if rank_q(F, error) > spec.t:
            last = DecodingFailure("recovered error rank exceeds t")
            continue
        if any(lam.evaluate(e) != F.zero for e in error):
            last = DecodingFailure("annihilator does not vanish on the error")
            continue
        corrected = [F.sub(y, e) for y, e in zip(word, error)]
        return SupercodeDecodeResult(
            error=error, error_support=support, corrected=corrected, annihilator=lam)
    raise last or DecodingFailure("no annihilator candidate yields a consistent error")


def decode_right(spec: SupercodeSpec, word: Sequence,
                 check_feasibility: bool = True) -> SupercodeDecodeResult:
    """Right-sided supercode decoding (condition (5): k + 2t + dim <= n).

    Solves Y o Lambda == N by conjugating with the adjoint: with
    W o X^(q^(m-t)) = adj(Lambda), the system becomes the left-shaped
    W o (X^(q^(m-t)) o adj(Y)) == adj(N), and the error of the adjointed
    problem is recovered first, then mapped back.
    """
    if check_feasibility and not spec.feasible_right():
        raise DecodingFailure("right feasibility condition violated (use check_feasibility=False to override)")
    F = spec.F
    m = F.m
    t = spec.t
    word = list(word)
    received = spec.code.interpolator().interpolate(word)
    received_hat = received.adjoint()
    conjugated = received_hat.frob_shift((m - t) % m)
    n_gens = [gen.adjoint() for gen in _n_space_generators_right(spec)]
    candidates = _key_equation_solutions(spec, conjugated, n_gens)
    if not candidates:
        raise DecodingFailure("key equation has no solution with nonzero annihilator")
    word_hat = received_hat.evaluate_vec(spec.code.g)
    adj_gen = spec.adjoint_generator_rows()
    adj_parity = spec.adjoint_parity_rows()
    interp = spec.code.interpolator()
    last: Optional[DecodingFailure] = None
    for w_poly in candidates:
        lam_hat = w_poly.shift_right((m - t) % m)
        support_hat = lam_hat.kernel_basis()
        if len(support_hat) > t:
            continue
        try:
            error_hat = support_erasure_decode(F, adj_gen, adj_parity, word_hat, support_hat)
        except DecodingFailure as exc:
            last = exc
            continue
        error_poly = interp.interpolate(error_hat).adjoint()
        error = error_poly.evaluate_vec(spec.code.g)
        if rank_q(F, error) > t:
            last = DecodingFailure("recovered error rank exceeds t")
            continue
        corrected = [F.sub(y, e) for y, e in zip(word, error)]
        annihilator = lam_hat.adjoint()
        return SupercodeDecodeResult(
            error=error, error_support=column_support(F, error),
            corrected=corrected, annihilator=annihilator)
    raise last or DecodingFailure("no annihilator candidate yields a consistent error")
