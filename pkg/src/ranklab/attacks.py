"""Message-recovery attacks on RAMESSES and LIGA via supercode decoding.

Both attacks decode the ciphertext in a supercode of a Gabidulin code that
is computable from public data alone:

* RAMESSES: the coset structure puts the ciphertext within rank t of
  qpoly_{<k+ell} + K_pub o qpoly_{<=ell}; right-sided supercode decoding
  recovers the error polynomial whose matrix row space is the plaintext.

* LIGA: traces of random top-field multiples of the public key span (with
  overwhelming probability) the same space as the hidden error directions,
  so step 1 strips the small error by left-sided supercode decoding; step 2
  computes the affine space of mask candidates with plain linear algebra;
  step 3 intersects the resulting message coset with the zero-tail
  constraint, which pins down the plaintext uniquely.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from . import linalg, supercode
from .errors import AttackFailure, BadParameters, DecodingFailure
from .fields import rank_q, sample_qm_independent
from .params import LigaParams, RamessesParams, SchemeParams, scheme_of
from .qpoly import QPoly
from .schemes import Liga, Ramesses, SubspacePlaintext
from .supercode import SupercodeSpec


# ---------------------------------------------------------------------------
# feasibility audits (the published-parameter tables)


@dataclass(frozen=True)
class FeasibilityRow:
    params: SchemeParams
    lhs: int
    threshold: int
    broken: bool


def audit_ramesses(params: RamessesParams) -> FeasibilityRow:
    """Break condition k + 3t + 2*ell + 1 <= n."""
    lhs = params.k + 3 * params.t + 2 * params.ell + 1
    return FeasibilityRow(params=params, lhs=lhs, threshold=params.n,
                          broken=lhs <= params.n)


def audit_liga(params: LigaParams) -> FeasibilityRow:
    """Break condition k + 2t + zeta*(t+1) <= n with t = t_pub."""
    t = params.t_pub
    lhs = params.k + 2 * t + params.zeta * (t + 1)
    return FeasibilityRow(params=params, lhs=lhs, threshold=params.n,
                          broken=lhs <= params.n)


def audit(params: SchemeParams) -> FeasibilityRow:
    if isinstance(params, RamessesParams):
        return audit_ramesses(params)
    return audit_liga(params)


# ---------------------------------------------------------------------------
# attack reports


@dataclass
class AttackReport:
    success: bool
    recovered: object = None
    witnesses: dict = field(default_factory=dict)
    retries: int = 0
    elapsed: float = 0.0
    failed_step: Optional[str] = None


# ---------------------------------------------------------------------------
# RAMESSES


def attack_ramesses(scheme: Ramesses, public: QPoly, ciphertext: QPoly,
                    force: bool = False) -> AttackReport:
    """Recover the plaintext subspace from a RAMESSES ciphertext."""
    p = scheme.params
    started = time.perf_counter()
    row = audit_ramesses(p)
    if not (row.broken or force):
        raise AttackFailure("audit", f"parameters not broken: lhs {row.lhs} > n {row.threshold}")
    F = scheme.F
    t_basis = [public.shift_right(j) for j in range(p.ell + 1)]
    spec = SupercodeSpec.build(F, scheme.g, p.k + p.ell, t_basis, p.t)
    word = ciphertext.evaluate_vec(scheme.g)
    try:
        result = supercode.decode_right(spec, word, check_feasibility=False)
    except DecodingFailure as exc:
        return AttackReport(success=False, retries=0,
                            elapsed=time.perf_counter() - started,
                            failed_step="supercode-decode",
                            witnesses={"reason": str(exc)})
    error_poly = spec.code.interpolator().interpolate(result.error)
    recovered = SubspacePlaintext.from_rows(p.q, error_poly.matrix_rep(), p.m)
    success = recovered.dim == p.t
    return AttackReport(
        success=success,
        recovered=recovered if success else None,
        witnesses={
            "annihilator": result.annihilator,
            "error_support": result.error_support,
            "error": result.error,
        },
        retries=0,
        elapsed=time.perf_counter() - started,
        failed_step=None if success else "subspace-dimension",
    )


# ---------------------------------------------------------------------------
# LIGA, step by step


def public_supercode_rows(scheme: Liga, k_pub: Sequence, gammas: Sequence) -> List[list]:
    """The vectors Tr(gamma_i k_pub) spanning the public part of the supercode."""
    return [scheme.trace_public_multiple(k_pub, g) for g in gammas]


def liga_step1_strip_error(scheme: Liga, k_pub: Sequence, ciphertext: Sequence,
                           rng: random.Random, retries: int = 16
                           ) -> Tuple[list, list, list, int, QPoly]:
    """Remove the rank-t_pub error: returns (corrected, error, support, tries, annihilator).

    Each attempt draws fresh independent gammas; failure of the public
    supercode to cover the hidden directions has probability O(q^-m), so
    the retry cap is cosmetic.
    """
    p = scheme.params
    if p.n != p.m:
        raise AttackFailure("step1", "supercode decoding requires n = m")
    mid = scheme.mid
    last_reason = ""
    for attempt in range(retries):
        gammas = sample_qm_independent(scheme.top, p.zeta, rng)
        interp = scheme.code.interpolator()
        t_basis = [interp.interpolate(row)
                   for row in public_supercode_rows(scheme, k_pub, gammas)]
        spec = SupercodeSpec(code=scheme.code, t_basis=[b.reduce_mod() for b in t_basis],
                             t=p.t_pub)
        try:
            result = supercode.decode_left(spec, list(ciphertext), check_feasibility=False)
        except DecodingFailure as exc:
            last_reason = str(exc)
            continue
        return (result.corrected, result.error, result.error_support,
                attempt + 1, result.annihilator)
    raise AttackFailure("step1", f"retry cap exhausted: {last_reason}")


def liga_step2_affine_space(scheme: Liga, k_pub: Sequence, corrected: Sequence
                            ) -> Tuple[tuple, List[tuple]]:
    """The affine space {beta : corrected - Tr(beta k_pub) in the Gabidulin code}.

    Returns a point and a basis of the direction space, both as top-field
    elements in the power-basis parametrization.
    """
    p = scheme.params
    mid = scheme.mid
    parity = scheme.code.parity_check()
    traced = [scheme.trace_public_multiple(k_pub, b) for b in scheme.top.basis()]
    mat = []
    rhs = linalg.matvec(mid, parity, list(corrected))
    for h_row in parity:
        mat.append([_dot(mid, h_row, traced[j]) for j in range(p.u)])
    sol, kernel = linalg.solve_affine(mid, mat, rhs)
    if sol is None:
        raise AttackFailure("step2", "no mask candidate: step 1 output is off the code")
    return tuple(sol), [tuple(v) for v in kernel]


def _dot(F, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        if a != F.zero and b != F.zero:
            acc = F.add(acc, F.mul(a, b))
    return acc


def liga_step3_recover_message(scheme: Liga, k_pub: Sequence, corrected: Sequence,
                               affine: Tuple[tuple, List[tuple]]) -> list:
    """Solve the zero-tail system: the message part is unique."""
    p = scheme.params
    mid = scheme.mid
    point, directions = affine
    base = _strip_mask(scheme, k_pub, corrected, point)
    deltas = []
    for d in directions:
        shifted = _strip_mask(scheme, k_pub, corrected, scheme.top.add(point, d))
        deltas.append([mid.sub(b, s) for b, s in zip(base, shifted)])
    rows, pivots = linalg.rref(mid, deltas) if deltas else ([], [])
    basis = [rows[i] for i in range(len(pivots))]
    tail = [base[p.k - p.u + r] for r in range(p.u)]
    mat = [[basis[i][p.k - p.u + r] for i in range(len(basis))] for r in range(p.u)]
    sol, _ = linalg.solve_affine(mid, mat, tail)
    if sol is None:
        raise AttackFailure("step3", "zero-tail system is inconsistent")
    message = list(base)
    for coeff, vec in zip(sol, basis):
        if coeff != mid.zero:
            message = [mid.sub(mc, mid.mul(coeff, vc)) for mc, vc in zip(message, vec)]
    if any(c != mid.zero for c in message[p.k - p.u:]):
        raise AttackFailure("step3", "recovered message has a nonzero tail")
    return message


def _strip_mask(scheme: Liga, k_pub, corrected, beta) -> list:
    """unencode(corrected - Tr(beta k_pub)); lies in message + F by step 2."""
    mid = scheme.mid
    masked = scheme.trace_public_multiple(k_pub, beta)
    word = [mid.sub(c, t) for c, t in zip(corrected, masked)]
    try:
        return scheme.code.unencode(word)
    except Exception as exc:
        raise AttackFailure("step3", f"stripped word left the code: {exc}")


def attack_liga(scheme: Liga, k_pub: Sequence, ciphertext: Sequence,
                rng: random.Random, retries: int = 16,
                force: bool = False) -> AttackReport:
    """Full LIGA message recovery: steps 1-3 composed."""
    p = scheme.params
    started = time.perf_counter()
    row = audit_liga(p)
    if not (row.broken or force):
        raise AttackFailure("audit", f"parameters not broken: lhs {row.lhs} > n {row.threshold}")
    tries = 0
    try:
        corrected, error, support, tries, annihilator = liga_step1_strip_error(
            scheme, k_pub, ciphertext, rng, retries=retries)
        affine = liga_step2_affine_space(scheme, k_pub, corrected)
        message = liga_step3_recover_message(scheme, k_pub, corrected, affine)
    except AttackFailure as exc:
        return AttackReport(success=False, retries=tries,
                            elapsed=time.perf_counter() - started,
                            failed_step=exc.step, witnesses={"reason": str(exc)})
    success = all(c == scheme.mid.zero for c in message[p.k - p.u:])
    return AttackReport(
        success=success,
        recovered=message if success else None,
        witnesses={
            "annihilator": annihilator,
            "error": error,
            "error_support": support,
            "affine_point": affine[0],
            "affine_directions": affine[1],
        },
        retries=tries,
        elapsed=time.perf_counter() - started,
        failed_step=None if success else "tail-check",
    )


def liga_distinguish(scheme: Liga, k_pub: Sequence, candidate: Sequence,
                     rng: random.Random, retries: int = 4) -> bool:
    """Ciphertext-vs-random distinguisher: does step 1 decoding succeed?"""
    try:
        liga_step1_strip_error(scheme, k_pub, candidate, rng, retries=retries)
        return True
    except AttackFailure:
        return False


# ---------------------------------------------------------------------------
# plant-and-recover harness (shared by the CLI and the benchmark scripts)


@dataclass
class TrialRecord:
    name: str
    trial: int
    seed: int
    elapsed_ms: float
    success: bool
    retries: int = 0
    failed_step: Optional[str] = None


def derive_seed(base: int, index: int) -> int:
    return base * 1_000_003 + index


def run_attack_trials(params: SchemeParams, trials: int, seed: int,
                      name: str = "inline") -> List[TrialRecord]:
    """Generate fresh instances and attack them, one record per trial."""
    records = []
    if isinstance(params, RamessesParams):
        scheme = Ramesses(params)
        for i in range(trials):
            rng = random.Random(derive_seed(seed, i))
            keys = scheme.keygen(rng)
            plaintext = scheme.random_plaintext(rng)
            ciphertext = scheme.encrypt(keys.public, plaintext, rng)
            started = time.perf_counter()
            report = attack_ramesses(scheme, keys.public, ciphertext)
            elapsed = (time.perf_counter() - started) * 1000.0
            ok = report.success and report.recovered == plaintext
            records.append(TrialRecord(name=name, trial=i, seed=derive_seed(seed, i),
                                       elapsed_ms=elapsed, success=ok,
                                       retries=report.retries,
                                       failed_step=report.failed_step))
    else:
        scheme = Liga(params)
        for i in range(trials):
            rng = random.Random(derive_seed(seed, i))
            keys = scheme.keygen(rng)
            message = scheme.random_message(rng)
            ciphertext = scheme.encrypt(keys.public, message, rng)
            started = time.perf_counter()
            report = attack_liga(scheme, keys.public, ciphertext, rng)
            elapsed = (time.perf_counter() - started) * 1000.0
            ok = report.success and report.recovered == message
            records.append(TrialRecord(name=name, trial=i, seed=derive_seed(seed, i),
                                       elapsed_ms=elapsed, success=ok,
                                       retries=report.retries,
                                       failed_step=report.failed_step))
    return records
