"""Command-line front end: parameter audits, scheme operations, attacks, benches.

Exit codes: 0 on success, 1 on an operational failure (decoding or attack),
2 on usage errors.  Every command is deterministic given --seed.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from typing import List, Optional

from . import attacks
from .artifacts import (
    Artifact,
    base_matrix_from_bytes,
    base_matrix_to_bytes,
    mid_vec_from_bytes,
    mid_vec_to_bytes,
    pack_digits,
    read_artifact,
    top_vec_from_bytes,
    top_vec_to_bytes,
    unpack_digits,
    write_artifact,
)
from .errors import AttackFailure, BadParameters, DecodingFailure, RankDrop
from .params import REGISTRY, LigaParams, RamessesParams, SchemeParams, scheme_of
from .qpoly import QPoly
from .schemes import Liga, LigaKeyPair, LigaSecretKey, Ramesses, SubspacePlaintext


def _parse_inline(scheme: str, text: str) -> SchemeParams:
    kv = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        if not value:
            raise BadParameters(f"bad inline parameter {part!r}")
        kv[key.strip()] = int(value)
    if scheme == "ramesses":
        return RamessesParams(m=kv["m"], k=kv["k"], w=kv["w"], ell=kv["ell"],
                              t=kv["t"], q=kv.get("q", 2))
    if scheme == "liga":
        return LigaParams(q=kv.get("q", 2), n=kv["n"], m=kv["m"], k=kv["k"],
                          w=kv["w"], u=kv["u"], zeta=kv["zeta"])
    raise BadParameters("inline parameters need --scheme ramesses|liga")


def _resolve_params(args) -> SchemeParams:
    spec = args.params
    if "=" in spec:
        if not getattr(args, "scheme", None):
            raise BadParameters("inline parameters require --scheme")
        return _parse_inline(args.scheme, spec)
    params = REGISTRY.get(spec)
    if params is None:
        raise BadParameters(f"unknown parameter set {spec!r}")
    if getattr(args, "scheme", None) and scheme_of(params) != args.scheme:
        raise BadParameters(f"{spec} is a {scheme_of(params)} set, not {args.scheme}")
    return params


# ---------------------------------------------------------------------------
# params


def cmd_params(args) -> int:
    if args.action == "list":
        for name, params in REGISTRY.items():
            row = attacks.audit(params)
            print(f"{name:18s} {scheme_of(params):8s} {params} "
                  f"lhs={row.lhs} n={row.threshold} broken={str(row.broken).lower()}")
        return 0
    params = REGISTRY.get(args.set or "")
    if params is None:
        print(f"unknown parameter set {args.set!r}", file=sys.stderr)
        return 2
    row = attacks.audit(params)
    print(f"lhs={row.lhs} n={row.threshold} broken={str(row.broken).lower()}")
    try:
        params.validate()
    except BadParameters as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# scheme operations


def _ramesses_from_artifact(art: Artifact) -> Ramesses:
    return Ramesses(art.params, mid_field=art.tower().mid)


def _liga_from_artifact(art: Artifact) -> Liga:
    return Liga(art.params, tower=art.tower())


def cmd_keygen(args) -> int:
    params = _resolve_params(args)
    scheme_name = scheme_of(params)
    rng = random.Random(args.seed)
    set_name = args.params if "=" not in args.params else None
    if scheme_name == "ramesses":
        scheme = Ramesses(params)
        keys = scheme.keygen(rng)
        write_artifact(args.secret_out, "secret-key", "ramesses", params, scheme.F,
                       {"secret": mid_vec_to_bytes(scheme.F, keys.secret.padded(params.m))},
                       param_set=set_name)
        write_artifact(args.public_out, "public-key", "ramesses", params, scheme.F,
                       {"public": mid_vec_to_bytes(scheme.F, keys.public.padded(params.m))},
                       param_set=set_name)
    else:
        scheme = Liga(params)
        keys = scheme.keygen(rng)
        write_artifact(args.secret_out, "secret-key", "liga", params, scheme.tower,
                       {"x": top_vec_to_bytes(scheme.top, keys.secret.x),
                        "z": top_vec_to_bytes(scheme.top, keys.secret.z),
                        "p": base_matrix_to_bytes(params.q, keys.secret.P, params.n)},
                       param_set=set_name)
        write_artifact(args.public_out, "public-key", "liga", params, scheme.tower,
                       {"kpub": top_vec_to_bytes(scheme.top, keys.public)},
                       param_set=set_name)
    print(f"wrote {args.secret_out} and {args.public_out}")
    return 0


def _load_ramesses_poly(scheme: Ramesses, art: Artifact, field_name: str) -> QPoly:
    coeffs = mid_vec_from_bytes(scheme.F, art.fields[field_name], scheme.params.m)
    return QPoly(scheme.F, coeffs)


def _check_match(a: Artifact, b: Artifact) -> None:
    if a.scheme != b.scheme or a.params != b.params:
        raise BadParameters("artifacts disagree on scheme or parameters")


def cmd_encrypt(args) -> int:
    art = read_artifact(args.public)
    if art.kind != "public-key":
        raise BadParameters(f"{args.public} is not a public key")
    rng = random.Random(args.seed)
    if art.scheme == "ramesses":
        scheme = _ramesses_from_artifact(art)
        public = _load_ramesses_poly(scheme, art, "public")
        params = scheme.params
        if args.plaintext:
            pt_art = read_artifact(args.plaintext)
            _check_match(art, pt_art)
            rows = base_matrix_from_bytes(params.q, pt_art.fields["rows"], params.t, params.m)
            digit_rows = [[(r >> j) & 1 for j in range(params.m)] if isinstance(r, int)
                          else r for r in rows]
            plaintext = SubspacePlaintext.from_rows(params.q, digit_rows, params.m)
        else:
            plaintext = scheme.random_plaintext(rng)
        if args.plaintext_out:
            _write_ramesses_plaintext(args.plaintext_out, scheme, plaintext, art.param_set)
        ciphertext = scheme.encrypt(public, plaintext, rng)
        write_artifact(args.out, "ciphertext", "ramesses", params, scheme.F,
                       {"poly": mid_vec_to_bytes(scheme.F, ciphertext.padded(params.m))},
                       param_set=art.param_set)
    else:
        scheme = _liga_from_artifact(art)
        params = scheme.params
        k_pub = top_vec_from_bytes(scheme.top, art.fields["kpub"], params.n)
        if args.plaintext:
            pt_art = read_artifact(args.plaintext)
            _check_match(art, pt_art)
            message = mid_vec_from_bytes(scheme.mid, pt_art.fields["message"], params.k)
        else:
            message = scheme.random_message(rng)
        if args.plaintext_out:
            _write_liga_plaintext(args.plaintext_out, scheme, message, art.param_set)
        ciphertext = scheme.encrypt(k_pub, message, rng)
        write_artifact(args.out, "ciphertext", "liga", params, scheme.tower,
                       {"word": mid_vec_to_bytes(scheme.mid, ciphertext)},
                       param_set=art.param_set)
    print(f"wrote {args.out}")
    return 0


def _write_ramesses_plaintext(path: str, scheme: Ramesses,
                              plaintext: SubspacePlaintext, set_name) -> None:
    params = scheme.params
    write_artifact(path, "plaintext", "ramesses", params, scheme.F,
                   {"rows": base_matrix_to_bytes(
                       params.q, [list(r) for r in plaintext.rows], params.m)},
                   param_set=set_name)


def _write_liga_plaintext(path: str, scheme: Liga, message, set_name) -> None:
    write_artifact(path, "plaintext", "liga", scheme.params, scheme.tower,
                   {"message": mid_vec_to_bytes(scheme.mid, message)},
                   param_set=set_name)


def cmd_decrypt(args) -> int:
    sk_art = read_artifact(args.secret)
    ct_art = read_artifact(args.ciphertext)
    if sk_art.kind != "secret-key" or ct_art.kind != "ciphertext":
        raise BadParameters("need a secret key and a ciphertext")
    _check_match(sk_art, ct_art)
    if sk_art.scheme == "ramesses":
        scheme = _ramesses_from_artifact(sk_art)
        secret = _load_ramesses_poly(scheme, sk_art, "secret")
        ciphertext = _load_ramesses_poly(scheme, ct_art, "poly")
        try:
            plaintext = scheme.decrypt(secret, ciphertext)
        except (DecodingFailure, RankDrop) as exc:
            print(f"decryption failed: {exc}", file=sys.stderr)
            return 1
        _write_ramesses_plaintext(args.out, scheme, plaintext, sk_art.param_set)
    else:
        scheme = _liga_from_artifact(sk_art)
        params = scheme.params
        secret = LigaSecretKey(
            x=tuple(top_vec_from_bytes(scheme.top, sk_art.fields["x"], params.k)),
            z=tuple(top_vec_from_bytes(scheme.top, sk_art.fields["z"], params.n)),
            P=tuple(base_matrix_from_bytes(params.q, sk_art.fields["p"],
                                           params.n, params.n)),
        )
        word = mid_vec_from_bytes(scheme.mid, ct_art.fields["word"], params.n)
        try:
            message = scheme.decrypt(secret, word)
        except DecodingFailure as exc:
            print(f"decryption failed: {exc}", file=sys.stderr)
            return 1
        _write_liga_plaintext(args.out, scheme, message, sk_art.param_set)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# attacks and benches


def _write_report(path: Optional[str], records: List[attacks.TrialRecord]) -> None:
    if not path:
        return
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["instance", "success", "retries", "elapsed_ms", "failed_step"])
        for rec in records:
            writer.writerow([rec.trial, str(rec.success).lower(), rec.retries,
                             f"{rec.elapsed_ms:.1f}", rec.failed_step or ""])


def cmd_attack(args) -> int:
    if args.public and args.ciphertext:
        return _attack_files(args)
    if args.params and args.trials:
        params = _resolve_params(args)
        row = attacks.audit(params)
        if not (row.broken or args.force):
            print(f"refusing: parameters not broken (lhs={row.lhs} > n={row.threshold}); "
                  f"use --force to override", file=sys.stderr)
            return 1
        records = attacks.run_attack_trials(params, args.trials, args.seed,
                                            name=args.params)
        _write_report(args.report, records)
        for rec in records:
            print(f"instance {rec.trial}: success={str(rec.success).lower()} "
                  f"retries={rec.retries} elapsed_ms={rec.elapsed_ms:.1f}")
        return 0 if all(r.success for r in records) else 1
    print("attack needs either --public/--ciphertext files or --params/--trials",
          file=sys.stderr)
    return 2


def _attack_files(args) -> int:
    pk_art = read_artifact(args.public)
    ct_art = read_artifact(args.ciphertext)
    if pk_art.kind != "public-key" or ct_art.kind != "ciphertext":
        raise BadParameters("need a public key and a ciphertext")
    _check_match(pk_art, ct_art)
    row = attacks.audit(pk_art.params)
    if not (row.broken or args.force):
        print(f"refusing: parameters not broken (lhs={row.lhs} > n={row.threshold}); "
              f"use --force to override", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    if pk_art.scheme == "ramesses":
        scheme = _ramesses_from_artifact(pk_art)
        public = _load_ramesses_poly(scheme, pk_art, "public")
        ciphertext = _load_ramesses_poly(scheme, ct_art, "poly")
        report = attacks.attack_ramesses(scheme, public, ciphertext, force=args.force)
        if report.success and args.out:
            _write_ramesses_plaintext(args.out, scheme, report.recovered, pk_art.param_set)
    else:
        scheme = _liga_from_artifact(pk_art)
        k_pub = top_vec_from_bytes(scheme.top, pk_art.fields["kpub"], scheme.params.n)
        word = mid_vec_from_bytes(scheme.mid, ct_art.fields["word"], scheme.params.n)
        report = attacks.attack_liga(scheme, k_pub, word, rng, force=args.force)
        if report.success and args.out:
            _write_liga_plaintext(args.out, scheme, report.recovered, pk_art.param_set)
    record = attacks.TrialRecord(name=pk_art.param_set or "file", trial=0,
                                 seed=args.seed, elapsed_ms=report.elapsed * 1000.0,
                                 success=report.success, retries=report.retries,
                                 failed_step=report.failed_step)
    _write_report(args.report, [record])
    print(f"success={str(report.success).lower()} retries={report.retries} "
          f"elapsed_ms={report.elapsed * 1000.0:.1f}"
          + (f" failed_step={report.failed_step}" if report.failed_step else ""))
    if report.success and args.out:
        print(f"wrote {args.out}")
    return 0 if report.success else 1


def cmd_bench(args) -> int:
    params = _resolve_params(args)
    records = attacks.run_attack_trials(params, args.trials, args.seed, name=args.params)
    rows = [[rec.name, rec.trial, rec.seed, f"{rec.elapsed_ms:.1f}",
             str(rec.success).lower()] for rec in records]
    mean = sum(rec.elapsed_ms for rec in records) / max(1, len(records))
    rate = sum(rec.success for rec in records) / max(1, len(records))
    summary = [args.params, "mean", "", f"{mean:.1f}", f"{rate:.2f}"]
    if args.out:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["set", "trial", "seed", "elapsed_ms", "success"])
            writer.writerows(rows)
            writer.writerow(summary)
    for row in rows:
        print(",".join(str(x) for x in row))
    print(",".join(str(x) for x in summary))
    return 0 if all(rec.success for rec in records) else 1


# ---------------------------------------------------------------------------
# selftest


def cmd_selftest(args) -> int:
    failures = 0
    for name, fn in (("qpoly-laws", _selftest_qpoly),
                     ("decoder-roundtrips", _selftest_decoders),
                     ("attack-plant-recover", _selftest_attacks)):
        started = time.perf_counter()
        try:
            fn()
            print(f"PASS {name} ({time.perf_counter() - started:.1f}s)")
        except Exception as exc:  # noqa: BLE001 - report and continue
            print(f"FAIL {name}: {exc}")
            failures += 1
    return 1 if failures else 0


def _selftest_qpoly() -> None:
    from .fields import BinaryExtField
    from .qpoly import left_annihilator, left_divide, right_annihilator, right_divide

    F = BinaryExtField(12)
    rng = random.Random(2024)
    for _ in range(50):
        a = QPoly(F, [F.rand(rng) for _ in range(rng.randrange(1, 6))])
        b = QPoly(F, [F.rand(rng) for _ in range(rng.randrange(1, 6))])
        assert a.adjoint().adjoint() == a.reduce_mod()
        assert a.compose_mod(b).adjoint() == b.adjoint().compose_mod(a.adjoint())
        assert a.rank() == a.adjoint().rank()
        if not b.is_zero:
            quot, rem = left_divide(a, b)
            assert b.compose(quot) + rem == a
            quot, rem = right_divide(a, b)
            assert quot.compose(b) + rem == a
        if not a.is_zero:
            assert a.compose_mod(right_annihilator(a)).is_zero
            assert left_annihilator(a).compose_mod(a).is_zero


def _selftest_decoders() -> None:
    from .fields import BinaryExtField
    from .gabidulin import GabidulinCode, sample_error

    F = BinaryExtField(16)
    rng = random.Random(2025)
    code = GabidulinCode(F, F.basis(), 4)
    for _ in range(15):
        message = [F.rand(rng) for _ in range(4)]
        error = sample_error(F, 16, rng.randrange(0, code.radius + 1), rng)
        word = [F.add(a, b) for a, b in zip(code.encode(message), error)]
        left = code.decode_left(word)
        right = code.decode_right(word)
        assert left.message == right.message == message
        assert left.error == right.error == error


def _selftest_attacks() -> None:
    for name, trials in (("ramesses-ci-32", 2), ("liga-ci-40", 2)):
        records = attacks.run_attack_trials(REGISTRY[name], trials, 99, name=name)
        assert all(rec.success for rec in records), f"{name} attack failed"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranklab",
        description="Rank-metric workbench: Gabidulin decoding, RAMESSES/LIGA, "
                    "and message-recovery attacks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="list or audit parameter sets")
    p.add_argument("action", choices=["list", "check"])
    p.add_argument("set", nargs="?", help="parameter set name (for check)")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", choices=["ramesses", "liga"])
    p.add_argument("--params", required=True, help="set name or inline k=v,...")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--secret-out", required=True)
    p.add_argument("--public-out", required=True)
    p.set_defaults(fn=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a plaintext file (or a random one)")
    p.add_argument("--public", required=True)
    p.add_argument("--plaintext", help="plaintext artifact; omit for a random one")
    p.add_argument("--plaintext-out", help="where to store the plaintext used")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--secret", required=True)
    p.add_argument("--ciphertext", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_decrypt)

    p = sub.add_parser("attack", help="message-recovery attack")
    p.add_argument("--public")
    p.add_argument("--ciphertext")
    p.add_argument("--out", help="recovered plaintext artifact")
    p.add_argument("--report", help="CSV report path")
    p.add_argument("--scheme", choices=["ramesses", "liga"])
    p.add_argument("--params", help="set name or inline (trial mode)")
    p.add_argument("--trials", type=int, help="plant-and-recover trial count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true",
                   help="attack even when the audit says the set is not broken")
    p.set_defaults(fn=cmd_attack)

    p = sub.add_parser("bench", help="attack timing harness")
    p.add_argument("--scheme", choices=["ramesses", "liga"])
    p.add_argument("--params", required=True)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("selftest", help="run the fast property-suite subsets")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BadParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DecodingFailure, RankDrop, AttackFailure) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
