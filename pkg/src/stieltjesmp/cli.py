"""Command-line front end: JSON in, JSON out.

Verbs: classify, params, generate, resolvent, solve, extremal, recover,
hausdorff, verify.  Sequences travel as {"q", "alpha", "side", "moments"}
documents with complex entries encoded as [re, im]; matrices are row-major
nested lists.  Exit codes: 0 ok, 2 negative classification, 3 precondition
violation, 4 internal inconsistency, 64 usage/parse error.
"""

import argparse
import json
import sys

import numpy as np

from .linalg import is_psd
from .moments import LEFT, RIGHT, MomentSequence, classify
from .params import (
    canonical_hankel_param, ds_param, favard_pair, random_stieltjes_pd_sequence,
    seq_from_ds, stieltjes_param,
)
from .resolvent import factorize_u, j_inner_check, resolvent_u, u_from_quadruple_polynomials
from .solutions import (
    CONSTANT, SCHUR_CONSTANT, SingularDenominator, StieltjesPair, difference_inverse,
    extremal, lft_solve, weyl_interval,
)
from .measures import hausdorff_solvable, measure_moments, recover_max, recover_min

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_PRECONDITION = 3
EXIT_INCONSISTENT = 4
EXIT_USAGE = 64


class UsageError(Exception):
    pass


def _encode_complex(c) -> list:
    return [float(np.real(c)), float(np.imag(c))]


def encode_matrix(mat) -> list:
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    return [[_encode_complex(v) for v in row] for row in mat]


def _decode_entry(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise UsageError(f"bad complex entry: {v!r}")


def decode_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise UsageError("matrix must be a nested list")
    return np.array([[_decode_entry(v) for v in row] for row in rows], dtype=complex)


def decode_sequence(doc: dict) -> MomentSequence:
    try:
        q = int(doc["q"])
        alpha = float(doc["alpha"])
        side = str(doc["side"])
        mats = [decode_matrix(m) for m in doc["moments"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed sequence document: {exc}")
    if side not in (RIGHT, LEFT):
        raise UsageError(f"side must be 'right' or 'left', got {side!r}")
    if not mats:
        raise UsageError("moments must be non-empty")
    for m in mats:
        if m.shape != (q, q):
            raise UsageError(f"moment of shape {m.shape}, expected ({q},{q})")
    return MomentSequence(q=q, alpha=alpha, side=side, moments=tuple(mats))


def encode_sequence(seq: MomentSequence) -> dict:
    return {"q": seq.q, "alpha": seq.alpha, "side": seq.side,
            "moments": [encode_matrix(m) for m in seq.moments]}


def _load_doc(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}")


def _emit(payload: dict):
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_classify(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    cls = classify(seq)
    _emit({"hankel": cls.hankel, "stieltjes": cls.stieltjes, "side": cls.side})
    print(f"hankel: {cls.hankel}", file=sys.stderr)
    print(f"stieltjes: {cls.stieltjes}", file=sys.stderr)
    return EXIT_OK if cls.stieltjes in ("PD", "NND", "NND_EXTENDABLE") else EXIT_NEGATIVE


def cmd_params(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    if args.kind == "q":
        p = stieltjes_param(seq)
        _emit({"kind": "q", "values": [encode_matrix(v) for v in p.values]})
    elif args.kind == "hankel":
        p = canonical_hankel_param(seq)
        _emit({"kind": "hankel", "c": [encode_matrix(v) for v in p.c],
               "d": [encode_matrix(v) for v in p.d]})
    elif args.kind == "favard":
        p = favard_pair(seq)
        _emit({"kind": "favard", "a": [encode_matrix(v) for v in p.a],
               "b": [encode_matrix(v) for v in p.b]})
    else:
        p = ds_param(seq)
        _emit({"kind": "ds", "l": [encode_matrix(v) for v in p.l],
               "m": [encode_matrix(v) for v in p.m]})
    return EXIT_OK


def cmd_generate(args) -> int:
    seq = random_stieltjes_pd_sequence(q=args.q, kappa=args.m, alpha=args.alpha,
                                       side=args.side, seed=args.seed)
    _emit(encode_sequence(seq))
    return EXIT_OK


def cmd_resolvent(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    m = seq.kappa if args.m is None else args.m
    u = resolvent_u(seq, m)
    out = {"m": m, "coefficients": [encode_matrix(c) for c in u.poly.coeffs]}
    if args.factor:
        chain = factorize_u(seq, m)
        out["factors"] = [[encode_matrix(c) for c in w.coeffs] for w in chain.factors]
    _emit(out)
    return EXIT_OK


def _pair_from_doc(doc: dict, side: str) -> StieltjesPair:
    kind = doc.get("kind", CONSTANT)
    try:
        if kind == SCHUR_CONSTANT:
            return StieltjesPair(kind=SCHUR_CONSTANT, side=side, f=decode_matrix(doc["f"]))
        return StieltjesPair(kind=CONSTANT, side=side,
                             phi=decode_matrix(doc["phi"]), psi=decode_matrix(doc["psi"]))
    except KeyError as exc:
        raise UsageError(f"pair document missing {exc}")


def cmd_solve(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    pair = _pair_from_doc(_load_doc(args.pair), seq.side)
    u = resolvent_u(seq)
    points = [_parse_complex(t) for t in args.at.split(",")]
    values = []
    for z in points:
        values.append({"z": _encode_complex(z), "s": encode_matrix(lft_solve(u, pair, z))})
    _emit({"values": values})
    return EXIT_OK


def cmd_extremal(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    if args.at is None:
        x = seq.alpha - 1.0 if seq.side == RIGHT else seq.alpha + 1.0
    else:
        x = float(args.at)
    s_min, s_max = extremal(seq)
    _emit({"x": x, "s_min": encode_matrix(s_min(x)), "s_max": encode_matrix(s_max(x))})
    return EXIT_OK


def cmd_recover(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    mu = recover_min(seq) if args.which == "min" else recover_max(seq)
    _emit({"atoms": list(mu.atoms), "masses": [encode_matrix(m) for m in mu.masses],
           "side": mu.support_side})
    return EXIT_OK


def cmd_hausdorff(args) -> int:
    seq = decode_sequence(_load_doc(args.file))
    report = hausdorff_solvable(seq, seq.alpha, args.beta)
    _emit({"solvable": report.solvable, "parity": report.parity,
           "conditions": report.conditions, "one_sided": report.one_sided})
    print(str(report), file=sys.stderr)
    return EXIT_OK if report.solvable else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    """Full invariant sweep over one sequence; exit 0 iff everything holds."""
    seq = decode_sequence(_load_doc(args.file))
    cls = classify(seq)
    checks = {}
    rng = np.random.default_rng(0)

    checks["stieltjes_pd"] = cls.stieltjes == "PD"
    if not checks["stieltjes_pd"]:
        _emit({"checks": checks, "passed": False})
        return EXIT_NEGATIVE

    p = stieltjes_param(seq)
    from .params import seq_from_stieltjes_param
    s2 = seq_from_stieltjes_param(p)
    scale = max(np.linalg.norm(m) for m in seq.moments)
    checks["q_roundtrip"] = max(np.abs(a - b).max() for a, b in
                                zip(seq.moments, s2.moments)) <= 1e-9 * scale
    d = ds_param(seq)
    s3 = seq_from_ds(d)
    checks["ds_roundtrip"] = max(np.abs(a - b).max() for a, b in
                                 zip(seq.moments, s3.moments)) <= 1e-9 * scale

    u = resolvent_u(seq)
    chain = factorize_u(seq)
    uq = u_from_quadruple_polynomials(seq, seq.kappa)
    det_ref = np.linalg.det(u(seq.alpha))
    ok_det = ok_chain = ok_cross = ok_jsym = True
    for _ in range(20):
        z = complex(rng.standard_normal(), rng.standard_normal())
        uz = u(z)
        n = np.linalg.norm(uz)
        ok_det &= abs(np.linalg.det(uz) - det_ref) <= 1e-10 * (1 + abs(det_ref))
        ok_chain &= np.linalg.norm(chain(z) - uz) <= 1e-9 * n
        ok_cross &= np.linalg.norm(uq(z) - uz) <= 1e-9 * n
        ok_jsym &= np.linalg.norm(np.linalg.inv(uz) - u.inverse_at(z)) \
            <= 1e-8 * np.linalg.norm(np.linalg.inv(uz))
    checks["det_constant"] = bool(ok_det)
    checks["factor_chain"] = bool(ok_chain)
    checks["quadruple_route"] = bool(ok_cross)
    checks["j_symmetry"] = bool(ok_jsym)

    samples = [complex(rng.standard_normal(), abs(rng.standard_normal()) + 0.1)
               for _ in range(10)] + [rng.standard_normal() for _ in range(5)]
    checks["j_inner"] = j_inner_check(u, samples, seq.q).passed

    if seq.kappa >= 1:
        x = seq.alpha - 1.0 if seq.side == RIGHT else seq.alpha + 1.0
        iv = weyl_interval(seq, seq.kappa, x)
        checks["weyl_gap_pd"] = is_psd(iv.gap)
        gap_inv = difference_inverse(seq, seq.kappa, x)
        checks["difference_inverse"] = np.linalg.norm(
            np.linalg.inv(iv.gap) - gap_inv) <= 1e-7 * (1 + np.linalg.norm(gap_inv))
        mu_min, mu_max = recover_min(seq), recover_max(seq)
        mom_min = measure_moments(mu_min, seq.kappa)
        mom_max = measure_moments(mu_max, seq.kappa)
        ok_mom = True
        for j in range(seq.kappa):
            ok_mom &= np.linalg.norm(mom_min[j] - seq[j]) <= 1e-7 * (1 + np.linalg.norm(seq[j]))
            ok_mom &= np.linalg.norm(mom_max[j] - seq[j]) <= 1e-7 * (1 + np.linalg.norm(seq[j]))
        checks["measure_moments"] = bool(ok_mom)

    checks = {k: bool(v) for k, v in checks.items()}
    passed = all(checks.values())
    _emit({"checks": checks, "passed": passed})
    return EXIT_OK if passed else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stieltjesmp",
                                     description="matricial alpha-Stieltjes moment problems")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="definiteness classes of a sequence")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("params", help="one of the four parametrizations")
    p.add_argument("file")
    p.add_argument("--kind", choices=["q", "hankel", "favard", "ds"], default="q")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("generate", help="seeded random Stieltjes-PD sequence")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--side", choices=[RIGHT, LEFT], default=RIGHT)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("resolvent", help="2q x 2q resolvent polynomial coefficients")
    p.add_argument("file")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--factor", action="store_true")
    p.set_defaults(func=cmd_resolvent)

    p = sub.add_parser("solve", help="linear-fractional transform of a pair")
    p.add_argument("file")
    p.add_argument("--pair", required=True)
    p.add_argument("--at", required=True, help="comma-separated points a+bi")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("extremal", help="extremal solution values at a point")
    p.add_argument("file")
    p.add_argument("--at", default=None)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("recover", help="molecular measure of an extremal solution")
    p.add_argument("file")
    p.add_argument("--which", choices=["min", "max"], default="min")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("hausdorff", help="two-endpoint solvability check")
    p.add_argument("file")
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("verify", help="full invariant suite on one sequence")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularDenominator as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (AssertionError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
