"""Command-line surface over JSON documents.

Exit codes: 0 success, 2 a mathematical criterion failed (witness in the JSON
output), 3 parse or schema error, 4 numerical failure.  Results go to --out
(default stdout); a one-line human summary goes to stderr.  Floats are
serialized with shortest-roundtrip repr, so documents reconstruct exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import algebra, ideals, matalg, serialize, weights
from .coeffseq import EPSeq
from .errors import (HadalgError, MathConditionError, NotInvertible,
                     NumericalError, SchemaError)

EXIT_OK = 0
EXIT_MATH = 2
EXIT_SCHEMA = 3
EXIT_NUMERIC = 4


def _load_doc(args) -> object:
    if args.json is None:
        raise SchemaError("this subcommand needs an input document (--json)")
    if args.json == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.json) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {args.json}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"input document needs a {key!r} field")
    return doc[key]


def _parse_z(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise SchemaError(f"cannot parse point {text!r}") from exc


def _c_json(v: complex) -> list[float]:
    return [v.real, v.imag]


# ---------------------------------------------------------------------------
# elem subcommands


def _cmd_elem(args):
    doc = _load_doc(args)
    op = args.op
    if op == "norm":
        f = serialize.element_from_json(doc)
        return {"norm": algebra.norm(f)}, f"||f|| = {algebra.norm(f)}"
    if op == "eval":
        f = serialize.element_from_json(doc)
        z = _parse_z(args.z)
        res = algebra.eval_at(f, z, tol=args.tol)
        return ({"value": _c_json(res.value), "error_bound": res.error_bound,
                 "terms": res.terms},
                f"f({z}) = {res.value} (+- {res.error_bound:.3e})")
    if op == "invert":
        f = serialize.element_from_json(doc)
        inv = algebra.invertible(f)
        if inv is None:
            bad = min(enumerate(f.u.rep_values()), key=lambda kv: abs(kv[1]))
            raise NotInvertible(bad[0], bad[1])
        delta, g = inv
        return ({"delta": delta, "inverse": serialize.element_to_json(g)},
                f"invertible, delta = {delta}")
    if op == "divide":
        f = serialize.element_from_json(_field(doc, "f"))
        g = serialize.element_from_json(_field(doc, "g"))
        C, h = algebra.divide(f, g)
        return ({"C": C, "quotient": serialize.element_to_json(h)},
                f"divisible, least C = {C}")
    if op == "gcd":
        fs = [serialize.element_from_json(d) for d in _field(doc, "elements")]
        d = algebra.gcd(fs)
        return {"gcd": serialize.element_to_json(d)}, "gcd computed"
    if op == "ideal-member":
        f = serialize.element_from_json(_field(doc, "f"))
        gens = [serialize.element_from_json(d) for d in _field(doc, "generators")]
        C, hs = algebra.in_ideal(f, gens)
        return ({"C": C, "coefficients": [serialize.element_to_json(h) for h in hs]},
                f"member, least C = {C}")
    if op == "corona":
        fs = [serialize.element_from_json(d) for d in _field(doc, "elements")]
        delta, gs = algebra.corona_solve(fs)
        return ({"delta": delta,
                 "solution": [serialize.element_to_json(g) for g in gs]},
                f"corona condition holds, delta = {delta}")
    if op == "exp":
        f = serialize.element_from_json(doc)
        return ({"exp": serialize.element_to_json(algebra.exp_el(f))},
                "exponential computed")
    if op == "log":
        g = serialize.element_from_json(doc)
        f = algebra.log_el(g)
        return ({"log": serialize.element_to_json(f), "norm": algebra.norm(f)},
                f"logarithm computed, ||log g|| = {algebra.norm(f)}")
    if op == "idempotent":
        f = serialize.element_from_json(doc)
        flag = algebra.is_idempotent(f)
        return {"idempotent": flag}, f"idempotent: {flag}"
    if op == "approx-invert":
        f = serialize.element_from_json(doc)
        eps = args.eps if args.eps is not None else args.tol
        g = algebra.approx_invertible(f, eps)
        dist = algebra.norm(algebra.sub(g, f))
        return ({"eps": eps, "result": serialize.element_to_json(g),
                 "distance": dist},
                f"invertible approximant at distance {dist} <= {2 * eps}")
    if op == "bass-reduce":
        quad = [serialize.element_from_json(_field(doc, k))
                for k in ("f1", "f2", "g1", "g2")]
        h, witness = algebra.bass_reduce(*quad, eps=args.eps or 0.25)
        from .coeffseq import inf_abs
        return ({"h": serialize.element_to_json(h),
                 "witness": serialize.element_to_json(witness),
                 "delta": inf_abs(witness.u)},
                "pair reduced: f1 + h*f2 invertible")
    raise SchemaError(f"unknown elem operation {op!r}")


# ---------------------------------------------------------------------------
# mat subcommands


def _cmd_mat(args):
    doc = _load_doc(args)
    op = args.op
    if op == "mul":
        A = serialize.matrix_from_json(_field(doc, "A"))
        B = serialize.matrix_from_json(_field(doc, "B"))
        return ({"product": serialize.matrix_to_json(matalg.mat_mul(A, B))},
                "product computed")
    if op == "det":
        A = serialize.matrix_from_json(doc)
        return ({"det": serialize.element_to_json(matalg.mat_det(A))},
                "determinant computed")
    if op == "solve":
        A = serialize.matrix_from_json(_field(doc, "A"))
        b = serialize.matrix_from_json(_field(doc, "b"))
        delta, x = matalg.mat_solve(A, b, rtol=args.tol)
        return ({"delta": "inf" if math.isinf(delta) else delta,
                 "x": serialize.matrix_to_json(x)},
                f"solved, delta = {delta}")
    if op == "exp":
        B = serialize.matrix_from_json(doc)
        return ({"exp": serialize.matrix_to_json(matalg.mat_exp(B))},
                "matrix exponential computed")
    if op == "log":
        A = serialize.matrix_from_json(doc)
        B = matalg.mat_log(A, agreement_tol=max(args.tol, 1e-12))
        return ({"log": serialize.matrix_to_json(B)}, "matrix logarithm computed")
    if op == "sl-factor":
        A = serialize.matrix_from_json(doc)
        factors = matalg.sl_factor(A, tol=args.tol)
        pl, cl, stack = A.ustack()
        prod = matalg._apply_factors(factors, len(stack), A.n)
        err = float(np.max(np.abs(prod - stack)))
        return ({"factors": serialize.factors_to_json(factors),
                 "verification": {"max_error": err, "tol": args.tol}},
                f"{len(factors)} elementary factors, max_error = {err:.3e}")
    if op == "norm-bounds":
        A = serialize.matrix_from_json(doc)
        S, upper = matalg.mat_norm_bounds(A)
        return ({"spectral_sup": S, "entry_bound": upper},
                f"sup ||U(k)|| = {S} <= {upper}")
    raise SchemaError(f"unknown mat operation {op!r}")


# ---------------------------------------------------------------------------
# ideal subcommands


def _cmd_ideal(args):
    op = args.op
    w = weights.from_name(args.weight)
    if op == "index-order":
        f = serialize.element_from_json(_load_doc(args))
        rep = ideals.index_order(f, args.k, horizon=args.horizon)
        return rep.to_json(), f"m(f, {args.k}) = {rep.m} [{rep.flag}]"
    if op == "krull-family":
        f = ideals.krull_family(w, args.n, horizon=args.horizon)
        blocks = [[lo, hi] for _, lo, hi in
                  ideals._block_cover(args.n, args.horizon)]
        sample = [f.u.value(m).real for m in range(min(64, args.horizon + 1))]
        return ({"n": args.n, "horizon": args.horizon, "zero_blocks": blocks,
                 "sample": sample, "certified": "horizon"},
                f"witness f_{args.n} generated, {len(blocks)} zero blocks")
    if op == "trajectory":
        if args.json is not None:
            f = serialize.element_from_json(_load_doc(args))
            if not args.ks:
                raise SchemaError("trajectory over a document needs --ks")
            ks = [int(s) for s in args.ks.split(",")]
            rep = ideals.nonfixed_ideal_trajectory(f, ks)
            return rep.to_json(), f"trajectory [{rep.certified}], verdict = {rep.verdict}"
        f = ideals.krull_family(w, args.n, horizon=args.horizon)
        traj = ideals.growth_trajectory(f, args.n + 1, horizon=args.horizon)
        return ({"n": args.n, "exponent": args.n + 1,
                 "ratios": [[k, "inf" if math.isinf(r) else r] for k, r in traj],
                 "certified": "horizon"},
                f"growth trajectory over {len(traj)} scales")
    if op == "annihilator":
        f = serialize.element_from_json(_load_doc(args))
        chi = ideals.annihilator_generator(f)
        prod_zero = algebra.equal(algebra.star(f, chi), algebra.zero(f.weight))
        return ({"chi": serialize.element_to_json(chi),
                 "product_is_zero": prod_zero},
                f"annihilator generator computed, f*chi = 0: {prod_zero}")
    if op == "chain":
        f, rep = ideals.chain_witness(args.kind, args.n, w)
        out = rep.to_json()
        out["witness_element"] = serialize.element_to_json(f)
        return out, f"{args.kind} witness for n = {args.n}: ok = {rep.ok}"
    raise SchemaError(f"unknown ideal operation {op!r}")


def _cmd_weight(args):
    if args.op == "list":
        names = weights.known_weights()
        return {"weights": names}, "\n".join(names)
    raise SchemaError(f"unknown weight operation {args.op!r}")


# ---------------------------------------------------------------------------
# plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with code 2; remap
        raise SchemaError(message)


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hadalg")
    sub = ap.add_subparsers(dest="group", required=True)

    def common(p, ops):
        p.add_argument("op", choices=ops)
        p.add_argument("--weight", default="factorial")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--horizon", type=int, default=1 << 14)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", default=None,
                       help="input document path ('-' for stdin)")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    pe = sub.add_parser("elem")
    common(pe, ["norm", "eval", "invert", "divide", "gcd", "ideal-member",
                "corona", "exp", "log", "idempotent", "approx-invert",
                "bass-reduce"])
    pe.add_argument("--z", default="0", help="evaluation point, e.g. '1+2j'")
    pe.add_argument("--eps", type=float, default=None)
    pe.set_defaults(func=_cmd_elem)

    pm = sub.add_parser("mat")
    common(pm, ["mul", "det", "solve", "exp", "log", "sl-factor", "norm-bounds"])
    pm.set_defaults(func=_cmd_mat)

    pi = sub.add_parser("ideal")
    common(pi, ["index-order", "krull-family", "trajectory", "annihilator",
                "chain"])
    pi.add_argument("--k", type=int, default=0)
    pi.add_argument("--n", type=int, default=1)
    pi.add_argument("--ks", default=None, help="comma-separated sample indices")
    pi.add_argument("--kind", choices=["noetherian", "artinian"],
                    default="noetherian")
    pi.set_defaults(func=_cmd_ideal)

    pw = sub.add_parser("weight")
    common(pw, ["list"])
    pw.set_defaults(func=_cmd_weight)
    return ap


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def run(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
        payload, summary = args.func(args)
    except MathConditionError as exc:
        payload = {"error": str(exc), "witness": exc.witness()}
        args = _safe_args(argv)
        _emit(payload, args)
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_MATH
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except HadalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    _emit(payload, args)
    print(summary, file=sys.stderr)
    return EXIT_OK


def _safe_args(argv):
    """Recover --out for witness emission even when parsing already happened."""
    ns = argparse.Namespace(out=None)
    argv = list(sys.argv[1:] if argv is None else argv)
    for i, a in enumerate(argv):
        if a == "--out" and i + 1 < len(argv):
            ns.out = argv[i + 1]
        elif a.startswith("--out="):
            ns.out = a.split("=", 1)[1]
    return ns


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
