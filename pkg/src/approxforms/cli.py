"""Command line entry point: ``approxforms <subcommand> ...``.

Exit status is 0 on success, 1 for bad input, 2 if an internal consistency
check fails. Numbers are printed with 15 significant digits and summaries
as ``key=value`` lines.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import boolean_inf as binf
from . import lefebvre as lf
from .connectives import normalize_system, parse_algebra, verify_axioms
from .decompose import (chain_from_dict, chain_to_dict, decompose, decompose_dual, fold, pad_to,
                        theta_chain, theta_decompose)
from .errors import ApproxError, InvariantViolation
from .poset import EvalMap, Poset, boolean_cube, chain


class UsageError(ApproxError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def num(x: float) -> str:
    return f"{x:.15g}"


def _emit(out, pairs):
    for k, v in pairs:
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, float):
            v = num(v)
        print(f"{k}={v}", file=out)


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def parse_domain(spec: str) -> Poset:
    """``cube:<n>``, ``chain:<m>`` or a poset file."""
    kind, _, arg = spec.partition(":")
    if kind in ("cube", "chain") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise UsageError(f"bad domain {spec!r}") from None
        if kind == "cube":
            return boolean_cube(n)
        if n < 1:
            raise UsageError("chain length must be positive")
        return chain(n)
    return Poset.from_dict(_load_json(spec))


def _load_map(args, domain, codomain) -> EvalMap:
    if args.values is not None:
        return EvalMap(domain, codomain, [v.strip() for v in args.values.split(",")])
    if args.map is None:
        raise UsageError("give the map with --map FILE or --values v1,v2,...")
    return EvalMap.from_dict(_load_json(args.map), domain, codomain)


def _write(args, payload, out):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=out)


# -- subcommands ----------------------------------------------------------------


def cmd_poset(args, out):
    p = parse_domain(args.domain)
    _emit(out, [("elements", len(p)), ("D", p.max_chain_length())])
    for i, block in enumerate(p.rank_partition(), 1):
        _emit(out, [(f"rank{i}", ",".join(sorted(block)))])
    _emit(out, [("covers", " ".join(f"{a}<{b}" for a, b in p.covers())),
                ("dual_covers", " ".join(f"{a}<{b}" for a, b in p.dual().covers()))])


def cmd_verify_axioms(args, out):
    cs = parse_algebra(args.algebra)
    p = parse_domain(args.domain)
    system = normalize_system(args.system)
    print(verify_axioms(cs, p, system), file=out)


def cmd_decompose(args, out):
    cs = parse_algebra(args.algebra)
    M = parse_domain(args.domain)
    psi = _load_map(args, M, cs.codomain)
    engine = decompose if cs.orientation == "primal" else decompose_dual
    ch = engine(psi, cs, aggregate=args.aggregate)
    _write(args, chain_to_dict(ch, psi), out)


def cmd_fold(args, out):
    cs = parse_algebra(args.algebra)
    M = parse_domain(args.domain)
    ch = chain_from_dict(_load_json(args.chain), M, cs)
    print(json.dumps(fold(ch).to_dict(), indent=2, sort_keys=True), file=out)


def cmd_theta(args, out):
    cs = parse_algebra(args.algebra)
    M = parse_domain(args.domain)
    psi = _load_map(args, M, cs.codomain)
    thetas = theta_decompose(psi, cs)
    payload = chain_to_dict(theta_chain(thetas, cs), psi)
    payload["ranks"] = [t.rank for t in thetas]
    _write(args, payload, out)


def cmd_pad(args, out):
    cs = parse_algebra(args.algebra)
    M = parse_domain(args.domain)
    ch = chain_from_dict(_load_json(args.chain), M, cs)
    target = args.to if args.to is not None else M.max_chain_length() + 1
    padded = pad_to(ch, target)
    _write(args, chain_to_dict(padded, fold(ch)), out)


def cmd_inf(args, out):
    t = binf.TruthTable.from_string(args.truth_table)
    c = binf.inf_synthesize(t)
    ok = binf.inf_eval(c) == t
    if not ok or not all(binf.is_monotone_tt(f) for f in c.factors):
        raise InvariantViolation("synthesized chain does not reproduce the truth table")
    _emit(out, [("n", t.n), ("factors", len(c.factors)), ("implications", c.implications)])
    k = len(c.factors)
    for i, f in enumerate(c.factors):
        _emit(out, [(f"P{k - i}", str(f))])
    _emit(out, [("reconstruction", "OK")])
    if args.prove_minimal:
        m = binf.minimal_inf_length(t)
        _emit(out, [("minimal_factors", m), ("synthesized_is_minimal", m == k)])


def _floats(text, n, what):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated numbers") from None
    if len(vals) != n:
        raise UsageError(f"{what} must have {n} entries, got {len(vals)}")
    return vals


def _point_lines(pt):
    return [("x", ",".join(num(v) for v in (pt.x1, pt.x2, pt.x3))),
            ("z", pt.z), ("f", pt.X1), ("gap", pt.gap)]


def cmd_lef_marginals(args, out):
    pt = lf.marginals(lf.EnsembleCharacteristic.parse(args.characteristic))
    _emit(out, _point_lines(pt))


def cmd_lef_pure(args, out):
    x = _floats(args.x, 3, "--x")
    P = lf.pure_ensemble(*x)
    _emit(out, [("characteristic", str(P))] + _point_lines(lf.marginals(P)))


def cmd_lef_golden(args, out):
    g = lf.golden_root()
    P = lf.realist_characteristic(g)
    pt = lf.marginals(P)
    R = lf.realist_area()
    _emit(out, [
        ("root", g),
        ("residual", abs(g**3 - 2 * g + 1)),
        ("characteristic", str(P)),
        ("realist_area", ",".join("".join(map(str, b)) for b in sorted(R))),
        ("support_in_realist_area", P.support() <= R),
        ("x1", pt.x1), ("x2", pt.x2), ("x3_marginal", pt.x3),
        ("marginal_error", abs(pt.x3 - g)),
    ])
    if args.samples:
        s = lf.sample_ensemble(P, args.samples, args.seed)
        outside = sum(c for k, c in enumerate(s.counts) if lf._bits(k) not in R)
        _emit(out, [("samples", args.samples), ("seed", args.seed), ("z_hat", s.z_hat),
                    ("stderr", s.stderr), ("outside_realist_area", outside),
                    ("within_3_stderr", abs(s.z_hat - g) <= 3 * s.stderr)])


def cmd_lef_sample(args, out):
    P = lf.EnsembleCharacteristic.parse(args.characteristic)
    s = lf.sample_ensemble(P, args.samples, args.seed)
    _emit(out, [("samples", args.samples), ("seed", args.seed), ("z_hat", s.z_hat),
                ("stderr", s.stderr), ("counts", ",".join(map(str, s.counts))),
                ("z", lf.marginals(P).z)])


def cmd_lef_choose(args, out):
    b = args.bits.strip()
    if len(b) != 3 or set(b) - {"0", "1"}:
        raise UsageError(f"--bits must be three 0/1 digits, got {args.bits!r}")
    trace = lf.choose(*(int(c) for c in b))
    print(trace, file=out)
    _emit(out, [("psi", "".join(lf.build_psi(*(int(c) for c in b)).as_tuple())),
                ("formula", lf.boolean_readiness(*(int(c) for c in b)))])


def cmd_lef_verify(args, out):
    for name, f in (("readiness", lf.readiness_f), ("bracket_variant", lf.bracket_variant_readiness)):
        rep = lf.verify_L_axioms(f)
        for ax, (ok, _) in rep.results.items():
            _emit(out, [(f"{name}.{ax}", "pass" if ok else "fail")])
        _emit(out, [(f"{name}.passed", rep.passed)])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="approxforms", description="Monotone decompositions, implicative normal forms "
                                                "and Lefebvre's choice model.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_map=False, need_chain=False, algebra=True):
        if algebra:
            sp.add_argument("--algebra", required=True, help="chain-primal:<m>, boolean-dual or a table file")
        sp.add_argument("--domain", required=True, help="cube:<n>, chain:<m> or a poset file")
        if need_map:
            sp.add_argument("--map", help="map file {\"values\": {...}}")
            sp.add_argument("--values", help="comma-separated values in domain element order")
        if need_chain:
            sp.add_argument("--chain", required=True, help="chain file written by decompose")

    sp = sub.add_parser("poset", help="D, rank partition and dual of a poset")
    sp.add_argument("--domain", required=True)
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("verify-axioms", help="check an axiom system by exhaustive evaluation")
    common(sp)
    sp.add_argument("--system", default="A", help="A, B, A* or B*")
    sp.set_defaults(func=cmd_verify_axioms)

    sp = sub.add_parser("decompose", help="monotone factor chain of a map")
    common(sp, need_map=True)
    sp.add_argument("--aggregate", choices=("boxplus", "uplus"))
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("fold", help="evaluate a chain file")
    common(sp, need_chain=True)
    sp.set_defaults(func=cmd_fold)

    sp = sub.add_parser("theta", help="rank-by-rank theta-function chain")
    common(sp, need_map=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("pad", help="pad a chain with circ-composed factors")
    common(sp, need_chain=True)
    sp.add_argument("--to", type=int, help="target factor count (default D+1)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_pad)

    sp = sub.add_parser("inf", help="implicative normal form of a truth table")
    sp.add_argument("--truth-table", required=True)
    sp.add_argument("--prove-minimal", action="store_true")
    sp.set_defaults(func=cmd_inf)

    lp = sub.add_parser("lefebvre", help="ensembles and the choice model")
    lsub = lp.add_subparsers(dest="lcommand", required=True)
    sp = lsub.add_parser("marginals")
    sp.add_argument("--characteristic", required=True, help="p0,...,p7")
    sp.set_defaults(func=cmd_lef_marginals)
    sp = lsub.add_parser("pure")
    sp.add_argument("--x", required=True, help="x1,x2,x3")
    sp.set_defaults(func=cmd_lef_pure)
    sp = lsub.add_parser("golden")
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lef_golden)
    sp = lsub.add_parser("sample")
    sp.add_argument("--characteristic", required=True)
    sp.add_argument("--samples", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lef_sample)
    sp = lsub.add_parser("choose")
    sp.add_argument("--bits", required=True, help="b1b2b3, e.g. 011")
    sp.set_defaults(func=cmd_lef_choose)
    sp = lsub.add_parser("verify-axioms")
    sp.set_defaults(func=cmd_lef_verify)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=err)
        return 2
    except (ApproxError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
