"""Command-line front end.

Exit codes: 0 all checks hold, 1 a mathematical check failed, 2 input error,
3 the algebra is outside the computable scope (non-split, unverified
simplicity, radical not invariant).  Indices in files are 0-based; labels in
human-readable output are 1-based.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import io as pio
from .algebra import power_chain
from .exponent import SNotCentralSimple, matrix_theorem_check, pi_exponent, tensor_theorem_check
from .identities import (BudgetExceeded, IdentityError, containment_at_degree,
                         evaluation_matrix, is_identity, parse_polynomial, regev_bound_check)
from .structure import StructureError
from .suites import paper_examples


class CheckFailed(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _label_vec(S, v) -> str:
    return S.algebra.label(v)


# -- commands ----------------------------------------------------------------


def cmd_validate(args, report):
    S = pio.load(args.algebra)
    report["results"] = {"valid": True, "dim": S.dim, "structure": S.kind}


def cmd_info(args, report):
    S = pio.load(args.algebra)
    rep = pi_exponent(S).structure
    report["results"] = {
        "dim": S.dim,
        "structure": S.kind,
        "radical_dim": rep.radical.dim,
        "radical_basis": [_label_vec(S, v) for v in rep.radical.basis],
        "radical_powers": [J.dim for J in power_chain(rep.radical, S.algebra)],
        "nilpotency_index": rep.nilpotency_index,
        "complement_dim": rep.complement.dim,
        "component_dims": list(rep.component_dims),
        "components": [[_label_vec(S, v) for v in B.basis] for B in rep.components],
        "certificates": [c.verdict for c in rep.certificates],
    }


def cmd_exponent(args, report):
    S = pio.load(args.algebra)
    rep = pi_exponent(S)
    res = rep.to_dict()
    res["witness_product"] = " · ".join(f"({x})" for x in rep.chain_labels)
    report["results"] = res


def cmd_codim(args, report):
    S = pio.load(args.algebra)
    E = evaluation_matrix(S, args.m, args.strategy, samples=args.samples, seed=args.seed,
                          threads=args.threads, ordinary=args.ordinary)
    report["results"] = {"m": args.m, "codimension": E.rank, "strategy": E.strategy,
                         "structure": "trivial" if args.ordinary else S.kind, "rows": E.row_count}
    if E.strategy == "sampled":
        report["seeds"] = {"seed": args.seed, "samples": E.samples}
        report["results"]["lower_bound"] = True


def _expect(args, holds: bool):
    if args.expect is not None and holds != (args.expect == "yes"):
        raise CheckFailed(f"expected {args.expect}, got {'yes' if holds else 'no'}")


def cmd_identity(args, report):
    S = pio.load(args.algebra)
    text = Path(args.poly).read_text(encoding="utf-8") if args.poly else args.text
    if text is None:
        raise IdentityError("give --poly FILE or --text POLY")
    f = parse_polynomial(text)
    res = is_identity(f, S)
    out = {"polynomial": str(f), "identity": res.holds}
    if not res.holds:
        out["witness"] = [_label_vec(S, v) for v in res.witness]
        out["value"] = _label_vec(S, res.value)
    report["results"] = out
    _expect(args, res.holds)


def cmd_contain(args, report):
    A, B = pio.load(args.a), pio.load(args.b)
    res = containment_at_degree(A, B, args.m, threads=args.threads)
    report["results"] = {"m": args.m, "holds": res.holds,
                         "counterexample": None if res.counterexample is None else str(res.counterexample)}
    _expect(args, res.holds)


def cmd_main_theorem(args, report):
    A = pio.load(args.base)
    rows = matrix_theorem_check(A, args.nmax, max_dim=args.max_dim, threads=args.threads)
    report["results"] = {"rows": [r.to_dict() for r in rows]}
    if any(r.equal is False for r in rows):
        raise CheckFailed("exp(M_n(A)) != n^2 exp(A) for some n")


def cmd_tensor_theorem(args, report):
    A, S = pio.load(args.a), pio.load(args.s)
    res = tensor_theorem_check(A, S, grading_mode=args.grading_mode)
    report["results"] = res.to_dict()
    if not res.equal:
        raise CheckFailed("exp(A (x) S) != dim S * exp(A)")


def cmd_paper_examples(args, report):
    checks = paper_examples()
    report["results"] = {"checks": [c.to_dict() for c in checks]}
    if not all(c.ok for c in checks):
        raise CheckFailed("; ".join(c.name for c in checks if not c.ok))


def cmd_regev(args, report):
    A, B = pio.load(args.a), pio.load(args.b)
    rows = [regev_bound_check(A, B, m, threads=args.threads) for m in range(1, args.m + 1)]
    report["results"] = {"rows": [r.to_dict() for r in rows]}
    if not all(r.holds for r in rows):
        raise CheckFailed("codimension bound violated")


# -- plumbing ----------------------------------------------------------------


def _default_threads() -> int:
    return max(1, min(4, os.cpu_count() or 1))


def _common(top: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without defaults so they never mask earlier values
    def default(v):
        return v if top else argparse.SUPPRESS

    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--format", choices=("json", "text"), default=default("text"))
    c.add_argument("--threads", type=int, default=default(_default_threads()), help="worker cap; 1 runs serially")
    c.add_argument("--timings", action="store_true", default=default(False),
                   help="include wall-clock timings (breaks byte equality)")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    p = argparse.ArgumentParser(prog="piexp", description="PI-exponents, codimensions and identities of "
                                "finite-dimensional algebras.", parents=[_common(True)])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [("validate", cmd_validate, "check associativity and structure"),
                            ("info", cmd_info, "radical, complement and components"),
                            ("exponent", cmd_exponent, "PI-exponent with a witness chain")]:
        q = sub.add_parser(name, help=help_, parents=[common])
        q.add_argument("algebra")
        q.set_defaults(func=fn)

    q = sub.add_parser("codim", help="codimension c_m", parents=[common])
    q.add_argument("algebra")
    q.add_argument("-m", type=int, required=True)
    q.add_argument("--strategy", choices=("exact", "sampled"), default="exact")
    q.add_argument("--samples", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--ordinary", action="store_true", help="ignore the grading or involution")
    q.set_defaults(func=cmd_codim)

    q = sub.add_parser("identity", help="is a multilinear polynomial an identity?", parents=[common])
    q.add_argument("algebra")
    q.add_argument("--poly", help="file holding the polynomial")
    q.add_argument("--text", help="polynomial given inline")
    q.add_argument("--expect", choices=("yes", "no"))
    q.set_defaults(func=cmd_identity)

    q = sub.add_parser("contain", help="Id(A) within Id(B) in degree m?", parents=[common])
    q.add_argument("-m", type=int, required=True)
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--expect", choices=("yes", "no"))
    q.set_defaults(func=cmd_contain)

    v = sub.add_parser("verify", help="theorem and example suites", parents=[common])
    vs = v.add_subparsers(dest="suite", required=True)
    q = vs.add_parser("main-theorem", parents=[common])
    q.add_argument("--base", required=True)
    q.add_argument("--nmax", type=int, required=True)
    q.add_argument("--max-dim", type=int, default=None)
    q.set_defaults(func=cmd_main_theorem)
    q = vs.add_parser("tensor-theorem", parents=[common])
    q.add_argument("--a", required=True)
    q.add_argument("--s", required=True)
    q.add_argument("--grading-mode", choices=("product", "sum"), default="product")
    q.set_defaults(func=cmd_tensor_theorem)
    q = vs.add_parser("paper-examples", parents=[common])
    q.set_defaults(func=cmd_paper_examples)
    q = vs.add_parser("regev", parents=[common])
    q.add_argument("-m", type=int, required=True)
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(func=cmd_regev)
    return p


def _inputs(args) -> dict:
    out = {}
    for key in ("algebra", "a", "b", "base", "s", "poly"):
        path = getattr(args, key, None)
        if path and Path(path).is_file():
            out[path] = pio.digest(path)
    return out


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                          (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={json.dumps(v, ensure_ascii=False)}"
                                                    for k, v in item.items()))
            else:
                lines.append(f"{pad}- {json.dumps(item, ensure_ascii=False)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    return "\n".join(_text(report))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command + (f" {args.suite}" if args.command == "verify" else "")
    report: dict = {"command": command, "version": __version__, "inputs": {}, "status": "ok"}
    code = 0
    start = time.perf_counter()
    try:
        report["inputs"] = _inputs(args)
        args.func(args, report)
    except CheckFailed as exc:
        code, report["status"], report["error"] = 1, "check failed", str(exc)
    except (pio.InputError, IdentityError, BudgetExceeded, SNotCentralSimple, OSError) as exc:
        code, report["status"], report["error"] = 2, "input error", f"{type(exc).__name__}: {exc}"
    except StructureError as exc:
        code, report["status"], report["error"] = 3, "out of scope", f"{type(exc).__name__}: {exc}"
    if args.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 3), "threads": args.threads}
    report["exit_code"] = code
    out = render(_jsonable(report), args.format)
    sys.stdout.write(out + "\n")
    if code >= 2:
        sys.stderr.write(f"piexp: {report['error']}\n")
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
