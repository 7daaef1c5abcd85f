"""Command-line front end: ``superelliptic {factorize,verify,invariants,braid-check,chain-reduce}``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import braid, intmat
from .cover import build_cover
from .family import (CurveKind, CurveLabel, FamilyParameters, UnsupportedParameters,
                     build_family, liftability, psi, sphere_word, zeta_label_action)
from .fourmanifold import chain_reduction_script, fibration_report, signature
from .homology import build_homology, gamma_basis_status, matrix_order, monodromy_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _factorize(params: FamilyParameters, args) -> tuple[dict, bool]:
    return build_family(params).to_json_dict(), True


def _verify(params: FamilyParameters, args) -> tuple[dict, bool]:
    fam = build_family(params)
    model = build_homology(build_cover(params))
    mono = monodromy_matrix(model, fam.factorization)
    zeta = model.zeta
    order = matrix_order(zeta, limit=4 * params.k)
    relator = monodromy_matrix(model, fam.relator.to_word())
    label_action = True
    for i in range(1, 2 * params.n + 2):
        for l in range(1, params.k + 1):
            src = CurveLabel(CurveKind.GAMMA, i, l)
            dst = zeta_label_action(src, params)
            img = intmat.matmul(zeta, model.cls(str(src)))
            label_action &= bool(np.all(img == model.cls(str(dst))))
    checks = {
        "monodromy_equals_zeta_star": bool(np.all(mono == zeta)),
        "zeta_order_is_k": order == params.k,
        "relator_is_identity": intmat.is_identity(relator),
        "zeta_permutes_gamma_labels": label_action,
    }
    report = {"n": params.n, "k": params.k, "g": params.g, **checks,
              "zeta_order": order, "zeta_trace": int(np.trace(zeta)),
              "alpha_signs": list(model.alpha_signs),
              "gamma_basis": gamma_basis_status(model)}
    ok = all(checks.values())
    if not ok:
        report["diff"] = {"expected": intmat.to_lists(zeta), "computed": intmat.to_lists(mono)}
    return report, ok


def _invariants(params: FamilyParameters, args) -> tuple[dict, bool]:
    rep = fibration_report(params, budget=args.budget_cosets)
    return rep.to_json_dict(), rep.consistent


def _braid_check(n: int, args) -> tuple[dict, bool]:
    params = FamilyParameters(n, 3)
    symbols = sphere_word(params)
    W = braid.sphere_word(n)
    R = braid.sphere_relator(2 * n + 2)
    perm = psi(symbols, params)
    factors = {str(s): liftability(type(symbols)((s,)), params).value for s in symbols.letters}
    res = braid.witness_search(W, args.witness_len)
    verified = braid.kernel_witness_check(W, res.witness) if res.found else None
    checks = {
        "psi_identity": perm.is_identity(),
        "exponent_sum_ok": W.exponent_sum() == 4 * n + 2 == R.exponent_sum(),
        "factors_liftable": all(v != "non_liftable" for v in factors.values()),
        "witness_verified": verified,
    }
    report = {"n": n, "sphere_word": str(symbols), "braid_word": list(W.letters),
              "exponent_sum": W.exponent_sum(), "relator_exponent_sum": R.exponent_sum(),
              "psi": str(perm), "factor_liftability": factors, **checks,
              "witness": res.witness.to_json_dict() if res.found else "not_found",
              "search_explored": res.explored}
    return report, all(v is not False for v in checks.values())


def _chain_reduce(k: int, args) -> tuple[dict, bool]:
    params = FamilyParameters(1, k)
    model = build_homology(build_cover(params))
    red = chain_reduction_script(model)
    before, after = signature(red.initial), signature(red.final)
    report = {"k": k, "g": params.g, **red.to_json_dict(),
              "matches_chain_pattern": list(reversed(red.final.factors)) == red.chain_pattern(params),
              "signature_before": before, "signature_after": after}
    ok = report["matches_chain_pattern"] and red.monodromy_preserved and before == after
    return report, ok


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superelliptic",
                                 description="Balanced superelliptic factorizations and invariants.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-cosets", type=int, default=10**6)
    common.add_argument("--witness-len", type=int, default=8)
    common.add_argument("--pretty", action="store_true", help="print a readable table")
    common.add_argument("--out", metavar="FILE", help="also write the JSON report here")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("factorize", "verify", "invariants"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("n", type=int)
        p.add_argument("k", type=int)
    p = sub.add_parser("braid-check", parents=[common])
    p.add_argument("n", type=int)
    p = sub.add_parser("chain-reduce", parents=[common])
    p.add_argument("k", type=int)
    return ap


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else key, value[key], rows)
    else:
        rows.append((prefix, json.dumps(value) if isinstance(value, (list, type(None))) else str(value)))


def render_pretty(report: dict) -> str:
    rows: list = []
    _flatten("", report, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        if args.budget_cosets < 1 or args.witness_len < 0:
            raise UnsupportedParameters("budgets must be positive")
        if args.command == "braid-check":
            if args.n < 1:
                raise UnsupportedParameters("n must be at least 1")
            report, ok = _braid_check(args.n, args)
        elif args.command == "chain-reduce":
            report, ok = _chain_reduce(args.k, args)
        else:
            params = FamilyParameters(args.n, args.k)
            handler = {"factorize": _factorize, "verify": _verify,
                       "invariants": _invariants}[args.command]
            report, ok = handler(params, args)
    except UnsupportedParameters as exc:
        print(f"superelliptic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(report, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(render_pretty(report) if args.pretty else text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
