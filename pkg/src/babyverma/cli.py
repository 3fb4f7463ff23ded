"""Command-line driver: certified computations with text or JSON reports."""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .charzero import Lp_chi, Mp_chi, UndecidedError, align_to_baby_verma, head_surjection_check, lambda_tilde
from .envelope import BasisElement, ChiForm, LieAlgebra, is_in_lambda_chi, lie_algebra
from .modrep import (
    baby_verma_module,
    composition_factors,
    composition_factors_oracle,
    tensor,
)
from .pyramids import (
    build_pyramid,
    centralizer_dims,
    centralizer_oracle,
    chi_pi,
    column_connected,
    lift_column_connected,
    min_dim_classification,
    min_dim_labels_by_modrep,
    row_standard,
    rs_shape,
    sigma_check,
    theorem_pipeline,
)
from .verma import build_baby_verma, tensor_filtration

REPORT_VERSION = 1

# Composition factors of Z_χ(2) ⊗ Z_{−χ}(3) for sl2 at p=5, as printed in the source example.
REFERENCE_EXAMPLE_FACTORS = (0, 0, 3, 2, 1, 4, 1, 2)
REFERENCE_EXAMPLE_QUOTIENTS = (0, 3, 1, 4, 2)
REFERENCE_PYRAMID_FILLING = (2, 1, 6, 0, 5, 6, 4, 1, 0)
REFERENCE_PYRAMID_LIFT = (2, 1, 13, 0, 12, -1, 11, 15, 21)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- parsing


def parse_alg(text: str) -> LieAlgebra:
    text = text.strip().lower()
    for kind in ("gl", "sl"):
        if text.startswith(kind) and text[2:].isdigit():
            N = int(text[2:])
            if N < 2:
                raise UsageError("rank must be at least 2")
            return lie_algebra(N, kind)
    raise UsageError(f"unknown algebra {text!r}; use glN or slN")


def parse_weight(text: str, alg: LieAlgebra) -> tuple[Fraction, ...]:
    """Comma-separated ε-coordinates; for sl2 a single value is ⟨λ, α∨⟩."""
    try:
        vals = tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError(f"bad weight {text!r}: {err}") from None
    if alg.kind == "sl" and alg.N == 2 and len(vals) == 1:
        vals = (vals[0], Fraction(0))
    if len(vals) != alg.N:
        raise UsageError(f"weight needs {alg.N} ε-coordinates, got {len(vals)}")
    return vals


def parse_chi(text: str, alg: LieAlgebra, p: int) -> ChiForm:
    text = text.strip()
    if text == "zero":
        return ChiForm.zero(alg, p)
    if text == "regular-nilpotent":
        return ChiForm.regular_nilpotent(alg, p)
    if text.startswith("pyramid:"):
        pi = build_pyramid(int(x) for x in text.split(":", 1)[1].split(","))
        if pi.N != alg.N:
            raise UsageError(f"pyramid has {pi.N} boxes but the algebra has rank {alg.N}")
        return chi_pi(pi, p, alg.kind)
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, _, val = item.partition("=")
        try:
            x = BasisElement.parse(name, alg.N)
            values[x] = int(val)
        except ValueError as err:
            raise UsageError(f"bad χ entry {item!r}: {err}") from None
        if x not in alg.basis:
            raise UsageError(f"{name} is not a basis element of {alg}")
    return ChiForm.from_dict(alg, p, values)


def _mod_p(weight: Sequence[Fraction], p: int) -> tuple[int, ...]:
    try:
        return lambda_tilde(weight, p)
    except ZeroDivisionError:
        raise UsageError(f"weight {[str(w) for w in weight]} is not {p}-integral") from None


def _prime(text: str) -> int:
    p = int(text)
    if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{p} is not an odd prime")
    return p


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


# ---------------------------------------------------------------- reports


def make_report(command: str, params: dict, results: dict, certifications: dict, elapsed: float) -> dict:
    return {
        "report_version": REPORT_VERSION,
        "version": __version__,
        "command": command,
        "params": params,
        "results": results,
        "certifications": {k: bool(v) for k, v in certifications.items()},
        "timing_ms": int(round(elapsed * 1000)),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def render_text(report: dict) -> str:
    lines = [f"{report['command']} (babyverma {report['version']})"]
    for k, v in sorted(report["params"].items()):
        lines.append(f"  {k} = {v}")
    for k, v in sorted(report["results"].items()):
        lines.append(f"{k}: {json.dumps(v, ensure_ascii=False)}")
    for k, v in sorted(report["certifications"].items()):
        lines.append(f"[{'ok' if v else 'FAIL'}] {k}")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands


def _filtration_payload(rep) -> dict:
    return [
        {
            "index": s.index,
            "b": list(s.b),
            "weight": list(s.predicted_weight),
            "label": list(s.label),
            "quotient_dim": s.quotient_dim,
            "identity_block": s.identity_block,
            "certified": s.certified,
        }
        for s in rep.steps
    ]


def run_tensor_filt(args) -> tuple[dict, dict, dict]:
    alg = parse_alg(args.alg)
    p = args.p
    chi, chi2 = parse_chi(args.chi, alg, p), parse_chi(args.chi2, alg, p)
    lam, mu = _mod_p(parse_weight(args.lam, alg), p), _mod_p(parse_weight(args.mu, alg), p)
    for wt, c, name in ((lam, chi, "lambda"), (mu, chi2, "mu")):
        if not is_in_lambda_chi(wt, c):
            raise UsageError(f"{name} = {wt} is not in Λ_χ for χ = {c.as_dict()}")
    if not (chi.vanishes_on_b() and chi2.vanishes_on_b()):
        raise UsageError("both χ-forms must vanish on the Borel subalgebra")
    rep = tensor_filtration(build_baby_verma(chi, lam), build_baby_verma(chi2, mu), tiebreak=args.tiebreak)
    mons = sorted(rep.b_tuples())
    params = {"alg": alg.name, "p": p, "chi": chi.as_dict(), "chi2": chi2.as_dict(),
              "lambda": list(lam), "mu": list(mu), "tiebreak": args.tiebreak}
    results = {
        "steps": _filtration_payload(rep),
        "quotient_labels": [list(s.label) for s in rep.steps],
        "basis_rank": rep.basis_rank,
    }
    certs = {
        "basis_invertible": rep.basis_rank == p ** (2 * alg.D),
        "block_triangular": rep.block_triangular,
        "all_steps_certified": all(s.certified for s in rep.steps),
        "each_b_once": len(mons) == p**alg.D and len(set(mons)) == len(mons),
    }
    if rep.graded is not None:
        certs["graded"] = rep.graded
    return params, results, certs


def run_comp_factors(args) -> tuple[dict, dict, dict]:
    alg = parse_alg(args.alg)
    p = args.p
    chi = parse_chi(args.chi, alg, p)
    lam = _mod_p(parse_weight(args.lam, alg), p)
    if not is_in_lambda_chi(lam, chi) or not chi.is_standard_levi():
        raise UsageError("need χ of standard Levi form and λ in Λ_χ")
    M = baby_verma_module(chi, lam)
    params = {"alg": alg.name, "p": p, "chi": chi.as_dict(), "lambda": list(lam)}
    if args.mu is not None:
        chi2 = parse_chi(args.chi2, alg, p)
        mu = _mod_p(parse_weight(args.mu, alg), p)
        if not is_in_lambda_chi(mu, chi2) or not (chi + chi2).is_standard_levi():
            raise UsageError("need μ in Λ_χ' and χ+χ' of standard Levi form")
        M = tensor(M, baby_verma_module(chi2, mu))
        params.update({"chi2": chi2.as_dict(), "mu": list(mu)})
    fl = composition_factors(M)
    results = {"dim": M.dim, "factors": fl.as_json(), "total_dim": fl.total_dim}
    certs = {"sum_equals_dim": fl.total_dim == M.dim}
    if args.oracle:
        certs["oracle_agrees"] = composition_factors_oracle(M) == fl
    if args.seed is not None:
        params["seed"] = args.seed
        certs["random_choices_agree"] = composition_factors(M, np.random.default_rng(args.seed)) == fl
    return params, results, certs


def run_pyramid(args) -> tuple[dict, dict, dict]:
    pi = build_pyramid(args.partition)
    p = args.p
    dims = centralizer_dims(pi, p, oracle=pi.N <= 9)
    params = {"partition": list(pi.partition), "p": p}
    results = {
        "rows": [list(r) for r in pi.rows],
        "e_pi": [f"e{i}{j}" if pi.N < 10 else f"e{i}_{j}" for i, j in pi.horizontal_pairs()],
        "chi_pi": chi_pi(pi, p).as_dict(),
        "centralizer": dims.as_dict(),
    }
    certs = {}
    if pi.N <= 9:
        certs["formula_matches_oracle"] = centralizer_oracle(pi, p) == (dims.gl_centralizer, dims.b_centralizer)
    if args.filling is not None:
        A = args.filling
        params["filling"] = list(A)
        cc = column_connected(pi, A, p)
        results["column_connected"] = cc
        if cc:
            lift = lift_column_connected(pi, A, p)
            results.update({"lift": list(lift), "rs_shape": list(rs_shape(lift)), "sigma_check": sigma_check(pi, lift)})
            certs.update({
                "lift_reduces": all((x - a) % p == 0 for x, a in zip(lift, A)),
                "lift_column_connected": column_connected(pi, lift),
                "lift_row_standard": row_standard(pi, lift),
                "rs_shape_matches": rs_shape(lift) == tuple(sorted(pi.partition, reverse=True)),
                "sigma_check": sigma_check(pi, lift),
            })
    return params, results, certs


def run_lp_chi(args) -> tuple[dict, dict, dict]:
    alg = parse_alg(args.alg)
    p = args.p
    chi = parse_chi(args.chi, alg, p)
    lam = parse_weight(args.lam, alg)
    lt = _mod_p(lam, p)
    params = {"alg": alg.name, "p": p, "chi": chi.as_dict(), "lambda": [str(x) for x in lam],
              "depth": args.depth, "verma": args.verma}
    certs = {}
    try:
        res = (Mp_chi if args.verma else Lp_chi)(alg, lam, chi, args.depth)
    except UndecidedError as err:
        return params, {"undecided": str(err)}, {"decided": False}
    results = {"lambda_tilde": list(lt), "dim": res.module.dim, "labels": [list(a) for a in res.labels]}
    if args.verma:
        Z = align_to_baby_verma(res, chi)
        ref = baby_verma_module(chi, lt)
        certs["equals_baby_verma"] = Z is not None and all(
            np.array_equal(Z.actions[x], ref.actions[x]) for x in alg.basis
        )
    elif res.module.dim and chi.is_standard_levi():
        head = head_surjection_check(res, chi, lt)
        results["head_dim"] = head.target.dim
        certs["head_surjection"] = head.ok
    return params, results, certs


# ---------------------------------------------------------------- suites


def suite_example_2_3(args) -> tuple[dict, dict, dict]:
    alg = lie_algebra(2, "sl")
    p = 5
    chi = ChiForm.from_dict(alg, p, {"f": 1})
    rep = tensor_filtration(build_baby_verma(chi, (2, 0)), build_baby_verma(-chi, (3, 0)))
    labels = [s.label[0] for s in rep.steps]
    T = tensor(baby_verma_module(chi, (2, 0)), baby_verma_module(-chi, (3, 0)))
    peel = composition_factors(T)
    oracle = composition_factors_oracle(T)
    reference = Counter(REFERENCE_EXAMPLE_FACTORS)
    reference_sum = sum(m * (k + 1) for k, m in reference.items())
    results = {
        "quotients": labels,
        "reference_quotients": list(REFERENCE_EXAMPLE_QUOTIENTS),
        "factors": peel.as_json(),
        "reference_factor_list": list(REFERENCE_EXAMPLE_FACTORS),
        "reference_factor_dim_sum": reference_sum,
        "module_dim": T.dim,
        "reference_list_discrepancy": reference_sum != T.dim,
        "missing_from_reference_list": sorted(
            {k: peel.multiplicity((k,)) - reference[k] for k in range(p) if peel.multiplicity((k,)) != reference[k]}.items()
        ),
    }
    certs = {
        "filtration_matches_reference": tuple(labels) == REFERENCE_EXAMPLE_QUOTIENTS,
        "all_steps_certified": rep.all_certified,
        "peeling_equals_oracle": peel == oracle,
        "factor_dims_sum_to_25": peel.total_dim == 25,
    }
    return {"suite": "example-2-3"}, results, certs


def suite_pyramid_1224(args) -> tuple[dict, dict, dict]:
    pi = build_pyramid((1, 2, 2, 4))
    p = 7
    dims = centralizer_dims(pi, p)
    lift = lift_column_connected(pi, REFERENCE_PYRAMID_FILLING, p)
    shape = tuple(sorted(pi.partition, reverse=True))
    results = {
        "centralizer": dims.as_dict(),
        "filling": list(REFERENCE_PYRAMID_FILLING),
        "lift": list(lift),
        "rs_shape": list(rs_shape(lift)),
        "reference_lift_rs_shape": list(rs_shape(REFERENCE_PYRAMID_LIFT)),
    }
    certs = {
        "dims_27_18_54": (dims.gl_centralizer, dims.b_centralizer, dims.orbit) == (27, 18, 54),
        "half_orbit_identity": dims.orbit // 2 == pi.N * (pi.N + 1) // 2 - dims.b_centralizer,
        "filling_column_connected": column_connected(pi, REFERENCE_PYRAMID_FILLING, p),
        "lift_column_connected": column_connected(pi, lift),
        "lift_row_standard": row_standard(pi, lift),
        "rs_shape_matches": rs_shape(lift) == shape,
        "sigma_check": sigma_check(pi, lift),
        "reference_lift_passes": column_connected(pi, REFERENCE_PYRAMID_LIFT)
        and row_standard(pi, REFERENCE_PYRAMID_LIFT)
        and rs_shape(REFERENCE_PYRAMID_LIFT) == shape
        and sigma_check(pi, REFERENCE_PYRAMID_LIFT),
    }
    return {"suite": "pyramid-1224", "p": p}, results, certs


def suite_mindim_12_of_3(args) -> tuple[dict, dict, dict]:
    pi = build_pyramid((1, 2))
    p = 3
    gt = min_dim_classification(pi, p)
    by_dim, dims = min_dim_labels_by_modrep(pi, p)
    target = centralizer_dims(pi, p).min_dim
    results = {
        "min_dim": target,
        "classes": sorted([list(map(list, k)) for k in gt]),
        "dims_seen": sorted(set(dims.values())),
    }
    certs = {
        "modrep_equals_predicate": gt == by_dim,
        "kac_weisfeiler_divides": all(d % target == 0 for d in dims.values()),
    }
    return {"suite": "mindim-12-of-3", "p": p}, results, certs


def suite_thm317_n2(args) -> tuple[dict, dict, dict]:
    p = args.p or 5
    reports = []
    for part in ((2,), (1, 1)):
        pi = build_pyramid(part)
        for key in sorted(min_dim_classification(pi, p)):
            A = tuple(x for row in key for x in row)
            reports.append(theorem_pipeline(pi, p, A, args.depth))
    results = {"labels": [r.as_json() for r in reports], "claims_1_2": "not checked"}
    certs = {
        "all_nonzero": all(r.dim_Lp_chi for r in reports),
        "all_surjections": all(r.surjection for r in reports),
        "targets_minimal": all(r.dim_target == r.min_dim for r in reports),
    }
    return {"suite": "thm317-N2", "p": p}, results, certs


SUITES: dict[str, Callable] = {
    "example-2-3": suite_example_2_3,
    "pyramid-1224": suite_pyramid_1224,
    "mindim-12-of-3": suite_mindim_12_of_3,
    "thm317-N2": suite_thm317_n2,
}


def run_suite(args):
    return SUITES[args.name](args)


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="babyverma", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    sp = sub.add_parser("tensor-filt", help="certify the filtration of Z_χ(λ) ⊗ Z_χ'(μ)")
    sp.add_argument("--alg", required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--chi", default="zero")
    sp.add_argument("--chi2", default="zero")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--tiebreak", choices=("lex", "revlex", "colex"), default="lex")
    common(sp)
    sp.set_defaults(func=run_tensor_filt)

    sp = sub.add_parser("comp-factors", help="composition factors of a baby Verma or a tensor of two")
    sp.add_argument("--alg", required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--chi", default="zero")
    sp.add_argument("--chi2", default="zero")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mu")
    sp.add_argument("--oracle", action="store_true", help="cross-check with exhaustive spinning")
    sp.add_argument("--seed", type=int, help="also peel with random highest-weight choices")
    common(sp)
    sp.set_defaults(func=run_comp_factors)

    sp = sub.add_parser("pyramid", help="pyramid data, and lifting of a filling")
    sp.add_argument("--partition", type=_ints, required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--filling", type=_ints)
    common(sp)
    sp.set_defaults(func=run_pyramid)

    sp = sub.add_parser("lp-chi", help="L_p^χ(λ) (or M_p^χ(λ) with --verma) on a window")
    sp.add_argument("--alg", required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--chi", default="zero")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--verma", action="store_true")
    common(sp)
    sp.set_defaults(func=run_lp_chi)

    sp = sub.add_parser("suite", help="run a named acceptance scenario")
    sp.add_argument("name", choices=sorted(SUITES))
    sp.add_argument("--p", type=_prime)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--seed", type=int)
    common(sp)
    sp.set_defaults(func=run_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        params, results, certs = args.func(args)
    except UsageError as err:
        parser.error(str(err))
    command = args.command if args.command != "suite" else f"suite {args.name}"
    report = make_report(command, params, results, certs, time.perf_counter() - start)
    print(dumps(report) if args.json else render_text(report))
    return 0 if all(report["certifications"].values()) else 1


if __name__ == "__main__":
    sys.exit(main())
