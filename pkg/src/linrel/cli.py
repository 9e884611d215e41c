"""Command-line front end: analyze relations, sweep Weyl functions,
build boundary-parametrized extensions, and verify one input end to end.

All commands read relation spec files (see specio), honor the shared
tolerance and seed flags, and echo the effective configuration in every
report so results are reproducible from the artifact alone.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 mathematical precondition violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .boundary import (
    BoundaryTriplet,
    alternative_experiment,
    boundary_map_rank,
    closed_form_weyl,
    extension_from_boundary,
    green_identity_defect,
    triplet_basic,
    triplet_main,
    triplet_tilde,
    weyl,
)
from .config import DEFAULT_TOLERANCES, ToleranceConfig
from .errors import (
    DimensionMismatch,
    InputFormatError,
    PreconditionViolated,
    SpectrumError,
)
from .extension import (
    LiftBundle,
    extremal_family,
    friedrichs_generic,
    is_extremal,
    is_singular_relation,
    krein_generic,
    krein_order_margin,
    lift,
    nonneg_extension,
)
from .oracle import (
    adjoint_definitional,
    extension_sweep,
    random_selfadjoint_relation,
)
from .relation import (
    LinearRelation,
    adjoint,
    classify,
    parts,
    relation_equal,
)
from .specio import (
    LoadedSpec,
    dump_report,
    encode_float,
    encode_relation,
    encode_subspace,
    load_relation_spec,
)
from .subspace import Subspace, Verdict, complement, relate

__all__ = ["main"]

_TRIPLET_BUILDERS = {
    "main": triplet_main,
    "basic": triplet_basic,
    "tilde": triplet_tilde,
}


def _config_from_args(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(
        rank_tol=args.tol_rank,
        angle_tol=args.tol_angle,
        psd_floor=args.psd_floor,
    )


def _config_echo(cfg: ToleranceConfig, seed: int) -> dict:
    return {
        "rank_tol": cfg.rank_tol,
        "angle_tol": cfg.angle_tol,
        "psd_floor": cfg.psd_floor,
        "seed": seed,
    }


def _input_echo(spec: LoadedSpec) -> dict:
    return {
        "path": spec.path,
        "label": spec.label,
        "mode": spec.mode,
        "n1": spec.relation.n1,
        "n2": spec.relation.n2,
        "dim": spec.relation.dim,
        "orthonormalized": spec.was_orthonormalized,
        "spec": spec.echo,
    }


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _symmetry_echo(rel: LinearRelation, cfg: ToleranceConfig, seed: int) -> dict:
    rep = classify(rel, cfg, seed=seed)
    return {
        "is_symmetric": rep.is_symmetric,
        "is_selfadjoint": rep.is_selfadjoint,
        "is_nonnegative": rep.is_nonnegative,
        "dom_perp_ran": rep.dom_perp_ran,
        "lower_bound": encode_float(rep.lower_bound),
        "numerical_range_radius": rep.numerical_range_radius,
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    spec = load_relation_spec(args.spec, cfg)
    rel = spec.relation
    p = parts(rel, cfg)
    report = {
        "tool": {"name": "linrel", "version": __version__},
        "config": _config_echo(cfg, args.seed),
        "input": _input_echo(spec),
        "parts": {
            "dom": encode_subspace(p.dom),
            "ran": encode_subspace(p.ran),
            "ker": encode_subspace(p.ker),
            "mul": encode_subspace(p.mul),
        },
        "symmetry": _symmetry_echo(rel, cfg, args.seed),
        "adjoint": encode_relation(adjoint(rel, cfg)),
    }
    _emit(dump_report(report), args.out)
    return 0


def _triplet_checks(bundle: LiftBundle, cfg: ToleranceConfig) -> list[dict]:
    kernel_targets = {
        "main": (bundle.H, bundle.K),
        "basic": (bundle.S_F, bundle.S_K),
        "tilde": (bundle.S_F, bundle.K),
    }
    checks = []
    for kind, builder in _TRIPLET_BUILDERS.items():
        trip = builder(bundle, cfg)
        want0, want1 = kernel_targets[kind]
        green = green_identity_defect(trip)
        rank_ok = boundary_map_rank(trip) == 2 * trip.g
        a0 = relation_equal(trip.ker_gamma0, want0, cfg)
        a1 = relation_equal(trip.ker_gamma1, want1, cfg)
        kernels_ok = (
            a0.verdict is Verdict.EQUAL and a1.verdict is Verdict.EQUAL
        )
        checks.append(
            {
                "name": f"triplet_{kind}_green_identity",
                "passed": green < 1e-10,
                "residual": green,
            }
        )
        checks.append(
            {
                "name": f"triplet_{kind}_surjective_and_kernels",
                "passed": bool(rank_ok and kernels_ok),
                "residual": max(a0.angle, a1.angle),
            }
        )
    return checks


def cmd_extensions(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    spec = load_relation_spec(args.spec, cfg)
    rel = spec.relation
    bundle = lift(rel, cfg)

    checks = _triplet_checks(bundle, cfg)

    from .relation import componentwise_sum

    transversal = componentwise_sum(bundle.H, bundle.K, cfg)
    r_t = relation_equal(bundle.S_star, transversal, cfg)
    checks.append(
        {
            "name": "adjoint_is_componentwise_sum_H_K",
            "passed": r_t.verdict is Verdict.EQUAL,
            "residual": r_t.angle,
        }
    )
    s0_sum = componentwise_sum(bundle.S_F, bundle.S_K, cfg)
    r_s0 = relation_equal(adjoint(bundle.S0, cfg), s0_sum, cfg)
    checks.append(
        {
            "name": "s0_adjoint_is_sum_of_extreme_extensions",
            "passed": r_s0.verdict is Verdict.EQUAL,
            "residual": r_s0.angle,
        }
    )
    r_f = relation_equal(friedrichs_generic(bundle.S, cfg), bundle.S_F, cfg)
    r_k = relation_equal(krein_generic(bundle.S, cfg), bundle.S_K, cfg)
    checks.append(
        {
            "name": "friedrichs_closed_form",
            "passed": r_f.verdict is Verdict.EQUAL,
            "residual": r_f.angle,
        }
    )
    checks.append(
        {
            "name": "krein_closed_form",
            "passed": r_k.verdict is Verdict.EQUAL,
            "residual": r_k.angle,
        }
    )

    rng = np.random.default_rng(args.seed)
    worst_margin = math.inf
    g0 = bundle.G0.dim
    if g0:
        for _ in range(3):
            theta = random_selfadjoint_relation(g0, rng=rng, nonneg=True)
            a_theta = nonneg_extension(bundle, theta, cfg)
            worst_margin = min(
                worst_margin, krein_order_margin(a_theta, bundle, cfg)
            )
    checks.append(
        {
            "name": "krein_order_sampled_parameters",
            "passed": worst_margin >= cfg.psd_floor,
            "residual": encode_float(max(0.0, -worst_margin))
            if math.isfinite(worst_margin)
            else 0.0,
        }
    )

    family = []
    for name, l_space in (
        ("zero", Subspace.zero(g0)),
        ("full", Subspace.full(g0)),
    ):
        a_l = extremal_family(bundle, l_space, cfg)
        family.append(
            {
                "parameter_subspace": name,
                "extension": encode_relation(a_l),
                "extremal": is_extremal(a_l, bundle, cfg),
            }
        )

    report = {
        "tool": {"name": "linrel", "version": __version__},
        "config": _config_echo(cfg, args.seed),
        "input": _input_echo(spec),
        "parts_summary": {
            "dom_dim": bundle.dom_R.dim,
            "ran_dim": bundle.ran_R.dim,
            "mul_adjoint_dim": bundle.mul_R_star.dim,
            "ker_adjoint_dim": bundle.ker_R_star.dim,
        },
        "boundary_spaces": {
            "G": encode_subspace(bundle.G),
            "G0": encode_subspace(bundle.G0),
            "G_tilde": encode_subspace(bundle.G_tilde),
        },
        "extensions": {
            "S": encode_relation(bundle.S),
            "S_star": encode_relation(bundle.S_star),
            "H": encode_relation(bundle.H),
            "K": encode_relation(bundle.K),
            "S_F": encode_relation(bundle.S_F),
            "S_K": encode_relation(bundle.S_K),
            "S0": encode_relation(bundle.S0),
            "S0_star": encode_relation(bundle.S0_star),
            "S_tilde": encode_relation(bundle.S_tilde),
            "S_tilde_star": encode_relation(bundle.S_tilde_star),
        },
        "flags": {
            "relation_is_singular": is_singular_relation(rel, cfg),
            "friedrichs_equals_krein": relation_equal(
                bundle.S_F, bundle.S_K, cfg
            ).verdict
            is Verdict.EQUAL,
        },
        "extremal_family": family,
        "checks": checks,
    }
    _emit(dump_report(report), args.out)
    return 0 if all(c["passed"] for c in checks) else 1


def _parse_lambda_grid(text: str) -> list[complex]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"--grid: invalid JSON: {exc.msg}") from exc
    if not isinstance(raw, list) or not raw:
        raise InputFormatError("--grid: expected a non-empty JSON list")
    grid = []
    for i, item in enumerate(raw):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            grid.append(complex(float(item), 0.0))
        elif (
            isinstance(item, list)
            and len(item) == 2
            and all(
                isinstance(p, (int, float)) and not isinstance(p, bool)
                for p in item
            )
        ):
            grid.append(complex(float(item[0]), float(item[1])))
        else:
            raise InputFormatError(
                f"--grid[{i}]: expected a number or a [re, im] pair"
            )
    return grid


def cmd_weyl(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    spec = load_relation_spec(args.spec, cfg)
    grid = _parse_lambda_grid(args.grid)
    bundle = lift(spec.relation, cfg)
    trip = _TRIPLET_BUILDERS[args.triplet](bundle, cfg)
    g = trip.g

    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["re_lambda", "im_lambda"]
    for i in range(g):
        for j in range(g):
            header += [f"m{i}{j}_re", f"m{i}{j}_im"]
    header.append("status")
    writer.writerow(header)
    for lam in grid:
        row = [repr(lam.real), repr(lam.imag)]
        try:
            m_lam = weyl(trip, lam, cfg)
        except SpectrumError:
            row += [""] * (2 * g * g) + ["singular"]
        else:
            for i in range(g):
                for j in range(g):
                    row += [
                        repr(float(m_lam[i, j].real)),
                        repr(float(m_lam[i, j].imag)),
                    ]
            row.append("ok")
        writer.writerow(row)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_extend(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    spec = load_relation_spec(args.spec, cfg)
    theta_spec = load_relation_spec(args.theta, cfg)
    theta = theta_spec.relation
    bundle = lift(spec.relation, cfg)
    trip = _TRIPLET_BUILDERS[args.triplet](bundle, cfg)
    if theta.n1 != trip.g or theta.n2 != trip.g:
        raise DimensionMismatch(
            f"theta acts on C^{theta.n1} x C^{theta.n2}, but the "
            f"{args.triplet} parameter space has dimension {trip.g}"
        )
    if not classify(theta, cfg).is_selfadjoint:
        raise PreconditionViolated(
            "theta is not selfadjoint; it does not parametrize a "
            "selfadjoint extension"
        )

    a_theta = extension_from_boundary(trip, theta, cfg)
    rep = classify(a_theta, cfg, seed=args.seed)
    extremal = margin = None
    if rep.is_nonnegative:
        extremal = is_extremal(a_theta, bundle, cfg)
        margin = krein_order_margin(a_theta, bundle, cfg)
    report = {
        "tool": {"name": "linrel", "version": __version__},
        "config": _config_echo(cfg, args.seed),
        "input": _input_echo(spec),
        "theta": _input_echo(theta_spec),
        "triplet": {
            "kind": trip.kind,
            "parameter_dim": trip.g,
            "ker_gamma0_is_friedrichs": trip.ker_gamma0_is_friedrichs,
        },
        "extension": encode_relation(a_theta),
        "symmetry": _symmetry_echo(a_theta, cfg, args.seed),
        "extremal": extremal,
        "krein_order": {
            "margin": encode_float(margin),
            "holds": None if margin is None else margin >= cfg.psd_floor,
        },
    }
    _emit(dump_report(report), args.out)
    return 0


def cmd_semibound_demo(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    try:
        raw = json.loads(args.c_list)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"--c-list: invalid JSON: {exc.msg}") from exc
    if not isinstance(raw, list) or not raw or not all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in raw
    ):
        raise InputFormatError("--c-list: expected a non-empty list of reals")

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        [
            "c",
            "lower_bound",
            "closed_form_bound",
            "abs_gap",
            "sufficient_bound",
            "sufficient_bound_holds",
            "criterion_agrees",
        ]
    )
    results = []
    for c in raw:
        exp = alternative_experiment(float(c), args.delta, cfg)
        results.append(exp)
        writer.writerow(
            [
                repr(float(exp.c)),
                repr(float(exp.computed_bound)),
                repr(float(exp.closed_form_bound)),
                repr(abs(float(exp.computed_bound - exp.closed_form_bound))),
                repr(float(exp.sufficient_bound)),
                exp.sufficient_bound_holds,
                exp.criterion_agrees,
            ]
        )
    _emit(buf.getvalue(), args.out)

    bounded = sum(r.sufficient_bound_holds for r in results)
    agreeing = sum(r.criterion_agrees for r in results)
    verdict = (
        "bounded-below branch holds for every family member"
        if bounded == len(results)
        else "bounded-below branch FAILED for some family member"
    )
    print(
        f"verdict: {verdict} ({bounded}/{len(results)}); criterion "
        f"agreement {agreeing}/{len(results)}"
    )
    return 0 if bounded == len(results) and agreeing == len(results) else 1


def _verify_checks(spec: LoadedSpec, cfg: ToleranceConfig,
                   seed: int) -> list[tuple[str, bool, float | None]]:
    rel = spec.relation
    checks: list[tuple[str, bool, float | None]] = []

    checks.append(
        ("input_graph_orthonormal", not spec.was_orthonormalized, None)
    )

    adj = adjoint(rel, cfg)
    r_o = relation_equal(adj, adjoint_definitional(rel, cfg), cfg)
    checks.append(
        ("adjoint_matches_oracle", r_o.verdict is Verdict.EQUAL, r_o.angle)
    )
    r_i = relation_equal(adjoint(adj, cfg), rel, cfg)
    checks.append(
        ("adjoint_involution", r_i.verdict is Verdict.EQUAL, r_i.angle)
    )

    p = parts(rel, cfg)
    p_adj = parts(adj, cfg)
    a_mul = relate(p_adj.mul, complement(p.dom, cfg), cfg)
    a_ker = relate(p_adj.ker, complement(p.ran, cfg), cfg)
    checks.append(
        (
            "adjoint_parts_duality",
            a_mul.verdict is Verdict.EQUAL and a_ker.verdict is Verdict.EQUAL,
            max(a_mul.angle, a_ker.angle),
        )
    )

    bundle = lift(rel, cfg)
    from .extension import s0_adjoint_decomposition_check

    checks.append(
        (
            "lift_decompositions",
            s0_adjoint_decomposition_check(bundle, cfg),
            None,
        )
    )
    r_f = relation_equal(friedrichs_generic(bundle.S, cfg), bundle.S_F, cfg)
    r_k = relation_equal(krein_generic(bundle.S, cfg), bundle.S_K, cfg)
    checks.append(
        (
            "extreme_extensions_closed_forms",
            r_f.verdict is Verdict.EQUAL and r_k.verdict is Verdict.EQUAL,
            max(r_f.angle, r_k.angle),
        )
    )

    kernel_targets = {
        "main": (bundle.H, bundle.K),
        "basic": (bundle.S_F, bundle.S_K),
        "tilde": (bundle.S_F, bundle.K),
    }
    for kind, builder in _TRIPLET_BUILDERS.items():
        trip = builder(bundle, cfg)
        want0, want1 = kernel_targets[kind]
        green = green_identity_defect(trip)
        rank_ok = boundary_map_rank(trip) == 2 * trip.g
        k0 = relation_equal(trip.ker_gamma0, want0, cfg)
        k1 = relation_equal(trip.ker_gamma1, want1, cfg)
        ok = (
            green < 1e-10
            and rank_ok
            and k0.verdict is Verdict.EQUAL
            and k1.verdict is Verdict.EQUAL
        )
        checks.append(
            (f"triplet_{kind}", ok, max(green, k0.angle, k1.angle))
        )
        worst = 0.0
        for lam in (-1.0, 1j):
            diff = weyl(trip, lam, cfg) - closed_form_weyl(bundle, kind, lam)
            if diff.size:
                worst = max(worst, float(np.max(np.abs(diff))))
        checks.append((f"weyl_{kind}_closed_form", worst < 1e-9, worst))

    rng = np.random.default_rng(seed)
    g = bundle.G.dim
    thetas = [random_selfadjoint_relation(g, rng=rng) for _ in range(5)]
    sweep = extension_sweep(bundle, thetas, cfg)
    checks.append(
        (
            "extension_sweep",
            sweep.all_consistent and sweep.injective,
            None,
        )
    )

    worst_margin = math.inf
    g0 = bundle.G0.dim
    if g0:
        for _ in range(3):
            theta = random_selfadjoint_relation(g0, rng=rng, nonneg=True)
            a_theta = nonneg_extension(bundle, theta, cfg)
            worst_margin = min(
                worst_margin, krein_order_margin(a_theta, bundle, cfg)
            )
    checks.append(
        (
            "krein_order_sampled",
            worst_margin >= cfg.psd_floor,
            None if math.isinf(worst_margin) else max(0.0, -worst_margin),
        )
    )
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    spec = load_relation_spec(args.spec, cfg)
    checks = _verify_checks(spec, cfg, args.seed)
    lines = []
    for name, passed, residual in checks:
        status = "ok" if passed else "FAIL"
        tail = "" if residual is None else f" (residual={residual:.3e})"
        lines.append(f"{status:4s} {name}{tail}")
    passed_count = sum(ok for _, ok, _ in checks)
    verdict = "PASS" if passed_count == len(checks) else "FAIL"
    lines.append(f"verify: {verdict} ({passed_count}/{len(checks)})")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if verdict == "PASS" else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol-rank",
        type=float,
        default=DEFAULT_TOLERANCES.rank_tol,
        help="relative rank threshold for factorizations (default %(default)g)",
    )
    common.add_argument(
        "--tol-angle",
        type=float,
        default=DEFAULT_TOLERANCES.angle_tol,
        help="principal-angle tolerance for subspace verdicts "
        "(default %(default)g)",
    )
    common.add_argument(
        "--psd-floor",
        type=float,
        default=DEFAULT_TOLERANCES.psd_floor,
        help="eigenvalue floor accepted as nonnegative (default %(default)g)",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for all sampled checks (default %(default)d)",
    )
    common.add_argument(
        "--out",
        metavar="PATH",
        default=None,
        help="write the report to PATH instead of stdout",
    )

    parser = argparse.ArgumentParser(
        prog="linrel",
        description="Numerical toolkit for closed linear relations.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "analyze",
        parents=[common],
        help="parts, symmetry report, and adjoint of one relation",
    )
    p.add_argument("spec", help="relation spec file (JSON)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser(
        "extensions",
        parents=[common],
        help="lift a relation and report its distinguished extensions",
    )
    p.add_argument("spec", help="relation spec file (JSON)")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser(
        "weyl",
        parents=[common],
        help="evaluate a Weyl function on a lambda grid, as CSV",
    )
    p.add_argument("spec", help="relation spec file (JSON)")
    p.add_argument(
        "--triplet",
        choices=tuple(_TRIPLET_BUILDERS),
        default="main",
        help="which boundary triplet to use (default %(default)s)",
    )
    p.add_argument(
        "--grid",
        required=True,
        help="JSON list of lambda values; entries are numbers or "
        "[re, im] pairs",
    )
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser(
        "extend",
        parents=[common],
        help="build the extension attached to a boundary parameter",
    )
    p.add_argument("spec", help="relation spec file (JSON)")
    p.add_argument(
        "--theta",
        required=True,
        help="boundary parameter spec file (JSON relation in the "
        "parameter space)",
    )
    p.add_argument(
        "--triplet",
        choices=tuple(_TRIPLET_BUILDERS),
        default="main",
        help="which boundary triplet to use (default %(default)s)",
    )
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser(
        "semibound-demo",
        parents=[common],
        help="lower bounds of the scalar extension family, as CSV",
    )
    p.add_argument(
        "--delta",
        type=float,
        default=1.0,
        help="boundary parameter is -delta times the identity "
        "(default %(default)g)",
    )
    p.add_argument(
        "--c-list",
        default="[0.0, 1.0, 2.0, 10.0]",
        help="JSON list of slopes c (default %(default)s)",
    )
    p.set_defaults(func=cmd_semibound_demo)

    p = sub.add_parser(
        "verify",
        parents=[common],
        help="run the oracle-backed property battery on one relation",
    )
    p.add_argument("spec", help="relation spec file (JSON)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, DimensionMismatch) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionViolated, SpectrumError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
