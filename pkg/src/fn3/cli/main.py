"""Command-line entry point for fn3."""

import argparse
import logging
import sys
from multiprocessing import freeze_support
from pathlib import Path
from typing import Any, Dict

import numpy as np

from .. import __version__
from ..gluing.assembly import (
    assemble_surface,
    evaluate_word,
    extract_fn,
    parse_word,
    relation_residuals,
)
from ..linalg.classify import classify, trace_test
from ..linalg.eigen import eigen3
from ..linalg.matrix import adjugate, check_unimodular, tr
from ..pants.builder import build_pants
from ..pants.families import goldman_pants, goldman_rho
from ..real_forms.detection import detect_pants
from ..real_forms.goldman import (
    GoldmanParams,
    goldman_boundary_to_traces,
    goldman_internal_t,
    traces_to_goldman_boundary,
    zhang_sigma,
)
from ..real_forms.su21 import PPTraces, cross_ratios, pp_linear_system, su_check
from ..sl2.fuchsian import fuchsian_coords, fuchsian_pants, gilman_maskit_sign, sl2_pants_from_traces
from ..traces.lawton import lawton_sym
from ..traces.shape import pants_coords, reducibility_test, shape_invariants
from ..utils.errors import Fn3Error, MalformedInput, RepeatedEigenvalues
from .config import RunConfig, parse_tol
from .serialize import (
    complex_to_json,
    coords_from_json,
    coords_to_json,
    matrix_from_json,
    matrix_to_json,
    pants_from_json,
    pants_to_json,
    read_json,
    record_to_json,
    surface_input,
    surface_to_json,
    verdict_to_json,
    write_json,
)
from .suites import run_suites

log = logging.getLogger(__name__)


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.load(Path(args.config) if args.config else None)
    return cfg.with_overrides(
        seed=args.seed,
        tol=parse_tol(args.tol),
        out=Path(args.out) if args.out else None,
        quick=args.quick,
    )


def report(cfg: RunConfig, command: str, result: Dict[str, Any]) -> Dict[str, Any]:
    return {"fn3_version": __version__, "command": command, "config": cfg.to_dict(), "result": result}


def _matrix_arg(data: Any, key: str = "matrix") -> np.ndarray:
    if isinstance(data, dict):
        if key not in data:
            raise MalformedInput(f"expected key {key!r}")
        data = data[key]
    return matrix_from_json(data)


def cmd_classify(args: argparse.Namespace) -> None:
    """Classify one SL(3, C) element."""
    cfg = load_config(args)
    m = check_unimodular(_matrix_arg(read_json(Path(args.file))), cfg.tol("unimodular"))
    cls = classify(m, tol=cfg.tol("classify"))
    test = trace_test(tr(m), tr(adjugate(m)))
    result: Dict[str, Any] = {
        "class": cls.value,
        "family": cls.family,
        "trace": complex_to_json(tr(m)),
        "trace_inverse": complex_to_json(tr(adjugate(m))),
        "trace_test": {
            "strongly_loxodromic": test.strongly_loxodromic,
            "F": complex_to_json(test.F),
            "conjugate_pair": test.conjugate_pair,
            "indeterminate": test.indeterminate,
        },
    }
    try:
        eig = eigen3(m)
        result["eigenvalues"] = [complex_to_json(v) for v in eig.values]
        result["eigenvectors"] = matrix_to_json(eig.vectors)
    except RepeatedEigenvalues as e:
        result["eigenvalues"] = None
        result["eigen_note"] = str(e)
    write_json(report(cfg, "classify", result), cfg.output)


def cmd_pants_build(args: argparse.Namespace) -> None:
    """Build a pants from its eight trace coordinates."""
    cfg = load_config(args)
    y = coords_from_json(read_json(Path(args.file)))
    rep, solver = build_pants(y, seed=cfg.seed)
    write_json(report(cfg, "pants build", pants_to_json(rep, solver)), cfg.output)


def cmd_pants_coords(args: argparse.Namespace) -> None:
    """Coordinates, shape and verdict of a pants given by A and B."""
    cfg = load_config(args)
    data = read_json(Path(args.file))
    if not isinstance(data, dict):
        raise MalformedInput("a pants file is an object with 'A' and 'B'")
    rep = pants_from_json(data)
    y = rep.coords
    quad = lawton_sym(y)
    shape = shape_invariants(rep.A, rep.B)
    result = {
        "coords": coords_to_json(y),
        "shape": {
            "sigma_plus": complex_to_json(shape.sigma_plus),
            "sigma_minus": complex_to_json(shape.sigma_minus),
        },
        "commutator_quadratic": {
            "S": complex_to_json(quad.S),
            "P": complex_to_json(quad.P),
            "roots": [complex_to_json(r) for r in quad.roots],
            "repeated": quad.repeated(),
        },
        "reducibility": reducibility_test(y, tol=cfg.tol("self_pairing")).value,
        "irreducible": rep.irreducible_flag,
        "irreducibility_margin": rep.irreducibility_margin,
        "verdict": verdict_to_json(detect_pants(y, tol=cfg.tol("detect"))),
    }
    write_json(report(cfg, "pants coords", result), cfg.output)


def _surface(args: argparse.Namespace, cfg: RunConfig, gate: bool = True):
    d, entries = surface_input(read_json(Path(args.file)))
    return assemble_surface(
        d,
        entries,
        seed=cfg.seed,
        require_closed=not args.open,
        relation_tol=cfg.tol("relation") if gate else None,
    )


def cmd_surface_build(args: argparse.Namespace) -> None:
    cfg = load_config(args)
    rep = _surface(args, cfg)
    result = surface_to_json(rep)
    result["max_relation_residual"] = max(relation_residuals(rep).values())
    write_json(report(cfg, "surface build", result), cfg.output)


def cmd_surface_check(args: argparse.Namespace) -> None:
    """Normalized relation residuals and the generator trace table."""
    cfg = load_config(args)
    rep = _surface(args, cfg, gate=False)
    residuals = relation_residuals(rep)
    worst = max(residuals.values())
    table = {
        name: {"tr": complex_to_json(tr(m)), "tr_inv": complex_to_json(tr(adjugate(m)))}
        for name, m in sorted(rep.generators.items())
    }
    result = {
        "relations": dict(sorted(residuals.items())),
        "raw_relations": dict(sorted(relation_residuals(rep, normalized=False).items())),
        "max_relation_residual": worst,
        "status": "PASS" if worst <= cfg.tol("relation") else "FAIL",
        "traces": table,
    }
    write_json(report(cfg, "surface check", result), cfg.output)
    if worst > cfg.tol("relation"):
        sys.exit(1)


def cmd_surface_coords(args: argparse.Namespace) -> None:
    cfg = load_config(args)
    rep = _surface(args, cfg)
    write_json(report(cfg, "surface coords", record_to_json(extract_fn(rep))), cfg.output)


def cmd_surface_word(args: argparse.Namespace) -> None:
    cfg = load_config(args)
    rep = _surface(args, cfg)
    w = evaluate_word(rep, args.word)
    result = {
        "word": parse_word(args.word),
        "matrix": matrix_to_json(w),
        "tr": complex_to_json(tr(w)),
        "tr_inv": complex_to_json(tr(adjugate(w))),
        "class": classify(w, tol=cfg.tol("classify")).value,
    }
    write_json(report(cfg, "surface word", result), cfg.output)


def cmd_verify(args: argparse.Namespace) -> None:
    """Run a verification suite; exit 1 when any check fails."""
    cfg = load_config(args)
    results = run_suites(args.suite, cfg)
    passed = all(r.passed for r in results)
    payload = {"status": "PASS" if passed else "FAIL", "suites": [r.to_dict() for r in results]}
    write_json(report(cfg, f"verify {args.suite}", payload), cfg.output)
    for r in results:
        print(f"{r.name}: {'PASS' if r.passed else 'FAIL'}", file=sys.stderr)
    if not passed:
        sys.exit(1)


def _goldman_params(data: Dict[str, Any]) -> GoldmanParams:
    try:
        lam = tuple(float(v) for v in data["lam"])
        tau = tuple(float(v) for v in data["tau"])
        s, r = float(data["s"]), float(data["r"])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"Goldman parameters need lam[3], tau[3], s and r: {e}") from e
    return GoldmanParams(lam=lam, tau=tau, s=s, r=r, strict=bool(data.get("strict", True)))


def cmd_convert_goldman(args: argparse.Namespace) -> None:
    """Boundary invariants to traces and back, or full parameters to a pants."""
    cfg = load_config(args)
    data = read_json(Path(args.file))
    if not isinstance(data, dict):
        raise MalformedInput("a Goldman file is a JSON object")
    if "t" in data:
        lam, tau = traces_to_goldman_boundary(float(data["t"]), float(data["t_inv"]))
        result: Dict[str, Any] = {"lam": lam, "tau": tau}
    elif isinstance(data.get("lam"), (int, float)):
        t, tinv = goldman_boundary_to_traces(float(data["lam"]), float(data["tau"]))
        result = {"t": t, "t_inv": tinv}
    else:
        p = _goldman_params(data)
        rho = goldman_rho(p)
        rep = goldman_pants(p)
        sigma = zhang_sigma(p, rho)
        result = {
            "pants": pants_to_json(rep),
            "t_internal": goldman_internal_t(p),
            "rho": {
                "A": rho.rho_a,
                "B": rho.rho_b,
                "C_reference": rho.rho_c_reference,
                "C_relation": rho.rho_c_relation,
                "used": rho.used,
            },
            "sigma_plus": sigma.sigma_plus.real,
            "sigma_minus": sigma.sigma_minus.real,
        }
    write_json(report(cfg, "convert goldman", result), cfg.output)


def cmd_convert_ppcross(args: argparse.Namespace) -> None:
    """Cross-ratios of an SU(2,1) pair, directly and from traces."""
    cfg = load_config(args)
    data = read_json(Path(args.file))
    a, b = _matrix_arg(data, "A"), _matrix_arg(data, "B")
    for name, m in (("A", a), ("B", b)):
        if not su_check(m, tol=cfg.tol("residual")):
            log.warning("%s does not preserve J within %.1e", name, cfg.tol("residual"))
    ratios = cross_ratios(a, b)
    x1, x2 = pp_linear_system(eigen3(a), eigen3(b), PPTraces.from_matrices(a, b))
    first, second = ratios.falbel_residuals()
    result = {
        "X1": complex_to_json(ratios.X1),
        "X2": complex_to_json(ratios.X2),
        "X3": complex_to_json(ratios.X3),
        "degenerate": ratios.degenerate,
        "falbel_residuals": [first, second],
        "from_traces": {"X1": complex_to_json(x1), "X2": complex_to_json(x2)},
    }
    write_json(report(cfg, "convert ppcross", result), cfg.output)


def cmd_convert_sl2(args: argparse.Namespace) -> None:
    """Symmetric-square pants of an SL(2) triple and its shape data."""
    cfg = load_config(args)
    x, y, z = (complex(v) for v in (args.x, args.y, args.z))
    pair = sl2_pants_from_traces(x, y, z)
    a, b, c = fuchsian_pants(x, y, z)
    coords = pants_coords(a, b)
    result: Dict[str, Any] = {
        "sl2": {"A": [[complex_to_json(v) for v in row] for row in pair.A],
                "B": [[complex_to_json(v) for v in row] for row in pair.B]},
        "A": matrix_to_json(a),
        "B": matrix_to_json(b),
        "C": matrix_to_json(c),
        "coords": coords_to_json(coords),
        "tr_comm_sl2": complex_to_json(pair.tr_comm),
    }
    if all(v.imag == 0 for v in (x, y, z)):
        result["gilman_maskit_sign"] = gilman_maskit_sign(x.real, y.real, z.real)
        try:
            expected = fuchsian_coords(coords.y1, coords.y2, coords.y3)
            result["closed_form_sigma"] = complex_to_json(expected.y4)
        except Fn3Error as e:
            result["closed_form_note"] = str(e)
    write_json(report(cfg, "convert sl2", result), cfg.output)


def add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Random seed (default: from config, else 0)")
    parser.add_argument(
        "--tol",
        action="append",
        metavar="NAME=VAL",
        help="Override a tolerance; may be repeated",
    )
    parser.add_argument("--out", help="Write the JSON report here instead of stdout")
    parser.add_argument("--config", help="JSON RunConfig file")
    parser.add_argument("--quick", action="store_true", help="Divide sample counts by ten")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fn3",
        description="Fenchel-Nielsen coordinates for SL(3, C) surface group representations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"fn3 {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # classify command
    classify_parser = subparsers.add_parser("classify", help="Classify a matrix from a JSON file")
    classify_parser.add_argument("file", help="JSON 3x3 matrix, or an object with 'matrix'")
    add_common(classify_parser)
    classify_parser.set_defaults(func=cmd_classify)

    # pants command
    pants_parser = subparsers.add_parser("pants", help="Build pants or read their coordinates")
    pants_sub = pants_parser.add_subparsers(dest="action")
    build = pants_sub.add_parser("build", help="Pants from eight trace coordinates")
    build.add_argument("file", help="JSON coordinates {'y': [...], 'root_choice': ...}")
    add_common(build)
    build.set_defaults(func=cmd_pants_build)
    coords = pants_sub.add_parser("coords", help="Coordinates of a pants given by A and B")
    coords.add_argument("file", help="JSON object with matrices 'A' and 'B'")
    add_common(coords)
    coords.set_defaults(func=cmd_pants_coords)

    # surface command
    surface_parser = subparsers.add_parser("surface", help="Assemble and query surface representations")
    surface_sub = surface_parser.add_subparsers(dest="action")
    for name, func, text in (
        ("build", cmd_surface_build, "Assemble the representation"),
        ("check", cmd_surface_check, "Relation residuals and trace table"),
        ("coords", cmd_surface_coords, "Extract Fenchel-Nielsen coordinates"),
        ("word", cmd_surface_word, "Evaluate a word in the generators"),
    ):
        sub = surface_sub.add_parser(name, help=text)
        sub.add_argument("file", help="JSON decomposition with per-pants coordinates")
        sub.add_argument("--open", action="store_true", help="Allow free boundary slots")
        if name == "word":
            sub.add_argument("--word", required=True, help='Generators, e.g. "P0.A -D1 P1.B"')
        add_common(sub)
        sub.set_defaults(func=func)

    # verify command
    verify_parser = subparsers.add_parser("verify", help="Run a verification suite")
    verify_parser.add_argument("suite", help="Suite name, or 'all'")
    add_common(verify_parser)
    verify_parser.set_defaults(func=cmd_verify)

    # convert command
    convert_parser = subparsers.add_parser("convert", help="Coordinate conversions")
    convert_sub = convert_parser.add_subparsers(dest="action")
    goldman = convert_sub.add_parser("goldman", help="Goldman boundary invariants and pants")
    goldman.add_argument("file", help="JSON with (lam, tau), (t, t_inv) or full parameters")
    add_common(goldman)
    goldman.set_defaults(func=cmd_convert_goldman)
    ppcross = convert_sub.add_parser("ppcross", help="Cross-ratios of an SU(2,1) pair")
    ppcross.add_argument("file", help="JSON object with matrices 'A' and 'B'")
    add_common(ppcross)
    ppcross.set_defaults(func=cmd_convert_ppcross)
    sl2 = convert_sub.add_parser("sl2", help="Symmetric-square pants of SL(2) traces")
    for coord in ("x", "y", "z"):
        sl2.add_argument(coord, type=float)
    add_common(sl2)
    sl2.set_defaults(func=cmd_convert_sl2)

    return parser


def main(argv: Any = None) -> None:
    """Main entry point for the fn3 command."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    if not getattr(args, "func", None):
        parser.print_help()
        sys.exit(2)

    try:
        args.func(args)
    except Fn3Error as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(e.exit_code)


def patched_main() -> None:
    """Entry point that also works from a frozen binary."""
    if getattr(sys, "frozen", False):
        freeze_support()
    main()


if __name__ == "__main__":
    patched_main()
