"""Command-line front end: generate, spectrum, nodal, verify, batch.

Every output embeds the run configuration (command, source, seed,
tolerances) so a result file is reproducible from its own header.  Exit
codes: 0 clean pass, 1 any check failure or numerical breakdown, 2 usage
or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify as verify_mod
from .eigensolve import BACKEND, decompose, multiplicity_groups
from .errors import CertificationError, NoConvergence, TreeNodalError
from .nodal import EPS_Z_DEFAULT, decomposition_to_dot
from .operator import assemble, matrix_text
from .tree import from_json, generate, random_potential, to_dot, to_json
from .verify import eigenvector_decomposition, run_all

_KIND_ALIAS = {"random": "random_pruefer"}


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--generate",
        choices=("path", "star", "caterpillar", "random"),
        help="build a tree of this shape instead of reading one",
    )
    p.add_argument("--n", type=int, default=8, help="vertex count for --generate (default 8)")
    p.add_argument(
        "--weights", default="unit", help="edge weight law: unit or uniform:a:b (default unit)"
    )
    p.add_argument(
        "--potential", default="zero", help="potential law: zero or uniform:a:b (default zero)"
    )
    p.add_argument(
        "--seed", type=int, default=0,
        help="seed for weight draws; the potential uses seed+1 (default 0)",
    )
    p.add_argument("--input", metavar="FILE", help="read tree JSON from FILE instead")


def _add_tolerance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--eps-z", type=float, default=EPS_Z_DEFAULT,
        help="relative zero threshold for vertex values (default %g)" % EPS_Z_DEFAULT,
    )
    p.add_argument(
        "--tau-gap", type=float, default=None,
        help="eigenvalue gap below which values count as equal "
        "(default 1e-8 * max(1, ||A||_F))",
    )


def _add_output_args(p: argparse.ArgumentParser, formats, default) -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", metavar="FILE", help="write here instead of stdout")


def _check_tolerances(parser, args) -> None:
    if getattr(args, "eps_z", 1.0) <= 0.0:
        parser.error("--eps-z must be positive")
    tau = getattr(args, "tau_gap", None)
    if tau is not None and tau <= 0.0:
        parser.error("--tau-gap must be positive")


def _load_tree(parser, args):
    if args.input and args.generate:
        parser.error("give either --input or --generate, not both")
    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            parser.error(f"cannot read {args.input}: {exc}")
        try:
            return from_json(text)
        except TreeNodalError as exc:
            parser.error(f"bad input file: {exc}")
    if not args.generate:
        parser.error("one of --generate or --input is required")
    kind = _KIND_ALIAS.get(args.generate, args.generate)
    try:
        tree = generate(kind, args.n, weight_law=args.weights, seed=args.seed)
        potential = random_potential(tree.n, law=args.potential, seed=args.seed + 1)
    except (TreeNodalError, ValueError) as exc:
        parser.error(str(exc))
    return tree, potential


def _run_config(args, command: str, extra: dict | None = None) -> dict:
    cfg = {
        "command": command,
        "input": args.input if hasattr(args, "input") else None,
        "generate": getattr(args, "generate", None),
        "n": args.n if getattr(args, "generate", None) else None,
        "weights": args.weights if getattr(args, "generate", None) else None,
        "potential": args.potential if getattr(args, "generate", None) else None,
        "seed": getattr(args, "seed", None),
        "eps_z": getattr(args, "eps_z", None),
        "tau_gap": getattr(args, "tau_gap", None),
        "format": getattr(args, "format", None),
    }
    if extra:
        cfg.update(extra)
    return cfg


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _config_comment(cfg: dict, prefix: str) -> str:
    return f"{prefix} run_config: {json.dumps(cfg)}\n"


# ---------------------------------------------------------------------------


def cmd_generate(parser, args) -> int:
    _check_tolerances(parser, args)
    tree, potential = _load_tree(parser, args)
    cfg = _run_config(args, "generate")
    if args.format == "json":
        doc = json.loads(to_json(tree, potential))
        doc["run_config"] = cfg
        _emit(args, _json_text(doc))
    elif args.format == "dot":
        _emit(args, _config_comment(cfg, "//") + to_dot(tree, potential))
    else:
        lines = [_config_comment(cfg, "#").rstrip("\n")]
        lines.append(f"n={tree.n} root={tree.root}")
        for x, y, c in tree.edges:
            lines.append(f"{x} -- {y}  c={c!r}")
        lines.append("potential=" + " ".join(repr(float(v)) for v in potential))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_spectrum(parser, args) -> int:
    _check_tolerances(parser, args)
    tree, potential = _load_tree(parser, args)
    op = assemble(tree, potential)
    spec = decompose(op)
    mult = multiplicity_groups(spec, args.tau_gap)
    cfg = _run_config(args, "spectrum")
    if args.format == "json":
        payload = {"run_config": cfg, "backend": BACKEND}
        payload.update(spec.to_json_dict())
        payload["orthogonality_defect"] = spec.orthogonality_defect
        payload["multiplicity"] = mult.to_json_dict()
        if args.dump_matrix:
            payload["matrix"] = [[float(x) for x in row] for row in op.matrix]
        _emit(args, _json_text(payload))
    else:
        lines = [_config_comment(cfg, "#").rstrip("\n"), f"backend: {BACKEND}"]
        for k, lam in enumerate(spec.eigenvalues, start=1):
            lines.append(f"lambda_{k} = {float(lam)!r}  (residual {float(spec.residual_norms[k-1])!r})")
        lines.append(
            "groups: "
            + json.dumps([list(g) for g in mult.groups])
            + f"  simple={str(mult.is_simple).lower()}"
        )
        if args.dump_matrix:
            lines.append("matrix:")
            lines.append(matrix_text(op))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_nodal(parser, args) -> int:
    _check_tolerances(parser, args)
    tree, potential = _load_tree(parser, args)
    op = assemble(tree, potential)
    spec = decompose(op)
    if not 1 <= args.index <= spec.n:
        parser.error(f"--index must be in 1..{spec.n}")
    dec = eigenvector_decomposition(tree, spec, args.index, eps_z=args.eps_z)
    cfg = _run_config(args, "nodal", {"index": args.index})
    if args.format == "json":
        payload = {
            "run_config": cfg,
            "eigenvalue": float(spec.eigenvalues[args.index - 1]),
        }
        payload.update(dec.to_json_dict())
        _emit(args, _json_text(payload))
    elif args.format == "dot":
        _emit(args, _config_comment(cfg, "//") + decomposition_to_dot(tree, dec))
    else:
        lines = [_config_comment(cfg, "#").rstrip("\n")]
        lines.append(f"eigenvalue_{args.index} = {float(spec.eigenvalues[args.index - 1])!r}")
        for g in dec.sign_graphs:
            mark = "+" if g.sign > 0 else "-"
            lines.append(f"sign_graph {mark} vertices={list(g.vertices)}")
        for z in dec.zero_graphs:
            lines.append(f"zero_graph vertices={list(z)}")
        for z in dec.edge_zeros:
            lines.append(f"edge_zero ({z.x},{z.y}) t={z.t!r} kind={z.kind}")
        lines.append(f"zero_count={dec.zero_count}")
        lines.append(f"diagnostics={len(dec.diagnostics)}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_verify(parser, args) -> int:
    _check_tolerances(parser, args)
    tree, potential = _load_tree(parser, args)
    reports = run_all(tree, potential, eps_z=args.eps_z, tau_gap=args.tau_gap)
    cfg = _run_config(args, "verify")
    if args.format == "json":
        _emit(args, _json_text({"run_config": cfg, "reports": reports}))
    else:
        lines = [_config_comment(cfg, "#").rstrip("\n")]
        for rep in reports:
            note = ""
            det = rep["details"]
            if rep["check"] == "greens" and "max_rel_residual" in det:
                note = f"  max_rel={det['max_rel_residual']!r}"
            elif rep["check"] == "spectrum" and "oracle_deviation" in det:
                note = f"  oracle_dev={det['oracle_deviation']!r}"
            lines.append(f"{rep['check']:<16}{rep['verdict']}{note}")
        _emit(args, "\n".join(lines) + "\n")
    return 1 if any(r["verdict"] == "fail" for r in reports) else 0


_CONFIG_KEYS = (
    "count", "n_min", "n_max", "seed", "kind", "weights", "potential",
    "eps_z", "tau_gap", "greens_eps", "oracle_eps", "jobs",
)


def cmd_batch(parser, args) -> int:
    _check_tolerances(parser, args)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    params = {
        "count": args.count,
        "n_min": args.n_min,
        "n_max": args.n_max,
        "seed": args.seed,
        "kind": _KIND_ALIAS.get(args.generate, args.generate),
        "weights": args.weights,
        "potential": args.potential,
        "eps_z": args.eps_z,
        "tau_gap": args.tau_gap,
        "jobs": args.jobs,
    }
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                override = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read --config: {exc}")
        if not isinstance(override, dict):
            parser.error("--config must hold a JSON object")
        for key, value in override.items():
            if key not in _CONFIG_KEYS:
                parser.error(f"unknown config key {key!r}")
            params[key] = value
        if "kind" in override:
            params["kind"] = _KIND_ALIAS.get(override["kind"], override["kind"])
    try:
        summary = verify_mod.batch(**params)
    except (TreeNodalError, ValueError) as exc:
        parser.error(str(exc))
    summary["config"]["command"] = "batch"
    summary["config"]["format"] = args.format
    if args.format == "json":
        _emit(args, _json_text(summary))
    else:
        cfg = summary["config"]
        lines = [
            "# batch count=%d seed=%d n=[%d,%d] kind=%s weights=%s potential=%s"
            % (
                cfg["count"], cfg["seed"], cfg["n_min"], cfg["n_max"],
                cfg["kind"], cfg["weights"], cfg["potential"],
            )
        ]
        lines.append(f"{'check':<16}{'pass':>6}{'fail':>6}{'inapplicable':>14}")
        for name in sorted(summary["checks"]):
            slot = summary["checks"][name]
            lines.append(
                f"{name:<16}{slot['pass']:>6}{slot['fail']:>6}{slot['inapplicable']:>14}"
            )
        lines.append(f"simple spectra: {summary['simple_spectra']}/{summary['count']}")
        maxima = summary["maxima"]
        lines.append(
            "maxima: " + " ".join(f"{k}={v!r}" for k, v in maxima.items())
        )
        if summary["failures"]:
            lines.append("failures: " + " ".join(str(i) for i in summary["failures"]))
        else:
            lines.append("failures: none")
        _emit(args, "\n".join(lines) + "\n")
    return 1 if summary["failures"] else 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treenodal",
        description="Spectra, sign graphs, and nodal-domain checks on weighted trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a tree (JSON, DOT, or text)")
    _add_source_args(p)
    _add_output_args(p, ("json", "dot", "text"), "json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("spectrum", help="full eigendecomposition of one instance")
    _add_source_args(p)
    _add_tolerance_args(p)
    _add_output_args(p, ("json", "text"), "json")
    p.add_argument("--dump-matrix", action="store_true", help="include the assembled matrix")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("nodal", help="nodal decomposition of one eigenvector")
    _add_source_args(p)
    _add_tolerance_args(p)
    _add_output_args(p, ("json", "dot", "text"), "json")
    p.add_argument("--index", type=int, default=2, help="1-based eigenvector index (default 2)")
    p.set_defaults(func=cmd_nodal)

    p = sub.add_parser("verify", help="run every checker on one instance")
    _add_source_args(p)
    _add_tolerance_args(p)
    _add_output_args(p, ("json", "text"), "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="verify a seeded corpus and summarize")
    p.add_argument(
        "--generate", choices=("path", "star", "caterpillar", "random"), default="random",
        help="tree shape per instance (default random)",
    )
    p.add_argument("--count", type=int, default=100, help="instances (default 100)")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--weights", default="uniform:0.5:2")
    p.add_argument("--potential", default="uniform:-1:1")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--config", metavar="FILE", help="JSON object overriding batch settings")
    _add_tolerance_args(p)
    _add_output_args(p, ("json", "text"), "text")
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except (NoConvergence, CertificationError) as exc:
        print(f"treenodal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except TreeNodalError as exc:
        print(f"treenodal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
