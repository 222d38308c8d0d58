"""Command-line front end.

Subcommands: ``search`` runs the variational discovery loop and writes a
code artifact plus an iteration trace, ``verify`` re-checks an artifact,
generator file or built-in reference code, ``qfim`` sweeps circuit depth
and reports Fisher-information ranks, ``noise-scan`` samples gradient
magnitudes across circuit sizes, and ``concat`` evaluates the
concatenated-distance bound.

Exit codes: 0 success, 1 usage or configuration error, 2 search
exhausted or a requested check failed.
"""

from __future__ import annotations

import os

# Thread count is the only environment knob: set it before numpy spins
# up its pools (importing anything below pulls numpy in).
_threads = os.environ.get("QECSEARCH_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import argparse
import csv
import dataclasses
import json
import sys
import time

import numpy as np
import yaml

from .artifact import (
    artifact_from_result,
    load_artifact,
    report_document,
    save_artifact,
)
from .errors import (
    ErrorSet,
    collective_ad_error_set,
    depolarizing_zz_detection_set,
    pauli_below_effective,
    pauli_below_weight,
    single_ad_error_set,
)
from .graphs import ConnectivityGraph
from .noise import bp_scan
from .optimize import SearchConfig, varqec_search
from .paulis import PauliString
from .presets import (
    SEARCH_PRESETS,
    STABILIZER_TABLES,
    named_graph,
    non_cws_6_2_3,
    non_cws_7_2_3,
    search_preset,
    stabilizer_table_code,
)
from .qfim import dc_max, l_crit, parameter_dimension
from .ansatz import hardware_efficient_ansatz
from .verify import (
    CodeCandidate,
    code_distance,
    concat_bound,
    degeneracy,
    effective_distance,
    kl_report,
    local_equivalence,
    purity,
    stabilizer_basis,
    weight_enumerators,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EXHAUSTED = 2


class ConfigError(Exception):
    """Raised for malformed configuration with a field diagnostic."""


# ---------------------------------------------------------------------------
# config loading


def _field(mapping: dict, key: str, where: str, required: bool = False):
    if key not in mapping:
        if required:
            raise ConfigError(f"{where}: missing required key {key!r}")
        return None
    return mapping[key]


def _build_graph(spec, n: int, where: str) -> ConnectivityGraph:
    if isinstance(spec, str):
        return named_graph(spec, n)
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected a name or a mapping")
    size = int(spec.get("n", n))
    if "edges" in spec:
        edges = []
        for pos, edge in enumerate(spec["edges"]):
            if len(edge) != 2:
                raise ConfigError(f"{where}.edges[{pos}]: need exactly two vertices")
            a, b = int(edge[0]), int(edge[1])
            for v in (a, b):
                if not 0 <= v < size:
                    raise ConfigError(
                        f"{where}.edges[{pos}]: vertex {v} out of range for n={size}"
                    )
            if a == b:
                raise ConfigError(f"{where}.edges[{pos}]: self-loop {a}")
            edges.append((a, b))
        return ConnectivityGraph(size, tuple(edges))
    if "family" in spec:
        try:
            return named_graph(str(spec["family"]), size)
        except ValueError as exc:
            raise ConfigError(f"{where}.family: {exc}") from None
    raise ConfigError(f"{where}: need either 'family' or 'edges'")


def _build_errors(spec: dict, graph: ConnectivityGraph, n: int, where: str) -> ErrorSet:
    kind = str(_field(spec, "kind", where, required=True))
    try:
        if kind == "pauli":
            return pauli_below_weight(n, int(_field(spec, "weight", where, True)))
        if kind == "pauli-effective":
            return pauli_below_effective(
                n,
                float(_field(spec, "c_z", where, True)),
                float(_field(spec, "d_e", where, True)),
            )
        if kind == "collective-ad":
            return collective_ad_error_set(n)
        if kind == "single-ad":
            return single_ad_error_set(n)
        if kind == "dep-zz":
            p = spec.get("p")
            p_zz = spec.get("p_zz")
            return depolarizing_zz_detection_set(
                graph,
                p=None if p is None else float(p),
                p_zz=None if p_zz is None else float(p_zz),
            )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    raise ConfigError(
        f"{where}.kind: unknown error model {kind!r} "
        "(pauli, pauli-effective, collective-ad, single-ad, dep-zz)"
    )


_OPTIMIZER_KEYS = {
    "ansatz_family",
    "l_max",
    "l_min",
    "c_tol",
    "l2_gate",
    "batch_fraction",
    "learning_rate",
    "max_sgd_iters",
    "convergence_window",
    "convergence_threshold",
    "full_cost_interval",
    "sgd_exit_l2",
    "restarts",
    "powell_xtol",
    "powell_max_sweeps",
    "powell_fev_per_sweep",
    "powell_improvement_tol",
    "powell_target",
    "descent_max_iters",
}


def config_from_mapping(doc: dict, name: str = "") -> SearchConfig:
    """Builds a search configuration from a parsed config document."""
    if not isinstance(doc, dict):
        raise ConfigError("config root: expected a mapping")
    problem = _field(doc, "problem", "config", required=True)
    if not isinstance(problem, dict):
        raise ConfigError("problem: expected a mapping")
    n = int(_field(problem, "n", "problem", required=True))
    code_dim = int(_field(problem, "code_dim", "problem", required=True))
    graph = _build_graph(
        _field(problem, "graph", "problem", required=True), n, "problem.graph"
    )
    if graph.n != n:
        raise ConfigError(f"problem.graph: graph has {graph.n} vertices, problem.n={n}")
    kwargs: dict = {"n": n, "code_dim": code_dim, "graph": graph}
    if problem.get("distance") is not None:
        kwargs["distance"] = int(problem["distance"])
    if problem.get("logical_qubits") is not None:
        kwargs["logical_qubits"] = tuple(int(q) for q in problem["logical_qubits"])
    if problem.get("errors") is not None:
        errors = problem["errors"]
        if not isinstance(errors, dict):
            raise ConfigError("problem.errors: expected a mapping")
        kwargs["errors"] = _build_errors(errors, graph, n, "problem.errors")
    optimizer = doc.get("optimizer") or {}
    if not isinstance(optimizer, dict):
        raise ConfigError("optimizer: expected a mapping")
    for key, value in optimizer.items():
        if key == "seed":
            kwargs["rng_seed"] = int(value)
            continue
        if key not in _OPTIMIZER_KEYS:
            raise ConfigError(f"optimizer.{key}: unknown key")
        default = SearchConfig.__dataclass_fields__[key].default
        kwargs[key] = type(default)(value) if default is not None else value
    kwargs["name"] = str(doc.get("name", name or f"{n}-{code_dim}"))
    try:
        return SearchConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config: {exc}") from None


def config_to_mapping(config: SearchConfig) -> dict:
    """Inverse of config_from_mapping for --dump-config and replay."""
    problem: dict = {
        "n": config.n,
        "code_dim": config.code_dim,
        "graph": {
            "n": config.graph.n,
            "edges": [list(e) for e in config.graph.edges],
        },
    }
    if config.distance is not None:
        problem["distance"] = config.distance
    if config.logical_qubits is not None:
        problem["logical_qubits"] = list(config.logical_qubits)
    if config.errors is not None:
        problem["errors"] = {"kind": "inline", "name": config.errors.name}
    optimizer = {}
    for key in sorted(_OPTIMIZER_KEYS):
        optimizer[key] = getattr(config, key)
    optimizer["seed"] = config.rng_seed
    return {"name": config.name, "problem": problem, "optimizer": optimizer}


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML ({exc})") from None


def _search_config(args) -> SearchConfig:
    if args.preset and args.config:
        raise ConfigError("give either --preset or --config, not both")
    if args.preset:
        try:
            config = search_preset(args.preset)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    elif args.config:
        config = config_from_mapping(_load_config_file(args.config))
    else:
        raise ConfigError("need --preset NAME or --config FILE")
    overrides = {}
    for field_name, arg_name in (
        ("restarts", "restarts"),
        ("l_max", "l_max"),
        ("rng_seed", "seed"),
        ("c_tol", "c_tol"),
    ):
        value = getattr(args, arg_name)
        if value is not None:
            overrides[field_name] = value
    if overrides:
        config = dataclasses.replace(config, **overrides)
    return config


# ---------------------------------------------------------------------------
# search


def _verification_for(code: CodeCandidate, config: SearchConfig):
    report = kl_report(code, config.error_set())
    if config.n <= 10:
        report.distance = code_distance(code)
        enum_a, enum_b = weight_enumerators(code)
        report.enumerator_a = enum_a
        report.enumerator_b = enum_b
    return report


def cmd_search(args) -> int:
    config = _search_config(args)
    if args.dump_config:
        yaml.safe_dump(config_to_mapping(config), sys.stdout, sort_keys=False)
        return EXIT_OK
    label = config.name or "search"
    t0 = time.perf_counter()
    result = varqec_search(config)
    elapsed = time.perf_counter() - t0
    trace_path = args.trace or f"{label}-trace.csv"
    with open(trace_path, "w", encoding="utf-8") as fh:
        fh.write(result.trace_csv())
    print(
        f"{label}: {result.status} after {elapsed:.1f}s, "
        f"best C1={result.final_c1:.3e} (C2={result.final_c2:.3e}), "
        f"layers={result.l_used}, restart={result.restart_index}"
    )
    print(f"trace: {trace_path}")
    if result.status != "found":
        return EXIT_EXHAUSTED
    report = _verification_for(result.code, config)
    artifact = artifact_from_result(result, report)
    out_path = args.out or f"{label}-artifact.json"
    save_artifact(artifact, out_path)
    extras = [f"kl max violation {report.max_violation:.2e}"]
    if report.distance is not None:
        extras.append(f"distance {report.distance}")
    print(f"artifact: {out_path} ({', '.join(extras)})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _code_from_text(path: str) -> CodeCandidate:
    with open(path, "r", encoding="utf-8") as fh:
        rows = [line.split("#")[0].strip() for line in fh]
    rows = [r for r in rows if r]
    if not rows:
        raise ConfigError(f"{path}: no generators found")
    try:
        return stabilizer_basis([PauliString(row) for row in rows])
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _load_code(spec: str) -> CodeCandidate:
    """Artifact path, generator file path, or built-in reference name."""
    if spec in STABILIZER_TABLES:
        return stabilizer_table_code(spec)
    if spec == "non-cws-6-2-3":
        return non_cws_6_2_3()
    if spec == "non-cws-7-2-3":
        return non_cws_7_2_3()
    if not os.path.exists(spec):
        known = ", ".join(sorted(STABILIZER_TABLES) + ["non-cws-6-2-3", "non-cws-7-2-3"])
        raise ConfigError(f"no such file or reference code: {spec} (built-ins: {known})")
    with open(spec, "r", encoding="utf-8") as fh:
        head = fh.read(1)
    if head == "{":
        try:
            artifact = load_artifact(spec)
            return artifact.replay()
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"{spec}: invariant violated ({exc})") from None
    return _code_from_text(spec)


def _parse_enumerators(text: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        part_a, part_b = text.split(":")
        enum_a = np.array([float(x) for x in part_a.split(",")])
        enum_b = np.array([float(x) for x in part_b.split(",")])
        return enum_a, enum_b
    except ValueError:
        raise ConfigError(
            "--enumerators wants 'a0,a1,...:b0,b1,...' (two comma lists)"
        ) from None


def cmd_verify(args) -> int:
    code = _load_code(args.input)
    checks: list[tuple[str, bool, str]] = []
    weight = args.distance if args.distance else 3
    errors = pauli_below_weight(code.n, min(weight, code.n + 1))
    report = kl_report(code, errors, tol=args.tol)
    checks.append(
        (
            "kl-detection",
            report.passed(),
            f"max violation {report.max_violation:.3e} over {len(errors)} errors",
        )
    )
    if args.distance:
        report.distance = code_distance(code, violation_tol=args.tol)
        checks.append(
            (
                "distance",
                report.distance == args.distance,
                f"measured {report.distance}, expected {args.distance}",
            )
        )
    if args.enumerators or args.print_enumerators:
        enum_a, enum_b = weight_enumerators(code)
        report.enumerator_a = enum_a
        report.enumerator_b = enum_b
        if args.enumerators:
            want_a, want_b = _parse_enumerators(args.enumerators)
            if len(want_a) != len(enum_a) or len(want_b) != len(enum_b):
                checks.append(("enumerators", False, "length mismatch"))
            else:
                diff = max(
                    float(np.abs(enum_a - want_a).max()),
                    float(np.abs(enum_b - want_b).max()),
                )
                checks.append(
                    ("enumerators", diff <= 1e-6, f"max coefficient diff {diff:.3e}")
                )
    if args.effective is not None:
        d_e = effective_distance(code, args.effective, violation_tol=args.tol)
        report.effective_distance[args.effective] = d_e
        line = f"c_z={args.effective:g} gives {d_e:g}"
        if args.expect_effective is not None:
            checks.append(
                ("effective-distance", d_e == args.expect_effective, line)
            )
        else:
            checks.append(("effective-distance", True, line))
    if args.degeneracy:
        pair_errors = pauli_below_weight(code.n, 2)
        pair_report = kl_report(code, pair_errors, pairwise=True)
        report.degenerate = degeneracy(pair_report)
        report.pure = purity(code, pair_errors)
        checks.append(
            (
                "degeneracy",
                True,
                f"degenerate={report.degenerate} pure={report.pure}",
            )
        )
    if args.equivalence:
        other = _load_code(args.equivalence)
        equivalent, witness = local_equivalence(code, other)
        detail = "no witness found"
        if witness is not None:
            detail = (
                f"permutation {witness['permutation']}, cost {witness['cost']:.2e}"
            )
        checks.append(("equivalence", equivalent, detail))
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report_document(report), fh, indent=2)
        print(f"report: {args.report}")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_EXHAUSTED


# ---------------------------------------------------------------------------
# qfim / noise-scan / concat


def _write_csv(out: str, rows: list[list]) -> None:
    if out == "-":
        csv.writer(sys.stdout).writerows(rows)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh).writerows(rows)


def _parse_sweep(text: str) -> list[int]:
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            start, stop = int(lo), int(hi)
        except ValueError:
            raise ConfigError("--L-sweep wants LO:HI or a comma list") from None
        if start < 1 or stop < start:
            raise ConfigError("--L-sweep wants 1 <= LO <= HI")
        return list(range(start, stop + 1))
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError("--L-sweep wants LO:HI or a comma list") from None


def cmd_qfim(args) -> int:
    try:
        graph = named_graph(args.graph, args.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    layer_list = _parse_sweep(args.l_sweep)
    ceiling = dc_max(graph.n, args.K)
    critical = l_crit(graph.n, args.K, len(graph.edges))
    rng = np.random.default_rng(args.seed)
    rows = [["L", "parameters", "rank", "dc_max", "saturated"]]
    for layers in layer_list:
        ansatz = hardware_efficient_ansatz(graph, layers, code_dim=args.K)
        rank = parameter_dimension(ansatz, samples=args.samples, rng=rng)
        rows.append([layers, ansatz.num_parameters, rank, ceiling, rank == ceiling])
    _write_csv(args.out, rows)
    if args.out != "-":
        print(
            f"qfim sweep: {args.out} (rank ceiling {ceiling}, critical depth {critical})"
        )
    return EXIT_OK


def cmd_noise_scan(args) -> int:
    n_list = _parse_sweep(args.n_range)
    points = bp_scan(
        graph_family=args.graph,
        n_list=n_list,
        l_rule=args.L,
        l_const=args.l_const,
        p_gate=args.p_gate,
        samples=args.samples,
        rng=args.seed,
    )
    rows = [
        ["n", "L", "p_gate", "mean_abs_grad", "var_grad", "mean_abs_offdiag", "mean_abs_diag"]
    ]
    for point in points:
        rows.append(
            [
                point.n,
                point.layers,
                args.p_gate,
                f"{point.mean_abs_total:.6e}",
                f"{point.var_total:.6e}",
                f"{point.mean_abs_offdiag:.6e}",
                f"{point.mean_abs_diag:.6e}",
            ]
        )
    _write_csv(args.out, rows)
    if args.out != "-":
        print(f"noise scan: {args.out}")
    return EXIT_OK


def cmd_concat(args) -> int:
    value = concat_bound(args.deltas, args.cz)
    print(f"{value:g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qecsearch",
        description="Variational discovery and verification of quantum codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    preset_names = ", ".join(sorted(SEARCH_PRESETS))
    p_search = sub.add_parser("search", help="run the variational code search")
    p_search.add_argument("--preset", help=f"named setup ({preset_names})")
    p_search.add_argument("--config", help="YAML problem/optimizer description")
    p_search.add_argument("--restarts", type=int, default=None)
    p_search.add_argument("--l-max", dest="l_max", type=int, default=None)
    p_search.add_argument("--seed", type=int, default=None)
    p_search.add_argument("--c-tol", dest="c_tol", type=float, default=None)
    p_search.add_argument("--out", help="artifact path (default NAME-artifact.json)")
    p_search.add_argument("--trace", help="iteration CSV path (default NAME-trace.csv)")
    p_search.add_argument(
        "--dump-config",
        action="store_true",
        help="print the effective configuration and exit",
    )
    p_search.set_defaults(func=cmd_search)

    p_verify = sub.add_parser(
        "verify", help="re-check an artifact, generator file or reference code"
    )
    p_verify.add_argument(
        "input", help="artifact JSON, generator text file, or built-in name"
    )
    p_verify.add_argument("--distance", type=int, help="expected code distance")
    p_verify.add_argument(
        "--enumerators", help="expected 'a0,a1,...:b0,b1,...' at 1e-6"
    )
    p_verify.add_argument(
        "--print-enumerators",
        action="store_true",
        help="compute enumerators into the report without checking",
    )
    p_verify.add_argument(
        "--effective", type=float, help="report the biased distance at this c_z"
    )
    p_verify.add_argument(
        "--expect-effective", type=float, help="required --effective value"
    )
    p_verify.add_argument(
        "--degeneracy",
        action="store_true",
        help="classify the code as degenerate/pure over weight-1 errors",
    )
    p_verify.add_argument(
        "--equivalence", help="second input to test local equivalence against"
    )
    p_verify.add_argument("--tol", type=float, default=1e-7)
    p_verify.add_argument("--report", help="write the full report as JSON")
    p_verify.set_defaults(func=cmd_verify)

    p_qfim = sub.add_parser("qfim", help="Fisher-rank depth sweep")
    p_qfim.add_argument("--graph", required=True, help="ring/star/complete/line/kA-B/fig12")
    p_qfim.add_argument("--n", type=int, help="vertex count for graph families")
    p_qfim.add_argument("--K", type=int, default=1, help="code dimension")
    p_qfim.add_argument("--L-sweep", dest="l_sweep", default="1:10", help="LO:HI or list")
    p_qfim.add_argument("--samples", type=int, default=2)
    p_qfim.add_argument("--seed", type=int, default=0)
    p_qfim.add_argument("--out", default="-", help="CSV path or - for stdout")
    p_qfim.set_defaults(func=cmd_qfim)

    p_scan = sub.add_parser("noise-scan", help="gradient-magnitude scan")
    p_scan.add_argument("--graph", default="star", help="graph family")
    p_scan.add_argument(
        "--L", default="linear", choices=["linear", "const", "ceil-log"]
    )
    p_scan.add_argument("--l-const", type=int, default=3)
    p_scan.add_argument("--n-range", default="4:8", help="LO:HI or comma list")
    p_scan.add_argument("--p-gate", dest="p_gate", type=float, default=0.0)
    p_scan.add_argument("--samples", type=int, default=200)
    p_scan.add_argument("--seed", type=int, default=0)
    p_scan.add_argument("--out", default="-", help="CSV path or - for stdout")
    p_scan.set_defaults(func=cmd_noise_scan)

    p_concat = sub.add_parser("concat", help="concatenated-distance bound")
    p_concat.add_argument("deltas", type=float, nargs="+", help="layer distances")
    p_concat.add_argument("--cz", type=float, default=1.0)
    p_concat.set_defaults(func=cmd_concat)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
