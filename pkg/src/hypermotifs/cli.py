"""Command-line front end.

Subcommands: census, detect, enumerate, simulate, portrait, downsample. All
randomness flows from one 64-bit seed (--seed, falling back to the
HYPERMOTIF_SEED environment variable, then 0): census-preserving ensemble
member i uses seed+i, the motif-identification ensemble uses seed+1000003+i,
and the downsampling walk uses the seed directly. Every JSON artifact echoes
the tool version, the seed and the effective configuration, and reruns with a
fixed seed are byte-identical.

Exit codes: 0 = ran (even when nothing is significant), 1 = usage error,
2 = data error, 3 = numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .census import motif_zscores, triad_census
from .detect import (
    CSV_COLUMNS,
    detect_detailed,
    orbit_to_json,
    stat_to_csv_row,
    stat_to_json,
)
from .graph import EdgeListError, GraphError, load_edge_list_with_report, save_edge_list
from .motifs import named_motif
from .nullmodels import AnnealConfig, NullModelConfig, generate_motif_null_ensemble
from .sampling import DownsampleConfig, downsample, validate_downsample

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the interface contract says 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


def _json_default(value):
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    raise TypeError(f"not JSON serializable: {value!r}")


def _clean(value):
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (np.floating, np.integer)):
        return _clean(value.item())
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_clean(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HYPERMOTIF_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _DataError(f"HYPERMOTIF_SEED is not an integer: {env!r}")
    return 0


def _load_graph(path):
    try:
        return load_edge_list_with_report(path)
    except FileNotFoundError:
        raise _DataError(f"no such file: {path}")
    except (EdgeListError, GraphError) as exc:
        raise _DataError(str(exc))


def _meta(args, seed, **extra):
    # the output directory is not part of the analysis configuration; leaving
    # it out keeps fixed-seed reruns byte-identical wherever they are written
    cfg = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "out") and not k.startswith("_")
    }
    cfg.update(extra)
    return {"version": __version__, "seed": seed, "config": _clean(cfg)}


def _null_config(args, seed):
    return NullModelConfig(
        ensemble_size=args.ensemble,
        swap_multiplier=args.swap_multiplier,
        anneal=AnnealConfig(max_iterations=args.anneal_iterations),
        rng_seed=seed,
    )


# --- subcommands ---------------------------------------------------------------

def _cmd_census(args):
    seed = _resolve_seed(args)
    graph, report = _load_graph(args.edge_list)
    out = Path(args.out)
    entries = []
    if args.ensemble > 0:
        cfg = NullModelConfig(
            ensemble_size=max(2, args.ensemble),
            swap_multiplier=args.swap_multiplier,
            rng_seed=seed,
        )
        ensemble = generate_motif_null_ensemble(
            graph, args.ensemble, cfg, seed + 1_000_003, jobs=args.jobs
        )
        stats = motif_zscores(graph, ensemble)
        for cls in sorted(stats):
            count, mean, std, z = stats[cls]
            entries.append(
                {
                    "class_code": cls.code,
                    "size": cls.size,
                    "count": count,
                    "mean": mean,
                    "std": std,
                    "z": z,
                    "significant": bool(z > args.z_threshold),
                }
            )
    else:
        for cls, count in sorted(triad_census(graph).items()):
            entries.append(
                {
                    "class_code": cls.code,
                    "size": cls.size,
                    "count": count,
                    "z": None,
                    "significant": None,
                }
            )
    payload = _meta(args, seed)
    payload.update(
        {
            "n_nodes": graph.n_nodes,
            "n_edges": graph.n_edges,
            "duplicate_edges_in_input": report.duplicate_edges,
            "self_loops": report.self_loops,
            "census": entries,
        }
    )
    _write_json(out / "census.json", payload)
    print(f"census written to {out / 'census.json'}")
    return EXIT_OK


def _cmd_detect(args):
    seed = _resolve_seed(args)
    graph, _ = _load_graph(args.edge_list)
    out = Path(args.out)
    cfg = _null_config(args, seed)
    report = detect_detailed(
        graph,
        cfg,
        alpha=args.alpha,
        z_threshold=args.z_threshold,
        motif_ensemble_size=args.motif_ensemble or None,
        jobs=args.jobs,
        keep_members=args.save_ensemble,
    )
    if args.save_ensemble:
        out.mkdir(parents=True, exist_ok=True)
        for i, member in enumerate(report.ensemble_members):
            save_edge_list(member, out / f"ensemble_{i}.tsv")
    payload = _meta(args, seed)
    payload.update(
        {
            "n_nodes": report.n_nodes,
            "n_edges": report.n_edges,
            "alpha": report.alpha,
            "significant_motifs": [
                {"class_code": cls.code, "size": cls.size, "z": z}
                for cls, z in report.significant_motifs
            ],
            "ensemble_residuals": report.ensemble_residuals,
            "roles": [
                {
                    "role": orbit_to_json(orbit),
                    "n_nodes": len(nodes),
                }
                for orbit, nodes in sorted(
                    report.roles.items(),
                    key=lambda kv: (kv[0].motif_class.size, kv[0].motif_class.code, kv[0].orbit_index),
                )
            ],
            "stats": [stat_to_json(s) for s in report.stats],
        }
    )
    _write_json(out / "detect.json", payload)
    with open(out / "detect.csv", "w", encoding="utf-8") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for s in report.stats:
            fh.write(",".join(stat_to_csv_row(s)) + "\n")
    n_sig = sum(1 for s in report.stats if s.direction != "none")
    print(
        f"detect: {len(report.significant_motifs)} significant motif classes, "
        f"{n_sig} significant role combinations (alpha={args.alpha}); "
        f"results in {out}"
    )
    return EXIT_OK


def _cmd_enumerate(args):
    from .combinatorics import (
        combination_to_json,
        count_interaction_topologies,
        enumerate_core_combinations,
    )

    try:
        motif_a = named_motif(args.motif_a)
        motif_b = named_motif(args.motif_b)
    except ValueError as exc:
        raise _DataError(str(exc))
    seed = _resolve_seed(args)
    out = Path(args.out)
    if args.mode == "interact":
        counts = count_interaction_topologies(
            motif_a.size, motif_b.size, directed=not args.undirected
        )
        if args.count_only:
            print(counts.labeled_total)
            return EXIT_OK
        payload = _meta(args, seed)
        payload.update(
            {
                "mode": "interact",
                "motif_a": {"size": motif_a.size, "code": motif_a.code},
                "motif_b": {"size": motif_b.size, "code": motif_b.code},
                "labeled_total": counts.labeled_total,
                "labeled_nonempty": counts.labeled_nonempty,
                "max_linking_edges": counts.max_linking_edges,
            }
        )
        _write_json(out / "enumerate.json", payload)
        print(f"{counts.labeled_total} labeled interaction topologies; written to {out}")
        return EXIT_OK
    cores = enumerate_core_combinations(motif_a, motif_b)
    if args.count_only:
        print(len(cores))
        return EXIT_OK
    payload = _meta(args, seed)
    payload.update(
        {
            "mode": "combine",
            "motif_a": {"size": motif_a.size, "code": motif_a.code},
            "motif_b": {"size": motif_b.size, "code": motif_b.code},
            "n_topologies": len(cores),
            "topologies": [combination_to_json(c) for c in cores],
        }
    )
    _write_json(out / "enumerate.json", payload)
    print(f"{len(cores)} core combination topologies; written to {out}")
    return EXIT_OK


def _parse_init(text):
    out = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise _DataError(f"bad --init entry {part!r}; expected NAME=VALUE")
        name, value = part.split("=", 1)
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise _DataError(f"bad --init value for {name.strip()!r}: {value!r}")
    return out


def _resolve_model(spec, params=None):
    from .dynamics import build_circuit, catalog_entry
    from .dynamics.model import CircuitError

    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        if params:
            raise _DataError("--param applies to catalog template models only")
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except FileNotFoundError:
            raise _DataError(f"no such file: {spec}")
        except json.JSONDecodeError as exc:
            raise _DataError(f"{spec}: invalid JSON: {exc}")
        try:
            edges = [
                (e["source"], e["target"], int(e.get("sign", 1)), float(e.get("n", 1)), float(e["k"]))
                for e in doc.get("edges", [])
            ]
            model = build_circuit(doc["variables"], edges, doc.get("constants"))
        except (KeyError, CircuitError) as exc:
            raise _DataError(f"{spec}: bad topology file: {exc}")
        init = tuple(doc.get("init", [0.0] * model.dim))
        return model, init, path.stem
    try:
        entry = catalog_entry(spec, **(params or {}))
    except KeyError as exc:
        raise _DataError(str(exc.args[0]))
    except ValueError as exc:
        raise _DataError(str(exc))
    return entry.model, entry.default_init, entry.model_id.lower()


def _cmd_simulate(args):
    from .dynamics import (
        SUSTAINED_OSCILLATION,
        classify_steady_state,
        find_fixed_points,
        integrate,
        phase_relation,
        pulse_metrics,
    )
    from .dynamics.model import NumericError

    seed = _resolve_seed(args)
    if args.list_models:
        from .dynamics import catalog_entry, catalog_ids

        listing = []
        for mid in catalog_ids():
            entry = catalog_entry(mid)
            listing.append(
                {
                    "id": entry.model_id,
                    "description": entry.description,
                    "variables": list(entry.model.variables),
                    "default_init": list(entry.default_init),
                    "tunable": list(entry.tunable),
                }
            )
        print(json.dumps(listing, indent=2, sort_keys=True))
        return EXIT_OK
    model, default_init, stem = _resolve_model(args.model, _parse_init(args.param))
    init = np.array(default_init, dtype=float)
    for name, value in _parse_init(args.init).items():
        try:
            init[model.index_of(name)] = value
        except Exception:
            raise _DataError(f"unknown variable {name!r}; model has {model.variables}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        traj = integrate(model, init, horizon=args.horizon, step=args.step)
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    traj_path = out / f"traj_{stem}.csv"
    with open(traj_path, "w", encoding="utf-8") as fh:
        fh.write("t," + ",".join(model.variables) + "\n")
        for i, t in enumerate(traj.times):
            row = ",".join(repr(float(v)) for v in traj.states[i])
            fh.write(f"{repr(float(t))},{row}\n")
    cls = classify_steady_state(traj)
    per_var = {}
    for name, summary in cls.per_variable.items():
        pm = pulse_metrics(traj, name)
        per_var[name] = {
            "label": summary.label,
            "final_value": summary.final_value,
            "n_peaks": summary.n_peaks,
            "pulse_width": pm.pulse_width,
            "response_delay": pm.response_delay,
            "peak_value": pm.peak_value,
        }
    sustained = [
        name for name, s in cls.per_variable.items() if s.label == SUSTAINED_OSCILLATION
    ]
    relations = []
    for i in range(len(sustained)):
        for j in range(i + 1, len(sustained)):
            rel = phase_relation(traj, traj, sustained[i], sustained[j])
            relations.append(
                {
                    "variable_a": sustained[i],
                    "variable_b": sustained[j],
                    "period": rel.period,
                    "lag": rel.lag,
                    "relation": rel.relation,
                }
            )
    fixed_points = []
    if model.dim <= 4:
        for fp in find_fixed_points(model):
            fixed_points.append(
                {
                    "point": {v: x for v, x in zip(model.variables, fp.point)},
                    "stability": fp.stability,
                }
            )
    payload = _meta(args, seed, model=stem)
    payload.update(
        {
            "variables": list(model.variables),
            "initial": [float(v) for v in init],
            "classification": cls.label,
            "per_variable": per_var,
            "phase_relations": relations,
            "fixed_points": fixed_points,
            "trajectory_csv": traj_path.name,
        }
    )
    _write_json(out / f"classification_{stem}.json", payload)
    print(f"{stem}: {cls.label}; outputs in {out}")
    return EXIT_OK


def _cmd_portrait(args):
    from .dynamics import nullcline_intersections, phase_portrait

    seed = _resolve_seed(args)
    model, _, stem = _resolve_model(args.model)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    frozen = _parse_init(args.frozen) if args.frozen else {}
    try:
        portrait = phase_portrait(
            model,
            (args.x_min, args.x_max),
            (args.y_min, args.y_max),
            nx=args.nx,
            ny=args.ny,
            frozen=frozen,
        )
    except ValueError as exc:
        raise _DataError(str(exc))
    field_path = out / f"portrait_{stem}.csv"
    with open(field_path, "w", encoding="utf-8") as fh:
        fh.write(f"{portrait.x_var},{portrait.y_var},d{portrait.x_var},d{portrait.y_var}\n")
        for i, yv in enumerate(portrait.y_grid):
            for j, xv in enumerate(portrait.x_grid):
                fh.write(
                    f"{repr(float(xv))},{repr(float(yv))},"
                    f"{repr(float(portrait.u[i, j]))},{repr(float(portrait.v[i, j]))}\n"
                )
    for suffix, polylines in (
        (portrait.x_var, portrait.x_nullclines),
        (portrait.y_var, portrait.y_nullclines),
    ):
        with open(out / f"nullclines_{stem}_{suffix}.csv", "w", encoding="utf-8") as fh:
            fh.write("polyline,x,y\n")
            for pi, poly in enumerate(polylines):
                for x, y in poly:
                    fh.write(f"{pi},{repr(float(x))},{repr(float(y))}\n")
    inter = nullcline_intersections(portrait)
    payload = _meta(args, seed, model=stem)
    payload.update(
        {
            "x_var": portrait.x_var,
            "y_var": portrait.y_var,
            "nullcline_intersections": [[float(a), float(b)] for a, b in sorted(inter)],
        }
    )
    _write_json(out / f"portrait_{stem}.json", payload)
    print(f"portrait of {stem}: {len(inter)} nullcline intersections; outputs in {out}")
    return EXIT_OK


def _cmd_downsample(args):
    seed = _resolve_seed(args)
    graph, _ = _load_graph(args.edge_list)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        cfg = DownsampleConfig(sz=args.sz, walk_probability=args.walk_probability, rng_seed=seed)
    except ValueError as exc:
        raise _DataError(str(exc))
    try:
        sampled = downsample(graph, cfg)
    except GraphError as exc:
        raise _DataError(str(exc))
    save_edge_list(sampled, out / "downsampled.tsv")
    payload = _meta(args, seed)
    payload.update(
        {
            "original": {"n_nodes": graph.n_nodes, "n_edges": graph.n_edges},
            "sampled": {"n_nodes": sampled.n_nodes, "n_edges": sampled.n_edges},
        }
    )
    if args.validate:
        report = validate_downsample(
            graph, sampled, ensemble_size=args.validate_ensemble, seed=seed + 7
        )
        payload["validation"] = {
            "ks_distance": report.ks_distance,
            "same_significant_motifs": report.same_significant_motifs,
            "motifs_full": [
                {"size": c.size, "class_code": c.code} for c in report.motif_classes_full
            ],
            "motifs_sample": [
                {"size": c.size, "class_code": c.code} for c in report.motif_classes_sample
            ],
        }
    _write_json(out / "downsample_report.json", payload)
    print(
        f"downsampled {graph.n_nodes}->{sampled.n_nodes} nodes, "
        f"{graph.n_edges}->{sampled.n_edges} edges; outputs in {out}"
    )
    return EXIT_OK


# --- parser --------------------------------------------------------------------

def _add_common(p, ensemble_default=100):
    p.add_argument("--seed", type=int, default=None, help="64-bit master seed (default: HYPERMOTIF_SEED or 0)")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="parallel work units for ensembles")
    return p


def build_parser():
    parser = _Parser(prog="hypermotifs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hypermotifs {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    p = sub.add_parser("census", help="triad census and motif significance")
    p.add_argument("edge_list")
    _add_common(p)
    p.add_argument("--ensemble", type=int, default=100, help="motif-null ensemble size (0 = counts only)")
    p.add_argument("--z-threshold", type=float, default=2.0)
    p.add_argument("--swap-multiplier", type=int, default=100)
    p.add_argument("--motif-size", type=int, default=3, choices=[3], help="census size (only 3 supported)")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("detect", help="enriched motif-combination detection")
    p.add_argument("edge_list")
    _add_common(p)
    p.add_argument("--ensemble", type=int, default=100, help="census-preserving ensemble size")
    p.add_argument("--motif-ensemble", type=int, default=0, help="motif-null ensemble size (default: same as --ensemble)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--z-threshold", type=float, default=2.0)
    p.add_argument("--swap-multiplier", type=int, default=100)
    p.add_argument("--anneal-iterations", type=int, default=1_000_000)
    p.add_argument("--motif-size", type=int, default=3, choices=[3])
    p.add_argument(
        "--save-ensemble", action="store_true",
        help="persist ensemble members as ensemble_<i>.tsv for reproducibility audits",
    )
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("enumerate", help="combination/interaction topology enumeration")
    p.add_argument("motif_a")
    p.add_argument("motif_b")
    _add_common(p)
    p.add_argument("--mode", choices=["combine", "interact"], default="combine")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--undirected", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("simulate", help="integrate a catalog model or topology file")
    p.add_argument("model", help="catalog id (e.g. M14-16) or a topology .json file")
    _add_common(p)
    p.add_argument("--init", default="", help='initial conditions, e.g. "X=0.1,Y=0.2"')
    p.add_argument("--horizon", type=float, default=200.0)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("portrait", help="vector field and nullclines of a 2-variable model")
    p.add_argument("model")
    _add_common(p)
    p.add_argument("--x-min", type=float, default=0.0)
    p.add_argument("--x-max", type=float, default=1.2)
    p.add_argument("--y-min", type=float, default=0.0)
    p.add_argument("--y-max", type=float, default=1.2)
    p.add_argument("--nx", type=int, default=40)
    p.add_argument("--ny", type=int, default=40)
    p.add_argument("--frozen", default="", help='frozen values for extra variables, e.g. "Z=0.5"')
    p.set_defaults(func=_cmd_portrait)

    p = sub.add_parser("downsample", help="random-walk downsampling of a network")
    p.add_argument("edge_list")
    _add_common(p)
    p.add_argument("--sz", type=int, required=True, help="target sample-list length")
    p.add_argument("--walk-probability", type=float, default=0.85)
    p.add_argument("--validate", action="store_true", help="KS distance + motif comparison report")
    p.add_argument("--validate-ensemble", type=int, default=20)
    p.set_defaults(func=_cmd_downsample)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
