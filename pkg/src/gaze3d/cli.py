"""Batch command-line front-end.

Subcommands: evaluate, simplify, synth, heatmap, split, posenc, stats.
Every flag can also be supplied through an environment variable with the
GAZE3D_ prefix (e.g. GAZE3D_SEED=7 mirrors --seed 7); explicit flags win.
Exit codes: 0 success, 1 partial failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from gaze3d import evaluate as ev
from gaze3d import io, multimatch, posenc, saliency, stats, strmetrics, synth
from gaze3d.core import VolumeGeometry
from gaze3d.errors import Gaze3DError
from gaze3d.multimatch import SimplifyParams
from gaze3d.strmetrics import GridSpec

ENV_PREFIX = "GAZE3D_"


def _env(flag: str, fallback=None):
    return os.environ.get(ENV_PREFIX + flag.replace("-", "_").upper(), fallback)


def _parse_ints(text: str, n: int, flag: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{flag} expects {n} comma-separated values")
    return tuple(int(p) for p in parts)


def _add_common(parser):
    parser.add_argument("--out", default=_env("out", "."), help="output directory")
    parser.add_argument("--seed", type=int, default=int(_env("seed", 0)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaze3d", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="compute all metrics over a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument(
        "--metrics",
        default=_env("metrics", ",".join(ev.ALL_METRICS)),
        help="comma-separated subset of: " + ",".join(ev.ALL_METRICS),
    )
    p.add_argument("--grid", default=_env("grid", "8,8,4"), help="NX,NY,NZ")
    p.add_argument(
        "--temporal-bin-ms",
        type=float,
        default=float(_env("temporal-bin-ms", strmetrics.DEFAULT_TEMPORAL_BIN_MS)),
    )
    p.add_argument(
        "--gap-penalty",
        type=float,
        default=float(_env("gap-penalty", strmetrics.DEFAULT_GAP_PENALTY)),
    )
    p.add_argument("--sigma-deg", type=float, default=float(_env("sigma-deg", 1.0)))
    p.add_argument("--sigma-z", type=float, default=float(_env("sigma-z", 1.0)))
    p.add_argument("--workers", type=int, default=int(_env("workers", 1)))
    p.add_argument("--folds", type=int, default=int(_env("folds", 5)))
    p.add_argument(
        "--ci-over",
        choices=("folds", "cases"),
        default=_env("ci-over", "folds"),
    )
    _add_common(p)

    p = sub.add_parser("simplify", help="simplify scanpaths, report fidelity")
    p.add_argument("inputs", nargs="*", help="scanpath JSON files")
    p.add_argument("--manifest", help="evaluate gt_path entries instead")
    p.add_argument(
        "--angle-thresh",
        type=float,
        default=float(_env("angle-thresh", multimatch.DEFAULT_ANGLE_THRESHOLD_DEG)),
    )
    p.add_argument(
        "--amp-thresh",
        type=float,
        default=float(
            _env("amp-thresh", multimatch.DEFAULT_AMPLITUDE_THRESHOLD_FRACTION)
        ),
    )
    p.add_argument("--duration-ceiling-ms", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("synth", help="lift 2D fixation files to synthetic 3D gaze")
    p.add_argument("inputs", nargs="+", help="2D fixation JSON files")
    p.add_argument("--geometry", required=True, help="W,H,D voxels")
    p.add_argument("--ppd", type=float, default=float(_env("ppd", 16.0)))
    p.add_argument("--sigma-deg", type=float, default=float(_env("sigma-deg", 1.0)))
    _add_common(p)

    p = sub.add_parser("heatmap", help="render saliency volumes from scanpaths")
    p.add_argument("inputs", nargs="+", help="scanpath JSON files")
    p.add_argument("--sigma-deg", type=float, default=float(_env("sigma-deg", 1.0)))
    p.add_argument("--sigma-z", type=float, default=float(_env("sigma-z", 1.0)))
    _add_common(p)

    p = sub.add_parser("split", help="deterministic train/val/test split")
    p.add_argument("--ids-file", help="text file with one id per line")
    p.add_argument("--manifest", help="take ids from a manifest instead")
    p.add_argument("--ratios", default=_env("ratios", "0.70,0.10,0.20"))
    _add_common(p)

    p = sub.add_parser("posenc", help="emit 3D positional encodings as raw tensor")
    p.add_argument("--d-model", type=int, required=True)
    p.add_argument("--lattice", required=True, help="LX,LY,LZ")
    p.add_argument(
        "--temperature",
        type=float,
        default=float(_env("temperature", posenc.DEFAULT_TEMPERATURE)),
    )
    _add_common(p)

    p = sub.add_parser("stats", help="aggregate per-case report JSONL files")
    p.add_argument("inputs", nargs="+", help="reports.jsonl files")
    p.add_argument("--folds", type=int, default=int(_env("folds", 5)))
    p.add_argument(
        "--ci-over",
        choices=("folds", "cases"),
        default=_env("ci-over", "folds"),
    )
    _add_common(p)

    return parser


def _ensure_out(path) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _write_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(obj, indent=2) + "\n")


def _eval_worker(args):
    entry, params = args
    return ev.evaluate_entry(entry, params)


def _summarize(reports, ci_over, folds, seed):
    values = ev.metric_values(reports)
    if ci_over == "folds":
        ids = sorted(r.case_id for r in reports)
        fold_lists = stats.kfold(ids, folds, seed)
        fold_of = {cid: i for i, fold in enumerate(fold_lists) for cid in fold}
        grouped: dict[str, list[list[float]]] = {}
        for r in reports:
            row = ev.metric_values([r])
            for name, vals in row.items():
                grouped.setdefault(name, [[] for _ in range(folds)])
                grouped[name][fold_of[r.case_id]].append(vals[0])
        summaries = {}
        for name, per_fold in grouped.items():
            fold_means = [float(np.mean(v)) for v in per_fold if v]
            if len(fold_means) >= 2:
                summaries[name] = stats.aggregate(fold_means)
        return summaries
    return {
        name: stats.aggregate(vals)
        for name, vals in values.items()
        if len(vals) >= 2
    }


def cmd_evaluate(args) -> int:
    try:
        manifest = io.read_manifest(args.manifest)
        grid = GridSpec(*_parse_ints(args.grid, 3, "--grid"))
        metrics = tuple(m for m in args.metrics.split(",") if m)
        unknown = set(metrics) - set(ev.ALL_METRICS)
        if unknown:
            raise Gaze3DError(f"unknown metrics: {sorted(unknown)}")
        if args.folds < 2:
            raise Gaze3DError("--folds must be >= 2")
    except (Gaze3DError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if not manifest.entries:
        print("config error: no cases in manifest", file=sys.stderr)
        return 2

    params = ev.EvalParams(
        metrics=metrics,
        grid=grid,
        temporal_bin_ms=args.temporal_bin_ms,
        gap_penalty=args.gap_penalty,
        sigma_xy_deg=args.sigma_deg,
        sigma_z_slices=args.sigma_z,
    )
    entries = sorted(manifest.entries, key=lambda e: e.case_id)
    reports, errors = [], []
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            futures = [pool.submit(_eval_worker, (e, params)) for e in entries]
            for entry, fut in zip(entries, futures):
                try:
                    reports.append(fut.result())
                except Exception as exc:
                    errors.append({"case_id": entry.case_id, "error": str(exc)})
    else:
        for entry in entries:
            try:
                reports.append(_eval_worker((entry, params)))
            except Exception as exc:
                errors.append({"case_id": entry.case_id, "error": str(exc)})

    out = _ensure_out(args.out)
    with open(os.path.join(out, "reports.jsonl"), "w", encoding="utf-8") as fh:
        for r in sorted(reports, key=lambda r: r.case_id):
            fh.write(json.dumps(r.as_dict()) + "\n")

    summaries = _summarize(reports, args.ci_over, args.folds, args.seed) if reports else {}
    _write_json(
        {
            name: {
                "mean": s.mean,
                "std": s.std,
                "ci95_half_width": s.ci95_half_width,
                "n": s.n,
            }
            for name, s in summaries.items()
        },
        os.path.join(out, "summary.json"),
    )
    with open(os.path.join(out, "summary.txt"), "w", encoding="utf-8") as fh:
        fh.write(stats.format_summary(summaries) + "\n")
    if errors:
        _write_json(errors, os.path.join(out, "errors.json"))
        print(f"{len(errors)} case(s) failed; see errors.json", file=sys.stderr)
        return 1
    return 0


def _simplify_inputs(args):
    if args.manifest:
        manifest = io.read_manifest(args.manifest)
        return [(e.case_id, e.gt_path, e.geometry) for e in manifest.entries]
    out = []
    for path in args.inputs:
        sp, g = io.read_scanpath(path)
        name = os.path.splitext(os.path.basename(path))[0]
        out.append((name or sp.id, path, g))
    return out


def cmd_simplify(args) -> int:
    if not args.inputs and not args.manifest:
        print("config error: give input files or --manifest", file=sys.stderr)
        return 2
    try:
        inputs = _simplify_inputs(args)
        params = SimplifyParams(
            angle_threshold_deg=args.angle_thresh,
            amplitude_threshold_fraction=args.amp_thresh,
            duration_ceiling_ms=args.duration_ceiling_ms,
        )
    except Gaze3DError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out = _ensure_out(args.out)
    rows, errors = [], []
    for case_id, path, geom in sorted(inputs):
        try:
            sp, g_file = io.read_scanpath(path)
            g = geom or g_file
            simplified = multimatch.simplify(sp, g, params)
            io.write_scanpath(simplified, g, os.path.join(out, f"{case_id}.json"))
            row = {
                "case_id": case_id,
                "fixations_before": len(sp),
                "fixations_after": len(simplified),
                "reduction_pct": 100.0 * (1.0 - len(simplified) / len(sp)),
            }
            if len(simplified) >= 2:
                mm = multimatch.mm_scores(sp, simplified, g)
                row["mm"] = {
                    "vector": mm.vector,
                    "direction": mm.direction,
                    "length": mm.length,
                    "position": mm.position,
                }
            rows.append(row)
        except Exception as exc:
            errors.append({"case_id": case_id, "error": str(exc)})

    report = {"cases": rows}
    if rows:
        report["mean_reduction_pct"] = float(
            np.mean([r["reduction_pct"] for r in rows])
        )
        mm_rows = [r["mm"] for r in rows if "mm" in r]
        if mm_rows:
            report["mean_mm"] = {
                k: float(np.mean([m[k] for m in mm_rows]))
                for k in ("vector", "direction", "length", "position")
            }
    _write_json(report, os.path.join(out, "fidelity_report.json"))
    if errors:
        _write_json(errors, os.path.join(out, "errors.json"))
        return 1
    return 0


def cmd_synth(args) -> int:
    try:
        W, H, D = _parse_ints(args.geometry, 3, "--geometry")
        g = VolumeGeometry(W, H, D, args.ppd)
    except (Gaze3DError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = _ensure_out(args.out)
    errors = []
    for i, path in enumerate(sorted(args.inputs)):
        try:
            fid, fx2d = io.read_fixations_2d(path)
            sp = synth.lift_2d_to_3d(fx2d, id=fid)
            # Derive a per-file seed so corpora stay reproducible under
            # any input ordering.
            sp = synth.jitter(
                sp, g, synth.JitterParams(args.sigma_deg, seed=args.seed + i)
            )
            name = os.path.splitext(os.path.basename(path))[0]
            io.write_scanpath(sp, g, os.path.join(out, f"{name}_3d.json"))
        except Exception as exc:
            errors.append({"input": path, "error": str(exc)})
    if errors:
        _write_json(errors, os.path.join(out, "errors.json"))
        return 1
    return 0


def cmd_heatmap(args) -> int:
    out = _ensure_out(args.out)
    errors = []
    for path in sorted(args.inputs):
        try:
            sp, g = io.read_scanpath(path)
            vol = saliency.render_saliency(sp, g, args.sigma_deg, args.sigma_z)
            name = os.path.splitext(os.path.basename(path))[0]
            io.write_volume(vol, os.path.join(out, f"{name}.vol"))
        except Exception as exc:
            errors.append({"input": path, "error": str(exc)})
    if errors:
        _write_json(errors, os.path.join(out, "errors.json"))
        return 1
    return 0


def cmd_split(args) -> int:
    try:
        ratios = tuple(float(x) for x in args.ratios.split(","))
        if len(ratios) != 3:
            raise Gaze3DError("--ratios expects three comma-separated values")
        if args.ids_file:
            with open(args.ids_file, "r", encoding="utf-8") as fh:
                ids = [line.strip() for line in fh if line.strip()]
        elif args.manifest:
            manifest = io.read_manifest(args.manifest, check_files=False)
            ids = [e.case_id for e in manifest.entries]
        else:
            raise Gaze3DError("give --ids-file or --manifest")
        assignments = io.split_dataset(ids, ratios, args.seed)
    except (Gaze3DError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = _ensure_out(args.out)
    _write_json(
        {cid: assignments[cid] for cid in sorted(assignments)},
        os.path.join(out, "splits.json"),
    )
    return 0


def cmd_posenc(args) -> int:
    try:
        lattice = _parse_ints(args.lattice, 3, "--lattice")
        params = posenc.PosEncParams(args.d_model, lattice, args.temperature)
    except (Gaze3DError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = _ensure_out(args.out)
    io.write_tensor(posenc.encode_lattice(params), os.path.join(out, "posenc.bin"))
    return 0


def cmd_stats(args) -> int:
    reports = []
    try:
        for path in args.inputs:
            with open(path, "r", encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        d = json.loads(line)
                        reports.append(
                            ev.MetricReport(
                                case_id=d["case_id"],
                                scanmatch_nodur=d.get("scanmatch_nodur"),
                                scanmatch_dur=d.get("scanmatch_dur"),
                                sed=d.get("sed"),
                                mm=d.get("mm"),
                                cc=d.get("cc"),
                                nss=d.get("nss"),
                                kldiv=d.get("kldiv"),
                            )
                        )
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if not reports:
        print("config error: no reports", file=sys.stderr)
        return 2
    summaries = _summarize(reports, args.ci_over, args.folds, args.seed)
    out = _ensure_out(args.out)
    _write_json(
        {
            name: {
                "mean": s.mean,
                "std": s.std,
                "ci95_half_width": s.ci95_half_width,
                "n": s.n,
            }
            for name, s in summaries.items()
        },
        os.path.join(out, "summary.json"),
    )
    print(stats.format_summary(summaries))
    return 0


COMMANDS = {
    "evaluate": cmd_evaluate,
    "simplify": cmd_simplify,
    "synth": cmd_synth,
    "heatmap": cmd_heatmap,
    "split": cmd_split,
    "posenc": cmd_posenc,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
