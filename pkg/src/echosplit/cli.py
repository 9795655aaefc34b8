"""Command-line entry points: single-image processing, batch reports,
pointer sweeps, phantom generation, and the HTTP service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .edges import EdgeParams
from .harness import (PipelineConfig, batch, run_pipeline, sweep,
                      write_phantom_dataset)
from .hssi import SplitParams
from .imgcore import load_gray, load_mask, save_gray, save_mask
from .morph import WashupParams
from .segment import SnakeParams
from .two_pointer import ThresholdParams


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("pipeline parameters")
    g.add_argument("--right-threshold", type=float, default=0.10)
    g.add_argument("--left-threshold", type=float, default=0.25)
    g.add_argument("--decay-peak-cutoff", type=int, default=5)
    g.add_argument("--rsf", type=float, default=1.5)
    g.add_argument("--lsf", type=float, default=0.5)
    g.add_argument("--canny-sigma", type=float, default=0.4)
    g.add_argument("--canny-low", type=float, default=0.10)
    g.add_argument("--canny-high", type=float, default=0.20)
    g.add_argument("--ewr-factor", type=float, default=0.8)
    g.add_argument("--se-size", type=int, default=3)
    g.add_argument("--alpha", type=float, default=0.1)
    g.add_argument("--beta", type=float, default=0.5)
    g.add_argument("--gamma", type=float, default=1.0)
    g.add_argument("--kappa", type=float, default=2.0)
    g.add_argument("--iterations", type=int, default=300)
    g.add_argument("--n-points", type=int, default=100)
    g.add_argument("--snake-blur", type=float, default=2.0)


def _config_from(args) -> PipelineConfig:
    return PipelineConfig(
        thresholds=ThresholdParams(right_threshold=args.right_threshold,
                                   left_threshold=args.left_threshold,
                                   decay_peak_cutoff=args.decay_peak_cutoff),
        split=SplitParams(rsf=args.rsf, lsf=args.lsf),
        edge=EdgeParams(gaussian_sigma=args.canny_sigma,
                        low_fraction=args.canny_low,
                        high_fraction=args.canny_high),
        washup=WashupParams(ewr_factor=args.ewr_factor),
        snake=SnakeParams(alpha=args.alpha, beta=args.beta, gamma=args.gamma,
                          kappa=args.kappa, iterations=args.iterations,
                          n_points=args.n_points, blur_sigma=args.snake_blur),
        se_size=args.se_size,
    )


def _seed_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cx", type=int, required=True, help="seed circle center x")
    p.add_argument("--cy", type=int, required=True, help="seed circle center y")
    p.add_argument("--px", type=int, required=True, help="circumference point x")
    p.add_argument("--py", type=int, required=True, help="circumference point y")


def _cmd_process(args) -> int:
    img = load_gray(args.image)
    gt = load_mask(args.gt) if args.gt else None
    result = run_pipeline(img, (args.cx, args.cy, args.px, args.py),
                          _config_from(args), gt=gt)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_gray(result.hssi, out / "hssi.png")
    save_mask(result.edge_original, out / "edge_original.png")
    save_mask(result.ehssi, out / "ehssi.png")
    save_mask(result.washed, out / "washed.png")
    save_mask(result.eehssi, out / "eehssi.png")
    save_mask(result.seg_original, out / "seg_original.png")
    save_mask(result.seg_hssi, out / "seg_hssi.png")
    pp = result.pointer_pair
    summary = {"pointer": {"xl": pp.xl, "xr": pp.xr, "xp": pp.xp,
                           "shape": pp.shape.value}}
    if result.metrics is not None:
        summary["metrics"] = {k: round(v, 4) for k, v in
                              vars(result.metrics).items()}
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary, indent=2))
    return 0


def _cmd_batch(args) -> int:
    report = batch(args.manifest, _config_from(args), out_path=args.out)
    sys.stdout.write(report if args.out is None else f"report written to {args.out}\n")
    return 0


def _cmd_sweep(args) -> int:
    img = load_gray(args.image)
    gt = load_mask(args.gt)
    result = sweep(img, (args.cx, args.cy, args.px, args.py), gt,
                   _config_from(args))
    print(f"best: xl={result.best_xl} xr={result.best_xr} "
          f"pir={result.best_pir:.4f}")
    print(f"auto placement: xl={result.default_xl} xr={result.default_xr} "
          f"pir={result.default_pir:.4f}")
    if args.grid_out:
        np.save(args.grid_out, result.grid)
        print(f"grid written to {args.grid_out}")
    return 0


def _cmd_phantom(args) -> int:
    manifest = write_phantom_dataset(
        args.out, args.count, base_seed=args.base_seed, size=args.size,
        axis_range=(args.min_axis, args.max_axis),
        seed_fraction=args.seed_fraction, lesion_mean=args.lesion_mean,
        background_mean=args.background_mean, speckle=args.speckle,
        noise_sigma=args.noise_sigma)
    print(f"manifest written to {manifest}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.listen.rpartition(":")
    app = create_app(args.images, _config_from(args),
                     frontend_dir=args.frontend)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="echosplit",
        description="Histogram split-and-stretch edge enhancement pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("process", help="run the pipeline on one image")
    p.add_argument("--image", required=True)
    p.add_argument("--gt", help="optional ground-truth mask")
    p.add_argument("--out", required=True, help="output directory for stage images")
    _seed_flags(p)
    _add_config_flags(p)
    p.set_defaults(fn=_cmd_process)

    p = sub.add_parser("batch", help="evaluate a manifest and write a CSV report")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", help="report path (stdout when omitted)")
    _add_config_flags(p)
    p.set_defaults(fn=_cmd_batch)

    p = sub.add_parser("sweep", help="exhaustive pointer-pair search on one image")
    p.add_argument("--image", required=True)
    p.add_argument("--gt", required=True)
    p.add_argument("--grid-out", help="optional .npy path for the full PIR grid")
    _seed_flags(p)
    _add_config_flags(p)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("phantom", help="generate a synthetic dataset + manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--min-axis", type=float, default=30.0)
    p.add_argument("--max-axis", type=float, default=45.0)
    p.add_argument("--seed-fraction", type=float, default=0.85)
    p.add_argument("--lesion-mean", type=float, default=35.0)
    p.add_argument("--background-mean", type=float, default=120.0)
    p.add_argument("--speckle", type=float, default=0.35)
    p.add_argument("--noise-sigma", type=float, default=5.0)
    p.set_defaults(fn=_cmd_phantom)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--images", required=True, help="catalog directory")
    p.add_argument("--listen", default="127.0.0.1:8000")
    p.add_argument("--frontend", help="directory of built UI assets to serve at /")
    _add_config_flags(p)
    p.set_defaults(fn=_cmd_serve)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
