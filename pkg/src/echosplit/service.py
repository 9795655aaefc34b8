"""HTTP facade over the pipeline for the browser UI and scripted clients.

Three endpoints: list the image catalog, fetch one image as PNG, and run the
pipeline on one image with caller-supplied seed points. The service is
stateless; every process request carries its own seed and overrides, and the
catalog is fixed at startup.
"""

from __future__ import annotations

import base64
import dataclasses
import io
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles
from PIL import Image
from pydantic import BaseModel, Field

from .edges import EdgeParams
from .harness import PipelineConfig, StageError, run_pipeline
from .hssi import SplitParams
from .imgcore import load_gray, load_mask
from .morph import WashupParams
from .segment import SnakeParams
from .two_pointer import ThresholdParams


class SeedModel(BaseModel):
    cx: int
    cy: int
    px: int
    py: int


class OverridesModel(BaseModel):
    """Optional per-request parameter overrides; unset fields keep defaults."""

    right_threshold: float | None = None
    left_threshold: float | None = None
    decay_peak_cutoff: int | None = None
    rsf: float | None = None
    lsf: float | None = None
    canny_sigma: float | None = None
    canny_low: float | None = None
    canny_high: float | None = None
    ewr_factor: float | None = None
    se_size: int | None = None
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    kappa: float | None = None
    iterations: int | None = None
    n_points: int | None = None
    snake_blur: float | None = None


class ProcessRequestModel(BaseModel):
    seed: SeedModel
    params: OverridesModel = Field(default_factory=OverridesModel)


class ImageInfoModel(BaseModel):
    id: str
    width: int
    height: int
    has_ground_truth: bool


class PointerModel(BaseModel):
    xl: int
    xr: int
    xp: int
    shape: str


class MetricsModel(BaseModel):
    dsc_original: float
    dsc_hssi: float
    pir_original: float
    pir_ehssi: float
    pir_washed: float


class ProcessResponseModel(BaseModel):
    pointer: PointerModel
    stages: dict[str, str]  # stage name -> base64 PNG
    metrics: MetricsModel | None


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    image_path: Path
    gt_path: Path | None


def build_catalog(images_dir) -> dict[str, CatalogEntry]:
    """Map image ids to files. ``foo.png`` pairs with mask ``foo_gt.png``."""
    images_dir = Path(images_dir)
    if not images_dir.is_dir():
        raise NotADirectoryError(f"image directory not found: {images_dir}")
    catalog: dict[str, CatalogEntry] = {}
    for path in sorted(images_dir.iterdir()):
        if path.suffix.lower() not in (".png", ".pgm") or path.stem.endswith("_gt"):
            continue
        gt = None
        for suffix in (".png", ".pgm"):
            candidate = path.with_name(path.stem + "_gt" + suffix)
            if candidate.exists():
                gt = candidate
                break
        catalog[path.stem] = CatalogEntry(image_path=path, gt_path=gt)
    return catalog


def _png_b64(arr: np.ndarray) -> str:
    if arr.dtype == bool:
        arr = arr.astype(np.uint8) * 255
    buf = io.BytesIO()
    Image.fromarray(arr, mode="L").save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


def _merge_config(base: PipelineConfig, o: OverridesModel) -> PipelineConfig:
    def pick(value, default):
        return default if value is None else value

    t, s, e, w, k = base.thresholds, base.split, base.edge, base.washup, base.snake
    return PipelineConfig(
        thresholds=ThresholdParams(
            right_threshold=pick(o.right_threshold, t.right_threshold),
            left_threshold=pick(o.left_threshold, t.left_threshold),
            decay_peak_cutoff=pick(o.decay_peak_cutoff, t.decay_peak_cutoff)),
        split=SplitParams(rsf=pick(o.rsf, s.rsf), lsf=pick(o.lsf, s.lsf)),
        edge=EdgeParams(gaussian_sigma=pick(o.canny_sigma, e.gaussian_sigma),
                        low_fraction=pick(o.canny_low, e.low_fraction),
                        high_fraction=pick(o.canny_high, e.high_fraction)),
        washup=WashupParams(ewr_factor=pick(o.ewr_factor, w.ewr_factor)),
        snake=SnakeParams(alpha=pick(o.alpha, k.alpha),
                          beta=pick(o.beta, k.beta),
                          gamma=pick(o.gamma, k.gamma),
                          kappa=pick(o.kappa, k.kappa),
                          iterations=pick(o.iterations, k.iterations),
                          n_points=pick(o.n_points, k.n_points),
                          blur_sigma=pick(o.snake_blur, k.blur_sigma)),
        se_size=pick(o.se_size, base.se_size),
    )


def create_app(images_dir, cfg: PipelineConfig = PipelineConfig(),
               frontend_dir=None) -> FastAPI:
    catalog = build_catalog(images_dir)
    app = FastAPI(title="echosplit")

    @app.get("/api/images", response_model=list[ImageInfoModel])
    def list_images():
        infos = []
        for image_id in sorted(catalog):
            entry = catalog[image_id]
            img = load_gray(entry.image_path)
            infos.append(ImageInfoModel(
                id=image_id, width=img.shape[1], height=img.shape[0],
                has_ground_truth=entry.gt_path is not None))
        return infos

    @app.get("/api/images/{image_id}/png")
    def get_image(image_id: str):
        entry = catalog.get(image_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown image id: {image_id}")
        img = load_gray(entry.image_path)
        buf = io.BytesIO()
        Image.fromarray(img, mode="L").save(buf, format="PNG")
        return Response(content=buf.getvalue(), media_type="image/png")

    @app.post("/api/images/{image_id}/process", response_model=ProcessResponseModel)
    def process(image_id: str, req: ProcessRequestModel):
        entry = catalog.get(image_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown image id: {image_id}")
        try:
            merged = _merge_config(cfg, req.params)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=f"params: {exc}")
        img = load_gray(entry.image_path)
        gt = load_mask(entry.gt_path) if entry.gt_path is not None else None
        seed = (req.seed.cx, req.seed.cy, req.seed.px, req.seed.py)
        try:
            result = run_pipeline(img, seed, merged, gt=gt)
        except StageError as exc:
            status = 400 if isinstance(exc.__cause__, ValueError) else 500
            raise HTTPException(status_code=status, detail=str(exc))
        metrics = None
        if result.metrics is not None:
            metrics = MetricsModel(**dataclasses.asdict(result.metrics))
        pp = result.pointer_pair
        return ProcessResponseModel(
            pointer=PointerModel(xl=pp.xl, xr=pp.xr, xp=pp.xp, shape=pp.shape.value),
            stages={
                "hssi": _png_b64(result.hssi),
                "edge_original": _png_b64(result.edge_original),
                "ehssi": _png_b64(result.ehssi),
                "washed": _png_b64(result.washed),
                "eehssi": _png_b64(result.eehssi),
                "seg_original": _png_b64(result.seg_original),
                "seg_hssi": _png_b64(result.seg_hssi),
            },
            metrics=metrics,
        )

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")
    return app
