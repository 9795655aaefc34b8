"""Histogram split-and-stretch edge enhancement for noisy grayscale images.

A seed circle inside the target region drives a two-pointer split of the
region histogram; stretching the intensities outside the pointer band
suppresses interior speckle edges while sharpening the boundary. The package
bundles the full pipeline, synthetic phantoms, an exhaustive pointer sweep,
batch evaluation, a CLI and an HTTP service.
"""

from .edges import EdgeParams, canny, sobel_gradient
from .harness import (ManifestEntry, PhantomSpec, PipelineConfig,
                      PipelineMetrics, PipelineResult, StageError, SweepResult,
                      batch, default_phantom_suite, generate_phantom,
                      read_manifest, run_pipeline, sweep, write_manifest,
                      write_phantom_dataset)
from .hssi import SplitParams, apply_split, split_lut
from .imgcore import (load_gray, load_mask, masked_histogram, save_gray,
                      save_mask)
from .metrics import dsc, pir
from .morph import (WashupParams, eehssi, fill_holes, morph_close,
                    structuring_element, washup)
from .roi_init import CircleROI, circle_from_points, circle_mask
from .segment import (SnakeParams, contour_to_mask, init_contour,
                      snake_evolve)
from .service import build_catalog, create_app
from .two_pointer import (HistogramShape, PointerPair, ThresholdParams,
                          classify, place_pointers)

__version__ = "0.1.0"
