import numpy as np
import pytest

from echosplit import EdgeParams, canny


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # Compile the detector kernels once so timed tests measure steady state.
    rng = np.random.default_rng(0)
    canny(rng.integers(0, 256, (32, 32), dtype=np.uint8), EdgeParams())


@pytest.fixture(scope="session")
def phantom_dataset(tmp_path_factory):
    """Shared 50-phantom dataset with manifest, used by the acceptance suite."""
    from echosplit import write_phantom_dataset

    out = tmp_path_factory.mktemp("phantoms50")
    manifest = write_phantom_dataset(out, 50)
    return manifest
