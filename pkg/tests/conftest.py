import numpy as np
import pytest

from gaze3d.core import Fixation, Scanpath, VolumeGeometry


def random_scanpath(rng, n, id="sp", walk=False, step=0.02):
    """Seeded random scanpath with n fixations in normalized coordinates."""
    if walk:
        xyz = np.empty((n, 3))
        xyz[0] = rng.uniform(0.3, 0.7, size=3)
        steps = rng.normal(scale=step, size=(n - 1, 3))
        xyz[1:] = xyz[0] + np.cumsum(steps, axis=0)
        xyz = np.clip(xyz, 0.0, 1.0)
    else:
        xyz = rng.uniform(size=(n, 3))
    t = rng.uniform(50.0, 500.0, size=n)
    return Scanpath(
        id, tuple(Fixation(x, y, z, d) for (x, y, z), d in zip(xyz, t))
    )


@pytest.fixture
def geometry():
    return VolumeGeometry(64, 64, 32, pixels_per_degree=4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
