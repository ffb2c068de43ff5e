import numpy as np
import pytest

from internodal.core import all_configs


GENERAL = all_configs(1.0, 2.0)
EQUAL = all_configs(1.0, 1.0)
ALL16 = GENERAL + EQUAL


def cfg_id(cfg):
    return cfg.label()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
