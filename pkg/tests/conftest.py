import random
import sys
from pathlib import Path

import pytest

# Add the project root directory to Python path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.representations.builtins import make_builtin  # noqa: E402
from src.representations.verify import explore  # noqa: E402

BUILTINS = [
    ("left_regular_on", 2, {}),
    ("left_regular_fn_unitary", 2, {"lambda": "1/3"}),
    ("su_tree", 2, {}),
    ("weak_shift", 2, {}),
    ("inductive", 2, {"stream": "thue_morse"}),
    ("slocinski", 1, {}),
]

EXPECTED_CLASS = {
    "left_regular_on": "ss",
    "left_regular_fn_unitary": "us",
    "su_tree": "su",
    "weak_shift": "ws",
    "inductive": "uu",
    "slocinski": "ws",
}


def builtin_id(entry):
    return entry[0]


@pytest.fixture(params=BUILTINS, ids=builtin_id)
def builtin(request):
    name, n, params = request.param
    return make_builtin(name, n, params)


def sample_vertices(rep, radius=4, size=200, seed=0):
    """Deterministic sample of vertices around the canonical seeds"""
    region = sorted(explore(rep, rep.seeds, radius), key=rep.sort_key)
    if len(region) <= size:
        return region
    return random.Random(seed).sample(region, size)


def sample_at_least(rep, size=200, seed=0, radius=3):
    """Exactly `size` sampled vertices, widening the radius until there are enough"""
    region = explore(rep, rep.seeds, radius)
    while len(region) < size:
        radius += 1
        region = explore(rep, rep.seeds, radius)
    return random.Random(seed).sample(sorted(region, key=rep.sort_key), size)
