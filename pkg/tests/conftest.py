import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eosgraph import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the numba kernels once so timed tests measure algorithms, not JIT
    _kernels.warm_up()


def graph_from_edges(edges, activity=None, weights=None):
    """Tiny helper: ActivityGraph over integer node ids with aligned names."""
    from oracles import fixed_name

    from eosgraph import Activity, ActivityGraph

    activity = activity or Activity.CONTRACT_AUTHORIZATION
    aggregated = {}
    for idx, (u, v) in enumerate(edges):
        w = 1 if weights is None else weights[idx]
        key = (fixed_name(u), fixed_name(v))
        prev = aggregated.get(key)
        if prev is None:
            aggregated[key] = (w, 1)
        else:
            aggregated[key] = (prev[0] + w, prev[1] + 1)
    return ActivityGraph.from_aggregated(activity, aggregated)
