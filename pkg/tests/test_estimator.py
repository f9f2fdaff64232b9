import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from rainbow_nbhd.estimator import FEATURES, RainbowInvariants, check_graph
from rainbow_nbhd.families import complete, cycle, sunlet
from rainbow_nbhd.io import emit_graph6


def test_transform_values():
    X = [cycle(7), complete(4), emit_graph6(sunlet(7)), (3, [(0, 1), (1, 2)])]
    out = RainbowInvariants().fit_transform(X)
    assert out.shape == (4, len(FEATURES))
    np.testing.assert_array_equal(out[0], [7, 7, 2, 3, 3, 5, 3])
    np.testing.assert_array_equal(out[1], [4, 6, 4, 4, 4, 4, 4])
    assert out[2, FEATURES.index("r_max")] == 7
    np.testing.assert_array_equal(out[3], [3, 2, 2, 2, 3, 3, 3])


def test_params_and_clone():
    est = RainbowInvariants(max_nodes=1000, n_jobs=2, prune=False)
    assert est.get_params() == {"max_nodes": 1000, "n_jobs": 2, "prune": False}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    est.set_params(prune=True)
    assert est.prune


def test_pipeline_and_feature_names():
    pipe = make_pipeline(RainbowInvariants(), FunctionTransformer(lambda a: a[:, 4:6]))
    np.testing.assert_array_equal(pipe.fit_transform([cycle(5), cycle(7)]), [[3, 3], [3, 5]])
    assert list(RainbowInvariants().get_feature_names_out()) == list(FEATURES)


def test_validation():
    with pytest.raises(TypeError):
        RainbowInvariants().fit(cycle(5))
    with pytest.raises(ValueError):
        RainbowInvariants().fit([])
    with pytest.raises(TypeError):
        check_graph(3.5)
    with pytest.raises(RuntimeError, match="budget"):
        RainbowInvariants(max_nodes=300).fit_transform([sunlet(7)])
