import pytest

import equipell as eq


@pytest.fixture(scope="session")
def solved():
    """Session-wide cache of solver runs keyed by (set, t, tol, seed)."""
    cache = {}

    def get(name, t, tol=1e-10, seed=0):
        key = (name, t, tol, seed)
        if key not in cache:
            genset = eq.builtin_set(name)
            start = eq.feasible_start(genset, t, seed=seed)
            cache[key] = eq.solve_primal(
                eq.assemble_instance(genset, t), start, tol=tol
            )
        return cache[key]

    return get


@pytest.fixture()
def arcsine_moments():
    def make(order):
        return eq.MomentSequence.from_model(eq.named_model("interval"), order)

    return make


@pytest.fixture()
def model_moments():
    def make(key, order):
        return eq.MomentSequence.from_model(eq.named_model(key), order)

    return make
