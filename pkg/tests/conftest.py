import numpy as np
import pytest

from stieltjesmp import random_stieltjes_pd_sequence, reflect, sequence

# scalar hand-evaluated fixtures used throughout
#   F1: q=1, alpha=0, s=(1,1)       F2: s=(1,1,2)       F3 = reflect(F1)


@pytest.fixture
def f1():
    return sequence([1.0, 1.0])


@pytest.fixture
def f2():
    return sequence([1.0, 1.0, 2.0])


@pytest.fixture
def f3(f1):
    return reflect(f1)


# (q, kappa, max_cond) ladder for the random desk-scale fixtures; the
# conditioning bound keeps the 1e-9/1e-10 identity checks meaningful
LADDER = [
    (1, 4, 1e7), (1, 5, 1e7), (1, 6, 1e8),
    (2, 3, 1e7), (2, 4, 1e7), (2, 5, 1e7),
    (3, 2, 1e7), (3, 3, 1e7),
    (4, 2, 1e7), (4, 3, 1e6),
]

ALPHAS = [-0.5, 0.0, 0.5, 1.0]

_cache = {}


def ladder_fixture(i: int):
    """Deterministic random Stieltjes-PD sequence number i of the ladder."""
    if i not in _cache:
        q, kappa, max_cond = LADDER[i % len(LADDER)]
        alpha = ALPHAS[i % len(ALPHAS)]
        side = "right" if i % 2 == 0 else "left"
        _cache[i] = random_stieltjes_pd_sequence(
            q=q, kappa=kappa, alpha=alpha, side=side, seed=i, max_cond=max_cond)
    return _cache[i]


def rel_err(got, want) -> float:
    got = np.asarray(got, dtype=complex)
    want = np.asarray(want, dtype=complex)
    return float(np.linalg.norm(got - want) / (1.0 + np.linalg.norm(want)))


def seq_rel_err(s1, s2) -> float:
    scale = max(np.linalg.norm(m) for m in s1.moments)
    return max(float(np.abs(a - b).max()) for a, b in zip(s1.moments, s2.moments)) / scale
