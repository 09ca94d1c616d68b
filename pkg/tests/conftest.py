import numpy as np
import pytest
from hypothesis import settings

from tqft2d.dsl import GENERATOR_ARITY, Gen, Seq, Tensor, arity
from tqft2d.frobenius import FrobeniusAlgebra
from tqft2d.random_algebras import random_hidden_algebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {line}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def diag12():
    return FrobeniusAlgebra.diagonal([1, 2])


@pytest.fixture
def z2():
    return FrobeniusAlgebra.group_algebra(2)


def one_dim(eps):
    return FrobeniusAlgebra(np.ones((1, 1, 1)), [1], [eps])


def random_layer(rng, k, max_out=3):
    """A tensor of generators/identities with ``k`` inputs and at most ``max_out`` outputs."""
    while True:
        pieces, used, out = [], 0, 0
        while used < k or (k == 0 and not pieces):
            left = k - used
            names = [n for n, (i, _) in GENERATOR_ARITY.items() if i <= left and (i > 0 or rng.random() < 0.2)]
            if k == 0:
                names = ["unit"]
            name = names[rng.integers(len(names))]
            i, o = GENERATOR_ARITY[name]
            pieces.append(Gen(name))
            used += i
            out += o
        if out <= max_out:
            layer = pieces[0]
            for p in pieces[1:]:
                layer = Tensor(layer, p)
            return layer


def random_word(rng, n_in=None, max_len=6, max_arity=3):
    """Random composable word; ``max_len`` bounds the number of layers."""
    k = int(rng.integers(0, max_arity + 1)) if n_in is None else n_in
    length = int(rng.integers(1, max_len + 1))
    word = None
    for _ in range(length):
        layer = random_layer(rng, k, max_arity)
        word = layer if word is None else Seq(word, layer)
        k = arity(layer)[1]
    return word


def random_algebra(rng, max_dim=4, cond_max=10.0):
    return random_hidden_algebra(int(rng.integers(1, max_dim + 1)), rng, cond_max=cond_max)
