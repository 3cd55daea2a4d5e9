import itertools
import math

import pytest
import torch

from jointlc.ops.tensor_core import (
    complement,
    fold_mode_n,
    fold_pair,
    from_canonical,
    frobenius_norm,
    missing_rate,
    mode_pairs,
    pair_unfold_index,
    project,
    to_canonical,
    unfold_index,
    unfold_mode_n,
    unfold_pair,
)

from .helpers import randn

pytestmark = pytest.mark.unit


def _indices(dims):
    return itertools.product(*[range(1, d + 1) for d in dims])


def test_mode_pairs_are_lexicographic():
    assert mode_pairs(3) == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    assert len(mode_pairs(4)) == 10
    assert mode_pairs(1) == [(1, 1)]


def test_canonical_order_is_first_index_fastest():
    x = torch.arange(24, dtype=torch.float64).reshape(2, 3, 4)
    flat = to_canonical(x)
    assert flat[1] == x[1, 0, 0]
    assert flat[2] == x[0, 1, 0]
    assert flat[6] == x[0, 0, 1]
    assert torch.equal(from_canonical(flat, (2, 3, 4)), x)


def test_from_canonical_rejects_wrong_size():
    with pytest.raises(ValueError):
        from_canonical(torch.zeros(5, dtype=torch.float64), (2, 3))


def test_frobenius_norm(generator):
    assert frobenius_norm(torch.zeros(2, 3, 4, dtype=torch.float64)) == 0
    assert frobenius_norm(torch.ones(2, 2, dtype=torch.float64)) == 2
    x = randn(5, 4, 3, generator=generator)
    brute = math.sqrt(sum(v * v for v in x.flatten().tolist()))
    assert frobenius_norm(x) == pytest.approx(brute, rel=1e-12)


def test_mode_n_index_formula():
    assert unfold_index((2, 3, 4), (2, 3, 4), 1) == (2, 12)
    x = torch.arange(24, dtype=torch.float64).reshape(2, 3, 4)
    assert unfold_mode_n(x, 1)[1, 11] == x[1, 2, 3]


@pytest.mark.parametrize("dims", [(3, 4, 2), (2, 3, 2, 2), (1, 3, 1, 2)])
def test_unfold_mode_n_matches_index_map(dims, generator):
    x = randn(*dims, generator=generator)
    for n in range(1, len(dims) + 1):
        m = unfold_mode_n(x, n)
        assert m.shape == (dims[n - 1], math.prod(dims) // dims[n - 1])
        for index in _indices(dims):
            i, j = unfold_index(dims, index, n)
            assert m[i - 1, j - 1] == x[tuple(k - 1 for k in index)]


def test_mode_1_of_matrix_is_identity(generator):
    x = randn(3, 5, generator=generator)
    assert torch.equal(unfold_mode_n(x, 1), x)


@pytest.mark.parametrize("dims", [(3, 4, 5), (2, 2, 2), (4, 3, 2, 2), (2, 1, 1), (1, 1, 1, 3)])
def test_fold_mode_n_roundtrip(dims, generator):
    x = randn(*dims, generator=generator)
    for n in range(1, len(dims) + 1):
        assert torch.equal(fold_mode_n(unfold_mode_n(x, n), dims, n), x)


def test_fold_mode_n_degenerate_extents():
    m = torch.tensor([[1.0], [2.0]], dtype=torch.float64)
    x = fold_mode_n(m, (2, 1, 1), 1)
    assert x.shape == (2, 1, 1)
    assert to_canonical(x).tolist() == [1.0, 2.0]


def test_unfold_pair_shapes():
    x = torch.arange(24, dtype=torch.float64).reshape(2, 3, 4)
    assert torch.equal(unfold_pair(x, 1, 2), x)
    assert unfold_pair(x, 2, 2).shape == (3, 8)
    assert unfold_pair(x, 1, 3).shape == (2, 4, 3)


@pytest.mark.parametrize("dims", [(2, 3, 4), (2, 3, 2, 2), (3, 1, 2, 2)])
def test_unfold_pair_matches_index_map(dims, generator):
    x = randn(*dims, generator=generator)
    for l1, l2 in mode_pairs(len(dims)):
        y = unfold_pair(x, l1, l2)
        for index in _indices(dims):
            position = pair_unfold_index(dims, index, l1, l2)
            assert y[tuple(p - 1 for p in position)] == x[tuple(k - 1 for k in index)]


@pytest.mark.parametrize("dims", [(2, 2, 2), (3, 4, 5), (2, 3, 4, 5), (1, 3, 1, 2), (4, 1, 3)])
def test_fold_pair_roundtrip(dims, generator):
    x = randn(*dims, generator=generator)
    for l1, l2 in mode_pairs(len(dims)):
        y = unfold_pair(x, l1, l2)
        assert torch.equal(fold_pair(y, dims, l1, l2), x)
        assert torch.equal(torch.sort(y.flatten()).values, torch.sort(x.flatten()).values)
        assert frobenius_norm(y) == pytest.approx(frobenius_norm(x), rel=1e-14)


def test_unfold_errors():
    x = torch.zeros(2, 3, 4, dtype=torch.float64)
    with pytest.raises(ValueError):
        unfold_mode_n(x, 0)
    with pytest.raises(ValueError):
        unfold_mode_n(x, 4)
    with pytest.raises(ValueError):
        unfold_pair(x, 2, 1)
    with pytest.raises(ValueError):
        fold_mode_n(torch.zeros(3, 7, dtype=torch.float64), (2, 3, 4), 2)
    with pytest.raises(ValueError):
        fold_pair(torch.zeros(2, 3, 5, dtype=torch.float64), (2, 3, 4), 1, 2)


def test_project_partition(generator):
    x = randn(4, 3, 5, generator=generator)
    omega = torch.rand(4, 3, 5, generator=generator) < 0.4
    assert torch.equal(project(x, torch.ones_like(omega)), x)
    assert torch.equal(project(x, torch.zeros_like(omega)), torch.zeros_like(x))
    assert torch.equal(project(x, omega) + project(x, complement(omega)), x)
    assert torch.equal(project(project(x, omega), omega), project(x, omega))
    with pytest.raises(ValueError):
        project(x, omega[:, :, :2])


def test_missing_rate():
    assert missing_rate(torch.ones(3, 4, dtype=torch.bool)) == 0
    assert missing_rate(torch.zeros(3, 4, dtype=torch.bool)) == 100
    omega = torch.zeros(10, 10, 10, dtype=torch.bool)
    omega.view(-1)[:50] = True
    assert missing_rate(omega) == pytest.approx(95.0)
