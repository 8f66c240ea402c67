import pytest

from src.errors import PreconditionError
from src.weights.hecke import hecke, hecke_inverse, hecke_size, phi
from src.weights.partitions import WeightSet, enumerate_weights, equivalent
from tests.conftest import P


def test_hecke_examples():
    assert hecke(P(1, 0), 1, 1) == P(0, 0)
    assert hecke(P(2, 1, 0), 1, 2) == P(1, 1, 0)
    assert hecke(P(1, 1), 2, 3) == P(0, 0)
    assert hecke(P(1, 1), 1, 2) == P(2, 0)


def test_hecke_size_matches_closed_form():
    for r in range(2, 5):
        for k in range(1, 4):
            for mu in enumerate_weights(r, k, WeightSet.W):
                for m in range(1, r):
                    assert hecke(mu, m, k).size == hecke_size(mu, m, k)


def test_hecke_inverse_undoes_hecke():
    for mu in enumerate_weights(3, 3, WeightSet.W):
        for m in range(1, 4):
            assert equivalent(hecke_inverse(hecke(mu, m, 3), m, 3), mu)


def test_hecke_stays_within_level():
    for mu in enumerate_weights(3, 2, WeightSet.W):
        for m in range(1, 4):
            image = hecke(mu, m, 2)
            assert image.is_normalized()
            assert image.within_level(2)


def test_hecke_rejects_bad_index():
    with pytest.raises(PreconditionError):
        hecke(P(1, 0), 3, 2)
    with pytest.raises(PreconditionError):
        hecke(P(1, 0), 0, 2)


def test_phi_examples():
    assert phi(P(0, 0), 0, 2, 2) == P(0, 0)
    assert phi(P(1, 1), 0, 2, 2) == P(2, 0)
    assert phi(P(0, 0, 0), 0, 3, 1) == P(0, 0, 0)


def test_phi_is_a_bijection_onto_the_residue_class():
    r, k = 3, 2
    for offset in range(r * k + 1):
        sources = [mu for mu in enumerate_weights(r, k, WeightSet.P) if (offset + mu.size) % k == 0]
        images = [phi(mu, offset, r, k) for mu in sources]
        target = [lam for lam in enumerate_weights(r, k, WeightSet.W) if (offset + lam.size) % r == 0]
        assert sorted(images) == target


def test_phi_preconditions():
    with pytest.raises(PreconditionError):
        phi(P(2, 0), 0, 2, 2)
    with pytest.raises(PreconditionError):
        phi(P(1, 0), 0, 2, 2)
