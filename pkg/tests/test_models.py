import pytest

from crosm import ComplexProjective, RealProjective, Sphere, build_model
from crosm.models import (
    SpaceKind,
    invariant_vector_space,
    is_invariant,
    verify_bracket_tables,
)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sphere_multiplicities_and_dimension(n):
    m = build_model(Sphere(n))
    assert m.multiplicities == (n - 1, 0)
    # unit tangent bundle of S^n has dimension 2n - 1
    assert m.dim == 2 * n - 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cpn_multiplicities_and_dimension(n):
    m = build_model(ComplexProjective(n))
    assert m.multiplicities == (1, 2 * n - 2)
    assert m.dim == 4 * n - 1


@pytest.mark.parametrize("kind", [Sphere(2), Sphere(3), Sphere(4), RealProjective(3),
                                  ComplexProjective(1), ComplexProjective(2)])
def test_bracket_tables_verified(kind):
    assert verify_bracket_tables(build_model(kind)).passed


def test_sphere_brackets_by_hand():
    m = build_model(Sphere(3))
    X, mu1, nu1, nu2 = (m.unit(s) for s in ("X", "mu1", "nu1", "nu2"))
    # [mu^j, nu^j] = -X and [X, mu^j] = -nu^j
    assert m.bracket(mu1, nu1) == tuple(-c for c in X)
    assert m.bracket(X, mu1) == tuple(-c for c in nu1)
    assert not any(m.bracket(mu1, nu2))


def test_invariant_vectors():
    assert invariant_vector_space(build_model(Sphere(2))).dim == 3
    assert invariant_vector_space(build_model(Sphere(4))).dim == 1
    assert invariant_vector_space(build_model(ComplexProjective(2))).dim == 3
    s3 = build_model(Sphere(3))
    assert is_invariant(s3, s3.unit("X"))
    assert not is_invariant(s3, s3.unit("mu1"))


def test_real_projective_carries_caveat():
    assert "component_group_unchecked" in build_model(RealProjective(3)).summary()["caveats"]


def test_model_labels():
    assert build_model(Sphere(3)).labels == ("X", "mu1", "mu2", "nu1", "nu2")
    assert build_model(ComplexProjective(2)).labels[:3] == ("X", "mu", "nu")


@pytest.mark.parametrize("family,n", [("sphere", 1), ("cpn", 0), ("quaternionic", 2)])
def test_invalid_space_kind(family, n):
    with pytest.raises(ValueError):
        build_model(SpaceKind(family, n))
