from fractions import Fraction as F

import pytest

from crosm.algebra import (
    LieAlgebraData,
    Subspace,
    centralizer,
    invariance_check,
    jacobi_check,
    whole,
)
from crosm.lie_tables import so_algebra, su_algebra


@pytest.mark.parametrize("n1,dim", [(3, 3), (4, 6), (5, 10), (7, 21)])
def test_so_dimension_and_identities(n1, dim):
    alg = so_algebra(n1)
    assert alg.dim == dim
    assert jacobi_check(alg).passed
    assert invariance_check(alg).passed


@pytest.mark.parametrize("n1,dim", [(2, 3), (3, 8), (4, 15)])
def test_su_dimension_and_identities(n1, dim):
    alg = su_algebra(n1)
    assert alg.dim == dim
    assert jacobi_check(alg).passed
    assert invariance_check(alg).passed


def test_bracket_is_antisymmetric():
    alg = so_algebra(4)
    for i in range(alg.dim):
        for j in range(alg.dim):
            x, y = alg.basis_vector(i), alg.basis_vector(j)
            assert alg.bracket(x, y) == tuple(-c for c in alg.bracket(y, x))


def _broken_algebra():
    # [a,b]=a, [a,c]=b, [b,c]=0 gives [c,[a,b]] = -b in the Jacobi sum
    struct = {(0, 1): ((0, F(1)),), (0, 2): ((1, F(1)),)}
    eye = tuple(tuple(F(int(i == j)) for j in range(3)) for i in range(3))
    return LieAlgebraData("broken", ("a", "b", "c"), struct, eye)


def test_jacobi_failure_has_witness():
    rep = jacobi_check(_broken_algebra())
    assert not rep.passed
    assert rep.residual != 0
    assert rep.witness


def test_constructor_validation():
    eye = ((F(1), F(0)), (F(0), F(1)))
    with pytest.raises(ValueError):
        LieAlgebraData("x", ("a", "a"), {}, eye)
    with pytest.raises(ValueError):
        LieAlgebraData("x", ("a", "b"), {(1, 0): ()}, eye)
    with pytest.raises(ValueError):
        LieAlgebraData("x", ("a", "b"), {}, ((F(1), F(0)), (F(0), F(-1))))


def test_subspace_operations():
    alg = so_algebra(4)
    e = [alg.basis_vector(i) for i in range(alg.dim)]
    s = Subspace.span(alg, [e[0], e[1], tuple(a + b for a, b in zip(e[0], e[1]))])
    assert s.dim == 2
    assert s.contains(tuple(2 * a - b for a, b in zip(e[0], e[1])))
    assert not s.contains(e[2])
    assert s.coordinates(e[1]) == (0, 1)
    t = Subspace.span(alg, [e[1], e[0]])
    assert s.same_as(t)
    assert (s + Subspace.span(alg, [e[2]])).dim == 3
    with pytest.raises(ValueError):
        Subspace(alg, (e[0], e[0]))


def test_centralizer_of_element_in_so3_is_its_line():
    alg = so_algebra(3)
    x = alg.basis_vector(0)
    c = centralizer(alg, x, whole(alg))
    assert c.dim == 1 and c.contains(x)
