"""Group laws, exact algebra arithmetic, involution and generators."""

import random
from fractions import Fraction

from heisenkit.algebra import (AlgebraElement, e_term, heis_laplacian,
                               heis_xyz, hermitian_square, laplacian,
                               laplacian_as_squares, one_minus,
                               sos_identity_sides, steinberg_check)
from heisenkit.groups import Heisenberg, Heisenberg3, SpecialLinear

H = Heisenberg


def rand_elt(rng, group, size=3, span=2):
    """Random small algebra element over the Heisenberg group."""
    terms = {}
    for _ in range(size):
        g = (rng.randint(-span, span), rng.randint(-span, span),
             rng.randint(-span, span))
        terms[g] = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
    return AlgebraElement(group, terms)


def test_heisenberg_product_law():
    assert H.mul(H.x, H.y) == (1, 1, 1)
    assert H.mul(H.y, H.x) == (1, 1, 0)
    g = (2, -3, 5)
    assert H.mul(g, H.inv(g)) == H.identity
    assert H.mul(H.inv(g), g) == H.identity
    # z = [x, y]
    comm = H.mul(H.mul(H.x, H.y), H.mul(H.inv(H.x), H.inv(H.y)))
    assert comm == H.z


def test_heisenberg3_commutators():
    G = Heisenberg3
    for i in range(3):
        for j in range(3):
            xi, yj = G.x(i), G.y(j)
            comm = G.mul(G.mul(xi, yj), G.mul(G.inv(xi), G.inv(yj)))
            assert comm == (G.z if i == j else G.identity)
    g = ((1, -2, 0), (0, 3, 1), -4)
    assert G.mul(g, G.inv(g)) == G.identity


def test_mul_difference_of_squares():
    one_minus_x = one_minus(H, H.x)
    one_plus_x = AlgebraElement(H, {H.identity: 1, H.x: 1})
    prod = one_minus_x * one_plus_x
    assert prod.terms == {H.identity: 1, (2, 0, 0): -1}


def test_mul_identity_neutral():
    rng = random.Random(1)
    xi = rand_elt(rng, H)
    assert xi * AlgebraElement.one(H) == xi
    assert AlgebraElement.one(H) * xi == xi


def test_mul_xy_vs_yx():
    x_elt = AlgebraElement.from_elt(H, H.x)
    y_elt = AlgebraElement.from_elt(H, H.y)
    assert (x_elt * y_elt).terms == {(1, 1, 1): 1}
    assert (y_elt * x_elt).terms == {(1, 1, 0): 1}


def test_mul_associative_random():
    rng = random.Random(2)
    for _ in range(10):
        a, b, c = (rand_elt(rng, H) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_star_basic():
    assert one_minus(H, H.x).star().terms == {H.identity: 1, H.inv(H.x): -1}
    rng = random.Random(3)
    for _ in range(10):
        a, b = rand_elt(rng, H), rand_elt(rng, H)
        assert (a * b).star() == b.star() * a.star()
        assert a.star().star() == a


def test_star_laplacian_selfadjoint():
    delta = heis_laplacian()
    assert delta.star() == delta
    assert delta.terms == {H.identity: 4, H.x: -1, H.inv(H.x): -1,
                           H.y: -1, H.inv(H.y): -1}


def test_laplacian_equals_square_form():
    assert heis_laplacian() == laplacian_as_squares(H, [H.x, H.y])
    assert laplacian(H, []).is_zero()


def test_e_term_involution_mod_2():
    G = SpecialLinear(3, 2)
    e = e_term(G, 1, 2, 1)
    g = G.elementary(1, 2, 1)
    assert e.terms == {G.identity: 2, g: -2}  # generator is an involution mod 2
    assert e.star() == e
    assert e == one_minus(G, g).star() * one_minus(G, g)


def test_e_term_zero_label():
    G = SpecialLinear(3, 5)
    assert e_term(G, 1, 2, 0).is_zero()


def test_e_term_matches_hermitian_square():
    G = SpecialLinear(4, 7)
    for (i, j, r) in [(1, 2, 3), (2, 4, 6), (3, 1, 1)]:
        g = G.elementary(i, j, r)
        assert e_term(G, i, j, r) == one_minus(G, g).star() * one_minus(G, g)


def test_special_linear_det_and_inverse():
    G = SpecialLinear(3, 7)
    rng = random.Random(4)
    g = G.identity
    for _ in range(20):
        i, j = rng.sample([1, 2, 3], 2)
        g = G.mul(g, G.elementary(i, j, rng.randrange(7)))
        assert G.det(g) == 1
        assert G.mul(g, G.inv(g)) == G.identity


def test_steinberg_exhaustive_small():
    report = steinberg_check(3, 5)
    assert report["pass"]
    assert report["failures"] == []
    assert report["additivity"] == 25 * 6  # q^2 pairs, 6 ordered (i,j)


def test_steinberg_single_commutator():
    G = SpecialLinear(3, 7)
    comm = G.commutator(G.elementary(1, 2, 1), G.elementary(2, 3, 1))
    assert comm == G.elementary(1, 3, 1)


def test_steinberg_zero_pairs():
    G = SpecialLinear(3, 5)
    assert G.mul(G.elementary(1, 2, 0), G.elementary(1, 2, 0)) == G.identity


def test_xyz_selfadjoint_support():
    X, Y, Z = heis_xyz()
    for elt, gen in ((X, H.x), (Y, H.y), (Z, H.z)):
        assert elt.star() == elt
        assert elt.terms == {H.identity: 2, gen: -1, H.inv(gen): -1}


def test_sos_identity_exact():
    lhs, rhs = sos_identity_sides()
    assert lhs == rhs
    assert not (lhs - rhs).terms


def test_hermitian_square_positive_diagonal():
    sq = hermitian_square(H, (1, 2, 3))
    assert sq.coefficient(H.identity) == 2
    assert sq.star() == sq


def test_scalar_arithmetic():
    xi = AlgebraElement(H, {H.x: Fraction(1, 2)})
    assert (2 * xi).terms == {H.x: 1}
    assert (xi * 2).terms == {H.x: 1}
    assert (0 * xi).is_zero()
    assert (-xi).terms == {H.x: Fraction(-1, 2)}
