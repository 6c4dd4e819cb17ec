from fractions import Fraction
from itertools import product
from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sdlab import corpus
from sdlab.complex import face_vector, link, standard_simplex
from sdlab.measures import (
    PolynomialObservable,
    block_density,
    block_sums,
    block_target_coefficients,
    block_targets,
    chains_between,
    converge_blocks,
    converge_fp,
    converge_gamma,
    converge_links,
    flags,
    fp_delta_identity,
    gamma_measure,
    incidence_sums,
    integrate_atomic,
    integrate_volume,
    link_density,
    link_targets,
    phi_exhaustive_mean,
    phi_map,
    phi_mc_integral,
    phi_sample,
    skeleton_fraction,
)
from sdlab.spectral import lam, q_solve, transfer
from sdlab.subdivision import EmbeddedComplex, dual_block_face_vector, standard_embedding, subdivide_embedded

F = Fraction
ONE2 = PolynomialObservable.constant(2)
X2 = PolynomialObservable.coordinate(2, 0)
Y2 = PolynomialObservable.coordinate(2, 1)
XX2 = PolynomialObservable.coordinate(2, 0, 2)


def delta(n):
    return EmbeddedComplex(standard_simplex(n), standard_embedding(n))


def materialize(E, d):
    for _ in range(d):
        E = subdivide_embedded(E)
    return E


def centroid(E, s):
    pts = [E.point(v) for v in s]
    return tuple(sum(c) / len(pts) for c in zip(*pts))


observables = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
    min_size=1,
    max_size=4,
).map(lambda t: PolynomialObservable(2, t))


def test_observable_json_roundtrip():
    phi = X2 + XX2 + PolynomialObservable.constant(2, F(1, 3))
    assert PolynomialObservable.from_json(phi.to_json()).terms == phi.terms
    assert phi((F(1, 2), F(0))) == F(1, 2) + F(1, 4) + F(1, 3)
    with pytest.raises(ValueError):
        PolynomialObservable.from_json({"ambient": 2})


def test_volume_examples():
    E1 = delta(1)
    assert integrate_volume(E1, PolynomialObservable.coordinate(1, 0)) == F(1, 2)
    assert integrate_volume(E1, PolynomialObservable.coordinate(1, 0, 2)) == F(1, 3)
    O = corpus.embedded("octahedron")
    assert integrate_volume(O, PolynomialObservable.constant(3)) == 8


@settings(max_examples=25)
@given(observables)
def test_volume_matches_sympy(phi):
    # dvol gives the triangle mass 1, Lebesgue area is 1/2
    x, y = sympy.symbols("x y")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** e[0] * y ** e[1] for e, c in phi.terms.items())
    ref = 2 * sympy.integrate(sympy.integrate(expr, (y, 0, 1 - x)), (x, 0, 1))
    assert integrate_volume(delta(2), phi) == F(int(ref.p), int(ref.q))


def test_gamma_examples():
    g = gamma_measure(delta(2), 0, 2)
    atoms = list(g)
    assert atoms == [((F(1, 3), F(1, 3)), F(1))]
    assert integrate_atomic(atoms, X2 + Y2) == F(2, 3)
    g = gamma_measure(delta(2), 1, 0)
    assert len(list(g)) == 7 and g.total_mass == F(7, 6)
    assert all(w == F(1, 6) for _, w in g)
    E1 = delta(1)
    assert integrate_atomic(gamma_measure(E1, 1, 0), PolynomialObservable.coordinate(1, 0)) == F(3, 4)


@pytest.mark.parametrize("d", range(4))
def test_gamma_mass_is_transfer(d):
    for p in range(3):
        g = gamma_measure(delta(2), d, p)
        assert g.total_mass * 6**d == transfer((3, 3, 1), 2, d)[p]
        assert integrate_atomic(g, ONE2) == g.total_mass


def test_gamma_matches_materialized_barycenters():
    E = delta(2)
    M = materialize(E, 2)
    for p in range(3):
        ref = sum((XX2(centroid(M, s)) for s in M.complex.faces(p)), F(0)) / 36
        assert integrate_atomic(gamma_measure(E, 2, p), XX2) == ref


def test_top_cell_gamma_converges_to_volume():
    rep = converge_gamma(delta(2), 2, range(1, 5), XX2)
    assert rep.target == F(1, 6)
    assert rep.strictly_decreasing()
    rep = converge_gamma(delta(2), 1, range(2, 6), X2)
    assert rep.strictly_decreasing()


def test_affine_top_cells_exact():
    # barycenter quadrature is exact for affine observables
    rep = converge_gamma(delta(2), 2, range(1, 4), X2 + Y2)
    assert all(e == 0 for e in rep.errors)
    assert rep.strictly_decreasing()


def test_skeleton_share_vanishes():
    fr = [skeleton_fraction(delta(2), d, 0) for d in range(1, 5)]
    assert all(b < a for a, b in zip(fr, fr[1:]))


def brute_link_sums(M, p, l, phi):
    out = F(0)
    for s in M.complex.faces(p):
        fl = face_vector(link(s, M.complex))
        out += phi(centroid(M, s)) * (fl[l] if l < len(fl) else 0)
    return out


@pytest.mark.parametrize("d", [1, 2, 3])
def test_link_density_matches_brute_force(d):
    E = delta(2)
    M = materialize(E, d)
    for p in (0, 1):
        for phi in (ONE2, XX2 + Y2):
            dens = link_density(E, p, d, phi)
            assert dens == [brute_link_sums(M, p, l, phi) / 6**d for l in range(2 - p)]


def test_link_examples():
    E = delta(2)
    for d in range(1, 4):
        f = transfer((3, 3, 1), 2, d)
        dens = link_density(E, 0, d, ONE2)
        assert dens[0] == F(2 * f[1], 6**d)
        assert dens[1] == F(3 * f[2], 6**d) == 3
    assert link_targets(E, 0, ONE2) == [3, 3]


def test_chains_between_is_lambda():
    for size in range(0, 6):
        for steps in range(0, size + 1):
            assert chains_between(size, steps) == lam(size, steps)


@pytest.mark.parametrize("d", [1, 2])
def test_block_density_matches_brute_force(d):
    E = delta(2)
    M = materialize(E, d)
    for p in range(3):
        for phi in (ONE2, X2):
            ref = [F(0)] * (3 - p)
            for s in M.complex.faces(p):
                v = phi(centroid(M, s))
                for l, c in enumerate(dual_block_face_vector(s, M.complex)):
                    ref[l] += v * c
            assert block_density(E, p, d, phi) == [r / 6**d for r in ref]
            assert block_density(E, p, d, phi, method="links") == [r / 6**d for r in ref]


def test_block_l0_is_gamma():
    E = delta(2)
    for p in range(3):
        for d in (1, 2, 3):
            assert block_density(E, p, d, XX2)[0] == converge_gamma(E, p, [d], XX2).values[0]


def test_block_targets():
    assert block_target_coefficients(2, 2) == [1]
    assert block_targets(delta(2), 2, ONE2) == [1]
    for n in range(1, 6):
        q = q_solve(n)
        for l in range(n + 1):
            assert sum(block_target_coefficients(n, p)[l] for p in range(n - l + 1)) == factorial(n + 1) * q[l]


def test_block_partition_gives_next_level():
    E = delta(2)
    for d in range(0, 3):
        sums = [block_sums(E, p, d, [ONE2])[0] for p in range(3)]
        total = [sum(s[l] for s in sums if l < len(s)) for l in range(3)]
        assert tuple(total) == transfer((3, 3, 1), 2, d + 1)


def test_block_convergence():
    reps = converge_blocks(delta(2), 0, range(1, 5), ONE2)
    assert [r.target for r in reps] == block_target_coefficients(2, 0)
    for r in reps:
        assert r.strictly_decreasing()


def test_fp_density():
    rep = fp_delta_identity(1, 0, range(1, 7))
    assert rep.target == 2
    assert rep.values == [F(2 * (2**d - 1) + 2, 2**d) for d in range(1, 7)]
    rep = fp_delta_identity(2, 2, range(0, 4))
    assert rep.values == [1, 1, 1, 1]
    rep = fp_delta_identity(2, 0, range(1, 4))
    # f_1(Lk v) summed over vertices is 3 f_2, so the mass is exactly 3
    assert rep.values == [3, 3, 3]
    assert rep.target == 3
    reps = converge_links(delta(2), 0, range(1, 4), X2)
    assert reps[-1].values == converge_fp(delta(2), 0, range(1, 4), X2).values


def test_incidence_double_count():
    E = delta(2)
    for d in (1, 2):
        f = transfer((3, 3, 1), 2, d)
        assert incidence_sums(E, d, 0, 1, [ONE2]) == [2 * f[1]]
        assert incidence_sums(E, d, 1, 2, [ONE2]) == [3 * f[2]]


# chart sampler --------------------------------------------------------------


def test_flags():
    assert len(flags(2)) == 6
    assert flags(1) == ((0, 1), (1, 0))


def test_phi_midpoint_example():
    pts = {phi_map([w], 1, (F(1, 2),)) for w in range(2)}
    assert pts == {(F(1, 4),), (F(3, 4),)}
    x = phi_sample(1, 1, seed=3, x0=(F(1, 2),))
    assert x in pts


@pytest.mark.parametrize("n,d", [(1, 1), (1, 3), (1, 6), (2, 1), (2, 2), (2, 3)])
def test_exhaustive_words_equal_gamma(n, d):
    E = delta(n)
    phis = [PolynomialObservable.coordinate(n, 0), PolynomialObservable.coordinate(n, 0, 2)]
    if n == 2:
        phis.append(XX2 + Y2)
    for phi in phis:
        ref = integrate_atomic(gamma_measure(E, d, n), phi)
        assert phi_exhaustive_mean(n, d, phi) == ref


def test_exhaustive_words_hit_each_top_cell_once():
    E = delta(2)
    pts = {phi_map(w, 2) for w in product(range(6), repeat=2)}
    ref = {x for x, _ in gamma_measure(E, 2, 2)}
    assert pts == ref


def test_mc_constant_and_determinism():
    r = phi_mc_integral(2, 5, 1000, ONE2, seed=1)
    assert r.mean == 1 and r.stderr == 0
    a = phi_mc_integral(2, 8, 3000, X2, seed=99, block_size=1000)
    b = phi_mc_integral(2, 8, 3000, X2, seed=99, block_size=1000)
    assert a.mean == b.mean and a.stderr == b.stderr
    c = phi_mc_integral(2, 8, 3000, X2, seed=100, block_size=1000)
    assert c.mean != a.mean


def test_mc_large_depth_uses_exact_integers():
    r = phi_mc_integral(2, 30, 200, XX2, seed=5)
    assert isinstance(r.mean, Fraction)
    assert 0 <= r.mean <= 1


def test_mc_within_three_stderr():
    r = phi_mc_integral(2, 10, 20_000, X2, seed=2024)
    assert abs(float(r.mean) - 1 / 3) < 3 * r.stderr
