import pytest
from hypothesis import given, settings, strategies as st

from tamedims.cyclo import CycloElt, zeta_power
from tamedims.cyclomat import (
    CycloMatrix,
    charpoly,
    mat_inverse_permutation,
    mat_mul,
    mat_pow,
    mat_trace,
    rank,
    solve_nullspace,
)
from tamedims.errors import DimensionError
from tamedims.galrep import build_tame_rep, commutant_system
from tamedims.ntcore import euler_phi, moebius


def z(m, k):
    return zeta_power(m, k)


def expand_linear_factors(m, roots):
    """Coefficients of prod (X - r), constant term first."""
    poly = [CycloElt.one(m)]
    for r in roots:
        shifted = [CycloElt.zero(m)] + poly
        for i, c in enumerate(poly):
            shifted[i] = shifted[i] - r * c
        poly = shifted
    return poly


def test_identity_is_neutral():
    a = CycloMatrix.from_rows(5, [[z(5, 1), 2], [0, z(5, 3)]])
    eye = CycloMatrix.identity(5, 2)
    assert eye @ a == a == a @ eye


def test_permutation_inverse():
    p = CycloMatrix.permutation(3, [2, 0, 3, 1])
    assert p @ mat_inverse_permutation(p) == CycloMatrix.identity(3, 4)


def test_inverse_rejects_non_monomial():
    with pytest.raises(ValueError):
        mat_inverse_permutation(CycloMatrix.from_rows(1, [[1, 1], [0, 1]]))


def test_diagonal_square():
    d = CycloMatrix.diagonal(9, [z(9, x) for x in (1, 2, 4)])
    assert mat_pow(d, 2) == CycloMatrix.diagonal(9, [z(9, 2 * x) for x in (1, 2, 4)])


def test_negative_power_of_diagonal():
    d = CycloMatrix.diagonal(7, [z(7, x) for x in range(1, 7)])
    assert mat_pow(d, -3) @ mat_pow(d, 3) == CycloMatrix.identity(7, 6)


def test_mul_shape_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(CycloMatrix.zeros(1, 2, 3), CycloMatrix.zeros(1, 2, 3))


def test_traces():
    assert mat_trace(CycloMatrix.identity(4, 5)) == 5
    assert mat_trace(CycloMatrix.zeros(4, 3, 3)) == 0
    for m in (5, 6, 12, 15, 30):
        units = [x for x in range(m) if __import__("math").gcd(x, m) == 1]
        assert mat_trace(CycloMatrix.diagonal(m, [z(m, x) for x in units])) == moebius(m)
    with pytest.raises(DimensionError):
        mat_trace(CycloMatrix.zeros(1, 2, 3))


def test_charpoly_examples():
    assert charpoly(CycloMatrix.identity(1, 2)) == [1, -2, 1]
    i = z(4, 1)
    assert charpoly(CycloMatrix.diagonal(4, [i, -i])) == [1, 0, 1]


def test_charpoly_dense_matrix_against_cofactor_expansion():
    m = 5
    a = CycloMatrix.from_rows(m, [[z(m, 1), 2, 0], [1, 0, z(m, 2)], [3, z(m, 4), 1]])
    rows = a.to_rows()

    def det3(g):
        return (
            g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
        )

    cp = charpoly(a)
    assert cp[0] == -det3(rows)
    assert cp[2] == -mat_trace(a)
    assert cp[3] == 1


@given(st.sampled_from([3, 4, 5, 7, 8, 12]), st.data())
@settings(max_examples=40, deadline=None)
def test_charpoly_of_diagonal_expands_product(m, data):
    n = data.draw(st.integers(1, 8))
    ks = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    scal = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    roots = [z(m, k) * s for k, s in zip(ks, scal)]
    assert charpoly(CycloMatrix.diagonal(m, roots)) == expand_linear_factors(m, roots)


def test_charpoly_bound():
    with pytest.raises(DimensionError):
        charpoly(CycloMatrix.identity(1, 65))


def test_nullspace_trivial_cases():
    assert solve_nullspace(CycloMatrix.identity(3, 4)) == []
    assert len(solve_nullspace(CycloMatrix.zeros(3, 4, 4))) == 4


def test_nullspace_vectors_are_in_kernel():
    m = 7
    a = CycloMatrix.from_rows(m, [[1, z(m, 1), z(m, 2)], [z(m, 3), 1, z(m, 5)], [1 + z(m, 3), z(m, 1) + 1, z(m, 2) + z(m, 5)]])
    basis = solve_nullspace(a)
    assert len(basis) == 1
    rows = a.to_rows()
    for vec in basis:
        for row in rows:
            acc = CycloElt.zero(m)
            for x, v in zip(row, vec):
                acc = acc + x * v
            assert acc == 0


def test_commutant_system_7_2_has_two_dimensional_kernel():
    rep = build_tame_rep(7, 2)
    assert len(solve_nullspace(commutant_system([rep.tau, rep.phi]))) == 2


@given(st.sampled_from([1, 3, 5, 8]), st.data())
@settings(max_examples=40, deadline=None)
def test_rank_nullity(m, data):
    r = data.draw(st.integers(1, 5))
    c = data.draw(st.integers(1, 5))
    phi = euler_phi(m)
    entries = {}
    for i in range(r):
        for j in range(c):
            if data.draw(st.booleans()):
                coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=phi, max_size=phi))
                entries[i, j] = CycloElt(m, coeffs)
    # append a dependent row to exercise rank deficiency
    extra = {(r, j): entries.get((0, j), 0) for j in range(c)}
    a = CycloMatrix(m, r + 1, c, {**entries, **extra})
    assert len(solve_nullspace(a)) + rank(a) == c


def test_nullspace_bound():
    with pytest.raises(DimensionError):
        solve_nullspace(CycloMatrix.zeros(1, 1, 10), max_cols=5)
