import random

import pytest

from witt_trace.endo import MatrixEndo, iterate_traces, twisted_iterate
from witt_trace.errors import NotAnEndomorphism, RingMismatchError
from witt_trace.hh0 import (
    AlgebraEndomorphism,
    FiniteGroup,
    FiniteRankAlgebra,
    GroupHom,
    GroupRing,
    augment,
    augment_matrix,
    compute_hh0,
    cyclic_group,
    dihedral_group,
    hs_trace,
    inner_automorphism,
    power_map,
    reidemeister_series,
    symmetric_group,
    trivial_group,
    twisted_conjugacy_classes,
)
from witt_trace.linalg import Matrix
from witt_trace.zeta import GradedEndo, zeta_exp, zeta_from_lefschetz


def orbit_count(G, phi):
    """Brute force over G x G: g ~ phi(k) g k^-1."""
    n = G.order
    reach = {g: {G.mul(G.mul(phi(k), g), G.inv(k)) for k in range(n)} for g in range(n)}
    # the relation is already an equivalence (group action), so orbits are the reach sets
    return len({frozenset(s) for s in reach.values()})


def random_element(rng, A, bound=2):
    return A.element([rng.randint(-bound, bound) for _ in range(A.rank)])


def random_matrix(rng, A, k):
    return Matrix(A, [[random_element(rng, A) for _ in range(k)] for _ in range(k)])


def elementary(A, k, i, j, x):
    rows = [[A(int(r == c)) for c in range(k)] for r in range(k)]
    rows[i][j] = rows[i][j] + x
    return Matrix(A, rows)


def random_invertible(rng, A, k):
    """A product of elementary matrices over ZZ[G] and its inverse."""
    U = Matrix.identity(A, k)
    Uinv = Matrix.identity(A, k)
    for _ in range(2 * k):
        i, j = rng.sample(range(k), 2)
        x = random_element(rng, A, 1)
        U = elementary(A, k, i, j, x) @ U
        Uinv = Uinv @ elementary(A, k, i, j, -x)
    return U, Uinv


# -- groups ------------------------------------------------------------------------

def test_group_constructors():
    assert [G.order for G in (trivial_group(), cyclic_group(5), symmetric_group(3), dihedral_group(4))] == [1, 5, 6, 8]
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])
    G = symmetric_group(3)
    assert FiniteGroup.from_json(G.to_json()).table == G.table


def test_group_hom_checks():
    C3 = cyclic_group(3)
    with pytest.raises(NotAnEndomorphism):
        GroupHom(C3, [0, 2, 2])
    phi = power_map(C3, 2)
    assert phi.power(2).is_identity()


# -- HH_0 ranks --------------------------------------------------------------------

@pytest.mark.parametrize("name,G,rank", [
    ("trivial", trivial_group(), 1),
    ("C2", cyclic_group(2), 2),
    ("C3", cyclic_group(3), 3),
    ("S3", symmetric_group(3), 3),
    ("D4", dihedral_group(4), 5),
])
def test_untwisted_ranks(name, G, rank):
    H = compute_hh0(GroupRing(G))
    assert H.rank == rank == orbit_count(G, GroupHom.identity(G))
    assert H.torsion == ()


def twists_of(G):
    out = [GroupHom.identity(G), GroupHom(G, [G.identity] * G.order)]
    out += [inner_automorphism(G, h) for h in range(G.order)]
    for k in range(2, G.order + 1):
        try:
            out.append(power_map(G, k))
        except NotAnEndomorphism:
            pass
    return out


@pytest.mark.parametrize("G", [cyclic_group(4), cyclic_group(6), symmetric_group(3), dihedral_group(4)],
                         ids=["C4", "C6", "S3", "D4"])
def test_twisted_ranks_match_orbit_counts(G):
    A = GroupRing(G)
    for phi in twists_of(G):
        H = compute_hh0(A, phi)
        assert H.rank == orbit_count(G, phi)
        assert H.torsion == ()
        classes = twisted_conjugacy_classes(G, phi)
        assert [G.labels[c[0]] for c in classes] == list(H.basis_labels)
        assert all(c == sorted(c) for c in classes)


def test_trivial_group_any_twist():
    A = GroupRing(trivial_group())
    assert compute_hh0(A, GroupHom(A.group, [0])).summary() == "Z^1"


# -- general algebras ------------------------------------------------------------

def dual_numbers():
    # ZZ[x]/(x^2), basis 1, x
    c = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return FiniteRankAlgebra(c, [1, 0], ["1", "x"])


def gaussian_integers():
    c = [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]]
    return FiniteRankAlgebra(c, [1, 0], ["1", "i"])


def test_untwisted_commutative_algebra():
    A = dual_numbers()
    H = compute_hh0(A)
    assert (H.rank, H.torsion) == (2, ())


def test_twisted_algebra_with_torsion():
    A = dual_numbers()
    neg = AlgebraEndomorphism(A, [[1, 0], [0, -1]])
    H = compute_hh0(A, neg)
    assert (H.rank, H.torsion) == (1, (2,))
    x = A([0, 1])
    assert H.classify(x) + H.classify(x) == H.zero()
    assert H.classify(x) != H.zero()

    B = gaussian_integers()
    conj = AlgebraEndomorphism(B, [[1, 0], [0, -1]])
    H = compute_hh0(B, conj)
    assert (H.rank, H.torsion) == (0, (2, 2))


def test_bad_algebras_and_twists():
    with pytest.raises(ValueError):
        FiniteRankAlgebra([[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [0, 1])
    with pytest.raises(NotAnEndomorphism):
        AlgebraEndomorphism(dual_numbers(), [[1, 0], [1, 1]])


# -- traces ------------------------------------------------------------------------

def test_hs_trace_examples():
    Z = GroupRing(trivial_group())
    H = compute_hh0(Z)
    assert hs_trace(Matrix(Z, [[Z(2)]]), H).free == (2,)

    C2 = cyclic_group(2)
    A = GroupRing(C2)
    H = compute_hh0(A)
    s = A.element({1: 1})
    assert hs_trace(Matrix(A, [[s]]), H).coefficient("s") == 1
    assert hs_trace(Matrix(A, [[s]]), H).coefficient("1") == 0


def test_hs_trace_twist_mismatch():
    G = cyclic_group(3)
    A = GroupRing(G)
    H = compute_hh0(A)
    f = MatrixEndo(Matrix(A, [[A(1)]]), power_map(G, 2))
    with pytest.raises(RingMismatchError):
        hs_trace(f, H)


def test_hs_trace_additive_on_blocks():
    rng = random.Random(20)
    A = GroupRing(symmetric_group(3))
    H = compute_hh0(A)
    for _ in range(20):
        f, g = random_matrix(rng, A, 2), random_matrix(rng, A, 1)
        block = Matrix(A, [list(f.rows[0]) + [A(0)], list(f.rows[1]) + [A(0)], [A(0), A(0), g.rows[0][0]]])
        assert hs_trace(block, H) == hs_trace(f, H) + hs_trace(g, H)


@pytest.mark.parametrize("G", [cyclic_group(2), symmetric_group(3)], ids=["C2", "S3"])
def test_cyclicity(G):
    rng = random.Random(21)
    A = GroupRing(G)
    H = compute_hh0(A)
    for _ in range(30):
        k = rng.randint(1, 3)
        f, g = random_matrix(rng, A, k), random_matrix(rng, A, k)
        assert hs_trace(f @ g, H) == hs_trace(g @ f, H)


def test_twisted_similarity_invariance():
    rng = random.Random(22)
    G = symmetric_group(3)
    A = GroupRing(G)
    for phi in (GroupHom.identity(G), inner_automorphism(G, 3), GroupHom(G, [0, 1, 1, 0, 0, 1])):
        tw = AlgebraEndomorphism.from_group_hom(A, phi)
        H = compute_hh0(A, tw)
        for _ in range(10):
            k = rng.randint(2, 3)
            f = random_matrix(rng, A, k)
            U, Uinv = random_invertible(rng, A, k)
            assert U @ Uinv == Matrix.identity(A, k)
            conj = U.map(tw, A) @ f @ Uinv
            assert hs_trace(MatrixEndo(conj, tw), H) == hs_trace(MatrixEndo(f, tw), H)


def test_other_side_twisted_conjugation_is_not_invariant():
    # U f phi(U)^-1 does not preserve the twisted trace in general; phi is
    # conjugation by a 3-cycle (an involution would hide the difference)
    rng = random.Random(23)
    G = symmetric_group(3)
    A = GroupRing(G)
    tw = AlgebraEndomorphism.from_group_hom(A, inner_automorphism(G, G.labels.index("231")))
    H = compute_hh0(A, tw)
    found = False
    for _ in range(30):
        f = random_matrix(rng, A, 2)
        U, Uinv = random_invertible(rng, A, 2)
        other = U @ f @ Uinv.map(tw, A)
        if hs_trace(MatrixEndo(other, tw), H) != hs_trace(MatrixEndo(f, tw), H):
            found = True
            break
    assert found


# -- Reidemeister series ------------------------------------------------------------

def test_reidemeister_examples():
    Z = GroupRing(trivial_group())
    series = reidemeister_series(Matrix(Z, [[Z(2)]]), None, 6)
    assert [c.free[0] for c in series] == [2, 4, 8, 16, 32, 64]
    assert [augment(c) for c in series] == [2, 4, 8, 16, 32, 64]

    A = GroupRing(cyclic_group(2))
    s = A.element({1: 1})
    series = reidemeister_series(Matrix(A, [[s]]), None, 4)
    assert [str(c) for c in series] == ["[s]", "[1]", "[s]", "[1]"]

    zero = reidemeister_series(Matrix(A, [[A(0)]]), None, 3)
    assert all(c.is_zero() for c in zero)
    assert augment(compute_hh0(A).classify(A.element([2, 3]))) == 5


def test_twisted_iterate_two_steps():
    G = cyclic_group(3)
    A = GroupRing(G)
    phi = AlgebraEndomorphism.from_group_hom(A, power_map(G, 2))
    s = A.element({1: 1})
    f = MatrixEndo(Matrix(A, [[s, A(1)], [A(0), s]]), phi)
    # f^(phi, 2) = phi(f) @ f
    assert twisted_iterate(f, 2) == f.matrix.map(phi, A) @ f.matrix
    assert twisted_iterate(f, 3) == f.matrix.map(phi.power(2), A) @ f.matrix.map(phi, A) @ f.matrix


def test_reidemeister_uses_phi_power_targets():
    G = cyclic_group(3)
    A = GroupRing(G)
    phi = power_map(G, 2)
    f = Matrix(A, [[A.element({1: 1})]])
    series = reidemeister_series(f, phi, 4)
    # phi is an involution: odd powers twist (one class), even powers do not (three classes)
    assert [c.parent.rank for c in series] == [1, 3, 1, 3]


@pytest.mark.parametrize("G,phi", [
    (cyclic_group(3), "inverse"),
    (symmetric_group(3), "inner"),
    (dihedral_group(4), "identity"),
])
def test_augmentation_gives_lefschetz_numbers(G, phi):
    rng = random.Random(24)
    A = GroupRing(G)
    hom = {"inverse": lambda: power_map(G, 2), "inner": lambda: inner_automorphism(G, 2),
           "identity": lambda: GroupHom.identity(G)}[phi]()
    for _ in range(5):
        f = random_matrix(rng, A, 2)
        series = reidemeister_series(f, hom, 8)
        eps = augment_matrix(f)
        lef = [augment(c) for c in series]
        assert lef == [v.value for v in iterate_traces(eps, 8)]
        assert zeta_from_lefschetz(lef, 8) == zeta_exp(GradedEndo((eps,)), 8)
