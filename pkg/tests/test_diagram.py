import pytest
from hypothesis import given, settings

from artifact import diagram as dg
from artifact.coeff import ONE, beta
from artifact.word import check_relation_diagrammatic, relation_instances

from .strategies import chains, diagrams


# -- explicit form -------------------------------------------------------------------

def test_identity_is_radial():
    e = dg.canonical_to_explicit(dg.identity(5))
    assert len(e.strands) == 5
    assert all(cross == 0 and a[0] != b[0] for a, b, cross in e.strands)


def test_omega_has_one_crossing_strand():
    e = dg.canonical_to_explicit(dg.omega(4))
    assert len(e.strands) == 4
    assert sorted(cross for *_, cross in e.strands) == [0, 0, 0, 1]
    assert dg.compose(dg.omega(4), dg.omega_inv(4)) == (dg.identity(4), ONE)


def test_f_is_a_single_loop():
    e = dg.canonical_to_explicit(dg.f())
    assert e.strands == [] and [abs(x) for x in e.loops] == [1]
    assert dg.explicit_to_canonical(e) == (dg.f(), ONE)


def test_contractible_loop_gives_beta():
    e = dg.canonical_to_explicit(dg.identity(2))
    e.loops.append(0)
    assert dg.explicit_to_canonical(e) == (dg.identity(2), beta())


def test_winding_two_loop_rejected():
    e = dg.ExplicitForm(0, 0, [], [2])
    with pytest.raises(ValueError):
        dg.explicit_to_canonical(e)


def test_explicit_round_trip_exhaustive():
    for n in range(7):
        for m in range(n % 2, 7, 2):
            for b in range(n % 2, min(n, m) + 1, 2):
                for d in dg.enumerate_basis(n, m, b, range(-3, 4)):
                    assert dg.explicit_to_canonical(dg.canonical_to_explicit(d)) == (d, ONE)


# -- composition ----------------------------------------------------------------------

def test_compose_examples():
    assert dg.compose(dg.e(4, 1), dg.e(4, 1)) == (dg.e(4, 1), beta())
    assert dg.compose(dg.c(2, 1), dg.cdag(2, 0)) == (dg.f(), ONE)
    assert dg.compose(dg.c(4, 0), dg.omega(4))[0] == dg.c(4, 1)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        dg.compose(dg.identity(4), dg.identity(2))


def test_e_is_cdag_c():
    assert dg.compose(dg.cdag(4, 1), dg.c(4, 1)) == (dg.e(4, 1), ONE)


def test_generator_forms():
    assert dg.c(5, 2) == dg.AnnularDiagram(3, 5, 3, 0, (), (2,))
    assert dg.c(5, 0) == dg.AnnularDiagram(3, 5, 3, 0, (), (5,))
    assert dg.omega(3) == dg.AnnularDiagram(3, 3, 3, 1)
    assert dg.e(6, 3) == dg.AnnularDiagram(6, 6, 4, 0, (3,), (3,))
    with pytest.raises(ValueError):
        dg.c(4, 4)


def test_F0_is_f():
    assert dg.F(0) == {dg.f(): ONE}
    assert dg.Fbar(0) == {dg.f(): ONE}


def test_relations_exhaustive():
    bad = [r.label for N in range(2, 7) for r in relation_instances(N)
           if max(a.size for a in r.lhs + r.rhs) <= 8 and not check_relation_diagrammatic(r)]
    assert bad == []


@settings(max_examples=150, deadline=None)
@given(chains(3))
def test_associativity(ds):
    a, b, c = ds
    ab, k1 = dg.compose(a, b)
    lhs, k2 = dg.compose(ab, c)
    bc, k3 = dg.compose(b, c)
    rhs, k4 = dg.compose(a, bc)
    assert lhs == rhs and k1 * k2 == k3 * k4


@settings(max_examples=150, deadline=None)
@given(diagrams())
def test_omega_power_commutes(d):
    left = dg.omega(d.n_out, d.n_out) if d.n_out else dg.f(0)
    right = dg.omega(d.n_in, d.n_in) if d.n_in else dg.f(0)
    assert dg.compose(left, d) == dg.compose(d, right)


@pytest.mark.parametrize("N", range(2, 6))
def test_push_through(N):
    for barred in (False, True):
        for j in range(N):
            lhs = dg.combo_compose(dg.c(N, j), dg.F(N, barred))
            rhs = dg.combo_compose(dg.F(N - 2, barred), dg.c(N, j))
            assert dg.combo_equal(lhs, rhs)


# -- involutions ----------------------------------------------------------------------

def test_adjoint_examples():
    assert dg.adjoint(dg.omega(4)) == dg.omega_inv(4)
    assert dg.adjoint(dg.e(5, 2)) == dg.e(5, 2)
    assert dg.adjoint(dg.f()) == dg.f()


def test_sigma_examples():
    assert dg.sigma(dg.identity(4)) == 1
    assert dg.sigma(dg.c(4, 0)) == -1
    assert dg.sigma(dg.cdag(4, 0)) == -1
    assert dg.sigma(dg.c(4, 2)) == 1
    assert dg.sigma(dg.omega(4)) == -1


def test_reflect_examples():
    assert dg.reflect(dg.c(6, 2)) == dg.c(6, 4)
    assert dg.reflect(dg.c(6, 0)) == dg.c(6, 0)


@settings(max_examples=150, deadline=None)
@given(chains(2))
def test_involution_laws(ds):
    a, b = ds
    ab, k = dg.compose(a, b)
    assert dg.compose(dg.adjoint(b), dg.adjoint(a)) == (dg.adjoint(ab), k)
    assert dg.compose(dg.reflect(a), dg.reflect(b)) == (dg.reflect(ab), k)
    assert dg.sigma(ab) == dg.sigma(a) * dg.sigma(b)
    assert dg.adjoint(dg.adjoint(a)) == a
    assert dg.reflect(dg.reflect(a)) == a


# -- bases -----------------------------------------------------------------------------

def test_enumerate_examples():
    assert len(dg.enumerate_basis(4, 0, 0, [0])) == 6
    assert dg.enumerate_basis(2, 2, 2, [0]) == [dg.identity(2)]
    assert set(dg.enumerate_basis(0, 0, 0, [0, 1, 2])) == {dg.f(0), dg.f(1), dg.f(2)}


def test_enumerate_counts():
    for n in range(7):
        for m in range(n % 2, 7, 2):
            for b in range(n % 2, min(n, m) + 1, 2):
                got = len(dg.enumerate_basis(n, m, b, range(-1, 2)))
                window = 3 if b else 2
                assert got == dg.basis_count(n, b) * dg.basis_count(m, b) * window


@pytest.mark.parametrize("N,Np,Npp", [(2, 2, 4), (4, 2, 2), (4, 4, 2), (3, 3, 5), (4, 2, 4)])
def test_products_reach_every_diagram(N, Np, Npp):
    # every diagram with at most N' bridges factors through size N'
    reached = set()
    left = [d for b in range(N % 2, min(N, Np) + 1, 2) for d in dg.enumerate_basis(N, Np, b, range(-2, 3))]
    right = [d for b in range(Np % 2, min(Np, Npp) + 1, 2) for d in dg.enumerate_basis(Np, Npp, b, range(-2, 3))]
    for a in left:
        for b in right:
            d, k = dg.compose(a, b)
            if k == ONE:
                reached.add(d)
    target = [d for b in range(N % 2, min(N, Npp, Np) + 1, 2)
              for d in dg.enumerate_basis(N, Npp, b, range(-1, 2))]
    assert all(d in reached for d in target)


def test_json_round_trip():
    for d in dg.enumerate_basis(4, 2, 2, range(-1, 2)):
        assert dg.AnnularDiagram.from_json(d.to_json()) == d


def test_invalid_diagrams():
    with pytest.raises(dg.InvalidDiagram):
        dg.AnnularDiagram(4, 2, 4, 0)
    with pytest.raises(dg.InvalidDiagram):
        dg.AnnularDiagram(4, 4, 2, 0, (3, 1), (1,))
    with pytest.raises(dg.InvalidDiagram):
        dg.AnnularDiagram(0, 0, 0, -1)
