import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import diagram as dg
from artifact import families as fa
from artifact import fusion as fu
from artifact.coeff import ONE, S, X1, X2, beta
from artifact.word import C, CD, omega_word, word_to_diagram

W1 = fa.Wkx(2)
W0 = fa.Wkx(0)
Wh1 = fa.Wkx(1)
Wh2 = fa.Wkx(1, X2, "x2")
V = fa.Vacuum()


def unit(fz, lam, u, v):
    return fz.reduce({(lam, u, v): fz.one()})


# -- relation generators ------------------------------------------------------------

def test_generator_e_shape():
    (g,) = [g for g in fu.relation_generators(Wh1, Wh2, 1, 1) if g.label == "e"]
    u = v = ()
    expected = {(dg.omega(2), u, v): ONE}
    for u2, k in Wh1.act_word(omega_word(1), Wh1.unit(u)).items():
        for v2, k2 in Wh2.act_cdag(3, 0, Wh2.unit(v)).items():
            expected[(dg.c(4, 1), u2, v2)] = -k * k2
    assert g.expr == expected


def test_generator_ranges():
    gens = fu.relation_generators(Wh1, Wh2, 1, 1)
    assert not [g for g in gens if g.label in "ab"]
    assert sorted((g.label, g.j) for g in gens) == [("c", 1), ("c", 2), ("d", 1), ("d", 2), ("e", 0)]
    assert not [g for g in fu.relation_generators(V, W1, 0, 2) if g.label == "e"]


def test_generators_need_admissible_sizes():
    with pytest.raises(fu.FusionError):
        fu.relation_generators(W1, V, 1, 2)


# -- reduction -----------------------------------------------------------------------

def test_reduce_cdag0():
    fz = fu.Fusion(W1, V)
    u, v = (), ((1, 2),)
    got = unit(fz, dg.cdag(6, 0), u, v)
    want = fu._tensor(1, W1.act_cdag(4, 1, W1.unit(u)), V.act_cdag(4, 3, V.unit(v)))
    assert got == want


def test_reduce_omega_matches_generator_e():
    fz = fu.Fusion(Wh1, Wh2)
    for g in fu.relation_generators(Wh1, Wh2, 1, 1):
        if g.label == "e":
            assert fz.reduce(g.expr) == {}
    red = unit(fz, dg.omega(2), (), ())
    assert red and all(n == 1 for n, _, _ in red)


def test_reduce_identity():
    fz = fu.Fusion(W1, V)
    assert unit(fz, dg.identity(4), (), ((1, 2),)) == {(0, (), ((1, 2),)): ONE}


def test_reduce_beyond_na():
    # c_0 c_0^{N_a} with N_a <= N_b - 2 moves to c_0^{N_a+2}(c_0^dag u x Omega v)
    fz = fu.Fusion(W0, V)
    u, v = (1,), ((1, 2), (3, 4))
    got = fz.reduce_word((C(2, 0), C(4, 0), C(6, 0)), u, v)
    want = fu._tensor(4, W0.act_cdag(4, 0, W0.unit(u)), V.act_word(omega_word(4), V.unit(v)))
    assert got == want


def test_reduce_size_mismatch():
    fz = fu.Fusion(W1, V)
    with pytest.raises(fu.FusionError):
        fz.reduce({(dg.identity(6), (1,), ()): ONE})


def fused_words(max_len=3):
    @st.composite
    def draw(dr):
        pair = dr(st.sampled_from([(W1, V), (Wh1, Wh2), (V, V)]))
        fz = fu.Fusion(*pair)
        Na = dr(st.sampled_from([n for n in range(5) if pair[0].basis(n)]))
        Nb = dr(st.sampled_from([n for n in range(5) if pair[1].basis(n)]))
        u = dr(st.sampled_from(pair[0].basis(Na)))
        v = dr(st.sampled_from(pair[1].basis(Nb)))
        w = dr(st.sampled_from(fu.words_from(Na + Nb, max_len)))
        return fz, w, u, v
    return draw()


@settings(max_examples=200, deadline=None)
@given(fused_words())
def test_reduce_respects_bound_and_is_deterministic(args):
    fz, w, u, v = args
    out = fz.reduce_word(w, u, v)
    for st_ in out:
        n, uu, vv = st_
        assert 0 <= n <= min(fz.sizes(uu, vv))
    assert fz.reduce_word(w, u, v) == out


def test_act_fused_identity_and_omega():
    fz = fu.Fusion(W1, V)
    e = {(0, (), ((1, 2),)): ONE}
    assert fz.act_fused(dg.identity(4), e) == e
    assert fz.act_fused(dg.omega(4), e) == unit(fz, dg.omega(4), (), ((1, 2),))


def test_act_fused_F_is_endo_ab():
    fz = fu.Fusion(Wh1, Wh2)
    for st_ in fz.canonical_states(2, 2):
        e = {st_: ONE}
        assert fz.act_fused(dg.F(2), e) == fu.endo_F(fz, "ab", False, e)


# -- endomorphisms --------------------------------------------------------------------

def test_endo_commute():
    fz = fu.Fusion(Wh1, Wh2)
    span = fu.RelationSpan(fz, 6, 0, total=8)
    for st_ in fz.canonical_states(2, 2):
        e = {st_: ONE}
        ab = fu.endo_F(fz, "a", False, fu.endo_F(fz, "b", False, e))
        ba = fu.endo_F(fz, "b", False, fu.endo_F(fz, "a", False, e))
        assert ab == ba
        x = fu.endo_F(fz, "ab", True, fu.endo_F(fz, "ab", False, e))
        y = fu.endo_F(fz, "ab", False, fu.endo_F(fz, "ab", True, e))
        # the two orders can land on different spanning combinations
        assert x == y or span.contains(fu.vec_sub(x, y)) is True


def test_endo_a_character():
    fz = fu.Fusion(W1, V)
    for st_ in fz.canonical_states(4, 4):
        got = fu.endo_F(fz, "a", False, {st_: ONE})
        assert got == {st_: S ** 2 * X1 + S ** -2 * X1 ** -1}


def test_endo_unknown():
    with pytest.raises(fu.FusionError):
        fu.endo_F(fu.Fusion(W1, V), "c", False, {(0, (), ()): ONE})


# -- maps -----------------------------------------------------------------------------

def test_swap_formula():
    m = fu.swap_map(W1, V)
    lam = dg.c(4, 2)
    d, k = dg.compose(lam, dg.omega(4, 2))
    assert m.apply({(lam, (), ((1, 2),)): ONE}) == {(d, ((1, 2),), ()): k}


def test_swap_then_inverse_is_identity():
    fwd, back = fu.swap_map(W1, V), fu.swap_inverse(W1, V)
    for lam in (dg.identity(4), dg.c(4, 1), dg.omega(4)):
        e = {(lam, (), ((1, 2),)): ONE}
        out = back.apply(fwd.apply(e))
        assert list(out) == [(lam, (), ((1, 2),))] and out[(lam, (), ((1, 2),))] == ONE


def test_vacuum_psi_then_phi():
    for M in (W0, W1, V):
        phi, psi = fu.vacuum_phi(M), fu.vacuum_psi(M)
        fz = psi.target
        for N in range(5):
            if not M.admissible(N):
                continue
            for u in M.basis(N):
                x = fz.canonical_to_fused(psi.apply({(u,): ONE}))
                assert phi.apply(x) == {u: ONE}


def test_vacuum_psi_is_homomorphism():
    for M in (W0, W1):
        for N in (0, 2, 4):
            for u in M.basis(N):
                assert set(fu.check_vacuum_psi(M, u).values()) == {"pass"}


def test_assoc_phi_after_psi():
    T = fu.Triple(Wh1, Wh2, Wh1)
    phi, psi = fu.assoc_phi(Wh1, Wh2, Wh1), fu.assoc_psi(Wh1, Wh2, Wh1)
    for u in Wh1.basis(1):
        for v in Wh2.basis(1):
            for w in Wh1.basis(1):
                for lam in (dg.identity(3), dg.c(3, 1), dg.omega(3)):
                    key = (lam, u, v, w)
                    assert phi.apply(psi.apply({key: T.fz.one()})) == {key: T.fz.one()}


def test_assoc_psi_after_phi():
    # equal reduced forms, or a residue certified among the harvested relations
    Ma = Mb = Mc = V
    T = fu.Triple(Ma, Mb, Mc)
    phi, psi = fu.assoc_phi(Ma, Mb, Mc), fu.assoc_psi(Ma, Mb, Mc)
    span = fu.RelationSpan(T.fz, 6, 0, total=8)
    outcomes = []
    for u in V.basis(2):
        for v in V.basis(2):
            for w in V.basis(0) + V.basis(2):
                for n in range(3):
                    key = (dg.identity(4 - 2 * n + V.state_size(w)), (n, u, v), w)
                    lhs = T.fz.reduce({key: ONE})
                    rhs = T.fz.reduce(psi.apply(phi.apply({key: ONE})))
                    diff = fu.vec_sub(lhs, rhs)
                    outcomes.append(True if not diff else span.contains(diff))
    assert False not in outcomes
    assert outcomes.count(True) > len(outcomes) // 2


def test_witness_map_lookup():
    assert fu.witness_map("swap", W1, V).kind == "swap"
    assert fu.witness_map("assoc_phi", V, V, V).kind == "assoc_phi"
    with pytest.raises(fu.FusionError):
        fu.witness_map("twist", W1, V)


# -- rho and r -------------------------------------------------------------------------

def test_rho_r_examples():
    # the second factor is grown by one c_0^dag, so c_0 c_{N_a} acts at 4 + 4
    assert fu.rho_r([C(4, 0)], 4, 2) == ((C(6, 0), C(8, 4)), 1)
    assert fu.rho_r([], 3, 1) == ((), 0)
    assert fu.rho_r([CD(4, 0)], 2, 2) == (omega_word(6, -1), 1)


@pytest.mark.parametrize("word", [[C(4, 0)], [CD(4, 0)], [C(4, 1), CD(4, 0)], [CD(4, 2), C(4, 0)],
                                  [C(4, 0), CD(4, 0)], [CD(6, 0), CD(4, 0)]])
def test_rho_pushes_first_factor_letters(word):
    # (lam u x v) = rho(lam) (u x (c_0^dag)^r v)
    fz = fu.Fusion(W0, V)
    Na = word[-1].n_in
    for u in W0.basis(Na):
        v = ((1, 2),)
        lhs = {(0, u2, v): k for u2, k in W0.act_word(word, W0.unit(u)).items()}
        rho, r = fu.rho_r(word, Na, 2)
        rhs = {}
        for v2, k in fu._cdag0_power(V, V.unit(v), r).items():
            for st_, c in fz.reduce_word(rho, u, v2).items():
                fu._add(rhs, st_, k * c)
        if fu.vec_sub(lhs, rhs):
            span = fu.RelationSpan(fz, 6, 0, total=8)
            assert span.contains(fu.vec_sub(lhs, rhs)) is not False


def test_rho_r_is_consistent_on_equivalent_words():
    # c_0 Omega and c_1 are equivalent; both must give the same reduction
    fz = fu.Fusion(W0, V)
    w1 = (C(4, 0),) + omega_word(4)
    w2 = (C(4, 1),)
    for u in W0.basis(4):
        for v in V.basis(2):
            outs = []
            for w in (w1, w2):
                rho, r = fu.rho_r(w, 4, 2)
                acc = {}
                for v2, k in fu._cdag0_power(V, V.unit(v), r).items():
                    for st_, c in fz.reduce_word(rho, u, v2).items():
                        fu._add(acc, st_, k * c)
                outs.append(acc)
            diff = fu.vec_sub(*outs)
            if diff:
                assert fu.RelationSpan(fz, 6, 0, total=8).contains(diff) is not False


def test_rho_r_size_error():
    with pytest.raises(fu.FusionError):
        fu.rho_r([C(4, 1)], 2, 2)


# -- triple reduction ------------------------------------------------------------------

def test_triple_identity_on_spanning_state():
    T = fu.Triple(Wh1, Wh2, Wh1)
    out = fu.triple_reduce({(dg.identity(3), (), (), ()): ONE}, Wh1, Wh2, Wh1)
    assert out == {(0, (0, (), ()), ()): T.fz.one()}


def test_triple_omega():
    # Omega (u x v x w) = c_{N_a+N_b} c_{N_a} (Omega u x c_0^dag v x c_0^dag w)
    Ma, Mb, Mc = Wh1, Wh2, Wh1
    T = fu.Triple(Ma, Mb, Mc)
    lhs = T.reduce({(dg.omega(3), (), (), ()): ONE})
    us = Ma.act_word(omega_word(1), Ma.unit(()))
    vs = Mb.act_cdag(3, 0, Mb.unit(()))
    ws = Mc.act_cdag(3, 0, Mc.unit(()))
    rhs = T.reduce_word((C(5, 2), C(7, 1)), us, vs, ws)
    diff = fu.vec_sub(lhs, rhs)
    assert not diff or fu.RelationSpan(T.fz, 5, 0, total=7).contains(diff) is not False


def test_triple_middle_cdag0():
    # (u x c_0^dag v x w) = c_0 (c_0^dag u x v x c_0^dag w)
    Ma, Mb, Mc = V, V, V
    T = fu.Triple(Ma, Mb, Mc)
    u = w = ()
    for v in V.basis(0):
        lhs = T.reduce_word((), {u: ONE}, V.act_cdag(2, 0, V.unit(v)), {w: ONE})
        rhs = T.reduce_word((C(4, 0),), V.act_cdag(2, 0, V.unit(u)), {v: ONE}, V.act_cdag(2, 0, V.unit(w)))
        diff = fu.vec_sub(lhs, rhs)
        assert not diff or fu.RelationSpan(T.fz, 6, 0, total=8).contains(diff) is not False


# -- verdicts ---------------------------------------------------------------------------

def test_identity_control_fails():
    m = fu.identity_control(W1, V)
    gens = fu.relation_generators(W1, V, 2, 2)
    assert {fu.check_annihilates(m, g).status for g in gens} == {"fail"}


def test_vacuum_phi_passes():
    phi = fu.vacuum_phi(W1)
    for Na in (2, 4):
        for Nb in (0, 2):
            for g in fu.relation_generators(W1, V, Na, Nb):
                assert fu.check_annihilates(phi, g).status == "pass"


def test_naive_swap_is_refuted():
    m = fu.naive_swap(W1, V)
    span = fu.RelationSpan(m.target, 6, 0, total=8)
    verdicts = [fu.check_annihilates(m, g, span) for Na in (2,) for Nb in (0, 2)
                for g in fu.relation_generators(W1, V, Na, Nb)]
    assert any(v.status == "inconclusive" and v.in_span is False for v in verdicts)


def test_swap_residues_are_relations():
    m = fu.swap_map(Wh1, Wh2)
    span = fu.RelationSpan(m.target, 6, 0, total=8)
    for g in fu.relation_generators(Wh1, Wh2, 1, 1):
        v = fu.check_annihilates(m, g, span)
        assert v.status == "pass" or v.in_span is not False


# -- harvest ----------------------------------------------------------------------------

def test_harvest_small_vacuum():
    rep = fu.harvest_and_rank(W1, V, 2, 4, seed=0, total=6, outer=4)
    assert rep.dim_estimate == 1 and rep.stable


def test_harvest_needs_room():
    with pytest.raises(fu.FusionError):
        fu.harvest_and_rank(W1, V, 8, 2)


def test_harvest_rejects_numeric():
    with pytest.raises(fu.FusionError):
        fu.harvest(fa.RSOS("A", 3, 1), V, 4)


def test_harvest_deterministic():
    a = fu.harvest_and_rank(Wh1, Wh2, 2, 4, seed=3, total=6, outer=4).to_json()
    b = fu.harvest_and_rank(Wh1, Wh2, 2, 4, seed=3, total=6, outer=4).to_json()
    assert a == b


def test_sample_points_avoid_units():
    for seed in range(20):
        for val in fu.sample_point(seed).values():
            assert val not in (0, 1, -1)


def test_fused_family_axioms():
    # a word and its diagram agree up to harvested relations
    P = fu.FusedFamily(Wh1, Wh2)
    span = fu.RelationSpan(P.fz, 6, 0, total=8)
    w = (C(4, 1), CD(4, 2))
    d, k = word_to_diagram(w)
    for st_ in P.basis(2, 2):
        u = P.unit(st_)
        diff = fu.vec_sub(P.act_word(w, u), {key: k * c for key, c in P.act_diagram(d, u).items()})
        assert not diff or span.contains(diff) is True


# -- compatibility ----------------------------------------------------------------------

def test_compatibility_bound_holds():
    rep = fu.compatibility_suite(Wh1, Wh2, max_len=2, max_size=1)
    assert rep.bound_violations == 0 and rep.diagram_pairs > 0


# -- two-hole diagrams ---------------------------------------------------------------------

def test_two_hole_identity_is_fixed():
    got = fu.two_hole_normal_form({(dg.identity(4), dg.identity(2), dg.identity(2)): ONE})
    assert got == {(0, dg.identity(2), dg.identity(2)): ONE}


def _outer(n_out, n_in):
    b = n_in if n_out >= n_in else n_out
    return dg.enumerate_basis(n_out, n_in, b, [0, 1] if b else [0])


@pytest.mark.parametrize("Na,Nb,Na2,Nb2", [(1, 1, 3, 1), (2, 2, 2, 2), (2, 1, 4, 1), (2, 2, 4, 2)])
def test_two_hole_c_moves_into_first_hole(Na, Nb, Na2, Nb2):
    for la in _outer(Na2, Na):
        for lb in _outer(Nb2, Nb):
            for j in range(1, Na2):
                lam = dg.identity(Na2 + Nb2 - 2)
                lhs = fu.two_hole_normal_form({(dg.c(Na2 + Nb2, j), la, lb): ONE})
                ca, k = dg.compose(dg.c(Na2, j), la)
                assert lhs == fu.two_hole_normal_form({(lam, ca, lb): k})


def test_two_hole_cdag_moves_into_second_hole():
    for la in _outer(2, 2):
        for lb in _outer(2, 0):
            for j in range(1, 4):
                lhs = fu.two_hole_normal_form({(dg.cdag(6, 2 + j), la, lb): ONE})
                cb, k = dg.compose(dg.cdag(4, j), lb)
                assert lhs == fu.two_hole_normal_form({(dg.identity(6), la, cb): k})


def test_two_hole_plugs_into_modules():
    # filling the holes with u and v commutes with the normal form
    Ma, Mb = Wh1, Wh2
    fz = fu.Fusion(Ma, Mb)
    lb = dg.identity(1)
    for lam in (dg.omega(4), dg.c(4, 0), dg.c(4, 3), dg.cdag(6, 0)):
        for la in _outer(3, 1):
            filled = {}
            for (n, a, b), k in fu.two_hole_normal_form({(lam, la, lb): ONE}).items():
                for ua, ka in Ma.act_diagram(a, Ma.unit(())).items():
                    for vb, kb in Mb.act_diagram(b, Mb.unit(())).items():
                        fu._add(filled, (n, ua, vb), k * ka * kb)
            direct = fz.reduce({(lam, u2, ()): k for u2, k in Ma.act_diagram(la, Ma.unit(())).items()})
            assert not fu.vec_sub(filled, direct)


def test_two_hole_errors():
    with pytest.raises(fu.FusionError):
        fu.two_hole_normal_form({(dg.identity(3), dg.identity(2), dg.identity(2)): ONE})
    with pytest.raises(fu.FusionError):
        fu.two_hole_normal_form({(dg.identity(4), dg.identity(2), dg.identity(2)): ONE,
                                 (dg.identity(4), dg.identity(3), dg.identity(1)): ONE})
