import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import diagram as dg
from artifact import families as fa
from artifact import transform as tr
from artifact.coeff import ONE, Scalar

from .strategies import diagrams

RSOS_PARAMS = [dict(series="A", n=3, mu=1), dict(series="A", n=4, mu=2), dict(series="D", n=4, mu=1),
               dict(series="A", n=3, mu=1, K=(3, 2, 1))]


def test_minus_on_c0():
    base = fa.Wkx(2)
    m = tr.TransformedFamily.of(base, "minus")
    for st_ in base.basis(4):
        u = base.unit(st_)
        assert tr.act_transformed(m, dg.c(4, 0), u) == fa.vec_scale(base.act_diagram(dg.c(4, 0), u), -ONE)


def test_reflect_on_c():
    base = fa.Wkx(0)
    r = tr.TransformedFamily.of(base, "reflect")
    for st_ in base.basis(6):
        u = base.unit(st_)
        assert tr.act_transformed(r, dg.c(6, 2), u) == base.act_diagram(dg.c(6, 4), u)


def test_transform_involutions():
    base = fa.Vacuum()
    for tag in tr.TAGS:
        assert tr.TransformedFamily.of(tr.TransformedFamily.of(base, tag), tag) == base


def test_unknown_transform():
    with pytest.raises(fa.FamilyError):
        tr.TransformedFamily(fa.Vacuum(), "twist")


@st.composite
def dual_case(draw):
    fam = draw(st.sampled_from([fa.Wkx(2), fa.Vacuum(), fa.XXZ(0)]))
    n = draw(st.sampled_from([0, 2, 4]).filter(fam.admissible))
    mid = draw(st.sampled_from([2, 4]))
    last = draw(st.sampled_from([0, 2, 4]))
    lam = draw(diagrams(n, mid, max_wind=2))
    lam2 = draw(diagrams(mid, last, max_wind=2))
    return fam, draw(st.sampled_from(fam.basis(n))), lam, lam2


@settings(max_examples=80, deadline=None)
@given(dual_case())
def test_dual_right_action(case):
    fam, st_, lam, lam2 = case
    dual = tr.TransformedFamily.of(fam, "dual")
    u = fam.unit(st_)
    lhs = dual.act_right(dual.act_right(u, lam), lam2)
    d, k = dg.compose(lam, lam2)
    assert fa.vec_equal(lhs, fa.vec_scale(dual.act_right(u, d), k))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([fa.Wkx(1), fa.Vacuum(), fa.XXZ(0)]), st.data())
def test_minus_composition_law(fam, data):
    m = tr.TransformedFamily.of(fam, "minus")
    n = data.draw(st.sampled_from([k for k in range(5) if fam.admissible(k)]))
    mid = data.draw(st.sampled_from([k for k in range(5) if (k - n) % 2 == 0]))
    top = data.draw(st.sampled_from([k for k in range(5) if (k - n) % 2 == 0]))
    lam = data.draw(diagrams(mid, n, max_wind=2))
    lam2 = data.draw(diagrams(top, mid, max_wind=2))
    u = fam.unit(data.draw(st.sampled_from(fam.basis(n))))
    d, k = dg.compose(lam2, lam)
    assert fa.vec_equal(m.act_diagram(lam2, m.act_diagram(lam, u)), fa.vec_scale(m.act_diagram(d, u), k))


@pytest.mark.parametrize("kind,params", [
    ("Wk_minus", dict(k2=0)), ("Wk_minus", dict(k2=2)), ("Wk_reflect", dict(k2=1)),
    ("Wkx_minus", dict(k2=0)), ("Wkx_minus", dict(k2=2)), ("Wkx_reflect", dict(k2=2)),
    ("Wkx_reflect", dict(k2=1)), ("V_reflect", {}), ("XXZ_minus", dict(m2=0)),
    ("XXZ_reflect", dict(m2=0)), ("XXZ_reflect", dict(m2=1)), ("XXZ_reflect_flip", dict(m2=2)),
] + [("RSOS_minus", p) for p in RSOS_PARAMS] + [("RSOS_reflect", p) for p in RSOS_PARAMS])
def test_witnesses_intertwine(kind, params):
    rep = tr.verify_intertwiner(tr.iso_witness(kind, **params), 5)
    assert rep.ok, rep.first_failure
    assert rep.checked > 0


def test_identity_map_passes():
    fam = fa.Wkx(2)
    w = tr.Witness("id", fam, fam, lambda N, st_: {st_: ONE})
    assert tr.verify_intertwiner(w, 5).ok


@pytest.mark.parametrize("kind", ["Wk_minus", "Wkx_minus", "V_reflect"])
def test_sign_flipped_control_fails(kind):
    rep = tr.verify_intertwiner(tr.sign_flipped(tr.iso_witness(kind, k2=0) if kind != "V_reflect"
                                                 else tr.iso_witness(kind)), 5)
    assert not rep.ok


def test_sign_flip_caught_on_c0():
    rep = tr.verify_intertwiner(tr.sign_flipped(tr.iso_witness("Wk_minus", k2=2)), 5)
    assert not rep.ok and "[" in rep.first_failure


def test_vacuum_minus_differs():
    for N, (a, b) in tr.vacuum_minus_control(6).items():
        assert abs(a) > 1e-6
        assert abs(a + b) < 1e-9 and abs(a - b) > 1e-6


def test_v_reflect_chord_map():
    w = tr.iso_witness("V_reflect")
    assert w.image(6, ((1, 2), (3, 6), (4, 5))) == {((1, 4), (2, 3), (5, 6)): ONE}


def test_unsupported_witness():
    with pytest.raises(fa.FamilyError):
        tr.iso_witness("Vx_minus")


def test_parity_mismatch_reported():
    w = tr.Witness("bad", fa.Wkx(1), fa.Wkx(2), lambda N, st_: {})
    assert tr.verify_intertwiner(w, 3).first_failure == "parity mismatch"
