import random

import pytest

from zinleib import linalg as la
from zinleib.algebra import BilinForm, FinAlgebra
from zinleib.coalgebra import Coalgebra
from zinleib.errors import ContractViolation, DegenerateForm, InvalidInputKind
from zinleib.graded import (AffineAlgebra, Deg, DegreeTensor, GradedForm, affinize, check_completed_identity,
                            coboundary_cobracket, compare_cobrackets, completed_coalgebra_from_graded_form,
                            completed_lie_cobracket, converse_detector_algebra, converse_detector_bialgebra,
                            converse_detector_coalgebra, element, finite_specialization_rank,
                            graded_identity_report, induced_graded_lie, is_skew, lift_zybe, literal, v4,
                            v4_coproduct)

from instances import SEED, load


@pytest.fixture(scope="module")
def setting():
    A = load("zinbiel_dim2")
    B, omega = load("affine_v4"), load("form_v4_graded")
    theta = completed_coalgebra_from_graded_form(B, omega)
    g = induced_graded_lie(A, B)
    delta = completed_lie_cobracket(load("zinbiel_bialgebra_dim2").coalgebra.with_kind("ZinbielCo"), theta)
    rh = lift_zybe(A, load("r_ex_zybe"), B, omega)
    return A, B, omega, theta, g, delta, rh


def test_affinize_products():
    B = affinize(v4(), "Leibniz")
    L = B.labels
    got = B.mul(element(0, 2, 4), element(1, 3, 4))
    assert got == literal(1, L, [(1, ("v1",), (5,))])
    assert B.mul(element(2, "i", 4), element(0, "j", 4)).is_zero()
    zero = affinize(FinAlgebra.zero(3))
    assert zero.mul(element(0, "i", 3), element(1, "j", 3)).is_zero()
    with pytest.raises(InvalidInputKind):
        affinize(v4(), "Lie")


def test_graded_identity_reports():
    B = load("affine_v4")
    assert B.identity_report().passed
    assert not graded_identity_report(B, "Lie").passed


def test_degree_tensor_canonical_form():
    L = ("v1", "v2")
    x = literal(2, L, [(1, ("v1", "v2"), ("j", "i-j")), (3, ("v2", "v2"), ("1-j", "i"))], ("j",))
    assert (x - x).is_zero() and len(x - x) == 0
    renamed = literal(2, L, [(3, ("v2", "v2"), ("1-k", "i")), (1, ("v1", "v2"), ("k", "i-k"))], ("k",))
    assert x == renamed
    assert x.canonicalize() == x and x.canonicalize().canonicalize() == x.canonicalize()
    shifted = literal(2, L, [(1, ("v1", "v2"), ("j+1", "i-j-1"))], ("j",))
    assert shifted == literal(2, L, [(1, ("v1", "v2"), ("j", "i-j"))], ("j",))
    assert x.swap().swap() == x
    with pytest.raises(ContractViolation):
        literal(2, L, [(1, ("v1", "v2"), ("2*j", "i"))], ("j",))


def test_degree_tensor_random_cancellation():
    rng = random.Random(SEED)
    syms = ("i", "j", "i-j", "j+1", "-j", "3")
    for _ in range(30):
        terms = [(rng.randint(-2, 2), (f"v{rng.randint(1, 3)}", f"v{rng.randint(1, 3)}"),
                  (rng.choice(syms), rng.choice(syms))) for _ in range(rng.randint(1, 5))]
        x = literal(2, ("v1", "v2", "v3"), terms, ("j",))
        y = literal(2, ("v1", "v2", "v3"), list(reversed(terms)), ("j",))
        assert x == y and (x - y).is_zero() and (x + x) == x.scale(2)


def test_deg_parsing():
    assert str(Deg.parse("i - j + 2")) == str(Deg.var("i") - Deg.var("j") + 2)
    assert Deg.parse("2*i").evaluate({"i": 3}) == 6
    with pytest.raises(ContractViolation):
        literal(1, ("v1",), [(1, ("v9",), ("i",))])


def test_dual_completed_coproduct(setting):
    _, B, omega, theta, *_ = setting
    L = B.labels
    assert theta.apply(0, "i") == literal(2, L, [(1, ("v4", "v1"), ("j", "i-j"))], ("j",))
    assert theta.apply(3, "i").is_zero()
    assert check_completed_identity("LeibnizCo", coproduct=theta).passed
    with pytest.raises(DegenerateForm):
        completed_coalgebra_from_graded_form(B, GradedForm(BilinForm(la.zeros((4, 4)))))


def test_induced_graded_brackets(setting):
    _, B, _, _, g, *_ = setting
    L = g.labels
    e = lambda name, d: element(L.index(name), d, g.dim)
    assert g.mul(e("e1|v1", "i"), e("e1|v2", "j")) == literal(1, L, [(2, ("e2|v1",), ("i+j",))])
    assert g.mul(e("e1|v2", "i"), e("e1|v3", "j")) == literal(1, L, [(1, ("e2|v3",), ("i+j",))])
    flat = induced_graded_lie(FinAlgebra.zero(2, "Zinbiel"), B)
    assert all(flat.mul(element(a, "i", 8), element(b, "j", 8)).is_zero() for a in range(8) for b in range(8))


def test_completed_cobracket(setting):
    _, B, _, theta, g, delta, _ = setting
    L = g.labels
    want = literal(2, L, [(1, ("e2|v4", "e2|v1"), ("j", "i-j")), (-1, ("e2|v1", "e2|v4"), ("j", "i-j"))], ("j",))
    assert delta.apply(L.index("e1|v1"), "i") == want
    img = delta.apply(L.index("e1|v3"), "i")
    j = Deg.var("#j")
    assert img.coefficient((L.index("e2|v3"), L.index("e2|v4")), [j, Deg.var("i") - j]) == 2
    zero = completed_lie_cobracket(Coalgebra.zero(2, "ZinbielCo"), theta)
    assert all(zero.apply(k, "i").is_zero() for k in range(8))
    assert check_completed_identity("LieBi-cocycle", algebra=g, cobracket=zero).passed


def test_lift_and_completed_identities(setting):
    A, B, omega, _, g, delta, rh = setting
    assert is_skew(rh) and len(rh) == 8
    assert lift_zybe(A, la.zeros((2, 2)), B, omega).is_zero()
    with pytest.raises(DegenerateForm):
        lift_zybe(A, load("r_ex_zybe"), B, GradedForm(BilinForm(la.zeros((4, 4)))))
    assert check_completed_identity("CYBE", algebra=g, r=rh).passed
    assert compare_cobrackets(delta, coboundary_cobracket(g, rh)).passed
    with pytest.raises(ContractViolation):
        check_completed_identity("CYBE", algebra=g)


def test_perturbed_lift_fails_with_localized_terms(setting):
    *_, g, _, rh = setting
    L = g.labels
    bump = literal(2, L, [(1, ("e1|v1", "e1|v3"), ("k", "-k"))], ("k",))
    rep = check_completed_identity("CYBE", algebra=g, r=rh + bump)
    assert not rep.passed
    (loc, text), = rep.check("completed CYBE").defects
    terms = text.split(" + ")
    # each surviving family carries one of the bumped factors
    assert loc == "r" and len(terms) > 1 and all("e1|v1" in t or "e1|v3" in t for t in terms)


def test_symmetric_r_lifts_to_skew(setting):
    A, B, omega, *_ = setting
    rng = random.Random(SEED)
    for _ in range(10):
        a, b, c = (rng.randint(-2, 2) for _ in range(3))
        r = la.array([[a, b], [b, c]])
        assert is_skew(lift_zybe(A, r, B, omega))
    assert not is_skew(lift_zybe(A, la.array([[0, 1], [0, 0]]), B, omega))


def test_converse_detector_algebra():
    rep = converse_detector_algebra(load("zinbiel_dim2"))
    assert rep.passed and rep.data["agrees_with_zinbiel_check"]
    bad = FinAlgebra.from_table(2, {(1, 1): {1: 1}})
    rep = converse_detector_algebra(bad)
    assert not rep.passed and rep.data["agrees_with_zinbiel_check"]
    assert rep.check("v4 t^(3i) coefficient equals the Zinbiel defect").passed
    assert ("(e1,e1,e1)", "-1*e1") in rep.check("v4 t^(3i) coefficient vanishes").defects
    assert converse_detector_algebra(FinAlgebra.zero(2)).passed


def test_converse_detector_coalgebra():
    rep = converse_detector_coalgebra(load("zinbiel_coalgebra_dim4"))
    assert rep.passed and rep.data["agrees_with_zinbiel_co_check"]
    bad = Coalgebra.from_table(2, {1: {(1, 1): 1}})
    rep = converse_detector_coalgebra(bad)
    assert not rep.passed and rep.data["agrees_with_zinbiel_co_check"]
    assert rep.checks[0].passed


def test_converse_detector_bialgebra():
    A = load("zinbiel_dim2")
    one = Coalgebra.from_table(2, {1: {(2, 2): 1}})
    rep = converse_detector_bialgebra(A, one)
    assert rep.passed and rep.data["agrees_with_bialgebra_check"]
    bad = converse_detector_bialgebra(A, Coalgebra.from_table(2, {2: {(1, 1): 1}}))
    assert not bad.passed and bad.data["agrees_with_bialgebra_check"]
    assert all(c.passed for c in bad.checks if "equals" in c.name)
    assert converse_detector_bialgebra(A, Coalgebra.zero(2)).passed
    with pytest.raises(ContractViolation):
        converse_detector_bialgebra(A, Coalgebra.zero(3))


def test_v4_coproduct_is_bundled_dual():
    theta = v4_coproduct()
    assert all(theta.apply(k, "i") == completed_coalgebra_from_graded_form(
        load("affine_v4"), load("form_v4_graded")).apply(k, "i") for k in range(4))


def test_finite_specialization_rank():
    A = load("zinbiel_dim2")
    Bfin, kappa = load("leibniz_qf_x_dim4"), load("form_omega_x_dim4")
    for r in (la.array([[1, 0], [0, 1]]), la.array([[0, 1], [0, 0]]), la.array([[1, 2], [-1, 0]])):
        rh, rank = finite_specialization_rank(A, r, Bfin, kappa)
        assert rh.shape == (8, 8)
        # kappa is skew, so (r^ + tau r^)# = (r - tau r)# (x) f and the rank multiplies
        assert rank == la.rank(la.normalize(r - r.T)) * Bfin.dim
    with pytest.raises(DegenerateForm):
        finite_specialization_rank(A, la.identity(2), Bfin, BilinForm(la.zeros((4, 4))))
    assert isinstance(AffineAlgebra(Bfin).dim, int) and isinstance(DegreeTensor.zero(2, 3).is_zero(), bool)
