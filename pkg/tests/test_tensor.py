import itertools
import random

import numpy as np
import pytest

from zinleib import linalg as la
from zinleib.algebra import BilinForm, FinAlgebra, check_form, check_identity
from zinleib.coalgebra import Coalgebra, dualize_coproduct
from zinleib.errors import ContractViolation, InconsistentBialgebra, InvalidInputKind
from zinleib.tensor import (Bialgebra, check_leibniz_bialgebra, check_lie_bialgebra, check_zinbiel_bialgebra,
                            double_summands, induced_lie, induced_lie_bialgebra, induced_lie_coalgebra,
                            leibniz_double_form, lie_double, lifted_manin_form, product_form,
                            verify_manin_triple)

from instances import SEED, leibniz_pool, load, random_rational_tensor


def tri_tensor():
    return load("zinbiel_quadratic_dim4"), load("form_kappa_dim4"), load("leibniz_bialgebra_x_dim2")


def induced_tri():
    A, kappa, leib = tri_tensor()
    return induced_lie_bialgebra(leib, A, kappa)


def test_induced_bracket_example():
    A, _, leib = tri_tensor()
    g = induced_lie(A, leib.algebra)
    L = g.labels
    got = g.c[L.index("e1|x2"), L.index("e4|x2")]
    want = la.zeros(8)
    want[L.index("e3|x1")], want[L.index("e2|x1")] = la.q(3), la.q(-3)
    assert la.equal(got, want)


def test_zero_factor_gives_abelian():
    A, _, leib = tri_tensor()
    assert la.is_zero(induced_lie(FinAlgebra.zero(3, "Zinbiel"), leib.algebra).c)
    assert la.is_zero(induced_lie(A, FinAlgebra.zero(2, "Leibniz")).c)


def test_induced_lie_requires_kinds():
    with pytest.raises(InvalidInputKind):
        induced_lie(load("leibniz_dim2"), load("leibniz_x_dim2"))


def test_induced_lie_is_lie_on_all_small_pairs():
    zin = [load(n) for n in ("zinbiel_dim2", "zinbiel_dim3", "zinbiel_quadratic_dim4")]
    for A, (_, B) in itertools.product(zin, leibniz_pool()):
        g = induced_lie(A, B)
        assert check_identity(g, "Lie").passed


def test_induced_coalgebra_example():
    A, kappa, leib = tri_tensor()
    from zinleib.coalgebra import zinbiel_coalgebra_from_quadratic
    delta = induced_lie_coalgebra(zinbiel_coalgebra_from_quadratic(A, kappa), leib.coalgebra.with_kind("LeibnizCo"))
    L = delta.labels
    img = delta.d[:, :, L.index("e1|x2")]
    want = la.zeros((8, 8))
    want[L.index("e2|x1"), L.index("e3|x1")] = la.q(3)
    want[L.index("e3|x1"), L.index("e2|x1")] = la.q(-3)
    assert la.equal(img, want)
    assert la.equal(delta.d, -np.transpose(delta.d, (1, 0, 2)))
    zero = induced_lie_coalgebra(Coalgebra.zero(4, "ZinbielCo"), leib.coalgebra.with_kind("LeibnizCo"))
    assert la.is_zero(zero.d)


def test_leibniz_bialgebra_examples():
    leib = load("leibniz_bialgebra_x_dim2")
    assert check_leibniz_bialgebra(leib).passed
    B = leib.algebra
    assert check_leibniz_bialgebra(Bialgebra(B, Coalgebra.zero(2))).passed
    bad = Coalgebra.from_table(2, {1: {(1, 1): 1}})
    assert not check_leibniz_bialgebra(Bialgebra(B, bad)).passed


def test_lie_bialgebra_examples():
    bi = induced_tri()
    assert check_lie_bialgebra(bi).passed
    assert check_lie_bialgebra(Bialgebra(bi.algebra, Coalgebra.zero(8))).passed
    L = bi.algebra.labels
    d = bi.coalgebra.d.copy()
    # a skew bump delta(e3|x1) += e1|x1 ^ e2|x1 keeps LieCo but breaks the cocycle
    p, q, k = L.index("e1|x1"), L.index("e2|x1"), L.index("e3|x1")
    d[p, q, k] += 1
    d[q, p, k] -= 1
    assert check_lie_bialgebra(Bialgebra(bi.algebra, Coalgebra(d))).check("Lie coidentity").passed
    assert not check_lie_bialgebra(Bialgebra(bi.algebra, Coalgebra(d))).passed


def test_zinbiel_bialgebra_examples():
    A = load("zinbiel_dim2")
    five = Coalgebra.from_table(2, {1: {(2, 2): 5}})
    assert check_zinbiel_bialgebra(Bialgebra(A, five)).passed
    assert check_zinbiel_bialgebra(Bialgebra(A, Coalgebra.zero(2))).passed
    bad = Coalgebra.from_table(2, {2: {(1, 1): 1}})
    assert not check_zinbiel_bialgebra(Bialgebra(A, bad)).passed
    with pytest.raises(InvalidInputKind):
        Bialgebra(A, bad, "ZinbielBi")


def test_induced_bialgebra_matches_bundled_tables_and_zero_case():
    bi = induced_tri()
    assert bi.kind == "LieBi"
    A, kappa, leib = tri_tensor()
    # zero coproducts on both sides: zero A (so D_A = 0) and zero theta
    Z = FinAlgebra.zero(2, "Zinbiel")
    omega = BilinForm.from_entries(2, {(1, 2): 1, (2, 1): -1})
    flat = induced_lie_bialgebra(Bialgebra(leib.algebra, Coalgebra.zero(2)), Z, omega)
    assert la.is_zero(flat.coalgebra.d) and check_lie_bialgebra(flat).passed


def test_product_form_examples():
    one = BilinForm(la.identity(1))
    assert product_form(one, one).gram[0, 0] == 1
    A, kappa, leib = tri_tensor()
    omega = BilinForm.from_entries(2, {(1, 2): 1, (2, 1): -1})
    prod = product_form(kappa, omega)
    assert prod.is_symmetric()
    assert prod.is_nondegenerate() and not prod.is_skew()
    # omega is not invariant for the x-algebra, so neither is the product
    rep = check_form(induced_lie(A, leib.algebra), prod, "Lie")
    assert not rep.check("invariant").passed


def test_product_form_invariant_for_quadratic_leibniz_partner():
    from zinleib.graded import v4, v4_form
    A, kappa = load("zinbiel_quadratic_dim4"), load("form_kappa_dim4")
    g = induced_lie(A, v4())
    rep = check_form(g, product_form(kappa, v4_form().base_form), "Lie")
    assert rep.passed is False  # not skew: the product of two skew forms is symmetric
    assert all(rep.check(n).passed for n in ("symmetric", "nondegenerate", "invariant"))


def test_manin_triple_of_the_lie_double():
    bi = induced_tri()
    D, form = lie_double(bi)
    assert D.dim == 16
    P1, P2 = double_summands(bi.dim)
    assert verify_manin_triple(D, form, P1, P2, "Lie").passed
    assert check_identity(dualize_coproduct(bi.coalgebra), "Lie").passed


def test_manin_failures():
    bi = induced_tri()
    D, form = lie_double(bi)
    P1, P2 = double_summands(bi.dim)
    everything = [la.unit(16, i) for i in range(16)]
    rep = verify_manin_triple(D, form, everything, everything, "Lie")
    assert not rep.check("direct sum").passed
    g = form.gram.copy()
    g[0, 1] = g[1, 0] = la.ONE
    rep = verify_manin_triple(D, BilinForm(g), P1, P2, "Lie")
    assert not rep.check("P1 is isotropic").passed


def test_abelian_double_is_hyperbolic():
    bi = Bialgebra(FinAlgebra.zero(2, "Lie"), Coalgebra.zero(2), "LieBi")
    D, form = lie_double(bi)
    assert la.is_zero(D.c)
    assert la.equal(form.gram, la.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]))


def _manin_verdict(bi: Bialgebra) -> bool:
    try:
        D, form = lie_double(bi)
    except InconsistentBialgebra:
        return False
    return verify_manin_triple(D, form, *double_summands(bi.dim), "Lie").passed


def test_manin_iff_lie_bialgebra_both_directions():
    rng = random.Random(SEED)
    lies = [FinAlgebra.from_table(2, {(1, 2): {2: 1}, (2, 1): {2: -1}}, "Lie"),
            FinAlgebra.from_table(3, {(1, 2): {3: 1}, (2, 1): {3: -1}}, "Lie"),
            FinAlgebra.from_table(3, {(1, 2): {2: 2}, (2, 1): {2: -2}, (1, 3): {3: -2}, (3, 1): {3: 2},
                                      (2, 3): {1: 1}, (3, 2): {1: -1}}, "Lie")]
    seen = {True: 0, False: 0}
    for _ in range(40):
        g = rng.choice(lies)
        n = g.dim
        d = random_rational_tensor(rng, (n, n, n), density=0.15, lo=-1, hi=1)
        d = la.normalize(d - np.transpose(d, (1, 0, 2)))
        bi = Bialgebra(g, Coalgebra(d))
        verdict = check_lie_bialgebra(bi).passed
        assert _manin_verdict(bi) == verdict
        seen[verdict] += 1
    bi = induced_tri()
    assert _manin_verdict(bi)
    seen[True] += 1
    assert seen[True] >= 3 and seen[False] >= 3


def test_lifted_manin_form_is_symmetric_and_nondegenerate():
    kappa = load("form_kappa_dim4")
    m = 2
    form = lifted_manin_form(kappa, m)
    assert form.dim == 16 and form.is_symmetric() and form.is_nondegenerate()
    # the same pairing with both cross terms added is skew instead
    n = kappa.dim
    g = la.zeros((16, 16))
    for a, ap, s in itertools.product(range(n), range(n), range(m)):
        x, y = a * m + s, n * m + ap * m + s
        g[x, y] += kappa.gram[a, ap]
        g[y, x] += kappa.gram[ap, a]
    assert BilinForm(g).is_skew() and not BilinForm(g).is_symmetric()
    assert leibniz_double_form(m).is_skew()
    with pytest.raises(ContractViolation):
        Bialgebra(load("zinbiel_dim2"), Coalgebra.zero(3))
