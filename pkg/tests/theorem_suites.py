"""Randomized theorem-instance suites, shared by the unit tests and the acceptance run.

Each suite returns a dict of counters; a suite raises AssertionError on the first
instance that contradicts the statement it exercises.  Results are cached so the
acceptance report and the unit tests pay for one run.
"""
from __future__ import annotations

import random
from functools import cache

import numpy as np

from zinleib import linalg as la
from zinleib.algebra import FinAlgebra, check_identity, coregular_rep
from zinleib.coalgebra import Coalgebra
from zinleib.frobenius import canonical_r_from_form, check_quasi_frobenius_zinbiel, pre_zinbiel_double
from zinleib import window
from zinleib.graded import (CompletedCoproduct, Deg, DegreeTensor, check_completed_identity,
                            completed_coalgebra_from_graded_form, completed_lie_cobracket,
                            converse_detector_algebra, converse_detector_bialgebra, induced_graded_lie,
                            lift_zybe)
from zinleib.tensor import Bialgebra, check_zinbiel_bialgebra, induced_lie_bialgebra
from zinleib.yang_baxter import (check_o_operator, coadjoint_family, coboundary_coproduct, cybe_defect,
                                 lift_lybe, lybe_defect, r_sharp, tau, zybe_defect)

from instances import SEED, load, random_rational_tensor, random_symmetric_form, triangular_sample


def _bump_symmetric(rng, r):
    n = r.shape[0]
    i, j = rng.randrange(n), rng.randrange(n)
    s = r.copy()
    s[i, j] += 1
    if i != j:
        s[j, i] += 1
    return s


def _bump_skew(rng, r):
    n = r.shape[0]
    i, j = rng.sample(range(n), 2)
    s = r.copy()
    s[i, j] += 1
    s[j, i] -= 1
    return s


@cache
def triangular_suite() -> dict:
    """Induced Lie bialgebras from triangular Leibniz bialgebras, with the lift, coboundary and rank claims."""
    A, kappa = load("zinbiel_quadratic_dim4"), load("form_kappa_dim4")
    rng = random.Random(SEED)
    pairs = [("corpus", load("leibniz_bialgebra_x_dim2"), load("r_lybe_x_dim2"))]
    for name, B, r in triangular_sample():
        pairs.append((name, Bialgebra(B, coboundary_coproduct(B, r, "Leibniz")), r))
    tally = {"instances": 0, "o_fail_leibniz": 0, "o_fail_lie": 0}
    for name, leib, r in pairs:
        B = leib.algebra
        # raises unless leib is a Leibniz bialgebra and the induced pair passes the cocycle check
        bi = induced_lie_bialgebra(leib, A, kappa)
        g = bi.algebra
        assert bi.kind == "LieBi", name
        rt = lift_lybe(A, kappa, B, r)
        assert la.is_zero(lybe_defect(B, r)) and la.equal(r, tau(r)), name
        assert la.is_zero(cybe_defect(g, rt)) and la.equal(rt, -tau(rt)), name
        assert la.equal(coboundary_coproduct(g, rt, "Lie").d, bi.coalgebra.d), name
        lhs = la.rank(la.normalize(r_sharp(rt) + r_sharp(tau(rt))))
        assert lhs == A.dim * la.rank(la.normalize(r_sharp(r) - r_sharp(tau(r)))), name
        rep, rho = coregular_rep(B, "Leibniz"), coadjoint_family(g)
        assert check_o_operator(B, r_sharp(r), rep, "Leibniz").passed, name
        assert check_o_operator(g, r_sharp(rt), rho, "Lie").passed, name
        # constructed failures: the O-operator verdict must track the YBE verdict
        s = _bump_symmetric(rng, r)
        ybe = la.is_zero(lybe_defect(B, s))
        assert check_o_operator(B, r_sharp(s), rep, "Leibniz").passed == ybe, name
        tally["o_fail_leibniz"] += not ybe
        st = _bump_skew(rng, rt)
        ybe = la.is_zero(cybe_defect(g, st))
        assert check_o_operator(g, r_sharp(st), rho, "Lie").passed == ybe, name
        tally["o_fail_lie"] += not ybe
        tally["instances"] += 1
    return tally


def _change_basis(alg: FinAlgebra, P: np.ndarray) -> FinAlgebra:
    """Structure constants in the basis whose i-th vector is column i of P."""
    Q = la.inverse(P)
    c = np.einsum("ai,bj,abw,kw->ijk", P, P, alg.c, Q)
    return FinAlgebra(la.normalize(c), "Unchecked")


def _invertible(rng, n) -> np.ndarray:
    while True:
        P = random_rational_tensor(rng, (n, n), 0.6, -2, 2)
        if la.rank(P) == n:
            return P


@cache
def converse_algebra_suite() -> dict:
    rng = random.Random(SEED + 1)
    bases = [load("zinbiel_dim2"), load("zinbiel_dim3"), FinAlgebra.zero(3)]
    tally = {"instances": 0, "zinbiel": 0, "perturbed_non_zinbiel": 0}
    while tally["instances"] < 50:
        base = rng.choice(bases)
        alg = _change_basis(base, _invertible(rng, base.dim))
        if tally["instances"] % 2:
            c = alg.c.copy()
            idx = tuple(rng.randrange(base.dim) for _ in range(3))
            c[idx] += rng.choice((-1, 1))
            alg = FinAlgebra(la.normalize(c), "Unchecked")
        truth = check_identity(alg, "Zinbiel").passed
        rep = converse_detector_algebra(alg)
        assert rep.data["agrees_with_zinbiel_check"] and rep.passed == truth
        tally["instances"] += 1
        tally["zinbiel"] += truth
        tally["perturbed_non_zinbiel"] += not truth
    return tally


def _batched_zinbiel_bialgebra(c: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Per candidate coproduct D[n], whether both compatibilities and the coidentity vanish (int64)."""
    e = np.einsum
    P = e("ijk,nabk->nijab", c, D)
    d1 = (P + P.transpose(0, 2, 1, 3, 4) - e("jby,nabi->nijay", c, D) - e("bjy,nabi->nijay", c, D)
          - e("iax,nabj->nijxb", c, D))
    S = D + D.transpose(0, 2, 1, 3)
    d2 = P + P.transpose(0, 1, 2, 4, 3) - e("bjy,nabi->nijay", c, D) - e("iax,nabj->nijxb", c, S)
    ok = ~np.any((d1 != 0) | (d2 != 0), axis=(1, 2, 3, 4))
    # the compatibilities are linear in D, so the quadratic coidentity only runs on survivors
    live = np.flatnonzero(ok)
    L = D[live]
    co = e("namk,nbcm->nabck", L, L) - e("nabm,nmck->nabck", L, L) - e("nbam,nmck->nabck", L, L)
    ok[live] = ~np.any(co != 0, axis=(1, 2, 3, 4))
    return ok


@cache
def bialgebra_suite() -> dict:
    A = load("zinbiel_dim2")
    rng = random.Random(SEED + 2)
    tally = {"random_pairs": 0, "random_passing": 0, "exhaustive": 0, "exhaustive_passing": 0}
    for t in range(50):
        d = random_rational_tensor(rng, (2, 2, 2), 0.3, -2, 2)
        if t % 3 == 0:
            d = la.zeros((2, 2, 2))
            d[1, 1, 0] = la.q(rng.randint(-2, 2))
        co = Coalgebra(d)
        rep = converse_detector_bialgebra(A, co)
        truth = check_zinbiel_bialgebra(Bialgebra(A, co)).passed
        assert rep.data["agrees_with_bialgebra_check"] and rep.passed == truth
        tally["random_pairs"] += 1
        tally["random_passing"] += truth
    # every coproduct with entries in -2..2: bialgebras are exactly D(e1) = k e2 (x) e2, D(e2) = 0
    c = np.array(A.c.tolist(), dtype=np.int64)
    grid = np.indices((5,) * 8).reshape(8, -1).T.reshape(-1, 2, 2, 2) - 2
    ok = _batched_zinbiel_bialgebra(c, grid)
    shape = np.zeros((2, 2, 2), dtype=bool)
    shape[1, 1, 0] = True
    claimed = ~np.any((grid != 0) & ~shape, axis=(1, 2, 3))
    assert np.array_equal(ok, claimed)
    # the integer screen agrees with the exact checker on every hit and on a sample of misses
    for idx in np.flatnonzero(ok):
        co = Coalgebra(la.array(grid[idx].tolist()))
        assert check_zinbiel_bialgebra(Bialgebra(A, co)).passed and converse_detector_bialgebra(A, co).passed
    for idx in rng.sample(list(np.flatnonzero(~ok)), 50):
        assert not check_zinbiel_bialgebra(Bialgebra(A, Coalgebra(la.array(grid[idx].tolist())))).passed
    tally["exhaustive"] = len(grid)
    tally["exhaustive_passing"] = int(ok.sum())
    return tally


@cache
def quasi_frobenius_suite() -> dict:
    rng = random.Random(SEED + 3)
    algebras = [load("zinbiel_dim2"), load("zinbiel_dim3"), load("zinbiel_quadratic_dim4"),
                pre_zinbiel_double(load("pre_zinbiel_dim2"))[0], FinAlgebra.zero(3, "Zinbiel")]
    tally = {"forms": 0, "passing": 0, "failing": 0}
    for t in range(60):
        A = algebras[t % len(algebras)]
        form = random_symmetric_form(rng, A.dim, -1, 1)
        qf = check_quasi_frobenius_zinbiel(A, form).passed
        assert qf == la.is_zero(zybe_defect(A, canonical_r_from_form(form)))
        tally["forms"] += 1
        tally["passing" if qf else "failing"] += 1
    return tally


def _bump_coproduct(cp: CompletedCoproduct, rng, skew: bool) -> CompletedCoproduct:
    n = cp.dim
    d = la.zeros((n, n, n))
    k, p, q = (rng.randrange(n) for _ in range(3))
    d[p, q, k] += rng.choice((-1, 1))
    if skew:
        d[q, p, k] -= d[p, q, k]
    extra = CompletedCoproduct.uniform(d, 0, cp.labels)
    return CompletedCoproduct(tuple(a + b for a, b in zip(cp.images, extra.images)), cp.labels)


def _bump_r(r: DegreeTensor, rng, symmetric: bool) -> DegreeTensor:
    n = r.dim
    p, q = rng.randrange(n), rng.randrange(n)
    extra = DegreeTensor.build(2, n, [(rng.choice((-1, 1)), (p, q), [Deg.parse("#k"), Deg.parse("-#k")])])
    return r + extra + (extra.swap() if symmetric else DegreeTensor.zero(2, n))


@cache
def graded_contexts() -> dict:
    A = load("zinbiel_dim2")
    B, omega = load("affine_v4"), load("form_v4_graded")
    theta = completed_coalgebra_from_graded_form(B, omega)
    delta = completed_lie_cobracket(load("zinbiel_bialgebra_dim2").coalgebra.with_kind("ZinbielCo"), theta)
    return {"theta": theta, "g": induced_graded_lie(A, B), "delta": delta,
            "rh": lift_zybe(A, load("r_ex_zybe"), B, omega)}


@cache
def window_suite(rounds: int = 6) -> dict:
    """Random one-term perturbations of the corpus completed structures, judged by both engines."""
    c = graded_contexts()
    rng = random.Random(SEED)
    makers = [
        ("LeibnizCo", lambda: {"coproduct": _bump_coproduct(c["theta"], rng, False)}),
        ("LieCo", lambda: {"coproduct": _bump_coproduct(c["delta"], rng, True)}),
        ("LieBi-cocycle", lambda: {"algebra": c["g"], "cobracket": _bump_coproduct(c["delta"], rng, True)}),
        ("CYBE", lambda: {"algebra": c["g"], "r": _bump_r(c["rh"], rng, False)}),
        ("Lie-invariance", lambda: {"algebra": c["g"], "r": _bump_r(c["rh"] + c["rh"].swap(), rng, True)}),
    ]
    by_kind = {kind: 0 for kind, _ in makers}
    for _ in range(rounds):
        for kind, make in makers:
            ctx = make()
            sym = check_completed_identity(kind, **ctx).passed
            assert window.verdict(kind, **ctx) == sym, kind
            by_kind[kind] += not sym
    return {"instances": rounds * len(makers), "failing": sum(by_kind.values()), "failing_by_kind": by_kind}
