"""Constructions on tensor products A (x) B and bialgebra compatibility checks.

Basis of A (x) B is flattened left-major: index(a, b) = a * dim(B) + b.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import BilinForm, FinAlgebra, _einsum, check_form, check_identity, satisfies
from .coalgebra import (Coalgebra, co_satisfies, tensor2_str, zinbiel_coalgebra_from_quadratic)
from .errors import ContractViolation, InconsistentBialgebra, InvalidInputKind
from .report import Report

BIALGEBRA_KINDS = ("LeibnizBi", "LieBi", "ZinbielBi", "Unchecked")


def tensor_labels(left, right) -> tuple[str, ...]:
    return tuple(f"{a}|{b}" for a in left for b in right)


def flat(a: int, b: int, m: int) -> int:
    return a * m + b


def _require(alg: FinAlgebra, kind: str, role: str) -> None:
    if not satisfies(alg, kind):
        raise InvalidInputKind(f"{role} is not a {kind} algebra")


def induced_lie(A: FinAlgebra, B: FinAlgebra) -> FinAlgebra:
    """[a1 (x) b1, a2 (x) b2] = a1.a2 (x) b1 o b2 - a2.a1 (x) b2 o b1."""
    _require(A, "Zinbiel", "first factor")
    _require(B, "Leibniz", "second factor")
    n, m = A.dim, B.dim
    N = n * m
    if N == 0:
        return FinAlgebra(la.zeros((0, 0, 0)), "Lie", ())
    t = la.contract("ijk,pqs->ipjqks", A.c, B.c) - la.contract("jik,qps->ipjqks", A.c, B.c)
    return FinAlgebra(t.reshape(N, N, N), "Lie", tensor_labels(A.labels, B.labels))


def induced_lie_coalgebra(DA: Coalgebra, TB: Coalgebra) -> Coalgebra:
    """delta(a (x) b) = (id - tau)(D(a) . T(b)) with slotwise interleaving."""
    if not co_satisfies(DA, "ZinbielCo"):
        raise InvalidInputKind("first coalgebra is not a Zinbiel coalgebra")
    if not co_satisfies(TB, "LeibnizCo"):
        raise InvalidInputKind("second coalgebra is not a Leibniz coalgebra")
    n, m = DA.dim, TB.dim
    N = n * m
    if N == 0:
        return Coalgebra(la.zeros((0, 0, 0)), "LieCo", ())
    t = la.contract("ijk,pqs->ipjqks", DA.d, TB.d).reshape(N, N, N)
    delta = t - np.transpose(t, (1, 0, 2))
    return Coalgebra(delta, "LieCo", tensor_labels(DA.labels, TB.labels))


@dataclass(frozen=True, eq=False)
class Bialgebra:
    algebra: FinAlgebra
    coalgebra: Coalgebra
    kind: str = "Unchecked"

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim:
            raise ContractViolation("algebra and coalgebra dimensions differ")
        if self.kind not in BIALGEBRA_KINDS:
            raise ContractViolation(f"unknown bialgebra kind {self.kind!r}")
        if self.kind != "Unchecked":
            rep = CHECKS[self.kind](self)
            if not rep.passed:
                raise InvalidInputKind(f"not a {self.kind}:\n{rep.render()}")

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _pair_tensor_defects(labels, d: np.ndarray) -> list:
    if d.size == 0:
        return []
    return [(f"({labels[i]},{labels[j]})", tensor2_str(d[i, j], labels))
            for i, j in np.argwhere(np.any(d != 0, axis=(2, 3)))]


def leibniz_bialgebra_defects(c: np.ndarray, D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Both Leibniz bialgebra identities, indexed [i, j, :, :] for b1 = e_i, b2 = e_j."""
    S = D + np.transpose(D, (1, 0, 2))  # (id + tau) T(e_i) at [:, :, i]
    lhs = _einsum("ijk,abk->ijab", c, D)
    first = (_einsum("abi,bjy->ijay", S, c)
             - _einsum("jax,abi->ijxb", c, S) - _einsum("ajx,abi->ijxb", c, S))
    second = _einsum("iby,abj->ijay", c, D) + _einsum("iax,abj->ijxb", c, D)
    d1 = lhs - first - second
    d2 = _einsum("ajx,abi->ijbx", c, D) - _einsum("aix,abj->ijxb", c, D)
    return d1, d2


def check_leibniz_bialgebra(bi: Bialgebra) -> Report:
    rep = Report("Leibniz bialgebra")
    alg, co = bi.algebra, bi.coalgebra
    rep.add("Leibniz identity", satisfies(alg, "Leibniz"))
    rep.add("Leibniz coidentity", co_satisfies(co, "LeibnizCo"))
    d1, d2 = leibniz_bialgebra_defects(alg.c, co.d)
    bad = _pair_tensor_defects(alg.labels, d1)
    rep.add("T(b1 o b2) compatibility", not bad, bad)
    bad = _pair_tensor_defects(alg.labels, d2)
    rep.add("tau(r(b2) (x) id)T(b1) = (r(b1) (x) id)T(b2)", not bad, bad)
    return rep


def lie_cocycle_defect(c: np.ndarray, D: np.ndarray) -> np.ndarray:
    """delta([g_i,g_j]) - (ad g_i (x) 1 + 1 (x) ad g_i)delta(g_j) + (i <-> j), at [i, j]."""
    return la.contract_sum((1, "ijk,abk->ijab", c, D), (-1, "iax,abj->ijxb", c, D), (-1, "iby,abj->ijay", c, D),
                           (1, "jax,abi->ijxb", c, D), (1, "jby,abi->ijay", c, D))


def check_lie_bialgebra(bi: Bialgebra) -> Report:
    rep = Report("Lie bialgebra")
    alg, co = bi.algebra, bi.coalgebra
    rep.add("Lie identity", satisfies(alg, "Lie"))
    rep.add("Lie coidentity", co_satisfies(co, "LieCo"))
    bad = _pair_tensor_defects(alg.labels, lie_cocycle_defect(alg.c, co.d))
    rep.add("1-cocycle condition", not bad, bad)
    return rep


def zinbiel_bialgebra_defects(c: np.ndarray, D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Both Zinbiel bialgebra identities, indexed [i, j, :, :] for a1 = e_i, a2 = e_j."""
    P = _einsum("ijk,abk->ijab", c, D)  # D(a1.a2)
    d1 = (P + np.transpose(P, (1, 0, 2, 3))
          - _einsum("jby,abi->ijay", c, D) - _einsum("bjy,abi->ijay", c, D)
          - _einsum("iax,abj->ijxb", c, D))
    S = D + np.transpose(D, (1, 0, 2))
    d2 = (P + np.transpose(P, (0, 1, 3, 2))
          - _einsum("bjy,abi->ijay", c, D)
          - _einsum("iax,abj->ijxb", c, S))
    return d1, d2


def check_zinbiel_bialgebra(bi: Bialgebra) -> Report:
    rep = Report("Zinbiel bialgebra")
    alg, co = bi.algebra, bi.coalgebra
    rep.add("Zinbiel identity", satisfies(alg, "Zinbiel"))
    rep.add("Zinbiel coidentity", co_satisfies(co, "ZinbielCo"))
    d1, d2 = zinbiel_bialgebra_defects(alg.c, co.d)
    bad = _pair_tensor_defects(alg.labels, d1)
    rep.add("D(a1.a2) + D(a2.a1) compatibility", not bad, bad)
    bad = _pair_tensor_defects(alg.labels, d2)
    rep.add("D(a1.a2) + tau D(a1.a2) compatibility", not bad, bad)
    return rep


CHECKS = {
    "LeibnizBi": check_leibniz_bialgebra,
    "LieBi": check_lie_bialgebra,
    "ZinbielBi": check_zinbiel_bialgebra,
}


def induced_lie_bialgebra(leib: Bialgebra, A: FinAlgebra, kappa: BilinForm) -> Bialgebra:
    """Lie bialgebra on A (x) B from a Leibniz bialgebra B and a quadratic Zinbiel algebra A."""
    rep = check_leibniz_bialgebra(leib)
    if not rep.passed:
        raise InvalidInputKind("Leibniz bialgebra check failed:\n" + rep.render())
    DA = zinbiel_coalgebra_from_quadratic(A, kappa)
    g = induced_lie(A, leib.algebra)
    delta = induced_lie_coalgebra(DA, leib.coalgebra.with_kind("LeibnizCo"))
    out = Bialgebra(g, delta, "Unchecked")
    rep = check_lie_bialgebra(out)
    if not rep.passed:
        raise InconsistentBialgebra(rep.render())
    object.__setattr__(out, "kind", "LieBi")  # verified just above
    return out


def product_form(kappa: BilinForm, omega: BilinForm) -> BilinForm:
    """B(a1 (x) b1, a2 (x) b2) = kappa(a1, a2) omega(b1, b2)."""
    return BilinForm(la.kron(kappa.gram, omega.gram))


def _span_rank(vectors) -> int:
    vs = [np.asarray(v, dtype=object) for v in vectors]
    return la.rank(np.array(vs, dtype=object)) if vs else 0


def verify_manin_triple(C: FinAlgebra, form: BilinForm, P1, P2, kind: str) -> Report:
    """Direct sum, subalgebras, isotropy, form properties and the algebra identity."""
    rep = Report(f"Manin triple of {kind} algebras")
    n = C.dim
    P1 = [la.normalize(v) for v in P1]
    P2 = [la.normalize(v) for v in P2]
    r1, r2 = _span_rank(P1), _span_rank(P2)
    rep.add("direct sum", r1 + r2 == n and _span_rank(P1 + P2) == n,
            note=f"ranks {r1} + {r2}, ambient {n}")
    for name, P, r in (("P1", P1, r1), ("P2", P2, r2)):
        bad = []
        for i, u in enumerate(P):
            for j, v in enumerate(P):
                w = C.mul(u, v)
                if _span_rank(P + [w]) != r:
                    bad.append((f"({i + 1},{j + 1})", C.vec(w)))
        rep.add(f"{name} is a subalgebra", not bad, bad)
    for name, P in (("P1", P1), ("P2", P2)):
        bad = [(f"({i + 1},{j + 1})", la.fmt(form(u, v)))
               for i, u in enumerate(P) for j, v in enumerate(P) if form(u, v) != 0]
        rep.add(f"{name} is isotropic", not bad, bad)
    f = check_form(C, form, kind)
    rep.add("form nondegenerate", f.check("nondegenerate").passed, note=f.check("nondegenerate").note)
    inv = f.check("invariant")
    rep.add("form invariant", inv.passed, inv.defects)
    if kind == "Lie":
        rep.add("form symmetric", f.check("symmetric").passed)
    else:
        rep.add("form skew-symmetric", f.check("skew").passed)
    ident = check_identity(C, kind)
    rep.add(f"{kind} identity", ident.passed, [d for c in ident.checks for d in c.defects])
    return rep


def lie_double(bi: Bialgebra) -> tuple[FinAlgebra, BilinForm]:
    """The Lie algebra g + g* with the coadjoint actions, and the pairing form.

    [e_i, xi_a] = -sum_j c[i, j, a] xi_j + sum_b d[a, b, i] e_b
    """
    c, d = bi.algebra.c, bi.coalgebra.d
    n = bi.dim
    N = 2 * n
    t = la.zeros((N, N, N))
    t[:n, :n, :n] = c
    t[n:, n:, n:] = d
    for i in range(n):
        for a in range(n):
            v = la.zeros(N)
            v[n:] = -c[i, :, a]
            v[:n] = d[a, :, i]
            t[i, n + a] = v
            t[n + a, i] = -v
    labels = bi.algebra.labels + tuple(f"{s}*" for s in bi.algebra.labels)
    double = FinAlgebra(t, "Unchecked", labels)
    rep = check_identity(double, "Lie")
    if not rep.passed:
        raise InconsistentBialgebra("the double fails the Lie identity:\n" + rep.render())
    gram = la.zeros((N, N))
    for i in range(n):
        gram[i, n + i] = la.ONE
        gram[n + i, i] = la.ONE
    return double.with_kind("Lie"), BilinForm(gram)


def double_summands(n: int) -> tuple[list, list]:
    return ([la.unit(2 * n, i) for i in range(n)], [la.unit(2 * n, n + i) for i in range(n)])


def leibniz_double_form(m: int) -> BilinForm:
    """omega_d((b1, eta1), (b2, eta2)) = <eta1, b2> - <eta2, b1> on B + B*."""
    gram = la.zeros((2 * m, 2 * m))
    for i in range(m):
        gram[m + i, i] = la.ONE
        gram[i, m + i] = -la.ONE
    return BilinForm(gram)


def lifted_manin_form(kappa: BilinForm, m: int) -> BilinForm:
    """kappa (x) omega_d, reordered from A (x) (B + B*) to (A (x) B) + (A (x) B*)."""
    n = kappa.dim
    flat_gram = la.kron(kappa.gram, leibniz_double_form(m).gram)
    # A (x) (B + B*) index a*2m + s; target index: s < m -> a*m + s, else n*m + a*m + (s - m)
    order = [a * 2 * m + s for a in range(n) for s in range(m)] + \
            [a * 2 * m + m + s for a in range(n) for s in range(m)]
    return BilinForm(la.normalize(flat_gram[np.ix_(order, order)]))
