"""Quasi-Frobenius Zinbiel and Lie algebras, pre-Zinbiel algebras and the A + A* double."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import (BilinForm, FinAlgebra, _einsum, check_form, check_identity, default_labels,
                      dual_family, semidirect_zinbiel)
from .errors import ContractViolation, DegenerateForm, InvalidInputKind, InvalidQuadraticStructure
from .graded import AffineAlgebra, Deg, GradedForm
from .report import Report
from .tensor import induced_lie


def _triples(labels, d) -> list:
    n = d.shape[0]
    return [(f"({labels[i]},{labels[j]},{labels[k]})", la.fmt(d[i, j, k]))
            for i in range(n) for j in range(n) for k in range(n) if d[i, j, k] != 0]


def _form_basics(rep: Report, form: BilinForm, symmetric: bool) -> None:
    if symmetric:
        rep.add("symmetric", form.is_symmetric())
    else:
        rep.add("skew", form.is_skew())
    kd = form.kernel_dim()
    rep.add("nondegenerate", kd == 0, note=f"kernel dimension {kd}")


def qfz_defect(A: FinAlgebra, form: BilinForm) -> np.ndarray:
    """w(a1 a2, a3) - w(a1 a3 + a3 a1, a2) + w(a3 a2, a1) on basis triples."""
    P = _einsum("ijw,wk->ijk", A.c, form.gram)
    return la.normalize(P - np.transpose(P, (0, 2, 1)) - np.transpose(P, (1, 2, 0)) + np.transpose(P, (2, 1, 0)))


def check_quasi_frobenius_zinbiel(A: FinAlgebra, form: BilinForm) -> Report:
    if form.dim != A.dim:
        raise ContractViolation("form and algebra dimensions differ")
    rep = Report("quasi-Frobenius Zinbiel algebra")
    _form_basics(rep, form, symmetric=True)
    bad = _triples(A.labels, qfz_defect(A, form))
    rep.add("quasi-Frobenius identity", not bad, bad)
    return rep


def canonical_r_from_form(form: BilinForm) -> np.ndarray:
    """r = sum_i e_i (x) f_i, with f_i the dual basis under the form."""
    n = form.dim
    return la.normalize(np.array(la.dual_basis(form.gram), dtype=object).reshape(n, n))


@dataclass(frozen=True, eq=False)
class PreZinbiel:
    """prec[i, j, k]: coefficient of e_k in e_i < e_j; succ likewise for e_i > e_j."""
    prec: np.ndarray
    succ: np.ndarray
    labels: tuple[str, ...] = ()
    verify: bool = True

    def __post_init__(self):
        p, s = la.normalize(self.prec), la.normalize(self.succ)
        if p.shape != s.shape or p.ndim != 3 or len(set(p.shape)) != 1:
            raise ContractViolation("both products must be n x n x n of the same size")
        object.__setattr__(self, "prec", p)
        object.__setattr__(self, "succ", s)
        object.__setattr__(self, "labels", tuple(self.labels) or default_labels(p.shape[0]))
        if self.verify:
            rep = check_pre_zinbiel(self)
            if not rep.passed:
                raise InvalidInputKind("not a pre-Zinbiel algebra:\n" + rep.render())

    @property
    def dim(self) -> int:
        return self.prec.shape[0]

    @classmethod
    def from_tables(cls, dim: int, prec: dict, succ: dict, labels=(), verify: bool = True) -> "PreZinbiel":
        def grid(table):
            t = la.zeros((dim, dim, dim))
            for (i, j), out in table.items():
                for k, v in out.items():
                    t[i - 1, j - 1, k - 1] = la.q(v)
            return t
        return cls(grid(prec), grid(succ), labels, verify)


def pre_zinbiel_defects(P: PreZinbiel) -> dict:
    """Defect tensors [x, y, z, :] of the three equalities defining a pre-Zinbiel algebra."""
    lt, gt = P.prec, P.succ
    dot = lt + gt

    return {
        "x>(y>z) = (x.y)>z + (y.x)>z": (
            _einsum("yzm,xmw->xyzw", gt, gt) - _einsum("xym,mzw->xyzw", dot, gt)
            - _einsum("yxm,mzw->xyzw", dot, gt)),
        "x>(z<y) = z<(x.y)": (
            _einsum("zym,xmw->xyzw", lt, gt) - _einsum("xym,zmw->xyzw", dot, lt)),
        "z<(x.y) = (x>z)<y + (z<x)<y": (
            _einsum("xym,zmw->xyzw", dot, lt) - _einsum("xzm,myw->xyzw", gt, lt)
            - _einsum("zxm,myw->xyzw", lt, lt)),
    }


def check_pre_zinbiel(P: PreZinbiel) -> Report:
    rep = Report("pre-Zinbiel identities")
    labels = P.labels
    for name, d in pre_zinbiel_defects(P).items():
        d = la.normalize(d)
        bad = []
        for x, y, z in np.ndindex(*d.shape[:3]):
            if any(v != 0 for v in d[x, y, z]):
                vec = " + ".join(f"{la.fmt(v)}*{labels[w]}" for w, v in enumerate(d[x, y, z]) if v != 0)
                bad.append((f"(x,y,z)=({labels[x]},{labels[y]},{labels[z]})", vec))
        rep.add(name, not bad, bad)
    return rep


def sub_adjacent(P: PreZinbiel) -> FinAlgebra:
    if not check_pre_zinbiel(P).passed:
        raise InvalidInputKind("not a pre-Zinbiel algebra")
    return FinAlgebra(P.prec + P.succ, "Zinbiel", P.labels)


def pre_zinbiel_double(P: PreZinbiel) -> tuple[FinAlgebra, BilinForm]:
    """A + A* with the representation (l_>* + r_<*, -r_<*) and w((x,a),(y,b)) = <a,y> + <b,x>."""
    A = sub_adjacent(P)
    n = A.dim
    succ_left = np.array([P.succ[i, :, :].T for i in range(n)], dtype=object).reshape(n, n, n)
    prec_right = np.array([P.prec[:, j, :].T for j in range(n)], dtype=object).reshape(n, n, n)
    l = la.normalize(dual_family(succ_left) + dual_family(prec_right))
    r = la.normalize(-dual_family(prec_right))
    D = semidirect_zinbiel(A, l, r, tuple(f"{s}*" for s in A.labels))
    gram = la.zeros((2 * n, 2 * n))
    for i in range(n):
        gram[i, n + i] = la.ONE
        gram[n + i, i] = la.ONE
    form = BilinForm(gram)
    rep = check_quasi_frobenius_zinbiel(D, form)
    if not rep.passed:
        raise AssertionError("double is not quasi-Frobenius:\n" + rep.render())
    return D, form


def cyclic_defect(g: FinAlgebra, form: BilinForm) -> np.ndarray:
    """B([g1,g2],g3) + B([g3,g1],g2) + B([g2,g3],g1) on basis triples."""
    P = _einsum("ijw,wk->ijk", g.c, form.gram)
    return la.normalize(P + np.transpose(P, (1, 2, 0)) + np.transpose(P, (2, 0, 1)))


def check_quasi_frobenius_lie(g, form) -> Report:
    """Finite (FinAlgebra, BilinForm) or graded (AffineAlgebra, GradedForm)."""
    graded = isinstance(g, AffineAlgebra)
    if graded != isinstance(form, GradedForm):
        raise ContractViolation("pass a graded algebra with a graded form, or neither")
    base_form = form.base_form if graded else form
    alg = g.base if graded else g
    if base_form.dim != alg.dim:
        raise ContractViolation("form and algebra dimensions differ")
    rep = Report("quasi-Frobenius graded Lie algebra" if graded else "quasi-Frobenius Lie algebra")
    rep.add("Lie identity", check_identity(alg, "Lie").passed)
    rep.add("skew", base_form.is_skew())
    kd = base_form.kernel_dim()
    note = f"kernel dimension {kd}" + (" in every block of degrees (i, -i-m)" if graded else "")
    rep.add("nondegenerate", kd == 0, note=note)
    if not graded:
        bad = _triples(alg.labels, cyclic_defect(alg, base_form))
    else:
        bad = _graded_cyclic(g, form)
    rep.add("cyclic cocycle identity", not bad, bad)
    return rep


def _graded_cyclic(g: AffineAlgebra, form: GradedForm) -> list:
    """Evaluate the cyclic sum with symbolic degrees i, j, l; every term carries a degree condition."""
    n = g.dim
    G = form.base_form.gram
    c = g.base.c
    deg = {s: Deg.of(s) for s in ("i", "j", "l")}
    # B([x t^p, y t^q], z t^r) is c[x, y, :] . G[:, z] under the condition p + q + r + m = 0
    P = _einsum("ijw,wk->ijk", c, G)
    bad = []
    for a, b, cc in np.ndindex(n, n, n):
        acc: dict = {}
        for (p, q, third), (dp, dq, dt) in (((a, b, cc), ("i", "j", "l")), ((cc, a, b), ("l", "i", "j")),
                                            ((b, cc, a), ("j", "l", "i"))):
            v = P[p, q, third]
            if v != 0:
                cond = deg[dp] + deg[dq] + deg[dt] + form.offset
                acc[cond] = acc.get(cond, la.ZERO) + v
        acc = {k: v for k, v in acc.items() if v != 0}
        if acc:
            val = " + ".join(f"{la.fmt(v)}*[{k} = 0]" for k, v in acc.items())
            bad.append((f"({g.labels[a]} t^i,{g.labels[b]} t^j,{g.labels[cc]} t^l)", val))
    return bad


def induced_qf_lie(A: FinAlgebra, varpi: BilinForm, B, omega):
    """Induced Lie algebra on A (x) B with B(a1 b1, a2 b2) = varpi(a1, a2) omega(b1, b2)."""
    qf = check_quasi_frobenius_zinbiel(A, varpi)
    if not qf.passed:
        raise InvalidQuadraticStructure("(A, varpi) is not quasi-Frobenius:\n" + qf.render())
    graded = isinstance(B, AffineAlgebra)
    if graded != isinstance(omega, GradedForm):
        raise ContractViolation("pass a graded Leibniz algebra with a graded form, or neither")
    base, kappa = (B.base, omega.base_form) if graded else (B, omega)
    kd = kappa.kernel_dim()
    if kd:
        raise DegenerateForm(kd, "Leibniz form")
    fr = check_form(base, kappa, "Leibniz")
    if not (fr.check("skew").passed and fr.check("invariant").passed):
        raise InvalidQuadraticStructure("(B, omega) is not quadratic:\n" + fr.render())
    lie = induced_lie(A, base)
    gram = BilinForm(la.kron(varpi.gram, kappa.gram))
    if graded:
        g, form = AffineAlgebra(lie), GradedForm(gram, omega.offset)
    else:
        g, form = lie, gram
    rep = check_quasi_frobenius_lie(g, form)
    if not rep.passed:
        raise AssertionError("induced structure is not quasi-Frobenius:\n" + rep.render())
    return g, form
