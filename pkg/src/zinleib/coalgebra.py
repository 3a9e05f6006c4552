"""Finite-dimensional coalgebras given by costructure constants.

``d[i, j, k]`` is the coefficient of e_i (x) e_j in the coproduct of e_k.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import BilinForm, FinAlgebra, _einsum, check_quadratic, default_labels
from .errors import ContractViolation, InvalidInputKind, InvalidQuadraticStructure
from .report import Report

COALGEBRA_KINDS = ("ZinbielCo", "LeibnizCo", "LieCo", "Unchecked")


def canonical_cokind(kind: str) -> str:
    for k in COALGEBRA_KINDS:
        if k.lower() == str(kind).lower():
            return k
    raise ContractViolation(f"unknown coalgebra kind {kind!r}")


def tensor2_str(m, labels) -> str:
    parts = []
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            if m[i, j] != 0:
                parts.append(f"{la.fmt(m[i, j])}*{labels[i]}(x){labels[j]}")
    return " + ".join(parts) if parts else "0"


def tensor3_str(t, labels) -> str:
    parts = []
    for idx in np.ndindex(t.shape):
        if t[idx] != 0:
            parts.append(f"{la.fmt(t[idx])}*" + "(x)".join(labels[i] for i in idx))
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class Coalgebra:
    d: np.ndarray
    kind: str = "Unchecked"
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        d = la.normalize(self.d)
        if d.ndim != 3 or not (d.shape[0] == d.shape[1] == d.shape[2]):
            raise ContractViolation(f"costructure tensor must be n x n x n, got {d.shape}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "kind", canonical_cokind(self.kind))
        labels = tuple(self.labels) or default_labels(d.shape[0])
        if len(labels) != d.shape[0]:
            raise ContractViolation("one basis label per basis element is required")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_verdicts", {})
        if self.kind != "Unchecked":
            rep = check_coidentity(self, self.kind)
            if not rep.passed:
                raise InvalidInputKind(f"coalgebra does not satisfy {self.kind}:\n{rep.render()}")
            self._verdicts[self.kind] = True

    @property
    def dim(self) -> int:
        return self.d.shape[0]

    @classmethod
    def from_table(cls, dim: int, table: dict, kind: str = "Unchecked", labels=()) -> "Coalgebra":
        """``{k: {(i, j): coeff}}`` with 1-based indices: coproduct of e_k."""
        d = la.zeros((dim, dim, dim))
        for k, terms in table.items():
            for (i, j), v in terms.items():
                d[i - 1, j - 1, k - 1] = la.q(v)
        return cls(d, kind, labels)

    @classmethod
    def from_images(cls, images, kind: str = "Unchecked", labels=()) -> "Coalgebra":
        """From a list of n x n matrices, the coproduct of each basis element."""
        imgs = [la.normalize(m) for m in images]
        n = len(imgs)
        d = la.zeros((n, n, n))
        for k, m in enumerate(imgs):
            d[:, :, k] = m
        return cls(d, kind, labels)

    @classmethod
    def zero(cls, dim: int, kind: str = "Unchecked", labels=()) -> "Coalgebra":
        return cls(la.zeros((dim, dim, dim)), kind, labels)

    def with_kind(self, kind: str) -> "Coalgebra":
        return Coalgebra(self.d, kind, self.labels)

    def image(self, k: int) -> np.ndarray:
        """Coproduct of e_k as an n x n coefficient grid."""
        return la.normalize(self.d[:, :, k])

    def apply(self, x) -> np.ndarray:
        return la.normalize(np.tensordot(self.d, np.asarray(x, dtype=object), axes=([2], [0])))

    def show(self, k: int) -> str:
        return tensor2_str(self.image(k), self.labels)


def coidentity_defect(co: Coalgebra, kind: str) -> np.ndarray:
    """Defect [a, b, c, k] of the coassociativity-type identity on e_k."""
    d = co.d
    kind = canonical_cokind(kind)
    first, second = "abm,mck->abck", "amk,bcm->abck"  # (D (x) id) D and (id (x) D) D
    if kind == "ZinbielCo":
        return la.contract_sum((1, second, d, d), (-1, first, d, d), (-1, "bam,mck->abck", d, d))
    if kind in ("LeibnizCo", "LieCo"):
        return la.contract_sum((1, second, d, d), (-1, first, d, d), (-1, "bmk,acm->abck", d, d))
    raise ContractViolation(f"no coidentity for kind {kind!r}")


def check_coidentity(co: Coalgebra, kind: str) -> Report:
    kind = canonical_cokind(kind)
    rep = Report(f"{kind} coidentity")
    if kind == "Unchecked":
        rep.add("no identity", True)
        return rep
    if kind == "LieCo":
        bad = []
        for k in range(co.dim):
            s = co.d[:, :, k] + co.d[:, :, k].T
            if not la.is_zero(s):
                bad.append((co.labels[k], tensor2_str(s, co.labels)))
        rep.add("skew: delta = -tau delta", not bad, bad)
    defect = coidentity_defect(co, kind)
    hit = np.any(defect != 0, axis=(0, 1, 2)) if co.dim else []
    bad = [(co.labels[k], tensor3_str(defect[:, :, :, k], co.labels)) for k in range(co.dim) if hit[k]]
    rep.add("coassociativity-type identity" if kind != "LieCo" else "co-Jacobi identity", not bad, bad)
    return rep


def co_satisfies(co: Coalgebra, kind: str) -> bool:
    kind = canonical_cokind(kind)
    if kind not in co._verdicts:
        co._verdicts[kind] = check_coidentity(co, kind).passed
    return co._verdicts[kind]


def dualize_coproduct(co: Coalgebra) -> FinAlgebra:
    """Algebra on the dual space with <xi.eta, x> = <xi (x) eta, D(x)>."""
    return FinAlgebra(co.d, "Unchecked", tuple(f"{s}*" for s in co.labels))


def dualize_product(alg: FinAlgebra) -> Coalgebra:
    return Coalgebra(alg.c, "Unchecked", tuple(f"{s}*" for s in alg.labels))


ALGEBRA_OF = {"ZinbielCo": "Zinbiel", "LeibnizCo": "Leibniz", "LieCo": "Lie"}


def coproduct_from_form_closed(alg: FinAlgebra, form: BilinForm) -> np.ndarray:
    """D(a) = -sum_j (a.e_j) (x) f_j with form(f_j, e_i) = delta_ij."""
    f = np.array(la.dual_basis(form.gram), dtype=object).reshape(alg.dim, alg.dim)
    # D(e_k)[p, q] = -sum_j c[k, j, p] f[j, q]
    return la.normalize(-_einsum("kjp,jq->pqk", alg.c, f))


def solve_pairing_coproduct(c: np.ndarray, gram: np.ndarray, sign: int) -> np.ndarray:
    """Solve  form~(D(x1), x2 (x) x3) = sign * form(x1, x2 x3)  for D, one x1 at a time.

    form~ pairs two-fold tensors factorwise. The system matrix is the
    Kronecker square of the Gram matrix, so a nondegenerate form gives a
    unique solution.
    """
    n = c.shape[0]
    system = la.kron(gram, gram).T  # row (s,t), column (p,q): g[p,s] g[q,t]
    out = la.zeros((n, n, n))
    for k in range(n):
        rhs = la.normalize(sign * _einsum("u,stu->st", gram[k], c).reshape(n * n))
        x = la.solve(system, rhs)
        if x is None:
            raise InvalidQuadraticStructure("pairing equation has no solution")
        out[:, :, k] = x.reshape(n, n)
    return out


def coproduct_from_form_solve(alg: FinAlgebra, form: BilinForm) -> np.ndarray:
    """Direct solve of  form~(D(a1), a2 (x) a3) = form(a1, a2.a3)."""
    return solve_pairing_coproduct(alg.c, form.gram, +1)


def zinbiel_coalgebra_from_quadratic(alg: FinAlgebra, form: BilinForm) -> Coalgebra:
    rep = check_quadratic(alg, form, "Zinbiel")
    if not rep.passed or not check_quadratic_identity(alg):
        raise InvalidQuadraticStructure(rep.render())
    closed = coproduct_from_form_closed(alg, form)
    solved = coproduct_from_form_solve(alg, form)
    if not la.equal(closed, solved):
        raise AssertionError("closed-form and solved coproducts disagree")
    return Coalgebra(closed, "ZinbielCo", alg.labels)


def check_quadratic_identity(alg: FinAlgebra) -> bool:
    from .algebra import satisfies
    return satisfies(alg, "Zinbiel")
