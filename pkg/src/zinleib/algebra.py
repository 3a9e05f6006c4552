"""Finite-dimensional algebras given by structure constants.

``c[i, j, k]`` is the coefficient of e_k in e_i * e_j. A linear map family
is an array ``maps`` of shape (algebra dim, d, d) where ``maps[i]`` is the
matrix (columns = images of carrier basis vectors) attached to e_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import ContractViolation, InvalidInputKind, InvalidRepresentation
from .report import Report

ALGEBRA_KINDS = ("Zinbiel", "Leibniz", "Lie", "Associative", "Unchecked")


def canonical_kind(kind: str) -> str:
    for k in ALGEBRA_KINDS:
        if k.lower() == str(kind).lower():
            return k
    raise ContractViolation(f"unknown algebra kind {kind!r}")


def default_labels(n: int, stem: str = "e") -> tuple[str, ...]:
    return tuple(f"{stem}{i + 1}" for i in range(n))


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    c: np.ndarray
    kind: str = "Unchecked"
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        c = la.normalize(self.c) if np.asarray(self.c).size else la.zeros(np.asarray(self.c).shape)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ContractViolation(f"structure tensor must be n x n x n, got {c.shape}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        labels = tuple(self.labels) or default_labels(c.shape[0])
        if len(labels) != c.shape[0]:
            raise ContractViolation("one basis label per basis element is required")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_verdicts", {})
        if self.kind != "Unchecked":
            rep = check_identity(self, self.kind)
            if not rep.passed:
                raise InvalidInputKind(f"algebra does not satisfy the {self.kind} identity:\n{rep.render()}")
            self._verdicts[self.kind] = True

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def from_table(cls, dim: int, table: dict, kind: str = "Unchecked", labels=()) -> "FinAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices (e1 is index 1)."""
        c = la.zeros((dim, dim, dim))
        for (i, j), out in table.items():
            for k, v in out.items():
                c[i - 1, j - 1, k - 1] = la.q(v)
        return cls(c, kind, labels)

    @classmethod
    def zero(cls, dim: int, kind: str = "Unchecked", labels=()) -> "FinAlgebra":
        return cls(la.zeros((dim, dim, dim)), kind, labels)

    def with_kind(self, kind: str) -> "FinAlgebra":
        return FinAlgebra(self.c, kind, self.labels)

    def unchecked(self) -> "FinAlgebra":
        return FinAlgebra(self.c, "Unchecked", self.labels)

    def mul(self, x, y) -> np.ndarray:
        return multiply(self, x, y)

    def left(self) -> np.ndarray:
        """Family of left multiplications: left()[i][k, j] = c[i, j, k]."""
        return la.normalize(np.transpose(self.c, (0, 2, 1)))

    def right(self) -> np.ndarray:
        """Family of right multiplications: right()[j][k, i] = c[i, j, k]."""
        return la.normalize(np.transpose(self.c, (1, 2, 0)))

    def vec(self, v) -> str:
        return la.vec_str(v, self.labels)


def multiply(alg: FinAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    if x.shape != (alg.dim,) or y.shape != (alg.dim,):
        raise ContractViolation(f"multiply: vectors must have length {alg.dim}")
    if alg.dim == 0:
        return la.zeros(0)
    return la.contract("i,j,ijk->k", x, y, alg.c)


def family_at(maps: np.ndarray, x) -> np.ndarray:
    """Extend a linear map family to an arbitrary algebra element."""
    d = maps.shape[1]
    if maps.shape[0] == 0:
        return la.zeros((d, d))
    return la.normalize(np.tensordot(np.asarray(x, dtype=object), maps, axes=1))


def _einsum(spec: str, *ops) -> np.ndarray:
    return la.contract(spec, *ops)


def identity_defect(alg: FinAlgebra, kind: str) -> np.ndarray:
    """Defect tensor D[i, j, k, :] of the defining identity on (e_i, e_j, e_k)."""
    c = alg.c
    kind = canonical_kind(kind)
    if kind == "Zinbiel":
        # e_i(e_j e_k) - (e_i e_j)e_k - (e_j e_i)e_k
        return la.contract_sum((1, "jkm,iml->ijkl", c, c), (-1, "ijm,mkl->ijkl", c, c), (-1, "jim,mkl->ijkl", c, c))
    if kind == "Leibniz":
        # e_i(e_j e_k) - (e_i e_j)e_k - e_j(e_i e_k)
        return la.contract_sum((1, "jkm,iml->ijkl", c, c), (-1, "ijm,mkl->ijkl", c, c), (-1, "ikm,jml->ijkl", c, c))
    if kind == "Lie":
        # [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        return la.contract_sum((1, "ijm,mkl->ijkl", c, c), (1, "jkm,mil->ijkl", c, c), (1, "kim,mjl->ijkl", c, c))
    if kind == "Associative":
        return la.contract_sum((1, "ijm,mkl->ijkl", c, c), (-1, "jkm,iml->ijkl", c, c))
    raise ContractViolation(f"no defining identity for kind {kind!r}")


def _triple_defects(alg: FinAlgebra, d: np.ndarray) -> list:
    out = []
    if d.size == 0:
        return out
    for i, j, k in np.argwhere(np.any(d != 0, axis=3)):
        loc = f"({alg.labels[i]},{alg.labels[j]},{alg.labels[k]})"
        out.append((loc, alg.vec(d[i, j, k])))
    return out


def check_identity(alg: FinAlgebra, kind: str) -> Report:
    kind = canonical_kind(kind)
    rep = Report(f"{kind} identity")
    if kind == "Unchecked":
        rep.add("no identity", True)
        return rep
    if kind == "Lie":
        n = alg.dim
        bad = []
        for i in range(n):
            for j in range(i, n):
                s = alg.c[i, j] + alg.c[j, i] if i != j else alg.c[i, i]
                if any(x != 0 for x in s):
                    what = f"[{alg.labels[i]},{alg.labels[i]}]" if i == j else \
                        f"[{alg.labels[i]},{alg.labels[j]}]+[{alg.labels[j]},{alg.labels[i]}]"
                    bad.append((what, alg.vec(s)))
        rep.add("alternating", not bad, bad)
        jac = _triple_defects(alg, identity_defect(alg, "Lie"))
        rep.add("Jacobi", not jac, jac)
        return rep
    bad = _triple_defects(alg, identity_defect(alg, kind))
    rep.add(f"{kind} identity on basis triples", not bad, bad)
    return rep


def satisfies(alg: FinAlgebra, kind: str) -> bool:
    """Verdict only; remembered per instance (structure tensors are never mutated in place)."""
    kind = canonical_kind(kind)
    if kind not in alg._verdicts:
        alg._verdicts[kind] = check_identity(alg, kind).passed
    return alg._verdicts[kind]


def truncated_polynomial_zinbiel(degree_cap: int) -> FinAlgebra:
    """Basis x^0..x^cap with x^m * x^n = x^(m+n+1)/(m+1), truncated above the cap."""
    if degree_cap < 1:
        raise ContractViolation("degree_cap must be at least 1")
    n = degree_cap + 1
    c = la.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            if a + b + 1 < n:
                c[a, b, a + b + 1] = la.Q(1, a + 1)
    return FinAlgebra(c, "Zinbiel", tuple(f"x^{i}" for i in range(n)))


def symmetrized(alg: FinAlgebra) -> FinAlgebra:
    """a <> b = a*b + b*a."""
    return FinAlgebra(alg.c + np.transpose(alg.c, (1, 0, 2)), "Unchecked", alg.labels)


# ---------------------------------------------------------------- representations

def _check_family(alg: FinAlgebra, maps: np.ndarray, name: str) -> np.ndarray:
    maps = la.normalize(maps)
    if maps.ndim != 3 or maps.shape[0] != alg.dim or maps.shape[1] != maps.shape[2]:
        raise ContractViolation(f"{name}: expected shape ({alg.dim}, d, d), got {maps.shape}")
    return maps


def _at_products(c: np.ndarray, maps: np.ndarray, swap: bool = False) -> np.ndarray:
    """M(e_i * e_j) (or M(e_j * e_i) when swap) as an array [i, j, :, :]."""
    spec = "jik,kab->ijab" if swap else "ijk,kab->ijab"
    return _einsum(spec, c, maps)


def _compose(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """[i, j] -> first[j] @ second[i]."""
    return _einsum("jab,ibc->ijac", first, second)


def _pair_defects(alg: FinAlgebra, d: np.ndarray) -> list:
    out = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            if any(x != 0 for x in d[i, j].flat):
                rows = [[la.fmt(x) for x in row] for row in d[i, j]]
                out.append((f"({alg.labels[i]},{alg.labels[j]})", rows))
    return out


def check_representation(alg: FinAlgebra, l, r=None, kind: str = "Zinbiel") -> Report:
    """Matrix identities of a representation, with a1 = e_i, a2 = e_j on each pair."""
    kind = canonical_kind(kind)
    l = _check_family(alg, np.asarray(l, dtype=object), "l")
    c = alg.c
    rep = Report(f"{kind} representation")
    if kind == "Lie":
        # rho([g1,g2]) - rho(g1)rho(g2) + rho(g2)rho(g1)
        d = _at_products(c, l) - _compose(l, l).transpose(1, 0, 2, 3) + _compose(l, l)
        bad = _pair_defects(alg, d)
        rep.add("rho([g1,g2]) = [rho(g1),rho(g2)]", not bad, bad)
        return rep
    if r is None:
        raise ContractViolation("a right action family is required for this kind")
    r = _check_family(alg, np.asarray(r, dtype=object), "r")
    if r.shape != l.shape:
        raise ContractViolation("l and r must act on the same carrier")
    # _compose(x, y)[i, j] = x[j] @ y[i] = x(a2) y(a1)
    # _compose(x, y).transpose(1,0)[i, j] = x[i] @ y[j] = x(a1) y(a2)
    if kind == "Zinbiel":
        d1 = _compose(l, l) - _at_products(c, l, swap=True) - _at_products(c, l)
        d2 = _at_products(c, r) - _compose(r, r) - _compose(r, l)
        d3 = _at_products(c, r) - _compose(l, r).transpose(1, 0, 2, 3)
        names = ("l(a2)l(a1) = l(a2.a1) + l(a1.a2)",
                 "r(a1.a2) = r(a2)r(a1) + r(a2)l(a1)",
                 "r(a1.a2) = l(a1)r(a2)")
    elif kind == "Leibniz":
        ll = _compose(l, l)
        d1 = _at_products(c, l) - ll.transpose(1, 0, 2, 3) + ll
        # r(b2 o b1) = l(b2)r(b1) - r(b1)l(b2)
        d2 = (_at_products(c, r, swap=True) - _compose(l, r) + _compose(r, l).transpose(1, 0, 2, 3))
        # r(b1)r(b2) = -r(b1)l(b2)
        d3 = _einsum("iab,jbc->ijac", r, r) + _einsum("iab,jbc->ijac", r, l)
        names = ("l(b1 o b2) = l(b1)l(b2) - l(b2)l(b1)",
                 "r(b2 o b1) = l(b2)r(b1) - r(b1)l(b2)",
                 "r(b1)r(b2) = -r(b1)l(b2)")
    else:
        raise ContractViolation(f"representations of kind {kind!r} are not supported")
    for name, d in zip(names, (d1, d2, d3)):
        bad = _pair_defects(alg, d)
        rep.add(name, not bad, bad)
    return rep


def regular_rep(alg: FinAlgebra) -> tuple[np.ndarray, np.ndarray]:
    return alg.left(), alg.right()


def dual_family(maps: np.ndarray) -> np.ndarray:
    """mu*(a) = mu(a)^T in dual coordinates."""
    return la.normalize(np.transpose(np.asarray(maps, dtype=object), (0, 2, 1)))


def coregular_rep(alg: FinAlgebra, kind: str) -> tuple[np.ndarray, np.ndarray]:
    kind = canonical_kind(kind)
    ls, rs = dual_family(alg.left()), dual_family(alg.right())
    if kind == "Zinbiel":
        return la.normalize(ls + rs), la.normalize(-rs)
    if kind == "Leibniz":
        return la.normalize(-ls), la.normalize(ls + rs)
    raise ContractViolation(f"coregular representation is defined for Zinbiel and Leibniz, not {kind!r}")


def semidirect_zinbiel(alg: FinAlgebra, l, r, carrier_labels=()) -> FinAlgebra:
    """A + V with (a+u)(b+v) = ab + l(a)v + r(b)u."""
    l = _check_family(alg, np.asarray(l, dtype=object), "l")
    r = _check_family(alg, np.asarray(r, dtype=object), "r")
    rep = check_representation(alg, l, r, "Zinbiel")
    if not rep.passed:
        raise InvalidRepresentation(rep.render())
    n, d = alg.dim, l.shape[1]
    c = la.zeros((n + d, n + d, n + d))
    c[:n, :n, :n] = alg.c
    for a in range(n):
        for p in range(d):
            for qq in range(d):
                c[a, n + p, n + qq] = l[a][qq, p]
                c[n + p, a, n + qq] = r[a][qq, p]
    labels = alg.labels + (tuple(carrier_labels) or tuple(f"v{i + 1}" for i in range(d)))
    return FinAlgebra(c, "Zinbiel", labels)


# ---------------------------------------------------------------- bilinear forms

@dataclass(frozen=True, eq=False)
class BilinForm:
    gram: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        g = la.normalize(self.gram)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ContractViolation(f"Gram matrix must be square, got {g.shape}")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @classmethod
    def from_entries(cls, dim: int, entries: dict) -> "BilinForm":
        """``{(i, j): value}`` with 1-based indices; unlisted entries are zero."""
        g = la.zeros((dim, dim))
        for (i, j), v in entries.items():
            g[i - 1, j - 1] = la.q(v)
        return cls(g)

    def __call__(self, x, y):
        return la.bilinear(self.gram, x, y)

    def is_symmetric(self) -> bool:
        return la.equal(self.gram, self.gram.T)

    def is_skew(self) -> bool:
        return la.equal(self.gram, -self.gram.T)

    def kernel_dim(self) -> int:
        return self.dim - la.rank(self.gram) if self.dim else 0

    def is_nondegenerate(self) -> bool:
        return self.kernel_dim() == 0


def invariance_defect_form(alg: FinAlgebra, form: BilinForm, kind: str) -> np.ndarray:
    """D[i, j, k] for the kind's invariance identity on (e_i, e_j, e_k)."""
    c, g = alg.c, form.gram
    kind = canonical_kind(kind)
    prod_first = _einsum("ijm,mk->ijk", c, g)  # B(e_i e_j, e_k)
    if kind == "Zinbiel":
        # k(a1.a2, a3) - k(a2, a1.a3 + a3.a1)
        s = c + np.transpose(c, (1, 0, 2))
        return prod_first - _einsum("jm,ikm->ijk", g, s)
    if kind == "Leibniz":
        # w(b1 o b2, b3) - w(b1, b2 o b3 + b3 o b2)
        s = c + np.transpose(c, (1, 0, 2))
        return prod_first - _einsum("im,jkm->ijk", g, s)
    if kind in ("Lie", "Associative"):
        return prod_first - _einsum("im,jkm->ijk", g, c)
    raise ContractViolation(f"no invariance notion for kind {kind!r}")


def derived_defect_form(alg: FinAlgebra, form: BilinForm, kind: str) -> np.ndarray:
    """Zinbiel: k(a1.a2,a3) + k(a1, a3.a2); Leibniz: w(b1 o b2,b3) + w(b2, b1 o b3)."""
    c, g = alg.c, form.gram
    prod_first = _einsum("ijm,mk->ijk", c, g)
    if kind == "Zinbiel":
        return prod_first + _einsum("im,kjm->ijk", g, c)
    if kind == "Leibniz":
        return prod_first + _einsum("jm,ikm->ijk", g, c)
    raise ContractViolation(kind)


def _form_triples(alg: FinAlgebra, d: np.ndarray) -> list:
    n = alg.dim
    return [(f"({alg.labels[i]},{alg.labels[j]},{alg.labels[k]})", la.fmt(d[i, j, k]))
            for i in range(n) for j in range(n) for k in range(n) if d[i, j, k] != 0]


def check_form(alg: FinAlgebra, form: BilinForm, kind: str) -> Report:
    if form.dim != alg.dim:
        raise ContractViolation(f"form dimension {form.dim} does not match algebra dimension {alg.dim}")
    kind = canonical_kind(kind)
    rep = Report(f"bilinear form on {kind} algebra")
    rep.add("symmetric", form.is_symmetric())
    rep.add("skew", form.is_skew())
    kd = form.kernel_dim()
    rep.add("nondegenerate", kd == 0, note=f"kernel dimension {kd}")
    bad = _form_triples(alg, invariance_defect_form(alg, form, kind))
    rep.add("invariant", not bad, bad)
    return rep


def form_flags(rep: Report) -> dict:
    return {c.name: c.passed for c in rep.checks}


def is_quadratic(alg: FinAlgebra, form: BilinForm, kind: str) -> bool:
    f = form_flags(check_form(alg, form, kind))
    return f["skew"] and f["nondegenerate"] and f["invariant"]


def check_quadratic(alg: FinAlgebra, form: BilinForm, kind: str) -> Report:
    """Skew + nondegenerate + invariant, plus the derived identity when those hold."""
    kind = canonical_kind(kind)
    base = check_form(alg, form, kind)
    rep = Report(f"quadratic {kind} algebra")
    for name in ("skew", "nondegenerate", "invariant"):
        ch = base.check(name)
        rep.add(name, ch.passed, ch.defects, ch.note)
    if rep.passed and kind in ("Zinbiel", "Leibniz"):
        bad = _form_triples(alg, derived_defect_form(alg, form, kind))
        rep.add("derived identity", not bad, bad)
    return rep
