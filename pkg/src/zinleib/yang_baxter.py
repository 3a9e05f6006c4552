"""r-matrices: slot products, Yang-Baxter defects, invariance, lifts and O-operators.

Two-tensors r = sum r[a, b] e_a (x) e_b are n x n arrays; three-tensors are
n x n x n arrays indexed by slot.
"""
from __future__ import annotations

import re

import numpy as np

from . import linalg as la
from .algebra import BilinForm, FinAlgebra, _einsum, canonical_kind, check_quadratic, dual_family
from .coalgebra import Coalgebra, tensor2_str, tensor3_str
from .errors import ContractViolation, InvalidQuadraticStructure
from .report import Report

PLACEMENTS = ("12.13", "12.23", "23.12", "23.13", "13.23", "13.12", "13.21", "21.13", "23.21")


def canonical_placement(tag: str) -> str:
    t = re.sub(r"[\s·*⋄∘]", ".", str(tag)).replace("r", "")
    if "." not in t and len(t) == 4:
        t = t[:2] + "." + t[2:]
    if t not in PLACEMENTS:
        raise ContractViolation(f"unknown placement {tag!r}; expected one of {', '.join(PLACEMENTS)}")
    return t


def _slot_spec(tag: str) -> str:
    """einsum spec of r_{pq} * s_{uv} against the structure tensor, for a canonical tag."""
    (p1, q1), (p2, q2) = [tuple(int(ch) for ch in part) for part in tag.split(".")]
    shared = ({p1, q1} & {p2, q2}).pop()
    r_letters = {p1: "a", q1: "b"}
    s_letters = {p2: "c", q2: "d"}
    slot_of = {slot: "w" if slot == shared else r_letters.get(slot) or s_letters[slot] for slot in (1, 2, 3)}
    return f"ab,cd,{r_letters[shared]}{s_letters[shared]}w->{slot_of[1]}{slot_of[2]}{slot_of[3]}"


def _two_tensors(alg: FinAlgebra, *ts):
    n = alg.dim
    out = [la.normalize(t) for t in ts]
    if any(t.shape != (n, n) for t in out):
        raise ContractViolation(f"two-tensors must be {n} x {n}")
    return out


def slot_product(alg: FinAlgebra, r, s, placement: str) -> np.ndarray:
    """r_{pq} * s_{uv}: the product acts in the one shared slot, r's factor on the left."""
    spec = _slot_spec(canonical_placement(placement))
    r, s = _two_tensors(alg, r, s)
    return la.contract(spec, r, s, alg.c)


def _sum(alg, r, terms) -> np.ndarray:
    (r,) = _two_tensors(alg, r)
    return la.contract_sum(*((sign, _slot_spec(tag), r, r, alg.c) for sign, tag in terms))


def lybe_defect(B: FinAlgebra, r) -> np.ndarray:
    return _sum(B, r, ((1, "12.13"), (-1, "12.23"), (-1, "23.12"), (1, "23.13")))


def cybe_defect(g: FinAlgebra, r) -> np.ndarray:
    return _sum(g, r, ((1, "12.13"), (1, "12.23"), (1, "13.23")))


def zybe_defect(A: FinAlgebra, r) -> np.ndarray:
    return _sum(A, r, ((1, "13.21"), (1, "21.13"), (1, "12.23"), (1, "23.12"),
                       (-1, "13.23"), (-1, "23.13"), (-1, "13.12"), (-1, "23.21")))


YBE = {"Leibniz": lybe_defect, "Lie": cybe_defect, "Zinbiel": zybe_defect}
YBE_NAME = {"Leibniz": "LYBE", "Lie": "CYBE", "Zinbiel": "ZYBE"}


def tau(r) -> np.ndarray:
    return la.normalize(np.asarray(r, dtype=object).T)


def _operator_images(alg: FinAlgebra, r, kind: str) -> np.ndarray:
    """out[x, y, k]: the kind's operator attached to e_k applied to r."""
    c = alg.c
    r = la.normalize(r)
    kind = canonical_kind(kind)
    if kind == "Leibniz":
        # (id (x) R(b) - (L+R)(b) (x) id)(r)
        return (_einsum("xb,bky->xyk", r, c)
                - _einsum("kax,ay->xyk", c, r) - _einsum("akx,ay->xyk", c, r))
    if kind == "Lie":
        # (id (x) ad g + ad g (x) id)(r)
        return _einsum("xb,kby->xyk", r, c) + _einsum("kax,ay->xyk", c, r)
    if kind == "Zinbiel":
        # (id (x) (L+R)(a) - L(a) (x) id)(r)
        return (_einsum("xb,kby->xyk", r, c) + _einsum("xb,bky->xyk", r, c)
                - _einsum("kax,ay->xyk", c, r))
    raise ContractViolation(f"no invariance operator for kind {kind!r}")


def invariance_defect(alg: FinAlgebra, r, kind: str) -> list[np.ndarray]:
    imgs = la.normalize(_operator_images(alg, r, kind))
    return [imgs[:, :, k] for k in range(alg.dim)]


def is_invariant(alg: FinAlgebra, r, kind: str) -> bool:
    return all(la.is_zero(m) for m in invariance_defect(alg, r, kind))


def coboundary_coproduct(alg: FinAlgebra, r, kind: str) -> Coalgebra:
    return Coalgebra(_operator_images(alg, r, kind), "Unchecked", alg.labels)


def r_sharp(r) -> np.ndarray:
    """Matrix of r#: column i is r#(xi_i) = sum_j r[i, j] e_j."""
    return la.normalize(np.asarray(r, dtype=object).T)


def sym_part(r, kind: str) -> np.ndarray:
    """r + tau(r) for Lie, r - tau(r) otherwise."""
    return la.normalize(r + tau(r) if kind == "Lie" else r - tau(r))


def classify_r(alg: FinAlgebra, r, kind: str) -> dict:
    kind = canonical_kind(kind)
    r = la.normalize(r)
    n = alg.dim
    defect = YBE[kind](alg, r)
    part = sym_part(r, kind)
    sym = la.equal(r, tau(r))
    skew = la.equal(r, -tau(r))
    solves = la.is_zero(defect)
    part_inv = is_invariant(alg, part, kind)
    quasi = solves and part_inv
    triangular = solves and (skew if kind == "Lie" else sym)
    if kind == "Zinbiel":
        fact = "not defined"
        iso_rank = None
    else:
        iso_rank = la.rank(r_sharp(part)) if n else 0
        fact = quasi and iso_rank == n
    return {
        "kind": kind,
        "equation": YBE_NAME[kind],
        "solves_ybe": solves,
        "sym_part_invariant": part_inv,
        "symmetric": sym,
        "skew": skew,
        "quasi_triangular": quasi,
        "triangular": triangular,
        "factorizable": fact,
        "sharp_rank": iso_rank,
    }


def classify_report(alg: FinAlgebra, r, kind: str) -> Report:
    info = classify_r(alg, r, kind)
    rep = Report(f"r-matrix classification ({info['equation']})")
    d = YBE[info["kind"]](alg, r)
    rep.add(f"solves the {info['equation']}", info["solves_ybe"],
            [] if info["solves_ybe"] else [("defect", tensor3_str(d, alg.labels))])
    rep.data = {k: (v if isinstance(v, (bool, str, int)) or v is None else str(v)) for k, v in info.items()}
    return rep


def dual_basis_matrix(form: BilinForm) -> np.ndarray:
    """Row j holds the coordinates of f_j."""
    n = form.dim
    return np.array(la.dual_basis(form.gram), dtype=object).reshape(n, n)


def lift_lybe(A: FinAlgebra, kappa: BilinForm, B: FinAlgebra, r) -> np.ndarray:
    """r~ = sum_{i,j} (e_j (x) x_i) (x) (f_j (x) y_i) on the flattened A (x) B basis."""
    f = dual_basis_matrix(kappa)  # raises DegenerateForm first
    rep = check_quadratic(A, kappa, "Zinbiel")
    if not rep.passed:
        raise InvalidQuadraticStructure(rep.render())
    r = la.normalize(r)
    if r.shape != (B.dim, B.dim):
        raise ContractViolation("r must live in B (x) B")
    return la.kron(f, r)


def base_r0(kappa: BilinForm) -> np.ndarray:
    """r0 = sum_j e_j (x) f_j."""
    return la.normalize(dual_basis_matrix(kappa))


def coadjoint_family(g: FinAlgebra) -> np.ndarray:
    """rho(g) = -ad(g)^T on the dual space."""
    return la.normalize(-dual_family(g.left()))


def check_o_operator(alg: FinAlgebra, T, rep, kind: str) -> Report:
    kind = canonical_kind(kind)
    T = la.normalize(T)
    n = alg.dim
    if T.ndim != 2 or T.shape[0] != n:
        raise ContractViolation(f"T must be an {n} x d matrix")
    c = alg.c
    if kind == "Leibniz":
        l, r = (la.normalize(x) for x in rep)
        if l.shape != (n, T.shape[1], T.shape[1]) or r.shape != l.shape:
            raise ContractViolation("representation does not match T")
        lhs = _einsum("ap,bq,abk->pqk", T, T, c)
        inner = _einsum("ap,axq->pqx", T, l) + _einsum("aq,axp->pqx", T, r)
        name = "T(v1) o T(v2) = T(l(Tv1)v2 + r(Tv2)v1)"
    elif kind == "Lie":
        rho = la.normalize(rep if not isinstance(rep, tuple) else rep[0])
        if rho.shape != (n, T.shape[1], T.shape[1]):
            raise ContractViolation("representation does not match T")
        lhs = _einsum("ap,bq,abk->pqk", T, T, c)
        inner = _einsum("ap,axq->pqx", T, rho) - _einsum("aq,axp->pqx", T, rho)
        name = "[Tv1, Tv2] = T(rho(Tv1)v2 - rho(Tv2)v1)"
    else:
        raise ContractViolation(f"O-operators are checked for Leibniz and Lie, not {kind!r}")
    d = lhs - _einsum("kx,pqx->pqk", T, inner)
    out = Report(f"O-operator ({kind})")
    bad = [(f"(u{p + 1},u{q + 1})", alg.vec(d[p, q]))
           for p in range(d.shape[0]) for q in range(d.shape[1]) if not la.is_zero(d[p, q])]
    out.add(name, not bad, bad)
    return out


def show2(r, labels) -> str:
    return tensor2_str(la.normalize(r), labels)
