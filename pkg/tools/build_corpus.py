"""Regenerate the bundled example corpus in canonical layout."""
from pathlib import Path

from zinleib import linalg as la
from zinleib.algebra import BilinForm, FinAlgebra, truncated_polynomial_zinbiel
from zinleib.coalgebra import Coalgebra
from zinleib.frobenius import PreZinbiel
from zinleib.graded import AffineAlgebra, GradedForm, lift_zybe, v4_form
from zinleib.io import document, save
from zinleib.tensor import Bialgebra

OUT = Path(__file__).resolve().parents[1] / "src" / "zinleib" / "corpus"
X2 = ("x1", "x2")
X4 = ("x1", "x2", "x3", "x4")
V4 = ("v1", "v2", "v3", "v4")


def alg(dim, table, labels=()):
    return FinAlgebra.from_table(dim, table, "Unchecked", labels)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    z2 = alg(2, {(1, 1): {2: 1}})
    v4_table = {(1, 2): {1: 1}, (2, 1): {1: -1}, (1, 3): {4: -1}, (2, 3): {3: 1}}
    kappa4 = BilinForm.from_entries(4, {(3, 1): 1, (4, 2): 1, (2, 4): -1, (1, 3): -1})
    omega4 = BilinForm.from_entries(4, {(1, 3): 1, (3, 1): -1, (2, 4): 1, (4, 2): -1})
    bx = alg(2, {(2, 2): {1: 1}}, X2)
    theta = Coalgebra.from_table(2, {2: {(1, 1): -1}}, labels=X2)
    files = {
        "zinbiel_dim2": document("algebra", z2, "Zinbiel", metadata={
            "description": "two-dimensional Zinbiel algebra, e1.e1 = e2"}),
        "zinbiel_dim3": document("algebra", alg(3, {(1, 1): {3: 1}, (1, 2): {3: 1}, (2, 1): {3: 1}}), "Zinbiel",
                                 metadata={"description": "three-dimensional Zinbiel algebra, e1.e1 = e1.e2 = e2.e1 = e3"}),
        "zinbiel_poly_cap6": document("algebra", truncated_polynomial_zinbiel(6), "Zinbiel", metadata={
            "description": "polynomials x^0..x^6 with x^m.x^n = x^(m+n+1)/(m+1), products above degree 6 dropped"}),
        "zinbiel_quadratic_dim4": document("algebra", alg(4, {(1, 1): {2: 1}, (4, 4): {3: 1}, (1, 4): {3: 2, 2: -1},
                                                              (4, 1): {2: 2, 3: -1}}), "Zinbiel", metadata={
            "description": "four-dimensional Zinbiel algebra carrying the skew invariant form in form_kappa_dim4"}),
        "form_kappa_dim4": document("form", kappa4, metadata={
            "description": "kappa(e3,e1) = kappa(e4,e2) = 1 = -kappa(e2,e4) = -kappa(e1,e3)"}),
        "zinbiel_coalgebra_dim4": document(
            "coalgebra", Coalgebra.from_table(4, {1: {(2, 2): -1, (2, 3): -1, (3, 2): 2},
                                                  4: {(3, 3): 1, (2, 3): -2, (3, 2): 1}}), "ZinbielCo",
            metadata={"description": "coproduct dual to zinbiel_quadratic_dim4 under form_kappa_dim4"}),
        "leibniz_dim2": document("algebra", alg(2, {(2, 1): {1: 1}, (2, 2): {1: 1}}), "Leibniz", metadata={
            "description": "two-dimensional Leibniz algebra, e2 o e1 = e1 = e2 o e2"}),
        "leibniz_dim3": document("algebra", alg(3, {(3, 1): {2: 1}, (3, 2): {1: 1}}), "Leibniz", metadata={
            "description": "three-dimensional Leibniz algebra, e3 o e1 = e2, e3 o e2 = e1"}),
        "leibniz_v4": document("algebra", alg(4, v4_table, V4), "Leibniz", metadata={
            "description": "four-dimensional Leibniz algebra V4: v1 o v2 = v1 = -v2 o v1, v1 o v3 = -v4, v2 o v3 = v3"}),
        "affine_v4": document("affine", AffineAlgebra(alg(4, v4_table, V4)), "Leibniz", metadata={
            "description": "Laurent affinization V4[t, 1/t] with degree-additive product"}),
        "form_v4_graded": document("form", v4_form(), labels=V4, metadata={
            "description": "graded skew form omega(x t^i, y t^j) = [i+j = 0] kappa(x, y) on V4^"}),
        "leibniz_x_dim2": document("algebra", bx, "Leibniz", metadata={
            "description": "two-dimensional Leibniz algebra, x2 o x2 = x1"}),
        "r_lybe_x_dim2": document("rmatrix", la.array([[0, 1], [1, 0]]), labels=X2, metadata={
            "description": "symmetric LYBE solution r = x1 (x) x2 + x2 (x) x1"}),
        "leibniz_bialgebra_x_dim2": document("bialgebra", Bialgebra(bx, theta, "Unchecked"), "LeibnizBi", metadata={
            "description": "triangular Leibniz bialgebra of r_lybe_x_dim2: coproduct(x2) = -x1 (x) x1"}),
        "r_ex_zybe": document("rmatrix", la.array([[0, 1], [1, 0]]), metadata={
            "description": "symmetric ZYBE solution r = e1 (x) e2 + e2 (x) e1 in zinbiel_dim2"}),
        "zinbiel_bialgebra_dim2": document(
            "bialgebra", Bialgebra(z2, Coalgebra.from_table(2, {1: {(2, 2): 1}}), "Unchecked"), "ZinbielBi",
            metadata={"description": "triangular Zinbiel bialgebra of r_ex_zybe: coproduct(e1) = e2 (x) e2"}),
        "pre_zinbiel_dim2": document("pre_zinbiel", PreZinbiel.from_tables(2, {(1, 1): {2: -1}}, {(1, 1): {2: 2}}),
                                     metadata={"description": "pre-Zinbiel algebra, e1 > e1 = 2 e2, e1 < e1 = -e2"}),
        "leibniz_qf_x_dim4": document("algebra", alg(4, v4_table, X4), "Leibniz", metadata={
            "description": "V4 relabelled x1..x4, paired with form_omega_x_dim4"}),
        "form_omega_x_dim4": document("form", omega4, labels=X4, metadata={
            "description": "omega(x1,x3) = 1 = -omega(x3,x1), omega(x2,x4) = 1 = -omega(x4,x2)"}),
    }
    A = FinAlgebra(z2.c, "Zinbiel")
    B = AffineAlgebra(alg(4, v4_table, V4))
    rhat = lift_zybe(A, la.array([[0, 1], [1, 0]]), B, v4_form())
    labels = tuple(f"{a}|{b}" for a in ("e1", "e2") for b in V4)
    files["r_hat_zybe_v4"] = document("rmatrix", rhat, labels=labels, metadata={
        "description": "completed lift of r_ex_zybe to zinbiel_dim2 (x) V4^, parameter k"})
    for name, doc in files.items():
        save(doc, OUT / f"{name}.json")
    print(f"wrote {len(files)} files to {OUT}")


if __name__ == "__main__":
    main()
