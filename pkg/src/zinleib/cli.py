"""Command-line front end: ``zinleib <verb> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for usage
or input errors (bad flags, unreadable or malformed files, contract violations).
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import linalg as la
from .algebra import canonical_kind, check_identity, check_quadratic, satisfies
from .coalgebra import check_coidentity, tensor3_str, zinbiel_coalgebra_from_quadratic
from .errors import ContractViolation
from .frobenius import (PreZinbiel, canonical_r_from_form, check_pre_zinbiel, check_quasi_frobenius_lie,
                        check_quasi_frobenius_zinbiel, induced_qf_lie, pre_zinbiel_double)
from .graded import (AffineAlgebra, DegreeTensor, GradedForm, check_completed_identity,
                     completed_coalgebra_from_graded_form, graded_identity_report, induced_graded_lie, is_skew,
                     lift_zybe)
from .io import Document, corpus_load, document, save
from .report import Report
from .suite import verify_corpus
from .tensor import CHECKS, induced_lie, verify_manin_triple
from .yang_baxter import YBE, YBE_NAME, classify_report, lift_lybe, show2, tau

YBE_TYPES = {"lybe": "Leibniz", "cybe": "Lie", "zybe": "Zinbiel"}


class UsageError(Exception):
    pass


def _open(path: str) -> Document:
    return corpus_load(path)


def _expect(doc: Document, *roles: str) -> Document:
    if doc.role not in roles:
        raise UsageError(f"{doc.name or 'file'}: expected role {' or '.join(roles)}, found {doc.role}")
    return doc


def _algebra(path: str, kind: str | None = None):
    doc = _expect(_open(path), "algebra", "affine")
    value = doc.value
    if kind:
        base = value.base if isinstance(value, AffineAlgebra) else value
        out = base.with_kind(kind)
        return AffineAlgebra(out) if isinstance(value, AffineAlgebra) else out
    return doc.checked()


# ---------------------------------------------------------------- verbs

def cmd_check(args) -> Report:
    doc = _open(args.file)
    kind = args.kind
    if doc.role == "algebra":
        return check_identity(doc.value, kind)
    if doc.role == "affine":
        return graded_identity_report(doc.value, kind)
    if doc.role == "coalgebra":
        return check_coidentity(doc.value, kind)
    if doc.role == "bialgebra":
        name = {"leibnizbi": "LeibnizBi", "liebi": "LieBi", "zinbielbi": "ZinbielBi"}.get(kind.lower())
        if name is None:
            raise UsageError("bialgebras are checked --as LeibnizBi, LieBi or ZinbielBi")
        return CHECKS[name](doc.value)
    if doc.role == "pre_zinbiel":
        return check_pre_zinbiel(doc.value)
    if doc.role == "form":
        if not args.algebra:
            raise UsageError("checking a form needs --algebra")
        alg = _algebra(args.algebra)
        if isinstance(doc.value, GradedForm) != isinstance(alg, AffineAlgebra):
            raise UsageError("pair a graded form with an affine algebra")
        if isinstance(alg, AffineAlgebra):
            return check_quadratic(alg.base, doc.value.base_form, kind)
        return check_quadratic(alg, doc.value, kind)
    raise UsageError("r-matrix files are checked with the ybe or classify verbs")


def cmd_induce(args) -> Report:
    A = _algebra(args.zinbiel, "Zinbiel")
    B = _algebra(args.leibniz, "Leibniz")
    base_B = B.base if isinstance(B, AffineAlgebra) else B
    if args.affine and not isinstance(B, AffineAlgebra):
        B = AffineAlgebra(base_B)
    if isinstance(B, AffineAlgebra):
        g = induced_graded_lie(A, B)
        rep = Report("induced graded Lie algebra")
        rep.extend(graded_identity_report(g, "Lie"))
        out = document("affine", g, "Lie")
    else:
        g = induced_lie(A, B)
        rep = check_identity(g, "Lie")
        rep.title = "induced Lie algebra"
        out = document("algebra", g, "Lie")
    rep.data["dim"] = g.dim
    if args.out:
        save(out, args.out)
    return rep


def cmd_coalgebra_from_form(args) -> Report:
    alg = _algebra(args.algebra)
    form = _expect(_open(args.form), "form").value
    if isinstance(alg, AffineAlgebra):
        if not isinstance(form, GradedForm):
            raise UsageError("an affine algebra needs a graded form")
        theta = completed_coalgebra_from_graded_form(alg, form)
        rep = check_completed_identity("LeibnizCo", coproduct=theta)
        rep.data["coproduct"] = {alg.labels[k]: theta.show(k) for k in range(theta.dim)}
        return rep
    if isinstance(form, GradedForm):
        raise UsageError("a graded form needs an affine algebra")
    co = zinbiel_coalgebra_from_quadratic(alg.with_kind("Zinbiel"), form)
    rep = check_coidentity(co, "ZinbielCo")
    if args.out:
        save(document("coalgebra", co, "ZinbielCo"), args.out)
    rep.data["coproduct"] = {alg.labels[k]: co.show(k) for k in range(co.dim)}
    return rep


def _r_matrix(path: str, n: int):
    r = _expect(_open(path), "rmatrix").value
    if isinstance(r, DegreeTensor):
        raise UsageError("this verb takes a finite r-matrix")
    if r.shape != (n, n):
        raise UsageError(f"r-matrix must be {n} x {n}")
    return r


def cmd_ybe(args) -> Report:
    kind = YBE_TYPES[args.type]
    doc = _expect(_open(args.algebra), "algebra", "affine")
    rfile = _expect(_open(args.r), "rmatrix")
    if isinstance(rfile.value, DegreeTensor):
        if kind != "Lie" or doc.role != "affine":
            raise UsageError("completed r-matrices are checked with --type cybe over an affine algebra")
        rep = check_completed_identity("CYBE", algebra=doc.value, r=rfile.value)
        rep.data["skew"] = is_skew(rfile.value)
        return rep
    alg = doc.value.with_kind(kind)
    r = _r_matrix(args.r, alg.dim)
    d = YBE[kind](alg, r)
    rep = Report(YBE_NAME[kind])
    rep.add(f"{YBE_NAME[kind]} defect vanishes", la.is_zero(d),
            [] if la.is_zero(d) else [("defect", tensor3_str(d, alg.labels))])
    rep.data["symmetric"] = la.equal(r, tau(r))
    rep.data["skew"] = la.equal(r, -tau(r))
    return rep


def cmd_lift(args) -> Report:
    A = _algebra(args.zinbiel, "Zinbiel")
    r = _r_matrix(args.r, A.dim if args.mode == "r-hat" else _algebra(args.leibniz).dim)
    form = _expect(_open(args.form), "form").value
    if args.mode == "r-tilde":
        B = _algebra(args.leibniz, "Leibniz")
        if isinstance(B, AffineAlgebra) or isinstance(form, GradedForm):
            raise UsageError("r-tilde lifts over a finite Leibniz algebra with a finite form on A")
        rt = lift_lybe(A, form, B, r)
        g = induced_lie(A, B)
        rep = Report("lifted r-matrix")
        rep.add("r solves the LYBE", la.is_zero(YBE["Leibniz"](B, r)))
        rep.add("lift solves the CYBE", la.is_zero(YBE["Lie"](g, rt)))
        if la.equal(r, tau(r)):
            rep.add("symmetric r lifts to a skew-symmetric tensor", la.equal(rt, -tau(rt)))
        rep.data["r_tilde"] = show2(rt, g.labels)
        if args.out:
            save(document("rmatrix", rt, labels=g.labels), args.out)
        return rep
    B = _algebra(args.leibniz, "Leibniz")
    if not isinstance(B, AffineAlgebra) or not isinstance(form, GradedForm):
        raise UsageError("r-hat lifts over an affine Leibniz algebra with a graded form")
    rh = lift_zybe(A, r, B, form)
    g = induced_graded_lie(A, B)
    rep = Report("completed lifted r-matrix")
    rep.add("r solves the ZYBE", la.is_zero(YBE["Zinbiel"](A, r)))
    cy = check_completed_identity("CYBE", algebra=g, r=rh)
    rep.add("lift solves the completed CYBE", cy.passed, cy.checks[0].defects)
    if la.equal(r, tau(r)):
        rep.add("symmetric r lifts to a skew-symmetric completed tensor", is_skew(rh))
    rep.data["r_hat"] = rh.render(g.labels)
    if args.out:
        save(document("rmatrix", rh, labels=g.labels), args.out)
    return rep


def cmd_classify(args) -> Report:
    kind = canonical_kind(args.kind)
    alg = _algebra(args.algebra)
    if isinstance(alg, AffineAlgebra):
        raise UsageError("classification takes a finite algebra")
    return classify_report(alg.with_kind(kind), _r_matrix(args.r, alg.dim), kind)


def _subspace(spec: str, labels) -> list:
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok in labels:
            out.append(la.unit(len(labels), labels.index(tok)))
        elif tok.isdigit() and 1 <= int(tok) <= len(labels):
            out.append(la.unit(len(labels), int(tok) - 1))
        else:
            raise UsageError(f"unknown basis element {tok!r}")
    return out


def cmd_manin(args) -> Report:
    D = _algebra(args.double)
    form = _expect(_open(args.form), "form").value
    kind = canonical_kind(args.kind)
    return verify_manin_triple(D, form, _subspace(args.p1, D.labels), _subspace(args.p2, D.labels), kind)


def cmd_frobenius(args) -> Report:
    if args.pre_zinbiel:
        P = _expect(_open(args.pre_zinbiel), "pre_zinbiel").value
        rep = check_pre_zinbiel(P)
        if not rep.passed:
            return rep
        P = PreZinbiel(P.prec, P.succ, P.labels)
        D, form = pre_zinbiel_double(P)
        rep.extend(check_quasi_frobenius_zinbiel(D, form), "double: ")
        rc = canonical_r_from_form(form)
        rep.add("canonical r solves the ZYBE", la.is_zero(YBE["Zinbiel"](D, rc)))
        rep.data["double"] = "; ".join(f"{D.labels[i]} {D.labels[j]} = {D.vec(D.c[i, j])}"
                                       for i in range(D.dim) for j in range(D.dim) if not la.is_zero(D.c[i, j]))
        if args.leibniz:
            if not args.leibniz_form:
                raise UsageError("--leibniz needs --leibniz-form")
            B = _algebra(args.leibniz, "Leibniz")
            omega = _expect(_open(args.leibniz_form), "form").value
            g, Bform = induced_qf_lie(D, form, B, omega)
            rep.extend(check_quasi_frobenius_lie(g, Bform), "induced Lie: ")
            rep.data["induced_dim"] = g.dim
        return rep
    if not (args.algebra and args.form):
        raise UsageError("frobenius needs --pre-zinbiel, or --algebra with --form")
    alg = _algebra(args.algebra)
    form = _expect(_open(args.form), "form").value
    if isinstance(alg, AffineAlgebra) or isinstance(form, GradedForm):
        return check_quasi_frobenius_lie(alg, form)
    if satisfies(alg, "Zinbiel") and alg.kind != "Lie":
        return check_quasi_frobenius_zinbiel(alg, form)
    return check_quasi_frobenius_lie(alg, form)


def cmd_report(args) -> Report:
    rep = verify_corpus()
    text = rep.to_json() + "\n" if args.out_format == "json" else rep.render() + "\n"
    Path(args.out).write_text(text, encoding="utf-8")
    return rep


def cmd_corpus(args) -> Report:
    return verify_corpus()


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zinleib", description="Exact checks for Zinbiel, Leibniz and Lie structures.")
    p.add_argument("--format", choices=("text", "json"), default="text", help="report format on stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = p.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    s = sub.add_parser("check", help="check a file against a kind")
    s.add_argument("file")
    s.add_argument("--as", dest="kind", required=True)
    s.add_argument("--algebra", help="algebra file, when checking a form")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("induce", help="induced Lie algebra on A (x) B")
    s.add_argument("--zinbiel", required=True)
    s.add_argument("--leibniz", required=True)
    s.add_argument("--affine", action="store_true", help="use the Laurent affinization of B")
    s.add_argument("--out", help="also write the induced algebra to this file")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("coalgebra-from-form", help="coproduct dual to a quadratic algebra")
    s.add_argument("--algebra", required=True)
    s.add_argument("--form", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_coalgebra_from_form)

    s = sub.add_parser("ybe", help="Yang-Baxter defect of an r-matrix")
    s.add_argument("--type", choices=tuple(YBE_TYPES), required=True)
    s.add_argument("--algebra", required=True)
    s.add_argument("--r", required=True)
    s.set_defaults(func=cmd_ybe)

    s = sub.add_parser("lift", help="lift r to the tensor product")
    s.add_argument("--mode", choices=("r-tilde", "r-hat"), required=True)
    s.add_argument("--zinbiel", required=True)
    s.add_argument("--leibniz", required=True)
    s.add_argument("--form", required=True, help="kappa on A (r-tilde) or graded omega on B (r-hat)")
    s.add_argument("--r", required=True, help="r on B (r-tilde) or on A (r-hat)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("classify", help="classify an r-matrix")
    s.add_argument("--algebra", required=True)
    s.add_argument("--r", required=True)
    s.add_argument("--as", dest="kind", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("manin", help="verify a Manin triple")
    s.add_argument("--double", required=True)
    s.add_argument("--form", required=True)
    s.add_argument("--p1", required=True, help="comma-separated basis labels or 1-based indices")
    s.add_argument("--p2", required=True)
    s.add_argument("--as", dest="kind", default="Lie")
    s.set_defaults(func=cmd_manin)

    s = sub.add_parser("frobenius", help="quasi-Frobenius checks and the pre-Zinbiel double")
    s.add_argument("--algebra")
    s.add_argument("--form")
    s.add_argument("--pre-zinbiel")
    s.add_argument("--leibniz", help="with --pre-zinbiel: induce the quasi-Frobenius Lie algebra")
    s.add_argument("--leibniz-form")
    s.set_defaults(func=cmd_frobenius)

    s = sub.add_parser("report", help="run the corpus suite and write its report")
    s.add_argument("--out", required=True)
    s.add_argument("--format", dest="out_format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("corpus", help="corpus operations")
    s.add_argument("action", choices=("verify",))
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except (UsageError, ContractViolation) as exc:
        print(f"zinleib: error: {exc}", file=sys.stderr)
        if isinstance(exc, UsageError):
            parser.print_usage(sys.stderr)
        return 2
    rep.timing_ms = (time.perf_counter() - start) * 1000
    if args.format == "json":
        sys.stdout.write(rep.to_json(args.timing) + "\n")
    else:
        sys.stdout.write(rep.render(args.timing) + "\n")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
