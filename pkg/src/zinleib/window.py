"""Degree-window truncation: completed identities evaluated on concrete degrees.

This is an independent check of the symbolic verdicts in ``graded``. Inputs are
expanded into finitely many concrete terms, all arithmetic happens on plain
dictionaries keyed by (basis indices, degrees), and only output components whose
degrees all lie in the outer window are compared. Intermediate terms are taken
from a wider inner window, so every contribution to an outer component is seen
as long as the input degree patterns have unit coefficients (all ours do).
"""
from __future__ import annotations

from itertools import product

from . import linalg as la
from .graded import AffineAlgebra, CompletedCoproduct, DegreeTensor

OUTER = range(-3, 4)
INNER = range(-12, 13)
R_INNER = range(-6, 7)  # two-tensor factors: one slot is always an outer degree

Terms = dict  # ((basis...), (degree...)) -> mpq


def _add(acc: Terms, key, v) -> None:
    if v != 0:
        s = acc.get(key, la.ZERO) + v
        if s == 0:
            acc.pop(key, None)
        else:
            acc[key] = s


def _inside(terms: Terms, window=OUTER) -> Terms:
    return {k: v for k, v in terms.items() if all(d in window for d in k[1]) and v != 0}


def _combine(*parts) -> Terms:
    out: Terms = {}
    for sign, t in parts:
        for k, v in t.items():
            _add(out, k, sign * v)
    return out


class Window:
    """Concrete images of a completed coproduct, cached per (generator, degree)."""

    def __init__(self, theta: CompletedCoproduct):
        self.theta = theta
        self._cache: dict = {}

    def image(self, k: int, i: int) -> Terms:
        if (k, i) not in self._cache:
            self._cache[(k, i)] = self.theta.apply(k, i).evaluate({}, INNER)
        return self._cache[(k, i)]


def _apply_slot(terms: Terms, slot: int, win: Window) -> Terms:
    out: Terms = {}
    for (b, d), v in terms.items():
        for (b2, d2), v2 in win.image(b[slot], d[slot]).items():
            _add(out, (b[:slot] + b2 + b[slot + 1:], d[:slot] + d2 + d[slot + 1:]), v * v2)
    return out


def _rows(c) -> list:
    """rows[a][s]: the nonzero (w, c[a, s, w]), so inner loops skip zero constants."""
    n = c.shape[0]
    return [[[(w, c[a, s, w]) for w in range(n) if c[a, s, w] != 0] for s in range(n)] for a in range(n)]


def _ad_slot(rows, a: int, i: int, terms: Terms, slot: int) -> Terms:
    out: Terms = {}
    row = rows[a]
    for (b, d), v in terms.items():
        for w, x in row[b[slot]]:
            _add(out, (b[:slot] + (w,) + b[slot + 1:], d[:slot] + (d[slot] + i,) + d[slot + 1:]), v * x)
    return out


def _ad_both(rows, a: int, i: int, terms: Terms) -> Terms:
    return _combine((1, _ad_slot(rows, a, i, terms, 0)), (1, _ad_slot(rows, a, i, terms, 1)))


def _swap12(terms: Terms) -> Terms:
    return {((b[1], b[0]) + b[2:], (d[1], d[0]) + d[2:]): v for (b, d), v in terms.items()}


def coidentity_defects(theta: CompletedCoproduct, first: bool = False) -> dict:
    """(id (x) T)T - (T (x) id)T - tau12 (id (x) T)T on every x_k t^i, i in the outer window."""
    win = Window(theta)
    out = {}
    for k, i in product(range(theta.dim), OUTER):
        top = win.image(k, i)
        second = _apply_slot(top, 1, win)
        d = _inside(_combine((1, second), (-1, _apply_slot(top, 0, win)), (-1, _swap12(second))))
        if d:
            out[(k, i)] = d
            if first:
                break
    return out


def skew_defects(theta: CompletedCoproduct) -> dict:
    win = Window(theta)
    out = {}
    for k, i in product(range(theta.dim), OUTER):
        t = win.image(k, i)
        d = _inside(_combine((1, t), (1, _swap12(t))))
        if d:
            out[(k, i)] = d
    return out


def cocycle_defects(g: AffineAlgebra, delta: CompletedCoproduct, first: bool = False) -> dict:
    rows = _rows(g.base.c)
    win = Window(delta)
    out = {}
    for a, b in product(range(g.dim), repeat=2):
        for i, j in product(OUTER, repeat=2):
            parts = [(x, win.image(k, i + j)) for k, x in rows[a][b]]
            d = _inside(_combine(*parts, (-1, _ad_both(rows, a, i, win.image(b, j))),
                                 (1, _ad_both(rows, b, j, win.image(a, i)))))
            if d:
                out[(a, b, i, j)] = d
                if first:
                    return out
    return out


def _slot_product(rows, r: Terms, placement: str) -> Terms:
    """Concrete r_{..} r_{..} with the product taken in one shared slot; r's factor on the left."""
    out: Terms = {}
    for ((p, q), (dp, dq)), v in r.items():
        for ((u, w), (du, dw)), x in r.items():
            if placement == "12.13":
                for z, y in rows[p][u]:
                    _add(out, ((z, q, w), (dp + du, dq, dw)), v * x * y)
            elif placement == "12.23":
                for z, y in rows[q][u]:
                    _add(out, ((p, z, w), (dp, dq + du, dw)), v * x * y)
            else:  # 13.23
                for z, y in rows[q][w]:
                    _add(out, ((p, u, z), (dp, du, dq + dw)), v * x * y)
    return out


def cybe_defects(g: AffineAlgebra, r: DegreeTensor) -> Terms:
    rt = r.evaluate({}, R_INNER)
    rows = _rows(g.base.c)
    return _inside(_combine(*((1, _slot_product(rows, rt, p)) for p in ("12.13", "12.23", "13.23"))))


def invariance_defects(g: AffineAlgebra, r: DegreeTensor) -> dict:
    rt = r.evaluate({}, R_INNER)
    rows = _rows(g.base.c)
    out = {}
    for a, i in product(range(g.dim), OUTER):
        d = _inside(_ad_both(rows, a, i, rt))
        if d:
            out[(a, i)] = d
    return out


def verdict(id_kind: str, **ctx) -> bool:
    """True when no defect component appears inside the outer window."""
    if id_kind == "LeibnizCo":
        return not coidentity_defects(ctx["coproduct"], first=True)
    if id_kind == "LieCo":
        th = ctx["coproduct"]
        return not skew_defects(th) and not coidentity_defects(th, first=True)
    if id_kind == "LieBi-cocycle":
        return not cocycle_defects(ctx["algebra"], ctx["cobracket"], first=True)
    if id_kind == "CYBE":
        return not cybe_defects(ctx["algebra"], ctx["r"])
    if id_kind == "Lie-invariance":
        return not invariance_defects(ctx["algebra"], ctx["r"])
    raise ValueError(f"unknown completed identity {id_kind!r}")


def same(first: CompletedCoproduct, second: CompletedCoproduct) -> bool:
    a, b = Window(first), Window(second)
    return all(_inside(_combine((1, a.image(k, i)), (-1, b.image(k, i)))) == {}
               for k, i in product(range(first.dim), OUTER))
