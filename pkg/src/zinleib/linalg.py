"""Exact rational scalars, dense arrays and Gaussian elimination.

Scalars are ``gmpy2.mpq`` values (always reduced, positive denominator).
Vectors, matrices and rank-3 tensors are numpy arrays of dtype ``object``
holding such scalars, so numpy's contraction routines stay exact.
"""
from __future__ import annotations

from fractions import Fraction
from operator import itemgetter
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import ContractViolation, DegenerateForm

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def q(x) -> mpq:
    """Coerce an int, Fraction, mpq or "p/q" string to an exact scalar."""
    if isinstance(x, bool):
        raise ContractViolation("booleans are not scalars")
    if isinstance(x, (int, type(ZERO))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, np.integer):
        return mpq(int(x))
    raise ContractViolation(f"not an exact scalar: {x!r}")


def parse_rational(text: str) -> mpq:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ContractViolation(f"malformed rational {text!r}") from None
    if d <= 0:
        raise ContractViolation(f"malformed rational {text!r}: denominator must be positive")
    return mpq(n, d)


def fmt(x) -> str:
    """Canonical text form: "p/q" or "p"."""
    return str(mpq(x))


def array(data, ndim: int | None = None) -> np.ndarray:
    """Build an object array of exact scalars from nested sequences."""
    raw = np.array(data, dtype=object)
    if ndim is not None and raw.ndim != ndim:
        raise ContractViolation(f"expected a rank-{ndim} array, got rank {raw.ndim}")
    out = np.empty(raw.shape, dtype=object)
    for idx in np.ndindex(raw.shape):
        out[idx] = q(raw[idx])
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = ONE
    return out


def unit(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def normalize(a) -> np.ndarray:
    """Re-wrap every entry as mpq (numpy sums over empty axes yield int 0)."""
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        out = np.empty((), dtype=object)
        out[()] = mpq(a[()])
        return out
    return _as_q(a).astype(object) if a.size else zeros(a.shape)


_as_q = np.frompyfunc(mpq, 1, 1)


def is_zero(a) -> bool:
    a = np.asarray(a, dtype=object)
    return a.size == 0 or not np.any(a != 0)


def nonzero_entries(a) -> list[tuple[tuple[int, ...], mpq]]:
    a = np.asarray(a, dtype=object)
    return [(idx, mpq(a[idx])) for idx in np.ndindex(a.shape) if a[idx] != 0]


def equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and is_zero(a - b)


def _rref(m: np.ndarray) -> tuple[list[list[mpq]], list[int]]:
    """Reduced row echelon form; pivot = leftmost column, smallest row index."""
    rows = [[mpq(x) for x in row] for row in np.asarray(m, dtype=object)]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ContractViolation("rank expects a matrix")
    if m.size == 0:
        return 0
    return len(_rref(m)[1])


def solve(m, rhs) -> np.ndarray | None:
    """One exact solution of m x = rhs (free variables zero), or None."""
    m = np.asarray(m, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if m.ndim != 2 or rhs.ndim != 1 or m.shape[0] != rhs.shape[0]:
        raise ContractViolation(f"solve: shapes {m.shape} and {rhs.shape} do not match")
    n_rows, n_cols = m.shape
    if n_rows == 0:
        return zeros(n_cols)
    aug = np.concatenate([m, rhs.reshape(-1, 1)], axis=1)
    rows, pivots = _rref(aug)
    if n_cols in pivots:
        return None
    x = zeros(n_cols)
    for r, c in enumerate(pivots):
        x[c] = rows[r][n_cols]
    return x


def kernel(m) -> list[np.ndarray]:
    """Basis of the right null space, one vector per free column."""
    m = np.asarray(m, dtype=object)
    n_cols = m.shape[1]
    if m.shape[0] == 0:
        return [unit(n_cols, j) for j in range(n_cols)]
    rows, pivots = _rref(m)
    basis = []
    for free in (j for j in range(n_cols) if j not in pivots):
        v = zeros(n_cols)
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(v)
    return basis


def inverse(m) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ContractViolation("inverse expects a square matrix")
    rows, pivots = _rref(np.concatenate([m, identity(n)], axis=1))
    if sum(1 for p in pivots if p < n) < n:
        raise DegenerateForm(n - rank(m), "matrix")
    return array([row[n:] for row in rows]).reshape(n, n)


def dual_basis(form) -> list[np.ndarray]:
    """Vectors f_j with form(f_j, e_i) = delta_ij, as coordinate vectors.

    With Gram matrix G, form(f_j, e_i) = (f_j^T G)_i, so the f_j are the rows
    of G^{-1}.
    """
    g = np.asarray(form, dtype=object)
    n = g.shape[0]
    if g.ndim != 2 or g.shape != (n, n):
        raise ContractViolation("dual_basis expects a square Gram matrix")
    k = n - rank(g)
    if k:
        raise DegenerateForm(k)
    inv = inverse(g)
    return [normalize(inv[j, :]) for j in range(n)]


def bilinear(gram, x, y):
    return mpq(np.asarray(x, dtype=object) @ np.asarray(gram, dtype=object) @ np.asarray(y, dtype=object))


def kron(a, b) -> np.ndarray:
    """Kronecker product with left-major flattening, exact."""
    return normalize(np.kron(np.asarray(a, dtype=object), np.asarray(b, dtype=object)))


def vec_str(v: Sequence, labels: Iterable[str] | None = None) -> str:
    labels = list(labels) if labels is not None else [f"e{i + 1}" for i in range(len(v))]
    parts = [f"{fmt(c)}*{labels[i]}" for i, c in enumerate(v) if c != 0]
    return " + ".join(parts) if parts else "0"


def _sparse(a: np.ndarray) -> list:
    if a.ndim == 0:
        return [((), a[()])] if a[()] != 0 else []
    nz = (a != 0).nonzero()
    return list(zip(zip(*(ix.tolist() for ix in nz)), a[nz].tolist()))


def _getter(positions: list):
    """Tuple-valued projection onto the given positions."""
    if not positions:
        return lambda t: ()
    if len(positions) == 1:
        p = positions[0]
        return lambda t: (t[p],)
    return itemgetter(*positions)


def _contract_items(spec: str, ops) -> tuple[tuple, dict]:
    """Output shape and {output index: value} of an einsum, touching nonzero entries only."""
    ins, out = spec.replace(" ", "").split("->")
    subs = ins.split(",")
    arrays = [np.asarray(o, dtype=object) for o in ops]
    sizes = {}
    for sub, a in zip(subs, arrays):
        sizes.update(zip(sub, a.shape))
    shape = tuple(sizes[ch] for ch in out)
    if any(len(set(sub)) != len(sub) for sub in subs):
        return shape, dict(_sparse(np.einsum(spec, *arrays)))
    cur_sub, cur = subs[0], _sparse(arrays[0])
    for pos in range(1, len(subs)):
        nxt_sub, nxt = subs[pos], _sparse(arrays[pos])
        later = set(out).union(*subs[pos + 1:])
        keep = [ch for ch in dict.fromkeys(cur_sub + nxt_sub) if ch in later]
        shared = [ch for ch in nxt_sub if ch in cur_sub]
        cur_key = _getter([cur_sub.index(ch) for ch in shared])
        nxt_key = _getter([nxt_sub.index(ch) for ch in shared])
        groups: dict = {}
        for idx, v in nxt:
            groups.setdefault(nxt_key(idx), []).append((idx, v))
        width = len(cur_sub)
        out_key = _getter([cur_sub.index(ch) if ch in cur_sub else width + nxt_sub.index(ch) for ch in keep])
        acc: dict = {}
        for idx, v in cur:
            for idx2, w in groups.get(cur_key(idx), ()):
                key = out_key(idx + idx2)
                acc[key] = acc.get(key, ZERO) + v * w
        cur_sub, cur = "".join(keep), list(acc.items())
    order = _getter([cur_sub.index(ch) for ch in out])
    acc = {}
    for idx, v in cur:
        key = order(idx)
        acc[key] = acc.get(key, ZERO) + v
    return shape, acc


def _dense(shape: tuple, items: dict) -> np.ndarray:
    result = zeros(shape)
    for key, v in items.items():
        if v != 0:
            result[key] = v
    return result


def contract(spec: str, *ops) -> np.ndarray:
    """Exact einsum over the nonzero entries only; operands are contracted left to right.

    Structure tensors here are mostly zeros, so this beats numpy's dense object
    einsum by orders of magnitude. Subscripts repeated inside one operand fall
    back to numpy.
    """
    return _dense(*_contract_items(spec, ops))


def contract_sum(*terms) -> np.ndarray:
    """sum of coef * einsum(spec, *ops) over terms (coef, spec, *ops), all with one output shape."""
    shape, total = None, {}
    for coef, spec, *ops in terms:
        sh, items = _contract_items(spec, ops)
        if shape is None:
            shape = sh
        elif sh != shape:
            raise ContractViolation(f"terms have different shapes {shape} and {sh}")
        for key, v in items.items():
            total[key] = total.get(key, ZERO) + coef * v
    return _dense(shape, total)
