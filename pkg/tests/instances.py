"""Shared, cached test instances: corpus objects and seeded random generators."""
from __future__ import annotations

import itertools
import random
from functools import cache

import numpy as np

from zinleib import linalg as la
from zinleib.algebra import BilinForm, FinAlgebra
from zinleib.io import corpus_load
from zinleib.yang_baxter import lybe_defect

SEED = 20240611

# small Leibniz algebras beyond the corpus; each is re-verified on construction
EXTRA_LEIBNIZ = {
    "left_dim2": (2, {(1, 2): {2: 1}}),
    "lie_dim2": (2, {(1, 2): {2: 1}, (2, 1): {2: -1}}),
    "heisenberg": (3, {(1, 2): {3: 1}, (2, 1): {3: -1}}),
    "square_dim3": (3, {(1, 1): {3: 1}}),
    "two_squares_dim3": (3, {(1, 1): {3: 1}, (2, 2): {3: 1}}),
    "filiform_dim3": (3, {(1, 1): {2: 1}, (1, 2): {3: 1}}),
    "sl2": (3, {(1, 2): {2: 2}, (2, 1): {2: -2}, (1, 3): {3: -2}, (3, 1): {3: 2}, (2, 3): {1: 1}, (3, 2): {1: -1}}),
    "mixed_dim3": (3, {(1, 1): {3: 1}, (1, 2): {3: 1}}),
    "split_dim3": (3, {(2, 1): {1: 1}, (2, 3): {3: 1}}),
}


@cache
def load(name: str):
    return corpus_load(name).checked()


@cache
def leibniz_pool() -> tuple[tuple[str, FinAlgebra], ...]:
    pool = [(n, load(n)) for n in ("leibniz_dim2", "leibniz_dim3", "leibniz_x_dim2")]
    pool += [(n, FinAlgebra.from_table(d, t, "Leibniz")) for n, (d, t) in EXTRA_LEIBNIZ.items()]
    return tuple(pool)


def symmetric_candidates(n: int, coeffs=(-1, 0, 1)) -> np.ndarray:
    """All symmetric n x n integer matrices with entries in coeffs, stacked (int64)."""
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    vals = np.array(list(itertools.product(coeffs, repeat=len(slots))), dtype=np.int64)
    out = np.zeros((len(vals), n, n), dtype=np.int64)
    for col, (i, j) in enumerate(slots):
        out[:, i, j] = vals[:, col]
        out[:, j, i] = vals[:, col]
    return out


def _integer_lybe(c: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Batched LYBE defect in machine integers: a fast prefilter, exact for these small entries."""
    return (np.einsum("nab,ncd,acw->nwbd", R, R, c) - np.einsum("nab,ncd,bcw->nawd", R, R, c)
            - np.einsum("nab,ncd,adw->ncwb", R, R, c) + np.einsum("nab,ncd,bdw->ncaw", R, R, c))


@cache
def symmetric_lybe_solutions() -> tuple:
    """Every (algebra name, B, r) with r symmetric, entries in {-1, 0, 1}, solving the LYBE.

    Candidates are screened in int64 and each hit is confirmed by the exact checker.
    """
    out = []
    for name, B in leibniz_pool():
        R = symmetric_candidates(B.dim)
        assert all(x.denominator == 1 for x in B.c.flat)
        c = np.array(B.c.tolist(), dtype=np.int64)
        hits = np.flatnonzero(~np.any(_integer_lybe(c, R) != 0, axis=(1, 2, 3)))
        for h in hits:
            r = la.array(R[h].tolist())
            assert la.is_zero(lybe_defect(B, r))
            out.append((name, B, r))
    return tuple(out)


@cache
def triangular_sample(count: int = 110) -> tuple:
    """A seeded sample of nonzero solutions; every nonzero dim-2 solution plus random dim-3 ones."""
    sols = [s for s in symmetric_lybe_solutions() if not la.is_zero(s[2])]
    small = [s for s in sols if s[1].dim == 2]
    big = [s for s in sols if s[1].dim == 3]
    rng = random.Random(SEED)
    return tuple(small + rng.sample(big, count - len(small)))


def random_rational_tensor(rng: random.Random, shape, density=0.4, lo=-2, hi=2) -> np.ndarray:
    t = la.zeros(shape)
    for idx in np.ndindex(*shape):
        if rng.random() < density:
            t[idx] = la.q(rng.randint(lo, hi))
    return t


def random_symmetric_form(rng: random.Random, n: int, lo=-2, hi=2) -> BilinForm:
    """Symmetric and nondegenerate; redrawn until the kernel is trivial."""
    while True:
        g = la.zeros((n, n))
        for i in range(n):
            for j in range(i, n):
                g[i, j] = g[j, i] = la.q(rng.randint(lo, hi))
        form = BilinForm(g)
        if form.kernel_dim() == 0:
            return form
