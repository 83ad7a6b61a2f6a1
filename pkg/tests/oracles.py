"""Brute-force reference implementations used only by the tests.

Nothing here calls canonical_order or the table's own lookup: the full
bracket is rebuilt on every ordered tuple from permutation signs.
"""

import itertools
from functools import lru_cache

from superlie.classify import grid_search
from superlie.clifford import export
from superlie.linalg import rank
from superlie.nlie import BracketTable
from superlie.scalar import ZERO, GaussScalar
from superlie.superspace import BasisSignature


def perm_sign(par, perm):
    s = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            s *= 1 if par[perm[i]] & par[perm[j]] else -1
    return s


def full_table(T):
    """{ordered tuple: dense vector} for every ordered basis tuple."""
    par = [0] * T.sig.even_count + [1] * T.sig.odd_count
    dim, n = T.dim, T.arity
    zero = (ZERO,) * dim
    out = {}
    for t in itertools.product(range(dim), repeat=n):
        order = sorted(range(n), key=lambda i: (t[i], i))
        key = tuple(t[i] for i in order)
        tpar = [par[a] for a in t]
        stabil = [
            p for p in itertools.permutations(range(n)) if all(t[p[i]] == t[i] for i in range(n))
        ]
        if any(perm_sign(tpar, p) == -1 for p in stabil):
            out[t] = zero
            continue
        # bracket(t) = sign * bracket(sorted t), sign from moving t into order
        s = perm_sign(tpar, order)
        v = T.vector(key)
        out[t] = tuple(c * s for c in v)
    return out


def full_bracket(T, full, vecs):
    dim = T.dim
    acc = [ZERO] * dim
    supports = [[(k, c) for k, c in enumerate(v) if c] for v in vecs]
    for combo in itertools.product(*supports):
        val = full[tuple(k for k, _ in combo)]
        coef = 1
        for _, c in combo:
            coef = c * coef
        for h in range(dim):
            if val[h]:
                acc[h] = acc[h] + coef * val[h]
    return tuple(acc)


def unit(dim, k):
    v = [ZERO] * dim
    v[k] = 1 + ZERO
    return tuple(v)


def filippov_ok(T):
    """Graded Filippov identity on every ordered pair of basis tuples."""
    full = full_table(T)
    par = [0] * T.sig.even_count + [1] * T.sig.odd_count
    dim, n = T.dim, T.arity
    for y in itertools.product(range(dim), repeat=n - 1):
        py = sum(par[a] for a in y) % 2
        for x in itertools.product(range(dim), repeat=n):
            inner = full[x]
            lhs = full_bracket(T, full, [unit(dim, a) for a in y] + [inner])
            rhs = [ZERO] * dim
            prefix = 0
            for i, xi in enumerate(x):
                d = full_bracket(T, full, [unit(dim, a) for a in y] + [unit(dim, xi)])
                args = [unit(dim, a) for a in x]
                args[i] = d
                term = full_bracket(T, full, args)
                s = -1 if prefix * py % 2 else 1
                rhs = [r + t * s for r, t in zip(rhs, term)]
                prefix += par[xi]
            if tuple(rhs) != lhs:
                return False
    return True


@lru_cache(maxsize=None)
def zoo():
    """Verified n-Lie superalgebras used by property tests: {label: table}."""
    out = {}
    for sig in [(0, 2), (2, 1), (1, 2), (3, 0)]:
        grid = [0, 1, -1] if sig != (1, 2) else [0, 1]
        for k, T in enumerate(grid_search(BasisSignature(*sig), 3, grid)):
            if T.entries:
                out[f"grid{sig[0]}{sig[1]}_{k}"] = T
    out["clifford_lie2"] = export(2, "lie")
    out["clifford_ternary2"] = export(2, "ternary")
    out["clifford_lie4"] = export(4, "lie")
    out["clifford_lie3"] = export(3, "lie")
    out["abelian11"] = BracketTable.abelian(BasisSignature(1, 1))
    return out


def random_invertible(rng, k):
    while True:
        M = [[GaussScalar(rng.randint(-2, 2), rng.choice([0, 0, 1])) for _ in range(k)] for _ in range(k)]
        if rank(M) == k:
            return M
