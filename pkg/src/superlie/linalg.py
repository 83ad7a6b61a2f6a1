"""Exact row reduction over the Gaussian rationals, and subspaces built on it."""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import ONE, ZERO, GaussScalar, as_scalar

Vector = tuple  # tuple[GaussScalar, ...]


def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim


def unit_vector(dim: int, idx: int) -> Vector:
    v = [ZERO] * dim
    v[idx] = ONE
    return tuple(v)


def as_vector(values: Iterable) -> Vector:
    return tuple(as_scalar(x) for x in values)


def rref(rows: Sequence[Sequence[GaussScalar]], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped, pivots
    are normalised to one.
    """
    m = [list(r) for r in rows if any(r)]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != ONE:
            inv = ONE / piv
            m[r] = [x * inv if x else x for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence[GaussScalar]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[GaussScalar]], ncols: int) -> list[Vector]:
    """Basis of ``{v : row . v = 0 for every row}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def mat_mul(a, b):
    cols = list(zip(*b))
    return [tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in cols) for row in a]


def vec_mat(v, a) -> Vector:
    """Row vector times matrix."""
    if not a:
        return ()
    ncols = len(a[0])
    out = [ZERO] * ncols
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] = out[j] + x * y
    return tuple(out)


def identity(n: int):
    return [unit_vector(n, i) for i in range(n)]


def inverse(a):
    """Inverse of a square matrix; raises ``ValueError`` if singular."""
    n = len(a)
    aug = [tuple(row) + unit_vector(n, i) for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


class Subspace:
    """Span of coordinate vectors, stored in its unique reduced echelon basis."""

    __slots__ = ("dim", "generators", "reduced", "pivots")

    def __init__(self, dim: int, generators: Iterable[Sequence] = ()):
        gens = [as_vector(g) for g in generators]
        for g in gens:
            if len(g) != dim:
                raise ValueError(f"generator of length {len(g)} in a space of dimension {dim}")
        self.dim = dim
        self.generators = gens
        self.reduced, self.pivots = rref(gens, dim)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim)

    @classmethod
    def whole(cls, dim: int) -> "Subspace":
        return cls(dim, identity(dim))

    @property
    def basis(self) -> list[Vector]:
        return list(self.reduced)

    def __len__(self):
        return len(self.reduced)

    @property
    def rank(self) -> int:
        return len(self.reduced)

    def is_zero(self) -> bool:
        return not self.reduced

    def contains(self, v: Sequence) -> bool:
        w = list(v)
        for row, pc in zip(self.reduced, self.pivots):
            f = w[pc]
            if f:
                w = [x - f * y if y else x for x, y in zip(w, row)]
        return not any(w)

    def __contains__(self, v):
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.reduced)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.reduced == other.reduced

    def __hash__(self):
        return hash((self.dim, tuple(self.reduced)))

    def parity_split(self, even_count: int) -> tuple[int, int]:
        """(even, odd) dimensions of a graded subspace, via projections."""
        ev = rank([g[:even_count] for g in self.reduced])
        od = rank([g[even_count:] for g in self.reduced])
        return ev, od

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"
