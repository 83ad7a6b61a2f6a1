"""Clifford superalgebras on subset monomials.

A monomial ``gamma_I`` is named by a bitmask: bit ``k - 1`` is set when
``k`` is in ``I`` (so ``{1, 2}`` is ``0b11``) and mask 0 is the unit ``e``.
The product is ``gamma_I gamma_J = (-1)**sigma(I, J) gamma_{I xor J}`` and
the graded commutator is ``f(I, J) gamma_{I xor J}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .nlie import BracketTable
from .scalar import I as IMAG
from .scalar import ONE, ZERO, GaussScalar, as_scalar, pow_two_i
from .superspace import BasisSignature

__all__ = [
    "MAX_DIM",
    "CliffordElement",
    "mask_of",
    "elements_of",
    "sigma",
    "mono_product",
    "f_coeff",
    "sigma_table",
    "f_table",
    "commutator",
    "graded_commutator_via_product",
    "supertrace",
    "ternary_bracket",
    "ternary_basis",
    "proposition_bracket",
    "proposition_table",
    "export_basis",
    "monomial_name",
    "export",
    "export_supertrace",
    "matrix_of",
    "matrix_rep",
    "grading_operator",
    "matrix_supertrace",
]

MAX_DIM = 16
LIE_EXPORT_MAX = 6
TERNARY_EXPORT_MAX = 4
MATRIX_MAX = 10


def _check_dim(n: int) -> None:
    if not 0 <= n <= MAX_DIM:
        raise ValueError(f"Clifford dimension must be in 0..{MAX_DIM}, got {n}")


def _check_even(n: int) -> None:
    _check_dim(n)
    if n % 2:
        raise ValueError(f"the spinor supertrace needs an even number of generators, got n={n}")


def mask_of(elements) -> int:
    mask = 0
    for k in elements:
        if not 1 <= k <= MAX_DIM:
            raise ValueError(f"generator index {k} out of range")
        mask |= 1 << (k - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    return tuple(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def sigma(I: int, J: int) -> int:
    """Sum over j in J of the number of elements of I greater than j."""
    total = 0
    while J:
        low = J & -J
        total += (I & ~((low << 1) - 1)).bit_count()
        J ^= low
    return total


def mono_product(I: int, J: int) -> tuple[int, int]:
    return (-1 if sigma(I, J) & 1 else 1), I ^ J


def f_coeff(I: int, J: int) -> int:
    if not (I & J).bit_count() & 1:
        return 0
    return -2 if sigma(I, J) & 1 else 2


def _popcounts(size: int) -> np.ndarray:
    pc = np.zeros(size, dtype=np.int8)
    for b in range(max(size.bit_length() - 1, 0)):
        pc += ((np.arange(size) >> b) & 1).astype(np.int8)
    return pc


def sigma_table(n: int) -> np.ndarray:
    """``out[I, J] = sigma(I, J)`` for all pairs of monomials of ``C_n``."""
    _check_dim(n)
    size = 1 << n
    masks = np.arange(size)
    pc = _popcounts(size)
    out = np.zeros((size, size), dtype=np.int16)
    for j in range(n):
        above = pc[masks >> (j + 1)].astype(np.int16)
        has_j = ((masks >> j) & 1).astype(np.int16)
        out += np.outer(above, has_j)
    return out


def f_table(n: int, sig: np.ndarray | None = None) -> np.ndarray:
    """``out[I, J] = f(I, J)`` for all pairs of monomials of ``C_n``."""
    if sig is None:
        sig = sigma_table(n)
    size = 1 << n
    masks = np.arange(size)
    pc = _popcounts(size)
    meet_odd = pc[masks[:, None] & masks[None, :]] & 1
    sign = 1 - 2 * (sig & 1).astype(np.int8)
    return (2 * sign * meet_odd).astype(np.int8)


def _par(mask: int) -> int:
    return mask.bit_count() & 1


@dataclass(frozen=True)
class CliffordElement:
    """Sparse linear combination of monomials in ``C_n``."""

    dim: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_dim(self.dim)
        full = (1 << self.dim) - 1
        clean = {}
        for mask, c in self.terms.items():
            if mask & ~full or mask < 0:
                raise ValueError(f"monomial mask {mask:#b} outside C_{self.dim}")
            c = as_scalar(c)
            if c:
                clean[mask] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, n: int, I, coeff=ONE) -> "CliffordElement":
        mask = I if isinstance(I, int) else mask_of(I)
        return cls(n, {mask: coeff})

    @classmethod
    def zero(cls, n: int) -> "CliffordElement":
        return cls(n, {})

    def __bool__(self):
        return bool(self.terms)

    def parity(self):
        """0 or 1 for homogeneous nonzero elements, ``None`` otherwise."""
        ps = {_par(m) for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def _same(self, other):
        if not isinstance(other, CliffordElement) or other.dim != self.dim:
            raise ValueError("Clifford elements of different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return CliffordElement(self.dim, out)

    def __neg__(self):
        return CliffordElement(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "CliffordElement":
        s = as_scalar(s)
        return CliffordElement(self.dim, {m: s * c for m, c in self.terms.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        """Associative Clifford product; scalars act by scaling."""
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        self._same(other)
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                sgn, k = mono_product(a, b)
                out[k] = out.get(k, ZERO) + (x * y if sgn > 0 else -(x * y))
        return CliffordElement(self.dim, out)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{monomial_name(m, self.dim)}" for m, c in self.terms.items())


def commutator(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """Bilinear extension of ``[gamma_I, gamma_J] = f(I, J) gamma_{I xor J}``."""
    x._same(y)
    out = {}
    for a, p in x.terms.items():
        for b, q in y.terms.items():
            f = f_coeff(a, b)
            if f:
                k = a ^ b
                out[k] = out.get(k, ZERO) + p * q * f
    return CliffordElement(x.dim, out)


def graded_commutator_via_product(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """``xy - (-1)**(|x||y|) yx`` for homogeneous ``x`` and ``y``."""
    px, py = x.parity(), y.parity()
    if not x or not y:
        return CliffordElement.zero(x.dim)
    if px is None or py is None:
        raise ValueError("graded commutator via products needs homogeneous arguments")
    yx = y * x
    return x * y - yx if not (px & py) else x * y + yx


def _supertrace_mono(n: int, mask: int) -> GaussScalar:
    return pow_two_i(n // 2) if mask == (1 << n) - 1 else ZERO


def supertrace(x: CliffordElement) -> GaussScalar:
    """Spinor supertrace: ``(2i)**m`` times the coefficient of ``gamma_N``, ``n = 2m``."""
    _check_even(x.dim)
    c = x.terms.get((1 << x.dim) - 1)
    return c * pow_two_i(x.dim // 2) if c else ZERO


def ternary_basis(n: int, I: int, J: int, K: int) -> dict:
    """``[gamma_I, gamma_J, gamma_K]`` from the induced-bracket formula, as ``{mask: scalar}``."""
    out = {}

    def add(coef, mask):
        if coef:
            s = out.get(mask, ZERO) + coef
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)

    sI, sJ, sK = _supertrace_mono(n, I), _supertrace_mono(n, J), _supertrace_mono(n, K)
    pI, pJ, pK = _par(I), _par(J), _par(K)
    if sI:
        add(sI * f_coeff(J, K), J ^ K)
    if sJ:
        add(sJ * (-f_coeff(I, K) if not (pI & pJ) else f_coeff(I, K)), I ^ K)
    if sK:
        add(sK * (-f_coeff(I, J) if (pK & (pI ^ pJ)) else f_coeff(I, J)), I ^ J)
    return out


def ternary_bracket(x: CliffordElement, y: CliffordElement, z: CliffordElement) -> CliffordElement:
    """Trilinear induced bracket on ``C_n`` (n even)."""
    _check_even(x.dim)
    x._same(y)
    x._same(z)
    n = x.dim
    out = {}
    for (a, p), (b, q), (c, r) in itertools.product(x.terms.items(), y.terms.items(), z.terms.items()):
        val = ternary_basis(n, a, b, c)
        if val:
            coef = p * q * r
            for k, v in val.items():
                out[k] = out.get(k, ZERO) + coef * v
    return CliffordElement(n, out)


def proposition_bracket(n: int, I: int, J: int, K: int, *, k_slot_only: bool = False) -> dict:
    """Closed form of the ternary bracket on monomials.

    The bracket is nonzero only when exactly one argument is ``gamma_N``;
    it is then ``(2i)**m`` times the binary bracket of the other two, with
    a minus sign when ``gamma_N`` sits in the middle (moving an even element
    past one neighbour costs -1).  ``k_slot_only=True`` keeps only the case
    with ``gamma_N`` last and returns 0 otherwise; that partial table
    disagrees with the trilinear bracket whenever ``gamma_N`` comes first or
    second.
    """
    _check_even(n)
    full = (1 << n) - 1
    hits = (I == full) + (J == full) + (K == full)
    if hits != 1:
        return {}
    scale = pow_two_i(n // 2)
    if K == full:
        f, mask = f_coeff(I, J), I ^ J
    elif k_slot_only:
        return {}
    elif I == full:
        f, mask = f_coeff(J, K), J ^ K
    else:
        f, mask = -f_coeff(I, K), I ^ K
    return {mask: scale * f} if f else {}


def proposition_table(n: int, *, k_slot_only: bool = False) -> dict:
    """``{(I, J, K): CliffordElement}`` over all ``8**n`` basis triples."""
    _check_even(n)
    size = 1 << n
    return {
        (I, J, K): CliffordElement(n, proposition_bracket(n, I, J, K, k_slot_only=k_slot_only))
        for I in range(size)
        for J in range(size)
        for K in range(size)
    }


# ---------------------------------------------------------------------------
# bridge to BracketTable


def export_basis(n: int) -> list[int]:
    """Monomial masks ordered even-degree first, then by mask value."""
    _check_dim(n)
    masks = range(1 << n)
    return [m for m in masks if not _par(m)] + [m for m in masks if _par(m)]


def monomial_name(mask: int, n: int) -> str:
    if not mask:
        return "e"
    els = elements_of(mask)
    sep = "_" if n >= 10 else ""
    return "g" + sep.join(str(k) for k in els)


def export(n: int, which: str = "lie") -> BracketTable:
    """``C_n`` as a binary Lie superalgebra (``"lie"``) or its induced
    3-Lie superalgebra (``"ternary"``), as a BracketTable."""
    if which not in ("lie", "ternary"):
        raise ValueError(f"unknown export kind {which!r}")
    limit = LIE_EXPORT_MAX if which == "lie" else TERNARY_EXPORT_MAX
    if n > limit:
        raise ValueError(f"{which} export is limited to n <= {limit}, got n={n}")
    if which == "ternary":
        _check_even(n)
    basis = export_basis(n)
    pos = {m: i for i, m in enumerate(basis)}
    n_even = 1 << n - 1 if n else 1
    sig = BasisSignature(n_even, len(basis) - n_even)
    names = tuple(monomial_name(m, n) for m in basis)
    entries = {}
    arity = 2 if which == "lie" else 3
    for key in itertools.combinations_with_replacement(range(len(basis)), arity):
        masks = [basis[i] for i in key]
        if which == "lie":
            f = f_coeff(*masks)
            val = {pos[masks[0] ^ masks[1]]: GaussScalar(f)} if f else {}
        else:
            val = {pos[k]: c for k, c in ternary_basis(n, *masks).items()}
        if val:
            entries[key] = val
    return BracketTable(arity, sig, entries, names)


def export_supertrace(n: int):
    """The spinor supertrace as a functional on the exported basis."""
    from .nlie import LinearFunctional

    _check_even(n)
    return LinearFunctional(tuple(_supertrace_mono(n, m) for m in export_basis(n)))


# ---------------------------------------------------------------------------
# spinor matrices


def _kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _matmul(a, b):
    cols = list(zip(*b))
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in cols])
    return out


def _eye(k):
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


_S1 = [[ZERO, ONE], [ONE, ZERO]]
_S2 = [[ZERO, -IMAG], [IMAG, ZERO]]
_S3 = [[ONE, ZERO], [ZERO, -ONE]]


def _string(m: int, j: int, middle):
    mat = [[ONE]]
    for pos in range(m):
        mat = _kron(mat, _S3 if pos < j else middle if pos == j else _eye(2))
    return mat


def _check_matrix(n: int) -> None:
    _check_even(n)
    if n > MATRIX_MAX:
        raise ValueError(f"spinor matrices are limited to n <= {MATRIX_MAX}, got n={n}")


def matrix_rep(n: int, I) -> list:
    """``2**m x 2**m`` spinor matrix of ``gamma_I``.

    ``gamma_{2j-1}`` and ``gamma_{2j}`` are ``sigma3`` strings ending in
    ``sigma1`` / ``sigma2`` at tensor factor ``j``; the plain tensor
    factors would commute rather than anticommute.
    """
    _check_matrix(n)
    mask = I if isinstance(I, int) else mask_of(I)
    m = n // 2
    mat = _eye(1 << m)
    for k in elements_of(mask):
        j, odd = divmod(k - 1, 2)
        mat = _matmul(mat, _string(m, j, _S2 if odd else _S1))
    return mat


def grading_operator(n: int) -> list:
    _check_matrix(n)
    mat = [[ONE]]
    for _ in range(n // 2):
        mat = _kron(mat, _S3)
    return mat


def matrix_of(x: CliffordElement) -> list:
    size = 1 << (x.dim // 2)
    out = [[ZERO] * size for _ in range(size)]
    for mask, c in x.terms.items():
        mm = matrix_rep(x.dim, mask)
        for i in range(size):
            for j in range(size):
                if mm[i][j]:
                    out[i][j] = out[i][j] + c * mm[i][j]
    return out


def matrix_supertrace(X) -> GaussScalar:
    """``trace(Gamma X)`` with ``Gamma`` the tensor power of ``sigma3``."""
    size = len(X)
    n = 2 * (size.bit_length() - 1)
    G = grading_operator(n)
    return sum((G[i][i] * X[i][i] for i in range(size)), ZERO)
