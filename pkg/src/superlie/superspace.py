"""Z2-graded index bookkeeping.

Basis indices follow one global convention: for signature ``m|n`` the
indices ``0..m-1`` are even and ``m..m+n-1`` are odd.  Parities are plain
ints in {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

__all__ = [
    "EVEN",
    "ODD",
    "BasisSignature",
    "CanonicalForm",
    "parity_of_index",
    "prefix_parity",
    "canonical_order",
    "swap_sign",
]

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class BasisSignature:
    even_count: int
    odd_count: int

    def __post_init__(self):
        if self.even_count < 0 or self.odd_count < 0:
            raise ValueError("signature counts must be non-negative")

    @property
    def dim(self) -> int:
        return self.even_count + self.odd_count

    def parity(self, idx: int) -> int:
        return parity_of_index(self, idx)

    def parities(self) -> tuple[int, ...]:
        return (EVEN,) * self.even_count + (ODD,) * self.odd_count

    def default_names(self) -> tuple[str, ...]:
        return tuple(f"e{k + 1}" for k in range(self.even_count)) + tuple(
            f"f{k + 1}" for k in range(self.odd_count)
        )

    def __str__(self):
        return f"{self.even_count}|{self.odd_count}"


def parity_of_index(sig: BasisSignature, idx: int) -> int:
    if not 0 <= idx < sig.even_count + sig.odd_count:
        raise IndexError(f"basis index {idx} out of range for signature {sig}")
    return EVEN if idx < sig.even_count else ODD


def prefix_parity(parities: Sequence[int], i: int) -> int:
    """Mod-2 sum of the first ``i`` parities (``i == 0`` gives even)."""
    if not 0 <= i <= len(parities):
        raise IndexError(f"prefix length {i} out of range")
    return sum(parities[:i]) & 1


def swap_sign(pa: int, pb: int) -> int:
    """Factor picked up by exchanging neighbours of parities ``pa`` and ``pb``."""
    return 1 if pa & pb else -1


class CanonicalForm(NamedTuple):
    tuple: tuple[int, ...]
    sign: int
    forced_zero: bool


def canonical_order(indices: Sequence[int], sig: BasisSignature) -> CanonicalForm:
    """Sort ``indices`` by adjacent transpositions, tracking the graded sign.

    Each exchange of neighbours ``a, b`` contributes ``-(-1)**(|a||b|)``.
    The bracket is forced to vanish exactly when an even index repeats:
    exchanging two equal even neighbours would make it equal to its own
    negative.
    """
    m = sig.even_count
    dim = m + sig.odd_count
    t = list(indices)
    for a in t:
        if not 0 <= a < dim:
            raise IndexError(f"basis index {a} out of range for signature {sig}")
    sign = 1
    k = len(t)
    for i in range(k):
        for j in range(k - 1 - i):
            a, b = t[j], t[j + 1]
            if a > b:
                t[j], t[j + 1] = b, a
                if a < m or b < m:
                    sign = -sign
    forced = any(t[j] == t[j + 1] and t[j] < m for j in range(k - 1))
    return CanonicalForm(tuple(t), sign, forced)
