"""n-ary superalgebras given by structure constants.

A :class:`BracketTable` stores only brackets of basis elements whose index
tuple is non-decreasing; every other ordering is recovered through
:func:`~superlie.superspace.canonical_order`.  Coefficient vectors are kept
sparse internally (``{index: scalar}``) and exposed as dense tuples.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .linalg import Subspace, inverse, nullspace, unit_vector
from .scalar import ONE, ZERO, GaussScalar, as_scalar
from .superspace import BasisSignature, canonical_order, prefix_parity

__all__ = [
    "BracketTable",
    "LinearFunctional",
    "AxiomReport",
    "Witness",
    "SeriesResult",
    "SupertraceError",
    "bracket_basis",
    "bracket",
    "verify_axioms",
    "is_supertrace",
    "supertrace_space",
    "induce",
    "subspace_bracket",
    "full_bracket_span",
    "is_subalgebra",
    "is_ideal",
    "series",
    "change_of_basis",
]

Sparse = dict  # dict[int, GaussScalar], no zero values


def _sparse(value, dim: int) -> Sparse:
    if isinstance(value, Mapping):
        items = value.items()
    else:
        value = list(value)
        if len(value) != dim:
            raise ValueError(f"coefficient vector of length {len(value)}, expected {dim}")
        items = enumerate(value)
    out = {}
    for k, c in items:
        if not 0 <= k < dim:
            raise IndexError(f"target index {k} out of range")
        c = as_scalar(c)
        if c:
            out[k] = c
    return out


def _dense(sp: Sparse, dim: int) -> tuple:
    v = [ZERO] * dim
    for k, c in sp.items():
        v[k] = c
    return tuple(v)


def _axpy(acc: Sparse, coef: GaussScalar, x: Sparse) -> None:
    for k, c in x.items():
        s = acc.get(k)
        s = coef * c if s is None else s + coef * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class BracketTable:
    """An n-ary bracket on a super vector space of signature ``m|n``.

    ``entries`` maps index tuples to coefficient vectors (dense sequences or
    ``{index: scalar}`` mappings).  The constructor is deliberately lenient
    about skew-symmetry and grading so that recorded-but-inconsistent data
    can still be loaded and reported on by :func:`verify_axioms`; use
    :meth:`from_brackets` for the canonicalising, validating route.
    """

    arity: int
    sig: BasisSignature
    entries: Mapping
    names: tuple = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be at least 2")
        dim = self.sig.dim
        clean = {}
        for key, val in self.entries.items():
            key = tuple(key)
            if len(key) != self.arity:
                raise ValueError(f"bracket key {key} does not have arity {self.arity}")
            for a in key:
                if not 0 <= a < dim:
                    raise IndexError(f"basis index {a} out of range in key {key}")
            sp = _sparse(val, dim)
            if sp:
                clean[key] = sp
        object.__setattr__(self, "entries", dict(sorted(clean.items())))
        names = tuple(self.names) if self.names is not None else self.sig.default_names()
        if len(names) != dim or len(set(names)) != dim:
            raise ValueError("basis names must be distinct and match the dimension")
        object.__setattr__(self, "names", names)

    @classmethod
    def abelian(cls, sig: BasisSignature, arity: int = 3, names=None) -> "BracketTable":
        return cls(arity, sig, {}, names)

    @classmethod
    def from_brackets(cls, arity, sig, brackets: Iterable, names=None) -> "BracketTable":
        """Build a table from ``(args, value)`` pairs in any argument order.

        Arguments are sorted with the graded sign applied to the value.
        Raises ``ValueError`` for a nonzero value on a forced-zero tuple,
        for a value of the wrong parity and for two pairs that land on the
        same canonical key.
        """
        dim = sig.dim
        label = tuple(names) if names is not None else sig.default_names()

        def show(t):
            return "[" + ",".join(label[a] if 0 <= a < dim else str(a) for a in t) + "]"

        out = {}
        for args, value in brackets:
            cf = canonical_order(tuple(args), sig)
            sp = _sparse(value, dim)
            if cf.tuple in out:
                raise ValueError(f"duplicate bracket for canonical arguments {show(cf.tuple)}")
            if cf.forced_zero:
                if sp:
                    raise ValueError(
                        f"bracket {show(args)} repeats an even argument and must vanish"
                    )
                out[cf.tuple] = {}
                continue
            want = prefix_parity([sig.parity(a) for a in cf.tuple], arity)
            bad = [k for k in sp if sig.parity(k) != want]
            if bad:
                raise ValueError(f"bracket {show(args)} has a value of the wrong parity")
            out[cf.tuple] = {k: c * cf.sign for k, c in sp.items()}
        return cls(arity, sig, out, names)

    @property
    def dim(self) -> int:
        return self.sig.dim

    def vector(self, key) -> tuple:
        return _dense(self.entries.get(tuple(key), {}), self.dim)

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.sig == other.sig
            and self.names == other.names
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.arity, self.sig, self.names, len(self.entries)))

    def is_abelian(self) -> bool:
        return not self.entries

    def __getstate__(self):
        return {"arity": self.arity, "sig": self.sig, "entries": self.entries, "names": self.names}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)
        object.__setattr__(self, "_cache", {})

    # internal fast path used by every algorithm below
    def _basis(self, tup: tuple) -> Sparse:
        cache = self._cache
        hit = cache.get(tup)
        if hit is not None:
            return hit
        cf = canonical_order(tup, self.sig)
        if cf.forced_zero:
            res = {}
        else:
            stored = self.entries.get(cf.tuple)
            if not stored:
                res = {}
            elif cf.sign == 1:
                res = stored
            else:
                res = {k: -c for k, c in stored.items()}
        cache[tup] = res
        return res


@dataclass(frozen=True)
class LinearFunctional:
    """A linear map to the scalars, given by its values on the basis."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_scalar(c) for c in self.coeffs))

    @classmethod
    def dual(cls, dim: int, idx: int, value=ONE) -> "LinearFunctional":
        c = [ZERO] * dim
        c[idx] = as_scalar(value)
        return cls(tuple(c))

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, v) -> GaussScalar:
        if isinstance(v, Mapping):
            items = v.items()
        else:
            items = enumerate(v)
        acc = ZERO
        for k, c in items:
            s = self.coeffs[k]
            if s and c:
                acc = acc + s * c
        return acc

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class Witness:
    """A violated axiom instance.

    ``kind`` is ``"grading"``, ``"skew"`` or ``"filippov"``.  For Filippov
    failures ``y`` and ``x`` are the basis tuples and ``residual`` is
    ``RHS - LHS``; for the other kinds ``x`` is the stored key and
    ``residual`` the offending value.
    """

    kind: str
    x: tuple
    residual: tuple
    y: tuple = ()


@dataclass(frozen=True)
class AxiomReport:
    grading_ok: bool
    skew_ok: bool
    filippov_ok: bool
    witnesses: tuple = ()

    @property
    def ok(self) -> bool:
        return self.grading_ok and self.skew_ok and self.filippov_ok

    def __bool__(self):
        return self.ok


class SupertraceError(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"functional is not a supertrace: {witness}")


# ---------------------------------------------------------------------------
# evaluation


def bracket_basis(T: BracketTable, tup: Sequence[int]) -> tuple:
    """Bracket of basis elements, as a dense coefficient vector."""
    return _dense(T._basis(tuple(tup)), T.dim)


def _bracket_sparse(T: BracketTable, vecs: Sequence[Sparse]) -> Sparse:
    acc: Sparse = {}
    supports = [list(v.items()) for v in vecs]
    for combo in itertools.product(*supports):
        tup = tuple(k for k, _ in combo)
        val = T._basis(tup)
        if not val:
            continue
        coef = ONE
        for _, c in combo:
            coef = coef * c
        _axpy(acc, coef, val)
    return acc


def bracket(T: BracketTable, vectors: Sequence[Sequence]) -> tuple:
    """Multilinear bracket of arbitrary (not necessarily homogeneous) vectors."""
    if len(vectors) != T.arity:
        raise ValueError(f"expected {T.arity} arguments, got {len(vectors)}")
    vecs = []
    for v in vectors:
        v = list(v)
        if len(v) != T.dim:
            raise ValueError(f"vector of length {len(v)} in a space of dimension {T.dim}")
        vecs.append(_sparse(v, T.dim))
    return _dense(_bracket_sparse(T, vecs), T.dim)


# ---------------------------------------------------------------------------
# axioms


def filippov_residual(T: BracketTable, y: tuple, x: tuple) -> Sparse:
    """``RHS - LHS`` of the graded Filippov identity on basis tuples."""
    sig = T.sig
    par = sig.parities()
    y_par = sum(par[a] for a in y) & 1
    lhs: Sparse = {}
    for d, c in T._basis(x).items():
        _axpy(lhs, c, T._basis(y + (d,)))
    res: Sparse = {k: -c for k, c in lhs.items()}
    prefix = 0
    for i, xi in enumerate(x):
        inner = T._basis(y + (xi,))
        if inner:
            sign = -1 if (prefix & y_par) else 1
            head, tail = x[:i], x[i + 1 :]
            for g, c in inner.items():
                _axpy(res, c * sign, T._basis(head + (g,) + tail))
        prefix ^= par[xi]
    return res


def _filippov_chunk(T: BracketTable, ys: list, exhaustive: bool) -> list:
    dim, n = T.dim, T.arity
    xs = (
        itertools.product(range(dim), repeat=n)
        if exhaustive
        else itertools.combinations_with_replacement(range(dim), n)
    )
    xs = list(xs)
    out = []
    for y in ys:
        for x in xs:
            r = filippov_residual(T, y, x)
            if r:
                out.append(Witness("filippov", x, _dense(r, dim), y))
    return out


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SUPERLIE_THREADS", "1")))
    except ValueError:
        return 1


def verify_axioms(
    T: BracketTable, *, exhaustive: bool = False, workers: int | None = None
) -> AxiomReport:
    """Check grading, graded skew-symmetry and the graded Filippov identity.

    Filippov is checked on non-decreasing basis tuples only; both sides are
    graded-skew in each block, so that is sufficient.  ``exhaustive=True``
    runs over every ordered tuple instead (slow, used to cross-check).
    ``workers > 1`` splits the y-tuples across processes; witnesses come
    back in the same order as a serial run.
    """
    sig, dim, n = T.sig, T.dim, T.arity
    witnesses = []
    grading_ok = skew_ok = True
    for key, val in T.entries.items():
        want = prefix_parity([sig.parity(a) for a in key], n)
        bad = {k: c for k, c in val.items() if sig.parity(k) != want}
        if bad:
            grading_ok = False
            witnesses.append(Witness("grading", key, _dense(bad, dim)))
        cf = canonical_order(key, sig)
        if cf.forced_zero or cf.tuple != key:
            skew_ok = False
            witnesses.append(Witness("skew", key, _dense(val, dim)))

    if exhaustive:
        ys = list(itertools.product(range(dim), repeat=n - 1))
    else:
        ys = list(itertools.combinations_with_replacement(range(dim), n - 1))
    workers = _default_workers() if workers is None else max(1, workers)
    if workers > 1 and len(ys) > 1 and T.entries:
        size = -(-len(ys) // (workers * 4))
        chunks = [ys[i : i + size] for i in range(0, len(ys), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_filippov_chunk, [T] * len(chunks), chunks, [exhaustive] * len(chunks)))
        fil = [w for part in parts for w in part]
    elif T.entries:
        fil = _filippov_chunk(T, ys, exhaustive)
    else:
        fil = []
    witnesses.extend(fil)
    return AxiomReport(grading_ok, skew_ok, not fil, tuple(witnesses))


# ---------------------------------------------------------------------------
# supertraces and the induced bracket


def _as_functional(T: BracketTable, S) -> LinearFunctional:
    S = S if isinstance(S, LinearFunctional) else LinearFunctional(tuple(S))
    if len(S) != T.dim:
        raise ValueError(f"functional of length {len(S)} on a space of dimension {T.dim}")
    return S


def is_supertrace(T: BracketTable, S) -> tuple[bool, tuple | None]:
    """``(ok, witness)``; the witness is ``("odd", index)`` or ``("bracket", key)``."""
    S = _as_functional(T, S)
    for k in range(T.sig.even_count, T.dim):
        if S.coeffs[k]:
            return False, ("odd", k)
    for key, val in T.entries.items():
        if S(val):
            return False, ("bracket", key)
    return True, None


def supertrace_space(T: BracketTable) -> list[LinearFunctional]:
    """Basis of all supertraces of ``T``: the conditions are linear in ``S``."""
    dim = T.dim
    rows = [unit_vector(dim, k) for k in range(T.sig.even_count, dim)]
    rows += [T.vector(key) for key in T.entries]
    return [LinearFunctional(v) for v in nullspace(rows, dim)]


def induce(T: BracketTable, S) -> BracketTable:
    """The (n+1)-ary bracket built from ``T`` and a supertrace ``S``."""
    S = _as_functional(T, S)
    ok, witness = is_supertrace(T, S)
    if not ok:
        raise SupertraceError(witness)
    sig, dim, n = T.sig, T.dim, T.arity
    par = sig.parities()
    s_vals = S.coeffs
    out = {}
    for x in itertools.combinations_with_replacement(range(dim), n + 1):
        if canonical_order(x, sig).forced_zero:
            continue
        acc: Sparse = {}
        prefix = 0
        for i, xi in enumerate(x):
            s = s_vals[xi]
            if s:
                sign = -1 if (i & 1) ^ (par[xi] & prefix) else 1
                _axpy(acc, s * sign, T._basis(x[:i] + x[i + 1 :]))
            prefix ^= par[xi]
        if acc:
            out[x] = acc
    return BracketTable(n + 1, sig, out, T.names)


# ---------------------------------------------------------------------------
# ideals and series


def _sub(T: BracketTable, h) -> Subspace:
    if isinstance(h, Subspace):
        if h.dim != T.dim:
            raise ValueError("subspace lives in a space of different dimension")
        return h
    return Subspace(T.dim, h)


def subspace_bracket(T: BracketTable, parts: Sequence[Subspace]) -> Subspace:
    """Span of brackets of basis vectors drawn one from each part."""
    if len(parts) != T.arity:
        raise ValueError(f"expected {T.arity} subspaces, got {len(parts)}")
    parts = [_sub(T, p) for p in parts]
    if any(p.is_zero() for p in parts):
        return Subspace.zero(T.dim)
    bases = [[_sparse(v, T.dim) for v in p.reduced] for p in parts]
    gens = []
    for combo in itertools.product(*bases):
        v = _bracket_sparse(T, combo)
        if v:
            gens.append(_dense(v, T.dim))
    return Subspace(T.dim, gens)


def full_bracket_span(T: BracketTable) -> Subspace:
    """``[g, ..., g]``: span of all stored bracket values."""
    return Subspace(T.dim, [T.vector(k) for k in T.entries])


def is_subalgebra(T: BracketTable, h) -> bool:
    h = _sub(T, h)
    return subspace_bracket(T, [h] * T.arity).issubset(h)


def is_ideal(T: BracketTable, h) -> bool:
    h = _sub(T, h)
    if h.is_zero():
        return True
    units = [{k: ONE} for k in range(T.dim)]
    for v in h.reduced:
        sv = _sparse(v, T.dim)
        for rest in itertools.product(units, repeat=T.arity - 1):
            w = _bracket_sparse(T, (sv,) + rest)
            if w and not h.contains(_dense(w, T.dim)):
                return False
    return True


@dataclass(frozen=True)
class SeriesResult:
    kind: str
    terms: tuple  # Subspaces, terms[p] is D^p or C^p
    reaches_zero: bool
    ideal: bool

    @property
    def dims(self) -> tuple:
        return tuple(t.rank for t in self.terms)

    @property
    def is_solvable(self) -> bool:
        return self.kind == "derived" and self.reaches_zero

    @property
    def is_nilpotent(self) -> bool:
        return self.kind == "central" and self.reaches_zero

    def term(self, p: int) -> Subspace:
        """``D^p``/``C^p`` for any p; the series is constant after it stabilises."""
        return self.terms[min(p, len(self.terms) - 1)]


def series(T: BracketTable, h=None, kind: str = "derived") -> SeriesResult:
    """Derived (``D^{p+1} = [D^p,...,D^p]``) or descending central
    (``C^{p+1} = [C^p, h,...,h]``) series of ``h`` (default: whole space).

    Stops at zero or when two consecutive terms coincide.  A non-ideal
    ``h`` is computed anyway and flagged via ``SeriesResult.ideal``.
    """
    if kind not in ("derived", "central"):
        raise ValueError(f"unknown series kind {kind!r}")
    h = Subspace.whole(T.dim) if h is None else _sub(T, h)
    ideal = is_ideal(T, h)
    terms = [h]
    while not terms[-1].is_zero():
        cur = terms[-1]
        if kind == "derived":
            nxt = subspace_bracket(T, [cur] * T.arity)
        else:
            nxt = subspace_bracket(T, [cur] + [h] * (T.arity - 1))
        if nxt == cur:
            break
        terms.append(nxt)
    return SeriesResult(kind, tuple(terms), terms[-1].is_zero(), ideal)


# ---------------------------------------------------------------------------
# change of basis


def change_of_basis(T: BracketTable, P_even, P_odd) -> BracketTable:
    """Rewrite ``T`` in a new parity-preserving basis.

    Row ``j`` of ``P_even`` (``P_odd``) holds the old coordinates of the
    j-th new even (odd) basis vector.  Transforming by ``P`` and then by
    ``Q`` equals transforming once by ``Q @ P``.
    """
    m, k = T.sig.even_count, T.sig.odd_count
    P_even = [[as_scalar(c) for c in row] for row in P_even]
    P_odd = [[as_scalar(c) for c in row] for row in P_odd]
    if len(P_even) != m or any(len(r) != m for r in P_even):
        raise ValueError(f"even block must be {m}x{m}")
    if len(P_odd) != k or any(len(r) != k for r in P_odd):
        raise ValueError(f"odd block must be {k}x{k}")
    dim = m + k
    full = [tuple(row) + (ZERO,) * k for row in P_even] + [(ZERO,) * m + tuple(row) for row in P_odd]
    try:
        inv = inverse(full)
    except ValueError:
        raise ValueError("change-of-basis block is singular") from None
    new_basis = [_sparse(row, dim) for row in full]
    inv_sp = [_sparse(row, dim) for row in inv]
    out = {}
    for x in itertools.combinations_with_replacement(range(dim), T.arity):
        if canonical_order(x, T.sig).forced_zero:
            continue
        old = _bracket_sparse(T, [new_basis[a] for a in x])
        if not old:
            continue
        new: Sparse = {}
        for i, c in old.items():
            _axpy(new, c, inv_sp[i])
        if new:
            out[x] = new
    return BracketTable(T.arity, T.sig, out, T.names)
