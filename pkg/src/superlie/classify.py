"""Structure-constant unknowns, the quadratic Filippov system, grid search
and isomorphism fingerprints for small n-Lie superalgebras."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .nlie import BracketTable, series, verify_axioms, _default_workers
from .scalar import ONE, ZERO, GaussScalar, as_scalar
from .superspace import BasisSignature, canonical_order, prefix_parity

__all__ = [
    "SCVariable",
    "Poly",
    "Constraint",
    "ConstraintSystem",
    "BudgetExceeded",
    "admissible_variables",
    "generate_constraints",
    "evaluate",
    "table_from_assignment",
    "grid_search",
    "Fingerprint",
    "fingerprint",
    "DEFAULT_GRID",
    "DEFAULT_BUDGET",
]

DEFAULT_GRID = (GaussScalar(0), GaussScalar(1), GaussScalar(-1))
DEFAULT_BUDGET = 2_000_000


class SCVariable(NamedTuple):
    """Unknown structure constant: coefficient of basis ``target`` in ``[args]``."""

    args: tuple
    target: int

    def label(self, names: Sequence[str]) -> str:
        return f"K[{','.join(names[a] for a in self.args)}->{names[self.target]}]"


class Poly:
    """Sparse polynomial; monomials are sorted tuples of variable positions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def add_term(self, mono: tuple, coef) -> None:
        mono = tuple(sorted(mono))
        s = self.terms.get(mono, ZERO) + coef
        if s:
            self.terms[mono] = s
        else:
            self.terms.pop(mono, None)

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __call__(self, values: Sequence[GaussScalar]) -> GaussScalar:
        acc = ZERO
        for mono, c in self.terms.items():
            t = c
            for v in mono:
                x = values[v]
                if not x:
                    t = ZERO
                    break
                t = t * x
            if t:
                acc = acc + t
        return acc

    def to_text(self, labels: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            factors = []
            for v, grp in itertools.groupby(mono):
                k = len(list(grp))
                factors.append(labels[v] + (f"^{k}" if k > 1 else ""))
            parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.to_text([f'x{i}' for i in range(1 + max((max(m, default=0) for m in self.terms), default=0))])})"


@dataclass(frozen=True)
class Constraint:
    """``RHS - LHS`` of the Filippov identity, component ``H``, as a polynomial.

    ``sources`` lists every ``(y, x, H)`` whose polynomial was identical.
    """

    poly: Poly
    sources: tuple


@dataclass(frozen=True)
class ConstraintSystem:
    sig: BasisSignature
    arity: int
    variables: tuple
    constraints: tuple
    names: tuple

    def labels(self) -> list[str]:
        return [v.label(self.names) for v in self.variables]

    def to_text(self) -> str:
        labels = self.labels()
        lines = [
            "# superlie constraint system",
            f"# signature {self.sig}",
            f"# arity {self.arity}",
            f"# variables {len(labels)}: " + " ".join(labels),
            f"# constraints {len(self.constraints)}",
        ]
        lines += [c.poly.to_text(labels) for c in self.constraints]
        return "\n".join(lines) + "\n"


class BudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        self.count, self.budget = count, budget
        super().__init__(f"grid search needs {count} assignments, budget is {budget}")


def _canonical_tuples(sig: BasisSignature, arity: int):
    for t in itertools.combinations_with_replacement(range(sig.dim), arity):
        if not canonical_order(t, sig).forced_zero:
            yield t


def admissible_variables(sig: BasisSignature, arity: int = 3) -> list[SCVariable]:
    """Every (canonical tuple, grading-compatible target) pair, in lexicographic order."""
    out = []
    for t in _canonical_tuples(sig, arity):
        want = prefix_parity([sig.parity(a) for a in t], arity)
        out.extend(SCVariable(t, b) for b in range(sig.dim) if sig.parity(b) == want)
    return out


def generate_constraints(sig: BasisSignature, arity: int = 3, names=None) -> ConstraintSystem:
    """Expand the graded Filippov identity on every pair of non-decreasing
    basis tuples symbolically in the unknown structure constants."""
    dim = sig.dim
    par = sig.parities()
    variables = admissible_variables(sig, arity)
    vidx = {v: i for i, v in enumerate(variables)}

    by_args: dict = {}
    for v in variables:
        by_args.setdefault(v.args, []).append((v.target, vidx[v]))
    sym_cache: dict = {}

    def sym(t):
        # bracket of basis tuple t as a list of (target, sign, variable)
        hit = sym_cache.get(t)
        if hit is None:
            cf = canonical_order(t, sig)
            hit = [] if cf.forced_zero else [(b, cf.sign, i) for b, i in by_args.get(cf.tuple, ())]
            sym_cache[t] = hit
        return hit

    found: dict = {}
    order = []
    for y in itertools.combinations_with_replacement(range(dim), arity - 1):
        y_par = sum(par[a] for a in y) & 1
        for x in itertools.combinations_with_replacement(range(dim), arity):
            comps: dict = {}

            def add(h, mono, coef):
                comps.setdefault(h, Poly()).add_term(mono, GaussScalar(coef))

            for d, s1, v1 in sym(x):
                for h, s2, v2 in sym(y + (d,)):
                    add(h, (v1, v2), -s1 * s2)
            prefix = 0
            for i, xi in enumerate(x):
                sign = -1 if (prefix & y_par) else 1
                for g, s1, v1 in sym(y + (xi,)):
                    for h, s2, v2 in sym(x[:i] + (g,) + x[i + 1 :]):
                        add(h, (v1, v2), sign * s1 * s2)
                prefix ^= par[xi]
            for h in sorted(comps):
                p = comps[h]
                if not p:
                    continue
                k = p.key()
                if k in found:
                    found[k][1].append((y, x, h))
                else:
                    found[k] = (p, [(y, x, h)])
                    order.append(k)
    constraints = tuple(Constraint(found[k][0], tuple(found[k][1])) for k in order)
    names = tuple(names) if names is not None else sig.default_names()
    return ConstraintSystem(sig, arity, tuple(variables), constraints, names)


def _values(system: ConstraintSystem, assignment) -> list[GaussScalar]:
    if isinstance(assignment, Mapping):
        try:
            return [as_scalar(assignment[v]) for v in system.variables]
        except KeyError as exc:
            raise KeyError(f"assignment is missing variable {exc.args[0]}") from None
    values = [as_scalar(a) for a in assignment]
    if len(values) != len(system.variables):
        raise ValueError(f"expected {len(system.variables)} values, got {len(values)}")
    return values


def evaluate(system: ConstraintSystem, assignment) -> list[GaussScalar]:
    """Residual of every constraint.  ``assignment`` maps each SCVariable to a
    scalar, or lists the values in ``system.variables`` order."""
    values = _values(system, assignment)
    return [c.poly(values) for c in system.constraints]


def table_from_assignment(system: ConstraintSystem, assignment) -> BracketTable:
    values = _values(system, assignment)
    entries: dict = {}
    for v, c in zip(system.variables, values):
        if c:
            entries.setdefault(v.args, {})[v.target] = c
    return BracketTable(system.arity, system.sig, entries, system.names)


def _compile(system: ConstraintSystem):
    # constraints with fewest variables first so most assignments fail fast
    polys = [c.poly for c in system.constraints]
    polys.sort(key=lambda p: (len({v for m in p.terms for v in m}), len(p.terms)))
    return [[(c, m) for m, c in p.terms.items()] for p in polys]


def _satisfies(compiled, values) -> bool:
    for terms in compiled:
        acc = ZERO
        for c, mono in terms:
            t = c
            for v in mono:
                x = values[v]
                if not x:
                    t = None
                    break
                t = t * x
            if t is not None:
                acc = acc + t
        if acc:
            return False
    return True


def _grid_chunk(system: ConstraintSystem, grid: tuple, first: int) -> list:
    compiled = _compile(system)
    nvars = len(system.variables)
    heads = [grid[first]] if nvars else []
    found = []
    for rest in itertools.product(grid, repeat=max(nvars - 1, 0)):
        values = heads + list(rest)
        if _satisfies(compiled, values):
            found.append(tuple(values))
    return found


def grid_search(
    sig: BasisSignature,
    arity: int = 3,
    grid: Sequence = DEFAULT_GRID,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
    system: ConstraintSystem | None = None,
) -> list[BracketTable]:
    """All grid assignments solving the constraint system, each re-checked
    by :func:`verify_axioms`, in lexicographic order of grid positions."""
    grid = tuple(dict.fromkeys(as_scalar(g) for g in grid))
    if not grid:
        raise ValueError("grid must not be empty")
    system = system or generate_constraints(sig, arity)
    nvars = len(system.variables)
    count = len(grid) ** nvars
    if count > budget:
        raise BudgetExceeded(count, budget)
    if nvars == 0:
        raw = [()]
    else:
        workers = _default_workers() if workers is None else max(1, workers)
        firsts = list(range(len(grid)))
        if workers > 1 and len(grid) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_grid_chunk, [system] * len(grid), [grid] * len(grid), firsts))
        else:
            parts = [_grid_chunk(system, grid, f) for f in firsts]
        raw = [a for part in parts for a in part]
    tables = []
    for values in raw:
        T = table_from_assignment(system, values)
        report = verify_axioms(T, workers=1)
        if not report.ok:
            raise AssertionError(f"grid solution {values} fails the direct axiom check")
        tables.append(T)
    return tables


class Fingerprint(NamedTuple):
    """Basis-independent invariants; equality is necessary for isomorphism only."""

    dim_d1: int
    dim_d2: int
    dim_c1: int
    dim_c2: int
    d1_split: tuple
    solvable: bool
    nilpotent: bool


def fingerprint(T: BracketTable) -> Fingerprint:
    der = series(T, kind="derived")
    cen = series(T, kind="central")
    d1 = der.term(1)
    return Fingerprint(
        d1.rank,
        der.term(2).rank,
        cen.term(1).rank,
        cen.term(2).rank,
        d1.parity_split(T.sig.even_count),
        der.is_solvable,
        cen.is_nilpotent,
    )
