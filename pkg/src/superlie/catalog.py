"""Built-in algebras and a harness that reports their axiom status.

Entries are stored exactly as recorded in the classification lists, including
ones the checker rejects; the harness reports, it never patches.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import clifford
from .fileformat import AlgebraFormatError, table_from_document, table_to_document
from .nlie import AxiomReport, BracketTable, Witness, change_of_basis, verify_axioms
from .scalar import GaussScalar
from .superspace import BasisSignature, canonical_order

__all__ = [
    "CatalogEntry",
    "CatalogVerdict",
    "FIXED_NAMES",
    "list_names",
    "get_entry",
    "candidate_entries",
    "verify_entry",
    "verify_catalog",
]

PASS = "pass"
UNVERIFIED = "as-printed-unverified"


def _s(x):
    return GaussScalar(x).to_json()


def _doc(even, odd, brackets):
    return {
        "arity": 3,
        "even": list(even),
        "odd": list(odd),
        "brackets": [{"args": list(a), "value": {k: _s(v) for k, v in val.items()}} for a, val in brackets],
    }


_W = {"f1": -1, "f2": 1}

_FIXED = {
    "T4a": (
        _doc(
            [],
            ["f1", "f2"],
            [
                (("f1", "f1", "f1"), _W),
                (("f1", "f1", "f2"), _W),
                (("f1", "f2", "f2"), _W),
                (("f2", "f2", "f2"), _W),
            ],
        ),
        "dimension 0|2 classification, four-bracket family",
        PASS,
        {"isomorphic_to": "T4b", "P_even": [], "P_odd": [["1", "1"], ["-8", "8"]]},
    ),
    "T4b": (
        _doc([], ["f1", "f2"], [(("f1", "f1", "f1"), {"f2": 1})]),
        "dimension 0|2 classification, single-bracket family",
        PASS,
        {},
    ),
    "T5a": (
        _doc(
            ["e1", "e2"],
            ["f1"],
            [
                (("e1", "f1", "f1"), {"e1": 1, "e2": 1}),
                (("e2", "f1", "f1"), {"e1": -1, "e2": -1}),
            ],
        ),
        "dimension 2|1 classification, first family",
        PASS,
        {},
    ),
    "T5b": (
        _doc(["e1", "e2"], ["f1"], [(("e1", "e1", "f1"), {"f1": 1})]),
        "dimension 2|1 classification, second family as recorded "
        "(repeats the even argument e1)",
        UNVERIFIED,
        {},
    ),
    "T5c": (
        _doc(["e1", "e2"], ["f1"], [(("f1", "f1", "f1"), {"f1": 1})]),
        "dimension 2|1 classification, third family as recorded",
        UNVERIFIED,
        {},
    ),
}

# conjectured corrections; admitted only when the direct check passes
_CANDIDATES = {
    "T5b_candidate": (
        _doc(["e1", "e2"], ["f1"], [(("e1", "e2", "f1"), {"f1": 1})]),
        "guess at the intended second 2|1 family: [e1,e2,f1] = f1",
    ),
}

FIXED_NAMES = tuple(_FIXED)
_PARAM = re.compile(r"(abelian)\((\d+),(\d+)\)|(clifford_lie|clifford_ternary)\((\d+)\)")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    document: dict
    provenance: str
    expected_status: str = PASS
    metadata: dict = field(default_factory=dict)

    @property
    def table(self) -> BracketTable:
        """Strictly parsed table; raises AlgebraFormatError for inconsistent entries."""
        return table_from_document(self.document)

    @property
    def raw_table(self) -> BracketTable:
        """The brackets exactly as written, without canonicalisation."""
        return table_from_document(self.document, strict=False)


def list_names() -> list[str]:
    return list(FIXED_NAMES) + [
        "abelian(m,n)",
        "clifford_lie(n)",
        "clifford_ternary(n)",
    ]


def get_entry(name: str) -> CatalogEntry:
    key = name.replace(" ", "")
    if key in _FIXED:
        doc, prov, status, meta = _FIXED[key]
        return CatalogEntry(key, doc, prov, status, dict(meta))
    m = _PARAM.fullmatch(key)
    if m is None:
        raise KeyError(f"unknown catalog entry {name!r}")
    if m.group(1):
        sig = BasisSignature(int(m.group(2)), int(m.group(3)))
        T = BracketTable.abelian(sig, 3)
        return CatalogEntry(key, table_to_document(T), "Abelian algebra of the given signature")
    kind, n = m.group(4), int(m.group(5))
    T = clifford.export(n, "lie" if kind == "clifford_lie" else "ternary")
    prov = (
        "Clifford superalgebra with graded commutator"
        if kind == "clifford_lie"
        else "3-Lie superalgebra induced on the Clifford superalgebra by the spinor supertrace"
    )
    meta = {"n": n}
    return CatalogEntry(key, table_to_document(T), prov, PASS, meta)


def candidate_entries() -> list[CatalogEntry]:
    """Conjectured corrections that pass the direct axiom check."""
    out = []
    for name, (doc, prov) in _CANDIDATES.items():
        entry = CatalogEntry(name, doc, prov, PASS)
        try:
            if verify_axioms(entry.table).ok:
                out.append(entry)
        except AlgebraFormatError:
            pass
    return out


def isomorphism_witness(entry: CatalogEntry):
    """``(target_name, transformed_table)`` from the stored change of basis, if any."""
    meta = entry.metadata
    if "isomorphic_to" not in meta:
        return None
    P_even = [[GaussScalar.parse(c) for c in row] for row in meta["P_even"]]
    P_odd = [[GaussScalar.parse(c) for c in row] for row in meta["P_odd"]]
    return meta["isomorphic_to"], change_of_basis(entry.table, P_even, P_odd)


@dataclass(frozen=True)
class CatalogVerdict:
    name: str
    expected_status: str
    report: AxiomReport
    parse_error: str | None = None

    @property
    def ok(self) -> bool:
        return self.parse_error is None and self.report.ok


def verify_entry(entry: CatalogEntry, *, workers: int | None = 1) -> CatalogVerdict:
    """Run the strict parser and the direct axiom check.

    When the strict parser rejects the entry, the as-written table is
    checked instead so the report still says which axiom is broken.
    """
    try:
        T = entry.table
        err = None
    except AlgebraFormatError as exc:
        T = entry.raw_table
        err = str(exc)
    report = verify_axioms(T, workers=workers)
    if err is not None and report.skew_ok:
        # keep the verdict consistent with the parser's rejection
        bad = [k for k in T.entries if canonical_order(k, T.sig).forced_zero]
        report = AxiomReport(
            report.grading_ok,
            False,
            report.filippov_ok,
            tuple(Witness("skew", k, T.vector(k)) for k in bad) + report.witnesses,
        )
    return CatalogVerdict(entry.name, entry.expected_status, report, err)


DEFAULT_VERIFY = FIXED_NAMES + (
    "abelian(0,1)",
    "abelian(1,1)",
    "abelian(0,2)",
    "abelian(2,1)",
    "clifford_lie(2)",
    "clifford_ternary(2)",
    "clifford_lie(4)",
    "clifford_ternary(4)",
)


def verify_catalog(names=DEFAULT_VERIFY, *, workers: int | None = 1) -> dict:
    """``{name: CatalogVerdict}`` in the order given."""
    return {name: verify_entry(get_entry(name), workers=workers) for name in names}
