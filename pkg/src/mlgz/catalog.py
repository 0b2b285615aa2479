"""The table of characteristic polynomials, and a runner that re-checks it.

Catalog format, one item per line (``#`` starts a comment)::

    E12: 42             # NAME: m1,m2,...  (repeat m for multiplicity)
    A mu=1..12          # family directive, expanded to A_1 ... A_12

Family rows are named ``A_5``, ``D_7`` and so on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Iterable

from .cyclotomic import (
    CycloFactorization,
    acampo_check,
    chain_condition_witness,
    cyclotomic_factor,
    signed_power_group_order,
    trace_sum,
)
from .errors import InconsistentDegree, MilnorError, ParseError, VerificationFailure
from .linalg import IntPoly
from .milnor import ade_milnor

SURFACE = 2

SIMPLE_E = {"E6": 6, "E7": 7, "E8": 8}
SIMPLE_ELLIPTIC = {"Etilde6": 8, "Etilde7": 9, "Etilde8": 10}
SERIES_HEADS = {"E_3_0": 16, "Z_1_0": 15, "Q_2_0": 14, "W_1_0": 15, "S_1_0": 14, "U_1_0": 14}
# exceptional rows whose spectrum has a repeated eigenvalue
NON_SQUAREFREE_EXCEPTIONAL = frozenset({"Z12", "Q12", "U12", "Z18", "Q16", "U16"})
FAMILY_MIN_MU = {"A": 1, "D": 4}

_NAME = r"[A-Za-z][A-Za-z0-9_]*"
_ENTRY_RE = re.compile(rf"^({_NAME})\s*:\s*(\d+(?:\s*,\s*\d+)*)$")
_RANGE_RE = re.compile(rf"^({_NAME})\s+mu\s*=\s*(\d+)\s*\.\.\s*(\d+)$")
_FAMILY_RE = re.compile(r"^([AD])_?(\d+)$")
_EXCEPTIONAL_RE = re.compile(r"^[EZQWSU](\d+)$")


def family_polynomial(family: str, mu: int) -> IntPoly:
    if family == "A":
        return IntPoly([1] * (mu + 1))
    if family == "D":
        return (IntPoly.monomial(mu - 1) + 1) * IntPoly((1, 1))
    raise ValueError(f"unknown family {family!r}")


def _family_of(name: str) -> tuple[str, int] | None:
    m = _FAMILY_RE.match(name)
    return (m.group(1), int(m.group(2))) if m else None


def _kind_of(name: str) -> str:
    if _family_of(name) or name in SIMPLE_E:
        return "simple"
    if name in SIMPLE_ELLIPTIC:
        return "simple-elliptic"
    if name in SERIES_HEADS:
        return "series-head"
    if _EXCEPTIONAL_RE.match(name):
        return "exceptional"
    return "other"


def milnor_number_of(name: str) -> int | None:
    """The Milnor number a row name implies, or None for unknown names."""
    fam = _family_of(name)
    if fam:
        return fam[1]
    for table in (SIMPLE_E, SIMPLE_ELLIPTIC, SERIES_HEADS):
        if name in table:
            return table[name]
    m = _EXCEPTIONAL_RE.match(name)
    return int(m.group(1)) if m else None


def published_gz_order(family: str, mu: int) -> int:
    """Published |G_Z| for the simple singularities."""
    if family == "A":
        return 2 if mu == 1 else 2 * (mu + 1)
    if family == "D":
        return 36 if mu == 4 else 4 * (mu - 1)
    if family == "E":
        return {6: 24, 7: 18, 8: 30}[mu]
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    factors: CycloFactorization
    n: int = SURFACE
    mult: int = 2
    lineno: int | None = None

    @property
    def mu(self) -> int:
        return self.factors.mu

    @property
    def squarefree(self) -> bool:
        return self.factors.is_squarefree

    @property
    def kind(self) -> str:
        return _kind_of(self.name)

    @property
    def name_mu(self) -> int | None:
        return milnor_number_of(self.name)

    @property
    def ade(self) -> tuple[str, int] | None:
        """(family, mu) of the simple singularity this row names, if any."""
        fam = _family_of(self.name)
        if fam:
            return fam
        if self.name in SIMPLE_E:
            return "E", SIMPLE_E[self.name]
        return None

    @property
    def family_params(self) -> tuple[str, int] | None:
        return _family_of(self.name)

    @property
    def expected_squarefree(self) -> bool | None:
        kind = self.kind
        if kind == "simple":
            fam, mu = self.ade
            return not (fam == "D" and mu % 2 == 0)
        if kind in ("simple-elliptic", "series-head"):
            return False
        if kind == "exceptional":
            return self.name not in NON_SQUAREFREE_EXCEPTIONAL
        return None

    @cached_property
    def _expected(self) -> tuple[int | None, str]:
        if self.ade:
            return published_gz_order(*self.ade), "paper"
        if self.kind == "exceptional" and self.squarefree:
            return signed_power_group_order(self.factors), "derived"
        return None, "open"

    @property
    def expected_gz_order(self) -> int | None:
        return self._expected[0]

    @property
    def order_provenance(self) -> str:
        """'paper' for published orders, 'derived' for +-M^k counts, 'open' otherwise."""
        return self._expected[1]

    @property
    def classification(self) -> str:
        return "open" if self.order_provenance == "open" else "classified"


def _parse_orders(raw: str, lineno: int) -> list[int]:
    orders = [int(tok) for tok in raw.split(",")]
    if any(m < 1 for m in orders):
        raise ParseError(lineno, "cyclotomic orders must be positive")
    return orders


def load_catalog(text: str, strict: bool = True) -> list[CatalogEntry]:
    """Parse catalog text.

    With ``strict`` a row whose factor degrees disagree with the Milnor
    number in its name raises InconsistentDegree; otherwise the row is kept
    and ``verify_all`` reports the mismatch.
    """
    entries: list[CatalogEntry] = []
    seen: set[str] = set()

    def add(entry: CatalogEntry) -> None:
        if entry.name in seen:
            raise ParseError(entry.lineno, f"duplicate entry {entry.name}")
        seen.add(entry.name)
        expect = entry.name_mu
        if strict and expect is not None and expect != entry.mu:
            raise InconsistentDegree(entry.name, entry.mu, expect, entry.lineno)
        entries.append(entry)

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _ENTRY_RE.match(line)
        if m:
            add(CatalogEntry(m.group(1), CycloFactorization.from_orders(_parse_orders(m.group(2), lineno)),
                             lineno=lineno))
            continue
        m = _RANGE_RE.match(line)
        if m:
            family, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
            if family not in FAMILY_MIN_MU:
                raise ParseError(lineno, f"no family directive for {family!r} (only A and D)")
            if lo < FAMILY_MIN_MU[family] or hi < lo:
                raise ParseError(lineno, f"bad range {lo}..{hi} for family {family}")
            for mu in range(lo, hi + 1):
                add(CatalogEntry(f"{family}_{mu}", cyclotomic_factor(family_polynomial(family, mu)),
                                 lineno=lineno))
            continue
        raise ParseError(lineno, f"cannot parse {line!r}")
    return entries


def shipped_catalog_text() -> str:
    return resources.files("mlgz").joinpath("data/catalog.txt").read_text(encoding="utf-8")


def shipped_catalog() -> list[CatalogEntry]:
    return load_catalog(shipped_catalog_text())


def find_entry(entries: Iterable[CatalogEntry], name: str) -> CatalogEntry:
    """Look up a row by name; 'A5' finds 'A_5' and 'E30' finds 'E_3_0'."""
    entries = list(entries)
    for e in entries:
        if e.name == name:
            return e
    key = name.replace("_", "")
    for e in entries:
        if e.name.replace("_", "") == key:
            return e
    raise KeyError(name)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _check_group(entry: CatalogEntry, fields: list[str], fail) -> None:
    from .aut import brute_force_aut, crt_unit_aut, d2k_aut

    family, mu = entry.ade
    ml = ade_milnor(family, mu)
    if ml.factorization() != entry.factors:
        fail(f"charpoly of the {family}{mu} model is {ml.factorization().render()}")
        return
    if family == "D" and mu % 2 == 0:
        second, engine = d2k_aut, "d2k"
    else:
        second, engine = crt_unit_aut, "crt"
    orders = {"brute": brute_force_aut(ml).order, engine: second(ml).order}
    expected = entry.expected_gz_order
    fields.append(f"gz_order={expected}")
    fields.append("order_provenance=paper")
    fields.append("engines=" + ",".join(f"{k}:{v}" for k, v in orders.items()))
    for k, v in orders.items():
        if v != expected:
            fail(f"{k} engine gives |G_Z|={v}, expected {expected}")


def verify_entry(entry: CatalogEntry) -> tuple[str, list[str]]:
    """One report line for the row plus the list of failed checks."""
    failures: list[str] = []

    def fail(msg: str) -> None:
        failures.append(f"{entry.name}: {msg}")

    f = entry.factors
    fields = [f"name={entry.name}", f"kind={entry.kind}", f"mu={entry.mu}", f"charpoly={f.render()}"]

    expect_mu = entry.name_mu
    if expect_mu is not None and expect_mu != entry.mu:
        fail(f"degree {entry.mu} != Milnor number {expect_mu}")

    fields.append(f"squarefree={_yn(entry.squarefree)}")
    expected_sf = entry.expected_squarefree
    if expected_sf is not None and expected_sf != entry.squarefree:
        fail(f"squarefree={_yn(entry.squarefree)}, expected {_yn(expected_sf)}")

    if entry.squarefree:
        try:
            w = chain_condition_witness(f.ord_set)
        except MilnorError as exc:
            fields.append("chain=none")
            fail(f"chain condition: {exc}")
        else:
            steps = "/".join(str(w.p(i)) for i in range(2, len(w.m_seq) + 1)) or "-"
            fields.append(f"chain=ok i1={w.i1} i2={w.i2} primes={steps}")
    else:
        fields.append("chain=skipped")

    t = trace_sum(f)
    fields.append(f"trace={t}")
    if t != -1:
        fail(f"trace identity: sum mult*moebius = {t}, expected -1")
    ok = acampo_check(f, entry.n, entry.mult)
    fields.append(f"acampo={'ok' if ok else 'fail'}")
    if not ok:
        fail(f"A'Campo check fails at n={entry.n}, mult={entry.mult}")

    if entry.ade:
        try:
            _check_group(entry, fields, fail)
        except MilnorError as exc:
            fail(f"group computation: {type(exc).__name__}: {exc}")
    elif entry.order_provenance == "derived":
        fields.append(f"gz_order={entry.expected_gz_order}")
        fields.append("order_provenance=derived")
    else:
        fields.append("gz_order=unknown")
        fields.append("order_provenance=open")
    fields.append(f"classification={entry.classification}")
    fields.append("status=" + ("ok" if not failures else "FAIL"))
    return " ".join(fields), failures


def verify_all(entries: Iterable[CatalogEntry]) -> str:
    """Run every row check; return the report or raise VerificationFailure."""
    lines: list[str] = []
    failures: list[str] = []
    count = 0
    for entry in entries:
        line, bad = verify_entry(entry)
        lines.append(line)
        failures.extend(bad)
        count += 1
    lines.append(f"entries={count} failures={len(failures)}")
    report = "\n".join(lines) + "\n"
    if failures:
        raise VerificationFailure(failures, report)
    return report
