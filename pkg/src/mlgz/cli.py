"""Command line interface: ``mlgz <subcommand> ...``, output as key=value lines.

Exit status: 0 on success, 1 when a mathematical check fails, 2 for usage
and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .aut import brute_force_aut, crt_unit_aut, d2k_analysis, orlik_cyclic_search, signed_monodromy_group
from .cyclotomic import chain_condition_witness, exists_minus_id_power, power_traces, trace_sum
from .errors import (
    InconsistentDegree,
    MilnorError,
    NotD2k,
    ParseError,
    UnsupportedFamily,
    VerificationFailure,
)
from .milnor import ade_milnor, suspend


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _load(path: str | None) -> list[catalog.CatalogEntry]:
    if path is None:
        return catalog.shipped_catalog()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return catalog.load_catalog(text)


def _entry(args) -> catalog.CatalogEntry:
    try:
        return catalog.find_entry(_load(args.catalog), args.name)
    except KeyError:
        raise UsageError(f"unknown catalog entry {args.name!r}") from None


def _model(args):
    return ade_milnor(args.family, args.mu)


def cmd_info(args, out):
    e = _entry(args)
    f = e.factors
    out(f"name={e.name}")
    out(f"kind={e.kind}")
    out(f"mu={e.mu}")
    out(f"charpoly={f.render()}")
    out(f"squarefree={'yes' if e.squarefree else 'no'}")
    out(f"trace={trace_sum(f)}")
    out(f"monodromy_order={f.order}")
    k = exists_minus_id_power(f.ord_set)
    out(f"minus_id_power={k if k is not None else 'none'}")
    order = e.expected_gz_order
    out(f"gz_order={order if order is not None else 'unknown'}")
    out(f"order_provenance={e.order_provenance}")
    out(f"classification={e.classification}")
    return 0


_ENGINES = {
    "brute": brute_force_aut,
    "crt": crt_unit_aut,
    "signed": signed_monodromy_group,
    "d2k": lambda ml: d2k_analysis(ml).group(),
}


def cmd_aut(args, out):
    ml = _model(args)
    group = _ENGINES[args.engine](ml)
    group.verify(ml)
    out(f"model={ml.name}")
    out(f"mu={ml.mu}")
    out(f"charpoly={ml.factorization().render()}")
    out(f"engine={group.engine}")
    for key, value in sorted(group.info.items()):
        out(f"{key}={value}")
    out(f"gz_order={group.order}")
    if args.elements:
        for a in group:
            out("element=" + _vec(a.flat()))
    return 0


def cmd_trace(args, out):
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    e = _entry(args)
    for i, t in enumerate(power_traces(e.factors, args.k), start=1):
        out(f"t{i}={t}")
    return 0


def cmd_suspend(args, out):
    if args.times < 0:
        raise UsageError("--times must be non-negative")
    base = _model(args)
    ml = base
    for _ in range(args.times):
        ml = suspend(ml)

    def factor(new, old):
        if new == old:
            return 1
        if new == -old:
            return -1
        raise MilnorError("suspension is not a sign change")

    out(f"model={base.name}")
    out(f"n={ml.n}")
    out(f"L_sign={factor(ml.L, base.L)}")
    out(f"M_sign={factor(ml.M, base.M)}")
    out(f"I_sign={factor(ml.I, base.I)}")
    return 0


def cmd_orlik(args, out):
    ml = _model(args)
    dec = orlik_cyclic_search(ml, bound=args.bound)
    out(f"model={ml.name}")
    out(f"blocks={len(dec.split)}")
    for i, (p, a) in enumerate(zip(dec.split, dec.generators), start=1):
        out(f"p{i}={p}")
        out(f"a{i}={_vec(a)}")
    out("verified=yes")
    return 0


def cmd_chain(args, out):
    e = _entry(args)
    w = chain_condition_witness(e.factors.ord_set)
    out(f"name={e.name}")
    out("m=" + ",".join(map(str, w.m_seq)))
    out(f"i1={w.i1}")
    out(f"i2={w.i2}")
    for i in range(2, len(w.m_seq) + 1):
        out(f"step{i}=j:{w.j(i)},p:{w.p(i)},k:{w.k(i)}")
    return 0


def cmd_verify_table(args, out):
    if args.path is None:
        entries = catalog.shipped_catalog()
    else:
        try:
            text = Path(args.path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
        # lenient: degree mismatches are reported per row with the other checks
        entries = catalog.load_catalog(text, strict=False)
    try:
        report = catalog.verify_all(entries)
    except VerificationFailure as exc:
        out(exc.report.rstrip("\n"))
        raise
    out(report.rstrip("\n"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mlgz", description="Milnor lattice automorphism toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_catalog(sp):
        sp.add_argument("--catalog", help="catalog file (default: the shipped table)")

    def with_model(sp):
        sp.add_argument("family", choices=["A", "D", "E"], type=str.upper)
        sp.add_argument("mu", type=int)

    s = sub.add_parser("info", help="facts about one catalog row")
    s.add_argument("name")
    with_catalog(s)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("aut", help="G_Z of an ADE model")
    with_model(s)
    s.add_argument("--engine", choices=sorted(_ENGINES), default="brute")
    s.add_argument("--elements", action="store_true", help="also print every element")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("trace", help="traces of monodromy powers")
    s.add_argument("name")
    s.add_argument("--k", type=int, default=2)
    with_catalog(s)
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("suspend", help="suspend an ADE model and compare signs")
    with_model(s)
    s.add_argument("--times", type=int, default=1)
    s.set_defaults(func=cmd_suspend)

    s = sub.add_parser("orlik", help="cyclic decomposition search")
    with_model(s)
    s.add_argument("--bound", type=int, default=6)
    s.set_defaults(func=cmd_orlik)

    s = sub.add_parser("verify-table", help="check every row of a catalog")
    s.add_argument("path", nargs="?")
    s.set_defaults(func=cmd_verify_table)

    s = sub.add_parser("chain", help="chain condition witness for a row")
    s.add_argument("name")
    with_catalog(s)
    s.set_defaults(func=cmd_chain)
    return p


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout

    def out(line: str) -> None:
        stdout.write(line + "\n")

    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, ParseError, InconsistentDegree, UnsupportedFamily, NotD2k) as exc:
        out(f"error={exc}")
        return 2
    except VerificationFailure as exc:
        out(f"error={len(exc.failures)} check(s) failed: " + "; ".join(exc.failures))
        return 1
    except MilnorError as exc:
        out(f"error={type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
