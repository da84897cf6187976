"""Text, markdown, CSV and JSON renderings of pieces, tables and reports."""

import csv
import io
import json
from collections.abc import Sequence

from .algebra import TAU, Element, Monomial
from .models import CheckReport
from .pieces import GradedPiece, PoincareTable
from .presentations import RingPresentation


def _factor_order(ring: RingPresentation, m: Monomial) -> list:
    def key(item):
        symbol = item[0]
        if symbol.name == TAU:
            return (-1, -1)
        return (ring.generator_index(symbol.name), -1 if symbol.k is None else symbol.k)

    return sorted(m.powers, key=key)


def monomial_text(ring: RingPresentation, m: Monomial) -> str:
    if m.is_one:
        return "1"
    factors = []
    for symbol, exp in _factor_order(ring, m):
        name = ring.generator(symbol.name).display
        if symbol.k is not None:
            name = f"{name}({symbol.k})"
        factors.append(name if exp == 1 else f"{name}^{exp}")
    return "·".join(factors)


def element_text(ring: RingPresentation, x: Element) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for m, c in sorted(x.terms, key=lambda t: ring.sort_key(t[0])):
        body = monomial_text(ring, m)
        if m.is_one:
            text = str(c)
        elif c == 1:
            text = body
        elif c == -1:
            text = f"-{body}"
        else:
            text = f"{c}·{body}"
        parts.append(text)
    return " + ".join(parts).replace("+ -", "- ")


def piece_text(ring: RingPresentation, piece: GradedPiece) -> str:
    basis = ", ".join(monomial_text(ring, m) for m in piece.basis)
    return f"{piece.group}: {{{basis}}}"


def _table_rows(table: PoincareTable) -> tuple[list[str], list[list[str]]]:
    if table.q_max is None:
        header = ["p", "group"]
        rows = [[str(d.p), str(table.cells[d])] for d in table.degrees()]
        return header, rows
    header = ["p"] + [f"q={q}" for q in range(table.q_max + 1)]
    rows = []
    for p in range(table.p_max + 1):
        rows.append([str(p)] + [str(table.cells[d]) for d in table.degrees() if d.p == p])
    return header, rows


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _markdown(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def table_json(table: PoincareTable) -> str:
    cells = [{"bidegree": d.as_list(), "group": str(table.cells[d])} for d in table.degrees()]
    document = {"ring": table.ring, "p_max": table.p_max, "q_max": table.q_max, "cells": cells}
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def table_csv(table: PoincareTable) -> str:
    return _csv(*_table_rows(table))


def table_markdown(table: PoincareTable) -> str:
    return f"## {table.ring}\n\n" + _markdown(*_table_rows(table))


def table_text(table: PoincareTable) -> str:
    return "".join(f"{d}: {table.cells[d]}\n" for d in table.degrees())


_FINDING_HEADER = ["bidegree", "expected", "computed", "witness"]


def _finding_rows(report: CheckReport) -> list[list[str]]:
    return [
        [
            ",".join("" if v is None else str(v) for v in f.bidegree),
            f.expected,
            f.computed,
            "; ".join(f.witness),
        ]
        for f in report.findings
    ]


def reports_json(reports: Sequence[CheckReport]) -> str:
    document = [r.model_dump(mode="json") for r in reports]
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def reports_csv(reports: Sequence[CheckReport]) -> str:
    rows = []
    for r in reports:
        rows += [[r.check, r.status.value, *row] for row in _finding_rows(r)]
        if not r.findings:
            rows.append([r.check, r.status.value, "", "", "", ""])
    return _csv(["check", "status", *_FINDING_HEADER], rows)


def reports_markdown(reports: Sequence[CheckReport]) -> str:
    sections = []
    for r in reports:
        box = r.box
        text = f"## {r.check}: {r.status.value}\n\nbox: p ≤ {box.p_max}, q ≤ {box.q_max}, m ≤ {box.m_max}\n"
        if r.notes:
            text += "\n" + "".join(f"- {note}\n" for note in r.notes)
        if r.findings:
            text += "\n" + _markdown(_FINDING_HEADER, _finding_rows(r))
        sections.append(text)
    return "\n".join(sections)


def reports_text(reports: Sequence[CheckReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.check}: {r.status.value.upper()} ({len(r.findings)} findings)")
        lines += [f"  note: {note}" for note in r.notes]
        for f, row in zip(r.findings, _finding_rows(r)):
            lines.append(f"  [{row[0]}] expected {f.expected}, computed {f.computed}; witness {row[3] or '-'}")
    return "\n".join(lines) + "\n"
