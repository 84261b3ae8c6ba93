"""Regression audit of the printed reference tables against the computed
ground truth.

The bracket computation and the Noether-operator components are authoritative;
every printed entry is checked and disagreements are reported (never silently
adopted).  The pinned allow-lists in liesym.reference_tables enumerate exactly
the printed entries whose content the symbolic oracle refutes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import HeatEquation, generators
from .expr import Expr, equals_zero
from .fields import decompose_in_basis, lie_bracket
from .parser import parse
from .reference_tables import BRACKET_TABLES, CONSERVED_TABLES

__all__ = [
    "BracketAuditRecord",
    "bracket_table_audit",
    "bracket_mismatch_keys",
    "unlisted_nonzero_brackets",
    "conserved_vector_diff",
]

_NAME_RE = re.compile(r"^(.*?)\*?([GX]\d+)$")


def parse_name_combo(text: str) -> dict[str, Expr]:
    """Parse a linear combination of generator names ("-4*G29+G27",
    "2*alpha*G01", "0") into {name: coefficient}."""
    text = text.replace(" ", "")
    if text in ("0", ""):
        return {}
    terms: list[str] = []
    depth = 0
    start = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start:
            terms.append(text[start:k])
            start = k
    terms.append(text[start:])
    combo: dict[str, Expr] = {}
    for term in terms:
        m = _NAME_RE.match(term)
        if m is None:
            raise ValueError(f"cannot read generator combination term {term!r}")
        prefix, name = m.groups()
        sign = Expr.one()
        if prefix.startswith("+"):
            prefix = prefix[1:]
        elif prefix.startswith("-"):
            sign, prefix = -Expr.one(), prefix[1:]
        if prefix in ("",):
            coeff = sign
        else:
            coeff = sign * parse(prefix.rstrip("*"))
        combo[name] = combo.get(name, Expr.zero()) + coeff
    return {k: v for k, v in combo.items() if not v.is_zero}


@dataclass(frozen=True)
class BracketAuditRecord:
    i: str
    j: str
    printed: str | None
    computed: str
    verdict: str  # "match" | "mismatch" | "unknown-name"
    note: str = ""

    @property
    def key(self) -> tuple:
        return (self.i, self.j, self.printed, self.computed)


def _combo_str(coeffs: dict[str, Expr]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for name in sorted(coeffs):
        c = str(coeffs[name])
        if c == "1":
            parts.append(f"+{name}")
        elif c == "-1":
            parts.append(f"-{name}")
        else:
            sign = "+"
            if c.startswith("-") and ("+" not in c[1:] and " - " not in c):
                sign, c = "-", c[1:]
            if "+" in c or " - " in c:
                c = "(" + c + ")"
            parts.append(f"{sign}{c}*{name}")
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def bracket_table_audit(eq: HeatEquation) -> list[BracketAuditRecord]:
    """Audit every printed bracket entry for this equation's table."""
    table = BRACKET_TABLES.get((eq.n, eq.regime))
    if table is None:
        return []
    gens = {g.name: g.field for g in generators(eq)}
    basis = list(gens.values())
    records = []
    for entry in table:
        if entry.i not in gens or entry.j not in gens:
            records.append(BracketAuditRecord(
                entry.i, entry.j, entry.rhs, "", "unknown-name", entry.note))
            continue
        br = lie_bracket(gens[entry.i], gens[entry.j])
        dec = decompose_in_basis(br, basis)
        if entry.infinite:
            ok = (not dec.in_span) and dec.infinite_family
            records.append(BracketAuditRecord(
                entry.i, entry.j, None,
                "(infinite family)" if ok else _combo_str(dec.coeffs or {}),
                "match" if ok else "mismatch", entry.note))
            continue
        computed = dec.coeffs if dec.in_span else None
        if computed is None:
            records.append(BracketAuditRecord(
                entry.i, entry.j, entry.rhs, "(outside span)", "mismatch", entry.note))
            continue
        try:
            printed = parse_name_combo(entry.rhs)
        except ValueError:
            records.append(BracketAuditRecord(
                entry.i, entry.j, entry.rhs, _combo_str(computed), "unknown-name", entry.note))
            continue
        if any(name not in gens for name in printed):
            records.append(BracketAuditRecord(
                entry.i, entry.j, entry.rhs, _combo_str(computed), "unknown-name", entry.note))
            continue
        same = set(printed) == set(computed) and all(
            equals_zero(printed[k] - computed[k]) for k in printed
        )
        records.append(BracketAuditRecord(
            entry.i, entry.j, entry.rhs, _combo_str(computed),
            "match" if same else "mismatch", entry.note))
    return records


def bracket_mismatch_keys(eq: HeatEquation) -> frozenset:
    """Keys (i, j, printed rhs) of the printed entries the oracle refutes."""
    return frozenset(r.key for r in bracket_table_audit(eq) if r.verdict != "match")


def unlisted_nonzero_brackets(eq: HeatEquation) -> list[tuple[str, str, str]]:
    """Nonzero computed brackets absent from the printed table (informational;
    brackets involving the infinite generator are skipped)."""
    table = BRACKET_TABLES.get((eq.n, eq.regime), ())
    printed_pairs = {frozenset((e.i, e.j)) for e in table}
    gens = [g for g in generators(eq) if g.klass != "infinite"]
    fields = [g.field for g in gens]
    basis = [g.field for g in generators(eq)]
    out = []
    for a in range(len(fields)):
        for b in range(a + 1, len(fields)):
            if frozenset((fields[a].name, fields[b].name)) in printed_pairs:
                continue
            br = lie_bracket(fields[a], fields[b])
            if br.is_zero():
                continue
            dec = decompose_in_basis(br, basis)
            out.append((fields[a].name, fields[b].name,
                        _combo_str(dec.coeffs) if dec.in_span else "(outside span)"))
    return out


def conserved_vector_diff(cv, eq: HeatEquation) -> list[dict]:
    """Differences between the computed conserved vector and the printed
    component list, part by part.  Empty when the entry matches or when no
    printed entry exists."""
    from .conservation import FracIntTerm, JTerm

    table = CONSERVED_TABLES.get((eq.n, eq.regime))
    if not table or cv.symmetry not in table:
        return []
    entry = table[cv.symmetry]
    printed_w = parse(entry.W)
    symbols = {"W": printed_w}
    diffs: list[dict] = []

    def check(part: str, printed_str: str, computed: Expr):
        printed_expr = parse(printed_str, symbols)
        delta = printed_expr - computed
        if not delta.is_zero:
            diffs.append({
                "part": part,
                "printed": printed_str,
                "computed": str(computed),
                "delta": str(delta),
            })

    if not equals_zero(printed_w - cv.W):
        diffs.append({
            "part": "W",
            "printed": entry.W,
            "computed": str(cv.W),
            "delta": str(printed_w - cv.W),
        })
    names = "xyzw"
    if eq.regime == "integer":
        check("Ct", entry.Ct, cv.Ct_local)
    else:
        check("Ct_local", entry.Ct_local, cv.Ct_local)
        frac = next(n for n in cv.Ct_nodes if isinstance(n, FracIntTerm))
        jn = next(n for n in cv.Ct_nodes if isinstance(n, JTerm))
        check("frac_int_arg", entry.frac_arg, frac.arg)
        check("J_first_arg", entry.j_f, jn.f)
    for i, printed_cx in enumerate(entry.Cx):
        check(f"C{names[i]}", printed_cx, cv.Cx[i])
    if entry.printed_label and entry.printed_label != cv.symmetry:
        diffs.append({
            "part": "label",
            "printed": entry.printed_label,
            "computed": cv.symmetry,
            "delta": "printed under a shifted label",
        })
    if entry.note:
        for d in diffs:
            d.setdefault("note", entry.note)
    return diffs
