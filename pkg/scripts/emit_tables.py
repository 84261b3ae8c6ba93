#!/usr/bin/env python3
"""Reproduce every catalog, commutator table, conserved-vector list, and
discrepancy report for n = 1..4 in both regimes, as JSON and LaTeX files
under out/tables/."""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from liesym.audit import bracket_table_audit
from liesym.catalog import (
    FRACTIONAL,
    INTEGER,
    HeatEquation,
    catalog_json_obj,
    catalog_latex,
    generators,
)
from liesym.conservation import (
    conserved_vector,
    conserved_vector_json_obj,
    conserved_vector_latex,
)
from liesym.fields import commutator_table

OUT = pathlib.Path(__file__).resolve().parents[1] / "out" / "tables"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for n in (1, 2, 3, 4):
        for regime in (INTEGER, FRACTIONAL):
            eq = HeatEquation(n, regime)
            stem = f"n{n}_{regime}"
            (OUT / f"catalog_{stem}.json").write_text(
                json.dumps(catalog_json_obj(eq), indent=2, sort_keys=True))
            (OUT / f"catalog_{stem}.tex").write_text(catalog_latex(eq))
            table = commutator_table([g.field for g in generators(eq)])
            audit = [
                {"i": r.i, "j": r.j, "printed": r.printed,
                 "computed": r.computed, "verdict": r.verdict}
                for r in bracket_table_audit(eq)
            ]
            (OUT / f"brackets_{stem}.json").write_text(json.dumps(
                {"table": table.to_json_obj(), "audit": audit},
                indent=2, sort_keys=True))
            (OUT / f"brackets_{stem}.tex").write_text(table.to_latex())
            conserved = [conserved_vector_json_obj(conserved_vector(g, eq))
                         for g in generators(eq)]
            (OUT / f"conserved_{stem}.json").write_text(
                json.dumps(conserved, indent=2, sort_keys=True))
            (OUT / f"conserved_{stem}.tex").write_text("\n\n".join(
                conserved_vector_latex(conserved_vector(g, eq))
                for g in generators(eq)))
            print(f"wrote {stem}: {len(conserved)} conserved vectors, "
                  f"{sum(1 for a in audit if a['verdict'] != 'match')} print discrepancies")
    print(f"all tables under {OUT}")


if __name__ == "__main__":
    main()
