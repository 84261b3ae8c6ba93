"""Hand-transcribed reference tables this toolkit audits: the printed
commutator tables and conserved-vector component lists for n = 1..4 in both
regimes.

Entries are stored as printed, including evident misprints (duplicate
left-hand sides, unknown generator names, unbalanced parentheses repaired
minimally, missing factors), so that the audit can report exact
disagreements between the printed tables and the computed ground truth.
Transcription normalizations that are NOT counted as disagreements:

  * implicit multiplication made explicit, subscripts braced;
  * phi(t,x,...) written as phi (the argument list is notation);
  * the fractional equation combination printed with derivative order
    1-alpha inside flux components is read at order alpha (a systematic
    notational slip; the time-component D^(1-alpha)(W) marker is kept);
  * entries are keyed by the symmetry whose printed characteristic W
    identifies them; where the printed label differs (the shifted 4D
    fractional block) the printed label is recorded.

Component strings may reference the symbol W, which the audit resolves to
the printed W of the same entry.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "BracketEntry",
    "BRACKET_TABLES",
    "ALLOWED_BRACKET_DISCREPANCIES",
    "ConservedEntry",
    "CONSERVED_TABLES",
]


@dataclass(frozen=True)
class BracketEntry:
    i: str
    j: str
    rhs: str | None  # linear combination of generator names, or None
    infinite: bool = False  # printed as an arbitrary-solution family
    note: str = ""


def _b(i, j, rhs, note=""):
    return BracketEntry(i, j, rhs, note=note)


BRACKET_TABLES: dict[tuple[int, str], tuple[BracketEntry, ...]] = {
    (1, "integer"): (
        _b("G3", "G2", "G1"),
        _b("G3", "G4", "2*G3"),
        _b("G3", "G5", "-2*G6+4*G4"),
        _b("G1", "G2", "-G6"),
        _b("G1", "G5", "2*G2"),
        _b("G1", "G4", "G1"),
        _b("G2", "G4", "-G2"),
        _b("G4", "G5", "2*G5"),
    ),
    (1, "fractional"): (
        # full printed 3x3 grid (upper triangle)
        _b("G01", "G02", "0"),
        _b("G01", "G03", "2*alpha*G01"),
        _b("G02", "G03", "0"),
    ),
    (2, "integer"): (
        _b("G21", "G28", "2*G24"),
        _b("G21", "G25", "-G22"),
        _b("G21", "G27", "G21"),
        _b("G21", "G24", "-G29"),
        _b("G28", "G26", "-4*G29+G27"),
        _b("G28", "G25", "-2*G28"),
        _b("G28", "G27", "-2*G23"),
        _b("G26", "G27", "2*G26"),
        _b("G26", "G24", "2*G21"),
        _b("G26", "G23", "2*G22"),
        _b("G25", "G24", "G23"),
        _b("G25", "G23", "-G24"),
        _b("G25", "G22", "G21"),
        _b("G27", "G24", "2*G24"),
        _b("G27", "G23", "G23"),
        _b("G27", "G22", "-G22"),
        _b("G23", "G22", "G29"),
    ),
    (2, "fractional"): (
        _b("G11", "G14", "2*alpha*G11"),
        _b("G14", "G13", "-4*G13"),
        _b("G14", "G12", "-2*alpha*G12"),
        BracketEntry("G11", "G16", None, infinite=True,
                     note="printed as an arbitrary solution G(x,y,t) d_u"),
    ),
    (3, "integer"): (
        _b("G31", "G312", "2*G35"),
        _b("G31", "G312", "-G32", note="duplicate left-hand side in print"),
        _b("G31", "G311", "G31"),
        _b("G31", "G35", "-G313"),
        _b("G31", "G38", "G33"),
        _b("G312", "G310", "6*G313-4*G311"),
        _b("G312", "G311", "-2*G312"),
        _b("G312", "G32", "-2*G34"),
        _b("G312", "G33", "-2*G36"),
        _b("G310", "G311", "2*G310"),
        _b("G310", "G35", "2*G31"),
        _b("G310", "G34", "2*G32"),
        _b("G310", "G36", "2*G33"),
        _b("G37", "G35", "-G34"),
        _b("G37", "G34", "-G35"),
        _b("G37", "G32", "-G31"),
        _b("G37", "G38", "-G39"),
        _b("G37", "G39", "G38"),
        _b("G311", "G35", "G35"),
        _b("G311", "G34", "G34"),
        _b("G311", "G32", "-G32"),
        _b("G311", "G36", "G36"),
        _b("G311", "G33", "-G33"),
        _b("G35", "G38", "G36"),
        _b("G34", "G32", "2*G313"),
        _b("G34", "G39", "-G36"),
        _b("G32", "G39", "-G33", note="printed without an equals sign"),
        _b("G36", "G38", "-G35"),
        _b("G36", "G33", "G313"),
        _b("G36", "G39", "G34"),
        _b("G38", "G33", "-G31"),
        _b("G38", "G39", "-G37"),
        _b("G33", "G39", "-G32"),
    ),
    (3, "fractional"): (
        _b("G43", "G47", "alpha*G43"),
        _b("G43", "G45", "-2*G44"),
        _b("G44", "G47", "alpha*G44"),
        _b("G44", "G45", "-G43"),
        _b("G47", "G46", "-2*G46"),
        _b("G47", "G42", "-alpha*G42"),
        _b("G47", "G41", "-alpha*G41"),
        _b("G41", "G45", "2*G42"),
    ),
    (4, "integer"): (
        _b("G51", "G517", "2*G56"),
        _b("G51", "G517", "G52", note="duplicate left-hand side in print"),
        _b("G51", "G512", "G53"),
        _b("G51", "G513", "-G54"),
        _b("G51", "G516", "G51"),
        _b("G51", "G56", "-G518"),
        _b("G517", "G515", "8*G518-G516"),
        _b("G517", "G516", "-2*G517"),
        _b("G517", "G52", "-2*G58"),
        _b("G517", "G53", "-2*G57"),
        _b("G517", "G54", "-2*G581", note="G581 is not a catalog name"),
        _b("G517", "G516", "2*G515", note="duplicate left-hand side in print"),
        _b("G515", "G56", "2*G51"),
        _b("G515", "G55", "2*G53"),
        _b("G515", "G57", "2*G53"),
        _b("G515", "G58", "2*G54"),
        _b("G59", "G511", "G512"),
        _b("G59", "G512", "-G511"),
        _b("G59", "G510", "G513"),
        _b("G59", "G513", "-G510"),
        _b("G59", "G56", "-G55"),
        _b("G59", "G55", "G56"),
        _b("G59", "G52", "-G51"),
        _b("G511", "G514", "G510"),
        _b("G511", "G512", "G59"),
        _b("G511", "G510", "-G514"),
        _b("G511", "G55", "-G57"),
        _b("G511", "G57", "G55"),
        _b("G511", "G52", "G53"),
        _b("G511", "G53", "G52"),
        _b("G514", "G512", "-G513"),
        _b("G514", "G510", "G511"),
        _b("G514", "G513", "G512"),
        _b("G514", "G57", "G58"),
        _b("G514", "G58", "-G57"),
        _b("G514", "G53", "G54"),
        _b("G514", "G58", "-G53", note="duplicate left-hand side in print"),
        _b("G512", "G513", "-G514"),
        _b("G512", "G56", "-G57"),
        _b("G512", "G57", "G56"),
        _b("G512", "G53", "G51"),
        _b("G510", "G513", "G59"),
        _b("G510", "G55", "G58"),
        _b("G510", "G58", "-G55"),
        _b("G510", "X52", "G54", note="X52 is not a catalog name"),
        _b("G510", "G58", "-G52", note="duplicate left-hand side in print"),
        _b("G513", "G54", "-G51"),
        _b("G513", "G58", "-G56"),
        _b("G513", "G56", "G58"),
        _b("G516", "G54", "-G54"),
        _b("G516", "G53", "-G53"),
        _b("G516", "G52", "-G52"),
        _b("G516", "G58", "G58"),
        _b("G516", "G57", "G57"),
        _b("G516", "G55", "G55"),
        _b("G516", "G56", "G56"),
        _b("G55", "G52", "G518"),
        _b("G57", "G53", "G518"),
        _b("G581", "G54", "G518", note="G581 is not a catalog name"),
    ),
    (4, "fractional"): (
        _b("G64", "G67", "-G65"),
        _b("G64", "G68", "-G66"),
        _b("G65", "G67", "G64"),
        _b("G65", "G69", "-G66"),
        _b("G62", "G67", "G61"),
        _b("G62", "G69", "G63"),
        _b("G61", "G67", "-G62"),
        _b("G61", "G63", "G68"),
        _b("G67", "G68", "2*G69"),
        _b("G67", "G69", "-G68"),
        _b("G63", "G68", "-G61"),
        _b("G63", "G69", "-G62"),
        _b("G68", "G66", "-G64"),
        _b("G68", "G69", "G67"),
        _b("G66", "G69", "G65"),
    ),
}

# Printed bracket entries whose right-hand side the symbolic oracle refutes
# (or whose generator names do not exist); pinned from the mechanical audit.
# Each row is (i, j, printed rhs, computed rhs) so that a change on either
# side -- a print transcription edit or a catalog/bracket regression -- breaks
# the exact set equality asserted by the tests and the verify subcommand.
ALLOWED_BRACKET_DISCREPANCIES: dict[tuple[int, str], frozenset] = {
    (1, "integer"): frozenset({
        ("G3", "G2", "G1", "2*G1"),
    }),
    (1, "fractional"): frozenset({
        ("G01", "G02", "0", "alpha*G01"),
        ("G01", "G03", "2*alpha*G01", "0"),
    }),
    (2, "integer"): frozenset({
        ("G28", "G26", "-4*G29+G27", "-4*G27+4*G29"),
        ("G28", "G25", "-2*G28", "0"),
        ("G28", "G27", "-2*G23", "-2*G28"),
        ("G25", "G22", "G21", "-G21"),
        ("G27", "G24", "2*G24", "G24"),
    }),
    (2, "fractional"): frozenset({
        ("G14", "G13", "-4*G13", "0"),
    }),
    (3, "integer"): frozenset({
        ("G31", "G312", "-G32", "2*G35"),
        ("G37", "G34", "-G35", "G35"),
        ("G37", "G32", "-G31", "G31"),
        ("G34", "G32", "2*G313", "G313"),
        ("G34", "G39", "-G36", "G36"),
        ("G32", "G39", "-G33", "G33"),
        ("G36", "G39", "G34", "-G34"),
        ("G38", "G33", "-G31", "G31"),
    }),
    (3, "fractional"): frozenset({
        ("G43", "G45", "-2*G44", "G42"),
        ("G44", "G47", "alpha*G44", "0"),
        ("G44", "G45", "-G43", "G46"),
        ("G47", "G46", "-2*G46", "0"),
        ("G41", "G45", "2*G42", "0"),
    }),
    (4, "integer"): frozenset({
        ("G51", "G517", "G52", "2*G56"),
        ("G51", "G513", "-G54", "G54"),
        ("G517", "G515", "8*G518-G516", "-4*G516+8*G518"),
        ("G517", "G52", "-2*G58", "-2*G55"),
        ("G517", "G54", "-2*G581", "-2*G58"),
        ("G517", "G516", "2*G515", "-2*G517"),
        ("G515", "G55", "2*G53", "2*G52"),
        ("G59", "G52", "-G51", "G51"),
        ("G511", "G52", "G53", "-G53"),
        ("G514", "G57", "G58", "-G58"),
        ("G514", "G58", "-G57", "G57"),
        ("G514", "G53", "G54", "-G54"),
        ("G514", "G58", "-G53", "G57"),
        ("G510", "G55", "G58", "-G58"),
        ("G510", "G58", "-G55", "G55"),
        ("G510", "X52", "G54", ""),
        ("G510", "G58", "-G52", "G55"),
        ("G513", "G54", "-G51", "G51"),
        ("G513", "G58", "-G56", "G56"),
        ("G513", "G56", "G58", "-G58"),
        ("G581", "G54", "G518", ""),
    }),
    (4, "fractional"): frozenset({
        ("G64", "G67", "-G65", "-G62"),
        ("G64", "G68", "-G66", "0"),
        ("G65", "G67", "G64", "G69"),
        ("G65", "G69", "-G66", "-G67"),
        ("G62", "G67", "G61", "G64"),
        ("G62", "G69", "G63", "0"),
        ("G61", "G67", "-G62", "0"),
        ("G61", "G63", "G68", "0"),
        ("G67", "G68", "2*G69", "0"),
        ("G67", "G69", "-G68", "G65"),
        ("G63", "G68", "-G61", "G61"),
        ("G63", "G69", "-G62", "0"),
        ("G68", "G66", "-G64", "-G65"),
        ("G68", "G69", "G67", "G610"),
        ("G66", "G69", "G65", "0"),
    }),
}


@dataclass(frozen=True)
class ConservedEntry:
    """Printed conserved-vector components; strings may use the symbol W.
    For fractional entries Ct splits into the printed local part, the
    argument of the D^(1-alpha)/I^(1-alpha) marker, and the first J slot."""

    W: str
    Ct: str = ""
    Cx: tuple[str, ...] = ()
    Ct_local: str = ""
    frac_arg: str = ""
    j_f: str = ""
    printed_label: str = ""
    note: str = ""


def _ci(W, Ct, *Cx, note=""):
    return ConservedEntry(W=W, Ct=Ct, Cx=tuple(Cx), note=note)


def _cf(W, local, frac_arg, j_f, *Cx, label="", note=""):
    return ConservedEntry(W=W, Ct_local=local, frac_arg=frac_arg, j_f=j_f,
                          Cx=tuple(Cx), printed_label=label, note=note)


_E1 = "(u_t-u_{xx})"
_E2 = "(u_t-u_{xx}-u_{yy})"
_E3 = "(u_t-u_{xx}-u_{yy}-u_{zz})"
_E4 = "(u_t-u_{xx}-u_{yy}-u_{zz}-u_{ww})"
_E4SHORT = "(u_t-u_{xx}-u_{yy}-u_{zz})"  # printed with u_ww missing
_F1 = "(Dalpha[u]-u_{xx})"
_F2 = "(Dalpha[u]-u_{xx}-u_{yy})"
_F3 = "(Dalpha[u]-(u_{xx}+u_{yy}+u_{zz}))"
_F4 = "(Dalpha[u]-(u_{xx}+u_{yy}+u_{zz}+u_{ww}))"

CONSERVED_TABLES: dict[tuple[int, str], dict[str, ConservedEntry]] = {
    (1, "integer"): {
        "G1": _ci("-u_x",
                  "-u_x*phi",
                  "phi*" + _E1 + "-u_x*phi_x+phi*u_{xx}"),
        "G2": _ci("-u*x-2*t*u_x",
                  "W*phi",
                  "2*t*phi*" + _E1 + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})",
                  note="unbalanced parenthesis in print; minimal repair"),
        "G3": _ci("-u_t",
                  "phi*" + _E1 + "+W*phi",
                  "W*phi_x+phi*u_{tx}"),
        "G4": _ci("-2*t*u_t-x*u_x",
                  "2*t*phi*" + _E1 + "+W*phi",
                  "x*phi*" + _E1 + "+W*phi_x+(u_x+x*u_{xx}+2*t*u_{tx})",
                  note="multiplier phi missing on the last group in print"),
        "G5": _ci("-u*(2*t+x^2)-4*t^2*u_t-4*t*x*u_x",
                  "4*t^2*phi*" + _E1 + "+W*phi",
                  "4*t*x*phi*" + _E1
                  + "+W*phi_x+phi*(2*t*u_x+2*u*x+x^2*u_x+4*t^2*u_{tx}+4*t*(u_x+x*u_{xx}))",
                  note="unbalanced parenthesis in print; minimal repair"),
        "G6": _ci("u", "W*phi", "W*phi_x-phi*u_x"),
        "G7": _ci("F", "W*phi", "W*phi_x-phi*F_x"),
    },
    (2, "integer"): {
        "G21": _ci("-u_x",
                   "-u_x*phi",
                   "phi*" + _E2 + "+W*phi_x+u_{xx}",
                   "W*phi_y",
                   note="multiplier phi missing on u_xx in print"),
        "G22": _ci("-u_y",
                   "-u_y*phi",
                   "W*phi_y",
                   "phi*" + _E2 + "+W*phi_y+u_{yy}",
                   note="x-component printed with phi_y; phi missing on u_yy"),
        "G23": _ci("-u*y-2*t*u_y",
                   "W*phi",
                   "W*phi_x+phi*(y*u_x)",
                   "2*t*phi*" + _E2 + "+W*phi_y+phi*(u_y*y+u+2*t*u_{yy})"),
        "G24": _ci("-u*x-2*t*u_x",
                   "W*phi",
                   "2*t*phi*" + _E2 + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})",
                   "W*phi_y+phi*x*u_y"),
        "G25": _ci("-y*u_x+x*u_y",
                   "W*phi",
                   "y*phi*" + _E2 + "+W*phi_x-phi*(u_y-y*u_{xx})",
                   "-x*phi*" + _E2 + "+W*phi_y-phi*(x*u_{yy}-u_x)"),
        "G26": _ci("-u_t",
                   "phi*" + _E2 + "+W*phi",
                   "W*phi_x+phi*u_{tx}",
                   "W*phi_y+phi*u_{ty}"),
        "G27": _ci("-2*t*u_t-x*u_x-y*u_y",
                   "2*t*phi*" + _E2 + "+W*phi",
                   "x*phi*" + _E2 + "+W*phi_x+phi*(2*t*u_{tx}+x*u_{xx}+u_x)",
                   "y*phi*" + _E2 + "+W*phi_y+phi*(2*t*u_{ty}+y*u_{yy}+u_y)"),
        "G28": _ci("-u*(4*t+x^2+y^2)-4*t^2*u_t-4*x*t*u_x-4*y*t*u_y",
                   "4*t^2*phi*" + _E2 + "+W*phi",
                   "4*x*t*phi*" + _E2
                   + "+W*phi_x+phi*(4*t*u_x+x^2*u_x+2*x*u+y^2*u_x+4*t^2*u_{tx}+4*t*(u_x+x*u_{xx}))",
                   "4*y*t*phi*" + _E2
                   + "+W*phi_y+phi*(4*t*u_y+x^2*u_y+2*y*u+y^2*u_y+4*t^2*u_{ty}+4*t*(u_y+y*u_{yy}))"),
        "G29": _ci("u", "W*phi", "W*phi_x-phi*u_x", "W*phi_y-phi*u_y"),
        "G210": _ci("F", "W*phi", "W*phi_x-phi*F_x", "W*phi_y-phi*F_y"),
    },
    (3, "integer"): {
        "G31": _ci("-u_x", "W*phi",
                   "phi*" + _E3 + "+W*phi_x+u_{xx}",
                   "W*phi_y", "W*phi_z",
                   note="multiplier phi missing on u_xx in print"),
        "G32": _ci("-u_y", "W*phi",
                   "W*phi_x",
                   "phi*" + _E3 + "+W*phi_y+u_{yy}",
                   "W*phi_z",
                   note="multiplier phi missing on u_yy in print"),
        "G33": _ci("-u_z", "W*phi",
                   "W*phi_x", "W*phi_y",
                   "phi*" + _E3 + "+W*phi_z+u_{zz}",
                   note="multiplier phi missing on u_zz in print"),
        "G34": _ci("-u*y-2*t*u_y", "W*phi",
                   "W*phi_x+phi*(y*u_y)",
                   "2*t*phi*" + _E3 + "+W*phi_y+phi*(u+y*u_y+2*t*u_{yy})",
                   "W*phi_z+phi*(y*u_z)"),
        "G35": _ci("-u*x-2*t*u_x", "W*phi",
                   "2*t*phi*" + _E3 + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})",
                   "W*phi_y+phi*(x*u_y)",
                   "W*phi_z+phi*(x*u_z)"),
        "G36": _ci("-u*z-2*t*u_z", "W*phi",
                   "W*phi_x+phi*(z*u_x)",
                   "W*phi_y+phi*(z*u_y)",
                   "2*t*phi*" + _E3 + "+W*phi_z+phi*(u+z*u_z+2*t*u_{zz})"),
        "G37": _ci("y*u_x-x*u_y", "W*phi",
                   "-y*phi*" + _E3 + "+W*phi_x-phi*(y*u_{xx}-u_y)",
                   "x*phi*" + _E3 + "+W*phi_y-phi*(u_x-x*u_{yy})",
                   "W*phi_z"),
        "G38": _ci("z*u_x-x*u_z", "W*phi",
                   "-z*phi*" + _E3 + "+W*phi_x-phi*(z*u_{xx}-u_z)",
                   "W*phi_y",
                   "x*phi*" + _E3 + "+W*phi_z-phi*(u_x-x*u_{zz})"),
        "G39": _ci("z*u_y-y*u_z", "W*phi",
                   "W*phi_x",
                   "-z*phi*" + _E3 + "+W*phi_y-phi*(z*u_{yy}-u_z)",
                   "y*phi*" + _E3 + "+W*phi_z-phi*(u_y-y*u_{zz})"),
        "G310": _ci("-u_t",
                    "phi*" + _E3 + "+W*phi",
                    "W*phi_x+phi*u_{tx}",
                    "W*phi_y+phi*u_{ty}",
                    "W*phi_z+phi*u_{tz}"),
        "G311": _ci("-2*t*u_t-x*u_x-y*u_y-z*u_z",
                    "2*t*phi*" + _E3 + "+W*phi",
                    "x*phi*" + _E3 + "+W*phi_x+phi*(u_x+2*t*u_{tx}+x*u_{xx})",
                    "y*phi*" + _E3 + "+W*phi_y+phi*(u_y+2*t*u_{ty}+y*u_{yy})",
                    "z*phi*" + _E3 + "+W*phi_z+phi*(u_z+2*t*u_{tz}+z*u_{zz})"),
        "G312": _ci("-u*(6*t+x^2+y^2+z^2)-4*t^2*u_t-4*x*t*u_x-4*y*t*u_y-4*z*t*u_z",
                    "4*t^2*phi*" + _E3 + "+W*phi",
                    "4*x*t*phi*" + _E3
                    + "+W*phi_x+phi*(6*t*u_x+x^2*u_x+2*x*u+y^2*u_x+z^2*u_x+4*t^2*u_{tx}+4*t*(x*u_{xx}+u_x))",
                    "4*y*t*phi*" + _E3
                    + "+W*phi_y+phi*(6*t*u_y+x^2*u_y+2*u*y+y^2*u_y+z^2*u_y+4*t^2*u_{ty}+4*t*(u_y+y*u_{yy}))",
                    "4*z*t*phi*" + _E3
                    + "+W*phi_z+phi*(6*t*u_z+x^2*u_z+y^2*u_z+z^2*u_z+2*z*u+4*t^2*u_{tz}+4*t*(u_z+z*u_{zz}))"),
        "G313": _ci("u", "W*phi",
                    "W*phi_x-phi*u_x", "W*phi_y-phi*u_y", "W*phi_z-phi*u_z"),
        "G314": _ci("F", "W*phi",
                    "W*phi_x-phi*F_x", "W*phi_y-phi*F_y", "W*phi_z-phi*F_z"),
    },
    (4, "integer"): {
        "G51": _ci("-u_x", "W*phi",
                   "phi*" + _E4 + "+W*phi_x+phi*u_{xx}",
                   "W*phi_y", "W*phi_z", "W*phi_w"),
        "G52": _ci("-u_y", "W*phi",
                   "W*phi_x",
                   "phi*" + _E4 + "+W*phi_y+phi*u_{yy}",
                   "W*phi_z", "W*phi_w"),
        "G53": _ci("-u_z", "W*phi",
                   "W*phi_x", "W*phi_y",
                   "phi*" + _E4 + "+W*phi_z+phi*u_{zz}",
                   "W*phi_w"),
        "G54": _ci("-u_w", "W*phi_w",
                   "W*phi_x", "W*phi_y", "W*phi_z",
                   "phi*" + _E4 + "+W*phi_w+phi*u_{ww}",
                   note="time component printed as W*phi_w"),
        "G55": _ci("-u*y-2*t*u_y", "W*phi",
                   "W*phi_x+phi*(y*u_x)",
                   "2*t*phi*" + _E4SHORT + "+W*phi_y+phi*(u+y*u_y+2*t*u_{yy})",
                   "W*phi_z+phi*(y*u_z)",
                   "W*phi_w+phi*(y*u_w)",
                   note="equation combination printed without u_ww"),
        "G56": _ci("-u*x-2*t*u_x", "W*phi",
                   "2*t*phi*" + _E4SHORT + "+W*phi_x+phi*(u+x*u_x+2*t*u_{xx})",
                   "W*phi_y+phi*(x*u_y)",
                   "W*phi_z+phi*(x*u_z)",
                   "W*phi_w+phi*(x*u_w)",
                   note="equation combination printed without u_ww"),
        "G57": _ci("-u*z-2*t*u_z", "W*phi",
                   "W*phi_x+phi*(z*u_x)",
                   "W*phi_y+phi*(z*u_y)",
                   "2*t*phi*" + _E4SHORT + "+W*phi_z+phi*(u+z*u_z+2*t*u_{zz})",
                   "W*phi_w+phi*(z*u_w)",
                   note="equation combination printed without u_ww"),
        "G58": _ci("-u*w-2*t*u_w", "W*phi",
                   "W*phi_x+phi*(w*u_x)",
                   "W*phi_y+phi*(w*u_y)",
                   "W*phi_z+phi*(w*u_z)",
                   "2*t*phi*" + _E4SHORT + "+W*phi_w+phi*(u+w*u_w+2*t*u_{ww})",
                   note="equation combination printed without u_ww"),
        "G59": _ci("y*u_x-x*u_y", "W*phi",
                   "-y*phi*" + _E4SHORT + "+W*phi_x-phi*(y*u_{xx}-u_y)",
                   "x*phi*" + _E4SHORT + "+W*phi_y-phi*(u_x-x*u_{yy})",
                   "W*phi_z", "W*phi_w",
                   note="equation combination printed without u_ww"),
        "G510": _ci("w*u_y-y*u_w", "W*phi",
                    "W*phi_x",
                    "-w*phi*" + _E4 + "+W*phi_y-phi*(w*u_{yy}-u_w)",
                    "W*phi_z",
                    "y*phi*" + _E4 + "+W*phi_w-phi*(u_y-y*u_{ww})"),
        "G511": ConservedEntry(
            W="z*u_y-y*u_z",
            Ct="W*phi",
            Cx=("W*phi_x",
                "-z*phi*" + _E4SHORT + "+W*phi_y-phi*(z*u_{yy}-u_z)",
                "y*phi*" + _E4SHORT + "+W*phi_z-phi*(u_y-y*u_{zz})",
                "W*phi_w"),
            printed_label="G512",
            note="printed under the neighbouring rotation's label; equation "
                 "combination printed without u_ww"),
        "G512": ConservedEntry(
            W="z*u_x-x*u_z",
            Ct="W*phi",
            Cx=("-z*phi*" + _E4SHORT + "+W*phi_x-phi*(z*u_{xx}-u_z)",
                "W*phi_y",
                "x*phi*" + _E4SHORT + "+W*phi_z-phi*(u_x-x*u_{zz})",
                "W*phi_w"),
            printed_label="G511",
            note="printed under the neighbouring rotation's label; equation "
                 "combination printed without u_ww"),
        "G513": _ci("w*u_x-x*u_w", "W*phi",
                    "-w*phi*" + _E4 + "+W*phi_x-phi*(w*u_{xx}-u_w)",
                    "W*phi_y", "W*phi_z",
                    "x*phi*" + _E4 + "+W*phi_w-phi*(u_x-x*u_{ww})",
                    note="unbalanced parenthesis in print; minimal repair"),
        "G514": _ci("w*u_z-z*u_w", "W*phi",
                    "W*phi_x", "W*phi_y",
                    "-w*phi*" + _E4 + "+W*phi_z-phi*(w*u_{zz}-u_w)",
                    "z*phi*" + _E4 + "+W*phi_w-phi*(u_z-z*u_{ww})"),
        "G515": _ci("-u_t",
                    "phi*" + _E4 + "+W*phi",
                    "W*phi_x+phi*u_{tx}",
                    "W*phi_y+phi*u_{ty}",
                    "W*phi_z+phi*u_{tz}",
                    "W*phi_w+phi*u_{tw}"),
        "G516": _ci("-2*t*u_t-x*u_x-y*u_y-z*u_z-w*u_w",
                    "2*t*phi*" + _E4 + "+W*phi",
                    "x*phi*" + _E4 + "+W*phi_x+phi*(u_x+2*t*u_{tx}+u_x+x*u_{xx})",
                    "y*phi*" + _E4 + "+W*phi_y+phi*(u_y+2*t*u_{ty}+u_y+y*u_{yy})",
                    "z*phi*" + _E4 + "+W*phi_z+phi*(u_z+2*t*u_{tz}+u_z+z*u_{zz})",
                    "w*phi*" + _E4 + "+W*phi_w+phi*(u_z+2*t*u_{tz}+u_w+z*u_{zz})",
                    note="first-derivative terms doubled in print; w-component "
                         "mixes z and w subscripts"),
        "G517": _ci("-u*(8*t+x^2+y^2+z^2+w^2)-4*t^2*u_t-4*x*t*u_x-4*y*t*u_y-4*z*t*u_z-4*w*t*u_w",
                    "4*t^2*phi*" + _E4 + "+W*phi",
                    "4*x*t*phi*" + _E4
                    + "+W*phi_x+phi*(8*t*u_x+x^2*u_x+2*x*u+y^2*u_x+z^2*u_x+4*t^2*u_{tx}+4*t*(x*u_{xx}+u_x))",
                    "4*y*t*phi*" + _E4
                    + "+W*phi_y+phi*(8*t*u_y+x^2*u_y+2*u*y+y^2*u_y+z^2*u_y+4*t^2*u_{ty}+4*t*(u_y+y*u_{yy}))",
                    "4*z*t*phi*" + _E4
                    + "+W*phi_z+phi*(8*t*u_z+x^2*u_z+y^2*u_z+z^2*u_z+2*z*u+4*t^2*u_{tz}+4*t*(u_z+z*u_{zz}))",
                    "4*w*t*phi*" + _E4
                    + "+W*phi_w+phi*(8*t*u_w+x^2*u_w+y^2*u_w+z^2*u_w+2*w*u+4*t^2*u_{tw}+4*t*(u_w+w*u_{ww}))",
                    note="w^2 first-derivative terms missing in the printed x/y components"),
        "G518": _ci("u", "W*phi",
                    "W*phi_x-phi*u_x", "W*phi_y-phi*u_y",
                    "W*phi_z-phi*u_z", "W*phi_w-phi*u_w"),
        "G519": _ci("F", "W*phi",
                    "W*phi_x-phi*F_x", "W*phi_y-phi*F_y",
                    "W*phi_z-phi*F_z", "W*phi_w-phi*F_w"),
    },
    (1, "fractional"): {
        "G01": _cf("-u_x", "0", "W", "W",
                   "phi*" + _F1 + "+W*phi_x-phi*u_{xx}"),
        "G02": _cf("2*t*u_t-alpha*x*u_x", "2*t*phi*" + _F1, "W", "W",
                   "alpha*x*phi*" + _F1 + "+W*phi_x-phi*(2*t*u_{tx}-alpha*x*u_{xx})",
                   note="printed W has the sign of 2t u_t flipped relative to the definition"),
        "G03": _cf("u", "0", "W", "W",
                   "W*phi_x-2*phi*u_x"),
        "G04": _cf("F", "0", "F", "F",
                   "F*phi_x-phi*F_x",
                   note="W line not printed; F implied"),
    },
    (2, "fractional"): {
        "G11": _cf("-u_x", "0", "W", "W",
                   "phi*" + _F2 + "+W*phi_x+u_{xx}*phi",
                   "W*phi_y+phi*u_{xy}"),
        "G12": _cf("-u_y", "0", "W", "-u_y",
                   "W*phi_x+phi*u_{xy}",
                   "phi*" + _F2 + "+W*phi_y+u_{yy}*phi",
                   note="J slot printed with the expanded characteristic"),
        "G13": _cf("-y*u_x+x*u_y", "0", "W", "W",
                   "y*phi*" + _F2 + "+W*phi_x-phi*(u_y+x*u_{xy}-y*u_{xx})",
                   "-x*phi*" + _F2 + "+W*phi_y-phi*(x*u_{yy}-(y*u_{xy}+u_x))",
                   note="unbalanced parenthesis in print; minimal repair"),
        "G14": _cf("u*(3*alpha-2)-4*t*u_t-2*alpha*x*u_x-2*alpha*y*u_y",
                   "4*t*" + _F2, "W", "W",
                   "2*alpha*x*phi*" + _F2
                   + "+W*phi_x-(3*alpha*u_x-2*u_x-4*t*u_{tx}-2*alpha*(u_x+x*u_{xx})-2*alpha*y*u_{xy})*phi",
                   "2*alpha*y*phi*" + _F2
                   + "+W*phi_y+(3*alpha*u_y-2*u_y-4*t*u_{ty}-2*alpha*x*u_{xy}-2*alpha*(y*u_{yy}+u_y))*phi",
                   note="multiplier phi missing on the printed local time term"),
        "G15": _cf("u", "0", "W", "u",
                   "u*phi_x-u_x*phi",
                   "u*phi_y-u_y*phi"),
        "G16": _cf("F", "0", "F", "F",
                   "F*phi_x-F_x*phi",
                   "F*phi_y-F_y*phi",
                   note="W line not printed; F implied"),
    },
    (3, "fractional"): {
        "G41": _cf("-u_x", "0", "W", "W",
                   "phi*" + _F3 + "+W*phi_x+phi*u_{xx}",
                   "W*phi_y+phi*u_{xy}",
                   "W*phi_z+phi*u_{xz}",
                   note="flux combination printed at order 1-alpha; read at alpha"),
        "G42": _cf("-u_y", "0", "W", "W",
                   "W*phi_x+phi*u_{xy}",
                   "phi*" + _F3 + "+W*phi_y+phi*u_{yy}",
                   "W*phi_z+phi*u_{yz}"),
        "G43": _cf("-u_z", "0", "W", "W",
                   "W*phi_x+phi*u_{xz}",
                   "W*phi_y+phi*u_{yz}",
                   "phi*" + _F3 + "+W*phi_z+phi*u_{zz}"),
        "G44": _cf("y*u_x-x*u_y", "0", "W", "W",
                   "-y*phi*" + _F3 + "+W*phi_x-phi*(y*u_{xx}-(x*u_{xy}+u_y))",
                   "x*phi*" + _F3 + "+W*phi_y-phi*((u_x+y*u_{xy})-x*u_{yy})",
                   "W*phi_z+phi*(y*u_{xz}-x*u_{yz})"),
        "G45": _cf("y*u_z-z*u_y", "0", "W", "W",
                   "W*phi_x+phi*(y*u_{xz}-z*u_{xy})",
                   "z*phi*" + _F3 + "+W*phi_y-phi*((u_z+y*u_{zy})-z*u_{yy})",
                   "-y*phi*" + _F3 + "+W*phi_z-phi*(y*u_{zz}-(u_y+z*u_{yz}))"),
        "G46": _cf("x*u_z-z*u_x", "0", "W", "W",
                   "z*phi*" + _F3 + "+W*phi_x-phi*((u_z+x*u_{xz})-z*u_{xx})",
                   "W*phi_y+phi*(x*u_{yz}-z*u_{xy})",
                   "-x*phi*" + _F3 + "+W*phi_z-phi*(x*u_{zz}-(u_x+u_{xz}))",
                   note="z factor missing on u_xz in the printed z-component"),
        "G47": _cf("u*(alpha-1)-2*t*u_t-alpha*x*u_x-alpha*y*u_y-alpha*z*u_z",
                   "2*t*phi*" + _F3, "W", "W",
                   "alpha*x*phi*" + _F3
                   + "+W*phi_x+phi*(u_x*(alpha-1)-2*t*u_{tx}-alpha*(u_x+x*u_{xx})-alpha*y*u_{xy}-alpha*z*u_{xz})",
                   "alpha*y*phi*" + _F3
                   + "+W*phi_y+phi*(u_y*(alpha-1)-2*t*u_{ty}-alpha*(u_y+y*u_{yy})-alpha*x*u_{xy}-alpha*z*u_{yz})",
                   "alpha*z*phi*" + _F3
                   + "+W*phi_z+phi*(u_z*(alpha-1)-2*t*u_{tz}-alpha*(u_z+z*u_{zz})-alpha*x*u_{xz}-alpha*y*u_{yz})"),
        "G48": _cf("u", "0", "W", "W",
                   "W*phi_x-phi*u_x",
                   "W*phi_y-phi*u_y",
                   "W*phi_z-phi*u_z"),
        "G49": _cf("F", "0", "W", "W",
                   "W*phi_x-phi*F_x",
                   "W*phi_y-phi*F_y",
                   "W*phi_z-phi*F_z"),
    },
    (4, "fractional"): {
        "G61": _cf("-u_x", "0", "W", "W",
                   "phi*" + _F4 + "+W*phi_x+phi*u_{xx}",
                   "W*phi_y+phi*u_{xy}",
                   "W*phi_z+phi*u_{xz}",
                   "W*phi_w+phi*u_{xw}"),
        "G62": _cf("-u_y", "0", "W", "W",
                   "W*phi_x+phi*u_{xy}",
                   "phi*" + _F4 + "+W*phi_y+phi*u_{yy}",
                   "W*phi_z+phi*u_{zy}",
                   "W*phi_w+phi*u_{yw}"),
        "G63": _cf("-u_z", "0", "W", "W",
                   "W*phi_x+phi*u_{xz}",
                   "W*phi_y+phi*u_{yz}",
                   "phi*" + _F4 + "+W*phi_z+phi*u_{zz}",
                   "W*phi_w+phi*u_{wz}"),
        "G64": _cf("-u_w", "0", "W", "W",
                   "W*phi_x+phi*u_{xw}",
                   "W*phi_y+phi*u_{yw}",
                   "W*phi_z+phi*u_{zw}",
                   "phi*" + _F4 + "+W*phi_w+phi*u_{ww}"),
        "G65": _cf("y*u_x-x*u_y", "0", "W", "W",
                   "-y*phi*" + _F4 + "+W*phi_x-phi*(y*u_{xx}-(u_{xy}+u_y))",
                   "x*phi*" + _F4 + "+W*phi_y-phi*((u_x+u_{xy})-x*u_{yy})",
                   "W*phi_z+phi*(y*u_{xz}-x*u_{yz})",
                   "W*phi_w+phi*(y*u_{xw}-x*u_{yw})",
                   note="x and y factors missing on mixed derivatives in print"),
        "G66": _cf("y*u_z-z*u_y", "0", "W", "W",
                   "W*phi_x+phi*(y*u_{xz}-z*u_{xy})",
                   "z*phi*" + _F4 + "+W*phi_y-phi*((u_z+u_{zy})-z*u_{yy})",
                   "-y*phi*" + _F4 + "+W*phi_z-phi*(y*u_{zz}-(u_y+u_{yz}))",
                   "W*phi_w+phi*(y*u_{zw}-z*u_{yw})",
                   note="y and z factors missing on mixed derivatives in print"),
        "G67": _cf("w*u_y-y*u_w", "0", "W", "W",
                   "W*phi_x+phi*(w*u_{xy}-y*u_{xw})",
                   "-w*phi*" + _F4 + "+W*phi_y-phi*(w*u_{yy}-(y*u_{wy}+u_w))",
                   "W*phi_z+phi*(w*u_{yz}-y*u_{wz})",
                   "y*phi*" + _F4 + "+W*phi_w-phi*((w*u_{yw}+u_y)-y*u_{ww})"),
        "G68": _cf("x*u_z-z*u_x", "0", "W", "W",
                   "z*phi*" + _F4 + "+W*phi_x-phi*((x*u_{xz}+u_z)-z*u_{xx})",
                   "W*phi_y+phi*(x*u_{zy}-z*u_{xy})",
                   "-x*phi*" + _F4 + "+W*phi_z-phi*(x*u_{zz}-(z*u_{xz}+u_x))",
                   "W*phi_w+phi*(x*u_{zw}-z*u_{xw})",
                   label="G69",
                   note="printed label shifted by one from this entry on"),
        "G69": _cf("w*u_x-x*u_w", "0", "W", "W",
                   "-w*phi*" + _F4 + "+W*phi_x-phi*(w*u_{xx}-(x*u_{xw}+u_w))",
                   "W*phi_y+phi*(w*u_{xy}-x*u_{wy})",
                   "W*phi_z+phi*(w*u_{xz}-x*u_{wz})",
                   "x*phi*" + _F4 + "+W*phi_w-phi*((w*u_{xw}+u_x)-x*u_{ww})",
                   label="G610"),
        "G610": _cf("w*u_z-z*u_w", "0", "W", "W",
                    "W*phi_x+phi*(w*u_{xz}-z*u_{xw})",
                    "W*phi_y+phi*(w*u_{yz}-z*u_{yw})",
                    "-w*phi*" + _F4 + "+W*phi_z-phi*(w*u_{zz}-(z*u_{wz}+u_w))",
                    "z*phi*" + _F4 + "+W*phi_w-phi*((u_z+u_{zw})-z*u_{ww})",
                    label="G611",
                    note="z factor missing on u_zw in the printed w-component"),
        "G611": _cf("u*(alpha-1)-alpha*x*u_x-alpha*y*u_y-alpha*z*u_z-alpha*w*u_w-2*t*u_t",
                    "2*t*phi*" + _F4, "W", "W",
                    "alpha*x*phi*" + _F4
                    + "+W*phi_x-phi*((alpha-1)*u_x-alpha*(u_x+x*u_{xx})-alpha*y*u_{xy}-alpha*z*u_{xz}-alpha*w*u_{xw}-2*t*u_{tx})",
                    "alpha*y*phi*" + _F4
                    + "+W*phi_y-phi*((alpha-1)*u_y-alpha*(u_y+y*u_{yy})-alpha*x*u_{xy}-alpha*z*u_{zy}-alpha*w*u_{wy}-2*t*u_{ty})",
                    "alpha*z*phi*" + _F4
                    + "+W*phi_z-phi*((alpha-1)*u_z-alpha*x*u_{xz}-alpha*y*u_{yz}-alpha*(u_z+z*u_{zz})-alpha*w*u_{wz}-2*t*u_{tz})",
                    "alpha*w*phi*" + _F4
                    + "+W*phi_w-phi*((alpha-1)*u_w-alpha*x*u_{xw}-alpha*y*u_{yw}-alpha*z*u_{zw}-alpha*(u_w+w*u_{ww})-2*t*u_{tw})",
                    label="G612"),
        "G612": _cf("u", "0", "W", "W",
                    "W*phi_x-phi*u_x",
                    "W*phi_y-phi*u_y",
                    "W*phi_z-phi*u_z",
                    "W*phi_w-phi*u_w",
                    label="G613"),
        "G613": _cf("F", "0", "W", "W",
                    "W*phi_x-phi*F_x",
                    "W*phi_y-phi*F_y",
                    "W*phi_z-phi*F_z",
                    "W*phi_w-phi*F_w",
                    label="G614"),
    },
}
