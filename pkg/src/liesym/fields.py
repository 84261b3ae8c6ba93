"""Lie algebra machinery over point-symmetry generators.

Vector fields are stored by their coefficients (xi0, xi_1..xi_n, eta) as
exact expressions in (t, x_i, u); brackets, commutator tables, basis
decompositions, derived series, and canonical structure-constant matching
(so(n), sl(2,R)) are all computed exactly over rationals-in-alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .expr import (
    Expr,
    ExprError,
    equals_zero,
    partial_derivative,
    point_derivative,
    spatial_name,
    to_latex,
    var,
)

__all__ = [
    "VectorField",
    "DimensionMismatchError",
    "lie_bracket",
    "field_apply",
    "vf_add",
    "vf_scale",
    "vf_zero",
    "vf_is_zero",
    "Decomposition",
    "decompose_in_basis",
    "CommutatorTable",
    "commutator_table",
    "StructureConstants",
    "ClosureReport",
    "closure_report",
    "derived_series",
    "CanonicalMatchReport",
    "match_canonical",
    "identify_rotation",
]


class DimensionMismatchError(ExprError):
    pass


def _is_point_coefficient(e: Expr, allow_functions: bool) -> bool:
    for atom in e.atoms():
        kind = atom[0]
        if kind == "v" or kind == "a":
            continue
        if kind == "j" and atom[1] == ():
            continue
        if kind == "f" and allow_functions:
            continue
        return False
    return True


@dataclass(frozen=True)
class VectorField:
    """Point-symmetry generator xi0*d_t + sum_i xi_i*d_{x_i} + eta*d_u."""

    name: str
    n: int
    xi0: Expr
    xi: tuple[Expr, ...]
    eta: Expr

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.xi) != self.n:
            raise ValueError(f"expected {self.n} spatial coefficients, got {len(self.xi)}")
        for c in (self.xi0, *self.xi):
            if not _is_point_coefficient(c, allow_functions=False):
                raise ValueError(f"{self.name}: coefficient {c} is not a point-field coefficient")
        if not _is_point_coefficient(self.eta, allow_functions=True):
            raise ValueError(f"{self.name}: eta {self.eta} is not a point-field coefficient")

    def components(self) -> tuple[Expr, ...]:
        return (self.xi0, *self.xi, self.eta)

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components())

    def involves_function_symbols(self) -> bool:
        return any(a[0] == "f" for a in self.eta.atoms())

    def __str__(self):
        parts = []
        names = ["t"] + [spatial_name(i) for i in range(1, self.n + 1)] + ["u"]
        for coeff, vn in zip(self.components(), names):
            if not coeff.is_zero:
                parts.append(f"({coeff})*d_{vn}")
        return f"{self.name}: " + (" + ".join(parts) if parts else "0")


def vf_zero(n: int, name: str = "0") -> VectorField:
    z = Expr.zero()
    return VectorField(name, n, z, (z,) * n, z)


def vf_add(a: VectorField, b: VectorField, name: str | None = None) -> VectorField:
    if a.n != b.n:
        raise DimensionMismatchError(f"{a.name} and {b.name} have different dimensions")
    return VectorField(
        name or f"({a.name}+{b.name})",
        a.n,
        a.xi0 + b.xi0,
        tuple(p + q for p, q in zip(a.xi, b.xi)),
        a.eta + b.eta,
    )


def vf_scale(c, a: VectorField, name: str | None = None) -> VectorField:
    c = c if isinstance(c, Expr) else Expr.number(Fraction(c))
    return VectorField(
        name or f"{c}*{a.name}",
        a.n,
        c * a.xi0,
        tuple(c * q for q in a.xi),
        c * a.eta,
    )


def vf_is_zero(a: VectorField) -> bool:
    return a.is_zero()


def field_apply(A: VectorField, f: Expr) -> Expr:
    """Action of the field on a function of (t, x_i, u); opaque function
    symbols inside f are chained through their (t, x) dependence."""
    out = A.xi0 * point_derivative(f, "t")
    for i in range(A.n):
        out = out + A.xi[i] * point_derivative(f, spatial_name(i + 1))
    out = out + A.eta * partial_derivative(f, ("j", ()))
    return out


def lie_bracket(A: VectorField, B: VectorField) -> VectorField:
    """Commutator [A, B], componentwise A(B^k) - B(A^k)."""
    if A.n != B.n:
        raise DimensionMismatchError(f"{A.name} and {B.name} have different dimensions")
    return VectorField(
        f"[{A.name},{B.name}]",
        A.n,
        field_apply(A, B.xi0) - field_apply(B, A.xi0),
        tuple(field_apply(A, B.xi[i]) - field_apply(B, A.xi[i]) for i in range(A.n)),
        field_apply(A, B.eta) - field_apply(B, A.eta),
    )


# ---------------------------------------------------------------------------
# alpha-polynomial helpers (coefficients of basis decompositions)
# ---------------------------------------------------------------------------

Poly = tuple  # tuple of Fractions, index = power of alpha, no trailing zeros


def poly_trim(cs: Sequence[Fraction]) -> Poly:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_add(a: Poly, b: Poly) -> Poly:
    m = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)])


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def poly_to_expr(a: Poly) -> Expr:
    from .expr import alpha

    out = Expr.zero()
    for d, c in enumerate(a):
        if c != 0:
            out = out + Expr.number(c) * (alpha() ** d)
    return out


def expr_to_poly(e: Expr) -> Poly:
    """Inverse of poly_to_expr for expressions polynomial in alpha alone."""
    coeffs: dict[int, Fraction] = {}
    for mono, c in e.terms:
        if not mono:
            coeffs[0] = coeffs.get(0, Fraction(0)) + c
        elif len(mono) == 1 and mono[0][0] == ("a",) and mono[0][1] > 0:
            coeffs[mono[0][1]] = coeffs.get(mono[0][1], Fraction(0)) + c
        else:
            raise ExprError(f"not a polynomial in alpha: {e}")
    deg = max(coeffs) if coeffs else -1
    return poly_trim([coeffs.get(d, Fraction(0)) for d in range(deg + 1)])


def _alpha_map(e: Expr) -> dict[tuple, Poly]:
    """Group terms as {alpha-free monomial: polynomial in alpha}."""
    acc: dict[tuple, dict[int, Fraction]] = {}
    for mono, c in e.terms:
        d = 0
        stripped = []
        for atom, k in mono:
            if atom == ("a",):
                d = k
            else:
                stripped.append((atom, k))
        key = tuple(stripped)
        acc.setdefault(key, {})[d] = acc.get(key, {}).get(d, Fraction(0)) + c
    out: dict[tuple, Poly] = {}
    for key, powers in acc.items():
        deg = max(powers)
        out[key] = poly_trim([powers.get(i, Fraction(0)) for i in range(deg + 1)])
    return out


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact Gaussian elimination; free unknowns are set to zero.
    Returns None when the system is inconsistent."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, m):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        piv = aug[r][col]
        aug[r] = [v / piv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [v - f * p for v, p in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for row, col in pivots:
        sol[col] = aug[row][ncols]
    return sol


@dataclass(frozen=True)
class Decomposition:
    kind: str  # "coeffs" | "outside"
    coeffs: dict[str, Expr] = field(default_factory=dict)
    infinite_family: bool = False

    @property
    def in_span(self) -> bool:
        return self.kind == "coeffs"


def _has_derived_function_atom(vf: VectorField) -> bool:
    for comp in vf.components():
        for atom in comp.atoms():
            if atom[0] == "f" and atom[2] != ():
                return True
    return False


def decompose_in_basis(f: VectorField, basis: Sequence[VectorField]) -> Decomposition:
    """Exact coefficients lambda_k (polynomials in alpha) with
    f = sum_k lambda_k basis_k, verified componentwise; otherwise outside-span.

    A field whose eta involves derivatives of an opaque function symbol is
    reported as outside the span with the infinite-family marker: it belongs
    to the infinite-dimensional solution family, which the finite table keeps
    symbolic.
    """
    if f.is_zero():
        return Decomposition("coeffs", {})
    if _has_derived_function_atom(f):
        return Decomposition("outside", infinite_family=True)
    if not basis:
        return Decomposition("outside")
    for b in basis:
        if b.n != f.n:
            raise DimensionMismatchError("basis dimension mismatch")

    ncomp = f.n + 2
    f_maps = [_alpha_map(c) for c in f.components()]
    b_maps = [[_alpha_map(c) for c in b.components()] for b in basis]

    def max_deg(maps) -> int:
        best = 0
        for mp in maps:
            for poly in mp.values():
                best = max(best, len(poly) - 1)
        return best

    deg_f = max_deg(f_maps)
    deg_b = max(max_deg(bm) for bm in b_maps)
    dmax = deg_f + deg_b + 1  # generous cap on the lambda degree
    m = len(basis)

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for comp in range(ncomp):
        monos = set(f_maps[comp])
        for bm in b_maps:
            monos.update(bm[comp])
        for mono in sorted(monos, key=lambda mm: str(mm)):
            fpoly = f_maps[comp].get(mono, ())
            bpolys = [bm[comp].get(mono, ()) for bm in b_maps]
            pmax = max([len(fpoly)] + [len(bp) + dmax for bp in bpolys if bp] + [1]) - 1
            for p in range(pmax + 1):
                row = [Fraction(0)] * (m * (dmax + 1))
                for k, bp in enumerate(bpolys):
                    for d in range(dmax + 1):
                        e = p - d
                        if 0 <= e < len(bp):
                            row[k * (dmax + 1) + d] = bp[e]
                rows.append(row)
                rhs.append(fpoly[p] if p < len(fpoly) else Fraction(0))

    sol = _solve_rational(rows, rhs)
    if sol is None:
        return Decomposition("outside")
    lambdas = []
    for k in range(m):
        lambdas.append(poly_trim(sol[k * (dmax + 1):(k + 1) * (dmax + 1)]))
    # independent verification, componentwise
    for comp in range(ncomp):
        acc = f.components()[comp]
        for k, b in enumerate(basis):
            acc = acc - poly_to_expr(lambdas[k]) * b.components()[comp]
        if not equals_zero(acc):
            return Decomposition("outside")
    coeffs = {
        basis[k].name: poly_to_expr(lambdas[k])
        for k in range(m)
        if lambdas[k]
    }
    return Decomposition("coeffs", coeffs)


# ---------------------------------------------------------------------------
# commutator tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    i: int
    j: int
    decomposition: Decomposition
    bracket: VectorField


@dataclass(frozen=True)
class CommutatorTable:
    basis: tuple[VectorField, ...]
    entries: tuple[TableEntry, ...]  # one per pair i < j

    def entry(self, i: int, j: int) -> TableEntry:
        for e in self.entries:
            if (e.i, e.j) == (i, j):
                return e
        raise KeyError((i, j))

    def coeffs(self, i: int, j: int) -> dict[str, Expr] | None:
        e = self.entry(i, j)
        return dict(e.decomposition.coeffs) if e.decomposition.in_span else None

    def to_json_obj(self) -> dict:
        entries = []
        for e in self.entries:
            if e.decomposition.in_span:
                entries.append({
                    "i": e.i,
                    "j": e.j,
                    "coeffs": {k: str(v) for k, v in sorted(e.decomposition.coeffs.items())},
                })
            else:
                rec = {"i": e.i, "j": e.j, "outside": True}
                if e.decomposition.infinite_family:
                    rec["infinite"] = True
                entries.append(rec)
        return {"basis": [b.name for b in self.basis], "entries": entries}

    def to_latex(self, name_map=None) -> str:
        name_map = name_map or _gamma_latex
        lines = [r"\begin{tabular}{lll}"]
        cells = []
        for e in self.entries:
            if e.decomposition.in_span and not e.decomposition.coeffs:
                continue
            lhs = rf"$[{name_map(self.basis[e.i].name)},{name_map(self.basis[e.j].name)}]_{{LB}}"
            if e.decomposition.in_span:
                rhs = _combo_latex(e.decomposition.coeffs, name_map)
            elif e.decomposition.infinite_family:
                rhs = r"\text{(infinite family)}"
            else:
                rhs = r"\text{(outside span)}"
            cells.append(lhs + "=" + rhs + "$")
        for k in range(0, len(cells), 3):
            lines.append(" & ".join(cells[k:k + 3]) + r" \\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)


def _gamma_latex(name: str) -> str:
    if name.startswith("G") and name[1:].isdigit():
        return rf"\Gamma_{{{name[1:]}}}"
    return rf"\mathrm{{{name}}}"


def _combo_latex(coeffs: dict[str, Expr], name_map) -> str:
    if not coeffs:
        return "0"
    parts = []
    for name, c in sorted(coeffs.items()):
        cs = to_latex(c)
        if cs == "1":
            parts.append("+" + name_map(name))
        elif cs == "-1":
            parts.append("-" + name_map(name))
        else:
            if not (cs.startswith("+") or cs.startswith("-")):
                cs = "+" + cs
            if any(op in cs[1:] for op in "+-"):
                cs = cs[0] + "(" + cs[1:] + ")"
            parts.append(cs + name_map(name))
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def commutator_table(basis: Sequence[VectorField]) -> CommutatorTable:
    names = [b.name for b in basis]
    if len(set(names)) != len(names):
        raise ValueError("basis names must be pairwise distinct")
    basis = tuple(basis)
    entries = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            br = lie_bracket(basis[i], basis[j])
            entries.append(TableEntry(i, j, decompose_in_basis(br, basis), br))
    return CommutatorTable(basis, tuple(entries))


@dataclass(frozen=True)
class StructureConstants:
    basis_names: tuple[str, ...]
    c: tuple  # c[i][j] = tuple of alpha-polynomials over the basis

    @staticmethod
    def from_table(table: CommutatorTable) -> "StructureConstants":
        m = len(table.basis)
        names = [b.name for b in table.basis]
        mat = [[None] * m for _ in range(m)]
        zero_vec = tuple(() for _ in range(m))
        for i in range(m):
            mat[i][i] = zero_vec
        for e in table.entries:
            if not e.decomposition.in_span:
                raise ValueError(
                    f"bracket [{names[e.i]},{names[e.j]}] does not decompose over the basis"
                )
            vec = []
            for name in names:
                c = e.decomposition.coeffs.get(name, Expr.zero())
                vec.append(expr_to_poly(c))
            mat[e.i][e.j] = tuple(vec)
            mat[e.j][e.i] = tuple(poly_neg(p) for p in vec)
        return StructureConstants(tuple(names), tuple(tuple(row) for row in mat))

    def antisymmetry_holds(self) -> bool:
        m = len(self.basis_names)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if poly_add(self.c[i][j][k], self.c[j][i][k]):
                        return False
        return True

    def jacobi_holds(self) -> bool:
        m = len(self.basis_names)
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    for l in range(m):
                        total: Poly = ()
                        for mm in range(m):
                            total = poly_add(total, poly_mul(self.c[i][j][mm], self.c[mm][k][l]))
                            total = poly_add(total, poly_mul(self.c[j][k][mm], self.c[mm][i][l]))
                            total = poly_add(total, poly_mul(self.c[k][i][mm], self.c[mm][j][l]))
                        if total:
                            return False
        return True


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    offending_pairs: tuple[tuple[str, str], ...]
    infinite_pairs: tuple[tuple[str, str], ...]


def closure_report(basis: Sequence[VectorField]) -> ClosureReport:
    """Closed iff every pairwise bracket decomposes over the basis.  Brackets
    that land in the infinite solution family are reported separately and do
    not break closure when the basis itself contains an infinite generator."""
    if not basis:
        return ClosureReport(True, (), ())
    table = commutator_table(basis)
    has_infinite = any(b.involves_function_symbols() for b in basis)
    offending = []
    infinite = []
    names = [b.name for b in basis]
    for e in table.entries:
        if e.decomposition.in_span:
            continue
        pair = (names[e.i], names[e.j])
        if e.decomposition.infinite_family and has_infinite:
            infinite.append(pair)
        else:
            offending.append(pair)
    return ClosureReport(not offending, tuple(offending), tuple(infinite))


# ---------------------------------------------------------------------------
# derived series (rank computations over the rational-function field in alpha)
# ---------------------------------------------------------------------------

def _poly_rows_rank(rows: list[list[Poly]]) -> int:
    """Rank over Q(alpha) via fraction-free elimination."""
    rows = [list(r) for r in rows if any(p for p in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for i in range(len(rows)):
            if i == rank or not rows[i][col]:
                continue
            f = rows[i][col]
            rows[i] = [
                poly_add(poly_mul(pv, rows[i][c]), poly_neg(poly_mul(f, rows[rank][c])))
                for c in range(ncols)
            ]
        rank += 1
        if rank == len(rows):
            break
    return rank


def derived_series(basis: Sequence[VectorField]) -> list[int]:
    """Dimensions of g, [g,g], [[g,g],[g,g]], ... until stabilization."""
    table = commutator_table(basis)
    if any(not e.decomposition.in_span for e in table.entries):
        raise ValueError("basis is not closed; derived series undefined")
    sc = StructureConstants.from_table(table)
    m = len(basis)

    def derived(rows: list[list[Poly]]) -> list[list[Poly]]:
        out = []
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                vec = [()] * m
                for i in range(m):
                    if not rows[a][i]:
                        continue
                    for j in range(m):
                        if not rows[b][j]:
                            continue
                        coef = poly_mul(rows[a][i], rows[b][j])
                        for l in range(m):
                            cij = sc.c[i][j][l]
                            if cij:
                                vec[l] = poly_add(vec[l], poly_mul(coef, cij))
                if any(p for p in vec):
                    out.append(vec)
        return out

    current: list[list[Poly]] = [
        [(Fraction(1),) if i == k else () for i in range(m)] for k in range(m)
    ]
    dims = [m]
    while True:
        current = derived(current)
        d = _poly_rows_rank(current)
        dims.append(d)
        if d == 0 or d == dims[-2]:
            return dims


# ---------------------------------------------------------------------------
# canonical pattern matching
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalMatchReport:
    matched: bool
    pattern: str
    scaling: tuple[Fraction, ...] = ()
    message: str = ""
    modulo_components: tuple = ()


def identify_rotation(vf: VectorField) -> tuple[int, int, int] | None:
    """Recognize s * (x_p d_q - x_q d_p); returns (p, q, sign) with p < q."""
    if not vf.xi0.is_zero or not vf.eta.is_zero:
        return None
    nz = [i for i, c in enumerate(vf.xi) if not c.is_zero]
    if len(nz) != 2:
        return None
    p, q = nz[0] + 1, nz[1] + 1
    xp, xq = var(spatial_name(p)), var(spatial_name(q))
    for s in (1, -1):
        if vf.xi[q - 1] == Expr.number(s) * xp and vf.xi[p - 1] == Expr.number(-s) * xq:
            return (p, q, s)
    return None


def _so_constants(pairs: Sequence[tuple[int, int]]) -> dict[tuple[int, int], dict[int, int]]:
    """[J_ab, J_cd] = d_bc J_ad - d_ac J_bd - d_bd J_ac + d_ad J_bc over the
    supplied pair labelling; result maps (i, j) -> {k: coeff}."""
    index = {pair: k for k, pair in enumerate(pairs)}

    def j_coeff(a: int, b: int) -> tuple[int, int] | None:
        if a == b:
            return None
        return (index[(a, b)], 1) if (a, b) in index else (index[(b, a)], -1)

    out: dict[tuple[int, int], dict[int, int]] = {}
    for i, (a, b) in enumerate(pairs):
        for j, (c, d) in enumerate(pairs):
            if i >= j:
                continue
            combo: dict[int, int] = {}
            for delta, (p, q) in (
                (1 if b == c else 0, (a, d)),
                (-1 if a == c else 0, (b, d)),
                (-1 if b == d else 0, (a, c)),
                (1 if a == d else 0, (b, c)),
            ):
                if delta == 0:
                    continue
                jc = j_coeff(p, q)
                if jc is None:
                    continue
                k, s = jc
                combo[k] = combo.get(k, 0) + delta * s
            out[(i, j)] = {k: v for k, v in combo.items() if v}
    return out


_SL2_TARGET = {(0, 1): {0: Fraction(2)}, (0, 2): {1: Fraction(1)}, (1, 2): {2: Fraction(2)}}
# basis order (e, h, f): [e,h] = 2e, [e,f] = h, [h,f] = 2f


def match_canonical(
    basis: Sequence[VectorField],
    pattern: str,
    modulo: Sequence[VectorField] = (),
) -> CanonicalMatchReport:
    """Check structure constants against a canonical pattern after an optional
    rational rescaling of the basis elements.

    pattern "sl2" expects the ordering (translation-like e, dilation-like h,
    projective-like f); pattern "so" recognizes each element as a signed
    rotation generator.  Bracket components along `modulo` fields (e.g. the
    central homogeneity direction) are projected away and reported.
    """
    basis = tuple(basis)
    seed_scale = None
    if pattern == "sl2":
        if len(basis) != 3:
            return CanonicalMatchReport(False, pattern, message="sl2 requires three elements")
        target = {k: dict(v) for k, v in _SL2_TARGET.items()}
    elif pattern == "so":
        idents = [identify_rotation(b) for b in basis]
        if any(r is None for r in idents):
            bad = [basis[k].name for k, r in enumerate(idents) if r is None]
            return CanonicalMatchReport(
                False, pattern, message=f"not rotation generators: {', '.join(bad)}"
            )
        pairs = [(p, q) for p, q, _s in idents]
        if len(set(pairs)) != len(pairs):
            return CanonicalMatchReport(False, pattern, message="duplicate rotation planes")
        target = {
            k: {kk: Fraction(v) for kk, v in vv.items()}
            for k, vv in _so_constants(pairs).items()
        }
        # the identification already names the rescaling: b_i = s_i J_{p_i q_i}
        seed_scale = [Fraction(s) for _p, _q, s in idents]
    else:
        raise ValueError(f"unknown pattern {pattern!r}")

    full = list(basis) + list(modulo)
    measured: dict[tuple[int, int], dict[int, Fraction]] = {}
    modulo_parts = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            br = lie_bracket(basis[i], basis[j])
            dec = decompose_in_basis(br, full)
            if not dec.in_span:
                return CanonicalMatchReport(
                    False, pattern,
                    message=f"[{basis[i].name},{basis[j].name}] outside span",
                )
            row: dict[int, Fraction] = {}
            for k, b in enumerate(basis):
                c = dec.coeffs.get(b.name)
                if c is None:
                    continue
                try:
                    row[k] = c.as_fraction()
                except ExprError:
                    return CanonicalMatchReport(
                        False, pattern,
                        message=f"alpha-dependent constant in [{basis[i].name},{basis[j].name}]",
                    )
            measured[(i, j)] = row
            for b in modulo:
                c = dec.coeffs.get(b.name)
                if c is not None:
                    modulo_parts.append((basis[i].name, basis[j].name, b.name, str(c)))

    # rescaled basis b_i' = a_i b_i has canonical constants iff
    # a_i a_j m_ij^k = T_ij^k a_k for all i, j, k
    m = len(basis)
    equations = []
    for (i, j), row in measured.items():
        trow = target.get((i, j), {})
        for k in set(row) | set(trow):
            equations.append((i, j, k, row.get(k, Fraction(0)), trow.get(k, Fraction(0))))

    for i, j, k, mv, tv in equations:
        if (mv == 0) != (tv == 0):
            return CanonicalMatchReport(
                False, pattern,
                message=f"constant mismatch on [{basis[i].name},{basis[j].name}] -> {basis[k].name}",
            )

    live = [eq for eq in equations if eq[3] != 0]
    if seed_scale is not None:
        scale: list[Fraction | None] = list(seed_scale)
    else:
        # propagate from a_0 = 1 through equations with two known slots
        scale = [None] * m
        scale[0] = Fraction(1)
        progress = True
        while progress:
            progress = False
            for i, j, k, mv, tv in live:
                known = [scale[i] is not None, scale[j] is not None, scale[k] is not None]
                if all(known):
                    continue
                if known[0] and known[1]:
                    scale[k] = scale[i] * scale[j] * mv / tv
                elif known[0] and known[2]:
                    scale[j] = tv * scale[k] / (scale[i] * mv)
                elif known[1] and known[2]:
                    scale[i] = tv * scale[k] / (scale[j] * mv)
                else:
                    continue
                progress = True
        for k in range(m):
            if scale[k] is None:
                scale[k] = Fraction(1)
    for i, j, k, mv, tv in live:
        if scale[i] * scale[j] * mv != tv * scale[k]:
            return CanonicalMatchReport(
                False, pattern, message="no rational rescaling matches the pattern"
            )
    return CanonicalMatchReport(
        True, pattern,
        scaling=tuple(scale),
        modulo_components=tuple(modulo_parts),
    )
