"""Exact symbolic kernel on the jet space of u(t, x1..xn).

An expression is a finite sum of monomials with rational coefficients over a
fixed atom alphabet: independent variables (t, x, y, z, w, x5, ...), jet
coordinates of u (u, u_t, u_{xy}, ...), opaque function symbols (phi, F) with
derivative subscripts generated on demand, fractional-derivative markers, and
the order parameter alpha.  Every constructor returns the unique normal form
(expanded, collected, atoms totally ordered), so structural equality is
semantic equality and ``equals_zero`` is a decision procedure.

Atoms are plain tuples:

    ('v', name)          independent variable
    ('j', idx)           jet coordinate u_idx; idx is a sorted tuple of
                         variable names, () denotes u itself
    ('f', fname, idx)    opaque function symbol with derivative subscripts
    ('D', idx)           fractional time derivative applied to u_idx
                         (idx spatial only); printed Dalpha[...]
    ('R', fname)         adjoint (right-sided) fractional derivative marker;
                         printed Dalphastar[...]
    ('a',)               alpha

All operations are pure; expressions are immutable and hashable.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

__all__ = [
    "Expr",
    "ExprError",
    "ParseError",
    "UnknownSymbolError",
    "JetOrderError",
    "SubstitutionError",
    "EvaluationError",
    "number",
    "var",
    "jet",
    "func_sym",
    "alpha",
    "frac_deriv",
    "adjoint_frac_deriv",
    "spatial_name",
    "spatial_names",
    "canonical_var",
    "var_rank",
    "partial_derivative",
    "total_derivative",
    "point_derivative",
    "substitute",
    "normalize",
    "equals_zero",
    "eval_numeric",
    "max_jet_order",
    "set_max_jet_order",
    "to_latex",
]

DEFAULT_MAX_JET_ORDER = 4

FUNCTION_SYMBOLS = ("phi", "F")

Rat = Union[int, Fraction]


class ExprError(Exception):
    """Base class for kernel errors."""


class ParseError(ExprError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownSymbolError(ExprError):
    pass


class JetOrderError(ExprError):
    pass


class SubstitutionError(ExprError):
    pass


class EvaluationError(ExprError):
    pass


def _env_max_order() -> int:
    raw = os.environ.get("LIESYM_MAX_JET")
    if raw is None:
        return DEFAULT_MAX_JET_ORDER
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_JET_ORDER
    return value if value >= 1 else DEFAULT_MAX_JET_ORDER


_MAX_JET_ORDER = _env_max_order()


def max_jet_order() -> int:
    return _MAX_JET_ORDER


def set_max_jet_order(order: int) -> int:
    """Set the jet-order cap (returns the previous value)."""
    global _MAX_JET_ORDER
    if order < 1:
        raise ValueError("jet order cap must be >= 1")
    old = _MAX_JET_ORDER
    _MAX_JET_ORDER = order
    return old


# ---------------------------------------------------------------------------
# variables
# ---------------------------------------------------------------------------

_ALIAS = {"x1": "x", "x2": "y", "x3": "z", "x4": "w"}
_NAMED_SPATIAL = {"x": 1, "y": 2, "z": 3, "w": 4}


def canonical_var(name: str) -> str:
    """Canonical variable name; x1..x4 are aliases of x, y, z, w."""
    name = _ALIAS.get(name, name)
    if name == "t" or name in _NAMED_SPATIAL:
        return name
    if name.startswith("x") and name[1:].isdigit():
        k = int(name[1:])
        if k >= 5:
            return name
    raise UnknownSymbolError(f"unknown variable {name!r}")


def var_rank(name: str) -> int:
    """Total order on variables: t < x < y < z < w < x5 < x6 < ..."""
    if name == "t":
        return 0
    if name in _NAMED_SPATIAL:
        return _NAMED_SPATIAL[name]
    return int(name[1:])


def spatial_name(i: int) -> str:
    """Printed name of the i-th spatial variable (1-based)."""
    if i < 1:
        raise ValueError("spatial index must be >= 1")
    return ("x", "y", "z", "w")[i - 1] if i <= 4 else f"x{i}"


def spatial_names(n: int) -> tuple[str, ...]:
    return tuple(spatial_name(i) for i in range(1, n + 1))


def _sorted_index(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted((canonical_var(v) for v in names), key=var_rank))


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------

_KIND_RANK = {"v": 0, "j": 1, "f": 2, "D": 3, "R": 4, "a": 5}


def _atom_key(atom: tuple) -> tuple:
    kind = atom[0]
    rank = _KIND_RANK[kind]
    if kind == "v":
        return (rank, "", (var_rank(atom[1]),))
    if kind == "j":
        return (rank, "", (len(atom[1]),) + tuple(var_rank(v) for v in atom[1]))
    if kind == "f":
        return (rank, atom[1], (len(atom[2]),) + tuple(var_rank(v) for v in atom[2]))
    if kind == "D":
        return (rank, "", (len(atom[1]),) + tuple(var_rank(v) for v in atom[1]))
    if kind == "R":
        return (rank, atom[1], ())
    return (rank, "", ())


def _index_str(idx: tuple[str, ...]) -> str:
    body = "".join(idx)
    return body if len(body) == 1 else "{" + body + "}"


def atom_name(atom: tuple) -> str:
    """Printed form of a single atom (grammar-compatible)."""
    kind = atom[0]
    if kind == "v":
        return atom[1]
    if kind == "j":
        return "u" if not atom[1] else "u_" + _index_str(atom[1])
    if kind == "f":
        return atom[1] if not atom[2] else atom[1] + "_" + _index_str(atom[2])
    if kind == "D":
        return f"Dalpha[{atom_name(('j', atom[1]))}]"
    if kind == "R":
        return f"Dalphastar[{atom[1]}]"
    return "alpha"


def binding_key(atom: tuple) -> str:
    """Brace-free atom name used for numeric-binding lookups."""
    kind = atom[0]
    if kind == "j":
        return "u" if not atom[1] else "u_" + "".join(atom[1])
    if kind == "f":
        return atom[1] if not atom[2] else atom[1] + "_" + "".join(atom[2])
    if kind == "D":
        return f"Dalpha[{binding_key(('j', atom[1]))}]"
    return atom_name(atom)


# sorted ((atom, exponent), ...); exponents are nonzero ints
Monomial = tuple


def _mono_key(mono: Monomial) -> tuple:
    return tuple((_atom_key(a), e) for a, e in mono)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    powers: dict[tuple, int] = {}
    for atom, e in m1:
        powers[atom] = e
    for atom, e in m2:
        k = powers.get(atom, 0) + e
        if k == 0:
            powers.pop(atom, None)
        else:
            powers[atom] = k
    return tuple(sorted(powers.items(), key=lambda it: _atom_key(it[0])))


class Expr:
    """Immutable expression in normal form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: tuple = ()):
        # terms must already be normalized; use the constructors below
        self._terms = terms
        self._hash = hash(terms)

    @staticmethod
    def _from_map(mapping: dict) -> "Expr":
        items = [(m, c) for m, c in mapping.items() if c != 0]
        items.sort(key=lambda it: _mono_key(it[0]))
        return Expr(tuple(items))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "Expr":
        return _ZERO

    @staticmethod
    def one() -> "Expr":
        return _ONE

    @staticmethod
    def number(q: Rat) -> "Expr":
        q = Fraction(q)
        return _ZERO if q == 0 else Expr((((), q),))

    @staticmethod
    def from_atom(atom: tuple) -> "Expr":
        return Expr(((((atom, 1),), Fraction(1)),))

    # -- structure ----------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def atoms(self) -> set:
        out = set()
        for mono, _ in self._terms:
            for atom, _e in mono:
                out.add(atom)
        return out

    def jet_order(self) -> int:
        """Highest derivative order among jet/function atoms (0 if none)."""
        best = 0
        for atom in self.atoms():
            if atom[0] == "j":
                best = max(best, len(atom[1]))
            elif atom[0] == "f":
                best = max(best, len(atom[2]))
        return best

    def as_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if len(self._terms) == 1 and not self._terms[0][0]:
            return self._terms[0][1]
        raise ExprError(f"not a constant: {self}")

    def is_constant(self) -> bool:
        return self.is_zero or (len(self._terms) == 1 and not self._terms[0][0])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        acc = dict(self._terms)
        for mono, c in other._terms:
            k = acc.get(mono, Fraction(0)) + c
            if k == 0:
                acc.pop(mono, None)
            else:
                acc[mono] = k
        return Expr._from_map(acc)

    __radd__ = __add__

    def __neg__(self):
        return Expr(tuple((m, -c) for m, c in self._terms))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _ZERO
        acc: dict = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                mono = _mono_mul(m1, m2)
                c = c1 * c2
                k = acc.get(mono, Fraction(0)) + c
                if k == 0:
                    acc.pop(mono, None)
                else:
                    acc[mono] = k
        return Expr._from_map(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponents must be integers")
        if k == 0:
            return _ONE
        if k < 0:
            return _ONE / (self ** (-k))
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * Expr.number(Fraction(1, 1) / Fraction(other))
        if isinstance(other, Expr):
            if other.is_zero:
                raise ZeroDivisionError("division by zero expression")
            if len(other._terms) != 1:
                raise ExprError("division only by monomials or rationals")
            mono, c = other._terms[0]
            inv = tuple((atom, -e) for atom, e in mono)
            return self * Expr(((inv, Fraction(1) / c),))
        return NotImplemented

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # -- comparison / hashing / printing ------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expr.number(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, (mono, c) in enumerate(self._terms):
            sign = "-" if c < 0 else "+"
            body = _render_term(mono, abs(c))
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Expr({str(self)!r})"


def _render_term(mono: Monomial, c: Fraction) -> str:
    factors = []
    for atom, e in mono:
        name = atom_name(atom)
        factors.append(name if e == 1 else f"{name}^{e}")
    if not factors:
        return str(c)
    body = "*".join(factors)
    return body if c == 1 else f"{c}*{body}"


def _coerce(value) -> "Expr":
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Expr.number(value)
    return NotImplemented


_ZERO = Expr(())
_ONE = Expr((((), Fraction(1)),))


# ---------------------------------------------------------------------------
# public atom constructors
# ---------------------------------------------------------------------------

def number(q: Rat) -> Expr:
    return Expr.number(q)


def var(name: str) -> Expr:
    return Expr.from_atom(("v", canonical_var(name)))


def jet(*index: str) -> Expr:
    """Jet coordinate u_index; jet() is u itself."""
    idx = _sorted_index(index)
    if len(idx) > max_jet_order():
        raise JetOrderError(f"jet order {len(idx)} exceeds cap {max_jet_order()}")
    return Expr.from_atom(("j", idx))


def func_sym(name: str, index: Iterable[str] = ()) -> Expr:
    if name not in FUNCTION_SYMBOLS:
        raise UnknownSymbolError(f"unknown function symbol {name!r}")
    return Expr.from_atom(("f", name, _sorted_index(index)))


def alpha() -> Expr:
    return Expr.from_atom(("a",))


def frac_deriv(*spatial_index: str) -> Expr:
    """Fractional time derivative applied to u_spatial_index."""
    idx = _sorted_index(spatial_index)
    if any(v == "t" for v in idx):
        raise ExprError("fractional-derivative marker carries spatial subscripts only")
    return Expr.from_atom(("D", idx))


def adjoint_frac_deriv(name: str = "phi") -> Expr:
    if name not in FUNCTION_SYMBOLS:
        raise UnknownSymbolError(f"unknown function symbol {name!r}")
    return Expr.from_atom(("R", name))


def _resolve_atom(sym) -> tuple:
    """Accept an atom tuple or a brace-free/printed atom name."""
    if isinstance(sym, tuple):
        return sym
    if isinstance(sym, Expr):
        atoms = sym.atoms()
        if len(atoms) == 1 and len(sym.terms) == 1 and sym.terms[0][1] == 1:
            return next(iter(atoms))
        raise ExprError(f"not a single atom: {sym}")
    name = str(sym).strip()
    if name == "alpha":
        return ("a",)
    if name.startswith("Dalpha[") and name.endswith("]"):
        inner = _resolve_atom(name[len("Dalpha["):-1])
        if inner[0] != "j":
            raise UnknownSymbolError(f"Dalpha applies to jet coordinates: {name!r}")
        return ("D", inner[1])
    if name.startswith("Dalphastar[") and name.endswith("]"):
        return ("R", name[len("Dalphastar["):-1])
    if "_" in name:
        base, sub = name.split("_", 1)
        sub = sub.strip("{}")
        idx = _parse_index_string(sub)
        if base == "u":
            return ("j", idx)
        if base in FUNCTION_SYMBOLS:
            return ("f", base, idx)
        raise UnknownSymbolError(f"cannot subscript {base!r}")
    if name == "u":
        return ("j", ())
    if name in FUNCTION_SYMBOLS:
        return ("f", name, ())
    return ("v", canonical_var(name))


def _parse_index_string(body: str) -> tuple[str, ...]:
    names: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch not in "txyzw":
            raise UnknownSymbolError(f"bad derivative index {body!r}")
        j = i + 1
        if ch == "x":
            while j < len(body) and body[j].isdigit():
                j += 1
        names.append(body[i:j])
        i = j
    return _sorted_index(names)


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------

def partial_derivative(e: Expr, sym) -> Expr:
    """d e / d sym treating every other atom as an independent symbol."""
    target = _resolve_atom(sym)
    acc: dict = {}
    for mono, c in e.terms:
        for i, (atom, k) in enumerate(mono):
            if atom != target:
                continue
            rest = mono[:i] + mono[i + 1:]
            if k != 1:
                rest = _mono_mul(rest, ((atom, k - 1),))
            coeff = c * k
            cur = acc.get(rest, Fraction(0)) + coeff
            if cur == 0:
                acc.pop(rest, None)
            else:
                acc[rest] = cur
    return Expr._from_map(acc)


def _atom_total_derivative(atom: tuple, v: str, cap: int) -> Expr | None:
    """D_v of a single atom, or None when it is constant in v."""
    kind = atom[0]
    if kind == "v":
        return _ONE if atom[1] == v else None
    if kind == "j":
        idx = _sorted_index(atom[1] + (v,))
        if len(idx) > cap:
            raise JetOrderError(
                f"total derivative exceeds jet-order cap {cap}: u_{''.join(idx)}"
            )
        return Expr.from_atom(("j", idx))
    if kind == "f":
        idx = _sorted_index(atom[2] + (v,))
        if len(idx) > cap:
            raise JetOrderError(
                f"total derivative exceeds jet-order cap {cap}: {atom[1]}_{''.join(idx)}"
            )
        return Expr.from_atom(("f", atom[1], idx))
    if kind == "D":
        if v == "t":
            raise ExprError("time total-derivative of a fractional marker is not defined here")
        idx = _sorted_index(atom[1] + (v,))
        if len(idx) > cap:
            raise JetOrderError("total derivative exceeds jet-order cap on a fractional marker")
        return Expr.from_atom(("D", idx))
    if kind == "R":
        raise ExprError("adjoint fractional marker cannot be differentiated")
    return None  # alpha


def _derive(e: Expr, v: str, cap: int, jets_chain: bool) -> Expr:
    v = canonical_var(v)
    acc: dict = {}

    def add_terms(expr: Expr):
        for mono, c in expr.terms:
            k = acc.get(mono, Fraction(0)) + c
            if k == 0:
                acc.pop(mono, None)
            else:
                acc[mono] = k

    for mono, c in e.terms:
        for i, (atom, k) in enumerate(mono):
            if not jets_chain and atom[0] in ("j", "D"):
                # point space: u, its jets, and fractional markers are
                # unrelated coordinates, constant in (t, x)
                continue
            datom = _atom_total_derivative(atom, v, cap)
            if datom is None:
                continue
            rest = mono[:i] + mono[i + 1:]
            if k != 1:
                rest = _mono_mul(rest, ((atom, k - 1),))
            add_terms(Expr(((rest, c * k),)) * datom)
    return Expr._from_map(acc)


def total_derivative(e: Expr, v: str, max_order: int | None = None) -> Expr:
    """Total derivative D_v: chains through jet coordinates and function symbols."""
    cap = max_jet_order() if max_order is None else max_order
    return _derive(e, v, cap, jets_chain=True)


def point_derivative(e: Expr, v: str, max_order: int | None = None) -> Expr:
    """Derivative on (t, x, u)-space: function symbols depend on (t, x),
    while u and its jets are unrelated coordinates."""
    cap = max_jet_order() if max_order is None else max_order
    return _derive(e, v, cap, jets_chain=False)


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------

def _multiset_diff(big: tuple, small: tuple) -> tuple | None:
    """big minus small as multisets of names, or None when small is not contained."""
    counts: dict[str, int] = {}
    for x in big:
        counts[x] = counts.get(x, 0) + 1
    for x in small:
        if counts.get(x, 0) == 0:
            return None
        counts[x] -= 1
    out: list[str] = []
    for x, k in counts.items():
        out.extend([x] * k)
    return tuple(sorted(out, key=var_rank))


def _rule_base(atom: tuple, rules: dict) -> tuple | None:
    """Base rule atom that `atom` derives from (same family, contained index)."""
    candidates = []
    for base in rules:
        if base[0] != atom[0]:
            continue
        if base[0] == "f" and base[1] != atom[1]:
            continue
        a_idx = atom[1] if atom[0] in ("j", "D") else atom[2]
        b_idx = base[1] if base[0] in ("j", "D") else base[2]
        if _multiset_diff(a_idx, b_idx) is not None:
            candidates.append(base)
    if not candidates:
        return None
    # prefer the deepest base (largest index) for a deterministic choice
    candidates.sort(key=_atom_key)
    return candidates[-1]


def substitute(e: Expr, rules: Mapping, max_order: int | None = None) -> Expr:
    """Replace jet / function / fractional atoms by expressions, repeatedly,
    extending each rule through total derivatives (u_tt rewrites via D_t of
    the u_t rule), until a fixpoint is reached.

    Raises SubstitutionError on rule cycles or when the fixpoint is not
    reached within the jet-order bound.
    """
    cap = max_jet_order() if max_order is None else max_order
    base_rules: dict[tuple, Expr] = {}
    for key, rhs in rules.items():
        atom = _resolve_atom(key)
        if atom[0] not in ("j", "f", "D"):
            raise SubstitutionError(f"cannot substitute for atom {atom_name(atom)}")
        base_rules[atom] = rhs if isinstance(rhs, Expr) else Expr.number(rhs)

    # static cycle check on the rule dependency graph
    heads = list(base_rules)
    edges: dict[tuple, set[tuple]] = {h: set() for h in heads}
    for head, rhs in base_rules.items():
        for atom in rhs.atoms():
            base = _rule_base(atom, base_rules)
            if base is not None:
                edges[head].add(base)
    state: dict[tuple, int] = {}

    def visit(node: tuple):
        state[node] = 1
        for nxt in edges[node]:
            mark = state.get(nxt, 0)
            if mark == 1:
                raise SubstitutionError("cycle detected in substitution rules")
            if mark == 0:
                visit(nxt)
        state[node] = 2

    for h in heads:
        if state.get(h, 0) == 0:
            visit(h)

    derived_cache: dict[tuple, Expr] = {}

    def replacement(atom: tuple) -> Expr | None:
        if atom in derived_cache:
            return derived_cache[atom]
        base = _rule_base(atom, base_rules)
        if base is None:
            derived_cache[atom] = None
            return None
        a_idx = atom[1] if atom[0] in ("j", "D") else atom[2]
        b_idx = base[1] if base[0] in ("j", "D") else base[2]
        extra = _multiset_diff(a_idx, b_idx)
        out = base_rules[base]
        for v in extra:
            out = total_derivative(out, v, max_order=cap)
        derived_cache[atom] = out
        return out

    current = e
    for _ in range(cap + 2):
        hit = False
        acc: dict = {}

        def add(expr: Expr, scale: Fraction):
            for mono, c in expr.terms:
                k = acc.get(mono, Fraction(0)) + c * scale
                if k == 0:
                    acc.pop(mono, None)
                else:
                    acc[mono] = k

        for mono, c in current.terms:
            plain: list = []
            factors: list[Expr] = []
            for atom, k in mono:
                rep = replacement(atom)
                if rep is None:
                    plain.append((atom, k))
                else:
                    hit = True
                    if k < 0:
                        raise SubstitutionError(
                            f"cannot substitute into negative power of {atom_name(atom)}"
                        )
                    factors.append(rep ** k)
            term = Expr(((tuple(plain), c),))
            for f in factors:
                term = term * f
            add(term, Fraction(1))
        current = Expr._from_map(acc)
        if not hit:
            return current
    # one final scan: anything still substitutable means no fixpoint
    if any(replacement(atom) is not None for atom in current.atoms()):
        raise SubstitutionError("substitution fixpoint not reached within bound")
    return current


def normalize(e: Expr) -> Expr:
    """Expressions are kept in normal form by construction; returns e."""
    return e


def equals_zero(e: Expr) -> bool:
    return e.is_zero


# ---------------------------------------------------------------------------
# numeric evaluation
# ---------------------------------------------------------------------------

def eval_numeric(e: Expr, binding: Mapping[str, float | Callable], alpha_value: float | None = None) -> float:
    """IEEE-double evaluation.  Binding keys are brace-free atom names
    ("t", "x", "u_xy", "phi_t", "Dalpha[u]"); a callable bound to a bare
    function symbol is invoked with keyword arguments for every bound
    independent variable.  alpha is supplied separately and must lie in (0,1].
    """
    if alpha_value is not None and not (0.0 < alpha_value <= 1.0):
        raise EvaluationError(f"alpha_value must lie in (0, 1]: {alpha_value}")
    var_values = {
        k: float(v) for k, v in binding.items()
        if isinstance(v, (int, float)) and ("_" not in k and k not in ("u", "alpha"))
        and not k.startswith("Dalpha")
    }

    def atom_value(atom: tuple) -> float:
        if atom == ("a",):
            if alpha_value is None:
                raise EvaluationError("alpha present but no alpha_value supplied")
            return alpha_value
        key = binding_key(atom)
        if key in binding:
            bound = binding[key]
            if callable(bound):
                if atom[0] == "f" and atom[2] == ():
                    return float(bound(**var_values))
                raise EvaluationError(f"callable binding only allowed for bare function symbols: {key}")
            return float(bound)
        raise EvaluationError(f"unbound symbol {key!r}")

    total = 0.0
    for mono, c in e.terms:
        val = float(c)
        for atom, k in mono:
            val *= atom_value(atom) ** k
        total += val
    if not math.isfinite(total):
        raise EvaluationError(f"non-finite evaluation result: {total}")
    return total


# ---------------------------------------------------------------------------
# LaTeX rendering
# ---------------------------------------------------------------------------

_LATEX_FN = {"phi": r"\phi", "F": "F"}


def _atom_latex(atom: tuple) -> str:
    kind = atom[0]
    if kind == "v":
        name = atom[1]
        return name if len(name) == 1 else f"x_{{{name[1:]}}}"
    if kind == "j":
        if not atom[1]:
            return "u"
        return "u_{" + "".join(_var_latex(v) for v in atom[1]) + "}"
    if kind == "f":
        base = _LATEX_FN[atom[1]]
        if not atom[2]:
            return base
        return base + "_{" + "".join(_var_latex(v) for v in atom[2]) + "}"
    if kind == "D":
        return r"D_{t}^{\alpha}" + _atom_latex(("j", atom[1]))
    if kind == "R":
        return r"(D_{t}^{\alpha})^{*}" + _LATEX_FN[atom[1]]
    return r"\alpha"


def _var_latex(name: str) -> str:
    return name if len(name) == 1 else f"x_{{{name[1:]}}}"


def to_latex(e: Expr) -> str:
    if e.is_zero:
        return "0"
    parts: list[str] = []
    for i, (mono, c) in enumerate(e.terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        for atom, k in mono:
            base = _atom_latex(atom)
            factors.append(base if k == 1 else base + f"^{{{k}}}")
        if not factors:
            body = _frac_latex(mag)
        else:
            coeff = "" if mag == 1 else _frac_latex(mag)
            body = coeff + "".join(factors)
        if i == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


def _frac_latex(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else rf"\tfrac{{{q.numerator}}}{{{q.denominator}}}"
