"""Boltzmann weights of elementary diagram pieces.

The weights live in a versioned data file (one record per table cell)
rather than in code, so a transcription fix is a data diff.  Cells are
keyed by the picture that defines them: piece kind, orientation
pattern, and dotted/solid states.  Configurations with no record are
zero.  This module also assembles whole pieces into matrices acting on
dotted/solid state tuples.
"""

from __future__ import annotations

import os
import re
from contextlib import contextmanager
from dataclasses import dataclass
from importlib import resources

from .laurent import LaurentPoly

DOTTED, SOLID = 0, 1

_SYMBOLS = "ijkIJ"


class WeightTableError(ValueError):
    """Malformed weight-table file or expression."""


class CertifiedScopeError(LookupError):
    """A configuration outside the tabulated weight data was requested."""


# ---------------------------------------------------------------------------
# the tiny weight-expression grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[ijkIJ]|\^|\*|/|\+|-|\(|\)|q)")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WeightTableError(f"bad weight expression {text!r} at offset {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent for cell expressions over q, integers and color symbols.

    Exponents of q are linear expressions in the symbols (with implicit
    products such as ``2k`` or ``iJ``); division is only by unit
    monomials, so every cell evaluates to an exact Laurent polynomial.
    """

    def __init__(self, tokens, bindings):
        self.toks = tokens
        self.pos = 0
        self.env = bindings

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise WeightTableError(f"unexpected token {tok!r} (wanted {expected!r})")
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise WeightTableError(f"trailing tokens {self.toks[self.pos:]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_unit_monomial:
                    raise WeightTableError("division only by unit monomials")
                e, c = rhs.items()[0]
                value = value.shift(-e) * c
        return value

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok == "q":
            self.take()
            exponent = 1
            if self.peek() == "^":
                self.take()
                exponent = self.exponent()
            return LaurentPoly.monomial("q", exponent)
        if tok is not None and tok.isdigit():
            self.take()
            return LaurentPoly("q", {0: int(tok)})
        raise WeightTableError(f"unexpected token {tok!r}")

    def exponent(self):
        if self.peek() == "(":
            self.take()
            value = self.linexpr()
            self.take(")")
            return value
        tok = self.take()
        if tok.isdigit():
            return int(tok)
        raise WeightTableError(f"bad exponent token {tok!r}")

    def linexpr(self):
        value = self.linterm()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.linterm()
            value = value + rhs if op == "+" else value - rhs
        return value

    def linterm(self):
        sign = 1
        while self.peek() == "-":
            self.take()
            sign = -sign
        prod = 1
        seen = False
        while True:
            tok = self.peek()
            if tok is not None and tok.isdigit():
                prod *= int(self.take())
                seen = True
            elif tok in tuple(_SYMBOLS):
                sym = self.take()
                if sym not in self.env:
                    raise WeightTableError(f"unbound symbol {sym!r}")
                prod *= self.env[sym]
                seen = True
            elif tok == "*":
                self.take()
            else:
                break
        if not seen:
            raise WeightTableError("empty exponent term")
        return sign * prod


def eval_cell(expression, bindings):
    """Evaluate a cell expression to a LaurentPoly in q under integer bindings."""
    return _ExprParser(_tokenize(expression), bindings).parse()


# ---------------------------------------------------------------------------
# table loading
# ---------------------------------------------------------------------------

_HEADER = "graphalex-weights v1"


class WeightTable:
    """An immutable map from (kind, key1, key2) to a cell expression."""

    def __init__(self, cells):
        self.cells = dict(cells)

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != _HEADER:
            raise WeightTableError(f"missing weight-table header {_HEADER!r}")
        cells = {}
        for ln in lines[1:]:
            parts = ln.split("|")
            if len(parts) == 3:
                kind, key1, expr = parts
                key2 = ""
            elif len(parts) == 4:
                kind, key1, key2, expr = parts
            else:
                raise WeightTableError(f"bad table record {ln!r}")
            key = (kind, key1, key2)
            if key in cells:
                raise WeightTableError(f"duplicate table record {key}")
            eval_cell(expr, {s: 1 for s in _SYMBOLS})  # syntax check at load
            cells[key] = expr
        return cls(cells)

    def with_cell(self, kind, key1, key2, expression):
        """A copy with one cell replaced (used by the mutation sanity suite)."""
        cells = dict(self.cells)
        cells[(kind, key1, key2)] = expression
        return WeightTable(cells)

    def lookup(self, kind, key1, key2, bindings):
        expr = self.cells.get((kind, key1, key2))
        if expr is None:
            return None
        return eval_cell(expr, bindings)


def _load_default():
    path = os.environ.get("GRAPHALEX_WEIGHTS")
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            return WeightTable.from_text(fh.read())
    text = resources.files(__package__).joinpath("weights_table.txt").read_text("utf-8")
    return WeightTable.from_text(text)


_default_table = None
_override_table = None


def active_table():
    global _default_table
    if _override_table is not None:
        return _override_table
    if _default_table is None:
        _default_table = _load_default()
    return _default_table


@contextmanager
def patched_table(table):
    """Temporarily replace the active weight table."""
    global _override_table
    previous = _override_table
    _override_table = table
    try:
        yield table
    finally:
        _override_table = previous


@contextmanager
def patched_cell(kind, key1, key2, expression):
    """Temporarily replace a single cell of the active weight table."""
    with patched_table(active_table().with_cell(kind, key1, key2, expression)) as t:
        yield t


# ---------------------------------------------------------------------------
# weight lookups
# ---------------------------------------------------------------------------


def extremum_weight(kind, horiz_dir, state, color, table=None):
    """Weight of a cup/cap crossed in the given horizontal direction."""
    table = table or active_table()
    key2 = "sol" if state else "dot"
    w = table.lookup(kind, horiz_dir, key2, {"j": color.j, "J": color.J})
    if w is None:
        raise CertifiedScopeError(f"no weight for {kind} {horiz_dir} {key2}")
    return w


def twist_weight(sign, color, table=None):
    """Weight of a half-twist symbol; independent of direction and state."""
    table = table or active_table()
    w = table.lookup("twist", sign, "any", {"j": color.j, "J": color.J})
    if w is None:
        raise CertifiedScopeError(f"no weight for twist {sign}")
    return w


@dataclass(frozen=True)
class CrossingConfig:
    """States around a crossing with both strands upward.

    ``color_left``/``color_right`` color the strands entering at the
    bottom-left and bottom-right; state tuples are (left, right).
    """

    sign: str
    color_left: object
    color_right: object
    bottom: tuple
    top: tuple


def crossing_weight(sign, config, table=None):
    """Weight of one crossing configuration; unpictured configurations are zero."""
    table = table or active_table()
    if sign not in ("pos", "neg"):
        raise ValueError(f"bad crossing sign {sign!r}")
    if len(config.bottom) != 2 or len(config.top) != 2:
        raise ValueError("a crossing has two bottom and two top strands")
    key = "".join(str(s) for s in (*config.bottom, *config.top))
    bindings = {"i": config.color_left.j, "I": config.color_left.J,
                "j": config.color_right.j, "J": config.color_right.J}
    w = table.lookup("xpos" if sign == "pos" else "xneg", key, "", bindings)
    if w is None:
        return LaurentPoly.zero("q")
    return w


@dataclass(frozen=True)
class VertexConfig:
    """A trivalent-vertex configuration.

    ``orient`` lists in/out ('i'/'o') for the (single, left, right)
    ports; ``states`` gives dotted/solid in the same order.  For a
    split piece the single port is the bottom edge, for a merge piece
    the top edge.
    """

    shape: str
    orient: str
    color_single: object
    color_left: object
    color_right: object
    states: tuple


def _vertex_admissible(config):
    eps = [1 if c == "o" else -1 for c in config.orient]
    colors = (config.color_single, config.color_left, config.color_right)
    mult = sum(e * c.j for e, c in zip(eps, colors))
    wt = sum(e * c.J for e, c in zip(eps, colors))
    prod = eps[0] * eps[1] * eps[2]
    return mult == 0 and wt == -prod


def vertex_weight(config, table=None):
    """Weight of one vertex configuration from the 12x4 vertex table."""
    table = table or active_table()
    if config.shape not in ("split", "merge"):
        raise ValueError(f"bad vertex shape {config.shape!r}")
    if config.orient in ("iii", "ooo"):
        raise CertifiedScopeError("vertices may not be sources or sinks")
    if not _vertex_admissible(config):
        raise WeightTableError(
            f"colors at vertex are not admissible: {config}")
    key2 = "".join(str(s) for s in config.states)
    bindings = {"i": config.color_left.j, "j": config.color_right.j,
                "k": config.color_single.j}
    w = table.lookup(config.shape, config.orient, key2, bindings)
    if w is None:
        raise CertifiedScopeError(
            f"no weight cell for {config.shape}|{config.orient}|{key2}")
    return w


# ---------------------------------------------------------------------------
# piece kernels: sparse (bottom states -> top states) maps
# ---------------------------------------------------------------------------


def min_cells(traversal, color, table=None):
    """Cup: no bottom strands, two top strands in equal states."""
    return [((), (s, s), extremum_weight("min", traversal, s, color, table))
            for s in (DOTTED, SOLID)]


def max_cells(traversal, color, table=None):
    """Cap: two bottom strands in equal states, no top strands."""
    return [((s, s), (), extremum_weight("max", traversal, s, color, table))
            for s in (DOTTED, SOLID)]


def twist_cells(sign, color, table=None):
    w = twist_weight(sign, color, table)
    return [((s,), (s,), w) for s in (DOTTED, SOLID)]


def identity_cells(width=1):
    one = LaurentPoly.one("q")
    cells = []
    for n in range(2 ** width):
        s = tuple((n >> (width - 1 - m)) & 1 for m in range(width))
        cells.append((s, s, one))
    return cells


def crossing_cells(sign, color_left, color_right, table=None):
    cells = []
    for bl in (0, 1):
        for br in (0, 1):
            for tl in (0, 1):
                for tr in (0, 1):
                    cfg = CrossingConfig(sign, color_left, color_right,
                                         (bl, br), (tl, tr))
                    w = crossing_weight(sign, cfg, table)
                    if not w.is_zero:
                        cells.append(((bl, br), (tl, tr), w))
    return cells


def split_cells(orient, color_single, color_left, color_right, table=None):
    """Split piece: one bottom strand, top strands (left, right)."""
    cells = []
    for b in (0, 1):
        for l in (0, 1):
            for r in (0, 1):
                cfg = VertexConfig("split", orient, color_single,
                                   color_left, color_right, (b, l, r))
                w = vertex_weight(cfg, table)
                if not w.is_zero:
                    cells.append(((b,), (l, r), w))
    return cells


def merge_cells(orient, color_single, color_left, color_right, table=None):
    """Merge piece: bottom strands (left, right), one top strand."""
    cells = []
    for t in (0, 1):
        for l in (0, 1):
            for r in (0, 1):
                cfg = VertexConfig("merge", orient, color_single,
                                   color_left, color_right, (t, l, r))
                w = vertex_weight(cfg, table)
                if not w.is_zero:
                    cells.append(((l, r), (t,), w))
    return cells


# ---------------------------------------------------------------------------
# dense piece matrices
# ---------------------------------------------------------------------------


def _basis(width):
    return [tuple((n >> (width - 1 - m)) & 1 for m in range(width))
            for n in range(2 ** width)]


@dataclass(frozen=True)
class PieceMatrix:
    """Dense matrix of a piece: rows indexed by top tuples, columns by bottom tuples."""

    bottom_width: int
    top_width: int
    entries: tuple  # entries[row][col] as LaurentPoly

    def entry(self, top_state, bottom_state):
        rows = _basis(self.top_width)
        cols = _basis(self.bottom_width)
        return self.entries[rows.index(tuple(top_state))][cols.index(tuple(bottom_state))]


def matrix_from_cells(cells, bottom_width, top_width):
    rows = _basis(top_width)
    cols = _basis(bottom_width)
    zero = LaurentPoly.zero("q")
    grid = [[zero for _ in cols] for _ in rows]
    for bot, top, w in cells:
        grid[rows.index(tuple(top))][cols.index(tuple(bot))] = \
            grid[rows.index(tuple(top))][cols.index(tuple(bot))] + w
    return PieceMatrix(bottom_width, top_width, tuple(tuple(r) for r in grid))


def piece_matrix(kind, *, traversal=None, sign=None, orient=None,
                 color=None, color_left=None, color_right=None,
                 color_single=None, width=1, table=None):
    """Assemble the matrix of one elementary piece over the state basis."""
    if kind == "identity":
        return matrix_from_cells(identity_cells(width), width, width)
    if kind == "min":
        return matrix_from_cells(min_cells(traversal, color, table), 0, 2)
    if kind == "max":
        return matrix_from_cells(max_cells(traversal, color, table), 2, 0)
    if kind == "twist":
        return matrix_from_cells(twist_cells(sign, color, table), 1, 1)
    if kind == "crossing":
        return matrix_from_cells(crossing_cells(sign, color_left, color_right, table), 2, 2)
    if kind == "split":
        return matrix_from_cells(
            split_cells(orient, color_single, color_left, color_right, table), 1, 2)
    if kind == "merge":
        return matrix_from_cells(
            merge_cells(orient, color_single, color_left, color_right, table), 2, 1)
    raise ValueError(f"unknown piece kind {kind!r}")
