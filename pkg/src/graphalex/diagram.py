"""Colored trivalent graph diagrams in Morse position.

A diagram is the cut-open form of a closed graph diagram: one strand
enters at the bottom boundary and one leaves at the top, both on the
marked cut edge.  Between the boundaries sits an ordered stack of
slices, each holding one elementary piece (cup, cap, crossing,
half-twist, split or merge vertex) at a stated position among the
pass-through strands.

The ``morse v1`` text grammar (UTF-8, line oriented, ``#`` comments):

    morse v1
    edge <name> <j:int> <J:int>
    cut <name> <up|down>
    slice <pos> min <edge> <l2r|r2l>
    slice <pos> max
    slice <pos> xpos | xneg | twpos | twneg
    slice <pos> split <bottom> <topLeft> <topRight>
    slice <pos> merge <bottomLeft> <bottomRight> <top>

Positions are 0-based indices into the current strand list.  Vertex
edge tokens may carry a ``!`` suffix marking the port orientation as
reversed relative to the all-upward default (split: bottom in, tops
out; merge: bottoms in, top out).  Directions of all strand ends are
derived from these declarations and checked for global consistency.
"""

from __future__ import annotations

from dataclasses import dataclass, field

UP, DOWN = "up", "down"


# ---------------------------------------------------------------------------
# errors
# ---------------------------------------------------------------------------


class DiagramError(Exception):
    """Base class for all diagram-level failures."""

    def __init__(self, message, slice_index=None, line=None):
        self.slice_index = slice_index
        self.line = line
        where = ""
        if slice_index is not None:
            where = f" (slice {slice_index})"
        elif line is not None:
            where = f" (line {line})"
        super().__init__(message + where)


class DiagramSyntaxError(DiagramError):
    pass


class UnknownEdgeError(DiagramError):
    pass


class DuplicateEdgeError(DiagramError):
    pass


class MissingCutError(DiagramError):
    pass


class PieceArityError(DiagramError):
    pass


class PieceInvariantError(DiagramError):
    pass


class DirectionError(DiagramError):
    pass


class AdmissibilityError(DiagramError):
    pass


class WeightAdmissibilityError(DiagramError):
    pass


class BoundaryError(DiagramError):
    pass


class EdgeUsageError(DiagramError):
    pass


class ZeroMultiplicityError(DiagramError):
    pass


class UnsupportedInputError(DiagramError):
    pass


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Color:
    """An edge color: nonzero multiplicity j and integer weight J."""

    j: int
    J: int


@dataclass(frozen=True)
class Slice:
    """One elementary piece at a position among pass-through strands."""

    pos: int
    kind: str  # min, max, xpos, xneg, twpos, twneg, split, merge
    edges: tuple = ()           # min: (edge,); split: (b, tl, tr); merge: (bl, br, t)
    traversal: str = None       # min only: "l2r" or "r2l"
    reversed_ports: tuple = ()  # split/merge: parallel to edges


@dataclass(frozen=True)
class MorseDiagram:
    """A cut-open colored diagram: edge colors, slice stack, marked cut."""

    edges: dict
    slices: tuple
    cut_edge: str
    cut_direction: str

    def color(self, name):
        return self.edges[name]


ARITY = {"min": (0, 2), "max": (2, 0), "xpos": (2, 2), "xneg": (2, 2),
         "twpos": (1, 1), "twneg": (1, 1), "split": (1, 2), "merge": (2, 1)}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _parse_int(token, line):
    try:
        return int(token)
    except ValueError:
        raise DiagramSyntaxError(f"expected integer, got {token!r}", line=line)


def parse_diagram(text):
    """Parse morse v1 text into a MorseDiagram (structure only; run validate() after)."""
    edges = {}
    cut = None
    slices = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != "morse v1":
                raise DiagramSyntaxError(
                    f"expected 'morse v1' header, got {line!r}", line=lineno)
            header_seen = True
            continue
        tokens = line.split()
        word = tokens[0]
        if word == "edge":
            if len(tokens) != 4:
                raise DiagramSyntaxError("edge takes: name j J", line=lineno)
            name = tokens[1]
            if name in edges:
                raise DuplicateEdgeError(f"edge {name!r} declared twice", line=lineno)
            edges[name] = Color(_parse_int(tokens[2], lineno), _parse_int(tokens[3], lineno))
        elif word == "cut":
            if len(tokens) != 3 or tokens[2] not in (UP, DOWN):
                raise DiagramSyntaxError("cut takes: name up|down", line=lineno)
            if cut is not None:
                raise DiagramSyntaxError("only one cut declaration allowed", line=lineno)
            if tokens[1] not in edges:
                raise UnknownEdgeError(f"unknown edge {tokens[1]!r}", line=lineno)
            cut = (tokens[1], tokens[2])
        elif word == "slice":
            if len(tokens) < 3:
                raise DiagramSyntaxError("slice takes: pos piece args...", line=lineno)
            pos = _parse_int(tokens[1], lineno)
            kind = tokens[2]
            args = tokens[3:]
            slices.append(_parse_piece(pos, kind, args, edges, lineno))
        else:
            raise DiagramSyntaxError(f"unknown directive {word!r}", line=lineno)
    if not header_seen:
        raise DiagramSyntaxError("empty input: missing 'morse v1' header", line=1)
    if cut is None:
        raise MissingCutError("no cut declaration")
    return MorseDiagram(edges=edges, slices=tuple(slices),
                        cut_edge=cut[0], cut_direction=cut[1])


def _parse_piece(pos, kind, args, edges, lineno):
    def known(name):
        if name not in edges:
            raise UnknownEdgeError(f"unknown edge {name!r}", line=lineno)
        return name

    if kind == "min":
        if len(args) != 2 or args[1] not in ("l2r", "r2l"):
            raise DiagramSyntaxError("min takes: edge l2r|r2l", line=lineno)
        return Slice(pos, "min", (known(args[0]),), traversal=args[1])
    if kind in ("max", "xpos", "xneg", "twpos", "twneg"):
        if args:
            raise DiagramSyntaxError(f"{kind} takes no arguments", line=lineno)
        return Slice(pos, kind)
    if kind in ("split", "merge"):
        if len(args) != 3:
            raise DiagramSyntaxError(f"{kind} takes three edge names", line=lineno)
        names, revs = [], []
        for tok in args:
            rev = tok.endswith("!")
            names.append(known(tok[:-1] if rev else tok))
            revs.append(rev)
        return Slice(pos, kind, tuple(names), reversed_ports=tuple(revs))
    raise DiagramSyntaxError(f"unknown piece kind {kind!r}", line=lineno)


# ---------------------------------------------------------------------------
# validation and layout
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolvedPiece:
    """A slice with its consumed/produced strands and derived geometry."""

    index: int
    slice: Slice
    bottom: tuple  # ((edge, dir), ...) consumed from below
    top: tuple     # ((edge, dir), ...) produced above
    traversal: str = None  # min/max
    orient: str = None     # split/merge: in/out key as (single, left, right)


@dataclass(frozen=True)
class Layout:
    """Strand rows between slices plus the resolved pieces."""

    rows: tuple    # len(slices) + 1 rows of ((edge, dir), ...)
    pieces: tuple


def _port_direction(role_in, at_bottom):
    # A bottom port points up when the edge runs into the piece, down
    # when it runs out; top ports are the mirror image.
    if at_bottom:
        return UP if role_in else DOWN
    return DOWN if role_in else UP


def validate(diagram):
    """Check every structural invariant; returns the resolved Layout.

    Verifies arity/width bookkeeping, direction consistency along
    strands, cup/cap edge matching, admissibility (multiplicities and
    weights) at every vertex, the single-strand cut boundary at both
    ends, and globally consistent edge orientations.
    """
    for name, color in diagram.edges.items():
        if color.j == 0:
            raise ZeroMultiplicityError(f"edge {name!r} has zero multiplicity")
    if diagram.cut_edge not in diagram.edges:
        raise UnknownEdgeError(f"unknown cut edge {diagram.cut_edge!r}")
    if diagram.cut_direction not in (UP, DOWN):
        raise DirectionError(f"bad cut direction {diagram.cut_direction!r}")

    row = [(diagram.cut_edge, diagram.cut_direction)]
    rows = [tuple(row)]
    pieces = []
    # per edge: counts of (tail, head) vertex attachments
    tails = {name: 0 for name in diagram.edges}
    heads = {name: 0 for name in diagram.edges}
    used = {name: False for name in diagram.edges}
    used[diagram.cut_edge] = True

    for idx, sl in enumerate(diagram.slices):
        nb, nt = ARITY.get(sl.kind, (None, None))
        if nb is None:
            raise PieceInvariantError(f"unknown piece kind {sl.kind!r}", idx)
        max_pos = len(row) if sl.kind == "min" else len(row) - nb
        if sl.pos < 0 or sl.pos > max_pos:
            raise PieceArityError(
                f"piece {sl.kind} at position {sl.pos} does not fit a row of width {len(row)}", idx)
        bottom = tuple(row[sl.pos:sl.pos + nb])
        piece = _resolve_piece(diagram, idx, sl, bottom)
        for name, _ in piece.top:
            used[name] = True
        for name, _ in piece.bottom:
            used[name] = True
        if sl.kind == "split":
            b, tl, tr = sl.edges
            rb, rtl, rtr = sl.reversed_ports
            _attach(tails, heads, b, role_in=not rb, idx=idx)
            _attach(tails, heads, tl, role_in=rtl, idx=idx)
            _attach(tails, heads, tr, role_in=rtr, idx=idx)
            _check_vertex_admissible(diagram, idx, sl.edges, piece.orient)
        elif sl.kind == "merge":
            bl, br, t = sl.edges
            rbl, rbr, rt = sl.reversed_ports
            _attach(tails, heads, bl, role_in=not rbl, idx=idx)
            _attach(tails, heads, br, role_in=not rbr, idx=idx)
            _attach(tails, heads, t, role_in=rt, idx=idx)
            _check_vertex_admissible(diagram, idx, (t, bl, br), piece.orient)
        row[sl.pos:sl.pos + nb] = list(piece.top)
        rows.append(tuple(row))
        pieces.append(piece)

    if len(row) != 1 or row[0] != (diagram.cut_edge, diagram.cut_direction):
        raise BoundaryError(
            f"top boundary is {row!r}, expected the single cut strand "
            f"({diagram.cut_edge!r}, {diagram.cut_direction!r})", len(diagram.slices))
    for name in diagram.edges:
        if not used[name]:
            raise EdgeUsageError(f"edge {name!r} is declared but never used")
        t, h = tails[name], heads[name]
        if t > 1 or h > 1:
            raise EdgeUsageError(
                f"edge {name!r} has {t} tail and {h} head attachments")
        if t != h:
            raise EdgeUsageError(
                f"edge {name!r} has a dangling end ({t} tails, {h} heads)")
    return Layout(tuple(rows), tuple(pieces))


def _attach(tails, heads, name, role_in, idx):
    if role_in:
        heads[name] += 1
    else:
        tails[name] += 1


def _check_vertex_admissible(diagram, idx, names_single_left_right, orient):
    colors = [diagram.edges[n] for n in names_single_left_right]
    eps = [1 if c == "o" else -1 for c in orient]
    if orient in ("iii", "ooo"):
        raise AdmissibilityError(
            f"vertex with edges {names_single_left_right} is a source or sink", idx)
    mult = sum(e * c.j for e, c in zip(eps, colors))
    if mult != 0:
        raise AdmissibilityError(
            f"multiplicities at vertex {names_single_left_right} sum to {mult}, expected 0", idx)
    prod = eps[0] * eps[1] * eps[2]
    wt = sum(e * c.J for e, c in zip(eps, colors))
    if wt != -prod:
        raise WeightAdmissibilityError(
            f"weights at vertex {names_single_left_right} sum to {wt}, expected {-prod}", idx)


def _resolve_piece(diagram, idx, sl, bottom):
    kind = sl.kind
    if kind == "min":
        (name,) = sl.edges
        if sl.traversal == "l2r":
            top = ((name, DOWN), (name, UP))
        else:
            top = ((name, UP), (name, DOWN))
        return ResolvedPiece(idx, sl, (), top, traversal=sl.traversal)
    if kind == "max":
        (e1, d1), (e2, d2) = bottom
        if e1 != e2:
            raise PieceInvariantError(
                f"max joins strands of different edges {e1!r} and {e2!r}", idx)
        if {d1, d2} != {UP, DOWN}:
            raise DirectionError(
                f"max needs one ascending and one descending strand, got {d1}/{d2}", idx)
        traversal = "l2r" if d1 == UP else "r2l"
        return ResolvedPiece(idx, sl, bottom, (), traversal=traversal)
    if kind in ("xpos", "xneg"):
        (el, dl), (er, dr) = bottom
        top = ((er, dr), (el, dl))
        return ResolvedPiece(idx, sl, bottom, top)
    if kind in ("twpos", "twneg"):
        return ResolvedPiece(idx, sl, bottom, bottom)
    if kind == "split":
        b, tl, tr = sl.edges
        rb, rtl, rtr = sl.reversed_ports
        (be, bd) = bottom[0]
        if be != b:
            raise PieceInvariantError(
                f"split expects edge {b!r} below, found {be!r}", idx)
        want = _port_direction(role_in=not rb, at_bottom=True)
        if bd != want:
            raise DirectionError(
                f"edge {b!r} reaches its vertex pointing {bd}, expected {want}", idx)
        top = ((tl, _port_direction(role_in=rtl, at_bottom=False)),
               (tr, _port_direction(role_in=rtr, at_bottom=False)))
        orient = ("".join(["i" if not rb else "o",
                           "o" if not rtl else "i",
                           "o" if not rtr else "i"]))
        return ResolvedPiece(idx, sl, bottom, top, orient=orient)
    if kind == "merge":
        bl, br, t = sl.edges
        rbl, rbr, rt = sl.reversed_ports
        (e1, d1), (e2, d2) = bottom
        if (e1, e2) != (bl, br):
            raise PieceInvariantError(
                f"merge expects edges ({bl!r}, {br!r}) below, found ({e1!r}, {e2!r})", idx)
        for name, d, rev in ((bl, d1, rbl), (br, d2, rbr)):
            want = _port_direction(role_in=not rev, at_bottom=True)
            if d != want:
                raise DirectionError(
                    f"edge {name!r} reaches its vertex pointing {d}, expected {want}", idx)
        top = ((t, _port_direction(role_in=rt, at_bottom=False)),)
        orient = ("".join(["o" if not rt else "i",
                           "i" if not rbl else "o",
                           "i" if not rbr else "o"]))
        return ResolvedPiece(idx, sl, bottom, top, orient=orient)
    raise PieceInvariantError(f"unknown piece kind {kind!r}", idx)


# ---------------------------------------------------------------------------
# contraction to an abstract colored digraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DigraphVertex:
    """A trivalent vertex with its geometric port order preserved."""

    id: int          # slice index of the vertex piece
    shape: str       # split / merge (geometry of the piece)
    orient: str      # in/out pattern as (single, left, right)
    single: str      # edge at the single port
    left: str
    right: str
    vtype: str       # odd (1 in / 2 out) or even (2 in / 1 out)
    color: int       # c(v): total multiplicity through the vertex


@dataclass(frozen=True)
class DigraphEdge:
    name: str
    color: Color
    tail: int  # vertex id or None
    head: int
    is_cut: bool


@dataclass(frozen=True)
class ColoredDigraph:
    vertices: tuple
    edges: dict
    cut_edge: str

    def vertex(self, vid):
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def out_edges(self, vid):
        return [e for e in self.edges.values() if e.tail == vid]

    def in_edges(self, vid):
        return [e for e in self.edges.values() if e.head == vid]

    def to_json(self):
        return {
            "vertices": [{"id": v.id, "type": v.vtype, "color": v.color}
                         for v in self.vertices],
            "edges": [{"id": e.name, "tail": e.tail, "head": e.head,
                       "j": e.color.j, "J": e.color.J, "is_cut": e.is_cut}
                      for e in sorted(self.edges.values(), key=lambda e: e.name)],
        }


def contract(diagram, layout=None):
    """Collapse a validated diagram to its abstract colored digraph."""
    layout = layout or validate(diagram)
    tails = {name: None for name in diagram.edges}
    heads = {name: None for name in diagram.edges}
    vertices = []
    for piece in layout.pieces:
        sl = piece.slice
        if sl.kind not in ("split", "merge"):
            continue
        if sl.kind == "split":
            single, left, right = sl.edges[0], sl.edges[1], sl.edges[2]
        else:
            single, left, right = sl.edges[2], sl.edges[0], sl.edges[1]
        orient = piece.orient
        roles = dict(zip((single, left, right), orient))
        n_in = orient.count("i")
        vtype = "odd" if n_in == 1 else "even"
        cv = sum(diagram.edges[n].j for n, r in zip((single, left, right), orient)
                 if r == "o")
        vertices.append(DigraphVertex(piece.index, sl.kind, orient,
                                      single, left, right, vtype, cv))
        for name, role in zip((single, left, right), orient):
            if role == "o":
                tails[name] = piece.index
            else:
                heads[name] = piece.index
    edges = {name: DigraphEdge(name, diagram.edges[name], tails[name],
                               heads[name], name == diagram.cut_edge)
             for name in diagram.edges}
    return ColoredDigraph(tuple(vertices), edges, diagram.cut_edge)


# ---------------------------------------------------------------------------
# rotation numbers and planar cabling
# ---------------------------------------------------------------------------


class _Curves:
    """Union-find over strand segments, accumulating half-turn counts."""

    def __init__(self):
        self.parent = {}
        self.turns = {}
        self.open = {}

    def node(self):
        n = len(self.parent)
        self.parent[n] = n
        self.turns[n] = 0
        self.open[n] = False
        return n

    def find(self, n):
        while self.parent[n] != n:
            self.parent[n] = self.parent[self.parent[n]]
            n = self.parent[n]
        return n

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        self.parent[rb] = ra
        self.turns[ra] += self.turns[rb]
        self.open[ra] |= self.open[rb]
        return ra

    def add_turn(self, n, half_turns):
        self.turns[self.find(n)] += half_turns

    def mark_open(self, n):
        self.open[self.find(n)] = True

    def closed_rotations(self):
        out = []
        for n, p in self.parent.items():
            if n == self.find(n) and not self.open[n]:
                half = self.turns[n]
                if half % 2:
                    raise AssertionError("closed curve with odd half-turn count")
                out.append(half // 2)
        return out


def _critical_half_turn(kind, traversal):
    # Calibrated so a clockwise round circle (cap crossed left-to-right,
    # cup crossed right-to-left) has rotation number +1.
    if kind == "max":
        return 1 if traversal == "l2r" else -1
    return 1 if traversal == "r2l" else -1


def rotation_numbers(diagram, layout=None):
    """Rotation numbers of the closed curves of a vertex-free strand diagram.

    Supports cups, caps and half-twist symbols; crossings are rejected
    (the notion is planar) and vertex pieces are rejected because a
    curve does not continue canonically through a vertex.
    """
    layout = layout or validate(diagram)
    curves = _Curves()
    row = [curves.node()]
    curves.mark_open(row[0])
    for piece in layout.pieces:
        sl = piece.slice
        if sl.kind in ("xpos", "xneg"):
            raise UnsupportedInputError("rotation numbers need a crossingless diagram",
                                        piece.index)
        if sl.kind in ("split", "merge"):
            raise UnsupportedInputError(
                "curves are not traced through vertices; cable the diagram first",
                piece.index)
        if sl.kind == "min":
            a, b = curves.node(), curves.node()
            r = curves.union(a, b)
            curves.add_turn(r, _critical_half_turn("min", piece.traversal))
            row[sl.pos:sl.pos] = [a, b]
        elif sl.kind == "max":
            a, b = row[sl.pos], row[sl.pos + 1]
            r = curves.union(a, b)
            curves.add_turn(r, _critical_half_turn("max", piece.traversal))
            del row[sl.pos:sl.pos + 2]
        # twists pass through
    for n in row:
        curves.mark_open(n)
    rots = curves.closed_rotations()
    return {f"curve{m}": r for m, r in enumerate(rots)}


def cabled_rotation_sum(diagram, layout=None):
    """Total rotation of the closed cabled curves avoiding the cut.

    Each edge is replaced by c(e) parallel strands; cups and caps cable
    into nested critical points with the parent's traversal, and the
    bottom cables of an all-upward vertex split order-preservingly into
    the left then right top cables.  Curves through the cut edge run
    boundary to boundary and are open, so only genuinely closed curves
    contribute.
    """
    layout = layout or validate(diagram)
    for name, color in diagram.edges.items():
        if color.j <= 0:
            raise ZeroMultiplicityError(
                f"cabling needs positive multiplicities; edge {name!r} has {color.j}")
    curves = _Curves()

    def cable(name):
        return [curves.node() for _ in range(diagram.edges[name].j)]

    row = [cable(diagram.cut_edge)]
    for n in row[0]:
        curves.mark_open(n)
    for piece in layout.pieces:
        sl = piece.slice
        kind = sl.kind
        if kind in ("xpos", "xneg"):
            raise UnsupportedInputError("cabling needs a crossingless diagram", piece.index)
        if kind in ("twpos", "twneg"):
            raise UnsupportedInputError(
                "cabling assumes the blackboard framing (no half-twist symbols)",
                piece.index)
        if kind == "min":
            (name,) = sl.edges
            left, right = cable(name), cable(name)
            half = _critical_half_turn("min", piece.traversal)
            for a, b in zip(left, reversed(right)):
                r = curves.union(a, b)
                curves.add_turn(r, half)
            row[sl.pos:sl.pos] = [left, right]
        elif kind == "max":
            left, right = row[sl.pos], row[sl.pos + 1]
            half = _critical_half_turn("max", piece.traversal)
            for a, b in zip(left, reversed(right)):
                r = curves.union(a, b)
                curves.add_turn(r, half)
            del row[sl.pos:sl.pos + 2]
        elif kind == "split":
            if piece.orient != "ioo":
                raise UnsupportedInputError(
                    "cabling is defined for locally all-upward vertices", piece.index)
            b, tl, tr = sl.edges
            bottom = row[sl.pos]
            left, right = cable(tl), cable(tr)
            for a, c in zip(bottom, left + right):
                curves.union(a, c)
            row[sl.pos:sl.pos + 1] = [left, right]
        elif kind == "merge":
            if piece.orient != "oii":
                raise UnsupportedInputError(
                    "cabling is defined for locally all-upward vertices", piece.index)
            bl, br, t = sl.edges
            bottom = row[sl.pos] + row[sl.pos + 1]
            top = cable(t)
            for a, c in zip(bottom, top):
                curves.union(a, c)
            row[sl.pos:sl.pos + 2] = [top]
    for n in row[0]:
        curves.mark_open(n)
    return sum(curves.closed_rotations())
