"""State-sum evaluators for the colored-graph invariant.

``evaluate_full`` contracts a cut-open diagram slice by slice as a
sparse transfer-matrix product over dotted/solid state tuples, starts
from the cut strand dotted and reads the dotted amplitude back off at
the top; dividing by the bracket of the cut color gives the invariant.

``evaluate_planar`` is the simplified sum for crossingless, twistless
diagrams with positive colors and locally all-upward vertices: a sum
over flow-conserving edge states of signed vertex-weight products,
scaled by q^(2 Rot) over the bracket of the cut color, where Rot is the
total rotation of the closed cabled curves avoiding the cut.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import weights
from .diagram import (UP, ColoredDigraph, UnsupportedInputError,
                      ZeroMultiplicityError, cabled_rotation_sum, contract,
                      validate)
from .laurent import LaurentPoly, RatFn, qnum


@dataclass(frozen=True)
class StateVector:
    """Sparse amplitudes over dotted/solid tuples at one slice boundary."""

    width: int
    amplitudes: dict

    def amplitude(self, state):
        return self.amplitudes.get(tuple(state), LaurentPoly.zero("q"))


def piece_cells(piece, edges, table=None):
    """The sparse kernel (bottom states -> top states -> weight) of a resolved piece."""
    sl = piece.slice
    kind = sl.kind
    if kind == "min":
        return weights.min_cells(piece.traversal, edges[sl.edges[0]], table)
    if kind == "max":
        return weights.max_cells(piece.traversal, edges[piece.bottom[0][0]], table)
    if kind in ("twpos", "twneg"):
        sign = "pos" if kind == "twpos" else "neg"
        return weights.twist_cells(sign, edges[piece.bottom[0][0]], table)
    if kind in ("xpos", "xneg"):
        (el, dl), (er, dr) = piece.bottom
        if dl != UP or dr != UP:
            raise weights.CertifiedScopeError(
                "crossing weights are tabulated only for two upward strands "
                f"(slice {piece.index})")
        sign = "pos" if kind == "xpos" else "neg"
        return weights.crossing_cells(sign, edges[el], edges[er], table)
    if kind == "split":
        b, tl, tr = sl.edges
        return weights.split_cells(piece.orient, edges[b], edges[tl], edges[tr], table)
    if kind == "merge":
        bl, br, t = sl.edges
        return weights.merge_cells(piece.orient, edges[t], edges[bl], edges[br], table)
    raise ValueError(f"unknown piece kind {kind!r}")


def transfer_amplitude(diagram, layout=None, table=None):
    """Contract the slices bottom-to-top; returns the dotted-to-dotted amplitude."""
    layout = layout or validate(diagram)
    zero = LaurentPoly.zero("q")
    vec = {(weights.DOTTED,): LaurentPoly.one("q")}
    for piece in layout.pieces:
        cells = piece_cells(piece, diagram.edges, table)
        kernel = {}
        for bot, top, w in cells:
            kernel.setdefault(tuple(bot), []).append((tuple(top), w))
        nb = len(piece.bottom)
        pos = piece.slice.pos
        nxt = {}
        for state, amp in vec.items():
            mid = state[pos:pos + nb]
            for top, w in kernel.get(mid, ()):
                key = state[:pos] + top + state[pos + nb:]
                acc = nxt.get(key, zero) + amp * w
                if acc.is_zero:
                    nxt.pop(key, None)
                else:
                    nxt[key] = acc
        vec = nxt
    return vec.get((weights.DOTTED,), zero)


def evaluate_full(diagram, table=None):
    """The invariant of a cut-open diagram by transfer-matrix contraction."""
    layout = validate(diagram)
    amp = transfer_amplitude(diagram, layout, table)
    j = diagram.edges[diagram.cut_edge].j
    return RatFn(amp, qnum(2 * j))


# ---------------------------------------------------------------------------
# planar states
# ---------------------------------------------------------------------------


def enumerate_planar_states(graph: ColoredDigraph):
    """All 0/1 edge assignments with the cut edge dotted and flow conserved.

    Depth-first assignment over edges with per-vertex pruning: a vertex
    whose assigned in-flow can no longer match its possible out-flow
    cuts the branch.
    """
    names = sorted(graph.edges)
    ins = {v.id: [e.name for e in graph.in_edges(v.id)] for v in graph.vertices}
    outs = {v.id: [e.name for e in graph.out_edges(v.id)] for v in graph.vertices}

    def feasible(assign):
        for vid in ins:
            lo_in = hi_in = 0
            for n in ins[vid]:
                s = assign.get(n)
                lo_in += 0 if s is None else s
                hi_in += 1 if s is None else s
            lo_out = hi_out = 0
            for n in outs[vid]:
                s = assign.get(n)
                lo_out += 0 if s is None else s
                hi_out += 1 if s is None else s
            if lo_in > hi_out or lo_out > hi_in:
                return False
        return True

    states = []

    def rec(m, assign):
        if m == len(names):
            states.append(dict(assign))
            return
        name = names[m]
        choices = (0,) if name == graph.cut_edge else (0, 1)
        for s in choices:
            assign[name] = s
            if feasible(assign):
                rec(m + 1, assign)
            del assign[name]

    rec(0, {})
    return states


def solid_curves(state, graph):
    """The solid edges split into disjoint directed cycles; returns them as edge lists."""
    solid = {n for n, s in state.items() if s}
    nxt = {}
    for name in solid:
        head = graph.edges[name].head
        outs = [e.name for e in graph.out_edges(head) if e.name in solid]
        if len(outs) != 1:
            raise AssertionError("flow condition violated: solid edges do not chain")
        nxt[name] = outs[0]
    curves = []
    seen = set()
    for name in sorted(solid):
        if name in seen:
            continue
        curve = []
        cur = name
        while cur not in seen:
            seen.add(cur)
            curve.append(cur)
            cur = nxt[cur]
        curves.append(curve)
    return curves


def planar_sign(state, graph):
    """(-1) to the number of solid curves of the state."""
    return -1 if len(solid_curves(state, graph)) % 2 else 1


def planar_vertex_weight(vertex, state, graph, table=None):
    """The all-upward vertex weight of a state (states in port order single, left, right)."""
    states = (state[vertex.single], state[vertex.left], state[vertex.right])
    cfg = weights.VertexConfig(vertex.shape, vertex.orient,
                               graph.edges[vertex.single].color,
                               graph.edges[vertex.left].color,
                               graph.edges[vertex.right].color,
                               states)
    return weights.vertex_weight(cfg, table)


def _require_planar(diagram, layout):
    for piece in layout.pieces:
        kind = piece.slice.kind
        if kind in ("xpos", "xneg"):
            raise UnsupportedInputError(
                "the planar state sum needs a crossingless diagram", piece.index)
        if kind in ("twpos", "twneg"):
            raise UnsupportedInputError(
                "the planar state sum needs a twistless diagram", piece.index)
        if kind == "split" and piece.orient != "ioo":
            raise UnsupportedInputError(
                "the planar state sum needs locally all-upward vertices", piece.index)
        if kind == "merge" and piece.orient != "oii":
            raise UnsupportedInputError(
                "the planar state sum needs locally all-upward vertices", piece.index)
    for name, color in diagram.edges.items():
        if color.j <= 0:
            raise ZeroMultiplicityError(
                f"the planar state sum needs positive multiplicities; "
                f"edge {name!r} has {color.j}")


def evaluate_planar(diagram, table=None):
    """The invariant of a crossingless diagram by the planar state sum."""
    layout = validate(diagram)
    _require_planar(diagram, layout)
    graph = contract(diagram, layout)
    rot = cabled_rotation_sum(diagram, layout)
    total = LaurentPoly.zero("q")
    for state in enumerate_planar_states(graph):
        term = LaurentPoly.one("q")
        for vertex in graph.vertices:
            term = term * planar_vertex_weight(vertex, state, graph, table)
        total = total + term * planar_sign(state, graph)
    j = diagram.edges[diagram.cut_edge].j
    return RatFn(total.shift(2 * rot), qnum(2 * j))


def result_json(diagram, value, method):
    """The machine-readable result record for the command line."""
    num_states = None
    try:
        layout = validate(diagram)
        if all(p.slice.kind not in ("xpos", "xneg", "twpos", "twneg")
               for p in layout.pieces):
            num_states = len(enumerate_planar_states(contract(diagram, layout)))
    except Exception:
        num_states = None
    return {"invariant": "gl11", "value": value.to_json(),
            "num_states": num_states, "method": method}
