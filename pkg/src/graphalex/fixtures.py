"""Builders for the diagram corpus used by tests, relation closures and the CLI.

Every builder returns ``morse v1`` text, so all construction funnels
through the one parser.  Weight components default to 1 everywhere,
which satisfies the weight admissibility condition at every vertex;
builders taking explicit weights solve the remaining components.
"""

from __future__ import annotations


def circle(i=2, I=1, direction="up", style="bare"):
    """A cut-open circle colored (i, I).

    ``bare`` is the zero-slice presentation; ``minmax`` carries one cup
    and one cap.
    """
    head = f"morse v1\nedge e {i} {I}\ncut e {direction}\n"
    if style == "bare":
        return head
    if style == "minmax":
        if direction == "up":
            return head + "slice 1 min e l2r\nslice 0 max\n"
        return head + "slice 1 min e r2l\nslice 0 max\n"
    raise ValueError(f"unknown circle style {style!r}")


def twisted_circle(sign="pos", i=2, I=1):
    """A circle with a single half-twist symbol."""
    tw = "twpos" if sign == "pos" else "twneg"
    return f"morse v1\nedge e {i} {I}\ncut e up\nslice 0 {tw}\n"


def kinked_circle(i=2, I=1):
    """A circle with one positive curl (a crossing of the strand with itself)."""
    return (f"morse v1\nedge e {i} {I}\ncut e up\n"
            "slice 1 min e r2l\nslice 0 xpos\nslice 1 max\n")


def two_components(i=1, I=1, k=2, K=1):
    """A cut strand next to a disjoint closed circle."""
    return (f"morse v1\nedge e {i} {I}\nedge f {k} {K}\ncut e up\n"
            "slice 1 min f l2r\nslice 1 max\n")


def bubble(x, y, I_cut=1):
    """A circle of color x+y carrying a bubble with branch colors (x, y)."""
    i = x + y
    return (f"morse v1\n"
            f"edge c {i} {I_cut}\nedge a {x} 1\nedge b {y} 1\n"
            f"cut c up\n"
            f"slice 0 split c a b\nslice 0 merge a b c\n")


def theta(p=1, r=1):
    """The theta graph, cut on the thick edge: split into (p, r), merge back."""
    return bubble(p, r)


def theta_flipped():
    """The theta with both vertex pieces turned upside down (isotopy fixture)."""
    return ("morse v1\n"
            "edge c 2 1\nedge a 1 1\nedge b 1 1\n"
            "cut c up\n"
            "slice 1 min c l2r\n"
            "slice 1 split c! a! b!\n"
            "slice 1 merge a! b! c!\n"
            "slice 0 max\n")


def theta_snake():
    """The theta with a zigzag inserted on one thin edge (isotopy fixture)."""
    return ("morse v1\n"
            "edge c 2 1\nedge a 1 1\nedge b 1 1\n"
            "cut c up\n"
            "slice 0 split c a b\n"
            "slice 1 min a l2r\n"
            "slice 0 max\n"
            "slice 0 merge a b c\n")


def double_theta():
    """Two thetas in series (4 vertices, 6 edges), cut on a thick edge."""
    return ("morse v1\n"
            "edge c1 2 1\nedge a1 1 1\nedge b1 1 1\n"
            "edge c2 2 1\nedge a2 1 1\nedge b2 1 1\n"
            "cut c1 up\n"
            "slice 0 split c1 a1 b1\n"
            "slice 0 merge a1 b1 c2\n"
            "slice 0 split c2 a2 b2\n"
            "slice 0 merge a2 b2 c1\n")


def cycle_theta():
    """The theta cut on a thin edge: the two thin edges run against the thick one.

    This is the smallest fixture with a solid state (the directed cycle
    through the thick edge and the uncut thin edge), so it exercises
    signs, solid curves and a nonzero cabled rotation.
    """
    return ("morse v1\n"
            "edge a 2 1\nedge b 1 1\nedge c 1 1\n"
            "cut b down\n"
            "slice 1 min b r2l\n"
            "slice 2 min c r2l\n"
            "slice 1 merge b c a\n"
            "slice 1 split a b c\n"
            "slice 2 max\n"
            "slice 0 max\n")


def six_ring():
    """A necklace of three beads (6 vertices, 9 edges, 8 planar states).

    Bead m is a thick edge a_m with a thin return edge b_m; thin chain
    edges d_m join consecutive beads and d_3 closes the necklace and
    carries the cut.
    """
    lines = ["morse v1"]
    for m in (1, 2, 3):
        lines += [f"edge a{m} 2 1", f"edge b{m} 1 1", f"edge d{m} 1 1"]
    lines += ["cut d3 down", "slice 1 min d3 r2l"]
    prev = "d3"
    for m in (1, 2, 3):
        lines += [f"slice 2 min b{m} r2l",
                  f"slice 1 merge {prev} b{m} a{m}",
                  f"slice 1 split a{m} d{m} b{m}",
                  "slice 2 max"]
        prev = f"d{m}"
    lines += ["slice 0 max"]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parameterized closures for the local relation checks
# ---------------------------------------------------------------------------


def closed_v_lhs(i, j):
    """The square ladder of the bigon-square relation, closed through a (j-i)-edge."""
    return (f"morse v1\n"
            f"edge cut {j - i} 1\n"
            f"edge j1 {j} 1\nedge j2 {j} 1\n"
            f"edge ib {i} 1\nedge it {i} 1\n"
            f"edge pr {i} 1\nedge pq {i + j} 1\nedge qs {j} 1\nedge sr {i + j} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut j1 ib!\n"
            f"slice 0 split j1 pr! pq\n"
            f"slice 1 merge pq ib! qs\n"
            f"slice 1 split qs sr it!\n"
            f"slice 0 merge pr! sr j2\n"
            f"slice 0 merge j2 it! cut\n")


def closed_v_mid(i, j):
    """The two-vertex bigon diagram under the same closure."""
    return (f"morse v1\n"
            f"edge cut {j - i} 1\n"
            f"edge j1 {j} 1\nedge j2 {j} 1\n"
            f"edge ib {i} 1\nedge it {i} 1\n"
            f"edge mid {i - j} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut j1 ib!\n"
            f"slice 0 merge j1 ib! mid!\n"
            f"slice 0 split mid! j2 it!\n"
            f"slice 0 merge j2 it! cut\n")


def closed_v_parallel(i, j):
    """Two parallel strands (j up, i down) under the same closure."""
    return (f"morse v1\n"
            f"edge cut {j - i} 1\n"
            f"edge j1 {j} 1\nedge it {i} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut j1 it!\n"
            f"slice 0 merge j1 it! cut\n")


def _closure_head(i, j, I=1, J=1):
    Jc = I + J - 1
    return (f"morse v1\n"
            f"edge cut {i + j} {Jc}\n"
            f"edge ei {i} {I}\nedge ej {j} {J}\n"
            f"cut cut up\n"
            f"slice 0 split cut ei ej\n")


def closed_ladder(i, j, p, r, I=1, J=1, P=1, R=None):
    """Merge then split between upward strands (i, j) -> (p, r), closed."""
    if R is None:
        R = I + J - P
    return (_closure_head(i, j, I, J)
            + f"edge em {i + j} {I + J - 1}\n"
            + f"edge ep {p} {P}\nedge er {r} {R}\n"
            + "slice 0 merge ei ej em\n"
            + "slice 0 split em ep er\n"
            + "slice 0 merge ep er cut\n")


def closed_rung(i, j, m, I=1, J=1):
    """A single rung of color m from the right strand to the left, closed."""
    Jm = 1 + J - I
    return (_closure_head(i, j, I, J)
            + f"edge em {m} {Jm}\n"
            + f"edge ep {i + m} {I}\nedge er {j - m} {J}\n"
            + "slice 1 split ej em er\n"
            + "slice 0 merge ei em ep\n"
            + "slice 0 merge ep er cut\n")


def closed_crossing(sign, i, j, I=1, J=1):
    """A single crossing between upward strands (i, I) left and (j, J) right, closed."""
    x = "xpos" if sign == "pos" else "xneg"
    return (_closure_head(i, j, I, J)
            + f"slice 0 {x}\n"
            + "slice 0 merge ej ei cut\n")


def closed_vii_lhs(i, j, k, l):
    """The double-rung ladder of the two-rung relation, closed."""
    return (_closure_head(i, j)
            + f"edge rk {k} 1\nedge jk {j - k} 1\nedge ik {i + k} 1\n"
            + f"edge ikl {i + k - l} 1\nedge rl {l} 1\nedge jlk {j + l - k} 1\n"
            + "slice 1 split ej rk jk\n"
            + "slice 0 merge ei rk ik\n"
            + "slice 0 split ik ikl rl\n"
            + "slice 1 merge rl jk jlk\n"
            + "slice 0 merge ikl jlk cut\n")


def closed_vii_ladder(i, j, k, l):
    return closed_ladder(i, j, i + k - l, j + l - k)


def closed_vii_rung(i, j, k, l):
    return closed_rung(i, j, k - l)


def closed_vi_a_lhs(i, j, k):
    return (f"morse v1\n"
            f"edge cut {i + j + k} 1\n"
            f"edge ij {i + j} 1\nedge ei {i} 1\nedge ej {j} 1\nedge ek {k} 1\n"
            f"edge m2 {j + k} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut ij ek\n"
            f"slice 0 split ij ei ej\n"
            f"slice 1 merge ej ek m2\n"
            f"slice 0 merge ei m2 cut\n")


def closed_vi_a_rhs(i, j, k):
    return (f"morse v1\n"
            f"edge cut {i + j + k} 1\n"
            f"edge jk {j + k} 1\nedge ei {i} 1\nedge ej {j} 1\nedge ek {k} 1\n"
            f"edge m2 {j + k} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut ei jk\n"
            f"slice 1 split jk ej ek\n"
            f"slice 1 merge ej ek m2\n"
            f"slice 0 merge ei m2 cut\n")


def closed_vi_b_lhs(i, j, k):
    return (f"morse v1\n"
            f"edge cut {i + j + k} 1\n"
            f"edge m1 {j + k} 1\nedge ei {i} 1\nedge ej {j} 1\nedge ek {k} 1\n"
            f"edge ij {i + j} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut ei m1\n"
            f"slice 1 split m1 ej ek\n"
            f"slice 0 merge ei ej ij\n"
            f"slice 0 merge ij ek cut\n")


def closed_vi_b_rhs(i, j, k):
    return (f"morse v1\n"
            f"edge cut {i + j + k} 1\n"
            f"edge m1 {j + k} 1\nedge ei {i} 1\nedge ej {j} 1\nedge ek {k} 1\n"
            f"edge m2 {j + k} 1\n"
            f"cut cut up\n"
            f"slice 0 split cut ei m1\n"
            f"slice 1 split m1 ej ek\n"
            f"slice 1 merge ej ek m2\n"
            f"slice 0 merge ei m2 cut\n")


STANDARD = {
    "circle": circle(),
    "circle_minmax": circle(style="minmax", direction="down"),
    "twisted_circle": twisted_circle(),
    "kinked_circle": kinked_circle(),
    "two_components": two_components(),
    "theta": theta(),
    "theta_flipped": theta_flipped(),
    "theta_snake": theta_snake(),
    "double_theta": double_theta(),
    "cycle_theta": cycle_theta(),
    "six_ring": six_ring(),
}
