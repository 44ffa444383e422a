"""Goeritz matrices of reduced alternating diagrams, via checkerboard graphs.

A diagram is ingested as its checkerboard (white or black) graph: one vertex
per region, one edge per crossing between the adjacent regions.  For a
reduced alternating diagram the graph is connected and loop-free, and the
Goeritz matrix obtained by deleting a basepoint vertex is negative definite;
its determinant presents the first homology of the branched double cover.

Two builtin diagram families are provided:

* ``L35-white`` -- the 7-region white graph of an alternating diagram whose
  branched double cover is the splice of the (3,5) and (-3,5) torus knot
  exteriors; its 6x6 Goeritz matrix has determinant 226.
* ``fig3-black(a0,a1,b0,b1)`` -- black graphs of alternating diagrams whose
  branched double covers are the splices for p/q = a0 + 1/a1 and
  r/s = b0 + 1/b1; every instance satisfies |det| = |pqrs - 1|, which guards
  the transcription of the twist regions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import GramMatrix


@dataclass(frozen=True)
class CheckerboardGraph:
    """A connected loop-free multigraph on vertices 0..vertex_count-1.

    Edges are stored as a sorted tuple of ordered pairs; multiplicity is
    given by repetition.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError("need at least one vertex")
        norm = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", norm)
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"loop at vertex {u}: diagram is not reduced")
        if not self._connected():
            raise ValueError("checkerboard graph must be connected")

    def _connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        e = tuple(sorted((u, v)))
        return sum(1 for f in self.edges if f == e)


def goeritz_matrix(graph: CheckerboardGraph, basepoint: int = 0) -> GramMatrix:
    """Goeritz matrix over the non-basepoint vertices: diagonal -deg(v_i),
    off-diagonal the number of edges between v_i and v_j."""
    if not (0 <= basepoint < graph.vertex_count):
        raise ValueError(f"basepoint {basepoint} is not a vertex")
    keep = [v for v in range(graph.vertex_count) if v != basepoint]
    idx = {v: i for i, v in enumerate(keep)}
    n = len(keep)
    rows = [[0] * n for _ in range(n)]
    for u, v in graph.edges:
        if u in idx and v in idx:
            rows[idx[u]][idx[v]] += 1
            rows[idx[v]][idx[u]] += 1
    for v in keep:
        rows[idx[v]][idx[v]] = -graph.degree(v)
    return GramMatrix.from_rows(rows)


def det_h1_order(gram: GramMatrix) -> int:
    """|det G|, the order of the homology group the matrix presents."""
    d = abs(gram.determinant())
    if d == 0:
        raise ValueError("matrix is singular")
    return d


def family_2odd_2odd(a: int, b: int) -> GramMatrix:
    """The 5x5 black-graph Goeritz matrix for the alternating link whose
    branched double cover splices the (2,2a+1) and (2,2b+1) torus knot
    exteriors; |det| = 4(2a+1)(2b+1) - 1."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    return GramMatrix.from_rows(
        [
            [-3, 1, 0, 1, 0],
            [1, -3, 1, 0, 0],
            [0, 1, -b - 1, b, 0],
            [1, 0, b, -b - 2, 1],
            [0, 0, 0, 1, -a - 1],
        ]
    )


def l35_white_graph() -> CheckerboardGraph:
    """White graph of the 12-crossing alternating diagram for the link whose
    branched double cover splices the (3,5) and (-3,5) torus knot exteriors.

    Regions are labeled 0..6 with 0 the basepoint; the Goeritz matrix of
    this graph is the 6x6 matrix with determinant 226.
    """
    edges = (
        (0, 1),
        (0, 5),
        (1, 2),
        (1, 2),
        (1, 3),
        (2, 3),
        (2, 5),
        (2, 6),
        (3, 4),
        (3, 4),
        (3, 6),
        (4, 5),
    )
    return CheckerboardGraph(7, edges)


def fig3_black_graph(a0: int, a1: int, b0: int, b1: int) -> CheckerboardGraph:
    """Black graph of the alternating diagram for the splice determined by
    the continued fractions p/q = a0 + 1/a1 and r/s = b0 + 1/b1.

    Core vertices are 0..5; the two negative twist regions contribute chains
    with b1-2 and a1-2 extra vertices, so the graph has a1 + b1 + 2 vertices
    in total.  The transcription is guarded by the determinant identity
    |det| = |pqrs - 1| (see tests), which pins it down uniquely among the
    candidate twist-region assignments.
    """
    if a0 < 1 or b0 < 1:
        raise ValueError("need a0, b0 >= 1")
    if a1 < 2 or b1 < 2:
        raise ValueError("need a1, b1 >= 2")
    edges: list[tuple[int, int]] = []
    edges += [(0, 1)] * (b1 - 1)  # b1-1 half-twists
    edges += [(1, 2)] * (a1 - 1)  # a1-1 half-twists
    edges += [(3, 4)] * b0
    edges += [(0, 5)] * a0
    edges += [(0, 2), (1, 4)]  # the two crossings joining the tangles
    nv = 6

    def chain(u: int, v: int, crossings: int) -> None:
        nonlocal nv
        prev = u
        for _ in range(crossings - 1):
            edges.append((prev, nv))
            prev = nv
            nv += 1
        edges.append((prev, v))

    chain(2, 3, b1 - 1)  # 1-b1 twist region
    chain(4, 5, a1 - 1)  # 1-a1 twist region
    return CheckerboardGraph(nv, tuple(edges))


class BuiltinDiagrams:
    """Name-indexed access to the builtin checkerboard graphs.

    Concrete names are ``L35-white`` and ``fig3-black(a0,a1,b0,b1)`` with
    integer parameters, e.g. ``fig3-black(1,2,1,2)``.
    """

    _TEMPLATE = "fig3-black(a0,a1,b0,b1)"

    def names(self) -> tuple[str, ...]:
        return ("L35-white", self._TEMPLATE)

    def __contains__(self, name: str) -> bool:
        try:
            self[name]
        except KeyError:
            return False
        return True

    def __getitem__(self, name: str) -> CheckerboardGraph:
        if name == "L35-white":
            return l35_white_graph()
        if name.startswith("fig3-black(") and name.endswith(")"):
            body = name[len("fig3-black(") : -1]
            parts = body.split(",")
            if len(parts) == 4:
                try:
                    a0, a1, b0, b1 = (int(s.strip()) for s in parts)
                except ValueError:
                    raise KeyError(name) from None
                try:
                    return fig3_black_graph(a0, a1, b0, b1)
                except ValueError as exc:
                    raise KeyError(f"{name}: {exc}") from None
        raise KeyError(name)


def builtin_diagrams() -> BuiltinDiagrams:
    return BuiltinDiagrams()


def parse_graph_text(text: str) -> CheckerboardGraph:
    """Parse the graph text format: first line the vertex count, then one
    'u v' pair per edge (multiplicity by repetition); '#' starts a comment."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise ValueError("empty graph file")
    try:
        nv = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise ValueError(f"expected 'u v' edge line, got {ln!r}")
        edges.append((int(toks[0]), int(toks[1])))
    return CheckerboardGraph(nv, tuple(edges))


def format_graph_text(graph: CheckerboardGraph) -> str:
    lines = [str(graph.vertex_count)]
    lines += [f"{u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"
