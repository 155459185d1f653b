"""Line-oriented text format for k-graph specifications.

    # comment
    colors 2
    vertex x1 x2 x3
    edge a1 : 1 x1 -> x2
    edge b1 : 2 x1 -> x2
    relation b2 a1 = a2 b1

Declarations must precede use (colors before edges, edges before relations).
Relation sides are two-letter words in composition order, leftmost applied
last; the two sides must carry opposite color orders and identical endpoints.
"""

from .errors import SpecSyntaxError
from .kgraph import CommutationSquare, Edge, KGraph

__all__ = ["parse_spec", "serialize"]


def parse_spec(text: str) -> KGraph:
    colors = None
    vertices: list[str] = []
    edges: dict[str, Edge] = {}
    squares: list[CommutationSquare] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head, args = tokens[0], tokens[1:]

        if head == "colors":
            if colors is not None:
                raise SpecSyntaxError("duplicate colors declaration", lineno)
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise SpecSyntaxError("colors needs one positive integer", lineno)
            colors = int(args[0])

        elif head == "vertex":
            if not args:
                raise SpecSyntaxError("vertex needs at least one id", lineno)
            for v in args:
                if v in vertices:
                    raise SpecSyntaxError(f"duplicate vertex {v!r}", lineno)
                vertices.append(v)

        elif head == "edge":
            if colors is None:
                raise SpecSyntaxError("edge before colors declaration", lineno)
            if len(args) != 6 or args[1] != ":" or args[4] != "->":
                raise SpecSyntaxError(
                    "edge syntax: edge <id> : <color> <src> -> <dst>", lineno
                )
            eid, _, color, src, _, dst = args
            if eid in edges:
                raise SpecSyntaxError(f"duplicate edge {eid!r}", lineno)
            if not color.isdigit() or not 1 <= int(color) <= colors:
                raise SpecSyntaxError(
                    f"color {color!r} outside 1..{colors}", lineno
                )
            for v in (src, dst):
                if v not in vertices:
                    raise SpecSyntaxError(f"unknown vertex {v!r}", lineno)
            edges[eid] = Edge(id=eid, color=int(color), src=src, dst=dst)

        elif head == "relation":
            if len(args) != 5 or args[2] != "=":
                raise SpecSyntaxError(
                    "relation syntax: relation <e> <f> = <f2> <e2>", lineno
                )
            side1, side2 = (args[0], args[1]), (args[3], args[4])
            for eid in (*side1, *side2):
                if eid not in edges:
                    raise SpecSyntaxError(f"unknown edge {eid!r}", lineno)
            c1 = tuple(edges[x].color for x in side1)
            c2 = tuple(edges[x].color for x in side2)
            if c1[0] == c1[1]:
                raise SpecSyntaxError("relation sides must mix two colors", lineno)
            if c2 != (c1[1], c1[0]):
                raise SpecSyntaxError(
                    "the two sides must carry opposite color orders", lineno
                )
            for side in (side1, side2):
                left, right = (edges[x] for x in side)
                if left.src != right.dst:
                    raise SpecSyntaxError(
                        f"side {' '.join(side)} is not composable", lineno
                    )
            s1, s2 = edges[side1[1]].src, edges[side2[1]].src
            r1, r2 = edges[side1[0]].dst, edges[side2[0]].dst
            if (s1, r1) != (s2, r2):
                raise SpecSyntaxError("relation sides have different endpoints", lineno)
            lhs, rhs = (side1, side2) if c1[0] < c1[1] else (side2, side1)
            squares.append(CommutationSquare(lhs=lhs, rhs=rhs))

        else:
            raise SpecSyntaxError(f"unknown directive {head!r}", lineno)

    if colors is None:
        raise SpecSyntaxError("missing colors declaration")
    if not vertices:
        raise SpecSyntaxError("missing vertex declaration")
    return KGraph(k=colors, vertices=vertices, edges=edges.values(), squares=squares)


def serialize(g: KGraph) -> str:
    """Emit a spec that parses back to the same graph."""
    lines = [f"colors {g.k}", "vertex " + " ".join(g.vertices)]
    for e in sorted(g.edges, key=lambda e: (e.color, e.id)):
        lines.append(f"edge {e.id} : {e.color} {e.src} -> {e.dst}")
    for sq in sorted(g.squares, key=lambda s: s.lhs):
        lines.append(
            f"relation {sq.rhs[0]} {sq.rhs[1]} = {sq.lhs[0]} {sq.lhs[1]}"
        )
    return "\n".join(lines) + "\n"
