"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the library's own shortcuts: class counting
closes raw words under single square applications in both directions, and
cycle detection enumerates closed walks.  Tests compare library output
against these.
"""

import numpy as np
import pytest

from kfock import builders
from kfock.kgraph import Edge, KGraph, validate


# -- graphs used across the suite ---------------------------------------------


@pytest.fixture(scope="session")
def sv11():
    return builders.single_vertex((1, 1), theta=builders.identity_table((1, 1)))


@pytest.fixture(scope="session")
def sv22_cyclic():
    return builders.single_vertex((2, 2), theta=builders.cyclic_table((2, 2)))


@pytest.fixture(scope="session")
def cycle32():
    return builders.cycle_rank(3, 2)


@pytest.fixture(scope="session")
def chain3():
    return builders.chain(3)


@pytest.fixture(scope="session")
def f2():
    return builders.bouquet(2)


@pytest.fixture(scope="session")
def f2xf3():
    return builders.direct_product([
        builders.from_digraph(builders.bouquet_digraph(2)),
        builders.from_digraph(builders.bouquet_digraph(3)),
    ])


# -- oracles -------------------------------------------------------------------


def raw_words_of_degree(g: KGraph, degree):
    """Every composable raw word with the given color counts, grown by
    prepending edges (the new edge is applied after the current word)."""
    degree = tuple(degree)
    total = sum(degree)
    out = []

    def grow(word, counts):
        if len(word) == total:
            out.append(tuple(word))
            return
        for e in g.edges:
            if counts[e.color - 1] >= degree[e.color - 1]:
                continue
            if word and e.src != g.edge(word[0]).dst:
                continue
            counts[e.color - 1] += 1
            grow([e.id] + word, counts)
            counts[e.color - 1] -= 1

    grow([], [0] * g.k)
    return out


def closure_class_count(g: KGraph, degree) -> int:
    """Number of word classes of one degree under square applications.

    Degree zero is the vertex count: empty words are identities, one per
    base vertex.
    """
    if sum(degree) == 0:
        return len(g.vertices)
    words = raw_words_of_degree(g, degree)
    seen = set()
    classes = 0
    for w in words:
        if w in seen:
            continue
        classes += 1
        queue = [w]
        seen.add(w)
        while queue:
            u = queue.pop()
            for t in range(len(u) - 1):
                for table in (g._anti2norm, g._norm2anti):
                    repl = table.get((u[t], u[t + 1]))
                    if repl is not None:
                        v = u[:t] + repl + u[t + 2:]
                        if v not in seen:
                            seen.add(v)
                            queue.append(v)
    return classes


def nc_oracle(g: KGraph):
    """Edges on no closed walk, by enumerating closed walks.

    Walk length is capped at |vertices|: any cycle through an edge shortcuts
    to one with non-repeating interior vertices, which fits the cap.
    """
    on_cycle = set()
    cap = len(g.vertices)
    for start in g.vertices:
        stack = [(start, ())]
        while stack:
            v, walk = stack.pop()
            if len(walk) >= cap:
                continue
            for e in g.out_edges(v):
                if e.dst == start:
                    on_cycle.update(walk + (e.id,))
                else:
                    stack.append((e.dst, walk + (e.id,)))
    return tuple(sorted(e.id for e in g.edges if e.id not in on_cycle))


# -- seeded random valid k-graphs ---------------------------------------------


def _random_candidate(rng):
    k = int(rng.integers(1, 3))
    nv = int(rng.integers(1, 5))
    vertices = [f"v{i}" for i in range(nv)]
    ne = int(rng.integers(1, 7))
    colors = [int(rng.integers(1, k + 1)) for _ in range(ne)]
    edges = [
        Edge(id=f"e{t}", color=c,
             src=vertices[int(rng.integers(nv))],
             dst=vertices[int(rng.integers(nv))])
        for t, c in enumerate(colors)
    ]
    if k == 1:
        return KGraph(1, vertices, edges)

    g1 = [e for e in edges if e.color == 1]
    g2 = [e for e in edges if e.color == 2]
    e_cells, f_cells = {}, {}
    for a in g1:
        for b in g2:
            if a.src == b.dst:
                e_cells.setdefault((a.dst, b.src), []).append((a.id, b.id))
    for b in g2:
        for a in g1:
            if b.src == a.dst:
                f_cells.setdefault((b.dst, a.src), []).append((b.id, a.id))
    if set(e_cells) != set(f_cells):
        return None
    theta = {}
    for cell in sorted(e_cells):
        es, fs = sorted(e_cells[cell]), sorted(f_cells[cell])
        if len(es) != len(fs):
            return None
        fs = [fs[int(i)] for i in rng.permutation(len(fs))]
        theta.update(dict(zip(es, fs)))
    from kfock.kgraph import CommutationSquare

    squares = [CommutationSquare(lhs=pair, rhs=img) for pair, img in sorted(theta.items())]
    return KGraph(2, vertices, edges, squares)


def random_valid_kgraphs(count: int, seed: int, max_grading: int = 4):
    """Deterministic stream of validated graphs (<=4 vertices, <=6 edges, k<=2)."""
    rng = np.random.default_rng(seed)
    found = []
    attempts = 0
    while len(found) < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("random graph generation stalled")
        g = _random_candidate(rng)
        if g is None:
            continue
        if validate(g, max_grading=max_grading).ok:
            found.append(g)
    return found
