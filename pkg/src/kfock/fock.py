"""Truncated Fock space over a k-graph and exact sparse operator checks.

The basis is every canonical path of grading at most N; creation operators
act by composition, with images beyond the truncation dropped.  Identities
between words of the generators therefore hold exactly (integer arithmetic)
after compressing to the interior block {delta <= N - g}, where g bounds the
grading of the words involved.  Floating point enters only through scalar
coefficients (Cesaro weights, user combinations).
"""

import numpy as np
import scipy.io
import scipy.sparse as sp

from .errors import DomainError, UnsupportedGraphError
from .kgraph import KGraph, Path, degree_vectors

__all__ = [
    "TruncatedFock",
    "SparseOperator",
    "left_op",
    "right_op",
    "word_op",
    "identity_op",
    "grading_projection",
    "fourier_coefficient",
    "fourier_series",
    "cesaro",
    "diagonal_part",
    "commutant_residual",
    "partial_isometry_residual",
    "same_degree_range_conflicts",
    "orthogonal_isometries",
    "verify_cycle_blocks",
    "transpose_pairing",
    "write_matrix_market",
    "write_basis_manifest",
]


class TruncatedFock:
    """Ordered orthonormal basis {xi_lambda : delta(lambda) <= N}.

    The basis is sorted by grading, then degree (lexicographic), then word,
    so matrices are reproducible across runs.  Construction assumes the graph
    has been validated.
    """

    def __init__(self, graph: KGraph, trunc: int):
        if trunc < 0:
            raise DomainError("truncation grading must be >= 0")
        self.graph = graph
        self.trunc = int(trunc)
        basis = []
        for t in range(self.trunc + 1):
            for n in degree_vectors(graph.k, t):
                basis.extend(graph.paths_of_degree(n, max_grading=self.trunc))
        basis.sort(key=Path.sort_key)
        self.basis = tuple(basis)
        self._index = {p: i for i, p in enumerate(basis)}
        self.deltas = np.array([p.delta for p in basis], dtype=np.int64)
        self._by_grade = {
            t: np.flatnonzero(self.deltas == t) for t in range(self.trunc + 1)
        }
        self._edge_ops = {}
        self._word_ops = {}
        self._links = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index_of(self, path: Path) -> int:
        try:
            return self._index[path]
        except KeyError:
            raise DomainError(f"{path!r} is not a basis path of this space") from None

    def contains(self, path: Path) -> bool:
        return path in self._index

    def grade_indices(self, t: int) -> np.ndarray:
        return self._by_grade.get(t, np.array([], dtype=np.int64))

    def interior_indices(self, margin: int) -> np.ndarray:
        return np.flatnonzero(self.deltas <= self.trunc - margin)

    def generator_paths(self):
        """Identity paths and single edges, the operator generators."""
        g = self.graph
        return tuple(g.identity(v) for v in g.vertices) + tuple(
            g.edge_path(e.id) for e in g.edges
        )

    def as_path(self, what) -> Path:
        """Coerce a Path, edge id, or vertex id into a path of this graph."""
        if isinstance(what, Path):
            for eid in what.word:
                if not self.graph.has_edge(eid):
                    raise DomainError(f"path {what!r} is foreign to this graph")
            return what
        if self.graph.has_edge(what):
            return self.graph.edge_path(what)
        if what in self.graph.vertices:
            return self.graph.identity(what)
        raise DomainError(f"{what!r} is neither a path, an edge id, nor a vertex id")

    def parent_links(self):
        """Per-basis arrays (parent index, leading edge code) for recursions
        along 'strip the leftmost letter'; identities get parent -1.

        Edge codes index ``sorted(edge ids)``.
        """
        if self._links is None:
            g = self.graph
            edge_order = {e.id: c for c, e in enumerate(g.edges)}
            parent = np.full(self.dimension, -1, dtype=np.int64)
            lead = np.full(self.dimension, -1, dtype=np.int64)
            for i, p in enumerate(self.basis):
                if p.word:
                    suffix = g.path_from_word(p.word[1:], base=p.src)
                    parent[i] = self._index[suffix]
                    lead[i] = edge_order[p.word[0]]
            self._links = (parent, lead)
        return self._links

    def __repr__(self):
        return f"TruncatedFock({self.graph!r}, N={self.trunc}, dim={self.dimension})"


class SparseOperator:
    """A sparse matrix over a TruncatedFock basis.

    ``symbol_grading`` bounds the grading of the creation words the operator
    is built from (None when unknown, e.g. after an adjoint); interior-block
    comparisons use it to size the block on which identities must be exact.
    """

    def __init__(self, space: TruncatedFock, matrix, symbol_grading=None):
        self.space = space
        m = sp.csr_matrix(matrix)
        m.eliminate_zeros()
        self.matrix = m
        self.symbol_grading = symbol_grading

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def _same_space(self, other):
        if self.space is not other.space:
            raise DomainError("operators live on different spaces")

    @staticmethod
    def _combine_add(a, b):
        return None if (a is None or b is None) else max(a, b)

    def __matmul__(self, other):
        self._same_space(other)
        g = None
        if self.symbol_grading is not None and other.symbol_grading is not None:
            g = self.symbol_grading + other.symbol_grading
        return SparseOperator(self.space, self.matrix @ other.matrix, g)

    def __add__(self, other):
        self._same_space(other)
        return SparseOperator(self.space, self.matrix + other.matrix,
                              self._combine_add(self.symbol_grading, other.symbol_grading))

    def __sub__(self, other):
        self._same_space(other)
        return SparseOperator(self.space, self.matrix - other.matrix,
                              self._combine_add(self.symbol_grading, other.symbol_grading))

    def __mul__(self, scalar):
        return SparseOperator(self.space, self.matrix * scalar, self.symbol_grading)

    __rmul__ = __mul__

    def adjoint(self):
        return SparseOperator(self.space, self.matrix.conj().T.tocsr(), None)

    def apply(self, vector):
        return self.matrix @ vector

    def compress(self, margin: int):
        """Matrix of the compression to the interior block {delta <= N - margin}."""
        idx = self.space.interior_indices(margin)
        return self.matrix[idx][:, idx]

    def max_abs(self):
        if self.matrix.nnz == 0:
            return 0
        return np.abs(self.matrix.data).max()

    def max_abs_interior(self, margin: int):
        m = self.compress(margin)
        if m.nnz == 0:
            return 0
        return np.abs(m.data).max()

    def __repr__(self):
        return (f"SparseOperator(dim={self.space.dimension}, nnz={self.nnz}, "
                f"g={self.symbol_grading})")


def left_op(fock: TruncatedFock, what) -> SparseOperator:
    """Creation operator xi_mu -> xi_{lambda mu}; overflow images dropped.

    Vertices give the range projections, edges the generating partial
    isometries.  Entries are 0/1 integers.
    """
    lam = fock.as_path(what)
    g = fock.graph
    rows, cols = [], []
    for col, mu in enumerate(fock.basis):
        if lam.src != mu.dst:
            continue
        target = g.compose(lam, mu)
        if target.delta <= fock.trunc:
            rows.append(fock.index_of(target))
            cols.append(col)
    m = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)),
        shape=(fock.dimension, fock.dimension),
    )
    return SparseOperator(fock, m, symbol_grading=lam.delta)


def right_op(fock: TruncatedFock, what) -> SparseOperator:
    """Right creation operator xi_mu -> xi_{mu lambda} when composable."""
    lam = fock.as_path(what)
    g = fock.graph
    rows, cols = [], []
    for col, mu in enumerate(fock.basis):
        if mu.src != lam.dst:
            continue
        target = g.compose(mu, lam)
        if target.delta <= fock.trunc:
            rows.append(fock.index_of(target))
            cols.append(col)
    m = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)),
        shape=(fock.dimension, fock.dimension),
    )
    return SparseOperator(fock, m, symbol_grading=lam.delta)


def identity_op(fock: TruncatedFock) -> SparseOperator:
    return SparseOperator(fock, sp.identity(fock.dimension, dtype=np.int64, format="csr"),
                          symbol_grading=0)


def grading_projection(fock: TruncatedFock, t: int) -> SparseOperator:
    """E_t: the diagonal projection onto the grade-t slice of the basis."""
    diag = np.zeros(fock.dimension, dtype=np.int64)
    diag[fock.grade_indices(t)] = 1
    return SparseOperator(fock, sp.diags(diag, format="csr", dtype=np.int64),
                          symbol_grading=0)


def _edge_op_cached(fock: TruncatedFock, eid: str) -> SparseOperator:
    op = fock._edge_ops.get(eid)
    if op is None:
        op = left_op(fock, eid)
        fock._edge_ops[eid] = op
    return op


def word_op(fock: TruncatedFock, word, base=None) -> SparseOperator:
    """Product of edge creation operators along a word (leftmost applied last).

    Differs from ``left_op`` of the composed path only by extra truncation
    loss near the boundary.
    """
    word = tuple(word)
    if not word:
        if base is None:
            raise DomainError("empty word needs a base vertex")
        return left_op(fock, fock.graph.identity(base))
    cached = fock._word_ops.get(word)
    if cached is not None:
        return cached
    op = _edge_op_cached(fock, word[-1])
    for eid in reversed(word[:-1]):
        op = _edge_op_cached(fock, eid) @ op
    fock._word_ops[word] = op
    return op


def fourier_coefficient(op: SparseOperator, path: Path):
    """<A xi_{s(path)}, xi_path>: the coefficient of the path in the symbol."""
    fock = op.space
    row = fock.index_of(path)
    col = fock.index_of(fock.graph.identity(path.src))
    return op.matrix[row, col]


def fourier_series(op: SparseOperator) -> dict:
    """All nonzero coefficients a_lambda = <A xi_{s(lambda)}, xi_lambda>."""
    fock = op.space
    out = {}
    mat = op.matrix.tocsc()
    for v in fock.graph.vertices:
        col = fock.index_of(fock.graph.identity(v))
        start, end = mat.indptr[col], mat.indptr[col + 1]
        for row, val in zip(mat.indices[start:end], mat.data[start:end]):
            path = fock.basis[row]
            if path.src == v:
                out[path] = val
    return out


def diagonal_part(op: SparseOperator, m: int) -> SparseOperator:
    """Phi_m(A) = sum_j E_j A E_{j+m}: keep entries moving grade j+m -> j."""
    fock = op.space
    coo = op.matrix.tocoo()
    keep = (fock.deltas[coo.col] - fock.deltas[coo.row]) == m
    mat = sp.csr_matrix(
        (coo.data[keep], (coo.row[keep], coo.col[keep])),
        shape=op.matrix.shape,
    )
    return SparseOperator(fock, mat, op.symbol_grading)


def cesaro(op: SparseOperator, n: int) -> SparseOperator:
    """Weighted partial sum sum_{delta(lambda) < n} (1 - delta/n) a_lambda L_lambda,
    rebuilt from the operator's Fourier coefficients."""
    if n < 1:
        raise DomainError("Cesaro order must be >= 1")
    fock = op.space
    acc = sp.csr_matrix((fock.dimension, fock.dimension), dtype=np.complex128)
    top = 0
    for path, a in fourier_series(op).items():
        d = path.delta
        if d >= n or a == 0:
            continue
        weight = 1.0 - d / n
        acc = acc + (weight * complex(a)) * left_op(fock, path).matrix
        top = max(top, d)
    return SparseOperator(fock, acc, symbol_grading=top)


# -- exact structural checks ---------------------------------------------------


def commutant_residual(fock: TruncatedFock):
    """Largest interior-block entry of L_a R_b - R_b L_a over all generator
    pairs; the contract for a valid graph is exactly 0."""
    worst = 0
    gens = fock.generator_paths()
    lefts = [(p, left_op(fock, p)) for p in gens]
    rights = [(p, right_op(fock, p)) for p in gens]
    for lp, lo in lefts:
        for rp, ro in rights:
            diff = lo @ ro - ro @ lo
            worst = max(worst, diff.max_abs_interior(lp.delta + rp.delta))
    return worst


def partial_isometry_residual(fock: TruncatedFock):
    """Max interior residual of L_e* L_e = L_{s(e)} over all edges; exact 0
    on a valid graph."""
    worst = 0
    for e in fock.graph.edges:
        le = _edge_op_cached(fock, e.id)
        proj = left_op(fock, fock.graph.identity(e.src))
        diff = le.adjoint() @ le - proj
        worst = max(worst, diff.max_abs_interior(1))
    return worst


def same_degree_range_conflicts(fock: TruncatedFock, max_grading=None):
    """Pairs (lambda != mu, same degree) with non-orthogonal ranges.

    Each creation operator has at most one entry per column, so
    L_lambda* L_mu != 0 exactly when some basis vector lies in both ranges;
    scanning range membership once per degree is the same check as forming
    every product.
    """
    cap = fock.trunc if max_grading is None else min(max_grading, fock.trunc)
    conflicts = []
    for t in range(cap + 1):
        for n in degree_vectors(fock.graph.k, t):
            paths = fock.graph.paths_of_degree(n, max_grading=cap)
            if len(paths) < 2:
                continue
            owner = {}
            for p in paths:
                rows = left_op(fock, p).matrix.tocoo().row
                for r in rows:
                    prev = owner.setdefault(int(r), p)
                    if prev != p:
                        conflicts.append((prev, p, fock.basis[int(r)]))
    return conflicts


def orthogonal_isometries(g: KGraph, fock: TruncatedFock, witness=None):
    """Two word combinations U, V with U*V = 0 on the whole truncation and
    U*U the identity on the interior block, built from a double pure cycle.

    Vertex w_i (sorted order, 1-based) contributes cycle exponents 2i-1 to U
    and 2i to V; access paths are the witness's shortest paths.
    """
    from .structure import double_pure_cycle_property

    if fock.graph is not g:
        raise DomainError("fock space was built over a different graph")
    if witness is None:
        witness = double_pure_cycle_property(g)
    if witness is None:
        raise UnsupportedGraphError(
            "graph has no double pure cycle reachable from every vertex"
        )
    lam1 = g.normal_form(witness.cycles[0].word)
    lam2 = g.normal_form(witness.cycles[1].word)

    def build(offset):
        terms = []
        for idx, w in enumerate(g.vertices, start=1):
            exponent = 2 * idx - 2 + offset
            access = g.path_from_word(witness.access[w], base=w)
            term = g.compose(g.power(lam1, exponent), g.compose(lam2, access))
            terms.append(term)
        acc = None
        for term in terms:
            piece = left_op(fock, term)
            acc = piece if acc is None else acc + piece
        return acc, terms

    U, terms_u = build(1)
    V, terms_v = build(2)
    margin_u = max(t.delta for t in terms_u)
    orth = (U.adjoint() @ V).max_abs()
    diff = U.adjoint() @ U - identity_op(fock)
    isom = diff.max_abs_interior(margin_u)
    block_dim = len(fock.interior_indices(margin_u))
    report = {
        "vertex": witness.vertex,
        "color": witness.color,
        "cycles": [list(lam1.word), list(lam2.word)],
        "termsU": [list(t.word) for t in terms_u],
        "termsV": [list(t.word) for t in terms_v],
        "orthogonalityResidual": int(orth),
        "isometryResidual": int(isom),
        "isometryMargin": margin_u,
        "isometryBlockDim": block_dim,  # 0 means the identity check is vacuous
        "ok": orth == 0 and isom == 0 and block_dim > 0,
    }
    return U, V, report


def verify_cycle_blocks(n: int, k: int, trunc: int) -> dict:
    """Block structure of the rank-k cycle on n vertices.

    Grouping the basis by range vertex, every color-c generator out of x_i
    occupies exactly block position (i+1, i) mod n, vertex projections are
    block diagonal, and each path from x_j to x_i has grading congruent to
    i - j mod n.
    """
    from .builders import cycle_rank

    g = cycle_rank(n, k)
    fock = TruncatedFock(g, trunc)
    vnum = {v: int(v[1:]) for v in g.vertices}  # x7 -> 7
    row_block = np.array([vnum[p.dst] for p in fock.basis])
    col_block = row_block  # same labeling; columns indexed by the same basis

    gen_blocks = {}
    gen_ok = True
    for e in g.edges:
        op = left_op(fock, e.id)
        coo = op.matrix.tocoo()
        i = vnum[e.src]
        expected = (i % n + 1, i)
        got = {(int(row_block[r]), int(col_block[c])) for r, c in zip(coo.row, coo.col)}
        gen_blocks[e.id] = list(expected)
        if got - {expected}:
            gen_ok = False

    proj_ok = True
    for v in g.vertices:
        coo = left_op(fock, g.identity(v)).matrix.tocoo()
        if np.any(coo.row != coo.col):
            proj_ok = False
        if any(int(row_block[r]) != vnum[v] for r in coo.row):
            proj_ok = False

    congruence_ok = all(
        (p.delta - (vnum[p.dst] - vnum[p.src])) % n == 0 for p in fock.basis
    )
    return {
        "n": n,
        "k": k,
        "trunc": trunc,
        "generatorBlocks": {eid: gen_blocks[eid] for eid in sorted(gen_blocks)},
        "generatorBlocksOk": gen_ok,
        "vertexProjectionsDiagonal": proj_ok,
        "degreeCongruenceOk": congruence_ok,
        "ok": gen_ok and proj_ok and congruence_ok,
    }


def transpose_pairing(fock: TruncatedFock, fock_t: TruncatedFock) -> np.ndarray:
    """perm[i] = index in ``fock_t`` of the reversed path of basis[i].

    The permutation realizes the unitary identifying the two Fock spaces
    under edge reversal.
    """
    g_t = fock_t.graph
    perm = np.empty(fock.dimension, dtype=np.int64)
    for i, p in enumerate(fock.basis):
        q = g_t.normal_form(tuple(reversed(p.word)), base=p.src if p.is_identity else None)
        perm[i] = fock_t.index_of(q)
    return perm


# -- export --------------------------------------------------------------------


def write_matrix_market(op: SparseOperator, path) -> None:
    """Coordinate-format export; entries are written as complex general."""
    scipy.io.mmwrite(str(path), op.matrix.astype(np.complex128))


def write_basis_manifest(fock: TruncatedFock, path) -> None:
    """TSV listing: index, word (vertex id for identities), degree."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("#index\tword\tdegree\n")
        for i, p in enumerate(fock.basis):
            word = " ".join(p.word) if p.word else p.src
            degree = ",".join(str(x) for x in p.degree)
            fh.write(f"{i}\t{word}\t{degree}\n")
