"""The order complex of the subset lattice, its quotients, and homology.

Delta(n) is the order complex of the nonempty subsets of {1,..,n}: a
(d)-cell is a chain of d+1 nested subsets, and the whole thing is the
barycentric subdivision of an (n-1)-simplex, a ball.  A permutation
group G acts on it preserving the cardinality labels, so the quotient
is a boolean complex: cells are orbits of chains, stored by their least
chain representative.

Cohen-Macaulayness of the quotient's face ring over F_p is decided
topologically: subdivide the quotient into an honest simplicial complex
(flags of the face poset) and check that every face link, the empty
face included, has vanishing reduced homology below its dimension.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import linalg
from .permgroup import (
    DegreeMismatchError,
    InternalConsistencyError,
    PermutationGroup,
)

DELTA_DEGREE_LIMIT = 8
REISNER_WARN_DEGREE = 6


@dataclass(frozen=True)
class SubsetChain:
    """A strictly nested chain of nonempty subsets of {1,..,n}."""

    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        prev: frozenset = frozenset()
        for s in self.subsets:
            cur = frozenset(s)
            if not s or tuple(sorted(s)) != s:
                raise ValueError(f"subsets must be nonempty and sorted: {s}")
            if prev and not (prev < cur):
                raise ValueError(f"chain is not strictly nested: {self.subsets}")
            prev = cur

    @property
    def length(self) -> int:
        return len(self.subsets)

    @property
    def dim(self) -> int:
        return len(self.subsets) - 1

    def labels(self) -> tuple[int, ...]:
        """The cardinality labels; strictly increasing (balancedness)."""
        return tuple(len(s) for s in self.subsets)

    def permuted(self, g) -> SubsetChain:
        return SubsetChain(tuple(tuple(sorted(g.apply(x) for x in s)) for s in self.subsets))

    def delete(self, position: int) -> SubsetChain:
        return SubsetChain(self.subsets[:position] + self.subsets[position + 1:])

    def as_lists(self) -> list[list[int]]:
        return [list(s) for s in self.subsets]

    def __lt__(self, other: SubsetChain) -> bool:
        return self.subsets < other.subsets

    def __str__(self) -> str:
        return "<" + " < ".join("{" + ",".join(map(str, s)) + "}" for s in self.subsets) + ">"


class QuotientComplex:
    """A boolean complex: cells with simplex combinatorics, by dimension.

    ``cells[d]`` lists the d-cells (orbit-representative chains for
    quotients, opaque labels for hand-built complexes) and
    ``faces[d][i]`` gives the codimension-1 faces of cell i as indices
    into ``cells[d-1]``, ordered by deleted chain position.
    """

    def __init__(self, cells, faces, degree=None, group=None):
        self.cells = [list(layer) for layer in cells]
        self.faces = [list(layer) for layer in faces]
        self.degree = degree
        self.group = group
        if len(self.cells) != len(self.faces):
            raise ValueError("cells and faces must cover the same dimensions")
        for d, layer in enumerate(self.faces):
            if len(layer) != len(self.cells[d]):
                raise ValueError(f"face list length mismatch in dimension {d}")
            for i, fl in enumerate(layer):
                if d == 0:
                    if fl != ():
                        raise ValueError("0-cells have no faces")
                    continue
                if len(fl) != d + 1 or len(set(fl)) != d + 1:
                    raise ValueError(
                        f"cell {i} of dimension {d} must have {d + 1} distinct faces")
                if any(not 0 <= j < len(self.cells[d - 1]) for j in fl):
                    raise IndexError(f"face index out of range for cell {i} in dim {d}")

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def cell_counts(self) -> list[int]:
        return [len(layer) for layer in self.cells]

    def num_cells(self) -> int:
        return sum(len(layer) for layer in self.cells)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(layer) for d, layer in enumerate(self.cells))

    def is_pure(self) -> bool:
        """True iff every maximal cell has top dimension."""
        for d in range(self.dim):
            has_coface = [False] * len(self.cells[d])
            for fl in self.faces[d + 1]:
                for j in fl:
                    has_coface[j] = True
            if not all(has_coface):
                return False
        return True

    def face_poset_edges(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        """Covering edges ((d, i), (d-1, j)) of the face poset."""
        out = []
        for d in range(1, len(self.cells)):
            for i, fl in enumerate(self.faces[d]):
                for j in fl:
                    out.append(((d, i), (d - 1, j)))
        return out


def build_delta(n: int, limit: int = DELTA_DEGREE_LIMIT) -> QuotientComplex:
    """The order complex of the nonempty subsets of {1,..,n} (a ball).

    Cells in dimension d are the chains of d+1 nested nonempty subsets;
    there are n! top cells.  Refuses n above ``limit`` (cell counts grow
    like ordered-set-partition numbers).
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n > limit:
        raise ValueError(f"degree {n} exceeds the complex limit {limit}")

    full = (1 << n) - 1
    supersets = {
        m: [m2 for m2 in range(1, full + 1) if m2 != m and m2 & m == m]
        for m in range(1, full + 1)
    }
    chains_by_len: dict[int, list[tuple[int, ...]]] = {}

    def grow(chain: tuple[int, ...]):
        chains_by_len.setdefault(len(chain), []).append(chain)
        for m2 in supersets[chain[-1]]:
            grow(chain + (m2,))

    for m in range(1, full + 1):
        grow((m,))

    def unmask(m: int) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(n) if m >> i & 1)

    cells, faces = [], []
    index_prev: dict[SubsetChain, int] = {}
    for length in range(1, n + 1):
        layer = sorted(SubsetChain(tuple(unmask(m) for m in ch))
                       for ch in chains_by_len.get(length, []))
        index_cur = {c: i for i, c in enumerate(layer)}
        if length == 1:
            faces.append([() for _ in layer])
        else:
            faces.append([tuple(index_prev[c.delete(j)] for j in range(length))
                          for c in layer])
        cells.append(layer)
        index_prev = index_cur

    delta = QuotientComplex(cells, faces, degree=n, group=PermutationGroup.trivial(n))
    if len(delta.cells[-1]) != math.factorial(n):
        raise InternalConsistencyError("top cell count of Delta(n) is not n!")
    return delta


def quotient_by_group(delta: QuotientComplex, G: PermutationGroup) -> QuotientComplex:
    """The quotient boolean complex Delta/G, cells canonicalized per orbit.

    The cardinality labeling makes the action balanced, so orbits of
    chains again have simplex combinatorics.  Top cells number n!/|G|
    because maximal chains have trivial stabilizers.
    """
    if delta.degree is None or G.degree != delta.degree:
        raise DegreeMismatchError("group degree differs from complex degree")
    if delta.group is not None and delta.group.order != 1:
        raise ValueError("can only quotient the full order complex (trivial group)")

    rep_of: dict[SubsetChain, SubsetChain] = {}
    cells, faces = [], []
    index_prev: dict[SubsetChain, int] = {}
    for d, layer in enumerate(delta.cells):
        reps = set()
        for chain in layer:
            if chain in rep_of:
                continue
            orbit = {chain.permuted(g) for g in G.elements}
            rep = min(orbit)
            for member in orbit:
                rep_of[member] = rep
            reps.add(rep)
        layer_q = sorted(reps)
        index_cur = {c: i for i, c in enumerate(layer_q)}
        if d == 0:
            faces.append([() for _ in layer_q])
        else:
            faces.append([tuple(index_prev[rep_of[c.delete(j)]] for j in range(d + 1))
                          for c in layer_q])
        cells.append(layer_q)
        index_prev = index_cur

    qc = QuotientComplex(cells, faces, degree=delta.degree, group=G)
    expected_top = math.factorial(delta.degree) // G.order
    if len(qc.cells[-1]) != expected_top:
        raise InternalConsistencyError(
            f"quotient has {len(qc.cells[-1])} top cells, expected {expected_top}")
    return qc


class SimplicialComplexView:
    """A simplicial complex on integer vertices, grouped by dimension.

    ``simplices[d]`` holds sorted tuples of vertex indices.  Views
    produced by ``barycentric_subdivision`` also carry the face-poset
    order of the source complex (``below[v]`` = strictly smaller poset
    elements), which is what face links are computed from.
    """

    def __init__(self, num_vertices, simplices, vertex_labels=None, below=None):
        self.num_vertices = num_vertices
        self.simplices = [sorted(layer) for layer in simplices]
        while self.simplices and not self.simplices[-1]:
            self.simplices.pop()
        self.vertex_labels = vertex_labels
        self.below = below
        for d, layer in enumerate(self.simplices):
            for s in layer:
                if len(s) != d + 1 or list(s) != sorted(set(s)):
                    raise ValueError(f"bad {d}-simplex {s}")

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def num_simplices(self) -> int:
        return sum(len(layer) for layer in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(layer) for d, layer in enumerate(self.simplices))

    def boundary_matrices(self, p: int) -> list[linalg.PrimeFieldMatrix]:
        """[aug, d_1, .., d_top] over F_p; asserts every composite is zero.

        Simplices are oriented by ascending vertex index; the face
        obtained by deleting position k carries sign (-1)^k.  The 0-th
        matrix is the augmentation (reduced homology).
        """
        if not self.simplices:
            return []
        index = [{s: i for i, s in enumerate(layer)} for layer in self.simplices]
        mats = [linalg.PrimeFieldMatrix.from_triples(
            p, 1, len(self.simplices[0]),
            [(0, i, 1) for i in range(len(self.simplices[0]))])]
        for d in range(1, len(self.simplices)):
            triples = []
            for j, s in enumerate(self.simplices[d]):
                for k in range(d + 1):
                    face = s[:k] + s[k + 1:]
                    triples.append((index[d - 1][face], j, (-1) ** k))
            mats.append(linalg.PrimeFieldMatrix.from_triples(
                p, len(self.simplices[d - 1]), len(self.simplices[d]), triples))
        for d in range(len(mats) - 1):
            if (mats[d] @ mats[d + 1]).nnz != 0:
                raise InternalConsistencyError(f"boundary composite d_{d} d_{d + 1} != 0")
        return mats


def barycentric_subdivision(qc: QuotientComplex) -> SimplicialComplexView:
    """The order complex of the face poset of qc: its simplices are the
    flags of cells, one genuine simplicial complex with the same space."""
    offsets = []
    total = 0
    for layer in qc.cells:
        offsets.append(total)
        total += len(layer)

    labels = [(d, cell) for d, layer in enumerate(qc.cells) for cell in layer]
    below: list[set[int]] = [set() for _ in range(total)]
    for d in range(1, len(qc.cells)):
        for i, fl in enumerate(qc.faces[d]):
            v = offsets[d] + i
            for j in fl:
                u = offsets[d - 1] + j
                below[v].add(u)
                below[v] |= below[u]

    chains_ending: list[list[tuple[int, ...]]] = [[] for _ in range(total)]
    simplices: list[list[tuple[int, ...]]] = []
    for v in range(total):
        mine = [(v,)]
        for u in sorted(below[v]):
            mine.extend(ch + (v,) for ch in chains_ending[u])
        chains_ending[v] = mine
        for ch in mine:
            d = len(ch) - 1
            while len(simplices) <= d:
                simplices.append([])
            simplices[d].append(ch)

    return SimplicialComplexView(total, simplices, vertex_labels=labels,
                                 below=[frozenset(b) for b in below])


def _collapse(simplices: list[list[tuple[int, ...]]]) -> list[list[tuple[int, ...]]]:
    """Greedy elementary collapse: repeatedly delete a free pair.

    A simplex contained in exactly one other simplex (necessarily a
    maximal coface one dimension up, by downward closure) can be
    removed together with that coface without changing the homotopy
    type.  Returns the surviving simplices; deterministic.
    """
    index = [{s: i for i, s in enumerate(layer)} for layer in simplices]
    alive = [[True] * len(layer) for layer in simplices]
    counts = [[0] * len(layer) for layer in simplices]
    cofaces: list[list[list[int]]] = [[[] for _ in layer] for layer in simplices]
    for d in range(1, len(simplices)):
        for j, s in enumerate(simplices[d]):
            for k in range(d + 1):
                i = index[d - 1][s[:k] + s[k + 1:]]
                counts[d - 1][i] += 1
                cofaces[d - 1][i].append(j)

    from collections import deque
    queue = deque((d, i) for d in range(len(simplices))
                  for i in range(len(simplices[d])) if counts[d][i] == 1)

    def drop_faces(d, s):
        if d == 0:
            return
        for k in range(d + 1):
            i = index[d - 1][s[:k] + s[k + 1:]]
            counts[d - 1][i] -= 1
            if alive[d - 1][i] and counts[d - 1][i] == 1:
                queue.append((d - 1, i))

    while queue:
        d, i = queue.popleft()
        if not alive[d][i] or counts[d][i] != 1:
            continue
        j = next(j for j in cofaces[d][i] if alive[d + 1][j])
        alive[d][i] = False
        alive[d + 1][j] = False
        drop_faces(d + 1, simplices[d + 1][j])
        drop_faces(d, simplices[d][i])

    return [[s for i, s in enumerate(layer) if alive[d][i]]
            for d, layer in enumerate(simplices)]


def homology(sc: SimplicialComplexView, p: int, collapse: bool = True) -> list[int]:
    """Reduced Betti numbers over F_p, listed from degree -1 upward.

    ``result[k]`` is the Betti number in degree k-1; the empty complex
    gives [1].  Computed as dim ker - dim im of the boundary matrices,
    after an elementary-collapse pass (homotopy-preserving, so the
    Betti numbers are those of the input; disable with collapse=False).
    """
    if not linalg.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not sc.simplices:
        return [1]
    dim_in = sc.dim
    view = sc
    if collapse:
        core = _collapse(sc.simplices)
        relabel = {}
        for layer in core:
            for s in layer:
                for v in s:
                    relabel.setdefault(v, len(relabel))
        view = SimplicialComplexView(
            len(relabel),
            [[tuple(sorted(relabel[v] for v in s)) for s in layer] for layer in core])
    mats = view.boundary_matrices(p)
    ranks = [linalg.rank(M) for M in mats] + [0]
    betti = [1 - ranks[0]]
    for d in range(len(view.simplices)):
        betti.append(len(view.simplices[d]) - ranks[d] - ranks[d + 1])
    betti.extend(0 for _ in range(dim_in - view.dim))
    return betti


def _link_view(sc: SimplicialComplexView, sigma: tuple[int, ...]) -> SimplicialComplexView:
    """Link of the simplex sigma inside a subdivision view.

    In the order complex of a poset, the link of a flag consists of the
    flags in the set of elements comparable to everything in sigma; the
    induced order is inherited, so chains there are found the same way.
    """
    if not sigma:
        return sc
    members = set(sigma)
    compatible = []
    for v in range(sc.num_vertices):
        if v in members:
            continue
        if all(v in sc.below[a] or a in sc.below[v] for a in sigma):
            compatible.append(v)
    pos = {v: i for i, v in enumerate(compatible)}
    chains_ending: dict[int, list[tuple[int, ...]]] = {}
    simplices: list[list[tuple[int, ...]]] = []
    for v in compatible:
        mine = [(pos[v],)]
        for u in sorted(sc.below[v] & set(chains_ending)):
            mine.extend(ch + (pos[v],) for ch in chains_ending[u])
        chains_ending[v] = mine
        for ch in mine:
            d = len(ch) - 1
            while len(simplices) <= d:
                simplices.append([])
            simplices[d].append(ch)
    labels = None
    if sc.vertex_labels is not None:
        labels = [sc.vertex_labels[v] for v in compatible]
    return SimplicialComplexView(len(compatible), simplices, vertex_labels=labels)


@dataclass(frozen=True)
class ReisnerResult:
    """Outcome of the link-homology vanishing test over one prime."""

    prime: int
    passed: bool
    faces_checked: int
    failing_face: tuple | None = None  # tuple of (cell dim, cell label)
    failing_degree: int | None = None

    def to_json(self) -> dict:
        out: dict = {"pass": self.passed}
        if not self.passed:
            out["failing_face"] = [
                [d, cell.as_lists() if isinstance(cell, SubsetChain) else cell]
                for d, cell in self.failing_face
            ]
            out["failing_degree"] = self.failing_degree
        return out


def reisner_cm_test(qc: QuotientComplex, p: int) -> ReisnerResult:
    """Decide Cohen-Macaulayness of the face ring of qc over F_p.

    Subdivides, then requires vanishing reduced homology below the link
    dimension for the link of every face, the empty face included.  The
    verdict is a homeomorphism invariant, so it transfers from the
    subdivision back to the boolean complex.  Stops at the first failing
    (face, degree) pair, reported in the result.
    """
    if not linalg.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not qc.is_pure():
        raise ValueError("complex is not pure-dimensional")
    if qc.degree is not None and qc.degree >= REISNER_WARN_DEGREE:
        warnings.warn(
            f"link-homology sweep at degree {qc.degree} may take a while",
            stacklevel=2)
    sc = barycentric_subdivision(qc)

    checked = 0
    faces: list[tuple[int, ...]] = [()]
    for layer in sc.simplices:
        faces.extend(layer)
    for sigma in faces:
        link = _link_view(sc, sigma)
        betti = homology(link, p)
        checked += 1
        for pos, b in enumerate(betti):
            degree = pos - 1
            if degree >= link.dim:
                break
            if b != 0:
                face_desc = tuple(sc.vertex_labels[v] for v in sigma)
                return ReisnerResult(p, False, checked,
                                     failing_face=face_desc, failing_degree=degree)
    return ReisnerResult(p, True, checked)
