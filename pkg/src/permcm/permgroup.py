"""Permutations of {1,..,n}, cycle notation, and closure-generated groups.

Points are 1-based everywhere (input, output, and the internal image
table).  All objects are immutable and hashable; lexicographic order on
the image sequence is the canonical total order used for deterministic
iteration, orbit representatives, and witness tie-breaking.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

DEFAULT_GENERATION_CAP = 200_000


class CycleParseError(ValueError):
    """Malformed cycle expression (bad point, repeat, parens, empty cycle)."""


class DegreeMismatchError(ValueError):
    """Operands act on different point sets."""


class GenerationCapExceeded(RuntimeError):
    """Closure grew past the configured cap; carries the partial count."""

    def __init__(self, cap: int, partial: int):
        super().__init__(f"group generation exceeded cap {cap} (found {partial} elements so far)")
        self.cap = cap
        self.partial = partial


class InternalConsistencyError(RuntimeError):
    """A mathematically guaranteed invariant failed; indicates a bug."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1,..,n}; ``images[i-1]`` is the image of point i."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of [{n}]: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        return self.images[point - 1]

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least point, sorted by that point."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self.apply(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self.apply(j)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __le__(self, other: Permutation) -> bool:
        return self.images <= other.images

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.parse({format_cycles(self)!r}, {self.degree})"


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(1, degree + 1)))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a*b)(i) = a(b(i)): apply b first, then a."""
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degrees {a.degree} and {b.degree} differ")
    return Permutation(tuple(a.images[j - 1] for j in b.images))


_TOKEN = re.compile(r"\d+")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles over points 1..degree.

    Cycles are parenthesized, points separated by whitespace or commas.
    A cycle written as a single unbroken digit run, e.g. ``(1234567)``,
    is read digit-by-digit, which is only available for degree <= 9.
    ``()`` is the identity.  Every point may appear at most once in the
    whole expression; omitted points are fixed.
    """
    if degree < 1:
        raise CycleParseError(f"degree must be positive, got {degree}")
    stripped = text.strip()
    if stripped == "()":
        return identity(degree)
    if not stripped:
        raise CycleParseError("empty cycle expression (use '()' for the identity)")
    if stripped.count("(") != stripped.count(")"):
        raise CycleParseError(f"unbalanced parentheses in {text!r}")

    chunks = re.findall(r"\(([^()]*)\)", stripped)
    leftover = re.sub(r"\([^()]*\)", "", stripped).strip()
    if leftover or not chunks:
        raise CycleParseError(f"not a product of parenthesized cycles: {text!r}")

    images = list(range(1, degree + 1))
    seen: set[int] = set()
    for chunk in chunks:
        tokens = [t for t in re.split(r"[\s,]+", chunk.strip()) if t]
        if not tokens:
            raise CycleParseError(f"empty cycle in {text!r}")
        if any(not t.isdigit() for t in tokens):
            raise CycleParseError(f"non-numeric point in cycle ({chunk})")
        if len(tokens) == 1 and len(tokens[0]) > 1:
            if degree <= 9:
                points = [int(ch) for ch in tokens[0]]
            else:
                points = [int(tokens[0])]
        else:
            points = [int(t) for t in tokens]
        for pt in points:
            if not 1 <= pt <= degree:
                raise CycleParseError(f"point {pt} out of range [1,{degree}]")
            if pt in seen:
                raise CycleParseError(f"point {pt} repeated in {text!r}")
            seen.add(pt)
        for pos, pt in enumerate(points):
            images[pt - 1] = points[(pos + 1) % len(points)]
    return Permutation(tuple(images))


def format_cycles(g: Permutation) -> str:
    """Inverse of parse_cycles; the identity prints as ``()``."""
    cycs = g.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(p) for p in cyc) + ")" for cyc in cycs)


def cycle_type(g: Permutation) -> tuple[int, ...]:
    """Sorted multiset of nontrivial cycle lengths (fixed points omitted)."""
    return tuple(sorted(len(c) for c in g.cycles()))


def element_order(g: Permutation) -> int:
    """Least m >= 1 with g^m = id; the lcm of the cycle lengths."""
    return reduce(math.lcm, (len(c) for c in g.cycles()), 1)


@dataclass(frozen=True)
class OrbitPartition:
    """A set partition of {1,..,degree} in canonical form.

    Blocks are sorted internally and listed by least element, so equal
    partitions compare equal and tuple order is a canonical total order.
    """

    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(degree: int, blocks) -> OrbitPartition:
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        seen = [pt for b in canon for pt in b]
        if sorted(seen) != list(range(1, degree + 1)):
            raise ValueError(f"blocks do not partition [{degree}]: {blocks}")
        return OrbitPartition(degree, canon)

    def block_index_of(self, point: int) -> int:
        for i, b in enumerate(self.blocks):
            if point in b:
                return i
        raise ValueError(f"point {point} out of range")

    def block_map(self) -> dict[int, int]:
        """point -> index of the block containing it."""
        out = {}
        for i, b in enumerate(self.blocks):
            for pt in b:
                out[pt] = i
        return out

    def num_blocks(self) -> int:
        return len(self.blocks)

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        return "".join("{" + ",".join(str(p) for p in b) + "}" for b in self.blocks)


def orbit_partition(g: Permutation) -> OrbitPartition:
    """The partition of {1,..,n} into the orbits of g (fixed points are singletons)."""
    return OrbitPartition(g.degree, tuple(sorted(
        (tuple(sorted(c)) for c in g.cycles(include_fixed=True)), key=lambda b: b[0])))


def generate(generators, cap: int = DEFAULT_GENERATION_CAP, degree: int | None = None) -> list[Permutation]:
    """Close a generator list under composition; returns the sorted element list.

    The closure always contains the identity.  An empty generator list
    yields the trivial group (degree must then be given).  Raises
    GenerationCapExceeded if more than ``cap`` elements appear.
    """
    gens = list(generators)
    if not gens:
        if degree is None:
            raise ValueError("degree is required when the generator list is empty")
        return [identity(degree)]
    n = gens[0].degree
    if degree is not None and degree != n:
        raise DegreeMismatchError(f"declared degree {degree} but generators have degree {n}")
    if any(g.degree != n for g in gens):
        raise DegreeMismatchError("generators have mixed degrees")

    elements = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                prod = h * g
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
                    if len(elements) > cap:
                        raise GenerationCapExceeded(cap, len(elements))
        frontier = new
    return sorted(elements)


class PermutationGroup:
    """A finite permutation group with its element set materialized."""

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self._element_set = frozenset(self.elements)
        if identity(degree) not in self._element_set:
            raise ValueError("element set must contain the identity")
        for g in self.generators:
            if g not in self._element_set:
                raise ValueError(f"generator {g} not in element set")

    @staticmethod
    def from_generators(degree: int, generators,
                        cap: int = DEFAULT_GENERATION_CAP) -> PermutationGroup:
        gens = tuple(generators)
        elements = generate(gens, cap=cap, degree=degree)
        return PermutationGroup(degree, gens, elements)

    @staticmethod
    def trivial(degree: int) -> PermutationGroup:
        return PermutationGroup(degree, (), [identity(degree)])

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PermutationGroup)
                and self.degree == other.degree
                and self._element_set == other._element_set)

    def __hash__(self) -> int:
        return hash((self.degree, self._element_set))

    def __repr__(self) -> str:
        gens = ",".join(format_cycles(g) for g in self.generators) or "()"
        return f"<PermutationGroup degree={self.degree} order={self.order} gens={gens}>"

    def subgroup(self, elements, check_closed: bool = False) -> PermutationGroup:
        """Wrap a subset of this group as a group.

        Callers pass sets that are closed by construction (stabilizers,
        reflection subgroups); set check_closed to verify anyway.
        """
        elts = sorted(set(elements) | {identity(self.degree)})
        for g in elts:
            if g not in self._element_set:
                raise ValueError(f"{g} is not an element of the ambient group")
        sub = PermutationGroup(self.degree, tuple(g for g in elts if not g.is_identity()), elts)
        if check_closed:
            for a in elts:
                for b in elts:
                    if a * b not in sub._element_set:
                        raise ValueError("element set is not closed under composition")
        return sub


def is_transitive(G: PermutationGroup) -> bool:
    """True iff the orbit of point 1 under G is all of {1,..,n}."""
    orbit = {1}
    frontier = [1]
    while frontier:
        new = []
        for pt in frontier:
            for g in G.generators:
                img = g.apply(pt)
                if img not in orbit:
                    orbit.add(img)
                    new.append(img)
        frontier = new
    return len(orbit) == G.degree
