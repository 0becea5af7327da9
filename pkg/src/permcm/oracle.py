"""Graded coinvariant oracle: Cohen-Macaulayness of k[x]^G over F_p.

The elementary symmetric polynomials e_1,..,e_n are a homogeneous
system of parameters for the invariant ring of any permutation group in
any characteristic, so k[x]^G is Cohen-Macaulay over F_p exactly when
it is free over F_p[e_1,..,e_n], of rank n!/|G|.  Freeness is probed
through the coinvariant quotient k[x]^G/(e_1,..,e_n): by graded
Nakayama its total dimension is the number of module generators, always
>= n!/|G|, with equality iff free.  So the oracle walks up the degrees,
computing dim (invariants of degree d) modulo sum_i e_i * (invariants
of degree d-i) by exact F_p elimination:

* the moment the running total exceeds n!/|G|, the ring is certifiably
  not Cohen-Macaulay (NotCM, an exact verdict);
* if the total lands on n!/|G| and the last n degrees of the window are
  all zero, the oracle reports CM (certified up to the truncation
  degree D = n(n-1)/2 + n by default);
* anything else is Inconclusive.

All invariant-space bookkeeping happens in the orbit-sum monomial
basis, which is a basis in every characteristic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import linalg
from .permgroup import InternalConsistencyError, PermutationGroup


class OracleTimeout(RuntimeError):
    """The configured deadline expired mid-run."""


def _compositions(d: int, n: int) -> np.ndarray:
    """All exponent vectors of degree d in n variables, as an array."""
    if n == 1:
        return np.array([[d]], dtype=np.int16)
    blocks = []
    for first in range(d, -1, -1):
        rest = _compositions(d - first, n - 1)
        col = np.full((rest.shape[0], 1), first, dtype=np.int16)
        blocks.append(np.hstack([col, rest]))
    return np.vstack(blocks)


@dataclass
class _DegreeData:
    """Monomials of one degree with their orbit bookkeeping."""

    num_orbits: int
    rep_exponents: np.ndarray      # (num_orbits, n), one member per orbit
    sorted_keys: np.ndarray        # packed keys of all monomials, ascending
    sorted_orbit_ids: np.ndarray   # orbit id of each monomial, aligned


class GradedInvariantBasis:
    """Degree-indexed orbit-sum bases of the invariant ring of G.

    Monomials are packed into int64 keys (big-endian base-2^k digits) so
    the group action and orbit canonicalization vectorize; the packing
    bounds the reachable degree, generously for n <= 8.
    """

    def __init__(self, group: PermutationGroup):
        self.group = group
        n = group.degree
        bits = 62 // n
        self._base_bits = bits
        self.max_degree = (1 << bits) - 1
        # Column gather indices realizing each group element on exponent
        # vectors: (g.e)[j] = e[g^{-1}(j)].
        self._gathers = np.array(
            [[g.inverse().apply(j + 1) - 1 for j in range(n)] for g in group.elements],
            dtype=np.int64)
        self._cache: dict[int, _DegreeData] = {}

    def _pack(self, E: np.ndarray) -> np.ndarray:
        keys = np.zeros(len(E), dtype=np.int64)
        for j in range(E.shape[1]):
            keys = (keys << self._base_bits) + E[:, j].astype(np.int64)
        return keys

    def _canonical_keys(self, E: np.ndarray) -> np.ndarray:
        """Least packed key over the orbit of each row."""
        best = None
        for gather in self._gathers:
            keys = self._pack(E[:, gather])
            best = keys if best is None else np.minimum(best, keys)
        return best

    def degree_data(self, d: int) -> _DegreeData:
        if d < 0:
            raise ValueError("degree must be nonnegative")
        if d > self.max_degree:
            raise ValueError(
                f"degree {d} exceeds the packable bound {self.max_degree} "
                f"for n={self.group.degree}")
        data = self._cache.get(d)
        if data is None:
            E = _compositions(d, self.group.degree)
            raw = self._pack(E)
            canon = self._canonical_keys(E)
            uniq, first = np.unique(canon, return_index=True)
            orbit_ids = np.searchsorted(uniq, canon)
            order = np.argsort(raw)
            data = _DegreeData(
                num_orbits=len(uniq),
                rep_exponents=E[first],
                sorted_keys=raw[order],
                sorted_orbit_ids=orbit_ids[order],
            )
            self._cache[d] = data
        return data

    def dimension(self, d: int) -> int:
        """Number of G-orbits of degree-d monomials = dim of the
        degree-d invariants in every characteristic."""
        return self.degree_data(d).num_orbits

    def orbit_representatives(self, d: int) -> list[tuple[int, ...]]:
        return [tuple(int(e) for e in row) for row in self.degree_data(d).rep_exponents]

    def orbits(self, d: int) -> list[list[tuple[int, ...]]]:
        """Materialized monomial orbits of degree d (small degrees only)."""
        E = _compositions(d, self.group.degree)
        canon = self._canonical_keys(E)
        order = np.argsort(canon, kind="stable")
        out: list[list[tuple[int, ...]]] = []
        prev = None
        for idx in order:
            key = canon[idx]
            if key != prev:
                out.append([])
                prev = key
            out[-1].append(tuple(int(e) for e in E[idx]))
        return out

    def evict_below(self, d: int):
        """Drop cached degrees below d (the oracle walks upward)."""
        for key in [k for k in self._cache if k < d]:
            del self._cache[key]


def invariant_dimension(G: PermutationGroup, d: int) -> int:
    """Number of G-orbits of degree-d monomials in n variables."""
    return GradedInvariantBasis(G).dimension(d)


@dataclass(frozen=True)
class OracleVerdict:
    """Result of a coinvariant run (or of the coprime-order shortcut)."""

    prime: int
    rank: int
    dims: tuple[int, ...]
    verdict: str  # "CM" | "NotCM" | "Inconclusive"
    truncation: int
    runtime_ms: int
    shortcut: str | None = field(default=None)

    def total(self) -> int:
        return sum(self.dims)

    def to_json(self) -> dict:
        out = {
            "p": self.prime,
            "rank": self.rank,
            "dims": list(self.dims),
            "verdict": self.verdict,
            "truncation": self.truncation,
            "runtime_ms": self.runtime_ms,
        }
        if self.shortcut:
            out["shortcut"] = self.shortcut
        return out


def _ideal_rank(basis: GradedInvariantBasis, d: int, p: int) -> int:
    """Rank over F_p of sum_i e_i * (invariants of degree d-i) inside
    the degree-d invariants, in orbit-sum coordinates.

    The coefficient of a target orbit-sum in e_i * (source orbit-sum) is
    the number of size-i subsets S with rep - 1_S in the source orbit,
    the same count for any representative.
    """
    n = basis.group.degree
    tgt = basis.degree_data(d)
    reps = tgt.rep_exponents
    row_parts, col_parts = [], []
    col_offset = 0
    for i in range(1, min(n, d) + 1):
        src = basis.degree_data(d - i)
        for subset in combinations(range(n), i):
            sel = reps[:, subset]
            valid = (sel >= 1).all(axis=1)
            if not valid.any():
                continue
            cand = reps[valid].copy()
            cand[:, subset] -= 1
            keys = basis._pack(cand)
            pos = np.searchsorted(src.sorted_keys, keys)
            if not np.array_equal(src.sorted_keys[pos], keys):
                raise InternalConsistencyError("product monomial missing from source degree")
            row_parts.append(np.nonzero(valid)[0])
            col_parts.append(col_offset + src.sorted_orbit_ids[pos])
        col_offset += src.num_orbits
    if not row_parts:
        return 0
    rows = np.concatenate(row_parts)
    cols = np.concatenate(col_parts)
    return linalg.rank_coo(p, tgt.num_orbits, col_offset, rows, cols,
                           np.ones(len(rows), dtype=np.int64))


def coinvariant_dimensions(
    G: PermutationGroup,
    p: int,
    D: int,
    deadline_s: float | None = None,
    progress=None,
) -> OracleVerdict:
    """Graded dimensions of k[x]^G/(e_1,..,e_n) over F_p up to degree D.

    Stops early with NotCM once the running total exceeds n!/|G|; see
    the module docstring for the full verdict rules.
    """
    if not linalg.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if D < 1:
        raise ValueError("truncation degree must be >= 1")
    n = G.degree
    if math.factorial(n) % G.order != 0:
        raise InternalConsistencyError("group order does not divide n!")
    rank_target = math.factorial(n) // G.order

    start = time.monotonic()
    basis = GradedInvariantBasis(G)
    dims: list[int] = []
    cumulative = 0
    verdict = None
    for d in range(D + 1):
        if deadline_s is not None and time.monotonic() - start > deadline_s:
            raise OracleTimeout(f"deadline of {deadline_s:.0f}s expired at degree {d}")
        dim_d = basis.dimension(d) - (_ideal_rank(basis, d, p) if d else 0)
        if dim_d < 0:
            raise InternalConsistencyError("ideal rank exceeds invariant dimension")
        dims.append(dim_d)
        cumulative += dim_d
        if progress is not None:
            progress(d, dim_d, cumulative)
        if cumulative > rank_target:
            verdict = "NotCM"
            break
        basis.evict_below(d - n + 1)
    if verdict is None:
        window_clear = D >= n and all(v == 0 for v in dims[-n:])
        if cumulative == rank_target and window_clear:
            verdict = "CM"
        else:
            verdict = "Inconclusive"
    return OracleVerdict(
        prime=p,
        rank=rank_target,
        dims=tuple(dims),
        verdict=verdict,
        truncation=D,
        runtime_ms=int((time.monotonic() - start) * 1000),
    )


def default_truncation(n: int) -> int:
    """Truncation degree n(n-1)/2 + n: the top degree a free module
    basis can reach, plus an all-zero window of length n."""
    return n * (n - 1) // 2 + n


def cm_verdict(
    G: PermutationGroup,
    p: int,
    D: int | None = None,
    deadline_s: float | None = None,
    progress=None,
) -> OracleVerdict:
    """Convenience verdict: Hochster-Eagon shortcut when p does not
    divide |G|, otherwise a coinvariant run at the default truncation."""
    if not linalg.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p != 0:
        return OracleVerdict(
            prime=p,
            rank=math.factorial(G.degree) // G.order,
            dims=(),
            verdict="CM",
            truncation=0,
            runtime_ms=0,
            shortcut="order-coprime",
        )
    if D is None:
        D = default_truncation(G.degree)
    return coinvariant_dimensions(G, p, D, deadline_s=deadline_s, progress=progress)
