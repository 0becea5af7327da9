"""The two-reflection criterion for Cohen-Macaulayness over every field.

A permutation is a 2-reflection when its fixed subspace has codimension
at most 2: the identity, transpositions, double transpositions, and
3-cycles.  The invariant ring k[x]^G is Cohen-Macaulay for every
coefficient field exactly when G is generated by its 2-reflections.
When it is not, the primes dividing the index of the 2-reflection
subgroup N are the candidate bad primes: outside them Hochster-Eagon
applies to the G/N action on the (Cohen-Macaulay) ring k[x]^N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .permgroup import (
    InternalConsistencyError,
    PermutationGroup,
    cycle_type,
    format_cycles,
    is_transitive,
)

TWO_REFLECTION_CYCLE_TYPES = {(), (2,), (2, 2), (3,)}


def is_two_reflection(g) -> bool:
    """True for the identity, transpositions, double transpositions, 3-cycles."""
    return cycle_type(g) in TWO_REFLECTION_CYCLE_TYPES


def two_reflection_subgroup(G: PermutationGroup) -> PermutationGroup:
    """The subgroup N generated by all 2-reflections contained in G.

    N is normal in G because the cycle type (hence 2-reflection-ness) is
    preserved by conjugation; this is asserted on the generators.
    """
    reflections = [g for g in G.elements if not g.is_identity() and is_two_reflection(g)]
    # Incremental closure: most reflections lie in the span of the ones
    # already taken, so skip them instead of feeding all |N| x |refl|
    # products to the closure.  The closure stays inside G, so G.order
    # is a safe cap.
    gens: list = []
    N = PermutationGroup.trivial(G.degree)
    for g in reflections:
        if g not in N:
            gens.append(g)
            N = PermutationGroup.from_generators(G.degree, tuple(gens), cap=G.order)
    for h in G.generators:
        hinv = h.inverse()
        for g in N.generators:
            if h * g * hinv not in N:
                raise InternalConsistencyError("2-reflection subgroup is not normal")
    return N


def prime_divisors(m: int) -> tuple[int, ...]:
    """Distinct prime divisors by trial division, ascending."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class ReflectionReport:
    """Verdict of the generated-by-2-reflections test, with N and [G:N]."""

    group: PermutationGroup
    n_subgroup: PermutationGroup
    index: int
    cm_all_fields: bool
    candidate_primes: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "order": self.group.order,
            "n_order": self.n_subgroup.order,
            "index": self.index,
            "cm_all_fields": self.cm_all_fields,
            "candidate_primes": list(self.candidate_primes),
        }


def analyze(G: PermutationGroup) -> ReflectionReport:
    """Decide whether k[x]^G is Cohen-Macaulay over every field.

    The verdict is N = G; the candidate bad primes are the prime
    divisors of [G:N] (empty exactly in the Cohen-Macaulay case).
    """
    N = two_reflection_subgroup(G)
    if G.order % N.order != 0:
        raise InternalConsistencyError("subgroup order does not divide group order")
    index = G.order // N.order
    return ReflectionReport(
        group=G,
        n_subgroup=N,
        index=index,
        cm_all_fields=(index == 1),
        candidate_primes=prime_divisors(index),
    )


@dataclass(frozen=True)
class HuffmanClass:
    """Isomorphism class of a transitive group generated by 2-reflections.

    Tags follow the 1979 Huffman classification: the full symmetric
    group, S_2 wreath S_m, the alternating group, and the four
    double-transposition families (D_5 on 5 points, A_5 on 6 points,
    GL(3,2) on 7 points, AGL(3,2) on 8 points, and the alternating
    subgroup of S_2 wreath S_m on 2m points).
    """

    tag: str
    parameter: int

    def to_json(self) -> dict:
        return {"tag": self.tag, "parameter": self.parameter}


_DOUBLE_TRANSPOSITION_TABLE = {
    (5, 10): "Dihedral5",
    (6, 60): "A5onSix",
    (7, 168): "GL32onSeven",
    (8, 1344): "AGL32onEight",
}


class NotTwoReflectionGroupError(ValueError):
    """The classifier requires a transitive group generated by 2-reflections."""


def classify_transitive_reflection_group(G: PermutationGroup) -> HuffmanClass:
    """Classify a transitive 2-reflection-generated group up to isomorphism.

    Case order: transpositions present and transitive (S_n); present but
    intransitive (S_2 wr S_m); 3-cycle without transpositions (A_n);
    otherwise double transpositions only, resolved by the finite
    (n, |G|) table and the wreath-alternating order formula.
    """
    n = G.degree
    if not is_transitive(G):
        raise NotTwoReflectionGroupError("group is not transitive")
    N = two_reflection_subgroup(G)
    if N != G:
        raise NotTwoReflectionGroupError("group is not generated by its 2-reflections")
    if n == 1:
        return HuffmanClass("FullSymmetric", 1)

    transpositions = [g for g in G.elements if cycle_type(g) == (2,)]
    if transpositions:
        T = PermutationGroup.from_generators(n, tuple(transpositions), cap=G.order)
        if is_transitive(T):
            if G.order != math.factorial(n):
                raise InternalConsistencyError(
                    f"transitive transpositions but |G|={G.order} != {n}!")
            return HuffmanClass("FullSymmetric", n)
        m, rem = divmod(n, 2)
        if rem or G.order != 2**m * math.factorial(m):
            raise InternalConsistencyError(
                f"intransitive transpositions but (n,|G|)=({n},{G.order}) "
                "does not match a wreath product S_2 wr S_m")
        return HuffmanClass("WreathS2Sm", m)

    if any(cycle_type(g) == (3,) for g in G.elements):
        if G.order != math.factorial(n) // 2:
            raise InternalConsistencyError(
                f"3-cycles without transpositions but |G|={G.order} != {n}!/2")
        return HuffmanClass("Alternating", n)

    tag = _DOUBLE_TRANSPOSITION_TABLE.get((n, G.order))
    if tag is not None:
        return HuffmanClass(tag, n)
    m, rem = divmod(n, 2)
    if rem == 0 and G.order == 2 ** (m - 1) * math.factorial(m):
        return HuffmanClass("AlternatingWreath", m)
    raise InternalConsistencyError(
        f"(n,|G|)=({n},{G.order}) matches no class of transitive "
        "2-reflection-generated groups")


def describe_group(G: PermutationGroup) -> str:
    gens = ", ".join(format_cycles(g) for g in G.generators) or "()"
    return f"degree {G.degree}, order {G.order}, generators {gens}"
