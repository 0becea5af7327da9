"""The refinement lattice of set partitions and certified bad primes.

Every g in G determines the partition of {1,..,n} into its orbits.  For
a proper normal subgroup N, the partitions coming from G \\ N that are
refinement-minimal single out inertia data one can read off group
theoretically: the blockwise stabilizer of such a partition maps onto a
subgroup of G/N of prime order p, the witness g has p-power order, and
k[x]^G fails to be Cohen-Macaulay in characteristic p.  That failure is
what a BadPrimeCertificate records, together with everything needed to
recheck it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .permgroup import (
    DegreeMismatchError,
    InternalConsistencyError,
    OrbitPartition,
    Permutation,
    PermutationGroup,
    element_order,
    format_cycles,
    orbit_partition,
)
from .reflections import prime_divisors, two_reflection_subgroup


def refines(pi: OrbitPartition, tau: OrbitPartition) -> bool:
    """True iff every block of pi lies inside some block of tau."""
    if pi.degree != tau.degree:
        raise DegreeMismatchError(f"degrees {pi.degree} and {tau.degree} differ")
    where = tau.block_map()
    return all(all(where[x] == where[b[0]] for x in b[1:]) for b in pi.blocks)


def _check_normal(G: PermutationGroup, N: PermutationGroup):
    for h in G.generators:
        hinv = h.inverse()
        for g in N.generators:
            if h * g * hinv not in N:
                raise ValueError("N is not normal in G")


def minimal_outside_partitions(
    G: PermutationGroup, N: PermutationGroup
) -> list[tuple[OrbitPartition, Permutation]]:
    """Refinement-minimal orbit partitions of elements of G outside N.

    Returns (partition, witness) pairs sorted by partition, one pair per
    minimal partition, the witness being the least element (in image
    order) realizing it.
    """
    if G.degree != N.degree:
        raise DegreeMismatchError("G and N act on different point sets")
    if any(g not in G for g in N.elements):
        raise ValueError("N is not contained in G")
    if N.order == G.order:
        raise ValueError("N = G: no elements outside N")
    _check_normal(G, N)

    witness: dict[OrbitPartition, Permutation] = {}
    for g in G.elements:  # ascending image order, so first hit is least
        if g in N:
            continue
        pi = orbit_partition(g)
        if pi not in witness:
            witness[pi] = g
    parts = list(witness)
    minimal = [
        pi for pi in parts
        if not any(sig != pi and refines(sig, pi) for sig in parts)
    ]
    minimal.sort(key=lambda pi: pi.blocks)
    return [(pi, witness[pi]) for pi in minimal]


def blockwise_stabilizer(G: PermutationGroup, pi: OrbitPartition) -> PermutationGroup:
    """Subgroup of elements mapping each block of pi into itself."""
    if G.degree != pi.degree:
        raise DegreeMismatchError("partition degree differs from group degree")
    where = pi.block_map()
    elems = [
        g for g in G.elements
        if all(where[g.apply(x)] == where[x] for x in range(1, G.degree + 1))
    ]
    return G.subgroup(elems)


def inertia_image_order(G: PermutationGroup, N: PermutationGroup, pi: OrbitPartition) -> int:
    """Order of the image of the blockwise stabilizer of pi in G/N.

    This is the inertia group of the partition's prime ideal (generated
    by the differences x_i - x_j within blocks) for the G/N action on
    k[x]^N, computed without touching any polynomial: the inertia group
    upstairs is exactly the blockwise stabilizer, and passing to G/N
    quotients it by its intersection with N.
    """
    _check_normal(G, N)
    stab = blockwise_stabilizer(G, pi)
    meet = sum(1 for g in stab.elements if g in N)
    if stab.order % meet != 0:
        raise InternalConsistencyError("stabilizer meet does not divide stabilizer")
    return stab.order // meet


@dataclass(frozen=True)
class BadPrimeCertificate:
    """Witnessed proof that char = prime makes k[x]^G non-Cohen-Macaulay.

    The witness g lies outside N with refinement-minimal orbit
    partition; its order is a power of the prime and the inertia image
    in G/N has order exactly the prime.
    """

    prime: int
    witness: Permutation
    partition: OrbitPartition
    inertia_order: int

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "witness": format_cycles(self.witness),
            "partition": self.partition.as_lists(),
            "inertia_order": self.inertia_order,
        }


def certified_bad_primes(G: PermutationGroup) -> list[BadPrimeCertificate]:
    """Certificates for the bad primes reachable from minimal partitions.

    One certificate per prime, ascending, carrying the least witness in
    image order.  Empty exactly when G is generated by 2-reflections.
    Violation of the guaranteed certificate invariants (prime-power
    witness order, prime inertia image) raises InternalConsistencyError.
    """
    N = two_reflection_subgroup(G)
    if N.order == G.order:
        return []
    by_prime: dict[int, BadPrimeCertificate] = {}
    for pi, g in minimal_outside_partitions(G, N):
        primes = prime_divisors(element_order(g))
        if len(primes) != 1:
            raise InternalConsistencyError(
                f"minimal witness {format_cycles(g)} has order "
                f"{element_order(g)}, not a prime power")
        p = primes[0]
        inertia = inertia_image_order(G, N, pi)
        if inertia != p:
            raise InternalConsistencyError(
                f"inertia image has order {inertia}, expected prime {p}")
        if orbit_partition(g) != pi:
            raise InternalConsistencyError("witness does not realize its partition")
        cert = BadPrimeCertificate(prime=p, witness=g, partition=pi, inertia_order=inertia)
        held = by_prime.get(p)
        if held is None or cert.witness < held.witness:
            by_prime[p] = cert
    return [by_prime[p] for p in sorted(by_prime)]
