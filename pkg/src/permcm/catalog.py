"""Named fixture groups with their published verdicts.

Where a verdict is stated in the classification literature it is
recorded here so tests and the command line can check against it:
``certified_primes`` are the bad primes the minimal-partition
construction must find, ``bad_primes`` the full set of bad primes when
known.  ``cm_all_fields`` is the two-reflection criterion's expected
answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .permgroup import PermutationGroup, parse_cycles


@dataclass(frozen=True)
class GroupSpec:
    """A catalogue entry: degree, generator strings, expected verdicts."""

    name: str
    degree: int
    generators: tuple[str, ...]
    note: str = ""
    expected: dict = field(default_factory=dict)

    def build(self, cap: int = 200_000) -> PermutationGroup:
        gens = tuple(parse_cycles(text, self.degree) for text in self.generators)
        return PermutationGroup.from_generators(self.degree, gens, cap=cap)

    def to_json(self, order: int | None = None) -> dict:
        out = {
            "name": self.name,
            "degree": self.degree,
            "generators": list(self.generators),
            "note": self.note,
            "expected": {k: (list(v) if isinstance(v, tuple) else v)
                         for k, v in sorted(self.expected.items())},
        }
        if order is not None:
            out["order"] = order
        return out


def _consecutive_3cycles(n: int) -> tuple[str, ...]:
    return tuple(f"({i} {i + 1} {i + 2})" for i in range(1, n - 1))


def _spec(name, degree, generators, note="", **expected) -> GroupSpec:
    return GroupSpec(name, degree, tuple(generators), note, expected)


def _build_catalog() -> dict[str, GroupSpec]:
    entries: list[GroupSpec] = []

    for n in range(2, 8):
        entries.append(_spec(
            f"S{n}", n, ["(1 2)"] + ([f"({' '.join(map(str, range(1, n + 1)))})"] if n > 2 else []),
            note=f"symmetric group on {n} points",
            cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()))
    for n in range(3, 8):
        entries.append(_spec(
            f"A{n}", n, _consecutive_3cycles(n),
            note=f"alternating group on {n} points",
            cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()))
    for m in (2, 3):
        gens = [f"({2 * i - 1} {2 * i})" for i in range(1, m + 1)]
        gens += [f"({2 * i - 1} {2 * i + 1})({2 * i} {2 * i + 2})" for i in range(1, m)]
        entries.append(_spec(
            f"S2wrS{m}", 2 * m, gens,
            note=f"wreath product S2 wr S{m} on {2 * m} points",
            cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()))
    for n in (2, 3):
        gens = [f"({i} {i + 1})({i + n} {i + n + 1})" for i in range(1, n)]
        entries.append(_spec(
            f"DiagS{n}", 2 * n, gens,
            note=f"diagonal S{n} inside S{2 * n}",
            cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()))

    entries += [
        _spec("D5", 5, ["(1 2 3 4 5)", "(2 5)(3 4)"],
              note="dihedral group of the pentagon",
              cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()),
        _spec("D7", 7, ["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"],
              note="dihedral group of the heptagon; both candidates are genuinely bad",
              cm_all_fields=False, candidate_primes=(2, 7), certified_primes=(2,),
              bad_primes=(2, 7)),
        _spec("Frob21", 7, ["(1 2 3 4 5 6 7)", "(1 2 4)(3 6 5)"],
              note="Frobenius group of order 21; candidate 7 is not bad",
              cm_all_fields=False, candidate_primes=(3, 7), certified_primes=(3,),
              bad_primes=(3,)),
        _spec("C4", 4, ["(1 2 3 4)"],
              note="cyclic group of order 4 in its regular action",
              cm_all_fields=False, candidate_primes=(2,), certified_primes=(2,),
              bad_primes=(2,)),
        _spec("C2", 2, ["(1 2)"],
              note="regular C2 (= S2)",
              cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()),
        _spec("C3", 3, ["(1 2 3)"],
              note="regular C3 (= A3)",
              cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()),
        _spec("C5", 5, ["(1 2 3 4 5)"],
              note="regular C5: every prime dividing the order is bad",
              cm_all_fields=False, candidate_primes=(5,), certified_primes=(5,),
              bad_primes=(5,)),
        _spec("C6", 6, ["(1 2 3 4 5 6)"],
              note="regular C6: every prime dividing the order is bad",
              cm_all_fields=False, candidate_primes=(2, 3), certified_primes=(2, 3),
              bad_primes=(2, 3)),
        _spec("C2xC2", 4, ["(1 2)(3 4)", "(1 3)(2 4)"],
              note="regular Klein four group",
              cm_all_fields=True, candidate_primes=(), certified_primes=(), bad_primes=()),
    ]
    catalog = {}
    for spec in entries:
        if spec.name in catalog:
            raise ValueError(f"duplicate catalogue name {spec.name}")
        catalog[spec.name] = spec
    return catalog


CATALOG: dict[str, GroupSpec] = _build_catalog()


def lookup(name: str) -> GroupSpec:
    try:
        return CATALOG[name]
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise KeyError(f"unknown catalogue group {name!r}; known: {known}") from None


def build(name: str) -> PermutationGroup:
    return lookup(name).build()
