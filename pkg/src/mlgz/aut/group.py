from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..errors import InvariantViolation
from ..linalg import IntMatrix
from ..milnor import MilnorLattice

ENGINES = ("brute", "crt", "signed-power", "d2k")


def canonical_key(a: IntMatrix):
    return a.flat()


@dataclass(frozen=True)
class AutGroup:
    """A finite group of lattice automorphisms, canonically ordered.

    Elements are deduplicated and sorted lexicographically on their
    flattened entries, so two engines agree exactly when their
    ``elements`` tuples are equal.
    """

    elements: tuple[IntMatrix, ...]
    engine: str
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine tag {self.engine!r}")
        uniq = {canonical_key(a): a for a in self.elements}
        object.__setattr__(self, "elements", tuple(uniq[k] for k in sorted(uniq)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a: IntMatrix) -> bool:
        return canonical_key(a) in self._keys

    @cached_property
    def _keys(self) -> frozenset:
        return frozenset(canonical_key(a) for a in self.elements)

    def same_elements(self, other: AutGroup) -> bool:
        return [a.flat() for a in self.elements] == [b.flat() for b in other.elements]

    def verify(self, ml: MilnorLattice) -> None:
        """Check the group axioms and that every element preserves L, M and I."""
        mu = ml.mu
        ident = IntMatrix.identity(mu)
        problems = []
        if ident not in self:
            problems.append("missing identity")
        if -ident not in self:
            problems.append("missing -identity")
        if ml.M not in self:
            problems.append("missing the monodromy")
        for a in self.elements:
            if a.T @ ml.L @ a != ml.L:
                problems.append(f"{a} does not preserve L")
                continue
            # consequences of preserving L, checked rather than assumed
            if a @ ml.M != ml.M @ a:
                problems.append(f"{a} does not commute with M")
            if a.T @ ml.I @ a != ml.I:
                problems.append(f"{a} does not preserve I")
        for a in self.elements:
            for b in self.elements:
                if a @ b not in self:
                    problems.append("not closed under products")
                    break
            else:
                continue
            break
        if problems:
            raise InvariantViolation(f"{self.engine} group: " + "; ".join(problems[:5]))
