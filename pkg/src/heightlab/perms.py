"""Dense permutations on a handful of points and fully enumerated groups."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Perm:
    """Permutation of {0, ..., n-1}; ``images[i]`` is the image of i.

    Products compose right to left: ``(p * q)(i) == p(q(i))``.
    """

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection on {len(imgs)} points: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: str | Iterable[Sequence[int]], n: int | None = None) -> "Perm":
        """Build from cycle notation, e.g. ``"(0 1)(2 3)"`` or ``[(0, 1), (2, 3)]``."""
        if isinstance(cycles, str):
            cycles = [
                tuple(int(t) for t in re.split(r"[\s,]+", body.strip()) if t)
                for body in re.findall(r"\(([^()]*)\)", cycles)
            ]
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=-1) + 1
        n = top if n is None else n
        if n < top:
            raise ValueError(f"cycle mentions point {top - 1} but n = {n}")
        imgs = list(range(n))
        seen: set[int] = set()
        for c in cycles:
            if seen & set(c) or len(set(c)) != len(c):
                raise ValueError(f"cycles are not disjoint: {cycles}")
            seen |= set(c)
            for k, a in enumerate(c):
                imgs[a] = c[(k + 1) % len(c)]
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError("permutations act on different point sets")
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def conjugate_by(self, g: "Perm") -> "Perm":
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        out, seen = [], set()
        for start in range(self.n):
            if start in seen:
                continue
            cyc, i = [start], self.images[start]
            seen.add(start)
            while i != start:
                cyc.append(i)
                seen.add(i)
                i = self.images[i]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.n - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        cs = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) if cs else "()"


@dataclass(frozen=True)
class GroupTable:
    """Every element of a permutation group, sorted, plus the generators used."""

    n: int
    elements: tuple
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._set

    @property
    def _set(self) -> frozenset:
        cached = self.__dict__.get("_elset")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_elset", cached)
        return cached

    def identity(self) -> Perm:
        return Perm.identity(self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [str(g) for g in self.generators],
            "order": self.order,
        }
