"""Dimension bookkeeping and linear Schubert conditions on P^n."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .trees import StableTree, codimension


class UnstableError(ValueError):
    pass


@dataclass(frozen=True)
class ConditionMultiset:
    """Codimensions of general linear subspaces of P^n, sorted descending."""

    ambient_n: int
    codims: Tuple[int, ...]

    def __init__(self, ambient_n: int, codims: Iterable[int]):
        codims = tuple(sorted((int(c) for c in codims), reverse=True))
        if ambient_n < 0:
            raise ValueError("ambient dimension must be non-negative")
        for c in codims:
            if not 0 <= c <= ambient_n:
                raise ValueError(f"codimension {c} outside 0..{ambient_n}")
        object.__setattr__(self, "ambient_n", ambient_n)
        object.__setattr__(self, "codims", codims)

    @classmethod
    def from_counts(cls, n: int, a: Sequence[int], start: int = 2) -> "ConditionMultiset":
        """``a[i]`` conditions of codimension ``start + i``."""
        return cls(n, [start + i for i, k in enumerate(a) for _ in range(k)])

    @classmethod
    def parse(cls, n: int, spec: str) -> "ConditionMultiset":
        return cls(n, parse_condition_spec(spec))

    def __len__(self) -> int:
        return len(self.codims)

    def __iter__(self):
        return iter(self.codims)

    @property
    def total(self) -> int:
        return sum(self.codims)

    def counts(self) -> List[int]:
        """``[m_0, ..., m_n]``: number of conditions of each codimension."""
        out = [0] * (self.ambient_n + 1)
        for c in self.codims:
            out[c] += 1
        return out


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_condition_spec(spec: str) -> List[int]:
    """Parse ``"2^4,3^2,4"`` into ``[2, 2, 2, 2, 3, 3, 4]``."""
    if not spec or spec != spec.strip() or any(ch.isspace() for ch in spec):
        raise ValueError(f"malformed condition spec {spec!r}")
    out: List[int] = []
    for token in spec.split(","):
        match = _TOKEN.match(token)
        if not match:
            raise ValueError(f"malformed condition token {token!r} in {spec!r}")
        codim, times = int(match.group(1)), int(match.group(2) or 1)
        out.extend([codim] * times)
    return out


def format_condition_spec(codims: Iterable[int]) -> str:
    codims = sorted(codims, reverse=True)
    parts = []
    for c in sorted(set(codims), reverse=True):
        k = codims.count(c)
        parts.append(f"{c}^{k}" if k > 1 else str(c))
    return ",".join(parts)


def moduli_dim(n: int, d: int, m: int) -> int:
    """Dimension of the space of m-pointed contact stable maps of degree d to P^n."""
    if d < 0 or m < 0:
        raise ValueError("degree and number of points must be non-negative")
    if d == 0:
        if m < 3:
            raise UnstableError(f"no stable maps of degree 0 with {m} marked points")
        return n + m - 3
    return d * (n - 1) + n + m - 2


def stratum_dim(n: int, tree: StableTree) -> int:
    """Dimension of the contact stratum of ``tree``."""
    return moduli_dim(n, tree.d, tree.m) - codimension(tree)


def degree_zero_integral(n: int, conditions: ConditionMultiset | Sequence[int]) -> int:
    """Integral of evaluation pullbacks over constant maps: H^sum is a point iff sum = n."""
    codims = list(conditions)
    if len(codims) != 3:
        return 0
    return 1 if sum(codims) == n else 0


def diagonal_split(n: int) -> List[Tuple[int, int]]:
    """Kunneth components ``(n - j, j)`` of the diagonal class of P^n x P^n."""
    return [(n - j, j) for j in range(n + 1)]
