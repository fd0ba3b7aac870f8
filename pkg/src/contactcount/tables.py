"""Published tables of irreducible contact curve counts, and their recomputation.

The expected values below are copied verbatim from the published tables
(P^3: degrees 3..5; P^5: conics).  Rows are keyed by ``(d, a)`` with
``a = (a_2, ..., a_n)``.
"""
from __future__ import annotations

from typing import Dict, Iterator, List, Tuple

from .classes import moduli_dim

Row = Tuple[int, Tuple[int, ...]]

PUBLISHED_P3: Dict[Row, int] = {
    (3, (7, 0)): 1080,
    (3, (5, 1)): 132,
    (3, (3, 2)): 18,
    (3, (1, 3)): 3,
    (4, (9, 0)): 145664,
    (4, (7, 1)): 12800,
    (4, (5, 2)): 1216,
    (4, (3, 3)): 128,
    (4, (1, 4)): 16,
    (5, (11, 0)): 65619360,
    (5, (9, 1)): 4501008,
    (5, (7, 2)): 328824,
    (5, (5, 3)): 25884,
    (5, (3, 4)): 2250,
    (5, (1, 5)): 225,
}

PUBLISHED_P5_CONICS: Dict[Row, int] = {
    (2, (11, 0, 0, 0)): 27184,
    (2, (9, 1, 0, 0)): 7554,
    (2, (8, 0, 1, 0)): 1262,
    (2, (7, 2, 0, 0)): 2112,
    (2, (7, 0, 0, 1)): 432,
    (2, (6, 1, 1, 0)): 355,
    (2, (5, 3, 0, 0)): 594,
    (2, (5, 1, 0, 1)): 119,
    (2, (5, 0, 2, 0)): 58,
    (2, (4, 2, 1, 0)): 100,
    (2, (4, 0, 1, 1)): 30,
    (2, (3, 4, 0, 0)): 168,
    (2, (3, 2, 0, 1)): 22,
    (2, (3, 1, 2, 0)): 16,
    (2, (3, 0, 0, 2)): 8,
    (2, (2, 3, 1, 0)): 28,
    (2, (2, 1, 1, 1)): 3,
    (2, (2, 0, 3, 0)): 2,
    (2, (1, 5, 0, 0)): 48,
    (2, (1, 3, 0, 1)): 2,
    (2, (1, 2, 2, 0)): 4,
    (2, (1, 1, 0, 2)): 0,
    (2, (1, 0, 2, 1)): 0,
    (2, (0, 4, 1, 0)): 8,
    (2, (0, 2, 1, 1)): 0,
    (2, (0, 1, 3, 0)): 0,
    (2, (0, 0, 1, 2)): 0,
}

TABLES = {
    "p3": (3, PUBLISHED_P3),
    "p5conics": (5, PUBLISHED_P5_CONICS),
}


def condition_vectors(n: int, d: int) -> List[Tuple[int, ...]]:
    """All ``(a_2, ..., a_n)`` whose conditions match the dimension, descending."""
    # sum_i (i - 1) a_i = moduli_dim(n, d, 0) + 0
    target = moduli_dim(n, d, 0)
    out: List[Tuple[int, ...]] = []

    def rec(i, left, acc):
        if i > n:
            if left == 0:
                out.append(tuple(acc))
            return
        for k in range(left // (i - 1) + 1):
            rec(i + 1, left - k * (i - 1), acc + [k])

    rec(2, target, [])
    return sorted(out, reverse=True)


def table_rows(which: str, max_d: int) -> Iterator[Row]:
    n, _ = TABLES[which]
    if which == "p5conics":
        degrees = [2]
    else:
        degrees = range(3, max_d + 1)
    for d in degrees:
        for a in condition_vectors(n, d):
            yield d, a
