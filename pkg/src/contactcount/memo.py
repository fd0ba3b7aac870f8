"""Persistent memo of exact integral values.

File layout::

    contactcount-cache v1
    G <n> <d> <c1,c2,...> <num>/<den>
    I <n> <d> <c1,c2,...> <num>/<den>

``G`` records integrals over the whole space of contact stable maps, ``I``
records integrals over the closure of the irreducible locus.  Codimensions
are sorted descending; an empty list is written as ``-``.
"""
from __future__ import annotations

import os
import threading
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, Iterator, Tuple

HEADER = "contactcount-cache v1"
KINDS = ("G", "I")

MemoKey = Tuple[str, int, int, Tuple[int, ...]]


class CacheFormatError(ValueError):
    pass


class CacheConflictError(RuntimeError):
    pass


def memo_key(kind: str, n: int, d: int, codims: Iterable[int]) -> MemoKey:
    if kind not in KINDS:
        raise ValueError(f"unknown memo kind {kind!r}")
    return (kind, n, d, tuple(sorted(codims, reverse=True)))


class MemoStore:
    """Thread-safe map from normalized keys to exact rationals."""

    def __init__(self):
        self._data: Dict[MemoKey, Fraction] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: MemoKey) -> bool:
        return key in self._data

    def get(self, key: MemoKey) -> Fraction | None:
        return self._data.get(key)

    def put(self, key: MemoKey, value) -> Fraction:
        """Store ``value``; re-storing a key must give the identical value."""
        value = Fraction(value)
        with self._lock:
            old = self._data.setdefault(key, value)
        if old != value:
            raise CacheConflictError(f"conflicting values for {key}: {old} vs {value}")
        return old

    def items(self) -> Iterator[Tuple[MemoKey, Fraction]]:
        with self._lock:
            snapshot = sorted(self._data.items())
        return iter(snapshot)

    def dumps(self) -> str:
        lines = [HEADER]
        for (kind, n, d, codims), value in self.items():
            cs = ",".join(map(str, codims)) or "-"
            lines.append(f"{kind} {n} {d} {cs} {value.numerator}/{value.denominator}")
        return "\n".join(lines) + "\n"

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(self.dumps())
        tmp.replace(path)

    @classmethod
    def loads(cls, text: str) -> "MemoStore":
        lines = text.splitlines()
        if not lines or lines[0].strip() != HEADER:
            raise CacheFormatError(f"unsupported cache header {lines[0] if lines else ''!r}")
        store = cls()
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            try:
                kind, n, d, cs, value = parts
                if kind not in KINDS:
                    raise ValueError(kind)
                num, den = value.split("/")
                codims = () if cs == "-" else tuple(int(c) for c in cs.split(","))
                if list(codims) != sorted(codims, reverse=True):
                    raise ValueError("codimensions not sorted")
                store.put((kind, int(n), int(d), codims), Fraction(int(num), int(den)))
            except (ValueError, ZeroDivisionError) as exc:
                raise CacheFormatError(f"line {lineno}: malformed record {line!r}") from exc
        return store

    @classmethod
    def load(cls, path: str | os.PathLike) -> "MemoStore":
        return cls.loads(Path(path).read_text())
