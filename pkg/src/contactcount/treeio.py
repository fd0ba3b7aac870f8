"""Line-based text format for stable trees, plus a DOT rendering.

::

    # a conic broken into two lines
    tree m=3 d=2
    v a 1
    v b 1
    e a b
    l 1 a
    l 2 a
    l 3 b
"""
from __future__ import annotations

import re
from typing import Dict, List

from .trees import StableTree, automorphism_order, codimension, validate


class TreeFormatError(ValueError):
    pass


_HEADER = re.compile(r"^tree\s+m=(\d+)\s+d=(\d+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_tree(text: str) -> StableTree:
    trees = parse_trees(text)
    if len(trees) != 1:
        raise TreeFormatError(f"expected exactly one tree, found {len(trees)}")
    return trees[0]


def parse_trees(text: str) -> List[StableTree]:
    """Parse one or more trees; each starts with a ``tree m=.. d=..`` line."""
    blocks: List[List[tuple]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("tree"):
            blocks.append([(lineno, line)])
        elif not blocks:
            raise TreeFormatError(f"line {lineno}: expected 'tree m=<int> d=<int>' header")
        else:
            blocks[-1].append((lineno, line))
    return [_parse_block(b) for b in blocks]


def _parse_block(lines) -> StableTree:
    lineno, header = lines[0]
    match = _HEADER.match(header)
    if not match:
        raise TreeFormatError(f"line {lineno}: malformed header {header!r}")
    m, d = int(match.group(1)), int(match.group(2))
    degrees: Dict[str, int] = {}
    edges = []
    leaves: Dict[int, str] = {}
    for lineno, line in lines[1:]:
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "v" and len(parts) == 3:
                vid, deg = parts[1], int(parts[2])
                if vid in degrees:
                    raise TreeFormatError(f"line {lineno}: duplicate vertex {vid!r}")
                if deg < 0:
                    raise TreeFormatError(f"line {lineno}: negative degree")
                degrees[vid] = deg
            elif kind == "e" and len(parts) == 3:
                edges.append((lineno, parts[1], parts[2]))
            elif kind == "l" and len(parts) == 3:
                label = int(parts[1])
                if label in leaves:
                    raise TreeFormatError(f"line {lineno}: duplicate label {label}")
                leaves[label] = parts[2]
            else:
                raise TreeFormatError(f"line {lineno}: unknown directive {line!r}")
        except ValueError as exc:
            if isinstance(exc, TreeFormatError):
                raise
            raise TreeFormatError(f"line {lineno}: bad integer in {line!r}") from exc
    for lineno, u, v in edges:
        for x in (u, v):
            if x not in degrees:
                raise TreeFormatError(f"line {lineno}: edge refers to unknown vertex {x!r}")
    for label, v in leaves.items():
        if v not in degrees:
            raise TreeFormatError(f"leaf {label} refers to unknown vertex {v!r}")
    if sorted(leaves) != list(range(1, m + 1)):
        raise TreeFormatError(f"leaf labels must be exactly 1..{m}, got {sorted(leaves)}")
    if sum(degrees.values()) != d:
        raise TreeFormatError(f"vertex degrees sum to {sum(degrees.values())}, header says d={d}")
    return StableTree.build(degrees, [(u, v) for _, u, v in edges], leaves)


def dump_tree(tree: StableTree, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"tree m={tree.m} d={tree.d}")
    for v, k in tree.degrees.items():
        lines.append(f"v {v} {k}")
    for u, v in tree.edge_vertices():
        lines.append(f"e {u} {v}")
    for label, v in sorted(tree.leaf_vertex().items()):
        lines.append(f"l {label} {v}")
    return "\n".join(lines) + "\n"


def describe(tree: StableTree) -> str:
    """Comment line used by the exporter."""
    return f"aut={automorphism_order(tree)} codim={codimension(tree)}"


def to_dot(tree: StableTree, name: str = "tree") -> str:
    """Graphviz rendering: vertices show degree and leaves as ``d {labels}``."""
    if validate(tree):
        raise ValueError("not a stable tree")
    out = [f"graph {name} {{"]
    for v, k in tree.degrees.items():
        leaves = tree.leaves_at(v)
        text = f"{k}" + (" {" + ",".join(map(str, leaves)) + "}" if leaves else "")
        out.append(f'  "{v}" [label="{text}"];')
    for u, v in tree.edge_vertices():
        out.append(f'  "{u}" -- "{v}";')
    out.append("}")
    return "\n".join(out) + "\n"
