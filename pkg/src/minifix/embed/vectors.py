"""Atomic tree patterns, characteristic vectors, and their distances.

A q-level atomic pattern is a complete binary tree of height q over the
label alphabet (index 0 is the empty label; it stands for absent
children).  A pattern occurrence is anchored at every node of height
>= q by reading the labels of the complete-binary window below it, so at
q = 1 the occurrence counts are exactly the node label counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .. import _kernels
from ..errors import DimensionMismatch
from ..lang.ast import BNode

_MAX_PATTERNS = 2 ** 63 - 1
_MAX_DENSE = 10 ** 7


class LabelAlphabet:
    """Fixed ordered label set; position 0 is the empty label."""

    def __init__(self, labels: Sequence[str], epsilon: str = "ε"):
        if epsilon in labels:
            raise ValueError("epsilon must not repeat in the label list")
        self.epsilon = epsilon
        self.labels: tuple[str, ...] = (epsilon,) + tuple(labels)
        self._ids = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._ids) != len(self.labels):
            raise ValueError("duplicate labels")

    @property
    def size(self) -> int:
        return len(self.labels)

    def id(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise DimensionMismatch(f"label {label!r} not in alphabet") from None


def pattern_count(alphabet_size: int, q: int) -> int:
    """Number of distinct q-level atomic patterns: |L| ** (2**q - 1)."""
    if alphabet_size < 1 or q < 1:
        raise ValueError("alphabet size and q must be >= 1")
    positions = 2 ** q - 1
    count = alphabet_size ** positions
    if count > _MAX_PATTERNS:
        raise OverflowError(
            f"pattern space |L|^(2^q-1) = {alphabet_size}^{positions} is infeasible")
    return count


@dataclass
class CharacteristicVector:
    """Per-pattern occurrence counts, stored sparsely."""

    q: int
    dim: int
    counts: dict[int, int]

    def dense(self) -> np.ndarray:
        if self.dim > _MAX_DENSE:
            raise OverflowError(f"dense vector of dimension {self.dim} is infeasible")
        vec = np.zeros(self.dim, dtype=np.int64)
        for i, c in self.counts.items():
            vec[i] = c
        return vec


@dataclass
class Pacv:
    """Position-aware characteristic vector.

    heights[i] lists the heights of the roots of the occurrences of
    pattern i, in preorder discovery order; len(heights[i]) equals the
    characteristic vector count for pattern i.
    """

    q: int
    dim: int
    heights: dict[int, tuple[int, ...]]
    _packed: Optional[tuple] = field(default=None, repr=False, compare=False)

    def to_cv(self) -> CharacteristicVector:
        return CharacteristicVector(
            self.q, self.dim, {i: len(h) for i, h in self.heights.items()})

    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(pattern ids ascending, segment offsets, heights descending)."""
        if self._packed is None:
            ids = sorted(self.heights)
            offs = [0]
            flat: list[float] = []
            for i in ids:
                flat.extend(sorted(self.heights[i], reverse=True))
                offs.append(len(flat))
            self._packed = (
                np.asarray(ids, dtype=np.int64),
                np.asarray(offs, dtype=np.int64),
                np.asarray(flat, dtype=np.float64),
            )
        return self._packed

    def to_jsonable(self) -> dict:
        return {"q": self.q, "dim": self.dim,
                "h": {str(i): list(h) for i, h in self.heights.items()}}

    @classmethod
    def from_jsonable(cls, data: dict) -> "Pacv":
        heights = {int(i): tuple(h) for i, h in data["h"].items()}
        return cls(int(data["q"]), int(data["dim"]), heights)


def _window_powers(alphabet_size: int, q: int) -> list[int]:
    return [alphabet_size ** i for i in range(2 ** q - 1)]


def _iter_occurrences(root: Optional[BNode], q: int,
                      alphabet: LabelAlphabet) -> Iterator[tuple[int, int]]:
    """Yield (pattern index, occurrence height) in preorder, height >= q."""
    if root is None:
        return
    size = alphabet.size
    powers = _window_powers(size, q)
    n_inner = 2 ** (q - 1) - 1
    n_pos = 2 ** q - 1
    stack = [root]
    window: list[Optional[BNode]] = [None] * n_pos
    while stack:
        node = stack.pop()
        if node.right is not None:
            stack.append(node.right)
        if node.left is not None:
            stack.append(node.left)
        if node.height < q:
            continue
        window[0] = node
        for i in range(n_inner):
            v = window[i]
            window[2 * i + 1] = v.left if v is not None else None
            window[2 * i + 2] = v.right if v is not None else None
        index = 0
        for i in range(n_pos):
            v = window[i]
            if v is not None:
                index += alphabet.id(v.label) * powers[i]
        yield index, node.height


def char_vector(tree: Optional[BNode], q: int,
                alphabet: LabelAlphabet) -> CharacteristicVector:
    """Occurrence counts of every q-level pattern in the tree."""
    dim = pattern_count(alphabet.size, q)
    counts: dict[int, int] = {}
    for index, _ in _iter_occurrences(tree, q, alphabet):
        counts[index] = counts.get(index, 0) + 1
    return CharacteristicVector(q, dim, counts)


def pacv(tree: Optional[BNode], q: int, alphabet: LabelAlphabet) -> Pacv:
    """Position-aware characteristic vector of a binary tree."""
    dim = pattern_count(alphabet.size, q)
    heights: dict[int, list[int]] = {}
    for index, h in _iter_occurrences(tree, q, alphabet):
        heights.setdefault(index, []).append(h)
    return Pacv(q, dim, {i: tuple(h) for i, h in heights.items()})


def forest_pacv(trees: Sequence[Optional[BNode]], q: int,
                alphabet: LabelAlphabet) -> Pacv:
    """Pacv of a forest: per-pattern height lists concatenated in tree order,
    heights computed within each tree."""
    dim = pattern_count(alphabet.size, q)
    heights: dict[int, list[int]] = {}
    for tree in trees:
        for index, h in _iter_occurrences(tree, q, alphabet):
            heights.setdefault(index, []).append(h)
    return Pacv(q, dim, {i: tuple(h) for i, h in heights.items()})


def _check_compatible(a, b) -> None:
    if a.q != b.q or a.dim != b.dim:
        raise DimensionMismatch(
            f"incompatible vectors: q={a.q}/{b.q}, dim={a.dim}/{b.dim}")


def pacv_distance(a: Pacv, b: Pacv) -> float:
    """sqrt of the summed squared differences between descending-sorted,
    zero-padded per-pattern height lists."""
    _check_compatible(a, b)
    ids_a, offs_a, hts_a = a.packed()
    ids_b, offs_b, hts_b = b.packed()
    return math.sqrt(_kernels.pacv_sq_dist(ids_a, offs_a, hts_a,
                                           ids_b, offs_b, hts_b))


def cv_distance(a: CharacteristicVector, b: CharacteristicVector,
                norm: str = "l2") -> float:
    """L1 or L2 norm of the count-vector difference."""
    _check_compatible(a, b)
    keys = set(a.counts) | set(b.counts)
    if norm.lower() == "l1":
        return float(sum(abs(a.counts.get(k, 0) - b.counts.get(k, 0)) for k in keys))
    if norm.lower() == "l2":
        return math.sqrt(sum((a.counts.get(k, 0) - b.counts.get(k, 0)) ** 2
                             for k in keys))
    raise ValueError(f"unknown norm {norm!r}")


def template_index(labels: Sequence[Optional[str]], alphabet: LabelAlphabet) -> int:
    """Pattern index of an explicit level-order template (None = empty)."""
    index = 0
    for i, lab in enumerate(labels):
        if lab is not None and lab != alphabet.epsilon:
            index += alphabet.id(lab) * alphabet.size ** i
    return index
