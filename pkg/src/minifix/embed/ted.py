"""Unit-cost tree edit distance (Zhang-Shasha) over MiniImp ASTs.

Relabel cost compares both label kind and payload; insert, delete and
relabel all cost 1.  The DP core runs in the selected kernel backend.
"""

from __future__ import annotations

import numpy as np

from .. import _kernels
from ..lang.ast import Node


def _flatten(root: Node, intern: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Postorder label ids, leftmost-leaf indices, and keyroots."""
    # Preorder with children pushed left-to-right, reversed, is postorder.
    order: list[Node] = []
    stack = [root]
    while stack:
        n = stack.pop()
        order.append(n)
        stack.extend(n.children)
    order.reverse()

    n_nodes = len(order)
    pos = {id(n): i for i, n in enumerate(order)}
    labels = np.empty(n_nodes, dtype=np.int32)
    lml = np.empty(n_nodes, dtype=np.int32)
    for i, n in enumerate(order):
        key = (n.kind, n.payload)
        code = intern.get(key)
        if code is None:
            code = len(intern)
            intern[key] = code
        labels[i] = code
        lml[i] = lml[pos[id(n.children[0])]] if n.children else i
    last_for_lml: dict[int, int] = {}
    for i in range(n_nodes):
        last_for_lml[int(lml[i])] = i
    keyroots = np.asarray(sorted(last_for_lml.values()), dtype=np.int32)
    return labels, lml, keyroots


def tree_edit_distance(a: Node, b: Node) -> int:
    intern: dict = {}
    fa = _flatten(a, intern)
    fb = _flatten(b, intern)
    return int(_kernels.ted_dist(*fa, *fb))


def tree_size(node: Node) -> int:
    """Edit distance to the empty tree (= node count): the gap cost."""
    return node.size()
