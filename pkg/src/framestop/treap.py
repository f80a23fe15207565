"""Order-statistic treap over real values with multiplicities.

The combiner needs, for every (row, class) cell, the count and sum of the
stored membership values that lie strictly below a moving bound, under a
stream of insertions.  A treap keyed by value with subtree aggregates
answers both in O(log n) expected.  Equal values share a node whose
multiplicity grows, so bulk-inserting n identical values costs one
O(log n) update instead of n.
"""

import random
from typing import NamedTuple


class BelowQuery(NamedTuple):
    """Count and value-weighted sum of stored values strictly below a bound."""

    count: int
    sum: float


class _Node:
    __slots__ = ("value", "mult", "prio", "left", "right", "count", "total")

    def __init__(self, value, mult, prio):
        self.value = value
        self.mult = mult
        self.prio = prio
        self.left = None
        self.right = None
        self.count = mult
        self.total = value * mult


def _refresh(node):
    # recompute subtree aggregates from the children, O(1)
    count = node.mult
    total = node.value * node.mult
    if node.left is not None:
        count += node.left.count
        total += node.left.total
    if node.right is not None:
        count += node.right.count
        total += node.right.total
    node.count = count
    node.total = total


def _rotate_right(node):
    pivot = node.left
    node.left = pivot.right
    pivot.right = node
    _refresh(node)
    _refresh(pivot)
    return pivot


def _rotate_left(node):
    pivot = node.right
    node.right = pivot.left
    pivot.left = node
    _refresh(node)
    _refresh(pivot)
    return pivot


class MultisetIndex:
    """Multiset of real values answering strictly-below count/sum queries.

    Priorities come from the supplied random source, so runs are
    reproducible when the owner seeds it.  Only insertion is supported;
    the combination process never removes observations.
    """

    def __init__(self, rng=None):
        self._rng = rng if rng is not None else random.Random(0)
        self._root = None

    def insert(self, value, multiplicity=1):
        """Add ``value`` with the given multiplicity (must be >= 1)."""
        multiplicity = int(multiplicity)
        if multiplicity < 1:
            raise ValueError("multiplicity must be at least 1")
        self._root = self._insert(self._root, float(value), multiplicity)

    def _insert(self, node, value, mult):
        if node is None:
            return _Node(value, mult, self._rng.random())
        if value == node.value:
            node.mult += mult
            _refresh(node)
            return node
        if value < node.value:
            node.left = self._insert(node.left, value, mult)
            if node.left.prio > node.prio:
                return _rotate_right(node)
        else:
            node.right = self._insert(node.right, value, mult)
            if node.right.prio > node.prio:
                return _rotate_left(node)
        _refresh(node)
        return node

    def below(self, bound):
        """Count and sum of stored values strictly less than ``bound``."""
        count = 0
        total = 0.0
        node = self._root
        while node is not None:
            if node.value < bound:
                count += node.mult
                total += node.value * node.mult
                if node.left is not None:
                    count += node.left.count
                    total += node.left.total
                node = node.right
            else:
                node = node.left
        return BelowQuery(count, total)

    def totals(self):
        """(total multiplicity, value-weighted sum) over the whole multiset."""
        if self._root is None:
            return 0, 0.0
        return self._root.count, self._root.total

    @property
    def size(self):
        return 0 if self._root is None else self._root.count

    def max_depth(self):
        """Longest root-to-leaf path; a balance diagnostic."""
        deepest = 0
        stack = [(self._root, 1)] if self._root is not None else []
        while stack:
            node, depth = stack.pop()
            if depth > deepest:
                deepest = depth
            if node.left is not None:
                stack.append((node.left, depth + 1))
            if node.right is not None:
                stack.append((node.right, depth + 1))
        return deepest
