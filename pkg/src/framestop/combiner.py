"""Alignment and incremental combination of per-frame recognition results.

Each new frame is aligned against the running combined result with a
dynamic program whose costs come from the character-level distance, then
merged row by row as a weighted average, pairing unaligned positions with
the empty distribution.  The state optionally keeps the bookkeeping the
fast stopping estimators consume: per-frame aligned contributions and,
for the tree-query estimator, one value treap per (row, class) cell.
"""

import random
from dataclasses import dataclass

import numpy as np

from .core import CombinedResult, _empty_row
from .metrics import gap_costs, pairwise_costs
from .treap import MultisetIndex

MATCH = "match"
GAP_FRAME = "gap_frame"
GAP_COMBINED = "gap_combined"


@dataclass(frozen=True)
class AlignmentStep:
    """One row pairing: kind is MATCH, GAP_FRAME or GAP_COMBINED.

    ``combined_row`` / ``frame_row`` are positions in the respective row
    sequences; a gap step leaves the missing side as None.
    """

    kind: str
    combined_row: int | None = None
    frame_row: int | None = None


@dataclass(frozen=True)
class Alignment:
    """Ordered row pairing between a frame and the combined result.

    Steps appear in output order: walking them while merging produces the
    rows of the next combined result, with GAP_COMBINED steps marking
    where brand-new rows are inserted.
    """

    steps: tuple[AlignmentStep, ...]
    cost: float


def _rows_of(seq):
    return seq.rows if hasattr(seq, "rows") else np.asarray(seq, dtype=np.float64)


def align(frame, result):
    """Minimal-cost row alignment of ``frame`` against ``result``.

    MATCH costs the char distance between the paired rows; either gap
    costs the skipped row's distance to the empty distribution.  Ties are
    broken deterministically, scanning from the start: MATCH, then
    GAP_FRAME, then GAP_COMBINED.
    """
    combined = _rows_of(result)
    fresh = _rows_of(frame)
    if combined.shape[0] and fresh.shape[0] and combined.shape[1] != fresh.shape[1]:
        raise ValueError(
            f"class counts differ: frame {fresh.shape[1] - 1} vs result {combined.shape[1] - 1}"
        )
    s, m = combined.shape[0], fresh.shape[0]

    sub = pairwise_costs(combined, fresh).tolist() if s and m else []
    skip_combined = gap_costs(combined).tolist()  # cost of a GAP_FRAME step per combined row
    insert_fresh = gap_costs(fresh).tolist()  # cost of a GAP_COMBINED step per frame row

    # cost[i][j] = optimal cost of aligning combined rows i.. with frame rows j..;
    # filled from the tail so the path can be read off from the front, which is
    # where the tie-breaking preference applies.
    cost = [[0.0] * (m + 1) for _ in range(s + 1)]
    for j in range(m - 1, -1, -1):
        cost[s][j] = insert_fresh[j] + cost[s][j + 1]
    for i in range(s - 1, -1, -1):
        cost[i][m] = skip_combined[i] + cost[i + 1][m]
        row_i = cost[i]
        next_i = cost[i + 1]
        sub_i = sub[i] if m else []
        for j in range(m - 1, -1, -1):
            best = sub_i[j] + next_i[j + 1]
            alt = skip_combined[i] + next_i[j]
            if alt < best:
                best = alt
            alt = insert_fresh[j] + row_i[j + 1]
            if alt < best:
                best = alt
            row_i[j] = best

    steps = []
    i = j = 0
    while i < s or j < m:
        here = cost[i][j]
        if i < s and j < m and sub[i][j] + cost[i + 1][j + 1] == here:
            steps.append(AlignmentStep(MATCH, combined_row=i, frame_row=j))
            i += 1
            j += 1
        elif i < s and skip_combined[i] + cost[i + 1][j] == here:
            steps.append(AlignmentStep(GAP_FRAME, combined_row=i))
            i += 1
        else:
            steps.append(AlignmentStep(GAP_COMBINED, frame_row=j))
            j += 1
    return Alignment(tuple(steps), cost[0][0])


def _merge_step(step, frame_rows, result_rows, factor, empty):
    """Merged row for one alignment step; factor = new weight / total weight."""
    if step.kind == MATCH:
        old = result_rows[step.combined_row]
        return old + factor * (frame_rows[step.frame_row] - old)
    if step.kind == GAP_FRAME:
        old = result_rows[step.combined_row]
        return old + factor * (empty - old)
    return empty + factor * (frame_rows[step.frame_row] - empty)


class CombinerState:
    """Running combination of a stream of recognition frames.

    ``track_history`` records, per frame, which row values were merged
    into which combined rows (frames contribute the empty distribution
    wherever they were not aligned).  ``track_treaps`` additionally
    mirrors every (row, class) column of that history in a
    :class:`MultisetIndex`; it requires unit frame weights.  Both default
    off, so plain combination carries no bookkeeping overhead.

    A state is meant to be owned by a single worker; results handed out
    are immutable snapshots.
    """

    def __init__(self, alphabet, *, track_history=False, track_treaps=False, seed=0):
        self.alphabet = alphabet
        self.track_history = bool(track_history)
        self.track_treaps = bool(track_treaps)
        self.n = 0
        self.weight_total = 0.0
        self._width = alphabet.size + 1
        self._matrix = np.zeros((0, self._width))
        self._matrix.setflags(write=False)
        self._order = []
        self._next_id = 0
        self._weights = []
        # contributions[i, p, k]: what frame i merged into the row now at
        # position p (the empty distribution wherever it was unaligned)
        self._contributions = np.zeros((0, 0, self._width))
        self._cells = {}
        self._rng = random.Random(seed)

    @property
    def mean_rows(self):
        """Current combined rows, shape (S, K+1); a write-protected snapshot."""
        return self._matrix

    @property
    def row_ids(self):
        return tuple(self._order)

    @property
    def weights(self):
        return tuple(self._weights)

    @property
    def unweighted(self):
        return all(w == 1.0 for w in self._weights)

    def _check_frame(self, frame):
        if frame.num_classes != self.alphabet.size:
            raise ValueError(
                f"frame has {frame.num_classes} classes, state expects {self.alphabet.size}"
            )
        if self.track_treaps and frame.weight != 1.0:
            raise ValueError("treap bookkeeping supports unit frame weights only")

    def absorb(self, frame):
        """Fold one frame into the combined result, updating all bookkeeping."""
        self._check_frame(frame)
        w = frame.weight
        n_old = self.n
        new_total = self.weight_total + w
        factor = w / new_total if new_total > 0 else 0.0
        empty = _empty_row(self._width)
        alignment = align(frame, self._matrix)

        new_rows = []
        new_order = []
        kept_positions = []  # new display position of each surviving old row, in old order
        touched = []  # (new display position, frame row) pairs that carry frame values
        for position, step in enumerate(alignment.steps):
            merged = _merge_step(step, frame.rows, self._matrix, factor, empty)
            if step.kind == GAP_COMBINED:
                rid = self._next_id
                self._next_id += 1
                if self.track_treaps:
                    self._cells[rid] = self._new_cells(n_old)
            else:
                rid = self._order[step.combined_row]
                kept_positions.append(position)
            new_rows.append(merged)
            new_order.append(rid)
            if step.kind == GAP_FRAME:
                if self.track_treaps:
                    self._insert_cell_values(rid, empty)
            else:
                touched.append((position, step.frame_row))
                if self.track_treaps:
                    self._insert_cell_values(rid, frame.rows[step.frame_row])

        matrix = np.array(new_rows) if new_rows else np.zeros((0, self._width))
        matrix.setflags(write=False)
        if self.track_history:
            grown = np.empty((n_old + 1, len(new_rows), self._width))
            grown[:] = empty
            if n_old and kept_positions:
                grown[:n_old, kept_positions, :] = self._contributions
            for position, frame_row in touched:
                grown[n_old, position] = frame.rows[frame_row]
            grown.setflags(write=False)
            self._contributions = grown
        self._matrix = matrix
        self._order = new_order
        self.n = n_old + 1
        self.weight_total = new_total
        self._weights.append(w)

    def _new_cells(self, backfill):
        """Treap cells for a fresh row; earlier frames all contributed empty."""
        cells = [MultisetIndex(self._rng) for _ in range(self._width)]
        if backfill > 0:
            cells[0].insert(1.0, backfill)
            for cell in cells[1:]:
                cell.insert(0.0, backfill)
        return cells

    def _insert_cell_values(self, rid, row):
        for cell, value in zip(self._cells[rid], row):
            cell.insert(value)

    def combine_candidate(self, candidate):
        """Combined result if ``candidate`` arrived next; the state is untouched."""
        self._check_frame(candidate)
        w = candidate.weight
        new_total = self.weight_total + w
        factor = w / new_total if new_total > 0 else 0.0
        empty = _empty_row(self._width)
        alignment = align(candidate, self._matrix)

        rows = []
        ids = []
        temp_id = self._next_id
        for step in alignment.steps:
            rows.append(_merge_step(step, candidate.rows, self._matrix, factor, empty))
            if step.kind == GAP_COMBINED:
                ids.append(temp_id)
                temp_id += 1
            else:
                ids.append(self._order[step.combined_row])
        return CombinedResult(np.array(rows) if rows else np.zeros((0, self._width)), ids)

    def current_result(self):
        """Snapshot of the combined result after the frames absorbed so far."""
        if self.n == 0:
            raise ValueError("no frames absorbed yet")
        return CombinedResult(self._matrix, tuple(self._order))

    @property
    def contributions(self):
        """History tensor, shape (n, S, K+1): what each frame merged into each row."""
        if not self.track_history:
            raise ValueError("state was built without history tracking")
        return self._contributions

    def contribution(self, frame_index, row_id):
        """Row that frame ``frame_index`` merged into ``row_id``.

        Frames contribute the empty distribution to rows they were not
        aligned with, including rows created after them.
        """
        if not self.track_history:
            raise ValueError("state was built without history tracking")
        if not 0 <= frame_index < self.n:
            raise IndexError(f"frame index {frame_index} out of range")
        if row_id not in self._order:
            raise KeyError(f"unknown row id {row_id}")
        return self._contributions[frame_index, self._order.index(row_id)].copy()

    def cell(self, row_id, class_index):
        """Treap mirroring the history column of (row_id, class_index)."""
        if not self.track_treaps:
            raise ValueError("state was built without treap bookkeeping")
        return self._cells[row_id][class_index]
