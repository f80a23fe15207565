import random

import numpy as np
import pytest

from framestop.combiner import (
    GAP_COMBINED,
    GAP_FRAME,
    MATCH,
    CombinerState,
    align,
)
from framestop.core import Alphabet, empty_distribution, from_string, make_frame
from framestop.metrics import char_distance, gld

from oracles import random_clip

ALPHA = Alphabet("AB")


def build(*texts, **kwargs):
    state = CombinerState(ALPHA, **kwargs)
    for text in texts:
        state.absorb(from_string(text, ALPHA))
    return state


def test_align_identical_is_all_match():
    frame = from_string("AB", ALPHA)
    state = build("AB")
    alignment = align(frame, state.current_result())
    assert [s.kind for s in alignment.steps] == [MATCH, MATCH]
    assert alignment.cost == 0.0


def test_align_shorter_frame_drops_row():
    frame = from_string("A", ALPHA)
    state = build("AB")
    alignment = align(frame, state.current_result())
    assert [s.kind for s in alignment.steps] == [MATCH, GAP_FRAME]
    assert alignment.steps[0].frame_row == 0
    assert alignment.steps[1].combined_row == 1
    assert alignment.cost == 1.0


def test_align_empty_frame_is_all_gap_frame():
    frame = make_frame([], num_classes=2)
    state = build("AB")
    alignment = align(frame, state.current_result())
    assert [s.kind for s in alignment.steps] == [GAP_FRAME, GAP_FRAME]


def test_align_empty_result_is_all_gap_combined():
    frame = from_string("AB", ALPHA)
    alignment = align(frame, np.zeros((0, 3)))
    assert [s.kind for s in alignment.steps] == [GAP_COMBINED, GAP_COMBINED]
    assert alignment.cost == 2.0


def test_align_class_mismatch():
    with pytest.raises(ValueError, match="class counts"):
        align(make_frame([[1, 0, 0]]), build("A").current_result())


def _check_coverage(alignment, s, m):
    combined = [st.combined_row for st in alignment.steps if st.combined_row is not None]
    frame = [st.frame_row for st in alignment.steps if st.frame_row is not None]
    assert combined == list(range(s))
    assert frame == list(range(m))


def test_align_covers_rows_in_order_and_matches_gld_cost():
    rng = random.Random(2024)
    for i in range(40):
        clip = random_clip(rng, i, max_frames=3)
        state = CombinerState(clip.alphabet)
        for fr in clip.frames:
            state.absorb(fr)
        probe = clip.frames[rng.randrange(len(clip.frames))]
        alignment = align(probe, state.mean_rows)
        _check_coverage(alignment, state.mean_rows.shape[0], probe.num_chars)
        assert abs(alignment.cost - gld(probe.rows, state.mean_rows)) <= 1e-9


def test_absorb_identical_frames_is_idempotent():
    frame = from_string("AB", ALPHA)
    state = CombinerState(ALPHA)
    state.absorb(frame)
    first = state.mean_rows.copy()
    for _ in range(9):
        state.absorb(frame)
        assert np.array_equal(state.mean_rows, first)
    assert state.n == 10


def test_absorb_merges_single_rows():
    state = build("A", "B")
    assert np.array_equal(state.mean_rows, [[0.0, 0.5, 0.5]])


def test_absorb_pads_shorter_frame_with_empty():
    state = build("AB", "A")
    assert np.allclose(state.mean_rows, [[0.0, 1.0, 0.0], [0.5, 0.0, 0.5]], atol=1e-15)


def test_absorb_growing_frame_inserts_row():
    state = build("A", "AB", track_history=True)
    assert state.mean_rows.shape == (2, 3)
    assert np.allclose(state.mean_rows, [[0.0, 1.0, 0.0], [0.5, 0.0, 0.5]], atol=1e-15)
    # the first frame implicitly contributed empty to the row created later
    new_rid = state.row_ids[1]
    assert np.array_equal(state.contribution(0, new_rid), empty_distribution(ALPHA))


def test_row_ids_stay_stable_under_insertion():
    state = build("B", "AB")
    # new row for 'A' is inserted in front; the old row keeps its id
    assert state.row_ids[1] == 0
    assert state.row_ids[0] == 1


def test_absorb_class_mismatch():
    state = CombinerState(ALPHA)
    with pytest.raises(ValueError, match="classes"):
        state.absorb(make_frame([[1, 0, 0]]))


def test_absorb_weighted_frame_in_treap_mode_rejected():
    state = CombinerState(ALPHA, track_treaps=True)
    with pytest.raises(ValueError, match="unit frame weights"):
        state.absorb(make_frame([[1, 0]], 2.0))


def test_weighted_absorb_mixes_by_weight():
    state = CombinerState(ALPHA)
    state.absorb(make_frame([[1, 0]], 3.0))
    state.absorb(make_frame([[0, 1]], 1.0))
    assert np.allclose(state.mean_rows, [[0.0, 0.75, 0.25]], atol=1e-15)
    assert not state.unweighted


def test_combine_candidate_reproduces_sole_frame():
    frame = from_string("AB", ALPHA)
    state = CombinerState(ALPHA)
    state.absorb(frame)
    candidate = state.combine_candidate(frame)
    assert np.array_equal(candidate.rows, state.mean_rows)


def test_combine_candidate_weighted_average():
    state = build("A", "B")
    result = state.combine_candidate(from_string("A", ALPHA))
    assert np.allclose(result.rows, [[0.0, 2 / 3, 1 / 3]], atol=1e-15)


def test_combine_candidate_empty_frame_averages_toward_empty():
    state = build("AB")
    result = state.combine_candidate(make_frame([], num_classes=2))
    assert np.allclose(result.rows, [[0.5, 0.5, 0.0], [0.5, 0.0, 0.5]], atol=1e-15)


def test_combine_candidate_leaves_state_untouched():
    state = build("AB", "A")
    before_rows = state.mean_rows
    before_ids = state.row_ids
    state.combine_candidate(from_string("BBB", ALPHA))
    assert state.n == 2
    assert np.array_equal(state.mean_rows, before_rows)
    assert state.row_ids == before_ids


def test_current_result_snapshot():
    state = build("A")
    snap = state.current_result()
    state.absorb(from_string("B", ALPHA))
    assert np.array_equal(snap.rows, [[0.0, 1.0, 0.0]])
    with pytest.raises(ValueError):
        CombinerState(ALPHA).current_result()


def test_current_result_examples():
    assert np.array_equal(build("A").current_result().rows, [[0.0, 1.0, 0.0]])
    assert np.array_equal(build("A", "B").current_result().rows, [[0.0, 0.5, 0.5]])


def test_contribution_requires_history():
    state = build("A")
    with pytest.raises(ValueError, match="history"):
        state.contribution(0, 0)


def test_contribution_bounds():
    state = build("A", track_history=True)
    with pytest.raises(IndexError):
        state.contribution(1, 0)
    with pytest.raises(KeyError):
        state.contribution(0, 99)


def test_cell_requires_treaps():
    state = build("A")
    with pytest.raises(ValueError, match="treap"):
        state.cell(0, 0)


def _history_weighted_sums(state):
    width = state.alphabet.size + 1
    sums = {rid: np.zeros(width) for rid in state.row_ids}
    for i in range(state.n):
        w = state.weights[i]
        for rid in state.row_ids:
            sums[rid] += w * state.contribution(i, rid)
    return sums


@pytest.mark.parametrize("weighted", [False, True])
def test_mean_consistency_invariant(weighted):
    rng = random.Random(31 + weighted)
    for i in range(25):
        clip = random_clip(rng, i, weighted=weighted)
        state = CombinerState(clip.alphabet, track_history=True)
        for frame in clip.frames:
            state.absorb(frame)
            sums = _history_weighted_sums(state)
            for pos, rid in enumerate(state.row_ids):
                assert np.allclose(
                    state.mean_rows[pos] * state.weight_total, sums[rid], atol=1e-9
                )


def test_treap_mirror_invariant():
    rng = random.Random(77)
    for i in range(15):
        clip = random_clip(rng, i)
        state = CombinerState(clip.alphabet, track_history=True, track_treaps=True)
        for frame in clip.frames:
            state.absorb(frame)
            sums = _history_weighted_sums(state)
            for rid in state.row_ids:
                for k in range(clip.alphabet.size + 1):
                    count, total = state.cell(rid, k).totals()
                    assert count == state.n
                    assert abs(total - sums[rid][k]) <= 1e-9


def test_length_bound():
    rng = random.Random(5)
    for i in range(20):
        clip = random_clip(rng, i)
        state = CombinerState(clip.alphabet)
        total_rows = 0
        for frame in clip.frames:
            total_rows += frame.num_chars
            state.absorb(frame)
            assert state.mean_rows.shape[0] <= total_rows
