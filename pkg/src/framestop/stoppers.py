"""Expected-change estimators and stopping rules.

The stopping decision is myopic: estimate the expected distance between
the current combined result and the one the next frame would produce, and
stop once that estimate is no higher than the cost of one more
observation.  Candidates for the next frame are the frames already seen.

Three estimators compute the same quantity at different price points:

* ``estimate_base`` re-combines every candidate in full and measures the
  real sequence distance, O(n * S * K * (S + M)) per stage.
* ``estimate_method_a`` reuses each frame's recorded row alignment and
  scores the modelled merge row-by-row, O(n * S * K).
* ``estimate_method_b`` collapses the candidate sum per (row, class) cell
  into one below-the-mean treap query, O(S * K * log n); unweighted only,
  and with the normalized metric it normalizes the aggregate once instead
  of per candidate.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .combiner import CombinerState
from .core import from_string
from .metrics import MetricKind, gld, ngld


class StopperMethod(Enum):
    BASE = "base"
    METHOD_A = "a"
    METHOD_B = "b"
    FIXED_STAGE = "fixed"


@dataclass(frozen=True)
class StopperConfig:
    """Stopping rule parameters.

    ``threshold`` is the observation cost the estimate is compared
    against; ``delta`` biases the estimate away from zero at small stage
    counts; ``fixed_stage`` applies to FIXED_STAGE only.  The process is
    always cut off at ``max_stages``, looping short clips as needed.
    """

    method: StopperMethod
    metric: MetricKind = MetricKind.NGLD
    delta: float = 0.1
    threshold: float = 0.0
    fixed_stage: int | None = None
    max_stages: int = 30

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.threshold < 0:
            raise ValueError("threshold must be non-negative")
        if self.max_stages < 1:
            raise ValueError("max_stages must be at least 1")
        if self.method is StopperMethod.FIXED_STAGE:
            if self.fixed_stage is None or self.fixed_stage < 1:
                raise ValueError("FIXED_STAGE needs fixed_stage >= 1")


@dataclass(frozen=True)
class EstimationBreakdown:
    """One estimator evaluation.

    ``estimate`` is the expected distance to the next combined result;
    ``gld_aggregate`` the un-normalized distance sum behind it;
    ``per_candidate`` the individual candidate distances where the
    estimator computes them (base and method A).
    """

    estimate: float
    gld_aggregate: float
    per_candidate: tuple[float, ...] | None = None


@dataclass(frozen=True)
class StopOutcome:
    """Result of driving one clip to a stopping decision."""

    stop_stage: int
    forced: bool
    final_error: float
    estimate_trace: tuple[float, ...]


def _normalized(g, length_sum):
    """nGLD value for a known distance ``g`` between sequences of total length ``length_sum``."""
    denom = g + length_sum
    return 2.0 * g / denom if denom > 0 else 0.0


def estimate_base(state, frames, *, metric=MetricKind.NGLD, delta=0.1):
    """Full modelling: re-combine every seen frame as the next candidate."""
    if state.n == 0:
        raise ValueError("cannot estimate before the first frame")
    if len(frames) != state.n:
        raise ValueError(f"got {len(frames)} frames for a state of {state.n}")
    current = state.mean_rows
    s = current.shape[0]
    distances = []
    aggregate = 0.0
    for frame in frames:
        candidate = state.combine_candidate(frame)
        g = gld(current, candidate.rows)
        aggregate += g
        if metric is MetricKind.GLD:
            distances.append(g)
        else:
            distances.append(_normalized(g, s + len(candidate)))
    estimate = (delta + sum(distances)) / (state.n + 1)
    return EstimationBreakdown(estimate, aggregate, tuple(distances))


def estimate_method_a(state, *, metric=MetricKind.NGLD, delta=0.1):
    """Approximate modelling via the recorded per-frame row contributions."""
    if not state.track_history:
        raise ValueError("method A needs a state with track_history")
    n = state.n
    if n == 0:
        raise ValueError("cannot estimate before the first frame")
    current = state.mean_rows
    s = current.shape[0]
    if s == 0:
        g = np.zeros(n)
    else:
        spread = np.abs(current[None, :, :] - state.contributions).sum(axis=(1, 2))
        if state.unweighted:
            g = spread / (2.0 * (n + 1))
        else:
            w = np.asarray(state.weights)
            g = spread * (w / (2.0 * (state.weight_total + w)))
    aggregate = float(g.sum())
    if metric is MetricKind.GLD:
        distances = g
    else:
        distances = np.zeros(n)
        denom = g + 2.0 * s
        ok = denom > 0
        distances[ok] = 2.0 * g[ok] / denom[ok]
    estimate = (delta + float(distances.sum())) / (n + 1)
    return EstimationBreakdown(estimate, aggregate, tuple(float(d) for d in distances))


def estimate_method_b(state, *, metric=MetricKind.NGLD, delta=0.1):
    """Approximate modelling via one below-the-mean treap query per cell."""
    if not state.track_treaps:
        raise ValueError("method B needs a state with track_treaps")
    if not state.unweighted:
        raise ValueError("method B supports unweighted input only")
    n = state.n
    if n == 0:
        raise ValueError("cannot estimate before the first frame")
    s = state.mean_rows.shape[0]
    width = state.mean_rows.shape[1]
    aggregate = 0.0
    for rid in state.row_ids:
        for k in range(width):
            cell = state.cell(rid, k)
            _, total = cell.totals()
            if total == 0.0:
                continue
            count, below_sum = cell.below(total / n)
            aggregate += total * count - n * below_sum
    aggregate /= n * (n + 1)
    if metric is MetricKind.GLD:
        converted = aggregate
    else:
        converted = _normalized(aggregate, 2.0 * s)
    estimate = (delta + converted) / (n + 1)
    return EstimationBreakdown(estimate, aggregate, None)


def should_stop(estimate, config):
    """Stop once the expected change is not higher than the observation cost."""
    return estimate <= config.threshold


def _make_state(alphabet, method, seed):
    return CombinerState(
        alphabet,
        track_history=method is StopperMethod.METHOD_A,
        track_treaps=method is StopperMethod.METHOD_B,
        seed=seed,
    )


def _estimate(state, frames, config):
    if config.method is StopperMethod.BASE:
        return estimate_base(state, frames, metric=config.metric, delta=config.delta)
    if config.method is StopperMethod.METHOD_A:
        return estimate_method_a(state, metric=config.metric, delta=config.delta)
    if config.method is StopperMethod.METHOD_B:
        return estimate_method_b(state, metric=config.metric, delta=config.delta)
    raise ValueError(f"{config.method} has no estimator")


def run_clip(clip, config, *, seed=0):
    """Drive one clip through combination until the stopping rule fires.

    Frames are consumed in order, looping the clip until ``max_stages``;
    running out of stages forces a stop and flags the outcome.  The final
    error is the normalized sequence distance to the clip's ground truth.
    """
    if not clip.frames:
        raise ValueError(f"clip {clip.id} has no frames")
    state = _make_state(clip.alphabet, config.method, seed)
    observed = []
    trace = []
    stop_stage = None
    for stage in range(1, config.max_stages + 1):
        frame = clip.frames[(stage - 1) % len(clip.frames)]
        state.absorb(frame)
        observed.append(frame)
        if config.method is StopperMethod.FIXED_STAGE:
            if stage == config.fixed_stage:
                stop_stage = stage
                break
            continue
        breakdown = _estimate(state, observed, config)
        trace.append(breakdown.estimate)
        if should_stop(breakdown.estimate, config):
            stop_stage = stage
            break
    forced = stop_stage is None
    if forced:
        stop_stage = config.max_stages
    truth = from_string(clip.truth, clip.alphabet)
    error = ngld(state.mean_rows, truth.rows)
    return StopOutcome(stop_stage, forced, error, tuple(trace))


def fixed_stage_baseline(clip, stage, *, max_stages=30):
    """Outcome of always stopping after ``stage`` frames."""
    if stage < 1:
        raise ValueError("stage must be at least 1")
    config = StopperConfig(
        StopperMethod.FIXED_STAGE, fixed_stage=stage, max_stages=max_stages
    )
    return run_clip(clip, config)


def stage_traces(clip, config, *, seed=0):
    """Estimates and truth errors at every stage up to ``max_stages``.

    Runs the combination to the full horizon regardless of the threshold,
    so one pass supports a whole threshold sweep: the stop stage for any
    threshold is the first estimate at or under it.  FIXED_STAGE configs
    yield an empty estimate trace.  Returns (estimates, errors); errors
    has one entry per stage.
    """
    if not clip.frames:
        raise ValueError(f"clip {clip.id} has no frames")
    state = _make_state(clip.alphabet, config.method, seed)
    truth = from_string(clip.truth, clip.alphabet)
    observed = []
    estimates = []
    errors = []
    for stage in range(1, config.max_stages + 1):
        frame = clip.frames[(stage - 1) % len(clip.frames)]
        state.absorb(frame)
        observed.append(frame)
        if config.method is not StopperMethod.FIXED_STAGE:
            estimates.append(_estimate(state, observed, config).estimate)
        errors.append(ngld(state.mean_rows, truth.rows))
    return tuple(estimates), tuple(errors)
