"""Finite unions of disjoint bounded open intervals.

These are the 1D localization sets: multi-interval domains for the
truncated sine-kernel projection and the cross-sections of 3D regions
along the field direction.  Endpoints are stored exactly; open/closed
distinctions are measure zero and irrelevant to every trace computed
here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple

from .errors import DomainError, ValidationError

__all__ = ["IntervalUnion", "IntervalDescriptors", "normalize", "scale", "descriptors"]


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise-disjoint open intervals ``(left_j, right_j)``.

    Invariant: ``right_j < left_{j+1}`` strictly, so every gap
    ``d_j = left_{j+1} - right_j`` is positive.
    """

    intervals: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        prev_right = None
        for left, right in self.intervals:
            if not left < right:
                raise ValidationError(f"empty or inverted interval ({left}, {right})")
            if prev_right is not None and not prev_right < left:
                raise ValidationError(
                    f"interval closures overlap: right={prev_right} vs next left={left}"
                )
            prev_right = right

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> float:
        return sum(r - l for l, r in self.intervals)

    @property
    def span(self) -> float:
        if not self.intervals:
            return 0.0
        return self.intervals[-1][1] - self.intervals[0][0]

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def to_json(self) -> str:
        return json.dumps([[l, r] for l, r in self.intervals])

    @staticmethod
    def from_json(text: str) -> "IntervalUnion":
        try:
            pairs = json.loads(text)
            return normalize([(float(l), float(r)) for l, r in pairs])
        except (TypeError, ValueError, json.JSONDecodeError) as exc:
            raise ValidationError(f"bad interval JSON: {exc}") from exc


class IntervalDescriptors(NamedTuple):
    """The quantities entering the multi-interval error budget."""

    k: int
    lengths: Tuple[float, ...]
    gaps: Tuple[float, ...]
    measure: float
    min_length: float
    min_gap: float


def normalize(raw: Sequence[Tuple[float, float]], merge_tol: float | None = None) -> IntervalUnion:
    """Sort raw pairs and merge near-duplicates into a valid union.

    Pairs whose gap is at most ``merge_tol`` are merged (ray-casting
    cross-sections produce near-duplicate endpoints).  The default
    tolerance is ``1e-12`` times the span of the input.  Genuine overlaps
    beyond the tolerance are rejected.
    """
    pairs = [(float(l), float(r)) for l, r in raw]
    for l, r in pairs:
        if not l < r:
            raise ValidationError(f"interval needs left < right, got ({l}, {r})")
    if not pairs:
        return IntervalUnion(())
    pairs.sort()
    if merge_tol is None:
        span = max(r for _, r in pairs) - min(l for l, _ in pairs)
        merge_tol = 1e-12 * span
    elif merge_tol < 0:
        raise ValidationError("merge_tol must be nonnegative")
    merged = [list(pairs[0])]
    for l, r in pairs[1:]:
        gap = l - merged[-1][1]
        if gap <= merge_tol:
            if gap < -merge_tol:
                raise ValidationError(
                    f"intervals overlap by {-gap} (> merge_tol {merge_tol})"
                )
            merged[-1][1] = max(merged[-1][1], r)
        else:
            merged.append([l, r])
    return IntervalUnion(tuple((l, r) for l, r in merged))


def scale(omega: IntervalUnion, L: float) -> IntervalUnion:
    """Dilate every endpoint by ``L > 0``; lengths and gaps scale linearly."""
    if L <= 0:
        raise DomainError(f"scale factor must be positive, got {L}")
    return IntervalUnion(tuple((L * l, L * r) for l, r in omega.intervals))


def descriptors(omega: IntervalUnion) -> IntervalDescriptors:
    """Component count, lengths, gaps, measure, and their minima."""
    lengths = tuple(r - l for l, r in omega.intervals)
    gaps = tuple(
        omega.intervals[j + 1][0] - omega.intervals[j][1]
        for j in range(len(omega.intervals) - 1)
    )
    return IntervalDescriptors(
        k=len(omega.intervals),
        lengths=lengths,
        gaps=gaps,
        measure=sum(lengths),
        min_length=min(lengths) if lengths else 0.0,
        min_gap=min(gaps) if gaps else float("inf"),
    )
