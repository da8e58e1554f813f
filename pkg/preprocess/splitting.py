"""
Seeded train/validation/test splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from config.errors import DataValidationError

DEFAULT_RATIOS: Tuple[float, float, float] = (0.4, 0.3, 0.3)


@dataclass(frozen=True, eq=False)
class SplitIndices:
    """Disjoint, sorted row positions of the three parts."""

    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray
    seed: int

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return len(self.train), len(self.validation), len(self.test)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SplitIndices):
            return NotImplemented
        return (
            self.seed == other.seed
            and np.array_equal(self.train, other.train)
            and np.array_equal(self.validation, other.validation)
            and np.array_equal(self.test, other.test)
        )

    def to_dict(self) -> Dict:
        return {
            "seed": self.seed,
            "train": self.train.tolist(),
            "validation": self.validation.tolist(),
            "test": self.test.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SplitIndices":
        return cls(
            train=np.asarray(payload["train"], dtype=int),
            validation=np.asarray(payload["validation"], dtype=int),
            test=np.asarray(payload["test"], dtype=int),
            seed=int(payload["seed"]),
        )


def part_sizes(n_rows: int, ratios: Sequence[float]) -> Tuple[int, ...]:
    """Largest-remainder rounding of ``n_rows * ratio``; ties go to the earlier part."""
    exact = [n_rows * r for r in ratios]
    sizes = [math.floor(x) for x in exact]
    order = sorted(range(len(ratios)), key=lambda i: (-(exact[i] - sizes[i]), i))
    for i in order[: n_rows - sum(sizes)]:
        sizes[i] += 1
    return tuple(sizes)


def split(n_rows: int, ratios: Sequence[float] = DEFAULT_RATIOS, seed: int = 42) -> SplitIndices:
    """
    Shuffle row positions with ``seed`` and cut them into train, validation
    and test parts sized by ``ratios``.
    """
    if len(ratios) != 3 or any(not r > 0 for r in ratios):
        raise DataValidationError(f"ratios must be three positive numbers, got {list(ratios)}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise DataValidationError(f"ratios must sum to 1, got {sum(ratios)}")
    sizes = part_sizes(n_rows, ratios)
    if min(sizes) == 0:
        raise DataValidationError(f"Split of {n_rows} rows by {list(ratios)} leaves an empty part {sizes}")

    order = np.random.default_rng(seed).permutation(n_rows)
    a, b = sizes[0], sizes[0] + sizes[1]
    return SplitIndices(
        train=np.sort(order[:a]),
        validation=np.sort(order[a:b]),
        test=np.sort(order[b:]),
        seed=seed,
    )
