"""Bounds that carve a finite, enumerable slice out of the infinite algebra."""

from __future__ import annotations

from dataclasses import dataclass

from seqeffect.poly import AlgebraError

DEFAULT_SEED = 20100101


@dataclass(frozen=True, slots=True)
class SampleWindow:
    """Coefficient bound ``W``, bound ``M`` on ``|m|`` and the visiting mode.

    In exhaustive mode every element inside the bounds is visited once. In
    sampled mode ``trials`` draws are made from a generator seeded by ``seed``.
    """

    W: int = 1
    M: int = 1
    mode: str = "exhaustive"
    trials: int = 100_000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.W < 0 or self.M < 0:
            raise AlgebraError(f"degenerate window: W={self.W}, M={self.M}")
        if self.mode not in ("exhaustive", "sampled"):
            raise AlgebraError(f"unknown window mode {self.mode!r}")
        if self.trials < 1:
            raise AlgebraError(f"trials must be >= 1, got {self.trials}")

    @property
    def exhaustive(self) -> bool:
        return self.mode == "exhaustive"

    def as_dict(self) -> dict:
        d = {"W": self.W, "M": self.M, "mode": self.mode}
        if not self.exhaustive:
            d["trials"] = self.trials
            d["seed"] = self.seed
        return d
