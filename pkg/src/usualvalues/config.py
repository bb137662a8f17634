"""Run-time options shared by translation, combination and inference."""

from __future__ import annotations

from dataclasses import dataclass

IMPLICATIONS = ("imp_luka", "imp_kd")
CONFLICT_POLICIES = ("keep", "dempster", "to_universe")

_IMP_ALIASES = {"luka": "imp_luka", "kd": "imp_kd", "imp_luka": "imp_luka", "imp_kd": "imp_kd"}


def implication_kind(name: str) -> str:
    try:
        return _IMP_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown implication {name!r}; use luka or kd") from None


@dataclass(frozen=True)
class Config:
    implication: str = "imp_luka"
    conflict_policy: str = "keep"
    max_depth: int = 32

    def __post_init__(self):
        object.__setattr__(self, "implication", implication_kind(self.implication))
        if self.conflict_policy not in CONFLICT_POLICIES:
            raise ValueError(
                f"conflict_policy must be one of {CONFLICT_POLICIES}, got {self.conflict_policy!r}"
            )
        if self.max_depth < 1:
            raise ValueError("max_depth must be positive")
