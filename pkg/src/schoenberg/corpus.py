"""Closed-form test functions on [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

SMOOTHNESS_TAGS = ("linear", "smooth", "lipschitz", "holder")


@dataclass(frozen=True)
class TestFunction:
    name: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    smoothness_tag: str

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.smoothness_tag not in SMOOTHNESS_TAGS:
            raise ValueError(f"unknown smoothness tag {self.smoothness_tag!r}")

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))


def _broken_line(x):
    # breaks at 0.3 and 0.7, slopes 1, -2, 0.5
    return np.where(
        x < 0.3,
        x,
        np.where(x < 0.7, 0.3 - 2.0 * (x - 0.3), -0.5 + 0.5 * (x - 0.7)),
    )


_CORPUS = (
    TestFunction("linear", lambda x: 2.0 * x - 0.5, "linear"),
    TestFunction("square", lambda x: x * x, "smooth"),
    TestFunction("sin2pi", lambda x: np.sin(2.0 * np.pi * x), "smooth"),
    TestFunction("abs_half", lambda x: np.abs(x - 0.5), "lipschitz"),
    TestFunction("sqrt_third", lambda x: np.sqrt(np.abs(x - 1.0 / 3.0)), "holder"),
    TestFunction("broken_line", _broken_line, "lipschitz"),
    TestFunction("runge", lambda x: 1.0 / (1.0 + 25.0 * (x - 0.5) ** 2), "smooth"),
)


def builtin_corpus() -> list[TestFunction]:
    return list(_CORPUS)


def corpus_by_name() -> dict[str, TestFunction]:
    return {f.name: f for f in builtin_corpus()}


def get_function(name: str) -> TestFunction:
    table = corpus_by_name()
    if name not in table:
        raise KeyError(f"unknown test function {name!r}; known: {', '.join(table)}")
    return table[name]
