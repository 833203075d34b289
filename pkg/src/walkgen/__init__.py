"""Random-walk structural test-case generation."""

from walkgen.benchmarks import load_benchmark
from walkgen.estimators import RandomTestGenerator, WalkTestGenerator
from walkgen.goals import extract_goals
from walkgen.parser import parse_program
from walkgen.search import SearchParams, random_test, walktest

__all__ = [
    "RandomTestGenerator",
    "SearchParams",
    "WalkTestGenerator",
    "extract_goals",
    "load_benchmark",
    "parse_program",
    "random_test",
    "walktest",
]
