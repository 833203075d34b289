"""Built-in benchmark programs.

``tri-int`` and the two ``tri-real`` variants reproduce the classic triangle
classifier with 6 decisions and 24 C/D goals.  ``line-rect`` and
``day-date`` are reconstructions written for this package (the original
sources were never published): their goal counts are their own and are
listed next to the historical counts in :data:`BENCHMARKS`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from string import Template

from walkgen.parser import parse_program
from walkgen.syntax import ProgramModel


@dataclass(frozen=True)
class BenchmarkEntry:
    name: str
    filename: str
    variant: dict = field(default_factory=dict)
    decisions: int = 0
    goals: int = 0
    historical_goals: int | None = None
    description: str = ""

    @property
    def source(self) -> str:
        text = resources.files(__name__).joinpath(self.filename).read_text(encoding="utf-8")
        if self.filename.endswith(".tmpl"):
            text = Template(text).substitute(self.variant)
        return text

    def model(self) -> ProgramModel:
        return parse_program(self.source, name=self.name)


def _real(bound: int, decimals: int) -> dict:
    return {
        "type": f"real(-{bound}, {bound}, {decimals})",
        "cross_decimals": str(2 * decimals),
    }


BENCHMARKS = {
    "tri-int": BenchmarkEntry(
        "tri-int", "triangle.wt.tmpl", {"type": "int32"}, 6, 24, 24,
        "triangle classifier, 3 x int32",
    ),
    "tri-real": BenchmarkEntry(
        "tri-real", "triangle.wt.tmpl", _real(100_000, 3), 6, 24, 24,
        "triangle classifier, 3 reals in +-100,000.000",
    ),
    "tri-real-2m": BenchmarkEntry(
        "tri-real-2m", "triangle.wt.tmpl", _real(2_000_000, 4), 6, 24, 24,
        "triangle classifier, 3 reals in +-2,000,000.0000",
    ),
    "line-rect": BenchmarkEntry(
        "line-rect", "line_rect.wt.tmpl", _real(100_000, 3), 18, 92, 98,
        "segment vs. rectangle position, 8 reals in +-100,000.000 (reconstruction)",
    ),
    "line-rect-2m": BenchmarkEntry(
        "line-rect-2m", "line_rect.wt.tmpl", _real(2_000_000, 4), 18, 92, 98,
        "segment vs. rectangle position, 8 reals in +-2,000,000.0000 (reconstruction)",
    ),
    "day-date": BenchmarkEntry(
        "day-date", "day_date.wt", {}, 22, 122, 108,
        "days between two dates, 6 x int32, 3 loops (reconstruction)",
    ),
}


def get_benchmark(name: str) -> BenchmarkEntry:
    try:
        return BENCHMARKS[name]
    except KeyError:
        known = ", ".join(sorted(BENCHMARKS))
        raise KeyError(f"unknown benchmark {name!r} (known: {known})") from None


def load_benchmark(name: str) -> ProgramModel:
    return get_benchmark(name).model()
