# Copyright 2026 The NoisyFair Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reader for the experiment CSV and the per-cell summaries plots consume.

Plotting is a pure view of this data: nothing here recomputes a metric.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import os
from collections import defaultdict
from typing import Iterable, Union

COLUMNS = (
    "algorithm",
    "phi",
    "iter",
    "seed",
    "rd",
    "sl",
    "prop_rd",
    "ndcg",
    "utility",
    "runtime_ms",
    "status",
)


class MissingColumn(ValueError):
    """A required column is absent from the CSV header."""


class EmptyGroup(ValueError):
    """A group has no usable rows for the requested cell."""


@dataclasses.dataclass(frozen=True)
class FigureSpec:
    csv: str
    x: str = "phi"
    y: str = "rd"
    group_by: str = "algorithm"
    # Figures over phi run from p down to 1, left to right.
    descending_x: bool = True
    output: str = ""


@dataclasses.dataclass(frozen=True)
class Cell:
    x: float
    mean: float
    sem: float
    count: int


def read_results(source: Union[str, os.PathLike, io.TextIOBase]) -> list[dict[str, str]]:
    """Parses an experiment CSV from a path, CSV text or an open file."""
    if isinstance(source, io.TextIOBase):
        text = source.read()
    elif isinstance(source, str) and "\n" in source:
        text = source
    else:
        with open(source, newline="", encoding="utf-8") as f:
            text = f.read()
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise MissingColumn(f"missing columns: {', '.join(missing)}")
    return list(reader)


def _number(value: str) -> float | None:
    return float(value) if value not in ("", None) else None


def summarize(rows: Iterable[dict[str, str]], spec: FigureSpec) -> dict[str, list[Cell]]:
    """Mean and standard error of the mean of spec.y per (group, x).

    Rows whose status is not "ok" or whose y value is blank are ignored.
    Cells are ordered along x as the figure draws them.
    """
    rows = list(rows)
    for column in (spec.x, spec.y, spec.group_by):
        if rows and column not in rows[0]:
            raise MissingColumn(f"missing column: {column}")
    values: dict[str, dict[float, list[float]]] = defaultdict(lambda: defaultdict(list))
    groups: list[str] = []
    for row in rows:
        group = row[spec.group_by]
        if group not in groups:
            groups.append(group)
        y = _number(row[spec.y])
        x = _number(row[spec.x])
        if row.get("status", "ok") != "ok" or y is None or x is None:
            continue
        values[group][x].append(y)
    out: dict[str, list[Cell]] = {}
    for group in groups:
        if not values[group]:
            raise EmptyGroup(f"no usable '{spec.y}' values for {spec.group_by}={group}")
        cells = []
        for x in sorted(values[group], reverse=spec.descending_x):
            ys = values[group][x]
            mean = math.fsum(ys) / len(ys)
            if len(ys) > 1:
                var = math.fsum((y - mean) ** 2 for y in ys) / (len(ys) - 1)
                sem = math.sqrt(var / len(ys))
            else:
                sem = 0.0
            cells.append(Cell(x=x, mean=mean, sem=sem, count=len(ys)))
        out[group] = cells
    return out
