'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.
'''
# Core/tables.py
# Parameter sweeps for `main.py table`.

from __future__ import annotations

import csv
import itertools
import json
from pathlib import Path
from typing import Any, Dict, List

import numpy as np
from loguru import logger
from tqdm import tqdm

from Core.config import EvalConfig
from Core.errors import MarcumPhiError, UsageError
from Core.eval_bridge import STRING_PARAMS, evaluate, parse_value, resolve_params

log = logger.bind(component="tables")

FLOAT_FORMAT = ".17g"


def parse_sweep(tokens) -> Dict[str, List[Any]]:
    """
    name=start:stop:count  -> count linearly spaced points
    name=v1,v2,...         -> explicit values
    name=value             -> fixed value
    Order of the tokens is the nesting order (first = outermost).
    """
    sweep: Dict[str, List[Any]] = {}
    for token in tokens:
        if "=" not in token:
            raise UsageError(f"expected name=spec, got {token!r}")
        name, spec = (part.strip() for part in token.split("=", 1))
        if name in STRING_PARAMS:
            sweep[name] = [v.strip() for v in spec.split(",")]
        elif ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise UsageError(f"range for {name} must be start:stop:count, got {spec!r}")
            start, stop = parse_value(name, parts[0]), parse_value(name, parts[1])
            count = int(parse_value(name, parts[2]))
            if count < 1:
                raise UsageError(f"count for {name} must be >= 1, got {count}")
            sweep[name] = [float(v) for v in np.linspace(start, stop, count)]
        else:
            sweep[name] = [parse_value(name, v.strip()) for v in spec.split(",")]
    return sweep


def run_sweep(function: str, sweep: Dict[str, List[Any]], cfg: EvalConfig,
              progress: bool = False) -> tuple[list[str], list[list[Any]]]:
    names = list(sweep)
    grid = list(itertools.product(*(sweep[n] for n in names)))
    if grid:
        # fail fast on missing/unknown parameters, not per row
        resolve_params(function, dict(zip(names, grid[0])))

    rows = []
    for point in tqdm(grid, desc=f"table {function}", disable=not progress):
        params = dict(zip(names, point))
        try:
            value, error = evaluate(function, params, cfg), ""
        except MarcumPhiError as e:
            value, error = None, f"{type(e).__name__}: {e}"
            log.warning(f"{function} at {params}: {error}")
        except IndexError as e:
            value, error = None, f"IndexError: {e}"
        rows.append(list(point) + [value, error])
    return names + ["value", "error"], rows


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    return str(value)


def write_table(columns: list[str], rows: list[list[Any]], out_path: str | Path,
                fmt: str = "csv", function: str = "") -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with open(out_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_cell(v) for v in row])
    elif fmt == "json":
        with open(out_path, "w", encoding="utf-8", newline="\n") as f:
            json.dump({"function": function, "columns": columns, "rows": rows}, f, indent=2, allow_nan=False)
            f.write("\n")
    else:
        raise UsageError(f"unknown table format {fmt!r}; use csv or json")
    log.info(f"Wrote {len(rows)} row(s) to {out_path}")
    return out_path
