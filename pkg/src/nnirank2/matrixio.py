"""Plain-text matrix files: one row per line, space-separated integers.

Lines starting with '#' and blank lines are ignored on input; output never
contains them unless a comment block is passed explicitly.
"""

from __future__ import annotations

import os

import numpy as np

from .linalg import as_int_matrix


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in stripped.split()])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("no matrix rows found")
    return as_int_matrix(rows)


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_matrix(M) -> str:
    M = as_int_matrix(M)
    return "\n".join(" ".join(str(int(x)) for x in row) for row in M) + "\n"


def write_matrix(path: str | os.PathLike, M, comments: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(M))
        for line in comments or []:
            fh.write(f"# {line}\n")
