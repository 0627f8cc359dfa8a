"""Plain-text family documents.

::

    # any comment
    n=12 k=4 t=1
    1 2 3 4
    1 2 3 5

Elements are 1-indexed, ascending within a line, and lines are sorted
lexicographically.
"""

from __future__ import annotations

from pathlib import Path

from .combinat import ParameterError, Params, elements_of, mask_of
from .family import Family, FamilyError

HEADER = "# t-intersecting family v1"


class DocumentError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_family(f: Family) -> str:
    p = f.params
    rows = sorted(f.sets())
    body = "\n".join(" ".join(map(str, r)) for r in rows)
    return f"{HEADER}\nn={p.n} k={p.k} t={p.t}\n" + (body + "\n" if body else "")


def parse_family(text: str) -> Family:
    params = None
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if params is None:
            try:
                head = dict(tok.split("=", 1) for tok in line.split())
                params = Params(int(head["n"]), int(head["k"]), int(head["t"]))
            except (ValueError, KeyError, ParameterError) as exc:
                raise DocumentError(lineno, f"expected 'n=<int> k=<int> t=<int>', got {line!r} ({exc})")
            continue
        try:
            row = tuple(int(x) for x in line.split())
        except ValueError:
            raise DocumentError(lineno, f"non-integer element in {line!r}")
        if any(b <= a for a, b in zip(row, row[1:])):
            raise DocumentError(lineno, "elements must be strictly ascending")
        if len(row) != params.k:
            raise DocumentError(lineno, f"expected {params.k} elements, got {len(row)}")
        if row[0] < 1 or row[-1] > params.n:
            raise DocumentError(lineno, f"elements must lie in 1..{params.n}")
        if rows and row <= rows[-1]:
            raise DocumentError(lineno, "sets must be sorted lexicographically without repeats")
        rows.append(row)
    if params is None:
        raise DocumentError(0, "missing 'n=.. k=.. t=..' header")
    try:
        return Family.of(params, (mask_of(r) for r in rows))
    except FamilyError as exc:
        raise DocumentError(0, str(exc))


def read_family(path: str | Path) -> Family:
    return parse_family(Path(path).read_text())


def write_family(f: Family, path: str | Path) -> None:
    Path(path).write_text(format_family(f))
