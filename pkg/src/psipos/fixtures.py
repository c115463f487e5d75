"""Golden fixture files: interval expansions and the hook triangle.

Three files are generated:

* ``hooks.txt``: multiplicity of each hook ``(n-r,1^r)`` in the hook-class
  sum, one line per ``n <= 12``;
* ``psi_small.txt``: ``psi_mu`` for every ``mu`` with ``|mu| <= 5``;
* ``psi_six.txt``: ``psi_mu`` for every ``mu`` of 6.

Expansion blocks start with ``psi <mu>`` and list ``coefficient<TAB>shape``
lines in descending revlex; blocks are separated by blank lines.
"""

from __future__ import annotations

import difflib
from pathlib import Path

from .models import hook_triangle, psi_interval
from .partitions import format_partition, parse_partition, partitions_of
from .symfun import SchurVector

HOOK_ROWS = 12


def _psi_blocks(degrees: range) -> str:
    blocks = []
    for n in degrees:
        for mu in reversed(partitions_of(n)):
            blocks.append(f"psi {format_partition(mu)}\n" + psi_interval(mu).to_text())
    return "\n".join(blocks)


def hooks_text(rows: int = HOOK_ROWS) -> str:
    tri = hook_triangle(rows)
    return "".join(f"{n}\t{' '.join(map(str, tri.a[n]))}\n" for n in range(1, rows + 1))


def generate() -> dict[str, str]:
    return {
        "hooks.txt": hooks_text(),
        "psi_small.txt": _psi_blocks(range(1, 6)),
        "psi_six.txt": _psi_blocks(range(6, 7)),
    }


def parse_psi_blocks(text: str) -> dict[tuple[int, ...], SchurVector]:
    """Read a ``psi`` fixture back into expansions keyed by ``mu``."""
    out: dict[tuple[int, ...], SchurVector] = {}
    for block in text.strip().split("\n\n"):
        head, _, body = block.partition("\n")
        if not head.startswith("psi "):
            raise ValueError(f"bad fixture block header {head!r}")
        mu = parse_partition(head[4:])
        out[tuple(mu)] = SchurVector.from_text(body, sum(mu))
    return out


def write(directory: str | Path) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in generate().items():
        path = d / name
        path.write_text(text)
        paths.append(path)
    return paths


def check(directory: str | Path) -> dict[str, str]:
    """Unified diffs between freshly generated fixtures and ``directory``.

    Missing files count as differences. An empty result means no diffs.
    """
    d = Path(directory)
    diffs: dict[str, str] = {}
    for name, fresh in generate().items():
        path = d / name
        if not path.exists():
            diffs[name] = f"missing {path}\n"
            continue
        stored = path.read_text()
        if stored != fresh:
            diffs[name] = "".join(
                difflib.unified_diff(stored.splitlines(True), fresh.splitlines(True), f"{path}", f"{name} (generated)")
            )
    return diffs
