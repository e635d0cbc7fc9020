"""Instance file format.

Line 1: "n t"; then n lines "w_i p_i".  ASCII, LF line endings, '#' starts
a comment.  Errors carry a distinct code so the CLI can map exit states.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from ..core import Item, KnapsackInstance


class InstanceFormatError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_instance_text(text: str) -> KnapsackInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise InstanceFormatError("empty", "no content lines")
    head = lines[0].split()
    if len(head) != 2:
        raise InstanceFormatError("malformed_line",
                                  f"header needs 'n t', got {lines[0]!r}")
    try:
        n, t = int(head[0]), int(head[1])
    except ValueError:
        raise InstanceFormatError("malformed_line",
                                  f"non-integer header {lines[0]!r}")
    if len(lines) - 1 != n:
        raise InstanceFormatError(
            "count_mismatch", f"expected {n} item lines, got {len(lines) - 1}")
    items = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise InstanceFormatError("malformed_line",
                                      f"item line needs 'w p', got {line!r}")
        try:
            w, p = int(parts[0]), int(parts[1])
        except ValueError:
            raise InstanceFormatError("malformed_line",
                                      f"non-integer item line {line!r}")
        if w <= 0 or p <= 0:
            raise InstanceFormatError(
                "nonpositive_value", f"non-positive weight/profit in {line!r}")
        items.append(Item(w, p))
    if t < 0:
        raise InstanceFormatError("nonpositive_value", "negative capacity")
    return KnapsackInstance(items, t)


def write_instance_text(instance: KnapsackInstance) -> str:
    lines = [f"{instance.n} {instance.capacity}"]
    for it in instance.items:
        lines.append(f"{it.weight} {it.profit}")
    return "\n".join(lines) + "\n"


def parse_instance(path) -> KnapsackInstance:
    return parse_instance_text(Path(path).read_text())


def write_instance(instance: KnapsackInstance, path):
    Path(path).write_text(write_instance_text(instance))


def instance_digest(instance: KnapsackInstance) -> str:
    return hashlib.sha256(write_instance_text(instance).encode()).hexdigest()[:16]
