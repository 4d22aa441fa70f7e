"""Oriented path patterns: sign sequences, block form, and path surgery.

A pattern on n vertices is the tuple of its n-1 arc directions.  ``True``
means the arc points forward (from position k to k+1), written ``+``;
``False`` means backward, written ``-``.  ``F``/``B`` are accepted as input
aliases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

FORWARD = True
BACKWARD = False

_BLOCK_RE = re.compile(r"^P([+-])\((\d+(?:,\d+)*)\)$")


class PatternError(ValueError):
    """Raised for malformed pattern input or out-of-range indices."""


@dataclass(frozen=True)
class PathPattern:
    """Immutable oriented path shape; single-vertex patterns are legal."""

    dirs: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.dirs) + 1

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_signs(signs: str) -> "PathPattern":
        """Parse a sign string over +/- (or F/B); empty means one vertex."""
        out = []
        for ch in signs.strip():
            if ch in "+Ff":
                out.append(FORWARD)
            elif ch in "-Bb−":
                out.append(BACKWARD)
            else:
                raise PatternError(f"bad direction character {ch!r} in {signs!r}")
        return PathPattern(tuple(out))

    @staticmethod
    def from_blocks(sign: str, blocks) -> "PathPattern":
        """Build from a leading sign and the block lengths b1,...,bm."""
        blocks = tuple(blocks)
        if not blocks:
            raise PatternError("block form needs at least one block")
        if any(b < 1 for b in blocks):
            raise PatternError(f"zero-length block in {blocks}")
        if sign in ("+", "F", "f"):
            cur = FORWARD
        elif sign in ("-", "B", "b", "−"):
            cur = BACKWARD
        else:
            raise PatternError(f"bad sign {sign!r}")
        out = []
        for b in blocks:
            out.extend([cur] * b)
            cur = not cur
        return PathPattern(tuple(out))

    @staticmethod
    def parse(text: str) -> "PathPattern":
        """Parse either grammar form: a sign string or ``P+(b1,b2,...)``."""
        text = text.strip()
        m = _BLOCK_RE.match(text)
        if m:
            return PathPattern.from_blocks(m.group(1), [int(x) for x in m.group(2).split(",")])
        return PathPattern.from_signs(text)

    # -- views --------------------------------------------------------------

    def signs(self) -> str:
        return "".join("+" if d else "-" for d in self.dirs)

    @cached_property
    def _blocks(self) -> tuple[int, ...]:
        if not self.dirs:
            return ()
        out = [1]
        for a, b in zip(self.dirs, self.dirs[1:]):
            if a == b:
                out[-1] += 1
            else:
                out.append(1)
        return tuple(out)

    def blocks(self) -> tuple[int, ...]:
        """Lengths of the maximal constant runs of dirs."""
        return self._blocks

    def sign(self) -> str:
        if not self.dirs:
            return "+"
        return "+" if self.dirs[0] else "-"

    def block_form(self) -> str:
        if not self.dirs:
            return "P+()"
        return f"P{self.sign()}({','.join(str(b) for b in self.blocks())})"

    def classify(self) -> str:
        """'directed' (one block), 'antidirected' (all blocks 1), or 'general'."""
        bl = self.blocks()
        if len(bl) <= 1:
            return "directed"
        if all(b == 1 for b in bl):
            return "antidirected"
        return "general"

    @property
    def is_directed(self) -> bool:
        return self.classify() == "directed"

    @property
    def is_antidirected(self) -> bool:
        bl = self.blocks()
        return all(b == 1 for b in bl) and len(bl) >= 1 or not self.dirs

    # -- algebra --------------------------------------------------------------

    def reverse(self) -> "PathPattern":
        """Pattern read from the other end; embeddings reverse along with it."""
        return PathPattern(tuple(not d for d in reversed(self.dirs)))

    def complement(self) -> "PathPattern":
        """Every direction flipped; same blocks, opposite sign."""
        return PathPattern(tuple(not d for d in self.dirs))

    def subpattern(self, i: int, j: int) -> "PathPattern":
        """Restriction to positions i..j, 1-indexed, inclusive."""
        if not (1 <= i <= j <= self.n):
            raise PatternError(f"subpattern range ({i},{j}) out of 1..{self.n}")
        return PathPattern(self.dirs[i - 1 : j - 1])

    def delete_bridge(self, j: int, direction: bool) -> "PathPattern":
        """Remove interior position j and bridge its neighbours with one arc."""
        if not (1 < j < self.n):
            raise PatternError(f"position {j} is not interior for n={self.n}")
        return PathPattern(self.dirs[: j - 2] + (direction,) + self.dirs[j:])

    def sources_sinks(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """1-indexed positions with no entering arc / no leaving arc."""
        sources, sinks = [], []
        for j in range(1, self.n + 1):
            has_in = (j > 1 and self.dirs[j - 2]) or (j < self.n and not self.dirs[j - 1])
            has_out = (j > 1 and not self.dirs[j - 2]) or (j < self.n and self.dirs[j - 1])
            if not has_in:
                sources.append(j)
            if not has_out:
                sinks.append(j)
        return tuple(sources), tuple(sinks)

    # -- dunder ----------------------------------------------------------------

    def __len__(self):
        return self.n

    def __str__(self):
        return self.signs()

    def __repr__(self):
        return f"PathPattern({self.signs()!r})"
