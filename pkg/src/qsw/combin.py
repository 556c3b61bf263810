"""Multiindices, walks, multiplicity numbers and link patterns.

A multiindex is a tuple of positive integers; the empty tuple stands for the
trivial multiindex with n = 0.  A walk over a multiindex is the tuple of heights
(r_1, ..., r_d) with r_0 = 0 implicit and r_{j+1} in E(r_j, s_{j+1}).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "DEFECT",
    "LinkPattern",
    "ValencedLinkPattern",
    "PatternError",
    "as_multiindex",
    "n_of",
    "defect_interval",
    "walks_over",
    "dims_D",
    "dims_B",
    "defect_set",
    "link_patterns",
    "valenced_link_patterns",
    "walk_of",
    "pattern_of",
    "walk_compare",
    "cutting_map",
    "special_link_patterns",
    "parse_pattern",
    "format_pattern",
    "parse_valenced",
    "bins_of",
    "multiindices_up_to",
]

DEFECT = -1


class PatternError(ValueError):
    pass


def as_multiindex(entries: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(e) for e in entries)
    if any(e < 1 for e in out):
        raise PatternError(f"multiindex entries must be positive: {out}")
    return out


def n_of(mi: tuple[int, ...]) -> int:
    return sum(mi)


def bins_of(mi: tuple[int, ...]) -> list[range]:
    """Node ranges (0-based) of the bins of a multiindex."""
    out, start = [], 0
    for s in mi:
        out.append(range(start, start + s))
        start += s
    return out


def defect_interval(r: int, t: int) -> list[int]:
    return list(range(abs(r - t), r + t + 1, 2))


def walks_over(mi: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All walks over mi, lexicographic in the heights."""
    return list(_walks(tuple(mi)))


@functools.lru_cache(maxsize=None)
def _walks(mi: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if not mi:
        return ((),)
    out = []
    for w in _walks(mi[:-1]):
        prev = w[-1] if w else 0
        for r in defect_interval(prev, mi[-1]):
            out.append(w + (r,))
    return tuple(sorted(out))


@functools.lru_cache(maxsize=None)
def _dims_D(mi: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    if not mi:
        return ((0, 1),)
    if len(mi) == 1:
        return ((mi[0], 1),)
    t = mi[-1]
    prev = dict(_dims_D(mi[:-1]))
    out = {}
    for s in range(0, n_of(mi) + 1):
        total = sum(prev.get(r, 0) for r in defect_interval(s, t))
        if total:
            out[s] = total
    return tuple(sorted(out.items()))


def dims_D(mi: tuple[int, ...]) -> dict[int, int]:
    """s -> D_mi^(s) via the recursion over the last entry (only nonzero values)."""
    return dict(_dims_D(tuple(mi)))


def defect_set(mi: tuple[int, ...]) -> list[int]:
    return sorted(dims_D(mi))


@functools.lru_cache(maxsize=None)
def _dims_B(mi: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    if not mi:
        return ((0, 1),)
    if len(mi) == 1:
        return ((mi[0], 1),)
    t = mi[-1]
    prev = dict(_dims_B(mi[:-1]))
    n = n_of(mi)
    out = {}
    # the sum runs over all r = s-t, s-t+2, ..., s+t, negative r included
    for s in range(-n - t, n + t + 1):
        total = sum(prev.get(r, 0) for r in range(s - t, s + t + 1, 2))
        if total:
            out[s] = total
    return tuple(sorted(out.items()))


def dims_B(mi: tuple[int, ...], include_negative: bool = False) -> dict[int, int]:
    """s -> B_mi^(s), the unrestricted-sum upper bound."""
    full = dict(_dims_B(tuple(mi)))
    if include_negative:
        return full
    return {s: b for s, b in full.items() if s >= 0}


def multiindices_up_to(n_max: int, n_min: int = 1) -> list[tuple[int, ...]]:
    """All compositions with n_min <= n <= n_max."""
    out = []

    def rec(prefix, left):
        if prefix and n_of(prefix) >= n_min:
            out.append(tuple(prefix))
        for k in range(1, left + 1):
            rec(prefix + [k], left - k)

    rec([], n_max)
    return sorted(out, key=lambda m: (n_of(m), m))


# ---------------------------------------------------------------------------
# link patterns


@dataclass(frozen=True)
class LinkPattern:
    """Planar pairing of n nodes; partner[j] is the linked node or DEFECT."""

    partner: tuple[int, ...]

    def __post_init__(self):
        _check_pattern(self.partner)

    @property
    def n(self) -> int:
        return len(self.partner)

    @property
    def s(self) -> int:
        return sum(1 for p in self.partner if p == DEFECT)

    def links(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.partner) if b != DEFECT and a < b]

    def defects(self) -> list[int]:
        return [a for a, b in enumerate(self.partner) if b == DEFECT]

    def __str__(self) -> str:
        return format_pattern(self)


def _check_pattern(partner: tuple[int, ...]):
    n = len(partner)
    depth = 0
    for a, b in enumerate(partner):
        if b == DEFECT:
            if depth:
                raise PatternError(f"defect at node {a + 1} is enclosed by a link")
            continue
        if not 0 <= b < n or b == a or partner[b] != a:
            raise PatternError(f"partner array is not an involution at node {a + 1}")
        depth += 1 if b > a else -1
    # planarity: links must nest like parentheses
    stack = []
    for a, b in enumerate(partner):
        if b == DEFECT:
            continue
        if b > a:
            stack.append(a)
        elif not stack or stack.pop() != b:
            raise PatternError("links cross")


@dataclass(frozen=True)
class ValencedLinkPattern:
    """A flat link pattern on n_mi nodes, grouped into the bins of mi, with no intra-bin link."""

    base: LinkPattern
    multiindex: tuple[int, ...]
    walk: tuple[int, ...] = field(compare=False, default=())

    def __post_init__(self):
        if self.base.n != n_of(self.multiindex):
            raise PatternError("pattern size does not match the multiindex")
        for rg in bins_of(self.multiindex):
            for a in rg:
                if self.base.partner[a] in rg:
                    raise PatternError("link joins two nodes of one bin")
        if not self.walk:
            object.__setattr__(self, "walk", _walk_flat(self.base, self.multiindex))

    @property
    def s(self) -> int:
        return self.base.s

    def __str__(self) -> str:
        return "walk:%s@%s" % (",".join(map(str, self.walk)), ",".join(map(str, self.multiindex)))


def _walk_flat(alpha: LinkPattern, mi: tuple[int, ...]) -> tuple[int, ...]:
    heights, open_ = [], 0
    for rg in bins_of(mi):
        for a in rg:
            b = alpha.partner[a]
            open_ += 1 if (b == DEFECT or b > a) else -1
        heights.append(open_)
    return tuple(heights)


def walk_of(alpha, mi: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """Heights r_j = number of strands still open after bin j."""
    if isinstance(alpha, ValencedLinkPattern):
        return alpha.walk
    if mi is None:
        mi = (1,) * alpha.n
    return _walk_flat(alpha, tuple(mi))


def pattern_of(walk: tuple[int, ...], mi: tuple[int, ...]) -> ValencedLinkPattern:
    """Inverse of walk_of: closers first in each bin, paired with the most recent open strand."""
    mi = tuple(mi)
    walk = tuple(walk)
    if len(walk) != len(mi):
        raise PatternError("walk length differs from the multiindex length")
    partner = [DEFECT] * n_of(mi)
    stack: list[int] = []
    prev = 0
    for (rg, s), r in zip(zip(bins_of(mi), mi), walk):
        if r not in defect_interval(prev, s):
            raise PatternError(f"height {r} is not reachable from {prev} with step {s}")
        c = (prev + s - r) // 2
        for k, a in enumerate(rg):
            if k < c:
                b = stack.pop()
                partner[a], partner[b] = b, a
            else:
                stack.append(a)
        prev = r
    return ValencedLinkPattern(LinkPattern(tuple(partner)), mi, walk)


def valenced_link_patterns(mi: tuple[int, ...], s: int | None = None) -> list[ValencedLinkPattern]:
    mi = tuple(mi)
    return [pattern_of(w, mi) for w in walks_over(mi) if s is None or (w[-1] if w else 0) == s]


def link_patterns(n: int, s: int | None = None) -> list[LinkPattern]:
    """All (n, s)-link patterns, lexicographic in the walk; s=None gives every s."""
    if s is not None and (s < 0 or s > n or (n - s) % 2):
        return []
    return [p.base for p in valenced_link_patterns((1,) * n, s)]


def walk_compare(a: tuple[int, ...], b: tuple[int, ...]) -> str:
    if len(a) != len(b):
        raise PatternError("walks of different lengths")
    if a == b:
        return "equal"
    if all(x <= y for x, y in zip(a, b)):
        return "less"
    if all(x >= y for x, y in zip(a, b)):
        return "greater"
    return "incomparable"


def cutting_map(j: int, alpha: LinkPattern) -> LinkPattern:
    """Link nodes j, j+1 (1-based) and join their former partners."""
    if not 1 <= j <= alpha.n - 1:
        raise PatternError(f"cut index {j} out of range 1..{alpha.n - 1}")
    a, b = j - 1, j
    p = list(alpha.partner)
    if p[a] == b:
        return alpha
    x, y = p[a], p[b]
    if x == DEFECT and y == DEFECT:
        raise PatternError("both nodes carry defects; the cutting map is undefined there")
    p[a], p[b] = b, a
    if x != DEFECT:
        p[x] = y
    if y != DEFECT:
        p[y] = x
    return LinkPattern(tuple(p))


def special_link_patterns(mi: tuple[int, ...], s: int) -> list[LinkPattern]:
    """Flat patterns on n_mi nodes with no link inside a bin."""
    mi = tuple(mi)
    rgs = bins_of(mi)
    out = []
    for p in link_patterns(n_of(mi), s):
        if all(p.partner[a] not in rg for rg in rgs for a in rg):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# string forms


def parse_pattern(text: str) -> LinkPattern:
    """`(())||`: parentheses are links, `|` are defects allowed only at depth 0."""
    partner = [DEFECT] * len(text)
    stack = []
    for pos, ch in enumerate(text):
        if ch == "(":
            stack.append(pos)
        elif ch == ")":
            if not stack:
                raise PatternError(f"unbalanced ')' at position {pos}")
            a = stack.pop()
            partner[a], partner[pos] = pos, a
        elif ch == "|":
            if stack:
                raise PatternError(f"defect at positive depth at position {pos}")
        else:
            raise PatternError(f"stray character {ch!r} at position {pos}")
    if stack:
        raise PatternError(f"unbalanced '(' at position {stack[-1]}")
    return LinkPattern(tuple(partner))


def format_pattern(alpha: LinkPattern) -> str:
    return "".join("|" if b == DEFECT else "(" if b > a else ")" for a, b in enumerate(alpha.partner))


def parse_valenced(text: str) -> ValencedLinkPattern:
    """`walk:r1,...,rk@s1,...,sk`."""
    if not text.startswith("walk:") or "@" not in text:
        raise PatternError(f"expected walk:r1,...@s1,... but got {text!r}")
    w, m = text[len("walk:"):].split("@", 1)
    try:
        walk = tuple(int(x) for x in w.split(",") if x.strip())
        mi = as_multiindex(int(x) for x in m.split(",") if x.strip())
    except ValueError as exc:
        raise PatternError(str(exc)) from None
    return pattern_of(walk, mi)
