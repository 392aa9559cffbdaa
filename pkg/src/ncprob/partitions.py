"""Set partitions of {1..n} and the four families used by moment-cumulant formulas.

The families are: all partitions P(n), non-crossing NC(n), interval I(n) and
monotone partitions M(n) (a non-crossing partition together with a block
labelling in which outer blocks get smaller labels than the blocks they nest).

Partitions are stored canonically: blocks are sorted tuples, ordered by their
minimum element, which is the same order the restricted-growth string uses.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInputError, SizeLimitError

DEFAULT_MAX_N = 14
_max_n_override: int | None = None


def get_max_n() -> int:
    """Current enumeration cap (explicit override, then NCPROB_MAX_N, then 14)."""
    if _max_n_override is not None:
        return _max_n_override
    env = os.environ.get("NCPROB_MAX_N")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InvalidInputError(f"NCPROB_MAX_N must be an integer, got {env!r}")
        if value < 1:
            raise InvalidInputError("NCPROB_MAX_N must be >= 1")
        return value
    return DEFAULT_MAX_N


def set_max_n(value: int | None) -> None:
    """Override the enumeration cap; ``None`` restores the environment/default."""
    global _max_n_override
    if value is not None and value < 1:
        raise InvalidInputError("enumeration cap must be >= 1")
    _max_n_override = value


def check_size(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    cap = get_max_n()
    if n > cap:
        raise SizeLimitError(f"n={n} exceeds the enumeration cap {cap}")


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise InvalidInputError("partition has an empty block")
        seen = [x for b in blocks for x in b]
        if len(seen) != len(set(seen)):
            raise InvalidInputError("partition blocks are not disjoint")
        if set(seen) != set(range(1, self.n + 1)):
            raise InvalidInputError(f"blocks do not cover {{1..{self.n}}}")
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        blocks = [tuple(b) for b in blocks]
        n = sum(len(b) for b in blocks)
        return cls(n, tuple(blocks))

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for i, label in enumerate(rgs, start=1):
            groups.setdefault(label, []).append(i)
        return cls(len(rgs), tuple(tuple(g) for g in groups.values()))

    @property
    def rgs(self) -> tuple[int, ...]:
        out = [0] * self.n
        for label, block in enumerate(self.blocks):
            for x in block:
                out[x - 1] = label
        return tuple(out)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def is_noncrossing(self) -> bool:
        return not any(
            _blocks_cross(v, w)
            for i, v in enumerate(self.blocks)
            for w in self.blocks[i + 1:]
        )

    def is_interval(self) -> bool:
        return all(b[-1] - b[0] + 1 == len(b) for b in self.blocks)

    def nesting_parents(self) -> tuple[int | None, ...]:
        """Index of the innermost block enclosing each block (None for outer blocks).

        Only meaningful for non-crossing partitions, where the enclosing blocks
        of any block form a chain.
        """
        parents: list[int | None] = []
        for i, inner in enumerate(self.blocks):
            best = None
            for j, outer in enumerate(self.blocks):
                if j != i and is_nested(inner, outer):
                    if best is None or is_nested(outer, self.blocks[best]):
                        best = j
            parents.append(best)
        return tuple(parents)

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


@dataclass(frozen=True)
class MonotonePartition:
    """A non-crossing partition with a nesting-compatible labelling of its blocks.

    ``order[i]`` is the label (1..len(base)) of ``base.blocks[i]``.
    """

    base: Partition
    order: tuple[int, ...]

    def __post_init__(self):
        k = len(self.base)
        if sorted(self.order) != list(range(1, k + 1)):
            raise InvalidInputError("order must be a bijection onto 1..|blocks|")
        if not self.base.is_noncrossing():
            raise InvalidInputError("monotone partitions need a non-crossing base")
        blocks = self.base.blocks
        for i, inner in enumerate(blocks):
            for j, outer in enumerate(blocks):
                if i != j and is_nested(inner, outer) and not self.order[j] < self.order[i]:
                    raise InvalidInputError(
                        f"block {outer} encloses {inner} but does not get a smaller label"
                    )

    def __str__(self) -> str:
        return f"{self.base} order={','.join(map(str, self.order))}"


def is_nested(inner: Iterable[int], outer: Iterable[int]) -> bool:
    """True iff ``inner`` lies strictly between the extreme points of ``outer``."""
    inner, outer = tuple(inner), tuple(outer)
    if not inner or not outer:
        raise InvalidInputError("blocks must be nonempty")
    if set(inner) & set(outer):
        raise InvalidInputError(f"blocks {inner} and {outer} overlap")
    return min(outer) < min(inner) and max(inner) < max(outer)


def _blocks_cross(v: Sequence[int], w: Sequence[int]) -> bool:
    # Merge the two sorted blocks and collapse runs; crossing means the run
    # pattern alternates at least v w v w.
    tagged = sorted([(x, 0) for x in v] + [(x, 1) for x in w])
    runs = 1
    for (_, a), (_, b) in zip(tagged, tagged[1:]):
        if a != b:
            runs += 1
    return runs >= 4


def iter_rgs(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings of length n in lexicographic order."""
    rgs = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(rgs)
            return
        for label in range(top + 2):
            rgs[i] = label
            yield from rec(i + 1, max(top, label))

    if n == 0:
        yield ()
        return
    yield from rec(1, 0)


def _nc_blocks(lo: int, hi: int) -> Iterator[list[tuple[int, ...]]]:
    # Non-crossing partitions of the integer range lo..hi.
    if lo > hi:
        yield []
        return
    for block, rest in _nc_block_from(lo, hi):
        yield [block] + rest


def _nc_block_from(cur: int, hi: int) -> Iterator[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
    # The block containing ``cur`` continued to the right; gaps are independent.
    for rest in _nc_blocks(cur + 1, hi):
        yield (cur,), rest
    for nxt in range(cur + 1, hi + 1):
        for gap in _nc_blocks(cur + 1, nxt - 1):
            for tail, rest in _nc_block_from(nxt, hi):
                yield (cur,) + tail, gap + rest


def enum_set_partitions(n: int) -> list[Partition]:
    check_size(n)
    return [Partition.from_rgs(r) for r in iter_rgs(n)]


def enum_noncrossing(n: int) -> list[Partition]:
    check_size(n)
    parts = [Partition(n, tuple(b)) for b in _nc_blocks(1, n)]
    parts.sort(key=lambda p: p.rgs)
    return parts


def iter_compositions(n: int) -> Iterator[tuple[int, ...]]:
    for mask in range(2 ** (n - 1)):
        sizes, run = [], 1
        for i in range(n - 1):
            if mask >> i & 1:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        yield tuple(sizes)


def enum_interval(n: int) -> list[Partition]:
    check_size(n)
    parts = []
    for sizes in iter_compositions(n):
        blocks, start = [], 1
        for s in sizes:
            blocks.append(tuple(range(start, start + s)))
            start += s
        parts.append(Partition(n, tuple(blocks)))
    parts.sort(key=lambda p: p.rgs)
    return parts


def _linear_extensions(parents: Sequence[int | None]) -> Iterator[tuple[int, ...]]:
    k = len(parents)
    placed = [False] * k
    seq: list[int] = []

    def rec():
        if len(seq) == k:
            yield tuple(seq)
            return
        for i in range(k):
            if not placed[i] and (parents[i] is None or placed[parents[i]]):
                placed[i] = True
                seq.append(i)
                yield from rec()
                seq.pop()
                placed[i] = False

    yield from rec()


def compatible_orders(p: Partition) -> list[tuple[int, ...]]:
    """All nesting-compatible labellings of a non-crossing partition's blocks."""
    orders = []
    for seq in _linear_extensions(p.nesting_parents()):
        order = [0] * len(p)
        for label, idx in enumerate(seq, start=1):
            order[idx] = label
        orders.append(tuple(order))
    orders.sort()
    return orders


def enum_monotone(n: int) -> list[MonotonePartition]:
    check_size(n)
    return [
        MonotonePartition(p, order)
        for p in enum_noncrossing(n)
        for order in compatible_orders(p)
    ]


def subtree_sizes(p: Partition) -> tuple[int, ...]:
    """Number of blocks in the nesting subtree rooted at each block (itself included)."""
    parents = p.nesting_parents()
    sizes = [1] * len(p)
    for i in range(len(p)):
        j = parents[i]
        while j is not None:
            sizes[j] += 1
            j = parents[j]
    return tuple(sizes)


def count_compatible_orders(p: Partition) -> int:
    """Hook-length count of linear extensions of the nesting forest."""
    return math.factorial(len(p)) // math.prod(subtree_sizes(p))


FAMILIES = ("all", "nc", "interval", "monotone")


def count_partitions(family: str, n: int) -> int:
    """Size of a lattice without enumerating it."""
    check_size(n)
    if family == "all":
        row = [1]
        for _ in range(n - 1):  # Bell triangle
            nxt = [row[-1]]
            for v in row:
                nxt.append(nxt[-1] + v)
            row = nxt
        return row[-1]
    if family == "nc":
        return math.comb(2 * n, n) // (n + 1)
    if family == "interval":
        return 2 ** (n - 1)
    if family == "monotone":
        return math.factorial(n + 1) // 2
    raise InvalidInputError(f"unknown partition family {family!r} (expected one of {', '.join(FAMILIES)})")


def enumerate_family(family: str, n: int) -> list:
    table = {
        "all": enum_set_partitions,
        "nc": enum_noncrossing,
        "interval": enum_interval,
        "monotone": enum_monotone,
    }
    if family not in table:
        raise InvalidInputError(f"unknown partition family {family!r} (expected one of {', '.join(FAMILIES)})")
    return table[family](n)
