"""Fusions of the 7-class flag scheme: testing, applying, enumerating, classifying.

A fusion merges relation classes along a partition of {1..d} (class 0 stays
alone).  The merge yields another association scheme exactly when, for every
ordered pair of blocks, the block sums of intersection numbers agree across
all classes inside each block; that is the criterion checked here, both
numerically on concrete tensors and symbolically on the polynomial table.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotAFusionError
from .polynomials import ZERO
from .schemes import IntersectionTensor, verify_scheme
from .tables import DELTA, p_poly


@dataclass(frozen=True)
class IndexPartition:
    """Disjoint nonempty blocks covering {1..d}; block {0} is implicit."""

    d: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            if b & seen:
                raise ValueError("blocks overlap")
            seen |= b
        if seen != set(range(1, self.d + 1)):
            raise ValueError(f"blocks must cover 1..{self.d}")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, index: int) -> int:
        for b, block in enumerate(self.blocks):
            if index in block:
                return b
        raise KeyError(index)

    def satisfies_star_rule(self) -> bool:
        """For d=7: classes 3, 4 share a block or are both singletons.

        They are the only non-symmetric classes, so any other arrangement
        breaks closure of the fused relations under transposition.
        """
        b3 = next(b for b in self.blocks if 3 in b)
        b4 = next(b for b in self.blocks if 4 in b)
        return b3 is b4 or (b3 == {3} and b4 == {4})

    def render(self) -> str:
        return "|".join("{" + ",".join(str(i) for i in sorted(b)) + "}" for b in self.blocks)

    @classmethod
    def from_text(cls, text: str, d: int = 7) -> "IndexPartition":
        blocks = []
        for chunk in text.split("|"):
            chunk = chunk.strip().strip("{}")
            blocks.append(frozenset(int(v) for v in chunk.split(",")))
        return cls(d, tuple(blocks))


class FeasibilityTag(Enum):
    ALL = "ALL"
    S_EQ_T = "S_EQ_T"
    T_EQ_1 = "T_EQ_1"
    S_EQ_1 = "S_EQ_1"
    POINT = "POINT"
    NEVER = "NEVER"


@dataclass(frozen=True)
class FeasibilityCondition:
    """Weakest parameter condition under which a partition fuses."""

    tag: FeasibilityTag
    points: tuple = ()

    def render(self) -> str:
        if self.tag is FeasibilityTag.POINT:
            return ";".join(f"POINT({s},{t})" for s, t in self.points)
        return self.tag.value

    def holds_at(self, s: int, t: int) -> bool:
        if self.tag is FeasibilityTag.ALL:
            return True
        if self.tag is FeasibilityTag.S_EQ_T:
            return s == t
        if self.tag is FeasibilityTag.T_EQ_1:
            return t == 1
        if self.tag is FeasibilityTag.S_EQ_1:
            return s == 1
        if self.tag is FeasibilityTag.POINT:
            return (s, t) in self.points
        return False


def set_partitions(items):
    """All set partitions in restricted-growth-string order (deterministic)."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def emit():
        nblocks = max(rgs) + 1
        blocks = [[] for _ in range(nblocks)]
        for pos, b in enumerate(rgs):
            blocks[b].append(items[pos])
        return blocks

    def grow(pos, maxb):
        if pos == n:
            yield emit()
            return
        for b in range(maxb + 2):
            rgs[pos] = b
            yield from grow(pos + 1, max(maxb, b))

    rgs[0] = 0
    yield from grow(1, 0)


def _block_sums(tensor: IntersectionTensor, part: IndexPartition) -> np.ndarray:
    """sums[k, a, b] = sum of p[k][i][j] over i in block a, j in block b."""
    e = part.num_blocks
    idx = [np.array(sorted(b)) for b in part.blocks]
    sums = np.zeros((tensor.d + 1, e, e), dtype=np.int64)
    for a in range(e):
        for b in range(e):
            sub = tensor.p[:, idx[a][:, None], idx[b][None, :]]
            sums[:, a, b] = sub.sum(axis=(1, 2))
    return sums


def check_fusion(tensor: IntersectionTensor, part: IndexPartition) -> bool:
    """Fusion criterion: block sums constant across each block's classes."""
    if part.d != tensor.d:
        raise ValueError("partition and tensor class counts differ")
    sums = _block_sums(tensor, part)
    for block in part.blocks:
        ks = sorted(block)
        if len(ks) == 1:
            continue
        first = sums[ks[0]]
        for k in ks[1:]:
            if not np.array_equal(sums[k], first):
                return False
    return True


def fuse(relation: np.ndarray, part: IndexPartition, tensor: IntersectionTensor = None) -> np.ndarray:
    """Relabel the matrix by block index; the criterion must hold first.

    Block b (in order of least member) becomes class b+1; class 0 stays 0.
    The result is itself a scheme whenever the criterion holds, which
    callers can confirm with verify_scheme.
    """
    if tensor is None:
        tensor = verify_scheme(relation, part.d)
    if not check_fusion(tensor, part):
        raise NotAFusionError(f"partition {part.render()} fails the fusion criterion")
    lookup = np.zeros(part.d + 1, dtype=np.int64)
    for b, block in enumerate(part.blocks):
        for i in block:
            lookup[i] = b + 1
    return lookup[relation]


def enumerate_fusions(tensor: IntersectionTensor) -> list:
    """All non-trivial fusing partitions of a 7-class tensor.

    Iterates the 877 set partitions of {1..7}, keeps those with 2..6 blocks
    that respect the star rule for classes 3 and 4 and satisfy the fusion
    criterion.
    """
    if tensor.d != 7:
        raise ValueError("fusion enumeration is specific to 7 classes")
    found = []
    for blocks in set_partitions(range(1, 8)):
        if not 2 <= len(blocks) <= 6:
            continue
        part = IndexPartition(7, tuple(frozenset(b) for b in blocks))
        if not part.satisfies_star_rule():
            continue
        if check_fusion(tensor, part):
            found.append(part)
    return found


_SCAN_POINTS = tuple(
    (s, t)
    for s in range(1, 6)
    for t in range(1, 6)
    if (s, t) != (1, 1)
)


def _difference_polys(part: IndexPartition) -> list:
    """Criterion differences as polynomials; all zero means always a fusion."""
    idx = [sorted(b) for b in part.blocks]
    diffs = []
    for a in range(part.num_blocks):
        for b in range(part.num_blocks):
            for block in idx:
                if len(block) == 1:
                    continue
                base = None
                for k in block:
                    total = ZERO
                    for i in idx[a]:
                        for j in idx[b]:
                            total = total + p_poly(k, i, j)
                    if base is None:
                        base = total
                    else:
                        diffs.append(total - base)
    return diffs


def classify_partition(part: IndexPartition) -> FeasibilityCondition:
    """Symbolically classify when a partition fuses, over the scan lattice.

    Checks identical vanishing first, then the substitutions t=s, t=1 and
    s=1, then isolated points with 1 <= s, t <= 5 (excluding (1,1), which
    is handled separately as the thin case).
    """
    diffs = [p for p in _difference_polys(part) if not p.is_zero()]
    if not diffs:
        return FeasibilityCondition(FeasibilityTag.ALL)
    if all(p.subs_t_to_s().is_zero() for p in diffs):
        return FeasibilityCondition(FeasibilityTag.S_EQ_T)
    if all(p.subs_t(1).is_zero() for p in diffs):
        return FeasibilityCondition(FeasibilityTag.T_EQ_1)
    if all(p.subs_s(1).is_zero() for p in diffs):
        return FeasibilityCondition(FeasibilityTag.S_EQ_1)
    points = tuple(
        (s, t)
        for s, t in _SCAN_POINTS
        if all(p.evaluate(s, t) == 0 for p in diffs)
    )
    if points:
        return FeasibilityCondition(FeasibilityTag.POINT, points=points)
    return FeasibilityCondition(FeasibilityTag.NEVER)


def dual_partition(part: IndexPartition) -> IndexPartition:
    """Apply the duality relabeling 1<->2, 3<->4, 5<->6 blockwise."""
    return IndexPartition(
        part.d, tuple(frozenset(DELTA[i] for i in block) for block in part.blocks)
    )
