"""Complete subgroup lattices: enumeration, order relation, Möbius values,
complements, and the complemented-lattice (K-group) decision.

Enumeration seeds with every cyclic subgroup and saturates under joins with
cyclic subgroups; every subgroup is a join of its own cyclic subgroups, so
the fixed point is the full lattice.  Subgroups are kept in canonical order
(ascending cardinality, ties by the sorted member-index tuple) which makes
ids, witnesses, and dump files deterministic.

A SubgroupLattice is immutable after construction; every query is read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LatticeCapExceeded
from .group import Group, indices_of, iter_indices, popcount

DEFAULT_LATTICE_CAP = 25_000


@dataclass
class SubgroupLattice:
    group: Group
    masks: list[int]
    gens: list[tuple[int, ...]]       # small generating element-index tuple per subgroup
    above: list[int]                  # above[i]: bitmask over ids j with masks[i] <= masks[j]
    normal: list[bool]
    mobius: list[int]
    bottom: int
    top: int
    _id_of: dict[int, int] = field(repr=False, default_factory=dict)
    _join_cache: dict[tuple[int, int], int] = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.masks)

    def id_of_mask(self, mask: int) -> int:
        return self._id_of[mask]

    def order_of(self, sid: int) -> int:
        return popcount(self.masks[sid])

    def members(self, sid: int) -> list[int]:
        return indices_of(self.masks[sid])

    def leq(self, a: int, b: int) -> bool:
        return bool(self.above[a] & (1 << b))

    def meet(self, a: int, b: int) -> int:
        """Id of the intersection (always itself a listed subgroup)."""
        return self._id_of[self.masks[a] & self.masks[b]]

    def join(self, a: int, b: int) -> int:
        """Id of the least subgroup containing both a and b."""
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        key = (a, b) if a <= b else (b, a)
        cached = self._join_cache.get(key)
        if cached is not None:
            return cached
        mask = self.group.closure_mask(self.gens[a] + self.gens[b])
        sid = self._id_of[mask]
        self._join_cache[key] = sid
        return sid

    def complements(self, h: int) -> list[int]:
        """All x with meet(h, x) = bottom and join(h, x) = top, canonical order."""
        bottom_mask = self.masks[self.bottom]
        h_mask = self.masks[h]
        out = []
        for x in range(len(self.masks)):
            if self.masks[x] & h_mask != bottom_mask:
                continue
            if self.join(h, x) == self.top:
                out.append(x)
        return out

    def has_complement(self, h: int) -> bool:
        """Existence-only version of complements(); scans large candidates first.

        Join results are memoized, so the scan order changes speed, never the
        answer.
        """
        bottom_mask = self.masks[self.bottom]
        h_mask = self.masks[h]
        for x in range(len(self.masks) - 1, -1, -1):
            if self.masks[x] & h_mask != bottom_mask:
                continue
            if self.join(h, x) == self.top:
                return True
        return False

    def is_k_group(self) -> tuple[bool, int | None]:
        """(True, None) if every subgroup has a complement, else (False, witness).

        The witness is the first complement-free subgroup in canonical order.
        """
        for h in range(len(self.masks)):
            if not self.has_complement(h):
                return False, h
        return True, None

    def maximal_subgroups(self) -> list[int]:
        out = []
        top_bit = 1 << self.top
        for i in range(len(self.masks)):
            if i == self.top:
                continue
            strictly_above = self.above[i] & ~(1 << i)
            if strictly_above == top_bit:
                out.append(i)
        return out

    def normal_subgroups(self) -> list[int]:
        return [i for i, flag in enumerate(self.normal) if flag]

    def minimal_normal_subgroups(self) -> list[int]:
        nontrivial = [i for i in self.normal_subgroups() if i != self.bottom]
        return [i for i in nontrivial
                if not any(j != i and self.leq(j, i) for j in nontrivial)]

    def frattini(self) -> int:
        """Meet of all maximal subgroups; the whole group when it is trivial."""
        maximals = self.maximal_subgroups()
        if not maximals:
            return self.top
        mask = self.masks[self.top]
        for m in maximals:
            mask &= self.masks[m]
        return self._id_of[mask]

    def count_chief_complements(self, bottom_id: int, top_id: int) -> int:
        """Complements of the factor top/bottom inside G/bottom, counted in G's lattice.

        Counts subgroups X with X meet top = bottom and X join top = G; any
        such X contains bottom, so this equals the complement count in the
        quotient without building it.  Both arguments must be normal and
        nested.
        """
        if not self.normal[bottom_id] or not self.normal[top_id]:
            raise ValueError("chief complement counting needs normal subgroups")
        if not self.leq(bottom_id, top_id):
            raise ValueError("bottom must be contained in top")
        bottom_mask = self.masks[bottom_id]
        top_mask = self.masks[top_id]
        count = 0
        for x in range(len(self.masks)):
            if self.masks[x] & top_mask != bottom_mask:
                continue
            if self.join(x, top_id) == self.top:
                count += 1
        return count

    def dump_lines(self) -> list[str]:
        """One line per subgroup: `id order normal mobius members=...`."""
        out = []
        for i, mask in enumerate(self.masks):
            members = ",".join(str(j) for j in indices_of(mask))
            flag = "true" if self.normal[i] else "false"
            out.append(f"{i} {popcount(mask)} {flag} {self.mobius[i]} members={members}")
        return out


def enumerate_subgroups(G: Group, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Build the complete subgroup lattice of G.

    Raises LatticeCapExceeded when more than `cap` subgroups appear.
    """
    n = len(G.elements)
    # distinct cyclic subgroups, keyed by mask, valued by least generator
    cyclic: dict[int, int] = {1: 0}
    for i in range(1, n):
        m = G.closure_mask([i])
        cyclic.setdefault(m, i)
    known: dict[int, tuple[int, ...]] = {1: ()}
    for m, g in cyclic.items():
        if m != 1:
            known.setdefault(m, (g,))
    cyclic_items = sorted((m, g) for m, g in cyclic.items() if m != 1)
    queue = list(known)
    while queue:
        hmask = queue.pop()
        hgens = known[hmask]
        for cmask, cgen in cyclic_items:
            if cmask & hmask == cmask:
                continue
            joined = G.closure_mask(hgens + (cgen,))
            if joined not in known:
                if len(known) >= cap:
                    raise LatticeCapExceeded(
                        f"subgroup count exceeds cap {cap} for {G!r}"
                    )
                known[joined] = hgens + (cgen,)
                queue.append(joined)
    order_key = {mask: (popcount(mask), tuple(indices_of(mask))) for mask in known}
    masks = sorted(known, key=order_key.__getitem__)
    gens = [known[m] for m in masks]
    id_of = {m: i for i, m in enumerate(masks)}

    sizes = [popcount(m) for m in masks]
    count = len(masks)
    above = [0] * count
    for i in range(count):
        mi, si = masks[i], sizes[i]
        row = 0
        for j in range(count):
            if sizes[j] % si == 0 and mi & masks[j] == mi:
                row |= 1 << j
        above[i] = row

    normal = [_normal_flag(G, m) for m in masks]
    mobius = _compute_mobius(masks, above, count)
    lattice = SubgroupLattice(
        group=G, masks=masks, gens=gens, above=above, normal=normal,
        mobius=mobius, bottom=0, top=count - 1, _id_of=id_of,
    )
    return lattice


def _normal_flag(G: Group, mask: int) -> bool:
    for g in G.generator_indices:
        for h in iter_indices(mask):
            if not mask & (1 << G.conjugate(h, g)):
                return False
    return True


def _compute_mobius(masks: list[int], above: list[int], count: int) -> list[int]:
    """Top-down recursion: mobius(top) = 1, mobius(H) = -sum over K > H.

    Any strict superset has strictly more members, so processing ids in
    decreasing canonical order sees every superset first.
    """
    mobius = [0] * count
    top = count - 1
    mobius[top] = 1
    for i in range(count - 2, -1, -1):
        total = 0
        row = above[i] & ~(1 << i)
        for j in iter_indices(row):
            total += mobius[j]
        mobius[i] = -total
    return mobius


def compute_mobius(L: SubgroupLattice) -> list[int]:
    """Recompute the Möbius column of an existing lattice (mainly for tests)."""
    return _compute_mobius(L.masks, L.above, len(L.masks))


def mobius_bottom(L: SubgroupLattice) -> int:
    """The lattice Möbius value at the trivial subgroup."""
    return L.mobius[L.bottom]
