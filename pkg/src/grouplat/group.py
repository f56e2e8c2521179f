"""Fully enumerated permutation groups and bitmask subgroup arithmetic.

A Group carries its complete element table in canonical order (lexicographic
on image tuples, so the identity is always element 0) plus lazily built
multiplication/inverse index tables.  Subsets of a group are plain Python
ints used as bitmasks over element indices; all subgroup machinery in the
package works on these masks.

Groups are immutable once built (the lazy tables are filled at most once),
so they can be shared freely across threads; construction itself is
single-threaded.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DegreeCapExceeded, GroupParseError, OrderCapExceeded
from .perm import Permutation, compose, identity, parse_permutation

DEFAULT_ORDER_CAP = 10_000
DEFAULT_DEGREE_CAP = 64


def popcount(mask: int) -> int:
    try:
        return mask.bit_count()
    except AttributeError:  # pragma: no cover - pre-3.11 fallback
        return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> list[int]:
    """Set bits of a mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_indices(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Group:
    """A finite permutation group with a full, canonically ordered element table."""

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation], name: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.name = name
        if not self.elements or not self.elements[0].is_identity():
            raise ValueError("element table must start with the identity")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity_index(self) -> int:
        return 0

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    @property
    def trivial_mask(self) -> int:
        return 1

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    @cached_property
    def mul(self) -> list[list[int]]:
        """Index multiplication table: mul[a][b] = index of elements[a]*elements[b]."""
        idx = self.index
        els = self.elements
        return [[idx[compose(a, b)] for b in els] for a in els]

    @cached_property
    def inv(self) -> list[int]:
        return [self.index[p.inverse()] for p in self.elements]

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for i in range(len(self.elements)):
            k, x = 1, i
            mul_i = self.mul
            while x != 0:
                x = mul_i[x][i]
                k += 1
            out.append(k)
        return out

    def conjugate(self, h: int, g: int) -> int:
        """Index of g^-1 * h * g."""
        mul = self.mul
        return mul[mul[self.inv[g]][h]][g]

    def commutator(self, a: int, b: int) -> int:
        """Index of a^-1 * b^-1 * a * b."""
        mul = self.mul
        return mul[mul[mul[self.inv[a]][self.inv[b]]][a]][b]

    def closure_mask(self, seed: Iterable[int]) -> int:
        """Membership mask of the subgroup generated by the seed element indices.

        BFS over products of seed elements starting from the identity; in a
        finite group the words in the seed already form a subgroup.
        """
        mul = self.mul
        mask = 1
        frontier = [0]
        seed = list(seed)
        if not seed:
            return mask
        n = len(self.elements)
        count = 1
        while frontier:
            new: list[int] = []
            for x in frontier:
                row = mul[x]
                for s in seed:
                    y = row[s]
                    bit = 1 << y
                    if not mask & bit:
                        mask |= bit
                        count += 1
                        new.append(y)
            if count == n:
                return self.full_mask
            frontier = new
        return mask

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"Group({label}, degree={self.degree}, order={len(self.elements)})"


def close_generators(degree: int, gens: Sequence[Permutation],
                     cap: int = DEFAULT_ORDER_CAP, name: str | None = None,
                     degree_cap: int = DEFAULT_DEGREE_CAP) -> Group:
    """Enumerate the group generated by `gens` on `degree` points.

    Breadth-first closure under right multiplication by the generators; the
    element table is then sorted into canonical (lexicographic) order, so the
    result does not depend on generator order.  Exceeding `cap` raises
    OrderCapExceeded: the group is too large for this engine, not wrong.
    """
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    if degree > degree_cap:
        raise DegreeCapExceeded(f"degree {degree} exceeds cap {degree_cap}")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    ident = identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    if len(seen) >= cap:
                        raise OrderCapExceeded(
                            f"group order exceeds cap {cap} (degree {degree})"
                        )
                    seen.add(y)
                    new.append(y)
        frontier = new
    elements = sorted(seen)
    return Group(degree, tuple(gens), elements, name=name)


def generated_subgroup(G: Group, seed: int) -> int:
    """Smallest subgroup mask containing the seed mask (always has the identity)."""
    return G.closure_mask(indices_of(seed))


def is_subgroup_mask(G: Group, mask: int) -> bool:
    """True iff the mask is nonempty and closed under the group product."""
    if not mask & 1:
        return False
    members = indices_of(mask)
    mul = G.mul
    for a in members:
        row = mul[a]
        for b in members:
            if not mask & (1 << row[b]):
                return False
    return True


def is_normal(G: Group, H: int) -> bool:
    """True iff the subgroup mask H is invariant under conjugation by G.

    Testing conjugation by the group generators suffices.  Raises ValueError
    if H is not closed.
    """
    if not is_subgroup_mask(G, H):
        raise ValueError("H is not a subgroup (not closed)")
    return _is_normal_unchecked(G, H)


def _is_normal_unchecked(G: Group, H: int) -> bool:
    members = indices_of(H)
    for g in G.generator_indices:
        for h in members:
            if not H & (1 << G.conjugate(h, g)):
                return False
    return True


def element_order(G: Group, i: int) -> int:
    return G.element_orders[i]


def coset_action(G: Group, H: int) -> Group:
    """Action of G's generators on the right cosets of the subgroup H.

    Returns a new Group of degree [G:H].  Cosets are numbered by ascending
    minimal member index, so the coset H itself is point 0.  For normal H the
    kernel of the action is exactly H, making this a faithful permutation
    representation of G/H.
    """
    if not is_subgroup_mask(G, H):
        raise ValueError("H is not a subgroup (not closed)")
    members = indices_of(H)
    mul = G.mul
    n = len(G.elements)
    coset_key = [-1] * n  # element -> minimal index in its right coset
    keys = []
    for x in range(n):
        if coset_key[x] >= 0:
            continue
        coset = sorted(mul[h][x] for h in members)
        key = coset[0]
        keys.append(key)
        for y in coset:
            coset_key[y] = key
    keys.sort()
    coset_id = {k: i for i, k in enumerate(keys)}
    degree = len(keys)
    images = []
    for g in G.generator_indices:
        img = [0] * degree
        for key in keys:
            img[coset_id[key]] = coset_id[coset_key[mul[key][g]]]
        images.append(Permutation(tuple(img)))
    quotient_name = f"{G.name or 'G'}/[{popcount(H)}]"
    return close_generators(degree, images, cap=len(G.elements) + 1,
                            name=quotient_name, degree_cap=max(degree, DEFAULT_DEGREE_CAP))


def parse_group_file(text: str, name_fallback: str | None = None,
                     cap: int = DEFAULT_ORDER_CAP,
                     degree_cap: int = DEFAULT_DEGREE_CAP) -> Group:
    """Parse the group file format: comments, `name`, one `degree`, `gen` lines.

    Exactly one `degree` line is required and it must precede every `gen`
    line.  Errors carry the 1-based line number.
    """
    degree: int | None = None
    gens: list[Permutation] = []
    name = name_fallback
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "name":
            if not rest:
                raise GroupParseError(f"line {lineno}: empty name")
            name = rest
        elif keyword == "degree":
            if degree is not None:
                raise GroupParseError(f"line {lineno}: duplicate degree line")
            try:
                degree = int(rest)
            except ValueError:
                raise GroupParseError(f"line {lineno}: bad degree {rest!r}") from None
            if degree < 1:
                raise GroupParseError(f"line {lineno}: degree must be positive")
        elif keyword == "gen":
            if degree is None:
                raise GroupParseError(f"line {lineno}: gen before degree line")
            try:
                gens.append(parse_permutation(rest, degree))
            except GroupParseError as exc:
                raise GroupParseError(f"line {lineno}: {exc}") from None
        else:
            raise GroupParseError(f"line {lineno}: unknown directive {keyword!r}")
    if degree is None:
        raise GroupParseError("missing degree line")
    return close_generators(degree, gens, cap=cap, name=name, degree_cap=degree_cap)
