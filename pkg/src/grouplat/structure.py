"""Soluble-structure computations on an enumerated group and its lattice:
derived and lower central series, Fitting subgroup, chief series with
per-factor complement counts, the complemented-factor count for the maximum
irredundant generating size, the signed complement product for the Möbius
value at the trivial subgroup, and the structural classifier for groups with
the strong replacement property.

Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import genset
from .errors import NotSolubleError
from .group import Group, indices_of, popcount
from .lattice import SubgroupLattice


def _commutator_subgroup(G: Group, amask: int, bmask: int) -> int:
    """Subgroup generated by all commutators [a, b] with a in A, b in B.

    Seeding with a < b pairs is enough: [b, a] is the inverse of [a, b] and
    closures contain inverses.
    """
    a_members = indices_of(amask)
    b_members = indices_of(bmask)
    seeds = set()
    for a in a_members:
        for b in b_members:
            if a < b:
                c = G.commutator(a, b)
                if c != 0:
                    seeds.add(c)
    return G.closure_mask(sorted(seeds))


def derived_subgroup(G: Group, mask: int) -> int:
    return _commutator_subgroup(G, mask, mask)


def derived_series(G: Group) -> list[int]:
    """Masks of G >= G' >= G'' >= ..., ending where the chain stabilizes."""
    series = [G.full_mask]
    while True:
        nxt = derived_subgroup(G, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt == 1:
            break
    return series


def is_soluble(G: Group) -> bool:
    return derived_series(G)[-1] == 1


def lower_central_series(G: Group, mask: int | None = None) -> list[int]:
    if mask is None:
        mask = G.full_mask
    series = [mask]
    while True:
        nxt = _commutator_subgroup(G, series[-1], mask)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt == 1:
            break
    return series


def is_nilpotent(G: Group, mask: int | None = None) -> bool:
    return lower_central_series(G, mask)[-1] == 1


def fitting(G: Group, L: SubgroupLattice) -> int:
    """Id of the Fitting subgroup: the join of all nilpotent normal subgroups."""
    union = 1
    for sid in L.normal_subgroups():
        if is_nilpotent(G, L.masks[sid]):
            union |= L.masks[sid]
    return L.id_of_mask(G.closure_mask(indices_of(union)))


@dataclass
class ChiefSeries:
    """A maximal chain of normal subgroups with per-factor complement counts.

    ids runs bottom to top; for the trivial group it is the single subgroup
    and the factor lists are empty (n = 0).
    """

    lattice: SubgroupLattice
    ids: list[int]
    factor_orders: list[int]
    k: list[int]
    soluble: bool

    @property
    def n(self) -> int:
        return len(self.ids) - 1

    @property
    def complemented(self) -> list[bool]:
        return [ki >= 1 for ki in self.k]

    def dump_lines(self) -> list[str]:
        """Per-factor lines plus the trailing summary line."""
        out = []
        for i in range(1, len(self.ids)):
            sid = self.ids[i]
            flag = "true" if self.k[i - 1] >= 1 else "false"
            out.append(
                f"{i} {self.lattice.order_of(sid)} {self.factor_orders[i - 1]} "
                f"{self.k[i - 1]} {flag}"
            )
        out.append(
            f"n={self.n} hawkes_mu={hawkes_mu(self)} m_chief={m_via_chief(self)}"
        )
        return out


def chief_series(G: Group, L: SubgroupLattice,
                 rng: random.Random | None = None) -> ChiefSeries:
    """Build a chief series bottom-up inside the normal-subgroup poset.

    At each step the eligible successors are the normal subgroups covering
    the current term (nothing normal strictly between); the canonical-least
    one is taken, or a seeded-random one when `rng` is given.  Reported
    quantities are Jordan-Hölder invariant either way.
    """
    normals = L.normal_subgroups()
    ids = [L.bottom]
    while ids[-1] != L.top:
        current = ids[-1]
        candidates = [nid for nid in normals
                      if nid != current and L.leq(current, nid)]
        eligible = [nid for nid in candidates
                    if not any(mid != nid and L.leq(mid, nid) for mid in candidates)]
        ids.append(eligible[0] if rng is None else rng.choice(eligible))
    factor_orders = [L.order_of(ids[i]) // L.order_of(ids[i - 1])
                     for i in range(1, len(ids))]
    ks = [L.count_chief_complements(ids[i - 1], ids[i])
          for i in range(1, len(ids))]
    return ChiefSeries(lattice=L, ids=ids, factor_orders=factor_orders,
                       k=ks, soluble=is_soluble(G))


def m_via_chief(series: ChiefSeries) -> int:
    """Number of complemented chief factors; equals the maximum irredundant
    generating size for soluble groups."""
    if not series.soluble:
        raise NotSolubleError("complemented-factor count needs a soluble group")
    return sum(1 for ki in series.k if ki >= 1)


def hawkes_mu(series: ChiefSeries) -> int:
    """(-1)^n times the product of the per-factor complement counts; equals
    the Möbius value at the trivial subgroup for soluble groups."""
    if not series.soluble:
        raise NotSolubleError("complement-product formula needs a soluble group")
    prod = 1
    for ki in series.k:
        prod *= ki
    return -prod if series.n % 2 else prod


@dataclass(frozen=True)
class Classification:
    """Structural form of a group with the strong replacement property.

    kind is "ElementaryAbelian" with params (p, rank) -- (0, 0) for the
    trivial group -- or "VtSemidirect" with params (p, q, t, r), or
    "NotClassified" with no params.
    """

    kind: str
    params: tuple[int, ...] = ()

    @property
    def is_classified(self) -> bool:
        return self.kind != "NotClassified"

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(v) for v in self.params)})"


NOT_CLASSIFIED = Classification("NotClassified")


def _is_abelian_mask(G: Group, mask: int) -> bool:
    members = indices_of(mask)
    mul = G.mul
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if mul[a][b] != mul[b][a]:
                return False
    return True


def _elementary_abelian_prime(G: Group, mask: int) -> int | None:
    """The common prime order of all nontrivial members, or None."""
    if not _is_abelian_mask(G, mask):
        return None
    orders = {G.element_orders[i] for i in indices_of(mask) if i != 0}
    if len(orders) != 1:
        return None
    p = orders.pop()
    return p if _is_prime(p) else None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power_exponent(order: int, p: int) -> int | None:
    d = 0
    while order % p == 0:
        order //= p
        d += 1
    return d if order == 1 else None


def charpoly_mod_p(G: Group, M: int, h: int) -> tuple[int, ...]:
    """Characteristic polynomial of conjugation by h on the elementary
    abelian subgroup mask M, as monic coefficients mod p in ascending order.

    The basis is greedy over M's members in canonical order; coordinates are
    found by enumerating the span.  Raises ValueError if M is not elementary
    abelian of prime exponent or h does not normalize it.
    """
    p = _elementary_abelian_prime(G, M)
    if M == 1 or p is None:
        raise ValueError("M must be a nontrivial elementary abelian subgroup")
    members = indices_of(M)
    for m in members:
        if not M & (1 << G.conjugate(m, h)):
            raise ValueError("h does not normalize M")
    basis: list[int] = []
    span = 1
    for m in members:
        if m == 0 or span & (1 << m):
            continue
        basis.append(m)
        span = G.closure_mask(basis)
        if span == M:
            break
    r = len(basis)
    mul = G.mul
    # coordinates of every member relative to the basis
    coords = {0: (0,) * r}
    for j, b in enumerate(basis):
        for x in list(coords):
            vec = coords[x]
            y = x
            for e in range(1, p):
                y = mul[y][b]
                nv = list(vec)
                nv[j] = e
                coords.setdefault(y, tuple(nv))
    matrix = []
    for b in basis:
        matrix.append(coords[G.conjugate(b, h)])
    # columns of the action matrix are the images of the basis vectors
    A = [[matrix[j][i] for j in range(r)] for i in range(r)]
    poly = _charpoly_int(A)
    return tuple(c % p for c in poly)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n))


def _charpoly_int(A: list[list[int]]) -> tuple[int, ...]:
    """det(xI - A) over the integers by cofactor expansion (r <= 8 here)."""
    r = len(A)
    entries = [[(-A[i][j], 1) if i == j else (-A[i][j],)
                for j in range(r)] for i in range(r)]
    memo: dict[tuple[int, ...], tuple[int, ...]] = {}

    def det(rows: tuple[int, ...]) -> tuple[int, ...]:
        if not rows:
            return (1,)
        cached = memo.get(rows)
        if cached is not None:
            return cached
        col = r - len(rows)
        total: tuple[int, ...] = (0,)
        for pos, i in enumerate(rows):
            entry = entries[i][col]
            if entry == (0,):
                continue
            sub = det(rows[:pos] + rows[pos + 1:])
            term = _poly_mul(entry, sub)
            if pos % 2:
                term = tuple(-c for c in term)
            total = _poly_add(total, term)
        memo[rows] = total
        return total

    poly = det(tuple(range(r)))
    return poly


def classify_strong_form(G: Group, L: SubgroupLattice) -> Classification:
    """Decide whether G has one of the two structural forms that carry the
    strong replacement property: an elementary abelian p-group, or a
    semidirect product of t copies of a faithful irreducible module for a
    cyclic group of prime order.
    """
    n = len(G.elements)
    if n == 1:
        return Classification("ElementaryAbelian", (0, 0))
    p = _elementary_abelian_prime(G, G.full_mask)
    if p is not None:
        rank = _prime_power_exponent(n, p)
        return Classification("ElementaryAbelian", (p, rank))
    if not is_soluble(G):
        return NOT_CLASSIFIED
    if L.frattini() != L.bottom:
        return NOT_CLASSIFIED
    fit = fitting(G, L)
    fit_mask = L.masks[fit]
    fit_order = popcount(fit_mask)
    if fit == L.top:
        return NOT_CLASSIFIED
    p = _elementary_abelian_prime(G, fit_mask)
    if p is None:
        return NOT_CLASSIFIED
    d = _prime_power_exponent(fit_order, p)
    q = n // fit_order
    if not _is_prime(q) or q == p:
        return NOT_CLASSIFIED
    complements = L.complements(fit)
    if not complements:
        return NOT_CLASSIFIED
    h = next(i for i in L.members(complements[0]) if i != 0)
    minimal_normals = L.minimal_normal_subgroups()
    union = 1
    poly: tuple[int, ...] | None = None
    for mid in minimal_normals:
        m_mask = L.masks[mid]
        if m_mask & fit_mask != m_mask:
            return NOT_CLASSIFIED
        if all(G.conjugate(m, h) == m for m in L.members(mid)):
            return NOT_CLASSIFIED  # h centralizes this copy: action not faithful
        this_poly = charpoly_mod_p(G, m_mask, h)
        if poly is None:
            poly = this_poly
        elif poly != this_poly:
            return NOT_CLASSIFIED
        union |= m_mask
    if poly is None or G.closure_mask(indices_of(union)) != fit_mask:
        return NOT_CLASSIFIED
    r = len(poly) - 1
    if r == 0 or d % r != 0:
        return NOT_CLASSIFIED
    return Classification("VtSemidirect", (p, q, d // r, r))


@dataclass
class Theorem1Report:
    """The three equivalent-for-soluble predicates, computed independently."""

    soluble: bool
    k_group: bool
    k_witness: int | None
    mobius_1: int
    replacement: bool | None
    replacement_status: str       # exact | inconclusive | skipped
    consistent: bool
    replacement_verdict: genset.ReplacementVerdict | None = field(default=None)

    @property
    def mobius_nonzero(self) -> bool:
        return self.mobius_1 != 0


def theorem1_report(G: Group, L: SubgroupLattice,
                    budget: genset.Budget | None = None,
                    skip_replacement: bool = False,
                    m_override: int | None = None) -> Theorem1Report:
    """Compute the replacement property, the K-group property, and the
    Möbius value at the trivial subgroup, each by its own route, and flag
    whether they agree.

    For soluble groups disagreement indicates an engine bug; for non-soluble
    groups it is a legitimate outcome.  The replacement search can be skipped
    (status "skipped") or die by budget (status "inconclusive"); consistency
    is then judged over the predicates actually available.
    """
    soluble = is_soluble(G)
    kg, witness = L.is_k_group()
    mob = L.mobius[L.bottom]
    replacement: bool | None = None
    verdict = None
    status = "skipped"
    if not skip_replacement:
        if m_override is not None:
            m = m_override
        elif soluble:
            m = m_via_chief(chief_series(G, L))
        else:
            m = None
        verdict = genset.satisfies_replacement(G, m=m, budget=budget)
        replacement = verdict.holds
        status = verdict.status
    predicates = [kg, mob != 0]
    if replacement is not None:
        predicates.append(replacement)
    consistent = all(predicates) or not any(predicates)
    return Theorem1Report(
        soluble=soluble, k_group=kg, k_witness=witness, mobius_1=mob,
        replacement=replacement, replacement_status=status,
        consistent=consistent, replacement_verdict=verdict,
    )
