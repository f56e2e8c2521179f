"""Definition-level brute force over generating sets: minimum and maximum
irredundant generating sizes, enumeration of irredundant generating sets,
and the replacement / strong replacement checkers with verifiable witnesses.

Search space: sequences of element indices in ascending order where each new
element lies outside the closure of its predecessors.  Every irredundant
set, listed in ascending index order, has that property (an element inside
the closure of earlier ones would be redundant), so the space is complete;
completed generating sequences are then tested for full irredundancy.

Budgets count closure computations, not wall time, so runs are reproducible
and "inconclusive" is a first-class, deterministic outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import BudgetExhausted
from .group import Group, indices_of

DEFAULT_BUDGET_NODES = 5_000_000
STRONG_ORDER_CAP = 60
REPLACEMENT_SOLUBLE_ORDER_CAP = 200


@dataclass
class Budget:
    """Node allowance for one search; a node is one closure computation."""

    limit: int | None = DEFAULT_BUDGET_NODES
    used: int = 0

    def charge(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"search budget of {self.limit} nodes exhausted")


@dataclass
class GeneratingSetReport:
    """Outcome of the generating-size searches.

    When status is "inconclusive" the reported m is the best lower bound
    found before the budget ran out and d may be missing.
    """

    d: int | None
    m: int
    m_witness: tuple[int, ...] | None
    status: str
    nodes_used: int = 0


@dataclass
class ReplacementVerdict:
    holds: bool | None
    counterexample: tuple[tuple[int, ...], int] | None
    checked_sequences: int
    status: str
    nodes_used: int = 0


class _Searcher:
    """Shared closure counter plus the completion-set memo for one group.

    completions(H) is the bitmask of elements g with <H, g> = G; replacement
    checks reduce to unions of completion masks, and distinct H masks are few
    (at most the subgroup count), so memoizing them collapses the g-loop.
    """

    def __init__(self, G: Group, budget: Budget | None):
        self.G = G
        self.budget = budget if budget is not None else Budget()
        self._completions: dict[int, int] = {}

    def closure(self, seed: tuple[int, ...]) -> int:
        self.budget.charge()
        return self.G.closure_mask(seed)

    def completions(self, hmask: int, hgens: tuple[int, ...]) -> int:
        cached = self._completions.get(hmask)
        if cached is not None:
            return cached
        G = self.G
        full = G.full_mask
        out = 0
        if hmask == full:
            out = full
        else:
            for g in range(1, len(G.elements)):
                if hmask & (1 << g):
                    continue
                if self.closure(hgens + (g,)) == full:
                    out |= 1 << g
        self._completions[hmask] = out
        return out


def is_generating(G: Group, S: int) -> bool:
    """True iff the element subset mask S generates the whole group."""
    return G.closure_mask(indices_of(S)) == G.full_mask


def is_irredundant(G: Group, S: int) -> bool:
    """True iff no proper subset of S generates the same subgroup as S.

    This is irredundancy of S relative to its own closure; S need not
    generate G.
    """
    members = indices_of(S)
    whole = G.closure_mask(members)
    for i in range(len(members)):
        rest = members[:i] + members[i + 1:]
        if G.closure_mask(rest) == whole:
            return False
    return True


def _independent_sequences(searcher: _Searcher, max_len: int | None
                           ) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (sequence, closure mask) for every ascending sequence whose each
    element lies outside the closure of its predecessors.

    Sequences whose closure is the whole group are yielded but not extended
    (nothing lies outside).  The identity never appears: a set containing it
    is always redundant.
    """
    G = searcher.G
    n = len(G.elements)
    full = G.full_mask

    def rec(start: int, prefix: tuple[int, ...], mask: int
            ) -> Iterator[tuple[tuple[int, ...], int]]:
        for g in range(start, n):
            if mask & (1 << g):
                continue
            seq = prefix + (g,)
            new_mask = searcher.closure(seq)
            yield seq, new_mask
            if new_mask != full and (max_len is None or len(seq) < max_len):
                yield from rec(g + 1, seq, new_mask)

    yield from rec(1, (), 1)


def compute_d(G: Group, budget: Budget | None = None) -> int:
    """Smallest size of a generating set, by ascending-size search with
    predecessor-closure pruning.  Raises BudgetExhausted if the budget dies
    before an answer."""
    if len(G.elements) == 1:
        return 0
    searcher = _Searcher(G, budget)
    n = len(G.elements)
    full = G.full_mask
    for k in range(1, n + 1):
        def rec(start: int, prefix: tuple[int, ...], mask: int) -> bool:
            for g in range(start, n):
                if mask & (1 << g):
                    continue
                seq = prefix + (g,)
                new_mask = searcher.closure(seq)
                if new_mask == full:
                    if len(seq) == k:
                        return True
                    continue  # dead end: generates early, cannot be extended
                if len(seq) < k and rec(g + 1, seq, new_mask):
                    return True
            return False

        if rec(1, (), 1):
            return k
    raise RuntimeError("unreachable: the full element set generates")


def m_bruteforce(G: Group, budget: Budget | None = None) -> GeneratingSetReport:
    """Exhaustive search for the maximum irredundant generating size.

    Also reports the minimum generating size seen (the minimum over all
    completed generating sequences, which includes every minimum generating
    set).  On budget exhaustion the best size found so far is returned as a
    lower bound with status "inconclusive".
    """
    searcher = _Searcher(G, budget)
    if len(G.elements) == 1:
        return GeneratingSetReport(d=0, m=0, m_witness=(), status="exact",
                                   nodes_used=searcher.budget.used)
    full = G.full_mask
    best_m = 0
    witness: tuple[int, ...] | None = None
    d_best: int | None = None
    status = "exact"
    try:
        for seq, mask in _independent_sequences(searcher, max_len=None):
            if mask != full:
                continue
            if d_best is None or len(seq) < d_best:
                d_best = len(seq)
            if len(seq) > best_m and _fully_irredundant(searcher, seq):
                best_m = len(seq)
                witness = seq
    except BudgetExhausted:
        status = "inconclusive"
    return GeneratingSetReport(d=d_best, m=best_m, m_witness=witness,
                               status=status, nodes_used=searcher.budget.used)


def _fully_irredundant(searcher: _Searcher, seq: tuple[int, ...]) -> bool:
    """For a generating sequence: no element may be dropped."""
    full = searcher.G.full_mask
    for i in range(len(seq)):
        if searcher.closure(seq[:i] + seq[i + 1:]) == full:
            return False
    return True


def enumerate_irredundant_generating_sets(G: Group, k: int,
                                          budget: Budget | None = None
                                          ) -> Iterator[tuple[int, ...]]:
    """Every irredundant generating set of size k, exactly once, as an
    ascending index tuple, in lexicographic order."""
    searcher = _Searcher(G, budget)
    full = G.full_mask
    if k == 0:
        if full == 1:
            yield ()
        return
    for seq, mask in _independent_sequences(searcher, max_len=k):
        if len(seq) == k and mask == full and _fully_irredundant(searcher, seq):
            yield seq


def replacement_for_sequence(G: Group, omega: tuple[int, ...], g: int,
                             budget: Budget | None = None) -> int | None:
    """Least position whose replacement by g still generates G, or None.

    g must not be the identity.
    """
    if g == 0:
        raise ValueError("replacement element must not be the identity")
    searcher = _Searcher(G, budget)
    full = G.full_mask
    for i in range(len(omega)):
        replaced = tuple(sorted(omega[:i] + (g,) + omega[i + 1:]))
        if searcher.closure(replaced) == full:
            return i
    return None


def _replacement_over_sizes(G: Group, sizes: list[int], budget: Budget | None
                            ) -> ReplacementVerdict:
    """Core of both replacement checkers: for every irredundant generating
    set of each listed size and every nontrivial g, some single replacement
    must generate G.

    For one set Omega, g can replace position i exactly when g completes the
    closure of Omega minus position i; the union of those completion masks
    must cover every nontrivial element.  The first gap, in canonical order,
    is the counterexample.
    """
    searcher = _Searcher(G, budget)
    full = G.full_mask
    nontrivial = full & ~1
    checked = 0
    try:
        for k in sizes:
            for omega in enumerate_irredundant_generating_sets(G, k, searcher.budget):
                checked += 1
                covered = 0
                for i in range(len(omega)):
                    rest = omega[:i] + omega[i + 1:]
                    hmask = searcher.closure(rest)
                    covered |= searcher.completions(hmask, rest)
                    if covered & nontrivial == nontrivial:
                        break
                gap = nontrivial & ~covered
                if gap:
                    g = (gap & -gap).bit_length() - 1
                    _verify_counterexample(G, omega, g)
                    return ReplacementVerdict(
                        holds=False, counterexample=(omega, g),
                        checked_sequences=checked, status="exact",
                        nodes_used=searcher.budget.used)
    except BudgetExhausted:
        return ReplacementVerdict(holds=None, counterexample=None,
                                  checked_sequences=checked,
                                  status="inconclusive",
                                  nodes_used=searcher.budget.used)
    return ReplacementVerdict(holds=True, counterexample=None,
                              checked_sequences=checked, status="exact",
                              nodes_used=searcher.budget.used)


def _verify_counterexample(G: Group, omega: tuple[int, ...], g: int) -> None:
    """Re-check a claimed counterexample by direct closures."""
    for i in range(len(omega)):
        replaced = omega[:i] + (g,) + omega[i + 1:]
        if G.closure_mask(replaced) == G.full_mask:
            raise AssertionError(
                f"counterexample failed re-verification at position {i}")


def satisfies_replacement(G: Group, m: int | None = None,
                          budget: Budget | None = None) -> ReplacementVerdict:
    """Replacement property over the irredundant generating sets of maximal
    size m.  When m is not supplied it is found by exhaustive search; soluble
    callers normally pass the chief-series value instead."""
    if len(G.elements) == 1:
        return ReplacementVerdict(holds=True, counterexample=None,
                                  checked_sequences=1, status="exact")
    if m is None:
        report = m_bruteforce(G, budget)
        if report.status != "exact":
            return ReplacementVerdict(holds=None, counterexample=None,
                                      checked_sequences=0,
                                      status="inconclusive",
                                      nodes_used=report.nodes_used)
        m = report.m
    return _replacement_over_sizes(G, [m], budget)


def satisfies_strong_replacement(G: Group,
                                 budget: Budget | None = None) -> ReplacementVerdict:
    """Replacement property over every irredundant generating set of every
    size, from the minimum generating size up to the maximum."""
    if len(G.elements) == 1:
        return ReplacementVerdict(holds=True, counterexample=None,
                                  checked_sequences=1, status="exact")
    shared = budget if budget is not None else Budget()
    try:
        report = m_bruteforce(G, shared)
    except BudgetExhausted:
        report = None
    if report is None or report.status != "exact" or report.d is None:
        return ReplacementVerdict(holds=None, counterexample=None,
                                  checked_sequences=0, status="inconclusive",
                                  nodes_used=shared.used)
    return _replacement_over_sizes(G, list(range(report.d, report.m + 1)), shared)


def format_witness(G: Group, omega: tuple[int, ...], g: int | None = None) -> str:
    """Render a witness as element indices with cycle notation, e.g.
    `omega=[3:(1 2), 5:(1 2 3)] g=4:(1 3)`."""
    body = ", ".join(f"{i}:{G.elements[i].cycle_string()}" for i in omega)
    text = f"omega=[{body}]"
    if g is not None:
        text += f" g={g}:{G.elements[g].cycle_string()}"
    return text
