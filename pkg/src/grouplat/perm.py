"""Permutations on {1..n}, stored 0-based as image tuples.

Composition is left-to-right throughout the package: (p * q) sends i to
q(p(i)).  Text I/O is 1-based in both accepted notations (one-line image
words and disjoint cycles).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import GroupParseError


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on {0..degree-1}; images[i] is the image of point i.

    Frozen and orderable: lexicographic comparison of image tuples is the
    canonical element order used everywhere (the identity sorts first).
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise GroupParseError(f"not a bijection on {n} points: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def order(self) -> int:
        k = 1
        p = self
        ident = identity(self.degree)
        while p != ident:
            p = compose(p, self)
            k += 1
        return k

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, 0-based, each rotated to start at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self) -> str:
        """1-based disjoint-cycle notation; '()' for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in cyc) + ")" for cyc in cycs)

    def one_line(self) -> str:
        """1-based whitespace-separated image word, e.g. '2 3 1'."""
        return " ".join(str(i + 1) for i in self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def identity(degree: int) -> Permutation:
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    return Permutation(tuple(range(degree)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: the map i -> q(p(i))."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[i] for i in p.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, img in enumerate(p.images):
        inv[img] = i
    return Permutation(tuple(inv))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based one-line images ('2 3 1') or cycles ('(1 2 3)(4 5)').

    Fixed points may be omitted in cycle form.  Both notations for the same
    map produce equal Permutation values.
    """
    text = text.strip()
    if degree < 1:
        raise GroupParseError(f"degree must be positive, got {degree}")
    if not text:
        raise GroupParseError("empty permutation text")
    if text.startswith("("):
        return _parse_cycles(text, degree)
    return _parse_one_line(text, degree)


def _check_point(value: str, degree: int) -> int:
    try:
        point = int(value)
    except ValueError:
        raise GroupParseError(f"not an integer point: {value!r}") from None
    if not 1 <= point <= degree:
        raise GroupParseError(f"point {point} out of range 1..{degree}")
    return point - 1


def _parse_one_line(text: str, degree: int) -> Permutation:
    parts = text.split()
    if len(parts) != degree:
        raise GroupParseError(
            f"expected {degree} images, got {len(parts)}: {text!r}"
        )
    images = [_check_point(p, degree) for p in parts]
    if len(set(images)) != degree:
        raise GroupParseError(f"repeated image in {text!r}")
    return Permutation(tuple(images))


def _parse_cycles(text: str, degree: int) -> Permutation:
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise GroupParseError(f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        points = [_check_point(tok, degree) for tok in body.split()]
        if len(points) == 0:
            continue  # '()' is the identity cycle
        for pt in points:
            if pt in seen:
                raise GroupParseError(f"point {pt + 1} repeated in {text!r}")
            seen.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return Permutation(tuple(images))


def iter_images(p: Permutation) -> Iterator[int]:
    return iter(p.images)
