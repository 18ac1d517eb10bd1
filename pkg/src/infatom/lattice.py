"""Antichains of variable indices and their inclusion order.

An :class:`Antichain` is a collection of pairwise-disjoint, non-empty
index brackets, written ``{1,2}{3}``.  Indices are 1-based everywhere an
antichain appears (they are labels, not Python positions).  Each antichain
names one intersection-of-unions term over a variable system; its number
of brackets is the term's covering number.

The order ``leq(a, b)`` holds iff every bracket of ``b`` contains some
bracket of ``a``.  Under it the all-singletons antichain is the unique
bottom element and the single full bracket is the unique top.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import AntichainError, LatticeRangeError

#: Enumeration is capped here; the element count is Bell(n+1) - 1 and
#: explodes quickly (21146 already at n = 8).
MAX_VARIABLES = 8

Bracket = tuple[int, ...]


@dataclass(frozen=True)
class Antichain:
    """Pairwise-disjoint non-empty index brackets in canonical form.

    Canonical form sorts indices inside each bracket and brackets by
    first element.  The empty antichain (no brackets) is representable;
    it arises only as the image of :func:`lift_map` and by convention
    denotes the whole-system term.
    """

    brackets: tuple[Bracket, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for bracket in self.brackets:
            if not bracket:
                raise AntichainError("empty bracket")
            if not all(isinstance(i, int) and i >= 1 for i in bracket):
                raise AntichainError(f"indices must be integers >= 1: {bracket!r}")
            if len(set(bracket)) != len(bracket) or seen & set(bracket):
                raise AntichainError(f"indices repeat across brackets: {self.brackets!r}")
            seen |= set(bracket)

    @classmethod
    def of(cls, *brackets: Iterable[int]) -> "Antichain":
        """Canonicalize and build; ``Antichain.of([1,2],[3])``."""
        canon = tuple(sorted(tuple(sorted(set(b))) for b in brackets))
        return cls(canon)

    @classmethod
    def parse(cls, text: str) -> "Antichain":
        """Parse the ``{1,2}{3}`` syntax (1-based, comma-separated)."""
        text = text.strip()
        if text in ("", "{}"):
            return cls(())
        if not re.fullmatch(r"(\{[^{}]*\})+", text):
            raise AntichainError(f"cannot parse antichain {text!r}")
        brackets = []
        for part in re.findall(r"\{([^{}]*)\}", text):
            toks = [tok.strip() for tok in part.split(",")]
            if any(tok == "" for tok in toks):
                raise AntichainError(f"empty bracket or dangling comma in {text!r}")
            try:
                brackets.append([int(tok) for tok in toks])
            except ValueError as exc:
                raise AntichainError(f"bad bracket {{{part}}}") from exc
        return cls.of(*brackets)

    def __str__(self) -> str:
        if not self.brackets:
            return "{}"
        return "".join("{" + ",".join(str(i) for i in b) + "}" for b in self.brackets)

    @property
    def covering(self) -> int:
        """Number of brackets; the covering number of the labeled term."""
        return len(self.brackets)

    @property
    def indices(self) -> tuple[int, ...]:
        """All indices used, ascending."""
        return tuple(sorted(i for b in self.brackets for i in b))

    @property
    def is_empty(self) -> bool:
        return not self.brackets

    def sort_key(self) -> tuple:
        # Graded by covering (more brackets first, the order-theoretic
        # bottom leads) and index count, then lexicographic; the listing
        # runs from the all-singletons bottom to the full-bracket top.
        return (-len(self.brackets), len(self.indices), self.brackets)


def covering(a: Antichain) -> int:
    """Covering number of the term labeled by ``a`` (bracket count)."""
    return a.covering


def leq(a: Antichain, b: Antichain) -> bool:
    """Order test: every bracket of ``b`` contains some bracket of ``a``."""
    bsets = [set(br) for br in a.brackets]
    return all(any(sa <= set(bb) for sa in bsets) for bb in b.brackets)


def bottom(n: int) -> Antichain:
    """The all-singletons antichain {1}{2}...{n}."""
    return Antichain.of(*[[i] for i in range(1, n + 1)])


def top(n: int) -> Antichain:
    """The single full bracket {1,...,n}."""
    return Antichain.of(range(1, n + 1))


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in _set_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1 :]
        yield [[first]] + partial


@dataclass(frozen=True)
class LatticeView:
    """All antichains over ``{1..n}`` with their order.

    ``elements`` is graded by covering (descending) then lexicographic,
    so the bottom element comes first and the top element last.
    """

    n: int
    elements: tuple[Antichain, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, a: Antichain) -> bool:
        return a in self._index

    def index(self, a: Antichain) -> int:
        return self._index[a]

    def _check(self, a: Antichain) -> None:
        if a.indices and a.indices[-1] > self.n:
            raise AntichainError(f"{a} uses indices beyond n = {self.n}")

    def leq(self, a: Antichain, b: Antichain) -> bool:
        """Order predicate, with an index-range check against ``n``."""
        self._check(a)
        self._check(b)
        return leq(a, b)

    def matrix(self) -> list[list[bool]]:
        """Dense comparability matrix; quadratic, meant for small ``n``."""
        return [[leq(a, b) for b in self.elements] for a in self.elements]

    def hasse_edges(self) -> list[tuple[Antichain, Antichain]]:
        """Cover pairs (a, b): a < b with nothing strictly between."""
        strict_ups: dict[Antichain, list[Antichain]] = {}
        for a in self.elements:
            strict_ups[a] = [b for b in self.elements if a != b and leq(a, b)]
        edges = []
        for a, ups in strict_ups.items():
            for b in ups:
                if not any(c != b and leq(c, b) for c in ups):
                    edges.append((a, b))
        return edges


@lru_cache(maxsize=None)
def enumerate_antichains(n: int) -> LatticeView:
    """Every antichain over ``{1..n}``: a partition of each non-empty subset.

    Counts run 1, 4, 14, 51, 202, ... for n = 1, 2, 3, 4, 5.
    """
    if not isinstance(n, int) or n < 1 or n > MAX_VARIABLES:
        raise LatticeRangeError(f"n must be an integer in [1, {MAX_VARIABLES}], got {n!r}")
    found = []
    universe = list(range(1, n + 1))
    for k in range(1, n + 1):
        for subset in combinations(universe, k):
            for blocks in _set_partitions(subset):
                found.append(Antichain.of(*blocks))
    found.sort(key=Antichain.sort_key)
    return LatticeView(n, tuple(found))


def lift_map(a: Antichain, extended_n: int) -> Antichain:
    """Drop every bracket containing the added index ``extended_n``.

    Used when a system over ``n = extended_n - 1`` variables is extended
    by their joint: the term labeled by ``a`` over the extended system
    equals the term labeled by the image over the original one.  The
    image may be the empty antichain, which denotes the whole-system
    term (the top antichain's row in any parthood table).
    """
    if a.indices and a.indices[-1] > extended_n:
        raise AntichainError(f"{a} uses indices beyond n+1 = {extended_n}")
    kept = [b for b in a.brackets if extended_n not in b]
    return Antichain.of(*kept)
