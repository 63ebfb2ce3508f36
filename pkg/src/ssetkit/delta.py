"""The simplex category: monotone maps [m] -> [n] and words in cofaces/codegeneracies.

A map is stored by its value sequence; words are a derived view used for
factorization and for checking the cosimplicial identities pointwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import RejectedInput

__all__ = [
    "MonotoneMap",
    "Letter",
    "OperatorWord",
    "identity",
    "coface",
    "codegeneracy",
    "compose",
    "monotone_maps",
    "epi_mono_factorize",
    "IdentityReport",
    "verify_cosimplicial_identities",
]


@dataclass(frozen=True)
class MonotoneMap:
    """A non-decreasing map ``[domain] -> [codomain]`` given by its values."""

    domain: int
    codomain: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.domain < 0 or self.codomain < 0:
            raise RejectedInput("ordinals [m] need m >= 0")
        if len(values) != self.domain + 1:
            raise RejectedInput(
                f"map out of [{self.domain}] needs {self.domain + 1} values, got {len(values)}"
            )
        if any(v < 0 or v > self.codomain for v in values):
            raise RejectedInput(f"values {values} leave [{self.codomain}]")
        if any(a > b for a, b in zip(values, values[1:])):
            raise RejectedInput(f"values {values} are not non-decreasing")

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.codomain + 1))

    def __str__(self) -> str:
        return f"[{self.domain}]->[{self.codomain}] {self.values}"


def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def coface(n: int, i: int) -> MonotoneMap:
    """``d^i : [n-1] -> [n]``, the injection skipping ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise RejectedInput(f"coface d^{i} into [{n}] does not exist")
    return MonotoneMap(n - 1, n, tuple(x if x < i else x + 1 for x in range(n)))


def codegeneracy(n: int, i: int) -> MonotoneMap:
    """``s^i : [n+1] -> [n]``, the surjection repeating ``i``."""
    if n < 0 or not 0 <= i <= n:
        raise RejectedInput(f"codegeneracy s^{i} onto [{n}] does not exist")
    return MonotoneMap(n + 1, n, tuple(x if x <= i else x - 1 for x in range(n + 2)))


def compose(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """Return ``f o g`` (apply ``g`` first)."""
    if g.codomain != f.domain:
        raise RejectedInput(
            f"cannot compose: codomain [{g.codomain}] of g differs from domain [{f.domain}] of f"
        )
    return MonotoneMap(g.domain, f.codomain, tuple(f.values[v] for v in g.values))


def monotone_maps(m: int, n: int) -> Iterator[MonotoneMap]:
    """All monotone maps ``[m] -> [n]`` in lexicographic order of values."""
    for values in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield MonotoneMap(m, n, values)


@dataclass(frozen=True)
class Letter:
    """One generator in a word: ``kind`` is ``"d"`` or ``"s"``; ``target`` is its codomain."""

    kind: str
    index: int
    target: int

    @property
    def source(self) -> int:
        return self.target - 1 if self.kind == "d" else self.target + 1

    def as_map(self) -> MonotoneMap:
        if self.kind == "d":
            return coface(self.target, self.index)
        return codegeneracy(self.target, self.index)

    def __str__(self) -> str:
        return f"{self.kind}^{self.index}"


@dataclass(frozen=True)
class OperatorWord:
    """A composite of generators, written outermost first (``letters[-1]`` acts first)."""

    domain: int
    letters: tuple[Letter, ...] = field(default=())

    def __post_init__(self):
        dim = self.domain
        for letter in reversed(self.letters):
            if letter.source != dim:
                raise RejectedInput(f"letter {letter} does not accept [{dim}]")
            dim = letter.target

    @property
    def codomain(self) -> int:
        return self.letters[0].target if self.letters else self.domain

    def evaluate(self) -> MonotoneMap:
        result = identity(self.domain)
        for letter in reversed(self.letters):
            result = compose(letter.as_map(), result)
        return result

    def __str__(self) -> str:
        return "∘".join(str(x) for x in self.letters) if self.letters else "id"


def epi_mono_factorize(f: MonotoneMap) -> OperatorWord:
    """Canonical word ``d^{i_s}...d^{i_1} s^{j_1}...s^{j_t}`` for ``f``.

    The ``i`` are the points of ``[n]`` missed by ``f`` (ascending, so the
    largest is written outermost) and the ``j`` are the ``j`` with
    ``f(j) == f(j+1)``.
    """
    image = sorted(set(f.values))
    collapses = [j for j in range(f.domain) if f.values[j] == f.values[j + 1]]
    missed = [i for i in range(f.codomain + 1) if i not in set(image)]

    letters: list[Letter] = []
    # degeneracies act first; rightmost is the largest index
    dim = f.domain
    s_part = []
    for j in reversed(collapses):
        dim -= 1
        s_part.append(Letter("s", j, dim))
    d_part = []
    for i in missed:
        dim += 1
        d_part.append(Letter("d", i, dim))
    letters = list(reversed(d_part)) + list(reversed(s_part))
    return OperatorWord(f.domain, tuple(letters))


@dataclass
class IdentityReport:
    ok: bool
    n_max: int
    checked: dict[int, int]
    violation: dict | None = None
    violations: list[dict] = field(default_factory=list)

    def __str__(self) -> str:
        counts = ", ".join(f"family {k}: {v}" for k, v in sorted(self.checked.items()))
        if self.ok:
            return f"cosimplicial identities hold up to level {self.n_max} ({counts})"
        v = self.violation
        return (
            f"family {v['family']} violated at level {v['level']} "
            f"(i={v['i']}, j={v['j']}): {v['lhs']} != {v['rhs']}"
        )


FAMILIES = {
    1: "d^j d^i = d^i d^(j-1), i<j",
    2: "s^j d^i = d^i s^(j-1), i<j",
    3: "s^j d^j = id = s^j d^(j+1)",
    4: "s^j d^i = d^(i-1) s^j, i>j+1",
    5: "s^j s^i = s^i s^(j+1), i<=j",
}


def verify_cosimplicial_identities(
    n_max: int,
    coface: Callable[[int, int], MonotoneMap] = coface,
    codegeneracy: Callable[[int, int], MonotoneMap] = codegeneracy,
) -> IdentityReport:
    """Check the five identity families pointwise at levels ``1..n_max``.

    An instance sits at level ``L`` when the largest ordinal it touches is
    ``[L+1]``.  Level 0 would only contain maps into ``[0]``, which are
    constant, so nothing there can fail.  ``coface``/``codegeneracy`` may
    be swapped for tampered tables.
    """
    if n_max < 1:
        raise RejectedInput("n_max must be >= 1")
    d, s = coface, codegeneracy
    checked = {k: 0 for k in FAMILIES}
    violations: list[dict] = []

    def check(family, level, i, j, lhs, rhs):
        checked[family] += 1
        if lhs != rhs:
            violations.append(
                dict(family=family, level=level, i=i, j=j, lhs=lhs.values, rhs=rhs.values)
            )

    for n in range(1, n_max + 1):
        # d^i: [n-1]->[n], d^j: [n]->[n+1]
        for j in range(n + 2):
            for i in range(j):
                check(1, n, i, j, compose(d(n + 1, j), d(n, i)), compose(d(n + 1, i), d(n, j - 1)))
        # d^i: [n]->[n+1], s^j: [n+1]->[n]
        for j in range(n + 1):
            for i in range(j):
                check(2, n, i, j, compose(s(n, j), d(n + 1, i)), compose(d(n, i), s(n - 1, j - 1)))
        for j in range(n + 1):
            ident = identity(n)
            check(3, n, j, j, compose(s(n, j), d(n + 1, j)), ident)
            check(3, n, j + 1, j, compose(s(n, j), d(n + 1, j + 1)), ident)
        for j in range(n + 1):
            for i in range(j + 2, n + 2):
                check(4, n, i, j, compose(s(n, j), d(n + 1, i)), compose(d(n, i - 1), s(n - 1, j)))
        # s^i: [n+1]->[n], s^j: [n]->[n-1]
        m = n - 1
        for j in range(m + 1):
            for i in range(j + 1):
                check(5, n, i, j, compose(s(m, j), s(m + 1, i)), compose(s(m, i), s(m + 1, j + 1)))

    return IdentityReport(
        ok=not violations,
        n_max=n_max,
        checked=checked,
        violation=violations[0] if violations else None,
        violations=violations,
    )
