"""Finitely presented simplicial sets.

Every simplex is written as ``s_{i1} ... s_{it} . x`` with ``i1 > ... > it``
and ``x`` non-degenerate (Eilenberg-Zilber normal form).  A presentation
stores only the non-degenerate simplices and their face tuples; faces of
degenerate simplices and all degeneracies are computed by rewriting with
the simplicial identities.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import RejectedInput, ResourceError, TruncationError

__all__ = [
    "SimplexExpr",
    "SSet",
    "SimplicialMap",
    "ValidationReport",
    "normalize_word",
    "face",
    "degenerate",
    "validate",
    "enumerate_simplices",
    "enumerate_maps",
    "apply_map",
    "identity_map",
    "compose_maps",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 2_000_000

Key = tuple[int, str]


@dataclass(frozen=True)
class SimplexExpr:
    """A degeneracy word applied to a named non-degenerate simplex."""

    word: tuple[int, ...]
    base: str
    base_dim: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.word)

    @property
    def key(self) -> Key:
        return (self.base_dim, self.base)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)

    def __str__(self) -> str:
        if not self.word:
            return self.base
        return " ".join(f"s{i}" for i in self.word) + " . " + self.base

    def compact(self) -> str:
        """Whitespace-free rendering, used inside generated simplex names."""
        if not self.word:
            return self.base
        return "".join(f"s{i}" for i in self.word) + ":" + self.base

    @classmethod
    def of(cls, base: str, base_dim: int, *word: int) -> "SimplexExpr":
        return cls(tuple(word), base, base_dim)


def normalize_word(raw: Sequence[int], base_dim: int | None = None) -> tuple[int, ...]:
    """Rewrite ``s_{a1} ... s_{ak}`` into strictly decreasing form.

    Uses ``s_i s_j = s_{j+1} s_i`` for ``i <= j``.  When ``base_dim`` is
    given, each index is checked against the dimension it acts on.
    """
    word = [int(i) for i in raw]
    if base_dim is not None:
        dim = base_dim
        for i in reversed(word):
            if not 0 <= i <= dim:
                raise RejectedInput(f"s_{i} is not defined on {dim}-simplices")
            dim += 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a <= b:
                word[k], word[k + 1] = b + 1, a
                changed = True
    return tuple(word)


@dataclass
class ValidationReport:
    ok: bool
    message: str
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return ("PASS: " if self.ok else "FAIL: ") + self.message


class SSet:
    """A truncated finite presentation of a simplicial set.

    ``simplices`` maps a dimension to the names of its non-degenerate
    simplices; ``faces`` maps ``(dim, name)`` (``dim >= 1``) to the tuple
    ``(d_0 x, ..., d_n x)``.  ``finite`` records that no non-degenerate
    simplices exist above ``truncation`` (a complete presentation, as
    opposed to a truncation of something infinite such as a nerve).
    """

    def __init__(
        self,
        truncation: int,
        simplices: Mapping[int, Iterable[str]],
        faces: Mapping[Key, Sequence[SimplexExpr]],
        finite: bool = True,
        name: str = "",
    ):
        if truncation < 0:
            raise RejectedInput("truncation must be >= 0")
        self.truncation = int(truncation)
        self.finite = bool(finite)
        self.name = name
        self._simplices: dict[int, tuple[str, ...]] = {}
        for dim, names in simplices.items():
            names = tuple(names)
            if not names:
                continue
            if dim < 0 or dim > self.truncation:
                raise RejectedInput(
                    f"non-degenerate simplices in dimension {dim} lie outside truncation {self.truncation}"
                )
            if len(set(names)) != len(names):
                raise RejectedInput(f"duplicate simplex names in dimension {dim}")
            self._simplices[dim] = names
        self._rank: dict[Key, int] = {
            (d, x): r for d, names in self._simplices.items() for r, x in enumerate(names)
        }
        self._faces: dict[Key, tuple[SimplexExpr, ...]] = {}
        for key, fs in faces.items():
            if key not in self._rank:
                raise RejectedInput(f"face table entry for unknown simplex {key[1]!r} (dim {key[0]})")
            self._faces[key] = tuple(fs)
        for (d, x) in self._rank:
            if d == 0:
                continue
            fs = self._faces.get((d, x))
            if fs is None:
                raise RejectedInput(f"simplex {x!r} of dimension {d} has no faces")
            if len(fs) != d + 1:
                raise RejectedInput(f"simplex {x!r} needs {d + 1} faces, got {len(fs)}")
            for i, f in enumerate(fs):
                self.check_expr(f, d - 1, what=f"d_{i} {x}")
        self._cache: dict = {}

    # -- structure -------------------------------------------------------

    def nondegenerate(self, n: int) -> tuple[str, ...]:
        return self._simplices.get(n, ())

    def base_exprs(self, n: int) -> list[SimplexExpr]:
        return [SimplexExpr((), x, n) for x in self.nondegenerate(n)]

    def all_bases(self) -> list[SimplexExpr]:
        return [e for n in range(self.truncation + 1) for e in self.base_exprs(n)]

    def faces_of(self, dim: int, name: str) -> tuple[SimplexExpr, ...]:
        try:
            return self._faces[(dim, name)]
        except KeyError:
            raise RejectedInput(f"{name!r} is not a non-degenerate {dim}-simplex with faces") from None

    def has(self, dim: int, name: str) -> bool:
        return (dim, name) in self._rank

    def check_expr(self, e: SimplexExpr, dim: int | None = None, what: str = "expression") -> None:
        if not self.has(e.base_dim, e.base):
            raise RejectedInput(f"{what}: unknown {e.base_dim}-simplex {e.base!r}")
        if dim is not None and e.dim != dim:
            raise RejectedInput(f"{what}: {e} has dimension {e.dim}, expected {dim}")
        if normalize_word(e.word, e.base_dim) != e.word:
            raise RejectedInput(f"{what}: degeneracy word of {e} is not canonical")

    @property
    def dimension(self) -> int:
        """Top dimension carrying a non-degenerate simplex (-1 if empty)."""
        return max(self._simplices, default=-1)

    def counts(self, upto: int | None = None) -> tuple[int, ...]:
        top = self.dimension if upto is None else upto
        return tuple(len(self.nondegenerate(n)) for n in range(top + 1))

    def sort_key(self, e: SimplexExpr):
        """Canonical order: more degenerate first, then word, then listing order of the base."""
        return (e.dim, -len(e.word), e.word, e.base_dim, self._rank.get(e.key, -1), e.base)

    def extended(self, truncation: int) -> "SSet":
        """Same presentation with a larger truncation; only for complete presentations."""
        if truncation < self.truncation:
            raise RejectedInput("extended() cannot lower the truncation")
        if not self.finite:
            raise TruncationError(
                f"{self.name or 'presentation'} is a truncation at {self.truncation}; it cannot be extended"
            )
        return SSet(truncation, self._simplices, self._faces, finite=True, name=self.name)

    def covering(self, n: int) -> "SSet":
        """``self`` if ``n <= truncation``; a complete presentation is extended to ``n``."""
        if n <= self.truncation:
            return self
        if self.finite:
            return self.extended(n)
        raise TruncationError(f"dimension {n} exceeds truncation {self.truncation}")

    def __eq__(self, other):
        if not isinstance(other, SSet):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self._simplices == other._simplices
            and self._faces == other._faces
        )

    def __hash__(self):
        return hash((self.truncation, tuple(sorted((d, len(v)) for d, v in self._simplices.items()))))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<SSet{label} truncation={self.truncation} counts={self.counts()}>"

    # -- operators -------------------------------------------------------

    def face(self, i: int, e: SimplexExpr) -> SimplexExpr:
        return face(self, i, e)

    def degenerate(self, i: int, e: SimplexExpr) -> SimplexExpr:
        return degenerate(self, i, e)

    def faces(self, e: SimplexExpr) -> tuple[SimplexExpr, ...]:
        return tuple(face(self, i, e) for i in range(e.dim + 1))

    def simplices(self, n: int) -> list[SimplexExpr]:
        return enumerate_simplices(self, n)

    def by_faces(self, n: int) -> dict[tuple[SimplexExpr, ...], list[SimplexExpr]]:
        """Index of all ``n``-simplices by their face tuple (``n >= 1``)."""
        cache_key = ("by_faces", n)
        if cache_key not in self._cache:
            index: dict[tuple[SimplexExpr, ...], list[SimplexExpr]] = {}
            for e in enumerate_simplices(self, n):
                index.setdefault(self.faces(e), []).append(e)
            self._cache[cache_key] = index
        return self._cache[cache_key]

    def vertex(self, name: str) -> SimplexExpr:
        if not self.has(0, name):
            raise RejectedInput(f"unknown vertex {name!r}")
        return SimplexExpr((), name, 0)

    def expr(self, name: str, dim: int, *word: int) -> SimplexExpr:
        """Build and check ``s_word . name`` where ``name`` is a ``dim``-simplex."""
        e = SimplexExpr(tuple(word), name, dim)
        self.check_expr(e)
        return e


def face(S: SSet, i: int, e: SimplexExpr) -> SimplexExpr:
    """``d_i e``, pushing ``d_i`` through the degeneracy word."""
    n = e.dim
    if n < 1:
        raise RejectedInput(f"vertex {e} has no faces")
    if not 0 <= i <= n:
        raise RejectedInput(f"face index {i} out of range for a {n}-simplex")
    prefix: list[int] = []
    word = e.word
    for pos, j in enumerate(word):
        if i < j:
            prefix.append(j - 1)
        elif i == j or i == j + 1:
            return SimplexExpr(normalize_word(prefix + list(word[pos + 1:])), e.base, e.base_dim)
        else:
            prefix.append(j)
            i -= 1
    f = S.faces_of(e.base_dim, e.base)[i]
    return SimplexExpr(normalize_word(prefix + list(f.word)), f.base, f.base_dim)


def degenerate(S: SSet, i: int, e: SimplexExpr) -> SimplexExpr:
    """``s_i e``; fails above the truncation."""
    if not 0 <= i <= e.dim:
        raise RejectedInput(f"degeneracy index {i} out of range for a {e.dim}-simplex")
    if e.dim + 1 > S.truncation:
        raise TruncationError(f"s_{i} of a {e.dim}-simplex exceeds truncation {S.truncation}")
    return SimplexExpr(normalize_word((i,) + e.word), e.base, e.base_dim)


def enumerate_simplices(S: SSet, n: int) -> list[SimplexExpr]:
    """All ``n``-simplices of ``S`` in canonical order."""
    if n < 0:
        raise RejectedInput("dimension must be >= 0")
    if n > S.truncation:
        raise TruncationError(f"dimension {n} exceeds truncation {S.truncation}")
    cache_key = ("simplices", n)
    if cache_key not in S._cache:
        out = []
        for m in range(n + 1):
            for word in itertools.combinations(range(n - 1, -1, -1), n - m):
                out.extend(SimplexExpr(word, x, m) for x in S.nondegenerate(m))
        out.sort(key=S.sort_key)
        S._cache[cache_key] = out
    return list(S._cache[cache_key])


def _face_identity_violation(S: SSet, e: SimplexExpr):
    n = e.dim
    for j in range(1, n + 1):
        dj = face(S, j, e)
        for i in range(j):
            lhs = face(S, i, dj)
            rhs = face(S, j - 1, face(S, i, e))
            if lhs != rhs:
                return i, j, lhs, rhs
    return None


def validate(S: SSet, samples: int = 200, seed: int = 0) -> ValidationReport:
    """Check ``d_i d_j = d_{j-1} d_i`` on every non-degenerate simplex.

    The other identity families hold by construction of the rewriting;
    they are spot-checked on ``samples`` random simplices.
    """
    for n in range(2, S.truncation + 1):
        for x in S.base_exprs(n):
            bad = _face_identity_violation(S, x)
            if bad:
                i, j, lhs, rhs = bad
                return ValidationReport(
                    False,
                    f"d_{i} d_{j} {x.base} = {lhs} but d_{j - 1} d_{i} {x.base} = {rhs}",
                    (x.base, i, j),
                )
    rng = random.Random(seed)
    for _ in range(samples if S.truncation >= 1 else 0):
        n = rng.randint(0, S.truncation - 1)
        pool = enumerate_simplices(S, n)
        if not pool:
            continue
        e = rng.choice(pool)
        for j in range(n + 1):
            se = degenerate(S, j, e)
            if face(S, j, se) != e or face(S, j + 1, se) != e:
                return ValidationReport(False, f"d_j s_j != id on {e}", (str(e), j, j))
            for i in range(n + 2):
                if i < j and face(S, i, se) != degenerate(S, j - 1, face(S, i, e)):
                    return ValidationReport(False, f"d_i s_j identity fails on {e}", (str(e), i, j))
                if i > j + 1 and face(S, i, se) != degenerate(S, j, face(S, i - 1, e)):
                    return ValidationReport(False, f"d_i s_j identity fails on {e}", (str(e), i, j))
            if n + 2 <= S.truncation:
                for i in range(j + 1):
                    if degenerate(S, i, se) != degenerate(S, j + 1, degenerate(S, i, e)):
                        return ValidationReport(False, f"s_i s_j identity fails on {e}", (str(e), i, j))
    return ValidationReport(True, f"simplicial identities hold up to dimension {S.truncation}")


@dataclass(eq=False)
class SimplicialMap:
    """A map given on non-degenerate simplices of ``source``."""

    source: SSet
    target: SSet
    assignment: dict[Key, SimplexExpr] = field(default_factory=dict)

    def __call__(self, e: SimplexExpr) -> SimplexExpr:
        return apply_map(self, e)

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def check(self) -> ValidationReport:
        """Verify dimensions and the commuting squares ``F(d_i x) = d_i F(x)``."""
        for x in self.source.all_bases():
            if x.key not in self.assignment:
                return ValidationReport(False, f"no image for {x.base}", (x.base,))
            y = self.assignment[x.key]
            try:
                self.target.check_expr(y, x.dim)
            except RejectedInput as exc:
                return ValidationReport(False, str(exc), (x.base,))
        for x in self.source.all_bases():
            for i in range(x.dim + 1 if x.dim else 0):
                lhs = apply_map(self, face(self.source, i, x))
                rhs = face(self.target, i, self.assignment[x.key])
                if lhs != rhs:
                    return ValidationReport(
                        False, f"F(d_{i} {x.base}) = {lhs} but d_{i} F({x.base}) = {rhs}", (x.base, i)
                    )
        return ValidationReport(True, "simplicial map")

    def items(self):
        for x in self.source.all_bases():
            yield x, self.assignment[x.key]


def apply_map(F: SimplicialMap, e: SimplexExpr) -> SimplexExpr:
    """``F(w . x) = w . F(x)``, renormalized."""
    try:
        y = F.assignment[e.key]
    except KeyError:
        raise RejectedInput(f"map has no value on {e.base!r} (dim {e.base_dim})") from None
    return SimplexExpr(normalize_word(e.word + y.word), y.base, y.base_dim)


def identity_map(S: SSet) -> SimplicialMap:
    return SimplicialMap(S, S, {x.key: x for x in S.all_bases()})


def compose_maps(G: SimplicialMap, F: SimplicialMap) -> SimplicialMap:
    """``G o F``."""
    return SimplicialMap(F.source, G.target, {x.key: apply_map(G, y) for x, y in F.items()})


def enumerate_maps(A: SSet, B: SSet, cap: int = DEFAULT_CAP) -> list[SimplicialMap]:
    """All simplicial maps ``A -> B``, by backtracking in increasing dimension.

    A complete (``finite``) target is extended as far as the source needs.

    A candidate image for a non-degenerate ``x`` must have faces equal to
    the images of the faces of ``x``, so candidates are looked up in the
    face index of ``B`` rather than scanned.
    """
    order = A.all_bases()
    if order:
        B = B.covering(order[-1].dim)
    results: list[SimplicialMap] = []
    assignment: dict[Key, SimplexExpr] = {}
    visited = 0

    def image(e: SimplexExpr) -> SimplexExpr:
        y = assignment[e.key]
        return SimplexExpr(normalize_word(e.word + y.word), y.base, y.base_dim)

    def candidates(x: SimplexExpr) -> list[SimplexExpr]:
        if x.dim == 0:
            return enumerate_simplices(B, 0)
        want = tuple(image(f) for f in A.faces_of(x.dim, x.base))
        return B.by_faces(x.dim).get(want, [])

    def extend(k: int) -> None:
        nonlocal visited
        if k == len(order):
            results.append(SimplicialMap(A, B, dict(assignment)))
            return
        x = order[k]
        for y in candidates(x):
            visited += 1
            if visited > cap:
                raise ResourceError(
                    f"map enumeration exceeded cap {cap}",
                    {"maps_found": len(results), "assigned": k},
                )
            assignment[x.key] = y
            extend(k + 1)
        assignment.pop(x.key, None)

    extend(0)
    return results


def random_simplex(S: SSet, rng: random.Random, n: int | None = None) -> SimplexExpr:
    """A uniformly chosen simplex of dimension ``n`` (random dimension if omitted)."""
    if n is None:
        n = rng.randint(0, S.truncation)
    return rng.choice(enumerate_simplices(S, n))


def iter_all_simplices(S: SSet, upto: int | None = None) -> Iterator[SimplexExpr]:
    top = S.truncation if upto is None else upto
    for n in range(top + 1):
        yield from enumerate_simplices(S, n)
