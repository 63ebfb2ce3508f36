"""Builders for standard simplicial sets, finite categories and groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .core import SimplexExpr, SSet, ValidationReport, face, normalize_word
from .delta import MonotoneMap
from .errors import RejectedInput

__all__ = [
    "FiniteCategory",
    "FiniteGroup",
    "ProductSSet",
    "standard_simplex",
    "boundary",
    "horn",
    "sphere",
    "point",
    "product",
    "nerve",
    "bg",
    "monotone_to_expr",
    "validate_category",
    "validate_group",
    "cyclic_group",
    "symmetric_group",
    "group_as_category",
    "poset_category",
    "ordinal_category",
    "discrete_category",
]


# ---------------------------------------------------------------------------
# standard simplices and their subcomplexes


def _subset_name(vertices: Sequence[int], p: int) -> str:
    sep = "" if p < 10 else "_"
    return sep.join(str(v) for v in vertices)


def _simplex_data(p: int, keep: Callable[[tuple[int, ...]], bool]):
    simplices: dict[int, list[str]] = {}
    faces = {}
    for n in range(p + 1):
        for subset in itertools.combinations(range(p + 1), n + 1):
            if not keep(subset):
                continue
            name = _subset_name(subset, p)
            simplices.setdefault(n, []).append(name)
            if n:
                faces[(n, name)] = tuple(
                    SimplexExpr((), _subset_name(subset[:k] + subset[k + 1:], p), n - 1)
                    for k in range(n + 1)
                )
    return simplices, faces


def standard_simplex(p: int, truncation: int | None = None) -> SSet:
    """``Delta^p``: non-degenerate n-simplices are the (n+1)-subsets of ``{0..p}``."""
    if p < 0:
        raise RejectedInput("p must be >= 0")
    simplices, faces = _simplex_data(p, lambda s: True)
    return SSet(p if truncation is None else truncation, simplices, faces, name=f"Delta^{p}")


def point(truncation: int = 0) -> SSet:
    return standard_simplex(0, truncation)


def boundary(p: int, truncation: int | None = None) -> SSet:
    """``Delta^p`` with its top cell removed."""
    if p < 1:
        raise RejectedInput("boundary needs p >= 1")
    simplices, faces = _simplex_data(p, lambda s: len(s) <= p)
    return SSet(p if truncation is None else truncation, simplices, faces, name=f"dDelta^{p}")


def horn(p: int, i: int, truncation: int | None = None) -> SSet:
    """``Lambda^p_i``: the boundary of ``Delta^p`` minus the face opposite vertex ``i``."""
    if p < 1:
        raise RejectedInput("horn needs p >= 1")
    if not 0 <= i <= p:
        raise RejectedInput(f"horn index {i} outside 0..{p}")
    missing = tuple(v for v in range(p + 1) if v != i)

    def keep(s):
        return len(s) <= p and not set(s) >= set(missing)

    simplices, faces = _simplex_data(p, keep)
    return SSet(p if truncation is None else truncation, simplices, faces, name=f"Lambda^{p}_{i}")


def monotone_to_expr(f: MonotoneMap) -> SimplexExpr:
    """The simplex of ``Delta^p`` (``p = f.codomain``) named by a monotone map ``[n] -> [p]``."""
    word = tuple(j for j in range(f.domain - 1, -1, -1) if f.values[j] == f.values[j + 1])
    image = sorted(set(f.values))
    return SimplexExpr(word, _subset_name(image, f.codomain), len(image) - 1)


def sphere(n: int, truncation: int | None = None) -> SSet:
    """Minimal model: one vertex ``v`` and one ``n``-simplex ``sigma`` with collapsed boundary.

    For ``n = 0`` this is the two vertices ``v`` and ``sigma``.
    """
    if n < 0:
        raise RejectedInput("sphere needs n >= 0")
    if n == 0:
        return SSet(0 if truncation is None else truncation, {0: ["v", "sigma"]}, {}, name="S^0")
    collapsed = SimplexExpr(tuple(range(n - 2, -1, -1)), "v", 0)
    return SSet(
        n if truncation is None else truncation,
        {0: ["v"], n: ["sigma"]},
        {(n, "sigma"): (collapsed,) * (n + 1)},
        name=f"S^{n}",
    )


# ---------------------------------------------------------------------------
# products


class ProductSSet(SSet):
    """``S x T``; non-degenerate simplices are pairs whose degeneracy words are disjoint."""

    def __init__(self, left: SSet, right: SSet):
        infinite = [X.truncation for X in (left, right) if not X.finite]
        if infinite:
            N = min(infinite)
        else:
            N = max(min(left.truncation, right.truncation), left.dimension + right.dimension)
        self.left = left.extended(N) if left.finite and left.truncation < N else left
        self.right = right.extended(N) if right.finite and right.truncation < N else right
        N = min(N, self.left.truncation, self.right.truncation)
        self._components: dict[tuple[int, str], tuple[SimplexExpr, SimplexExpr]] = {}
        simplices: dict[int, list[str]] = {}
        for n in range(N + 1):
            for a in self.left.simplices(n):
                for b in self.right.simplices(n):
                    if set(a.word) & set(b.word):
                        continue
                    name = self.pair_name(a, b)
                    simplices.setdefault(n, []).append(name)
                    self._components[(n, name)] = (a, b)
        faces = {}
        for (n, name), (a, b) in self._components.items():
            if n:
                faces[(n, name)] = tuple(
                    self.pair(face(self.left, i, a), face(self.right, i, b)) for i in range(n + 1)
                )
        super().__init__(
            N,
            simplices,
            faces,
            finite=left.finite and right.finite,
            name=f"({left.name or 'S'} x {right.name or 'T'})",
        )

    @staticmethod
    def pair_name(a: SimplexExpr, b: SimplexExpr) -> str:
        return f"({a.compact()};{b.compact()})"

    def pair(self, a: SimplexExpr, b: SimplexExpr) -> SimplexExpr:
        """The simplex ``(a, b)`` in normal form; strips shared degeneracies one at a time."""
        if a.dim != b.dim:
            raise RejectedInput(f"cannot pair a {a.dim}-simplex with a {b.dim}-simplex")
        peeled = []
        while True:
            common = set(a.word) & set(b.word)
            if not common:
                break
            j = max(common)
            a, b = face(self.left, j, a), face(self.right, j, b)
            peeled.append(j)
        return SimplexExpr(normalize_word(peeled), self.pair_name(a, b), a.dim)

    def split(self, e: SimplexExpr) -> tuple[SimplexExpr, SimplexExpr]:
        """Inverse of :meth:`pair`."""
        try:
            a, b = self._components[e.key]
        except KeyError:
            raise RejectedInput(f"{e.base!r} is not a simplex of this product") from None
        return (
            SimplexExpr(normalize_word(e.word + a.word), a.base, a.base_dim),
            SimplexExpr(normalize_word(e.word + b.word), b.base, b.base_dim),
        )


def product(S: SSet, T: SSet) -> ProductSSet:
    return ProductSSet(S, T)


# ---------------------------------------------------------------------------
# categories and groups


@dataclass
class FiniteCategory:
    """A finite category; ``composition[(g, f)]`` is ``g o f`` for non-identity ``f, g``.

    Composites with identities are implicit.
    """

    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    identities: dict[str, str] = field(default_factory=dict)
    composition: dict[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        for x in self.objects:
            if x not in self.identities:
                self.identities[x] = f"id_{x}"
        for x, i in self.identities.items():
            self.morphisms.setdefault(i, (x, x))
        self._identity_set = set(self.identities.values())

    def source(self, f: str) -> str:
        return self.morphisms[f][0]

    def target(self, f: str) -> str:
        return self.morphisms[f][1]

    def is_identity(self, f: str) -> bool:
        return f in self._identity_set

    def non_identities(self) -> list[str]:
        return [f for f in self.morphisms if not self.is_identity(f)]

    def compose(self, g: str, f: str) -> str:
        """``g o f``; requires ``target(f) == source(g)``."""
        if self.target(f) != self.source(g):
            raise RejectedInput(f"{g} o {f} is not composable")
        if self.is_identity(f):
            return g
        if self.is_identity(g):
            return f
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise RejectedInput(f"composition table has no entry for {g} o {f}") from None


def validate_category(C: FiniteCategory) -> ValidationReport:
    for f, (x, y) in C.morphisms.items():
        if x not in C.objects or y not in C.objects:
            return ValidationReport(False, f"morphism {f} has an unknown endpoint", (f,))
    for (g, f), h in C.composition.items():
        for m in (g, f, h):
            if m not in C.morphisms:
                return ValidationReport(False, f"composition mentions unknown morphism {m}", (g, f))
        if C.target(f) != C.source(g):
            return ValidationReport(False, f"table composes non-composable {g} o {f}", (g, f))
        if C.morphisms[h] != (C.source(f), C.target(g)):
            return ValidationReport(False, f"{g} o {f} = {h} has the wrong type", (g, f))
        if C.is_identity(f) and h != g or C.is_identity(g) and h != f:
            return ValidationReport(False, f"unit law fails at {g} o {f}", (g, f))
    arrows = C.non_identities()
    for f in arrows:
        for g in arrows:
            if C.target(f) == C.source(g) and (g, f) not in C.composition:
                return ValidationReport(False, f"composition table is missing {g} o {f}", (g, f))
    for f in arrows:
        for g in arrows:
            if C.target(f) != C.source(g):
                continue
            for h in arrows:
                if C.target(g) != C.source(h):
                    continue
                left = C.compose(h, C.compose(g, f))
                right = C.compose(C.compose(h, g), f)
                if left != right:
                    return ValidationReport(
                        False, f"associativity fails on ({h}, {g}, {f}): {left} != {right}", (h, g, f)
                    )
    return ValidationReport(True, f"category with {len(C.objects)} objects and {len(C.morphisms)} morphisms")


@dataclass
class FiniteGroup:
    """A finite group given by its multiplication table ``product[(a, b)] = a * b``."""

    elements: tuple[str, ...]
    unit: str
    product: dict[tuple[str, str], str]

    def __post_init__(self):
        self.elements = tuple(self.elements)

    def mul(self, a: str, b: str) -> str:
        return self.product[(a, b)]

    def inverse(self, a: str) -> str:
        for b in self.elements:
            if self.product.get((a, b)) == self.unit:
                return b
        raise RejectedInput(f"{a} has no inverse")

    @property
    def order(self) -> int:
        return len(self.elements)


def validate_group(G: FiniteGroup) -> ValidationReport:
    elems = set(G.elements)
    if G.unit not in elems:
        return ValidationReport(False, f"unit {G.unit} is not an element", (G.unit,))
    for a in G.elements:
        for b in G.elements:
            c = G.product.get((a, b))
            if c is None:
                return ValidationReport(False, f"table has no entry for {a}*{b}", (a, b))
            if c not in elems:
                return ValidationReport(False, f"{a}*{b} = {c} is not an element", (a, b))
    for a in G.elements:
        if G.mul(G.unit, a) != a or G.mul(a, G.unit) != a:
            return ValidationReport(False, f"unit law fails at {a}", (a,))
    for a, b, c in itertools.product(G.elements, repeat=3):
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            return ValidationReport(False, f"associativity fails on ({a}, {b}, {c})", (a, b, c))
    for a in G.elements:
        if not any(G.mul(a, b) == G.unit and G.mul(b, a) == G.unit for b in G.elements):
            return ValidationReport(False, f"{a} has no two-sided inverse", (a,))
    return ValidationReport(True, f"group of order {G.order}")


def cyclic_group(n: int) -> FiniteGroup:
    """``Z/n`` on elements ``"0" .. "n-1"``."""
    if n < 1:
        raise RejectedInput("cyclic group needs n >= 1")
    elements = tuple(str(k) for k in range(n))
    table = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
    return FiniteGroup(elements, "0", table)


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` on permutations written in one-line notation; ``(p*q)(x) = p(q(x))``."""
    perms = list(itertools.permutations(range(n)))
    name = {p: "".join(str(v) for v in p) for p in perms}
    table = {
        (name[p], name[q]): name[tuple(p[q[x]] for x in range(n))] for p in perms for q in perms
    }
    return FiniteGroup(tuple(name[p] for p in perms), name[tuple(range(n))], table)


def group_as_category(G: FiniteGroup, obj: str = "*") -> FiniteCategory:
    morphisms = {g: (obj, obj) for g in G.elements}
    composition = {
        (g, f): G.mul(g, f) for g in G.elements for f in G.elements if G.unit not in (g, f)
    }
    return FiniteCategory((obj,), morphisms, {obj: G.unit}, composition)


def poset_category(
    elements: Iterable[Hashable],
    leq: Callable[[Hashable, Hashable], bool],
    name: Callable[[Hashable], str] = str,
) -> FiniteCategory:
    """The category with one arrow ``a<b`` whenever ``a <= b``."""
    elements = list(elements)
    objects = tuple(name(a) for a in elements)
    morphisms, identities = {}, {}
    arrow = {}
    for a in elements:
        for b in elements:
            if a != b and leq(a, b):
                m = f"{name(a)}<{name(b)}"
                morphisms[m] = (name(a), name(b))
                arrow[(a, b)] = m
        identities[name(a)] = f"id_{name(a)}"
    composition = {}
    for (a, b), f in arrow.items():
        for (b2, c), g in arrow.items():
            if b2 == b:
                composition[(g, f)] = arrow[(a, c)]
    return FiniteCategory(objects, morphisms, identities, composition)


def ordinal_category(n: int) -> FiniteCategory:
    """``[n] = {0 < 1 < ... < n}`` as a category."""
    return poset_category(range(n + 1), lambda a, b: a <= b)


def discrete_category(objects: Iterable[str]) -> FiniteCategory:
    return FiniteCategory(tuple(objects), {}, {}, {})


# ---------------------------------------------------------------------------
# nerves


def _chain_name(chain: Sequence[str]) -> str:
    return "|".join(chain)


def _chain_expr(chain: Sequence[str], start: str, is_unit: Callable[[str], bool]) -> SimplexExpr:
    """A chain possibly containing identities, as ``s_word . (chain without identities)``."""
    word = tuple(p for p in range(len(chain) - 1, -1, -1) if is_unit(chain[p]))
    rest = [f for f in chain if not is_unit(f)]
    if not rest:
        return SimplexExpr(word, start, 0)
    return SimplexExpr(word, _chain_name(rest), len(rest))


def _chain_faces(chain, n, compose_fn, source, target, as_expr):
    if n == 1:
        return (as_expr((), target(chain[0])), as_expr((), source(chain[0])))
    out = [as_expr(chain[1:], target(chain[0]))]
    for i in range(1, n):
        merged = chain[: i - 1] + (compose_fn(chain[i], chain[i - 1]),) + chain[i + 1:]
        out.append(as_expr(merged, source(chain[0])))
    out.append(as_expr(chain[:-1], source(chain[0])))
    return tuple(out)


def nerve(C: FiniteCategory, truncation: int) -> SSet:
    """Nerve of ``C`` truncated at ``truncation``.

    Non-degenerate n-simplices are composable chains of ``n`` non-identity
    arrows, named ``f1|f2|...`` (``f1`` first).  A face that composes to an
    identity becomes a degenerate expression.
    """
    arrows = C.non_identities()
    by_source: dict[str, list[str]] = {}
    for f in arrows:
        by_source.setdefault(C.source(f), []).append(f)

    levels: list[list[tuple[str, ...]]] = [[], [(f,) for f in arrows]]
    for n in range(2, truncation + 2):
        levels.append([c + (g,) for c in levels[-1] for g in by_source.get(C.target(c[-1]), [])])
    finite = not levels[truncation + 1] if truncation + 1 < len(levels) else True

    def as_expr(chain, start):
        return _chain_expr(chain, start, C.is_identity)

    simplices = {0: list(C.objects)}
    faces = {}
    for n in range(1, truncation + 1):
        simplices[n] = [_chain_name(c) for c in levels[n]]
        for c in levels[n]:
            faces[(n, _chain_name(c))] = _chain_faces(c, n, C.compose, C.source, C.target, as_expr)
    return SSet(truncation, simplices, faces, finite=finite, name="N(C)")


def bg(G: FiniteGroup, truncation: int) -> SSet:
    """Classifying space ``BG``: n-simplices are n-tuples of group elements.

    Faces drop the first/last entry or multiply neighbours
    (``g_{i+1} * g_i``); entries equal to the unit are degeneracies.
    Non-degenerate simplices are tuples without the unit, named ``g1|g2|...``.
    """
    others = [g for g in G.elements if g != G.unit]
    vertex = "*"

    def as_expr(t):
        word = tuple(p for p in range(len(t) - 1, -1, -1) if t[p] == G.unit)
        rest = [g for g in t if g != G.unit]
        return SimplexExpr(word, _chain_name(rest) if rest else vertex, len(rest))

    simplices = {0: [vertex]}
    faces = {}
    for n in range(1, truncation + 1):
        names = []
        for t in itertools.product(others, repeat=n):
            name = _chain_name(t)
            names.append(name)
            fs = []
            for i in range(n + 1):
                if i == 0:
                    fs.append(as_expr(t[1:]))
                elif i == n:
                    fs.append(as_expr(t[:-1]))
                else:
                    fs.append(as_expr(t[: i - 1] + (G.mul(t[i], t[i - 1]),) + t[i + 1:]))
            faces[(n, name)] = tuple(fs)
        simplices[n] = names
    return SSet(truncation, simplices, faces, finite=not others, name="BG")
