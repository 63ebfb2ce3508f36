"""The simplicial categories C[k] and the homotopy coherent nerve of a
finite simplicially enriched category (k <= 3)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .constructions import FiniteCategory, ProductSSet, nerve, poset_category
from .core import (
    DEFAULT_CAP,
    SimplexExpr,
    SimplicialMap,
    SSet,
    ValidationReport,
    apply_map,
    enumerate_maps,
    enumerate_simplices,
    normalize_word,
)
from .delta import MonotoneMap, codegeneracy, coface
from .errors import RejectedInput, ResourceError

__all__ = [
    "SimplicialCategory",
    "SimplicialFunctor",
    "path_poset",
    "c_bracket",
    "c_theta",
    "discrete_enrichment",
    "validate_scat",
    "hc_nerve",
    "MAX_K",
]

MAX_K = 3


# ---------------------------------------------------------------------------
# path posets


def _subset_name(U) -> str:
    return "-".join(str(x) for x in sorted(U))


def _path_subsets(i: int, j: int) -> list[frozenset]:
    inner = range(i + 1, j)
    out = []
    for r in range(len(inner) + 1):
        for extra in itertools.combinations(inner, r):
            out.append(frozenset((i, j, *extra)))
    return out


def path_poset(k: int, i: int, j: int) -> FiniteCategory:
    """Subsets of ``{i, ..., j}`` containing ``i`` and ``j``, ordered by inclusion."""
    if not 0 <= i <= k or not 0 <= j <= k:
        raise RejectedInput(f"objects {i}, {j} are not in [{k}]")
    if i > j:
        raise RejectedInput(f"P({i},{j}) is empty for i > j")
    return poset_category(_path_subsets(i, j), lambda U, V: U <= V, _subset_name)


def _poset_expr(chain: list[frozenset]) -> SimplexExpr:
    """A weakly increasing chain of subsets as a simplex of the nerve of a path poset."""
    word = tuple(p for p in range(len(chain) - 2, -1, -1) if chain[p] == chain[p + 1])
    strict = [U for p, U in enumerate(chain) if p == 0 or chain[p - 1] != U]
    if len(strict) == 1:
        return SimplexExpr(word, _subset_name(strict[0]), 0)
    name = "|".join(f"{_subset_name(a)}<{_subset_name(b)}" for a, b in zip(strict, strict[1:]))
    return SimplexExpr(word, name, len(strict) - 1)


def _parse_subset(name: str) -> frozenset:
    return frozenset(int(x) for x in name.split("-"))


def _expr_chain(e: SimplexExpr) -> list[frozenset]:
    """Inverse of :func:`_poset_expr`: the vertex sequence of a simplex."""
    if e.base_dim == 0:
        chain = [_parse_subset(e.base)]
    else:
        arrows = e.base.split("|")
        chain = [_parse_subset(arrows[0].split("<")[0])] + [_parse_subset(a.split("<")[1]) for a in arrows]
    for j in reversed(e.word):
        chain.insert(j, chain[j])
    return chain


# ---------------------------------------------------------------------------
# simplicial categories


@dataclass(eq=False)
class SimplicialCategory:
    """Objects, hom presentations, composition maps ``hom(y,z) x hom(x,y) -> hom(x,z)``
    keyed by ``(x, y, z)``, and an identity vertex per object.

    A missing ``(x, y)`` key means the hom is empty.
    """

    objects: tuple[str, ...]
    homs: dict[tuple[str, str], SSet]
    composition: dict[tuple[str, str, str], SimplicialMap]
    identities: dict[str, str]
    name: str = ""

    def hom(self, x: str, y: str) -> SSet | None:
        return self.homs.get((x, y))

    def compose(self, x: str, y: str, z: str, g: SimplexExpr, f: SimplexExpr) -> SimplexExpr:
        """``g o f`` for simplices ``g`` of hom(y,z) and ``f`` of hom(x,y) of equal dimension."""
        F = self.composition[(x, y, z)]
        return apply_map(F, F.source.pair(g, f))

    def identity(self, x: str, n: int = 0) -> SimplexExpr:
        return SimplexExpr(tuple(range(n - 1, -1, -1)), self.identities[x], 0)

    @property
    def truncation(self) -> int:
        return min((H.truncation for H in self.homs.values()), default=0)


def _union_map(P: ProductSSet, target: SSet) -> SimplicialMap:
    assignment = {}
    for x in P.all_bases():
        a, b = P.split(x)
        chain = [U | V for U, V in zip(_expr_chain(a), _expr_chain(b))]
        assignment[x.key] = _poset_expr(chain)
    return SimplicialMap(P, target, assignment)


def c_bracket(k: int, truncation: int | None = None) -> SimplicialCategory:
    """``C[k]``: objects ``0..k``, ``hom(i,j)`` the nerve of the path poset, composition by union."""
    if k < 0:
        raise RejectedInput("k must be >= 0")
    N = max(k - 1, 1) if truncation is None else truncation
    objs = tuple(str(i) for i in range(k + 1))
    homs = {}
    for i in range(k + 1):
        for j in range(i, k + 1):
            homs[(str(i), str(j))] = nerve(path_poset(k, i, j), N).covering(N)
    composition = {}
    for i in range(k + 1):
        for j in range(i, k + 1):
            for l in range(j, k + 1):
                P = ProductSSet(homs[(str(j), str(l))], homs[(str(i), str(j))])
                composition[(str(i), str(j), str(l))] = _union_map(P, homs[(str(i), str(l))])
    identities = {str(i): str(i) for i in range(k + 1)}
    return SimplicialCategory(objs, homs, composition, identities, name=f"C[{k}]")


@dataclass(eq=False)
class SimplicialFunctor:
    source: SimplicialCategory
    target: SimplicialCategory
    on_objects: dict[str, str]
    on_homs: dict[tuple[str, str], SimplicialMap]

    def key(self):
        return (
            tuple(sorted(self.on_objects.items())),
            tuple(
                (xy, tuple(sorted((k, str(v)) for k, v in F.assignment.items())))
                for xy, F in sorted(self.on_homs.items())
            ),
        )

    def __eq__(self, other):
        return isinstance(other, SimplicialFunctor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def c_theta(theta: MonotoneMap, source: SimplicialCategory | None = None,
            target: SimplicialCategory | None = None) -> SimplicialFunctor:
    """``C[theta] : C[m] -> C[n]`` for ``theta : [m] -> [n]``: ``i -> theta(i)``, ``U -> theta(U)``."""
    source = source or c_bracket(theta.domain)
    target = target or c_bracket(theta.codomain)
    on_objects = {str(i): str(theta(i)) for i in range(theta.domain + 1)}
    on_homs = {}
    for (a, b), H in source.homs.items():
        T = target.homs[(on_objects[a], on_objects[b])]
        assignment = {}
        for x in H.all_bases():
            image = [frozenset(theta(u) for u in U) for U in _expr_chain(x)]
            assignment[x.key] = _poset_expr(image)
        on_homs[(a, b)] = SimplicialMap(H, T, assignment)
    return SimplicialFunctor(source, target, on_objects, on_homs)


def compose_functors(G: SimplicialFunctor, F: SimplicialFunctor) -> SimplicialFunctor:
    """``G o F``."""
    on_objects = {x: G.on_objects[y] for x, y in F.on_objects.items()}
    on_homs = {}
    for (a, b), Fab in F.on_homs.items():
        Gab = G.on_homs[(F.on_objects[a], F.on_objects[b])]
        on_homs[(a, b)] = SimplicialMap(
            Fab.source, Gab.target, {x.key: apply_map(Gab, y) for x, y in Fab.items()}
        )
    return SimplicialFunctor(F.source, G.target, on_objects, on_homs)


def discrete_enrichment(C: FiniteCategory, truncation: int = 0) -> SimplicialCategory:
    """``C`` with each hom-set viewed as a discrete simplicial set."""
    homs = {}
    for x in C.objects:
        for y in C.objects:
            names = [f for f, st in C.morphisms.items() if st == (x, y)]
            if names:
                homs[(x, y)] = SSet(truncation, {0: names}, {}, name=f"{x}->{y}")
    composition = {}
    for (x, y), Hxy in homs.items():
        for z in C.objects:
            Hyz = homs.get((y, z))
            if Hyz is None:
                continue
            P = ProductSSet(Hyz, Hxy)
            assignment = {}
            for e in P.all_bases():
                g, f = P.split(e)
                assignment[e.key] = SimplexExpr((), C.compose(g.base, f.base), 0)
            composition[(x, y, z)] = SimplicialMap(P, homs[(x, z)], assignment)
    return SimplicialCategory(C.objects, homs, composition, dict(C.identities), name="discrete")


def validate_scat(C: SimplicialCategory, truncation: int | None = None) -> ValidationReport:
    """Composition maps are simplicial; associativity and unit laws hold on all
    simplices up to ``truncation`` (default: the smallest hom truncation)."""
    N = C.truncation if truncation is None else truncation
    for x in C.objects:
        H = C.hom(x, x)
        if H is None or not H.has(0, C.identities.get(x, "")):
            return ValidationReport(False, f"object {x} has no identity vertex", (x,))
    for xyz, F in C.composition.items():
        r = F.check()
        if not r:
            return ValidationReport(False, f"composition {xyz} is not simplicial: {r.message}", xyz)
    objs = C.objects
    for x, y in itertools.product(objs, repeat=2):
        Hxy = C.hom(x, y)
        if Hxy is None:
            continue
        for z in objs:
            if C.hom(y, z) is not None and (x, y, z) not in C.composition:
                return ValidationReport(False, f"missing composition for {(x, y, z)}", (x, y, z))
    for n in range(N + 1):
        for x, y in itertools.product(objs, repeat=2):
            Hxy = C.hom(x, y)
            if Hxy is None:
                continue
            for f in enumerate_simplices(Hxy.covering(n), n):
                if C.compose(x, y, y, C.identity(y, n), f) != f:
                    return ValidationReport(False, f"left unit fails at {f}", (x, y, y, str(f)))
                if C.compose(x, x, y, f, C.identity(x, n)) != f:
                    return ValidationReport(False, f"right unit fails at {f}", (x, x, y, str(f)))
        for x, y, z, w in itertools.product(objs, repeat=4):
            H1, H2, H3 = C.hom(x, y), C.hom(y, z), C.hom(z, w)
            if H1 is None or H2 is None or H3 is None:
                continue
            for f in enumerate_simplices(H1.covering(n), n):
                for g in enumerate_simplices(H2.covering(n), n):
                    gf = C.compose(x, y, z, g, f)
                    for h in enumerate_simplices(H3.covering(n), n):
                        left = C.compose(x, z, w, h, gf)
                        right = C.compose(x, y, w, C.compose(y, z, w, h, g), f)
                        if left != right:
                            return ValidationReport(
                                False,
                                f"associativity fails on ({x},{y},{z},{w}) at ({h}, {g}, {f}): {left} != {right}",
                                (x, y, z, w, str(h), str(g), str(f)),
                            )
    return ValidationReport(True, f"simplicial category, laws checked up to dimension {N}")


# ---------------------------------------------------------------------------
# homotopy coherent nerve


def _functors(k: int, Ck: SimplicialCategory, C: SimplicialCategory, cap: int) -> list[SimplicialFunctor]:
    """All simplicial functors ``C[k] -> C``, by brute force over objects then hom maps.

    Pairs ``(i, j)`` are filled in order of increasing ``j - i``; every
    composition square whose three homs are already assigned is checked
    as soon as the last of them is chosen.
    """
    pairs = sorted(((i, j) for i in range(k + 1) for j in range(i + 1, k + 1)), key=lambda p: (p[1] - p[0], p))
    out: list[SimplicialFunctor] = []
    budget = [cap]
    map_cache: dict = {}

    def maps_between(A: SSet, B: SSet):
        key = (id(A), id(B))
        if key not in map_cache:
            map_cache[key] = enumerate_maps(A, B, cap=cap)
        return map_cache[key]

    for objs in itertools.product(C.objects, repeat=k + 1):
        if any(C.hom(objs[i], objs[j]) is None for i, j in pairs):
            continue
        on_objects = {str(i): objs[i] for i in range(k + 1)}
        on_homs: dict[tuple[str, str], SimplicialMap] = {}
        for i in range(k + 1):
            A, B = Ck.hom(str(i), str(i)), C.hom(objs[i], objs[i])
            on_homs[(str(i), str(i))] = SimplicialMap(A, B, {(0, str(i)): SimplexExpr((), C.identities[objs[i]], 0)})

        def compatible(i: int, l: int) -> bool:
            # F(U u V) = F(U) o F(V) for every split point i < j < l
            Fil = on_homs[(str(i), str(l))]
            for j in range(i + 1, l):
                comp_src = Ck.composition[(str(i), str(j), str(l))]
                P = comp_src.source
                Fjl, Fij = on_homs[(str(j), str(l))], on_homs[(str(i), str(j))]
                for e in P.all_bases():
                    a, b = P.split(e)
                    lhs = apply_map(Fil, apply_map(comp_src, e))
                    rhs = C.compose(objs[i], objs[j], objs[l], apply_map(Fjl, a), apply_map(Fij, b))
                    if lhs != rhs:
                        return False
            return True

        def extend(p: int):
            if p == len(pairs):
                out.append(SimplicialFunctor(Ck, C, dict(on_objects), dict(on_homs)))
                return
            i, j = pairs[p]
            A, B = Ck.hom(str(i), str(j)), C.hom(objs[i], objs[j])
            for F in maps_between(A, B):
                budget[0] -= 1
                if budget[0] < 0:
                    raise ResourceError(f"functor enumeration for k={k} exceeded cap {cap}", {"k": k, "found": len(out)})
                on_homs[(str(i), str(j))] = F
                if compatible(i, j):
                    extend(p + 1)
            on_homs.pop((str(i), str(j)), None)

        extend(0)
    return out


def hc_nerve(C: SimplicialCategory, max_k: int = MAX_K, cap: int = DEFAULT_CAP) -> SSet:
    """Homotopy coherent nerve truncated at ``max_k``.

    k-simplices are simplicial functors ``C[k] -> C``; faces and
    degeneracies are precomposition with ``C[d^i]`` and ``C[s^i]``.  Functors
    in the image of some ``C[s^i]`` are degenerate; the rest are listed as
    non-degenerate simplices (objects keep their names, higher ones are
    named ``F<k>_<index>``).
    """
    if not 0 <= max_k <= MAX_K:
        raise RejectedInput(f"max_k must be in 0..{MAX_K}")
    brackets = [c_bracket(k, truncation=max(k - 1, 1)) for k in range(max_k + 1)]
    expr_of: dict[SimplicialFunctor, SimplexExpr] = {}
    simplices: dict[int, list[str]] = {}
    faces: dict[tuple[int, str], tuple[SimplexExpr, ...]] = {}
    previous: list[SimplicialFunctor] = []

    for k in range(max_k + 1):
        functors = _functors(k, brackets[k], C, cap)
        degenerate: dict[SimplicialFunctor, SimplexExpr] = {}
        if k:
            for j in range(k):
                sj = c_theta(codegeneracy(k - 1, j), brackets[k], brackets[k - 1])
                for G in previous:
                    F = compose_functors(G, sj)
                    e = expr_of[G]
                    degenerate.setdefault(F, SimplexExpr(normalize_word((j,) + e.word), e.base, e.base_dim))
        names = []
        for idx, F in enumerate(functors):
            if F in degenerate:
                expr_of[F] = degenerate[F]
                continue
            name = F.on_objects["0"] if k == 0 else f"F{k}_{len(names)}"
            names.append(name)
            expr_of[F] = SimplexExpr((), name, k)
        if k and names:
            cofaces = [c_theta(coface(k, i), brackets[k - 1], brackets[k]) for i in range(k + 1)]
            for F in functors:
                e = expr_of[F]
                if e.word:
                    continue
                faces[(k, e.base)] = tuple(expr_of[compose_functors(F, di)] for di in cofaces)
        simplices[k] = names
        previous = functors
    return SSet(max_k, simplices, faces, finite=False, name="N_hc(C)")
