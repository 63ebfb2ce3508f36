"""Combinatorial invariants: pi_0, normalized homology, Euler characteristic,
pi_1 presentations, simplicial homotopies and pi_n classes of Kan complexes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .constructions import ProductSSet
from .core import (
    SimplexExpr,
    SimplicialMap,
    SSet,
    ValidationReport,
    apply_map,
    enumerate_simplices,
    face,
)
from .errors import RejectedInput, TruncationError
from .kan import kan_report
from .snf import IntMatrix, smith_normal_form

__all__ = [
    "AbelianDecomposition",
    "GroupPresentation",
    "HomotopyCertificate",
    "pi0",
    "boundary_matrix",
    "homology",
    "euler_characteristic",
    "pi1_presentation",
    "abelianize",
    "verify_homotopy",
    "constant_homotopy",
    "projection",
    "pi_n_classes",
]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self, order):
        groups: dict = {}
        for x in order:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def pi0(S: SSet) -> list[list[str]]:
    """Connected components, as lists of vertex names in listing order."""
    vertices = S.nondegenerate(0)
    uf = _UnionFind(vertices)
    for e in S.base_exprs(1):
        uf.union(face(S, 1, e).base, face(S, 0, e).base)
    return uf.classes(vertices)


def boundary_matrix(S: SSet, n: int) -> IntMatrix:
    """Normalized boundary ``C_n -> C_{n-1}``; rows/columns follow listing order.

    Degenerate faces contribute nothing.
    """
    if n < 1:
        raise RejectedInput("boundary_matrix needs n >= 1")
    if n > S.truncation and not S.finite:
        raise TruncationError(f"dimension {n} exceeds truncation {S.truncation}")
    rows = {x: r for r, x in enumerate(S.nondegenerate(n - 1))}
    cols = S.base_exprs(n)
    grid = [[0] * len(cols) for _ in rows]
    for c, x in enumerate(cols):
        for i in range(n + 1):
            f = face(S, i, x)
            if not f.word:
                grid[rows[f.base]][c] += (-1) ** i
    return IntMatrix(len(rows), len(cols), tuple(map(tuple, grid)))


@dataclass(frozen=True)
class AbelianDecomposition:
    """``Z^free_rank + Z/t1 + Z/t2 + ...`` with ``t1 | t2 | ...``."""

    free_rank: int
    torsion: tuple[int, ...] = ()
    reliable: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        text = " + ".join(parts) if parts else "0"
        if not self.reliable:
            text += "  (unreliable: at truncation boundary)"
        return text


def _decompose(generators: int, relations: IntMatrix, reliable: bool = True) -> AbelianDecomposition:
    diag = [d for d in smith_normal_form(relations)[0].diagonal() if d] if relations.rows and relations.cols else []
    return AbelianDecomposition(generators - len(diag), tuple(d for d in diag if d > 1), reliable)


def homology(S: SSet, n: int) -> AbelianDecomposition:
    """``H_n`` of the normalized chain complex.

    For a truncation of an infinite object the top degree is flagged
    unreliable, since the incoming boundary is not known.
    """
    if n < 0:
        raise RejectedInput("degree must be >= 0")
    if n > S.truncation and not S.finite:
        raise TruncationError(f"degree {n} exceeds truncation {S.truncation}")
    reliable = S.finite or n + 1 <= S.truncation
    c_n = len(S.nondegenerate(n))
    rank_out = boundary_matrix(S, n).rank() if n >= 1 and c_n else 0
    if n + 1 <= S.truncation:
        incoming = boundary_matrix(S, n + 1)
    else:
        incoming = IntMatrix.zeros(c_n, 0)
    diag = [d for d in smith_normal_form(incoming)[0].diagonal() if d]
    return AbelianDecomposition(c_n - rank_out - len(diag), tuple(d for d in diag if d > 1), reliable)


def euler_characteristic(S: SSet) -> int:
    if not S.finite:
        raise TruncationError(
            f"{S.name or 'presentation'} is a truncation of an infinite-dimensional object; "
            "its Euler characteristic is undefined"
        )
    return sum((-1) ** n * c for n, c in enumerate(S.counts()))


# ---------------------------------------------------------------------------
# fundamental group


Word = tuple[tuple[str, int], ...]


def _render_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w)


def _free_reduce(w) -> Word:
    out: list[tuple[str, int]] = []
    for g, e in w:
        if out and out[-1][0] == g:
            total = out[-1][1] + e
            out.pop()
            if total:
                out.append((g, total))
        elif e:
            out.append((g, e))
    return tuple(out)


@dataclass
class GroupPresentation:
    generators: list[str]
    relators: list[Word]

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            for g, _ in r:
                if g not in known:
                    raise RejectedInput(f"relator mentions undeclared generator {g!r}")

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(_render_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def simplified(self) -> "GroupPresentation":
        """Tietze moves: drop generators that some relator expresses in the others."""
        gens = list(self.generators)
        rels = [_free_reduce(r) for r in self.relators]
        changed = True
        while changed:
            changed = False
            rels = [r for r in dict.fromkeys(rels) if r]
            for r in rels:
                for pos, (g, e) in enumerate(r):
                    if abs(e) != 1 or sum(1 for h, _ in r if h == g) != 1:
                        continue
                    # r = A g^e B = 1  =>  g = (B A)^-e
                    rest = r[pos + 1:] + r[:pos]
                    value = rest if e == -1 else tuple((h, -k) for h, k in reversed(rest))

                    def subst(w):
                        out = []
                        for h, k in w:
                            if h != g:
                                out.append((h, k))
                            elif k > 0:
                                out.extend(value * k)
                            else:
                                out.extend(tuple((x, -y) for x, y in reversed(value)) * -k)
                        return _free_reduce(out)

                    gens.remove(g)
                    rels = [subst(w) for w in rels if w is not r]
                    changed = True
                    break
                if changed:
                    break
        rels = [r for r in dict.fromkeys(rels) if r]
        return GroupPresentation(gens, rels)


def pi1_presentation(S: SSet, base: str) -> GroupPresentation:
    """Edge-path presentation of ``pi_1(S, base)``.

    Generators are the non-degenerate edges; each non-degenerate 2-simplex
    gives ``d_1 = d_0 . d_2`` (degenerate edges read as 1); each edge of a
    BFS spanning tree from ``base`` (edges tried in name order) is set to 1.
    """
    if not S.has(0, base):
        raise RejectedInput(f"base {base!r} is not a vertex")
    comps = pi0(S)
    if len(comps) > 1:
        raise RejectedInput(f"input is disconnected: components {comps}")
    if S.truncation < 2 and not S.finite:
        raise TruncationError("pi_1 needs the 2-skeleton (truncation >= 2)")
    edges = S.base_exprs(1)
    gens = [e.base for e in edges]

    def gen(e: SimplexExpr) -> Word:
        return () if e.word else ((e.base, 1),)

    relators: list[Word] = []
    for sigma in S.base_exprs(2):
        d0, d1, d2 = (face(S, i, sigma) for i in range(3))
        relators.append(gen(d0) + gen(d2) + tuple((g, -k) for g, k in reversed(gen(d1))))

    incident: dict[str, list[tuple[str, str]]] = {}
    for e in sorted(edges, key=lambda e: e.base):
        src, tgt = face(S, 1, e).base, face(S, 0, e).base
        incident.setdefault(src, []).append((e.base, tgt))
        incident.setdefault(tgt, []).append((e.base, src))
    seen, queue = {base}, deque([base])
    while queue:
        v = queue.popleft()
        for name, w in incident.get(v, []):
            if w not in seen:
                seen.add(w)
                queue.append(w)
                relators.append(((name, 1),))
    return GroupPresentation(gens, relators)


def abelianize(P: GroupPresentation) -> AbelianDecomposition:
    col = {g: c for c, g in enumerate(P.generators)}
    grid = []
    for r in P.relators:
        row = [0] * len(col)
        for g, e in r:
            row[col[g]] += e
        grid.append(row)
    return _decompose(len(col), IntMatrix(len(grid), len(col), tuple(map(tuple, grid))))


# ---------------------------------------------------------------------------
# homotopies


@dataclass
class HomotopyCertificate:
    """``h : S x Delta^1 -> T`` claimed to run from ``f0`` (at vertex 0) to ``f1`` (at vertex 1)."""

    h: SimplicialMap
    f0: SimplicialMap
    f1: SimplicialMap


def _collapsed(vertex: str, n: int) -> SimplexExpr:
    return SimplexExpr(tuple(range(n - 1, -1, -1)), vertex, 0)


def verify_homotopy(cert: HomotopyCertificate) -> ValidationReport:
    """Check ``h``, ``f0``, ``f1`` are maps and ``h o (id x d^1) = f0``, ``h o (id x d^0) = f1``."""
    P = cert.h.source
    if not isinstance(P, ProductSSet):
        return ValidationReport(False, "homotopy source must be a product S x Delta^1")
    if P.right.counts() != (2, 1):
        return ValidationReport(False, "second factor of the homotopy source is not Delta^1")
    for label, F in (("h", cert.h), ("f0", cert.f0), ("f1", cert.f1)):
        r = F.check()
        if not r:
            return ValidationReport(False, f"{label} is not a simplicial map: {r.message}", (label,))
    # d^1 : [0] -> [1] picks vertex 0, d^0 picks vertex 1
    for label, vertex, F in (("d^1", "0", cert.f0), ("d^0", "1", cert.f1)):
        for x in P.left.all_bases():
            lhs = apply_map(cert.h, P.pair(x, _collapsed(vertex, x.dim)))
            rhs = apply_map(F, x)
            if lhs != rhs:
                return ValidationReport(
                    False,
                    f"{label} restriction fails at {x.base}: h gives {lhs}, endpoint gives {rhs}",
                    (label, x.base),
                )
    return ValidationReport(True, "simplicial homotopy from f0 to f1")


def projection(P: ProductSSet, side: int = 0) -> SimplicialMap:
    """Projection of ``S x T`` onto ``S`` (``side=0``) or ``T`` (``side=1``)."""
    target = P.left if side == 0 else P.right
    return SimplicialMap(P, target, {x.key: P.split(x)[side] for x in P.all_bases()})


def constant_homotopy(f: SimplicialMap, P: ProductSSet) -> HomotopyCertificate:
    """``h = f o pr``, a homotopy from ``f`` to itself; ``P`` must be ``source(f) x Delta^1``."""
    pr = projection(P, 0)
    h = SimplicialMap(P, f.target, {x.key: apply_map(f, y) for x, y in pr.items()})
    return HomotopyCertificate(h, f, f)


# ---------------------------------------------------------------------------
# pi_n


def pi_n_classes(
    K: SSet, v: str, n: int, max_dim: int | None = None, cap: int | None = None
) -> tuple[int, list[SimplexExpr]]:
    """Classes of ``n``-simplices with boundary collapsed to ``v``.

    ``a ~ b`` when some ``(n+1)``-simplex has ``d_n = a``, ``d_{n+1} = b``
    and every other face collapsed to ``v``; the transitive closure is
    taken.  ``K`` must pass the Kan check up to ``max_dim`` (default ``n+1``).
    """
    if n < 1:
        raise RejectedInput("pi_n_classes needs n >= 1 (use pi0 for n = 0)")
    if not K.has(0, v):
        raise RejectedInput(f"unknown base vertex {v!r}")
    if n + 1 > K.truncation:
        raise TruncationError(f"pi_{n} needs (n+1)-simplices; truncation is {K.truncation}")
    check_dim = n + 1 if max_dim is None else max_dim
    kwargs = {} if cap is None else {"cap": cap}
    verdict = kan_report(K, check_dim, **kwargs)
    if not verdict.ok:
        raise RejectedInput(
            f"refusing pi_{n}: not Kan up to dimension {check_dim} ({verdict.counterexample} has no filler)"
        )
    low, top = _collapsed(v, n - 1), _collapsed(v, n)
    candidates = [a for a in enumerate_simplices(K, n) if all(f == low for f in K.faces(a))]
    uf = _UnionFind(candidates)
    allowed = set(candidates)
    for faces, omegas in K.by_faces(n + 1).items():
        if all(f == top for f in faces[:n]) and faces[n] in allowed and faces[n + 1] in allowed:
            uf.union(faces[n], faces[n + 1])
    classes = uf.classes(candidates)
    reps = sorted((min(c, key=K.sort_key) for c in classes), key=K.sort_key)
    return len(classes), reps
