"""Horns, filler search, Kan / quasi-category verdicts and the edge calculus.

A horn ``Lambda^n_i -> S`` is represented by its ``n`` faces (indexed by
``k != i``) subject to the compatibility equations
``d_j x_k = d_{k-1} x_j`` for ``j < k``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .core import DEFAULT_CAP, SimplexExpr, SSet, enumerate_simplices, face, normalize_word
from .errors import NotKanError, RejectedInput, ResourceError

__all__ = [
    "HornMap",
    "FillerCertificate",
    "KanReport",
    "make_horn",
    "check_horn",
    "iter_horns",
    "find_fillers",
    "kan_report",
    "compose_edges",
    "edge_inverse",
    "edge_right_inverse",
]


@dataclass(frozen=True)
class HornMap:
    n: int
    i: int
    faces: tuple[SimplexExpr, ...]

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n + 1) if k != self.i)

    def face(self, k: int) -> SimplexExpr:
        if k == self.i:
            raise RejectedInput(f"face {k} is the missing face of this horn")
        return self.faces[k if k < self.i else k - 1]

    @property
    def inner(self) -> bool:
        return 0 < self.i < self.n

    def __str__(self) -> str:
        body = ", ".join(f"d{k} = {x}" for k, x in zip(self.positions, self.faces))
        return f"Lambda^{self.n}_{self.i} [{body}]"


def make_horn(n: int, i: int, faces: dict[int, SimplexExpr] | Sequence[SimplexExpr]) -> HornMap:
    """Build a horn from ``{k: face}`` or from the faces listed in order of ``k != i``."""
    if n < 1 or not 0 <= i <= n:
        raise RejectedInput(f"no horn Lambda^{n}_{i}")
    if isinstance(faces, dict):
        if set(faces) != set(range(n + 1)) - {i}:
            raise RejectedInput(f"horn Lambda^{n}_{i} needs faces at {sorted(set(range(n + 1)) - {i})}")
        faces = [faces[k] for k in range(n + 1) if k != i]
    faces = tuple(faces)
    if len(faces) != n:
        raise RejectedInput(f"horn Lambda^{n}_{i} needs {n} faces, got {len(faces)}")
    return HornMap(n, i, faces)


def check_horn(S: SSet, h: HornMap) -> None:
    """Raise ``RejectedInput`` unless ``h`` is a compatible horn in ``S``."""
    for k, x in zip(h.positions, h.faces):
        S.check_expr(x, h.n - 1, what=f"horn face d{k}")
    if h.n < 2:
        return
    for k in h.positions:
        for j in h.positions:
            if j >= k:
                break
            lhs = face(S, j, h.face(k))
            rhs = face(S, k - 1, h.face(j))
            if lhs != rhs:
                raise RejectedInput(
                    f"incompatible horn: d{j}(x{k}) = {lhs} but d{k - 1}(x{j}) = {rhs}"
                )


@dataclass(frozen=True)
class FillerCertificate:
    filler: SimplexExpr
    horn: HornMap

    def verify(self, S: SSet) -> bool:
        return self.filler.dim == self.horn.n and all(
            face(S, k, self.filler) == x for k, x in zip(self.horn.positions, self.horn.faces)
        )

    def __str__(self) -> str:
        return f"{self.filler} fills {self.horn}"


def iter_horns(S: SSet, n: int, i: int) -> Iterator[HornMap]:
    """Every compatible horn ``Lambda^n_i -> S``, in lexicographic canonical order."""
    S = S.covering(n - 1)
    pool = enumerate_simplices(S, n - 1)
    positions = [k for k in range(n + 1) if k != i]
    if n == 1:
        for x in pool:
            yield HornMap(n, i, (x,))
        return
    faces_of = {x: S.faces(x) for x in pool}
    chosen: list[SimplexExpr] = []

    def extend(p: int):
        if p == len(positions):
            yield HornMap(n, i, tuple(chosen))
            return
        k = positions[p]
        for x in pool:
            fx = faces_of[x]
            if all(fx[j] == faces_of[chosen[q]][k - 1] for q, j in enumerate(positions[:p])):
                chosen.append(x)
                yield from extend(p + 1)
                chosen.pop()

    yield from extend(0)


def find_fillers(S: SSet, h: HornMap) -> list[FillerCertificate]:
    """All fillers of ``h``, by scanning every ``n``-simplex of ``S``."""
    S = S.covering(h.n)
    check_horn(S, h)
    out = []
    for e in enumerate_simplices(S, h.n):
        if all(face(S, k, e) == x for k, x in zip(h.positions, h.faces)):
            out.append(FillerCertificate(e, h))
    return out


@dataclass
class KanReport:
    ok: bool
    max_dim: int
    inner_only: bool
    horns_checked: int
    min_fillers: int | None
    max_fillers: int | None
    counterexample: HornMap | None = None
    per_horn_type: dict[tuple[int, int], tuple[int, int, int]] = field(default_factory=dict)

    def __str__(self) -> str:
        kind = "inner horns" if self.inner_only else "horns"
        lines = [
            f"{'PASS' if self.ok else 'FAIL'}: {kind} up to dimension {self.max_dim}",
            f"horns checked: {self.horns_checked}",
            f"filler multiplicity: min {self.min_fillers} max {self.max_fillers}",
        ]
        if self.counterexample is not None:
            lines.append(f"counterexample: {self.counterexample} has no filler")
        return "\n".join(lines)


def _scan(S: SSet, n: int, i: int, cap: int):
    """Scan every horn of type (n, i); stop at its first unfillable horn."""
    counts: dict[tuple, int] = {}
    for faces, fillers in S.by_faces(n).items():
        key = faces[:i] + faces[i + 1:]
        counts[key] = counts.get(key, 0) + len(fillers)
    checked, lo, hi = 0, None, None
    for h in iter_horns(S, n, i):
        checked += 1
        if checked > cap:
            raise ResourceError(
                f"horn scan Lambda^{n}_{i} exceeded cap {cap}", {"n": n, "i": i, "horns_checked": checked - 1}
            )
        c = counts.get(h.faces, 0)
        lo = c if lo is None else min(lo, c)
        hi = c if hi is None else max(hi, c)
        if c == 0:
            return checked, lo, hi, h
    return checked, lo, hi, None


def kan_report(
    S: SSet, max_dim: int, inner_only: bool = False, cap: int = DEFAULT_CAP, jobs: int = 1
) -> KanReport:
    """Horn-filling verdict for ``1 <= n <= max_dim`` (only ``0 < i < n`` if ``inner_only``).

    Each horn type ``(n, i)`` is scanned independently (in parallel when
    ``jobs > 1``) and the results are merged in ``(n, i)`` order, so the
    report does not depend on ``jobs``.
    """
    S = S.covering(max_dim)
    types = [
        (n, i)
        for n in range(1, max_dim + 1)
        for i in range(n + 1)
        if not inner_only or 0 < i < n
    ]
    if jobs > 1 and len(types) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan, [S] * len(types), *zip(*types), [cap] * len(types)))
    else:
        results = [_scan(S, n, i, cap) for n, i in types]

    report = KanReport(True, max_dim, inner_only, 0, None, None)
    for (n, i), (checked, lo, hi, bad) in zip(types, results):
        report.horns_checked += checked
        report.per_horn_type[(n, i)] = (checked, lo if lo is not None else 0, hi if hi is not None else 0)
        if lo is not None:
            report.min_fillers = lo if report.min_fillers is None else min(report.min_fillers, lo)
            report.max_fillers = hi if report.max_fillers is None else max(report.max_fillers, hi)
        if bad is not None and report.ok:
            report.ok = False
            report.counterexample = bad
    return report


def _least_filler(K: SSet, h: HornMap, what: str) -> FillerCertificate:
    fillers = find_fillers(K, h)
    if not fillers:
        raise NotKanError(f"{what}: no filler for {h}", h)
    return fillers[0]


def compose_edges(K: SSet, alpha: SimplexExpr, beta: SimplexExpr) -> tuple[SimplexExpr, FillerCertificate]:
    """A composite ``beta o alpha``: ``d_1`` of the least filler of ``Lambda^2_1`` with ``d_2 = alpha``, ``d_0 = beta``."""
    if alpha.dim != 1 or beta.dim != 1:
        raise RejectedInput("compose_edges needs two 1-simplices")
    if face(K, 0, alpha) != face(K, 1, beta):
        raise RejectedInput(f"edges are not composable: d0 {alpha} != d1 {beta}")
    cert = _least_filler(K, make_horn(2, 1, {0: beta, 2: alpha}), "compose")
    return face(K, 1, cert.filler), cert


def _identity_at(vertex: SimplexExpr) -> SimplexExpr:
    return SimplexExpr(normalize_word((0,) + vertex.word), vertex.base, vertex.base_dim)


def edge_inverse(K: SSet, alpha: SimplexExpr) -> tuple[SimplexExpr, FillerCertificate]:
    """Left inverse of ``alpha`` up to homotopy.

    Fills ``Lambda^2_0`` with ``d_2 = alpha`` and ``d_1 = s_0 d_1 alpha``
    (the identity at the source of ``alpha``); the answer is ``d_0`` of the filler.
    """
    if alpha.dim != 1:
        raise RejectedInput("edge_inverse needs a 1-simplex")
    h = make_horn(2, 0, {1: _identity_at(face(K, 1, alpha)), 2: alpha})
    cert = _least_filler(K, h, "left inverse")
    return face(K, 0, cert.filler), cert


def edge_right_inverse(K: SSet, alpha: SimplexExpr) -> tuple[SimplexExpr, FillerCertificate]:
    """Right inverse of ``alpha`` up to homotopy.

    Mirror image of :func:`edge_inverse` through ``Lambda^2_2``: ``d_0 = alpha``
    and ``d_1 = s_0 d_0 alpha`` (the identity at the target of ``alpha``),
    so ``d_2`` of a filler is an edge ``beta`` with ``alpha o beta ~ id``.
    """
    if alpha.dim != 1:
        raise RejectedInput("edge_right_inverse needs a 1-simplex")
    h = make_horn(2, 2, {0: alpha, 1: _identity_at(face(K, 0, alpha))})
    cert = _least_filler(K, h, "right inverse")
    return face(K, 2, cert.filler), cert
