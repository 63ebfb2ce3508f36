"""Acceptance criteria, one test per criterion.

The terminal summary prints a PASS/FAIL line for each of them.
"""

import itertools
import random
import subprocess
import sys
import time
from math import comb
from pathlib import Path

import pytest

from ssetkit import (
    bg,
    boundary,
    c_bracket,
    c_theta,
    cyclic_group,
    discrete_category,
    discrete_enrichment,
    enumerate_maps,
    enumerate_simplices,
    euler_characteristic,
    group_as_category,
    hc_nerve,
    homology,
    horn,
    kan_report,
    nerve,
    ordinal_category,
    pi0,
    pi1_presentation,
    poset_category,
    product,
    sphere,
    standard_simplex,
    symmetric_group,
    validate,
    verify_cosimplicial_identities,
)
from ssetkit.constructions import monotone_to_expr
from ssetkit.core import SimplexExpr
from ssetkit.delta import codegeneracy, coface, compose, identity
from ssetkit.errors import NotKanError
from ssetkit.hcnerve import compose_functors
from ssetkit.invariants import AbelianDecomposition, abelianize, boundary_matrix
from ssetkit.kan import compose_edges, edge_inverse
from ssetkit.snf import IntMatrix, is_smith_normal_form, smith_normal_form

FIXTURES = Path(__file__).parent / "fixtures"


def divisor_poset():
    elems = ["1", "2", "3", "6"]
    return poset_category(elems, lambda a, b: int(b) % int(a) == 0)


def fixture_categories():
    return {
        "[1]": ordinal_category(1),
        "[2]": ordinal_category(2),
        "[3]": ordinal_category(3),
        "div6": divisor_poset(),
        "discrete": discrete_category(["a", "b"]),
        "Z/3": group_as_category(cyclic_group(3)),
    }


def test_c01_identity_suites():
    start = time.perf_counter()
    spaces = []
    spaces += [standard_simplex(p) for p in range(6)]
    spaces += [boundary(p) for p in range(1, 6)]
    spaces += [horn(p, i) for p in range(1, 5) for i in range(p + 1)]
    spaces += [sphere(n) for n in range(5)]
    spaces += [nerve(C, 3) for C in fixture_categories().values()]
    spaces += [bg(G, 4) for G in (cyclic_group(2), cyclic_group(3), symmetric_group(3))]
    failures = [(S.name, r.message) for S in spaces if not (r := validate(S))]
    identities = verify_cosimplicial_identities(4)
    elapsed = time.perf_counter() - start
    assert not failures, failures
    assert identities.ok, str(identities)
    assert elapsed < 10, f"identity suites took {elapsed:.1f}s"


def strictly_increasing_maps(n, p):
    return [f for f in itertools.product(range(p + 1), repeat=n + 1) if all(a < b for a, b in zip(f, f[1:]))]


def test_c02_counting_oracle():
    stated_formula_mismatches = 0
    for p in range(7):
        S = standard_simplex(p)
        for n in range(p + 1):
            brute = len(strictly_increasing_maps(n, p))
            assert len(S.nondegenerate(n)) == brute == comb(p + 1, n + 1)
            stated_formula_mismatches += brute != comb(p + 1, n)
    # C(p+1, n) counts the wrong thing; it disagrees with the enumeration
    assert stated_formula_mismatches > 0


def test_c03_yoneda():
    targets = [standard_simplex(2), standard_simplex(3), sphere(2), bg(cyclic_group(2), 3)]
    for S in targets:
        for n in range(4):
            assert len(enumerate_maps(standard_simplex(n), S)) == len(enumerate_simplices(S.covering(n), n)), (S.name, n)
    assert len(enumerate_maps(standard_simplex(1), standard_simplex(2))) == 6


def test_c04_kan_verdicts():
    start = time.perf_counter()
    # Delta^1: exact outer counterexample
    r = kan_report(standard_simplex(1), 2)
    assert not r.ok
    h = r.counterexample
    assert (h.n, h.i) == (2, 0)
    assert h.faces == (SimplexExpr((0,), "0", 0), SimplexExpr((), "01", 1))
    # nerve([1]) fails an outer horn
    r = kan_report(nerve(ordinal_category(1), 3), 3)
    assert not r.ok and not r.counterexample.inner
    # nerves of fixture categories: inner horns fill uniquely
    for name, C in fixture_categories().items():
        r = kan_report(nerve(C, 4), 4, inner_only=True)
        assert r.ok and r.min_fillers == 1 and r.max_fillers == 1, name
    # BG: Kan to dimension 3 with multiplicity exactly 1 everywhere
    bg_reports = {len(G.elements): kan_report(bg(G, 4), 3) for G in (cyclic_group(2), cyclic_group(3))}
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"kan verdicts took {elapsed:.1f}s"
    for order, r in bg_reports.items():
        assert r.ok, str(r)
    for order, r in bg_reports.items():
        assert (r.min_fillers, r.max_fillers) == (1, 1), f"BG(Z/{order}) per (n, i): {r.per_horn_type}"


def Z(rank=1, *torsion):
    return AbelianDecomposition(rank, tuple(torsion))


def test_c05_homology_golden():
    for n in range(1, 5):
        S = sphere(n)
        expected = [Z(1)] + [Z(0)] * (n - 1) + [Z(1)]
        assert [homology(S, k) for k in range(n + 1)] == expected
    T = product(sphere(1), sphere(1))
    assert [homology(T, k) for k in range(3)] == [Z(1), Z(2), Z(1)]
    B = bg(cyclic_group(2), 5)
    assert [homology(B, k) for k in range(4)] == [Z(1), Z(0, 2), Z(0), Z(0, 2)]

    spaces = [sphere(n) for n in range(1, 5)] + [T, B, standard_simplex(3), boundary(3), horn(3, 1)]
    spaces += [nerve(C, 3) for C in fixture_categories().values()]
    for S in spaces:
        for n in range(1, S.truncation):
            assert (boundary_matrix(S, n) @ boundary_matrix(S, n + 1)).is_zero(), (S.name, n)

    pairs = [
        (standard_simplex(1), standard_simplex(2)),
        (sphere(1), sphere(1)),
        (sphere(1), sphere(2)),
        (boundary(2), standard_simplex(1)),
        (horn(2, 0), sphere(1)),
    ]
    for A, B2 in pairs:
        assert euler_characteristic(product(A, B2)) == euler_characteristic(A) * euler_characteristic(B2)


def test_c06_pi1():
    for G, expected in ((cyclic_group(2), Z(0, 2)), (cyclic_group(3), Z(0, 3)), (symmetric_group(3), Z(0, 2))):
        assert abelianize(pi1_presentation(bg(G, 3), "*")) == expected
    P = pi1_presentation(sphere(1), "v").simplified()
    assert len(P.generators) == 1 and P.relators == []

    fixtures = [sphere(n) for n in range(1, 4)] + [
        product(sphere(1), sphere(1)),
        bg(cyclic_group(2), 3),
        bg(cyclic_group(3), 3),
        bg(symmetric_group(3), 3),
        standard_simplex(3),
        boundary(3),
        horn(3, 2),
        product(boundary(2), standard_simplex(1)),
    ] + [nerve(C, 3) for C in fixture_categories().values()]
    for S in fixtures:
        if len(pi0(S)) > 1:
            continue
        base = S.nondegenerate(0)[0]
        assert abelianize(pi1_presentation(S, base)) == homology(S, 1), S.name


def _edge(g, unit):
    return SimplexExpr((0,), "*", 0) if g == unit else SimplexExpr((), g, 1)


def test_c07_edge_calculus():
    G = symmetric_group(3)
    K = bg(G, 3)
    pairs = 0
    for g in G.elements:
        for h in G.elements:
            composite, cert = compose_edges(K, _edge(g, G.unit), _edge(h, G.unit))
            assert cert.verify(K)
            assert composite == _edge(G.mul(h, g), G.unit)
            pairs += 1
    assert pairs == 36

    Z2 = cyclic_group(2)
    K2 = bg(Z2, 3)
    for g in Z2.elements:
        inverse, _ = edge_inverse(K2, _edge(g, Z2.unit))
        assert inverse == _edge(g, Z2.unit)

    N1 = nerve(ordinal_category(1), 3)
    with pytest.raises(NotKanError, match="no filler"):
        edge_inverse(N1, SimplexExpr((), "0<1", 1))


def generators(n):
    """Every coface and codegeneracy between ordinals up to ``[n]``."""
    out = []
    for m in range(1, n + 1):
        out += [coface(m, i) for i in range(m + 1)]
    for m in range(0, n):
        out += [codegeneracy(m, i) for i in range(m + 1)]
    return out


def test_c08_hcnerve():
    C2, C3 = c_bracket(2), c_bracket(3)
    assert tuple(C2.hom("0", "2").counts()) == (2, 1)
    assert tuple(C3.hom("0", "3").counts()) == (4, 5, 2)

    for C in (ordinal_category(1), ordinal_category(2), group_as_category(cyclic_group(2))):
        N = hc_nerve(discrete_enrichment(C), 3)
        ordinary = nerve(C, 3)
        for k in range(4):
            assert len(enumerate_simplices(N, k)) == len(enumerate_simplices(ordinary, k)), (k,)
            assert len(N.nondegenerate(k)) == len(ordinary.nondegenerate(k))

    brackets = {k: c_bracket(k) for k in range(4)}
    gens = generators(3)
    checked = 0
    for f, g in itertools.product(gens, repeat=2):
        if g.codomain != f.domain:
            continue
        fg = compose(f, g)
        lhs = c_theta(fg, brackets[g.domain], brackets[f.codomain])
        rhs = compose_functors(
            c_theta(f, brackets[f.domain], brackets[f.codomain]),
            c_theta(g, brackets[g.domain], brackets[g.codomain]),
        )
        assert lhs == rhs, (f, g)
        checked += 1
    for k in range(4):
        ident = c_theta(identity(k), brackets[k], brackets[k])
        assert all(
            F.assignment == {x.key: x for x in F.source.all_bases()} for F in ident.on_homs.values()
        )
    assert checked > 0


def test_c09_snf_properties():
    rng = random.Random(20261019)
    for _ in range(500):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        D, U, V = smith_normal_form(M)
        assert U @ M @ V == D
        assert abs(U.det()) == 1 and abs(V.det()) == 1
        assert is_smith_normal_form(D)
        if m == n:
            assert abs(M.det()) == abs(D.det())


BATTERY = [
    ["kan", "delta1.sset", "--max-dim", "3"],
    ["kan", "torus.sset", "--max-dim", "3"],
    ["kan", "sphere2.sset", "--max-dim", "3", "--inner"],
    ["homology", "torus.sset"],
    ["pi1", "torus.sset"],
    ["export-cw", "torus.sset"],
    ["--format", "json", "kan", "delta2.sset", "--max-dim", "3"],
]


def _battery(jobs: int) -> bytes:
    out = []
    for argv in BATTERY:
        extra = ["--jobs", str(jobs)] if "kan" in argv else []
        proc = subprocess.run(
            [sys.executable, "-m", "ssetkit"] + argv + extra, cwd=FIXTURES, capture_output=True, check=False
        )
        out.append(b"$ " + " ".join(argv).encode() + b"\n" + proc.stdout + proc.stderr)
        out.append(f"exit {proc.returncode}\n".encode())
    # the in-process kan battery on a few larger inputs
    for S in (bg(cyclic_group(3), 4), nerve(ordinal_category(3), 4), product(sphere(1), standard_simplex(1))):
        out.append(str(kan_report(S, 3, jobs=jobs)).encode() + b"\n")
        out.append(repr(sorted(kan_report(S, 3, jobs=jobs).per_horn_type.items())).encode() + b"\n")
    return b"".join(out)


def test_c10_determinism():
    serial = _battery(1)
    parallel = _battery(2)
    assert serial == parallel
    assert serial == _battery(1)
