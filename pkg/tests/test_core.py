import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ssetkit import (
    SimplexExpr,
    SSet,
    apply_map,
    bg,
    compose_maps,
    cyclic_group,
    enumerate_maps,
    enumerate_simplices,
    face,
    degenerate,
    identity_map,
    normalize_word,
    sphere,
    standard_simplex,
    validate,
)
from ssetkit.core import random_simplex
from ssetkit.errors import RejectedInput, ResourceError, TruncationError


def vertices(e: SimplexExpr) -> tuple[int, ...]:
    """Vertex list of a simplex of a standard simplex, read off the names."""
    verts = [int(c) for c in e.base]
    for j in reversed(e.word):
        verts.insert(j, verts[j])
    return tuple(verts)


def test_normalize_word_examples():
    assert normalize_word((0, 0)) == (1, 0)
    assert normalize_word((0, 1)) == (2, 0)
    assert normalize_word((3, 1)) == (3, 1)
    with pytest.raises(RejectedInput):
        normalize_word((2,), base_dim=1)


@given(st.lists(st.integers(0, 3), max_size=5))
def test_normalize_word_is_strictly_decreasing_and_idempotent(word):
    w = normalize_word(word)
    assert all(a > b for a, b in zip(w, w[1:]))
    assert normalize_word(w) == w


@given(st.lists(st.integers(0, 2), max_size=4), st.data())
def test_normalization_agrees_with_vertex_duplication(raw, data):
    # s_a1 ... s_ak x: apply s_ak first.  Build a legal word over a vertex tuple.
    base = (0, 2, 5)
    dim = 2
    word = []
    for _ in raw:
        j = data.draw(st.integers(0, dim))
        word.insert(0, j)
        dim += 1
    verts = list(base)
    for j in reversed(word):
        verts.insert(j, verts[j])
    canon = normalize_word(word, 2)
    check = list(base)
    for j in reversed(canon):
        check.insert(j, check[j])
    assert verts == check


def test_face_of_degenerate_examples():
    D = standard_simplex(2)
    e = SimplexExpr((1,), "01", 1)  # vertices 0,1,1
    assert face(D, 1, e) == SimplexExpr((), "01", 1)
    assert face(D, 2, e) == SimplexExpr((), "01", 1)
    assert face(D, 0, e) == SimplexExpr((0,), "1", 0)


@settings(max_examples=60)
@given(st.integers(0, 3), st.integers(0, 4), st.randoms(use_true_random=False))
def test_face_and_degeneracy_match_vertex_oracle(p, n, rng):
    D = standard_simplex(p, truncation=5)
    e = rng.choice(enumerate_simplices(D, n))
    v = vertices(e)
    for i in range(n + 1 if n else 0):
        assert vertices(face(D, i, e)) == v[:i] + v[i + 1:]
    if n < 5:
        for i in range(n + 1):
            assert vertices(degenerate(D, i, e)) == v[: i + 1] + v[i:]


def test_enumeration_matches_monotone_maps():
    for p in range(4):
        D = standard_simplex(p, truncation=4)
        for n in range(5):
            got = sorted(vertices(e) for e in enumerate_simplices(D, n))
            want = sorted(itertools.combinations_with_replacement(range(p + 1), n + 1))
            assert got == want


def test_canonical_order_puts_degenerate_first():
    D = standard_simplex(1)
    assert [str(e) for e in enumerate_simplices(D, 1)] == ["s0 . 0", "s0 . 1", "01"]


def test_degenerate_above_truncation():
    D = standard_simplex(1)
    with pytest.raises(TruncationError):
        degenerate(D, 0, SimplexExpr((), "01", 1))
    with pytest.raises(TruncationError):
        enumerate_simplices(bg(cyclic_group(2), 2), 3)


def test_covering_extends_complete_presentations_only():
    assert standard_simplex(1).covering(3).truncation == 3
    with pytest.raises(TruncationError):
        bg(cyclic_group(2), 2).covering(3)


def test_construction_errors():
    with pytest.raises(RejectedInput):
        SSet(1, {0: ["a"], 1: ["e"]}, {})
    with pytest.raises(RejectedInput):
        SSet(1, {0: ["a"], 1: ["e"]}, {(1, "e"): (SimplexExpr((), "b", 0),) * 2})
    with pytest.raises(RejectedInput):
        SSet(0, {1: ["e"]}, {})


def test_validate_catches_broken_face_table():
    broken = SSet(
        2,
        {0: ["0", "1", "2"], 1: ["01", "02", "12"], 2: ["012"]},
        {
            (1, "01"): (SimplexExpr((), "1", 0), SimplexExpr((), "0", 0)),
            (1, "02"): (SimplexExpr((), "2", 0), SimplexExpr((), "0", 0)),
            (1, "12"): (SimplexExpr((), "2", 0), SimplexExpr((), "1", 0)),
            (2, "012"): tuple(SimplexExpr((), x, 1) for x in ("12", "01", "02")),
        },
    )
    report = validate(broken)
    assert not report
    assert report.witness is not None


def test_validate_passes_on_constructions():
    for S in (standard_simplex(4), sphere(3), bg(cyclic_group(3), 3)):
        assert validate(S)


def test_apply_map_naturality():
    rng = random.Random(7)
    D2 = standard_simplex(2, truncation=4)
    maps = enumerate_maps(standard_simplex(2), D2)
    for _ in range(200):
        F = rng.choice(maps)
        F = type(F)(F.source.covering(4), F.target, F.assignment)
        e = random_simplex(F.source, rng)
        Fe = apply_map(F, e)
        assert Fe.dim == e.dim
        for i in range(e.dim + 1 if e.dim else 0):
            assert apply_map(F, face(F.source, i, e)) == face(D2, i, Fe)


def test_identity_and_composition_of_maps():
    D = standard_simplex(2)
    maps = enumerate_maps(D, D)
    assert len(maps) == 10
    I = identity_map(D)
    for F in maps:
        assert compose_maps(I, F) == F
        assert compose_maps(F, I) == F
        assert F.check()


def test_map_counts_to_sphere():
    # maps Delta^2 -> S^2 correspond to its 2-simplices: s1 s0 v, sigma
    assert len(enumerate_maps(standard_simplex(2), sphere(2))) == 2


def test_enumerate_maps_cap():
    with pytest.raises(ResourceError) as err:
        enumerate_maps(standard_simplex(2), standard_simplex(3), cap=5)
    assert "maps_found" in err.value.progress
