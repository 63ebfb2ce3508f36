import pytest

from ssetkit import (
    SimplexExpr,
    bg,
    cyclic_group,
    group_as_category,
    horn,
    kan_report,
    make_horn,
    nerve,
    ordinal_category,
    product,
    sphere,
    standard_simplex,
    symmetric_group,
)
from ssetkit.errors import NotKanError, RejectedInput, ResourceError
from ssetkit.kan import (
    FillerCertificate,
    check_horn,
    compose_edges,
    edge_inverse,
    edge_right_inverse,
    find_fillers,
    iter_horns,
)

E = SimplexExpr


def test_horn_rendering_and_accessors():
    h = make_horn(2, 0, {1: E((0,), "0", 0), 2: E((), "01", 1)})
    assert str(h) == "Lambda^2_0 [d1 = s0 . 0, d2 = 01]"
    assert h.face(2) == E((), "01", 1)
    assert not h.inner
    with pytest.raises(RejectedInput):
        h.face(0)


def test_make_horn_rejects_bad_shapes():
    with pytest.raises(RejectedInput):
        make_horn(2, 3, [])
    with pytest.raises(RejectedInput):
        make_horn(2, 0, {0: E((), "0", 0)})


def test_incompatible_horn_rejected():
    D = standard_simplex(2)
    h = make_horn(2, 1, {0: E((), "12", 1), 2: E((), "02", 1)})
    with pytest.raises(RejectedInput, match="incompatible"):
        check_horn(D, h)


def test_delta1_outer_horn_counterexample():
    r = kan_report(standard_simplex(1), 2)
    assert not r.ok
    assert str(r.counterexample) == "Lambda^2_0 [d1 = s0 . 0, d2 = 01]"


def test_standard_simplex_is_inner_kan():
    for p in range(1, 4):
        r = kan_report(standard_simplex(p), 3, inner_only=True)
        assert r.ok and r.max_fillers == 1


def test_horn_count_matches_independent_enumeration():
    # Lambda^2_1 horns in Delta^1: pairs (d0, d2) of edges with d0 d2... matching vertex
    D = standard_simplex(1, truncation=2)
    edges = [E((0,), "0", 0), E((0,), "1", 0), E((), "01", 1)]
    src = {str(e): s for e, s in zip(edges, ["0", "1", "0"])}
    tgt = {str(e): t for e, t in zip(edges, ["0", "1", "1"])}
    expected = sum(1 for a in edges for b in edges if tgt[str(b)] == src[str(a)])
    assert len(list(iter_horns(D, 2, 1))) == expected


def test_filler_certificates_verify():
    K = bg(cyclic_group(3), 3)
    for h in list(iter_horns(K, 2, 1))[:5]:
        fillers = find_fillers(K, h)
        assert len(fillers) == 1
        assert fillers[0].verify(K)
    bad = FillerCertificate(E((), "1|1", 2), make_horn(2, 1, {0: E((), "2", 1), 2: E((), "1", 1)}))
    assert not bad.verify(K)


def test_bg_fillers_unique_from_dimension_two():
    for G in (cyclic_group(2), cyclic_group(3), symmetric_group(3)):
        r = kan_report(bg(G, 4), 3)
        assert r.ok
        for (n, i), (checked, lo, hi) in r.per_horn_type.items():
            if n >= 2:
                assert (lo, hi) == (1, 1), (G.order, n, i)
            else:
                assert (lo, hi) == (G.order, G.order)


def test_nerve_outer_failure_and_inner_uniqueness():
    N = nerve(ordinal_category(2), 3)
    assert kan_report(N, 3, inner_only=True).ok
    r = kan_report(N, 3)
    assert not r.ok and not r.counterexample.inner


def test_sphere_and_torus_are_not_kan():
    assert not kan_report(sphere(2), 3).ok
    assert not kan_report(product(sphere(1), sphere(1)), 3).ok


def test_horn_inclusion_is_not_kan_target():
    assert not kan_report(horn(2, 1), 2, inner_only=True).ok


def test_parallel_report_equals_serial():
    K = bg(cyclic_group(3), 4)
    assert str(kan_report(K, 3, jobs=1)) == str(kan_report(K, 3, jobs=3))
    assert kan_report(K, 3, jobs=1).per_horn_type == kan_report(K, 3, jobs=3).per_horn_type


def test_cap_reports_progress():
    with pytest.raises(ResourceError) as err:
        kan_report(bg(symmetric_group(3), 3), 3, cap=10)
    assert err.value.progress["horns_checked"] == 10


def test_compose_edges_in_nerve():
    N = nerve(ordinal_category(2), 2)
    composite, cert = compose_edges(N, E((), "0<1", 1), E((), "1<2", 1))
    assert composite == E((), "0<2", 1)
    assert cert.filler == E((), "0<1|1<2", 2)


def test_compose_with_identity():
    K = bg(cyclic_group(3), 3)
    unit = E((0,), "*", 0)
    assert compose_edges(K, unit, E((), "2", 1))[0] == E((), "2", 1)
    assert edge_inverse(K, unit)[0] == unit


def test_inverses_in_bg():
    G = symmetric_group(3)
    K = bg(G, 3)
    for g in G.elements:
        if g == G.unit:
            continue
        inv = E((), G.inverse(g), 1) if G.inverse(g) != G.unit else E((0,), "*", 0)
        assert edge_inverse(K, E((), g, 1))[0] == inv
        assert edge_right_inverse(K, E((), g, 1))[0] == inv


def test_composition_errors():
    N = nerve(ordinal_category(1), 2)
    with pytest.raises(NotKanError, match="no filler"):
        edge_right_inverse(N, E((), "0<1", 1))
    D = standard_simplex(2)
    with pytest.raises(RejectedInput):
        compose_edges(D, E((), "12", 1), E((), "01", 1))
