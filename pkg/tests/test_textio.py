import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from ssetkit import (
    bg,
    boundary,
    c_bracket,
    cyclic_group,
    discrete_enrichment,
    horn,
    identity_map,
    ordinal_category,
    product,
    sphere,
    standard_simplex,
    symmetric_group,
    validate_scat,
    verify_homotopy,
)
from ssetkit.errors import ParseError
from ssetkit.invariants import constant_homotopy
from ssetkit.textio import Document, parse, parse_expr, parse_file, render, to_json

FIXTURES = Path(__file__).parent / "fixtures"


def test_delta2_fixture():
    doc = parse_file(FIXTURES / "delta2.sset")
    assert doc.kind == "sset"
    assert doc.body.counts() == (3, 3, 1)


def test_empty_file_error_location():
    with pytest.raises(ParseError) as err:
        parse("")
    assert (err.value.line, err.value.column) == (1, 1)
    assert str(err.value).startswith("1:1:")


def test_dangling_reference_names_token():
    with pytest.raises(ParseError) as err:
        parse_file(FIXTURES / "dangling.sset")
    assert "dangling reference '2'" in str(err.value)
    assert err.value.line == 5


def test_dimension_mismatch_located():
    text = "sset\ntruncation 2\ndim 0: a\ndim 1: e\nfaces e = [a, e]\n"
    with pytest.raises(ParseError, match="dimension mismatch") as err:
        parse(text)
    assert err.value.line == 5


def test_syntax_errors():
    bad = [
        "sset\ntruncation x\n",
        "sset\ntruncation 1\ndim 0: a\ndim 1: e\nfaces e = [a]\n",
        "sset\ntruncation 1\ndim 0: a\ndim 1: e\nfaces e = [a, s0 s0 . a]\n",
        "sset\ntruncation 2\ndim 0: a\ndim 2: t\nfaces t = [s0 . a, s1 . a, s0 s1 . a]\n",
        "widget\n",
        "map\nsend a = b\n",
        "category\nmor f : x -> y\n",
        "sset\ntruncation 1\ndim 0: a\ndim 1: e\n",
        "begin source\n",
    ]
    for text in bad:
        with pytest.raises(ParseError):
            parse(text)


def test_parse_expr():
    assert parse_expr("s3 s1 . x") == ((3, 1), "x")
    assert parse_expr("s3s1 . x") == ((3, 1), "x")
    assert parse_expr("x") == ((), "x")
    with pytest.raises(ParseError):
        parse_expr("s1 s3 . x")
    with pytest.raises(ParseError):
        parse_expr("t1 . x")


def test_comments_and_blank_lines():
    text = "# a point\nsset   pt\n\ntruncation 0   # no faces\ndim 0: p\n"
    assert parse(text).body.counts() == (1,)


SPACES = [
    standard_simplex(3),
    boundary(3),
    horn(3, 1),
    sphere(2),
    product(sphere(1), standard_simplex(1)),
    bg(symmetric_group(3), 2),
]


@pytest.mark.parametrize("S", SPACES, ids=lambda S: S.name)
def test_round_trip(S):
    text = render(S)
    again = parse(text).body
    assert again == S and again.finite == S.finite
    assert render(again) == text
    assert parse(to_json(S)).body == S
    json.loads(to_json(S))


def test_ambiguous_names_are_qualified():
    text = "sset\ntruncation 1\ndim 0: x\ndim 1: x\nfaces x@1 = [x, x]\n"
    S = parse(text).body
    assert "faces x@1" in render(S)
    with pytest.raises(ParseError, match="ambiguous"):
        parse(text.replace("x@1", "x"))


def test_category_and_group_round_trip():
    C = ordinal_category(3)
    assert parse(render(Document("category", C))).body.composition == C.composition
    G = symmetric_group(3)
    back = parse(render(Document("group", G))).body
    assert back.product == G.product and back.unit == G.unit


def test_map_and_homotopy_round_trip():
    S = standard_simplex(2)
    F = identity_map(S)
    doc = parse(render(Document("map", F)))
    assert doc.body == F
    cert = constant_homotopy(F, product(S, standard_simplex(1)))
    text = render(Document("homotopy", cert))
    back = parse(text).body
    assert verify_homotopy(back)
    assert render(Document("homotopy", back)) == text


def test_scat_round_trip():
    for C in (c_bracket(2), discrete_enrichment(ordinal_category(2))):
        text = render(Document("scat", C))
        back = parse(text).body
        assert validate_scat(back)
        assert render(Document("scat", back)) == text


def test_map_with_file_references(tmp_path):
    (tmp_path / "a.sset").write_text(render(standard_simplex(0)))
    (tmp_path / "b.sset").write_text(render(standard_simplex(1)))
    text = "map\nsource = a.sset\ntarget = b.sset\nsend 0 = 1\n"
    F = parse(text, base_dir=tmp_path).body
    assert F.check()
    with pytest.raises(ParseError, match="not found"):
        parse("map\nsource = nope.sset\ntarget = b.sset\n", base_dir=tmp_path)


names = st.text(alphabet="abcxyz019_-<>|()", min_size=1, max_size=4)


@settings(max_examples=50)
@given(st.lists(names, min_size=1, max_size=4, unique=True), st.data())
def test_random_graph_round_trip(vertices, data):
    edges = {}
    for k in range(data.draw(st.integers(0, 4))):
        src = data.draw(st.sampled_from(vertices))
        tgt = data.draw(st.sampled_from(vertices))
        edges[f"e{k}"] = (tgt, src)
    lines = ["sset g", "truncation 1", "dim 0: " + " ".join(vertices)]
    if edges:
        lines.append("dim 1: " + " ".join(edges))
        lines += [f"faces {e} = [{a}, {b}]" for e, (a, b) in edges.items()]
    text = "\n".join(lines) + "\n"
    S = parse(text).body
    assert parse(render(S)).body == S
