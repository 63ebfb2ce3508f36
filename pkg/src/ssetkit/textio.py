"""Line-oriented text format for simplicial sets, categories, groups,
simplicial categories, maps and homotopies.

Simplices are written ``s3 s1 . name`` (strictly decreasing indices) or
just ``name``.  ``#`` starts a comment.  Nested documents sit between
``begin <role>`` and ``end``; a role may instead point to a file with
``<role> = path``.  A one-line example of each kind::

    sset / truncation 2 / dim 0: 0 1 2 / ... / faces 012 = [12, 02, 01]
    category / objects: x y / mor f : x -> y / comp g f = h
    group / elements: e a / unit e / row e: e a / row a: a e
    map / begin source ... end / begin target ... end / send x = s0 . y
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .constructions import FiniteCategory, FiniteGroup, ProductSSet, standard_simplex
from .core import SimplexExpr, SimplicialMap, SSet, normalize_word
from .errors import ParseError, RejectedInput
from .hcnerve import SimplicialCategory
from .invariants import HomotopyCertificate

__all__ = ["Document", "parse", "parse_file", "render", "to_json", "parse_expr", "KINDS"]

KINDS = ("sset", "category", "group", "scat", "map", "homotopy")
NAME = r"[^\s,\[\]=.@#]+"
_NAME_RE = re.compile(NAME + r"$")
_INDEX_RE = re.compile(r"s(\d+)")


@dataclass
class Document:
    kind: str
    body: Any


@dataclass
class _Line:
    no: int
    text: str
    indent: int

    def err(self, message: str, col: int | None = None) -> ParseError:
        return ParseError(message, self.no, (col if col is not None else self.indent) + 1)

    def col_of(self, token: str) -> int:
        pos = self.text.find(token)
        return self.indent + (pos if pos >= 0 else 0)


def _lines(text: str, offset: int = 0) -> list[_Line]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1 + offset):
        stripped = raw.split("#", 1)[0].rstrip()
        if stripped.strip():
            indent = len(stripped) - len(stripped.lstrip())
            out.append(_Line(no, stripped.strip(), indent))
    return out


def _split_blocks(lines: list[_Line]):
    """Yield ``("line", line)`` or ``("block", header_line, role_words, inner_lines)``."""
    k = 0
    while k < len(lines):
        line = lines[k]
        if line.text.startswith("begin "):
            depth, j = 1, k + 1
            while j < len(lines):
                if lines[j].text.startswith("begin "):
                    depth += 1
                elif lines[j].text == "end":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j == len(lines):
                raise line.err("unterminated 'begin' block")
            yield ("block", line, line.text.split()[1:], lines[k + 1: j])
            k = j + 1
        elif line.text == "end":
            raise line.err("'end' without 'begin'")
        else:
            yield ("line", line)
            k += 1


def _check_name(token: str, line: _Line) -> str:
    if not _NAME_RE.match(token):
        raise line.err(f"invalid name {token!r}", line.col_of(token))
    return token


def parse_expr(text: str, line: _Line | None = None) -> tuple[tuple[int, ...], str]:
    """``"s2 s0 . x"`` -> ``((2, 0), "x")``; the word must be strictly decreasing."""
    line = line or _Line(1, text, 0)
    text = text.strip()
    if "." in text:
        left, base = text.split(".", 1)
        base = base.strip()
        compact = left.replace(" ", "")
        word = tuple(int(m) for m in _INDEX_RE.findall(compact))
        if "".join(f"s{i}" for i in word) != compact or not word:
            raise line.err(f"malformed degeneracy word {left.strip()!r}", line.col_of(left.strip() or "."))
        if any(a <= b for a, b in zip(word, word[1:])):
            raise line.err(f"degeneracy word {left.strip()!r} is not strictly decreasing", line.col_of(left.strip()))
    else:
        word, base = (), text
    if not base:
        raise line.err("missing simplex name", line.col_of(text) if text else None)
    return word, _check_name(base, line)


def _resolve(S: SSet, raw: str, dim: int, line: _Line) -> SimplexExpr:
    word, base = parse_expr(raw, line)
    base_dim = dim - len(word)
    if base_dim < 0 or not S.has(base_dim, base):
        if any(S.has(d, base) for d in range(S.truncation + 1)):
            raise line.err(f"dimension mismatch: {raw.strip()!r} is not a {dim}-simplex", line.col_of(base))
        raise line.err(f"dangling reference {base!r}", line.col_of(base))
    try:
        normalize_word(word, base_dim)
    except RejectedInput as exc:
        raise line.err(str(exc), line.col_of(raw.strip())) from None
    return SimplexExpr(word, base, base_dim)


def _split_name_dim(token: str, line: _Line) -> tuple[str, int | None]:
    if "@" in token:
        name, dim = token.rsplit("@", 1)
        if not dim.isdigit():
            raise line.err(f"bad dimension qualifier in {token!r}", line.col_of(token))
        return _check_name(name, line), int(dim)
    return _check_name(token, line), None


def _locate(S_simplices: dict[int, list[str]], name: str, dim: int | None, line: _Line, what="simplex") -> int:
    dims = [d for d, names in S_simplices.items() if name in names]
    if dim is not None:
        if dim not in dims:
            raise line.err(f"dangling reference {name!r}", line.col_of(name))
        return dim
    if not dims:
        raise line.err(f"dangling reference {name!r}", line.col_of(name))
    if len(dims) > 1:
        raise line.err(f"{what} name {name!r} is ambiguous; qualify it as {name}@<dim>", line.col_of(name))
    return dims[0]


# ---------------------------------------------------------------------------
# per-kind parsers


def _parse_sset(lines: list[_Line], header: _Line) -> SSet:
    title = " ".join(header.text.split()[1:])
    truncation = None
    finite = True
    simplices: dict[int, list[str]] = {}
    face_lines: list[tuple[_Line, str, str]] = []
    face_re = re.compile(r"faces\s+(\S+)\s*=\s*\[(.*)\]$")
    for line in lines:
        words = line.text.split()
        if words[0] == "truncation":
            if len(words) != 2 or not words[1].isdigit():
                raise line.err("expected 'truncation N'")
            truncation = int(words[1])
        elif line.text in ("finite", "truncated"):
            finite = line.text == "finite"
        elif words[0] == "dim":
            m = re.match(r"dim\s+(\d+)\s*:(.*)$", line.text)
            if not m:
                raise line.err("expected 'dim N: name ...'")
            d = int(m.group(1))
            if d in simplices:
                raise line.err(f"dimension {d} listed twice")
            names = [_check_name(t, line) for t in m.group(2).split()]
            if len(set(names)) != len(names):
                raise line.err(f"duplicate simplex name in dimension {d}")
            simplices[d] = names
        elif words[0] == "faces":
            m = face_re.match(line.text)
            if not m:
                raise line.err("expected 'faces name = [expr, ...]'")
            face_lines.append((line, m.group(1), m.group(2)))
        else:
            raise line.err(f"unexpected line in sset document: {words[0]!r}")
    if truncation is None:
        raise header.err("missing 'truncation N'")
    for d in simplices:
        if d > truncation:
            raise header.err(f"dimension {d} exceeds truncation {truncation}")
    # build a provisional presentation without faces to resolve references
    skeleton = SSet.__new__(SSet)
    skeleton.truncation = truncation
    skeleton._rank = {(d, x): r for d, names in simplices.items() for r, x in enumerate(names)}
    faces = {}
    for line, token, body in face_lines:
        name, dim = _split_name_dim(token, line)
        d = _locate(simplices, name, dim, line)
        if d == 0:
            raise line.err(f"vertex {name!r} cannot have faces", line.col_of(token))
        if (d, name) in faces:
            raise line.err(f"faces of {name!r} given twice", line.col_of(token))
        parts = [p for p in body.split(",")] if body.strip() else []
        if len(parts) != d + 1:
            raise line.err(f"dimension mismatch: {name!r} needs {d + 1} faces, got {len(parts)}", line.col_of("["))
        faces[(d, name)] = tuple(_resolve(skeleton, p, d - 1, line) for p in parts)
    for d, names in simplices.items():
        for x in names:
            if d and (d, x) not in faces:
                raise header.err(f"simplex {x!r} of dimension {d} has no 'faces' line")
    try:
        return SSet(truncation, simplices, faces, finite=finite, name=title)
    except RejectedInput as exc:
        raise header.err(str(exc)) from None


def _parse_category(lines: list[_Line], header: _Line) -> FiniteCategory:
    objects: list[str] | None = None
    morphisms: dict[str, tuple[str, str]] = {}
    identities: dict[str, str] = {}
    comp_lines = []
    for line in lines:
        words = line.text.split()
        if words[0] == "objects:":
            objects = [_check_name(t, line) for t in words[1:]]
        elif words[0] == "mor":
            m = re.match(r"mor\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", line.text)
            if not m:
                raise line.err("expected 'mor f : x -> y'")
            f, x, y = (_check_name(t, line) for t in m.groups())
            if f in morphisms:
                raise line.err(f"morphism {f!r} declared twice", line.col_of(f))
            morphisms[f] = (x, y)
        elif words[0] == "identity":
            m = re.match(r"identity\s+(\S+)\s*=\s*(\S+)$", line.text)
            if not m:
                raise line.err("expected 'identity x = name'")
            identities[m.group(1)] = m.group(2)
        elif words[0] == "comp":
            m = re.match(r"comp\s+(\S+)\s+(\S+)\s*=\s*(\S+)$", line.text)
            if not m:
                raise line.err("expected 'comp g f = h'")
            comp_lines.append((line, m.groups()))
        else:
            raise line.err(f"unexpected line in category document: {words[0]!r}")
    if objects is None:
        raise header.err("missing 'objects:' line")
    for f, (x, y) in morphisms.items():
        for obj in (x, y):
            if obj not in objects:
                raise header.err(f"dangling reference {obj!r} in morphism {f!r}")
    for x, i in identities.items():
        if x not in objects:
            raise header.err(f"dangling reference {x!r} in identity line")
    C = FiniteCategory(tuple(objects), morphisms, identities, {})
    for line, (g, f, h) in comp_lines:
        for t in (g, f, h):
            if t not in C.morphisms:
                raise line.err(f"dangling reference {t!r}", line.col_of(t))
        C.composition[(g, f)] = h
    return C


def _parse_group(lines: list[_Line], header: _Line) -> FiniteGroup:
    elements = None
    unit = None
    rows: dict[str, list[str]] = {}
    for line in lines:
        words = line.text.split()
        if words[0] == "elements:":
            elements = [_check_name(t, line) for t in words[1:]]
        elif words[0] == "unit":
            if len(words) != 2:
                raise line.err("expected 'unit e'")
            unit = words[1]
        elif words[0] == "row":
            m = re.match(r"row\s+(\S+)\s*:(.*)$", line.text)
            if not m:
                raise line.err("expected 'row a: a*x1 a*x2 ...'")
            rows[m.group(1)] = m.group(2).split()
            row_line = line
            if elements is not None:
                for t in [m.group(1)] + rows[m.group(1)]:
                    if t not in elements:
                        raise line.err(f"dangling reference {t!r}", line.col_of(t))
                if len(rows[m.group(1)]) != len(elements):
                    raise line.err(f"row {m.group(1)!r} needs {len(elements)} entries")
        else:
            raise line.err(f"unexpected line in group document: {words[0]!r}")
    if elements is None:
        raise header.err("missing 'elements:' line")
    unit = unit if unit is not None else elements[0]
    if unit not in elements:
        raise header.err(f"dangling reference {unit!r} (unit)")
    if set(rows) != set(elements):
        raise header.err("multiplication table needs one row per element")
    table = {(a, b): rows[a][k] for a in elements for k, b in enumerate(elements)}
    return FiniteGroup(tuple(elements), unit, table)


def _parse_sends(lines: list[_Line], source: SSet, target: SSet) -> SimplicialMap:
    send_re = re.compile(r"send\s+(\S+)\s*=\s*(.+)$")
    assignment = {}
    simplices = {d: list(source.nondegenerate(d)) for d in range(source.truncation + 1)}
    for line in lines:
        m = send_re.match(line.text)
        if not m:
            raise line.err("expected 'send name = expr'")
        name, dim = _split_name_dim(m.group(1), line)
        d = _locate(simplices, name, dim, line)
        if (d, name) in assignment:
            raise line.err(f"{name!r} sent twice", line.col_of(m.group(1)))
        assignment[(d, name)] = _resolve(target, m.group(2), d, line)
    for x in source.all_bases():
        if x.key not in assignment:
            raise ParseError(f"map has no 'send' line for {x.base!r}", lines[-1].no if lines else 1, 1)
    return SimplicialMap(source, target, assignment)


def _sub_document(item, base_dir: Path | None, role: str, kind: str):
    """A nested document given inline (``begin role``) or by reference (``role = path``)."""
    if item[0] == "block":
        _, line, _, inner = item
        if not inner:
            raise line.err(f"empty '{role}' block")
        doc = _parse_lines(inner, base_dir)
    else:
        line = item[1]
        path = line.text.split("=", 1)[1].strip()
        target = (base_dir / path) if base_dir else Path(path)
        try:
            doc = parse_file(target)
        except FileNotFoundError:
            raise line.err(f"dangling reference: file {path!r} not found", line.col_of(path)) from None
    if doc.kind != kind:
        raise line.err(f"'{role}' must be a {kind} document, got {doc.kind}")
    return doc.body


def _collect(lines, base_dir, roles):
    """Split a document into role-keyed sub-items and plain lines."""
    subs: dict[tuple, tuple] = {}
    plain: list[_Line] = []
    for item in _split_blocks(lines):
        if item[0] == "block":
            key = tuple(item[2])
            subs[key] = item
        else:
            line = item[1]
            m = re.match(r"(\w+)((?:\s+\S+)*)\s*=\s*(\S+)$", line.text)
            if m and m.group(1) in roles and not line.text.startswith(("send", "identity")):
                subs[(m.group(1),) + tuple(m.group(2).split())] = item
            else:
                plain.append(line)
    return subs, plain


def _parse_map(lines, header, base_dir) -> SimplicialMap:
    subs, plain = _collect(lines, base_dir, {"source", "target"})
    for role in ("source", "target"):
        if (role,) not in subs:
            raise header.err(f"map document needs a {role}")
    S = _sub_document(subs[("source",)], base_dir, "source", "sset")
    T = _sub_document(subs[("target",)], base_dir, "target", "sset")
    return _parse_sends(plain, S, T)


def _parse_homotopy(lines, header, base_dir) -> HomotopyCertificate:
    subs, plain = _collect(lines, base_dir, {"source", "target"})
    for role in ("source", "target", "f0", "f1", "h"):
        if (role,) not in subs:
            raise header.err(f"homotopy document needs a '{role}' section")
    if plain:
        raise plain[0].err("unexpected line outside sections")
    S = _sub_document(subs[("source",)], base_dir, "source", "sset")
    T = _sub_document(subs[("target",)], base_dir, "target", "sset")
    P = ProductSSet(S, standard_simplex(1))
    maps = {}
    for role, src in (("f0", S), ("f1", S), ("h", P)):
        item = subs[(role,)]
        if item[0] != "block":
            raise item[1].err(f"'{role}' must be an inline block of send lines")
        maps[role] = _parse_sends(item[3], src, T)
    return HomotopyCertificate(maps["h"], maps["f0"], maps["f1"])


def _parse_scat(lines, header, base_dir) -> SimplicialCategory:
    subs, plain = _collect(lines, base_dir, {"hom"})
    objects = None
    identities = {}
    for line in plain:
        words = line.text.split()
        if words[0] == "objects:":
            objects = [_check_name(t, line) for t in words[1:]]
        elif words[0] == "identity":
            m = re.match(r"identity\s+(\S+)\s*=\s*(\S+)$", line.text)
            if not m:
                raise line.err("expected 'identity x = vertex'")
            identities[m.group(1)] = m.group(2)
        else:
            raise line.err(f"unexpected line in scat document: {words[0]!r}")
    if objects is None:
        raise header.err("missing 'objects:' line")
    homs = {}
    for key, item in subs.items():
        if key[0] != "hom":
            continue
        line = item[1]
        if len(key) != 3 or key[1] not in objects or key[2] not in objects:
            raise line.err("expected 'hom x y' with declared objects")
        homs[(key[1], key[2])] = _sub_document(item, base_dir, "hom", "sset")
    composition = {}
    for key, item in subs.items():
        if key[0] == "hom":
            continue
        line = item[1]
        if key[0] != "compose" or len(key) != 4 or item[0] != "block":
            raise line.err(f"unexpected section {' '.join(key)!r}")
        x, y, z = key[1:]
        if (y, z) not in homs or (x, y) not in homs or (x, z) not in homs:
            raise line.err(f"compose {x} {y} {z} refers to a missing hom")
        P = ProductSSet(homs[(y, z)], homs[(x, y)])
        composition[(x, y, z)] = _parse_sends(item[3], P, homs[(x, z)])
    for x in objects:
        if x not in identities:
            raise header.err(f"object {x!r} has no identity line")
    return SimplicialCategory(tuple(objects), homs, composition, identities)


def _parse_lines(lines: list[_Line], base_dir: Path | None) -> Document:
    if not lines:
        raise ParseError("empty document", 1, 1)
    header, rest = lines[0], lines[1:]
    kind = header.text.split()[0]
    if kind == "sset":
        return Document(kind, _parse_sset(rest, header))
    if kind == "category":
        return Document(kind, _parse_category(rest, header))
    if kind == "group":
        return Document(kind, _parse_group(rest, header))
    if kind == "map":
        return Document(kind, _parse_map(rest, header, base_dir))
    if kind == "homotopy":
        return Document(kind, _parse_homotopy(rest, header, base_dir))
    if kind == "scat":
        return Document(kind, _parse_scat(rest, header, base_dir))
    raise header.err(f"unknown document kind {kind!r} (expected one of {', '.join(KINDS)})")


def parse(text: str, base_dir: str | Path | None = None) -> Document:
    """Parse a document; JSON input (as written by :func:`to_json`) is accepted for ``sset``."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_lines(_lines(text), Path(base_dir) if base_dir is not None else None)


def parse_file(path: str | Path) -> Document:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), path.parent)


# ---------------------------------------------------------------------------
# rendering


def _qualified(S: SSet, d: int, name: str) -> str:
    others = [k for k in range(S.truncation + 1) if k != d and S.has(k, name)]
    return f"{name}@{d}" if others else name


def _render_sset(S: SSet) -> list[str]:
    title = " ".join(S.name.replace("#", "").split())
    out = ["sset" + (f" {title}" if title else ""), f"truncation {S.truncation}"]
    out.append("finite" if S.finite else "truncated")
    for d in range(S.truncation + 1):
        if S.nondegenerate(d):
            out.append(f"dim {d}: " + " ".join(S.nondegenerate(d)))
    for d in range(1, S.truncation + 1):
        for x in S.nondegenerate(d):
            out.append(f"faces {_qualified(S, d, x)} = [" + ", ".join(str(f) for f in S.faces_of(d, x)) + "]")
    return out


def _render_category(C: FiniteCategory) -> list[str]:
    out = ["category", "objects: " + " ".join(C.objects)]
    for x, i in C.identities.items():
        if i != f"id_{x}":
            out.append(f"identity {x} = {i}")
    for f, (x, y) in C.morphisms.items():
        if not C.is_identity(f):
            out.append(f"mor {f} : {x} -> {y}")
    for (g, f), h in C.composition.items():
        out.append(f"comp {g} {f} = {h}")
    return out


def _render_group(G: FiniteGroup) -> list[str]:
    out = ["group", "elements: " + " ".join(G.elements), f"unit {G.unit}"]
    for a in G.elements:
        out.append(f"row {a}: " + " ".join(G.mul(a, b) for b in G.elements))
    return out


def _block(role: str, lines: list[str]) -> list[str]:
    return [f"begin {role}"] + ["  " + l for l in lines] + ["end"]


def _render_sends(F: SimplicialMap) -> list[str]:
    return [f"send {_qualified(F.source, x.dim, x.base)} = {y}" for x, y in F.items()]


def _render_lines(kind: str, body) -> list[str]:
    if kind == "sset":
        return _render_sset(body)
    if kind == "category":
        return _render_category(body)
    if kind == "group":
        return _render_group(body)
    if kind == "map":
        return ["map"] + _block("source", _render_sset(body.source)) + _block(
            "target", _render_sset(body.target)
        ) + _render_sends(body)
    if kind == "homotopy":
        P = body.h.source
        return (
            ["homotopy"]
            + _block("source", _render_sset(body.f0.source))
            + _block("target", _render_sset(body.f0.target))
            + _block("f0", _render_sends(body.f0))
            + _block("f1", _render_sends(body.f1))
            + _block("h", _render_sends(body.h))
        )
    if kind == "scat":
        out = ["scat", "objects: " + " ".join(body.objects)]
        out += [f"identity {x} = {v}" for x, v in body.identities.items()]
        for (x, y), H in body.homs.items():
            out += _block(f"hom {x} {y}", _render_sset(H))
        for (x, y, z), F in body.composition.items():
            out += _block(f"compose {x} {y} {z}", _render_sends(F))
        return out
    raise RejectedInput(f"cannot render kind {kind!r}")


def render(doc: Document | SSet) -> str:
    if isinstance(doc, SSet):
        doc = Document("sset", doc)
    return "\n".join(_render_lines(doc.kind, doc.body)) + "\n"


def to_json(doc: Document | SSet) -> str:
    """JSON form of an ``sset`` document (the alternate writer)."""
    S = doc.body if isinstance(doc, Document) else doc
    if not isinstance(S, SSet):
        raise RejectedInput("JSON output is available for sset documents only")
    data = {
        "kind": "sset",
        "name": S.name,
        "truncation": S.truncation,
        "finite": S.finite,
        "simplices": {str(d): list(S.nondegenerate(d)) for d in range(S.truncation + 1) if S.nondegenerate(d)},
        "faces": [
            {"dim": d, "name": x, "faces": [str(f) for f in S.faces_of(d, x)]}
            for d in range(1, S.truncation + 1)
            for x in S.nondegenerate(d)
        ],
    }
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _parse_json(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if data.get("kind") != "sset":
        raise ParseError("JSON documents must have kind 'sset'")
    lines = [f"sset {data.get('name') or ''}".strip(), f"truncation {data['truncation']}"]
    lines.append("finite" if data.get("finite", True) else "truncated")
    for d, names in sorted(data["simplices"].items(), key=lambda kv: int(kv[0])):
        lines.append(f"dim {d}: " + " ".join(names))
    for entry in data["faces"]:
        lines.append(f"faces {entry['name']}@{entry['dim']} = [" + ", ".join(entry["faces"]) + "]")
    return parse("\n".join(lines))
