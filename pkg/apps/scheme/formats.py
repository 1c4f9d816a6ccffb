import re
from collections import Counter

from apps.builder.formats import check_header
from apps.levi.hypergraph import HypergraphSpec, TripleVertex, build_levi
from utils.exceptions import FormatError, InvalidSpec

from .embedding import EmbeddingScheme

HEADER = "# kn3-scheme v1"
HEADER_PREFIX = "# kn3-scheme"

TRIPLE = re.compile(r"^e\{(\d+),(\d+),(\d+)\}(?:#(\d+))?$")
LINE = re.compile(r"^(rot|sig) ([^:]+):(.*)$")


def vertex_label(vertex, multiplicity):
    if isinstance(vertex, TripleVertex):
        return vertex.label(multiplicity)
    return str(vertex)


def format_scheme(scheme):
    m = scheme.levi.spec.m
    lines = [HEADER]
    for v in scheme.levi.vertices:
        ring = " ".join(vertex_label(w, m) for w in scheme.rotation[v])
        lines.append(f"rot {vertex_label(v, m)}: {ring}")
    for x, y in scheme.levi.edges():
        lines.append(f"sig {x} {vertex_label(y, m)}: {scheme.signature[(x, y)]:+d}")
    return "\n".join(lines) + "\n"


def parse_vertex(token, lineno):
    if token.isdigit():
        return int(token)
    match = TRIPLE.match(token)
    if not match:
        raise FormatError(f"unreadable vertex '{token}'", line=lineno)
    elements = tuple(int(match.group(k)) for k in (1, 2, 3))
    if len(set(elements)) != 3:
        raise FormatError(f"triple '{token}' repeats a vertex", line=lineno)
    return TripleVertex(elements, int(match.group(4) or 0))


def parse_scheme(text):
    """
    Parses the scheme format. n is the largest X label, m one more than the
    largest copy index; the rotations must then cover the whole Levi graph.
    """
    numbered = [(lineno, line.strip()) for lineno, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not numbered:
        raise FormatError("empty input", line=1)
    check_header(numbered[0][1], HEADER, HEADER_PREFIX, numbered[0][0])

    rotation, signature = {}, {}
    for lineno, line in numbered[1:]:
        match = LINE.match(line)
        if not match:
            raise FormatError("expected 'rot <v>: ...' or 'sig <u> <w>: +1|-1'", line=lineno)
        kind, head, body = match.group(1), match.group(2).split(), match.group(3).strip()
        if kind == "rot":
            if len(head) != 1:
                raise FormatError("rot takes one vertex", line=lineno)
            v = parse_vertex(head[0], lineno)
            if v in rotation:
                raise FormatError(f"second rotation for {head[0]}", line=lineno)
            rotation[v] = tuple(parse_vertex(token, lineno) for token in body.split())
        else:
            if len(head) != 2 or body not in ("+1", "-1"):
                raise FormatError("expected 'sig <x> <triple>: +1|-1'", line=lineno)
            u, w = (parse_vertex(token, lineno) for token in head)
            x, y = (w, u) if isinstance(u, TripleVertex) else (u, w)
            if isinstance(x, TripleVertex) or not isinstance(y, TripleVertex):
                raise FormatError("a signature joins an X vertex and a triple", line=lineno)
            signature[(x, y)] = int(body)

    x_labels = [v for v in rotation if not isinstance(v, TripleVertex)]
    triples = [v for v in rotation if isinstance(v, TripleVertex)]
    if not x_labels or not triples:
        raise FormatError("no rotations for X or for the triples", line=numbered[-1][0])
    try:
        levi = build_levi(HypergraphSpec(n=max(x_labels), m=1 + max(y.copy for y in triples)))
    except InvalidSpec as e:
        raise FormatError(str(e.detail), line=numbered[-1][0])

    last = numbered[-1][0]
    for v in levi.vertices:
        if v not in rotation:
            raise FormatError(f"missing rotation for {vertex_label(v, levi.spec.m)}", line=last)
        if Counter(rotation[v]) != Counter(levi.neighbors(v)):
            raise FormatError(f"rotation at {vertex_label(v, levi.spec.m)} is not a cyclic order of its neighbours", line=last)
    if len(rotation) != levi.vertex_count:
        raise FormatError("rotations name vertices outside the Levi graph", line=last)
    for edge in levi.edges():
        if edge not in signature:
            raise FormatError(f"missing signature for {edge[0]} {vertex_label(edge[1], levi.spec.m)}", line=last)
    if len(signature) != levi.edge_count:
        raise FormatError("signatures name edges outside the Levi graph", line=last)

    # parsed triples do not know m; use the Levi graph's own vertices
    vertex = {v: v for v in levi.vertices}
    rotation = {vertex[v]: tuple(vertex[w] for w in ring) for v, ring in rotation.items()}
    signature = {(x, vertex[y]): sign for (x, y), sign in signature.items()}
    return EmbeddingScheme(levi=levi, rotation=rotation, signature=signature)
