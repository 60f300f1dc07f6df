"""Quiver data model, doubling/framing, and diagram automorphisms.

Vertices and edge ids are opaque strings.  The order of the ``vertices``
tuple is the canonical order used everywhere downstream (orbit labels,
Cartan matrix indexing, JSON output).  Edge direction is arbitrary: the
underlying diagram is what matters, and automorphisms are allowed to
reverse edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import (
    AmbiguousEdgeMap,
    IncompatibleWithIncidence,
    InputError,
    NotAPermutation,
    NotAdmissible,
)


class Edge(NamedTuple):
    id: str
    src: str
    tgt: str


class Arrow(NamedTuple):
    """One arrow of the doubled quiver: an edge taken forwards or backwards."""

    edge: str
    eps: int  # +1 along the edge's direction, -1 reversed

    @property
    def key(self) -> str:
        return self.edge if self.eps == 1 else self.edge + "*"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.tgt not in vs:
                raise InputError(f"edge {e.id} uses unknown vertex")

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise InputError(f"unknown edge {edge_id}")

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise InputError(f"unknown vertex {v}") from None

    def edges_between(self, u: str, v: str) -> list[Edge]:
        pair = {u, v}
        return [e for e in self.edges if {e.src, e.tgt} == pair]

    def has_self_loop(self) -> bool:
        return any(e.src == e.tgt for e in self.edges)


def quiver(vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> Quiver:
    return Quiver(tuple(vertices), tuple(Edge(*e) for e in edges))


@dataclass(frozen=True)
class DoubledQuiver:
    base: Quiver
    arrows: tuple[Arrow, ...]

    def src(self, a: Arrow) -> str:
        e = self.base.edge(a.edge)
        return e.src if a.eps == 1 else e.tgt

    def tgt(self, a: Arrow) -> str:
        e = self.base.edge(a.edge)
        return e.tgt if a.eps == 1 else e.src

    @staticmethod
    def reversal(a: Arrow) -> Arrow:
        return Arrow(a.edge, -a.eps)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if self.src(a) == v]


def build_doubled(q: Quiver) -> DoubledQuiver:
    """Double the quiver: one reversed partner per edge, signed by eps."""
    arrows = []
    for e in q.edges:
        arrows.append(Arrow(e.id, 1))
        arrows.append(Arrow(e.id, -1))
    return DoubledQuiver(q, tuple(arrows))


@dataclass(frozen=True)
class FramedQuiver:
    base: DoubledQuiver
    framing: tuple[tuple[str, str, str], ...]  # (vertex, arrow in, arrow out)

    @property
    def vertex_count(self) -> int:
        """Base vertices plus their framing copies."""
        return 2 * len(self.base.base.vertices)


def build_framed(q: Quiver) -> FramedQuiver:
    """Add a framing copy of each vertex with an arrow pair to the original."""
    doubled = build_doubled(q)
    framing = tuple((v, f"frame_in:{v}", f"frame_out:{v}") for v in q.vertices)
    return FramedQuiver(doubled, framing)


@dataclass(frozen=True)
class DiagramAutomorphism:
    vertex_perm: Mapping[str, str]
    edge_perm: Mapping[str, str]
    order: int

    def vertex(self, v: str) -> str:
        return self.vertex_perm[v]

    def edge(self, e: str) -> str:
        return self.edge_perm[e]

    def inverse_vertex(self, v: str) -> str:
        for k, im in self.vertex_perm.items():
            if im == v:
                return k
        raise InputError(f"vertex {v} not in permutation range")


def _perm_order(perm: Mapping[str, str]) -> int:
    order = 1
    seen = set()
    for start in perm:
        if start in seen:
            continue
        x, k = start, 0
        while True:
            x = perm[x]
            k += 1
            seen.add(x)
            if x == start:
                break
        order = lcm(order, k)
    return order


def check_automorphism(q: Quiver, a: DiagramAutomorphism) -> None:
    """Validate that a is a diagram automorphism of q; raises otherwise.

    Incidence compatibility is taken up to edge reversal, since edge
    directions in the input are arbitrary.
    """
    if sorted(a.vertex_perm) != sorted(q.vertices) or sorted(a.vertex_perm.values()) != sorted(q.vertices):
        raise NotAPermutation("vertex map is not a permutation of the vertex set")
    edge_ids = sorted(e.id for e in q.edges)
    if sorted(a.edge_perm) != edge_ids or sorted(a.edge_perm.values()) != edge_ids:
        raise NotAPermutation("edge map is not a permutation of the edge set")
    for e in q.edges:
        image = q.edge(a.edge_perm[e.id])
        want = {a.vertex_perm[e.src], a.vertex_perm[e.tgt]}
        if {image.src, image.tgt} != want:
            raise IncompatibleWithIncidence(
                f"edge {e.id}: image {image.id} joins {{{image.src},{image.tgt}}}, expected {sorted(want)}"
            )
    vorder = _perm_order(a.vertex_perm) if a.vertex_perm else 1
    if a.order < 1 or a.order % vorder != 0:
        raise InputError(f"declared order {a.order} does not annihilate the vertex permutation")


def derive_edge_perm(q: Quiver, vperm: Mapping[str, str]) -> dict[str, str]:
    """Edge permutation induced by a vertex permutation; fails when parallel
    edges make the image ambiguous."""
    eperm: dict[str, str] = {}
    for e in q.edges:
        candidates = q.edges_between(vperm[e.src], vperm[e.tgt])
        if len(candidates) != 1:
            raise AmbiguousEdgeMap(
                f"edge {e.id}: {len(candidates)} candidate images; supply the edge map explicitly"
            )
        eperm[e.id] = candidates[0].id
    return eperm


def automorphism(q: Quiver, vperm: Mapping[str, str],
                 eperm: Optional[Mapping[str, str]] = None) -> DiagramAutomorphism:
    """Build and validate a diagram automorphism; derives the edge map if omitted."""
    if eperm is None:
        eperm = derive_edge_perm(q, vperm)
    order = lcm(_perm_order(dict(vperm)) if vperm else 1,
                _perm_order(dict(eperm)) if eperm else 1)
    a = DiagramAutomorphism(dict(vperm), dict(eperm), order)
    check_automorphism(q, a)
    return a


def identity_automorphism(q: Quiver) -> DiagramAutomorphism:
    return DiagramAutomorphism({v: v for v in q.vertices}, {e.id: e.id for e in q.edges}, 1)


def compose(q: Quiver, a: DiagramAutomorphism, b: DiagramAutomorphism) -> DiagramAutomorphism:
    """The automorphism applying b first, then a."""
    vperm = {v: a.vertex_perm[b.vertex_perm[v]] for v in q.vertices}
    eperm = {e.id: a.edge_perm[b.edge_perm[e.id]] for e in q.edges}
    return automorphism(q, vperm, eperm)


def orientation_sign(q: Quiver, a: DiagramAutomorphism, edge_id: str) -> int:
    """+1 if a maps the edge preserving its direction, -1 if it reverses it."""
    e = q.edge(edge_id)
    image = q.edge(a.edge_perm[edge_id])
    if image.src == a.vertex_perm[e.src]:
        return 1
    return -1


def arrow_image(q: Quiver, a: DiagramAutomorphism, arrow: Arrow) -> Arrow:
    """Image of a doubled-quiver arrow under the automorphism."""
    return Arrow(a.edge_perm[arrow.edge], arrow.eps * orientation_sign(q, a, arrow.edge))


def is_admissible(q: Quiver, a: DiagramAutomorphism) -> bool:
    """True iff no edge joins two vertices of the same vertex orbit."""
    check_automorphism(q, a)
    od = orbit_data(q, a)
    for e in q.edges:
        if od.orbit_of_vertex[e.src] == od.orbit_of_vertex[e.tgt]:
            return False
    return True


def require_admissible(q: Quiver, a: DiagramAutomorphism) -> None:
    if not is_admissible(q, a):
        raise NotAdmissible("automorphism joins vertices within an orbit")


@dataclass(frozen=True)
class OrbitData:
    vertex_orbits: tuple[tuple[str, ...], ...]
    edge_orbits: tuple[tuple[str, ...], ...]
    d_vertex: Mapping[str, int]
    d_edge: Mapping[str, int]
    n: int
    e_vertex: Mapping[str, int]
    e_edge: Mapping[str, int]
    orbit_of_vertex: Mapping[str, int] = field(default_factory=dict)
    orbit_of_edge: Mapping[str, int] = field(default_factory=dict)


def _orbits(items: tuple[str, ...], perm: Mapping[str, str]) -> list[tuple[str, ...]]:
    """Orbits as tuples; members and orbits ordered by canonical position."""
    pos = {x: i for i, x in enumerate(items)}
    seen: set[str] = set()
    orbits = []
    for x in items:
        if x in seen:
            continue
        orbit = []
        y = x
        while y not in orbit:
            orbit.append(y)
            seen.add(y)
            y = perm[y]
        orbits.append(tuple(sorted(orbit, key=pos.__getitem__)))
    return orbits


def orbit_data(q: Quiver, a: DiagramAutomorphism) -> OrbitData:
    """Orbit partition, orbit sizes d, their lcm n, and the cofactors e = n/d."""
    check_automorphism(q, a)
    vorbs = _orbits(q.vertices, a.vertex_perm)
    eorbs = _orbits(tuple(e.id for e in q.edges), a.edge_perm)
    d_vertex = {v: len(o) for o in vorbs for v in o}
    d_edge = {e: len(o) for o in eorbs for e in o}
    n = 1
    for o in vorbs:
        n = lcm(n, len(o))
    for o in eorbs:
        n = lcm(n, len(o))
    e_vertex = {v: n // d for v, d in d_vertex.items()}
    e_edge = {e: n // d for e, d in d_edge.items()}
    orbit_of_vertex = {v: i for i, o in enumerate(vorbs) for v in o}
    orbit_of_edge = {e: i for i, o in enumerate(eorbs) for e in o}
    return OrbitData(tuple(vorbs), tuple(eorbs), d_vertex, d_edge, n,
                     e_vertex, e_edge, orbit_of_vertex, orbit_of_edge)


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def a_quiver(n: int) -> Quiver:
    """Type A_n path: vertices 1..n, edges e{i}: i -> i+1."""
    if n < 1:
        raise InputError("A_n needs n >= 1")
    vs = [str(i) for i in range(1, n + 1)]
    es = [(f"e{i}", str(i), str(i + 1)) for i in range(1, n)]
    return quiver(vs, es)


def d_quiver(n: int) -> Quiver:
    """Type D_n: path 1..n-1 plus edge from n-2 to n (fork at n-2).

    n = 2 gives the degenerate two-point diagram, n = 3 the A_3 path in
    fork labelling.
    """
    if n < 2:
        raise InputError("D_n needs n >= 2")
    vs = [str(i) for i in range(1, n + 1)]
    es = [(f"e{i}", str(i), str(i + 1)) for i in range(1, n - 1)]
    if n >= 3:
        es.append((f"e{n - 1}", str(n - 2), str(n)))
    return quiver(vs, es)


def affine_a_quiver(n: int) -> Quiver:
    """Untwisted affine A_n cycle on vertices 0..n; n = 1 is the double edge."""
    if n < 1:
        raise InputError("affine A_n needs n >= 1")
    vs = [str(i) for i in range(n + 1)]
    if n == 1:
        return quiver(vs, [("e0", "0", "1"), ("e1", "0", "1")])
    es = [(f"e{i}", str(i), str((i + 1) % (n + 1))) for i in range(n + 1)]
    return quiver(vs, es)


def affine_d_quiver(n: int) -> Quiver:
    """Untwisted affine D_n on vertices 0..n: forks 0,1 at vertex 2 and
    n-1,n at vertex n-2."""
    if n < 4:
        raise InputError("affine D_n needs n >= 4")
    vs = [str(i) for i in range(n + 1)]
    es = [("e0", "0", "2"), ("e1", "1", "2")]
    es += [(f"e{i}", str(i), str(i + 1)) for i in range(2, n - 2)]
    es += [(f"e{n - 2}", str(n - 2), str(n - 1)), (f"e{n - 1}", str(n - 2), str(n))]
    return quiver(vs, es)


def flip_automorphism(q: Quiver, n: int) -> DiagramAutomorphism:
    """The order-2 flip i -> n+1-i of the A_n path."""
    vperm = {str(i): str(n + 1 - i) for i in range(1, n + 1)}
    return automorphism(q, vperm)


def fork_swap_automorphism(q: Quiver, n: int) -> DiagramAutomorphism:
    """The D_n fork swap exchanging vertices n-1 and n."""
    vperm = {str(i): str(i) for i in range(1, n - 1)}
    vperm[str(n - 1)] = str(n)
    vperm[str(n)] = str(n - 1)
    return automorphism(q, vperm)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------

def quiver_to_dict(q: Quiver, a: Optional[DiagramAutomorphism] = None) -> dict:
    out: dict = {
        "vertices": list(q.vertices),
        "edges": [{"id": e.id, "src": e.src, "tgt": e.tgt} for e in q.edges],
    }
    if a is not None:
        out["automorphism"] = {
            "vertices": dict(a.vertex_perm),
            "edges": dict(a.edge_perm),
        }
    return out


def quiver_from_dict(d: Mapping) -> tuple[Quiver, Optional[DiagramAutomorphism]]:
    try:
        q = quiver(d["vertices"], [(e["id"], e["src"], e["tgt"]) for e in d["edges"]])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quiver JSON: {exc}") from exc
    a = None
    if "automorphism" in d and d["automorphism"] is not None:
        block = d["automorphism"]
        a = automorphism(q, block["vertices"], block.get("edges"))
    return q, a


def quiver_to_json(q: Quiver, a: Optional[DiagramAutomorphism] = None) -> str:
    return json.dumps(quiver_to_dict(q, a), indent=2, sort_keys=True)


def quiver_from_json(text: str) -> tuple[Quiver, Optional[DiagramAutomorphism]]:
    return quiver_from_dict(json.loads(text))
