"""Quotient and split-quotient quivers, and the dimension-vector projection.

The split quiver has one vertex per (vertex orbit, phase j/e_i) pair with
1 <= j <= e_i.  The phase slot j carries the eigenvalue exp(2*pi*i*(j-1)/e_i)
of the framing composite, so slot j = 1 is always the eigenvalue-1 piece.
An edge joins (i1, j1/e1) and (i2, j2/e2) once per quotient edge orbit h
and per solution of the congruence j1 = j2 (mod e_h); this is the matching
of phases that makes an arrow component survive on the fixed locus, and it
reproduces the classical D/A correspondence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterator, Mapping, Optional

from .errors import (
    IsoNotFound,
    NotDiagonalizableOverCyclotomicEigenvalues,
    NotOrbitConstant,
    SigmaConstraintViolated,
    ShapeMismatch,
    UnknownVertex,
)
from .linalg import Mat
from .numberfield import cyclotomic_poly
from .quiver_core import (
    DiagramAutomorphism,
    OrbitData,
    Quiver,
    check_automorphism,
    orbit_data,
    quiver,
    require_admissible,
)

DimVec = Mapping[str, int]


@dataclass(frozen=True)
class SplitVertex:
    """A split-quiver vertex: a vertex orbit together with a phase j/e."""

    orbit: tuple[str, ...]
    j: int
    e: int

    def __post_init__(self):
        if not 1 <= self.j <= self.e:
            raise ValueError("phase numerator out of range")

    @property
    def id(self) -> str:
        return f"{self.orbit[0]}@{self.j}/{self.e}"

    @property
    def phase(self) -> Fraction:
        """The label fraction j/e, kept in (0, 1]."""
        return Fraction(self.j, self.e)

    @property
    def eigenphase(self) -> Fraction:
        """Exponent t of the slot's eigenvalue exp(2*pi*i*t), in [0, 1)."""
        return Fraction(self.j - 1, self.e)


@dataclass(frozen=True)
class SplitData:
    source: Quiver
    auto: DiagramAutomorphism
    orbits: OrbitData
    split: Quiver
    induced: DiagramAutomorphism
    vertex_table: Mapping[str, SplitVertex]
    orbit_slots: tuple[tuple[str, ...], ...]  # split vertex ids per orbit, j ascending

    def split_vertices_of_orbit(self, orbit_index: int) -> list[str]:
        return list(self.orbit_slots[orbit_index])


def quotient_quiver(q: Quiver, a: DiagramAutomorphism) -> Quiver:
    """Quiver on vertex orbits and edge orbits, labelled by minimal members."""
    require_admissible(q, a)
    od = orbit_data(q, a)
    vlabel = {i: orb[0] for i, orb in enumerate(od.vertex_orbits)}
    vertices = [vlabel[i] for i in range(len(od.vertex_orbits))]
    edges = []
    for orb in od.edge_orbits:
        rep = q.edge(orb[0])
        edges.append((orb[0],
                      vlabel[od.orbit_of_vertex[rep.src]],
                      vlabel[od.orbit_of_vertex[rep.tgt]]))
    return quiver(vertices, edges)


def split_quiver(q: Quiver, a: DiagramAutomorphism) -> SplitData:
    require_admissible(q, a)
    od = orbit_data(q, a)

    if od.n == 1:
        # all orbits are singletons, so the automorphism is the identity
        # and the split quiver is the input itself, labels included
        table = {v: SplitVertex((v,), 1, 1) for v in q.vertices}
        slots = tuple((v,) for v in q.vertices)
        induced = DiagramAutomorphism({v: v for v in q.vertices},
                                      {e.id: e.id for e in q.edges}, 1)
        return SplitData(q, a, od, q, induced, table, slots)

    table: dict[str, SplitVertex] = {}
    vertices: list[str] = []
    slots: list[tuple[str, ...]] = []
    for orbit in od.vertex_orbits:
        e = od.e_vertex[orbit[0]]
        ids = []
        for j in range(1, e + 1):
            sv = SplitVertex(orbit, j, e)
            table[sv.id] = sv
            vertices.append(sv.id)
            ids.append(sv.id)
        slots.append(tuple(ids))

    edges: list[tuple[str, str, str]] = []
    eperm: dict[str, str] = {}
    for eorb in od.edge_orbits:
        rep = q.edge(eorb[0])
        e_h = od.e_edge[eorb[0]]
        o1 = od.vertex_orbits[od.orbit_of_vertex[rep.src]]
        o2 = od.vertex_orbits[od.orbit_of_vertex[rep.tgt]]
        e1, e2 = od.e_vertex[o1[0]], od.e_vertex[o2[0]]
        for j1 in range(1, e1 + 1):
            for j2 in range(1, e2 + 1):
                if (j1 - j2) % e_h != 0:
                    continue
                eid = _split_edge_id(eorb[0], j1, e1, j2, e2)
                edges.append((eid, SplitVertex(o1, j1, e1).id, SplitVertex(o2, j2, e2).id))
                eperm[eid] = _split_edge_id(eorb[0], j1 % e1 + 1, e1, j2 % e2 + 1, e2)

    split = quiver(vertices, edges)
    vperm = {sv.id: SplitVertex(sv.orbit, sv.j % sv.e + 1, sv.e).id for sv in table.values()}
    induced = DiagramAutomorphism(vperm, eperm, od.n)
    check_automorphism(split, induced)
    return SplitData(q, a, od, split, induced, table, tuple(slots))


def _split_edge_id(edge_orbit: str, j1: int, e1: int, j2: int, e2: int) -> str:
    return f"{edge_orbit}@{j1}/{e1}|{j2}/{e2}"


# ---------------------------------------------------------------------------
# diagram isomorphism
# ---------------------------------------------------------------------------

def _adjacency(q: Quiver) -> dict[str, dict[str, int]]:
    adj: dict[str, dict[str, int]] = {v: {} for v in q.vertices}
    for e in q.edges:
        adj[e.src][e.tgt] = adj[e.src].get(e.tgt, 0) + 1
        if e.src != e.tgt:
            adj[e.tgt][e.src] = adj[e.tgt].get(e.src, 0) + 1
    return adj


def graph_isomorphisms(q1: Quiver, q2: Quiver) -> Iterator[dict[str, str]]:
    """All undirected diagram isomorphisms q1 -> q2 (multiplicity preserving)."""
    if len(q1.vertices) != len(q2.vertices) or len(q1.edges) != len(q2.edges):
        return
    adj1, adj2 = _adjacency(q1), _adjacency(q2)
    deg1 = {v: sum(adj1[v].values()) for v in q1.vertices}
    deg2 = {v: sum(adj2[v].values()) for v in q2.vertices}
    if sorted(deg1.values()) != sorted(deg2.values()):
        return
    # most-constrained-first: high degree vertices early
    order = sorted(q1.vertices, key=lambda v: -deg1[v])
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(k: int) -> Iterator[dict[str, str]]:
        if k == len(order):
            yield dict(mapping)
            return
        v = order[k]
        for w in q2.vertices:
            if w in used or deg1[v] != deg2[w]:
                continue
            ok = adj1[v].get(v, 0) == adj2[w].get(w, 0)
            if ok:
                for u, mult in adj1[v].items():
                    if u in mapping and adj2[w].get(mapping[u], 0) != mult:
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used.add(w)
                yield from extend(k + 1)
                del mapping[v]
                used.discard(w)

    yield from extend(0)


def graph_isomorphic(q1: Quiver, q2: Quiver) -> Optional[dict[str, str]]:
    """One diagram isomorphism, or None."""
    return next(graph_isomorphisms(q1, q2), None)


@dataclass(frozen=True)
class InvolutionWitness:
    vertex_map: Mapping[str, str]  # vertices of s(s(Q)) -> vertices of Q
    automorphism_matched: bool


def split_involution_check(q: Quiver, a: DiagramAutomorphism) -> InvolutionWitness:
    """Witness that splitting twice returns the original diagram.

    Prefers an isomorphism that also intertwines the twice-induced
    automorphism with the original one.
    """
    sd = split_quiver(q, a)
    sd2 = split_quiver(sd.split, sd.induced)
    first: Optional[dict[str, str]] = None
    for iso in graph_isomorphisms(sd2.split, q):
        if first is None:
            first = iso
        if all(iso[sd2.induced.vertex_perm[x]] == a.vertex_perm[iso[x]] for x in iso):
            return InvolutionWitness(iso, True)
    if first is not None:
        return InvolutionWitness(first, False)
    raise IsoNotFound(
        f"s(s(Q)) has {len(sd2.split.vertices)} vertices, Q has {len(q.vertices)}; no diagram isomorphism"
    )


# ---------------------------------------------------------------------------
# dimension vectors
# ---------------------------------------------------------------------------

def validate_dimvec(v: DimVec, q: Quiver) -> None:
    for key in v:
        if key not in q.vertices:
            raise UnknownVertex(f"dimension vector mentions unknown vertex {key}")
    for key, val in v.items():
        if val < 0:
            raise UnknownVertex(f"negative dimension at {key}")


def project_dim(vprime: DimVec, sd: SplitData) -> dict[str, int]:
    """Push a split-quiver dimension vector down to the source quiver.

    The value at a source vertex is the sum over the phases of its orbit,
    so the result is constant along each orbit by construction.
    """
    validate_dimvec(vprime, sd.split)
    out: dict[str, int] = {}
    for idx, orbit in enumerate(sd.orbits.vertex_orbits):
        total = sum(vprime.get(svid, 0) for svid in sd.split_vertices_of_orbit(idx))
        for v in orbit:
            out[v] = total
    return out


def is_orbit_constant(v: DimVec, od: OrbitData) -> bool:
    return all(len({v.get(x, 0) for x in orbit}) == 1 for orbit in od.vertex_orbits)


def fiber_count(v: DimVec, sd: SplitData) -> int:
    """Closed form for the number of split vectors projecting to v."""
    count = 1
    for orbit in sd.orbits.vertex_orbits:
        e = sd.orbits.e_vertex[orbit[0]]
        count *= comb(v.get(orbit[0], 0) + e - 1, e - 1)
    return count


def fibers_of_p(v: DimVec, sd: SplitData) -> list[dict[str, int]]:
    """All split dimension vectors projecting to v, in lexicographic order
    over the canonical split-vertex order."""
    validate_dimvec(v, sd.source)
    if not is_orbit_constant(v, sd.orbits):
        raise NotOrbitConstant("dimension vector is not constant on vertex orbits")

    per_orbit: list[list[tuple[int, ...]]] = []
    slots: list[list[str]] = []
    for idx, orbit in enumerate(sd.orbits.vertex_orbits):
        total = v.get(orbit[0], 0)
        e = sd.orbits.e_vertex[orbit[0]]
        per_orbit.append(_compositions(total, e))
        slots.append(sd.split_vertices_of_orbit(idx))

    out = []
    for combo in itertools.product(*per_orbit):
        vec: dict[str, int] = {}
        for slot_ids, parts in zip(slots, combo):
            for svid, val in zip(slot_ids, parts):
                vec[svid] = val
        out.append(vec)
    return out


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Weak compositions of total into parts slots, lexicographically."""
    if parts == 0:
        return [()] if total == 0 else []
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# framing eigenspace split
# ---------------------------------------------------------------------------

def _euler_phi(d: int) -> int:
    return sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)


def root_of_unity_eigendims(m: Mat, e: int) -> list[int]:
    """Exact eigenspace dimensions of a rational matrix m with m^e = 1,
    listed for eigenvalues exp(2*pi*i*t), t = 0/e, 1/e, ..., (e-1)/e.

    Galois conjugate eigenvalues of a rational matrix have equal eigenspace
    dimensions, so the dimension at a primitive d-th root is
    nullity(Phi_d(m)) / phi(d); no cyclotomic arithmetic is needed.
    """
    dims = []
    nullities: dict[int, int] = {}
    for t in range(e):
        d = e // gcd(t, e) if t else 1
        if d not in nullities:
            nullities[d] = m.poly_eval(list(cyclotomic_poly(d))).nullity()
        phi = _euler_phi(d)
        nd = nullities[d]
        if nd % phi != 0:
            raise NotDiagonalizableOverCyclotomicEigenvalues(
                f"kernel of Phi_{d} has dimension {nd}, not a multiple of phi({d})={phi}"
            )
        dims.append(nd // phi)
    return dims


def split_framing(wdims: DimVec, sigma: Mapping[str, Mat], sd: SplitData) -> dict[str, int]:
    """Grade the framing by eigenvalues of the around-the-orbit composite.

    The slot (orbit, j/e) receives the dimension of the eigenvalue
    exp(2*pi*i*(j-1)/e) eigenspace of the composite at the orbit's minimal
    lift, so identity twists put everything in the j = 1 slot.
    """
    q, a, od = sd.source, sd.auto, sd.orbits
    if not is_orbit_constant(wdims, od):
        raise NotOrbitConstant("framing dimensions must be constant on orbits")
    for v in q.vertices:
        m = sigma[v]
        if m.rows != wdims.get(a.vertex_perm[v], 0) or m.cols != wdims.get(v, 0):
            raise ShapeMismatch(f"sigma at {v} must be {wdims.get(a.vertex_perm[v], 0)}x{wdims.get(v, 0)}")

    out: dict[str, int] = {}
    for idx, orbit in enumerate(od.vertex_orbits):
        lift = orbit[0]
        e = od.e_vertex[lift]
        comp = orbit_composite(sigma, a, lift, od.d_vertex[lift])
        if comp.rows and not comp.power(e) == Mat.identity(comp.rows):
            raise SigmaConstraintViolated(
                f"(sigma composite at {lift})^{e} is not the identity"
            )
        dims = root_of_unity_eigendims(comp, e) if comp.rows else [0] * e
        total = wdims.get(lift, 0)
        if sum(dims) != total:
            raise NotDiagonalizableOverCyclotomicEigenvalues(
                f"eigenspace dimensions {dims} do not fill dimension {total} at {lift}"
            )
        for j, svid in zip(range(1, e + 1), sd.split_vertices_of_orbit(idx)):
            out[svid] = dims[j - 1]
    return out


def orbit_composite(sigma: Mapping[str, Mat], a: DiagramAutomorphism, lift: str, d: int) -> Mat:
    """sigma_{a^{d-1}(lift)} ... sigma_{a(lift)} sigma_{lift} as one matrix."""
    vertex = lift
    comp = None
    for _ in range(d):
        m = sigma[vertex]
        comp = m if comp is None else m * comp
        vertex = a.vertex_perm[vertex]
    assert vertex == lift
    return comp if comp is not None else Mat.identity(0)
