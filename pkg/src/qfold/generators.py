"""Seeded random generators for module-laboratory property tests.

Everything here is deterministic given a random.Random instance.  The
central recipe builds stable twist-fixed module pairs: data fixed by the
transport up to an explicit grading gauge g0 (signs at automorphism-fixed
vertices), then conjugated by a random orbit-constant change of basis.
That keeps the transition matrices computable in closed form while
producing generic-looking instances.

Modules produced here always satisfy the preprojective relation exactly:
B is supported on one direction of each edge, and I = 0, so every term of
the relation has a zero factor.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Optional

from .errors import InputError
from .linalg import Mat
from .numberfield import Fp, cyclotomic_poly
from .module_lab import (
    FramedModule,
    SigmaData,
    TransitionWitness,
    act,
    apply_theta,
    arrow_key,
    check_relations,
    doubled_arrows,
    framed_module,
    invariant_orientation,
    is_stable,
    verify_transition,
)
from .quiver_core import Arrow, DiagramAutomorphism, Quiver, arrow_image, orbit_data


def rand_mat(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2,
             p: Optional[int] = None) -> Mat:
    if p is None:
        return Mat(rows, cols, [[Fraction(rng.randint(lo, hi)) for _ in range(cols)]
                                for _ in range(rows)])
    return Mat(rows, cols, [[Fp(rng.randrange(p), p) for _ in range(cols)]
                            for _ in range(rows)])


def rand_invertible(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> Mat:
    if n == 0:
        return Mat.zeros(0, 0)
    for _ in range(200):
        m = rand_mat(rng, n, n, lo, hi)
        if m.is_invertible():
            return m
    raise InputError("could not sample an invertible matrix")


def random_finite_order_matrix(rng: random.Random, n: int, e: int) -> Mat:
    """A rational n x n matrix with matrix^e = identity, built from
    companion blocks of cyclotomic polynomials and a random conjugation."""
    divisors = [d for d in range(1, e + 1) if e % d == 0]
    blocks: list[Mat] = []
    remaining = n
    while remaining > 0:
        options = [d for d in divisors if _phi_deg(d) <= remaining]
        d = rng.choice(options)
        blocks.append(_companion(list(cyclotomic_poly(d))))
        remaining -= _phi_deg(d)
    core = Mat.block_diag(blocks) if blocks else Mat.zeros(0, 0)
    t = rand_invertible(rng, n)
    return t * core * t.inverse()


def _phi_deg(d: int) -> int:
    return len(cyclotomic_poly(d)) - 1


def _companion(coeffs) -> Mat:
    n = len(coeffs) - 1
    rows = [[Fraction(0)] * n for _ in range(n)]
    for r in range(1, n):
        rows[r][r - 1] = Fraction(1)
    for r in range(n):
        rows[r][n - 1] = -coeffs[n - r]  # constant term topmost
    return Mat.from_rows(rows)


def random_orbit_constant_dims(rng: random.Random, q: Quiver, a: DiagramAutomorphism,
                               lo: int = 0, hi: int = 2) -> dict[str, int]:
    od = orbit_data(q, a)
    out: dict[str, int] = {}
    for orbit in od.vertex_orbits:
        val = rng.randint(lo, hi)
        for x in orbit:
            out[x] = val
    return out


def random_one_way_module(rng: random.Random, q: Quiver, v: Mapping[str, int],
                          w: Mapping[str, int], p: Optional[int] = None,
                          signed: bool = True) -> FramedModule:
    """Relation-exact random module: one random direction per edge carries
    a random matrix, J is arbitrary, I = 0."""
    zero = Fraction(0) if p is None else Fp(0, p)
    B: dict[str, Mat] = {}
    for e in q.edges:
        forward = rng.random() < 0.5
        key = e.id if forward else e.id + "*"
        src, tgt = (e.src, e.tgt) if forward else (e.tgt, e.src)
        B[key] = rand_mat(rng, v.get(tgt, 0), v.get(src, 0), p=p)
    J = {x: rand_mat(rng, w.get(x, 0), v.get(x, 0), p=p) for x in q.vertices}
    m = framed_module(q, v, w, B=B, J=J, signed=signed, zero=zero)
    assert check_relations(m).ok
    return m


def random_sigma(rng: random.Random, q: Quiver, a: DiagramAutomorphism,
                 wdims: Mapping[str, int]) -> SigmaData:
    """A valid framing twist: free along each orbit, with the last map
    chosen so the composite is a random matrix of exact order dividing e."""
    od = orbit_data(q, a)
    maps: dict[str, Mat] = {}
    for orbit in od.vertex_orbits:
        n = wdims.get(orbit[0], 0)
        e = od.e_vertex[orbit[0]]
        chain = []
        vertex = orbit[0]
        for _ in range(len(orbit) - 1):
            g = rand_invertible(rng, n)
            maps[vertex] = g
            chain.append(g)
            vertex = a.vertex_perm[vertex]
        target = random_finite_order_matrix(rng, n, e) if n else Mat.zeros(0, 0)
        partial = Mat.identity(n)
        for g in chain:
            partial = g * partial
        maps[vertex] = target * partial.inverse() if n else Mat.zeros(0, 0)
    sigma = SigmaData(q, a, maps)
    sigma.validate(dict(wdims))
    return sigma


def random_theta_module(rng: random.Random, q: Quiver, a: DiagramAutomorphism,
                        max_dim: int = 2, p: Optional[int] = None,
                        with_twist: bool = True) -> tuple[FramedModule, SigmaData]:
    """A random relation-exact module with orbit-constant dimensions and a
    valid twist, suitable for transport-order tests.  Falls back to an
    unsigned module when no invariant orientation exists."""
    v = random_orbit_constant_dims(rng, q, a, 0, max_dim)
    w = random_orbit_constant_dims(rng, q, a, 0, max_dim)
    signed = invariant_orientation(q, a) is not None
    m = random_one_way_module(rng, q, v, w, p=p, signed=signed)
    if with_twist and p is None:
        sigma = random_sigma(rng, q, a, w)
    else:
        one = Fraction(1) if p is None else Fp(1, p)
        sigma = SigmaData(q, a, {x: Mat.identity(w.get(x, 0), one) for x in q.vertices})
    return m, sigma


# ---------------------------------------------------------------------------
# graded stable pairs with computable transitions
# ---------------------------------------------------------------------------

def _signs(plus: int, minus: int) -> list[int]:
    return [1] * plus + [-1] * minus


def _sign_diag(signs: list[int]) -> Mat:
    n = len(signs)
    return Mat(n, n, [[Fraction(signs[r]) if r == c else Fraction(0)
                       for c in range(n)] for r in range(n)])


def random_graded_pair(rng: random.Random, q: Quiver, a: DiagramAutomorphism,
                       max_sub: int = 2, max_extra: int = 1, max_tries: int = 60):
    """A stable pair (submodule inside ambient module) fixed by the twisted
    transport up to sign gradings at automorphism-fixed vertices, then
    conjugated by random orbit-constant gauges.

    Returns (xi, m_sub, m, sigma, witness_sub, witness).  Requires an
    involutive automorphism.
    """
    od = orbit_data(q, a)
    if any(len(o) > 2 for o in od.vertex_orbits):
        raise InputError("graded pair generation handles involutions only")

    for _ in range(max_tries):
        result = _try_graded_pair(rng, q, a, od, max_sub, max_extra)
        if result is not None:
            return result
    raise InputError("failed to generate a stable graded pair")


def _try_graded_pair(rng, q, a, od, max_sub, max_extra):
    fixed = {x for x in q.vertices if a.vertex_perm[x] == x}

    # per-vertex layout: coordinates [sub+, sub-, ext+, ext-] at fixed
    # vertices, [sub, ext] elsewhere (orbit-constant sizes)
    sub_dim: dict[str, int] = {}
    ext_dim: dict[str, int] = {}
    v_signs: dict[str, list[int]] = {}
    sub_signs: dict[str, list[int]] = {}
    w_signs: dict[str, list[int]] = {}
    for orbit in od.vertex_orbits:
        rep = orbit[0]
        if rep in fixed:
            sp, sm = rng.randint(0, max_sub), rng.randint(0, max_sub)
            ep, em = rng.randint(0, max_extra), rng.randint(0, max_extra)
            sub_dim[rep] = sp + sm
            ext_dim[rep] = ep + em
            sub_signs[rep] = _signs(sp, sm)
            v_signs[rep] = _signs(sp, sm) + _signs(ep, em)
            wp = sp + ep + rng.randint(0, 1)
            wm = sm + em + rng.randint(0, 1)
            w_signs[rep] = _signs(wp, wm)
        else:
            s, ex = rng.randint(0, max_sub), rng.randint(0, max_extra)
            wdim = s + ex + rng.randint(0, 1)
            for x in orbit:
                sub_dim[x] = s
                ext_dim[x] = ex
                sub_signs[x] = [1] * s
                v_signs[x] = [1] * (s + ex)
                w_signs[x] = [1] * wdim

    v = {x: sub_dim[x] + ext_dim[x] for x in q.vertices}
    vsub = {x: sub_dim[x] for x in q.vertices}
    w = {x: len(w_signs[x]) for x in q.vertices}
    if sum(v.values()) == 0:
        return None

    g0 = {x: _sign_diag(v_signs[x]) for x in q.vertices}
    g0_sub = {x: _sign_diag(sub_signs[x]) for x in q.vertices}

    # arrow matrices: triangular w.r.t. the sub coordinates; grading
    # equivariant on automorphism-fixed edges; transported otherwise
    B: dict[str, Mat] = {}
    orient = invariant_orientation(q, a)
    if orient is None:
        return None

    def c1(key: str) -> int:
        if key.endswith("*"):
            return 1
        return orient[key]

    for eorb in od.edge_orbits:
        rep_edge = q.edge(eorb[0])
        forward = rng.random() < 0.5
        h0 = Arrow(rep_edge.id, 1 if forward else -1)
        src = rep_edge.src if forward else rep_edge.tgt
        tgt = rep_edge.tgt if forward else rep_edge.src
        x = _random_triangular(rng, v[tgt], v[src], sub_dim[tgt], sub_dim[src])
        if len(eorb) == 1 and arrow_image(q, a, h0) == h0:
            x = _mask_equivariant(x, v_signs[tgt], v_signs[src])
        B[arrow_key(h0)] = x
        if len(eorb) == 2:
            img = arrow_image(q, a, h0)
            sign = c1(arrow_key(h0)) * c1(arrow_key(img))
            isrc, itgt = _arrow_ends(q, img)
            mapped = g0[itgt].inverse() * x * g0[isrc]
            B[arrow_key(img)] = mapped if sign == 1 else -mapped
        elif arrow_image(q, a, h0) != h0:
            # a-fixed edge traversed against itself: reversal, excluded by
            # the invariant orientation test
            return None

    # framing: J block-diagonal in the sign grading at fixed vertices,
    # transported along swapped orbits; injective on both sub and total
    J: dict[str, Mat] = {}
    sigma_maps: dict[str, Mat] = {}
    for orbit in od.vertex_orbits:
        rep = orbit[0]
        if rep in fixed:
            j = _random_sign_compatible(rng, w_signs[rep], v_signs[rep])
            J[rep] = j
            sigma_maps[rep] = _sign_diag(w_signs[rep])
        else:
            j = rand_mat(rng, w[rep], v[rep])
            J[rep] = j
            other = a.vertex_perm[rep]
            y = rand_invertible(rng, w[rep])
            sigma_maps[rep] = y
            sigma_maps[other] = y.inverse()
            J[other] = y * j
    for x in q.vertices:
        if J[x].rank() != v[x]:
            return None
        if vsub[x] and J[x].submatrix(range(w[x]), range(vsub[x])).rank() != vsub[x]:
            return None

    m = framed_module(q, v, w, B=B, J=J)
    sigma = SigmaData(q, a, sigma_maps)
    sigma.validate(w)
    if apply_theta(m, a, sigma) != act(g0, m):
        raise InputError("graded construction failed its transport identity")
    if not is_stable(m):
        return None

    xi0 = {x: Mat.identity(v[x]).submatrix(range(v[x]), range(vsub[x])) for x in q.vertices}
    m_sub = framed_module(
        q, vsub, w,
        B={info.key: m.B[info.key].submatrix(range(vsub[info.tgt]), range(vsub[info.src]))
           for info in doubled_arrows(q)},
        J={x: J[x].submatrix(range(w[x]), range(vsub[x])) for x in q.vertices})
    if not is_stable(m_sub):
        return None
    if apply_theta(m_sub, a, sigma) != act(g0_sub, m_sub):
        raise InputError("graded subconstruction failed its transport identity")

    # conjugate both sides by orbit-constant gauges
    h = _orbit_constant_gauge(rng, od, v)
    hsub = _orbit_constant_gauge(rng, od, vsub)
    m_final = act(h, m)
    sub_final = act(hsub, m_sub)
    xi = {x: h[x] * xi0[x] * hsub[x].inverse() for x in q.vertices}
    witness = TransitionWitness({x: h[x] * g0[x] * h[x].inverse() for x in q.vertices})
    witness_sub = TransitionWitness({x: hsub[x] * g0_sub[x] * hsub[x].inverse() for x in q.vertices})
    if not verify_transition(m_final, a, sigma, witness):
        raise InputError("conjugated witness failed verification")
    if not verify_transition(sub_final, a, sigma, witness_sub):
        raise InputError("conjugated subwitness failed verification")
    return xi, sub_final, m_final, sigma, witness_sub, witness


def _arrow_ends(q: Quiver, arrow: Arrow) -> tuple[str, str]:
    e = q.edge(arrow.edge)
    return (e.src, e.tgt) if arrow.eps == 1 else (e.tgt, e.src)


def _random_triangular(rng, rows, cols, sub_rows, sub_cols) -> Mat:
    m = [[Fraction(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
    for r in range(sub_rows, rows):
        for c in range(sub_cols):
            m[r][c] = Fraction(0)
    return Mat(rows, cols, m)


def _mask_equivariant(m: Mat, row_signs: list[int], col_signs: list[int]) -> Mat:
    data = [[m[r, c] if row_signs[r] == col_signs[c] else Fraction(0)
             for c in range(m.cols)] for r in range(m.rows)]
    return Mat(m.rows, m.cols, data)


def _random_sign_compatible(rng, row_signs: list[int], col_signs: list[int]) -> Mat:
    data = [[Fraction(rng.randint(-2, 2)) if row_signs[r] == col_signs[c] else Fraction(0)
             for c in range(len(col_signs))] for r in range(len(row_signs))]
    return Mat(len(row_signs), len(col_signs), data)


def _orbit_constant_gauge(rng, od, dims: Mapping[str, int]) -> dict[str, Mat]:
    out: dict[str, Mat] = {}
    for orbit in od.vertex_orbits:
        g = rand_invertible(rng, dims.get(orbit[0], 0))
        for x in orbit:
            out[x] = g
    return out
