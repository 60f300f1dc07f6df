import itertools

import pytest

from qfold.corpus import corpus
from qfold.errors import IsoNotFound, NotAdmissible, NotOrbitConstant, SigmaConstraintViolated
from qfold.lie_fold import cartan_from_quiver, classify_cartan
from qfold.linalg import Mat
from qfold.quiver_core import (
    a_quiver,
    affine_a_quiver,
    automorphism,
    check_automorphism,
    d_quiver,
    flip_automorphism,
    fork_swap_automorphism,
    identity_automorphism,
    is_admissible,
)
from qfold.split_quotient import (
    fiber_count,
    fibers_of_p,
    graph_isomorphic,
    project_dim,
    quotient_quiver,
    split_framing,
    split_involution_check,
    split_quiver,
)


def test_quotient_identity_is_same_quiver():
    d4 = d_quiver(4)
    quo = quotient_quiver(d4, identity_automorphism(d4))
    assert graph_isomorphic(quo, d4) is not None


def test_quotient_a3_flip_is_a2():
    a3 = a_quiver(3)
    quo = quotient_quiver(a3, flip_automorphism(a3, 3))
    assert len(quo.vertices) == 2 and len(quo.edges) == 1


def test_quotient_d4_swap_is_a3_path():
    d4 = d_quiver(4)
    quo = quotient_quiver(d4, fork_swap_automorphism(d4, 4))
    assert graph_isomorphic(quo, a_quiver(3)) is not None


def test_quotient_requires_admissible():
    a4 = a_quiver(4)
    with pytest.raises(NotAdmissible):
        quotient_quiver(a4, flip_automorphism(a4, 4))


def test_split_d_family_gives_odd_paths():
    for n in range(2, 6):
        d = d_quiver(n + 1)
        sd = split_quiver(d, fork_swap_automorphism(d, n + 1))
        label = classify_cartan(cartan_from_quiver(sd.split))
        assert str(label) == f"A{2 * n - 1}"


def test_split_identity_is_identity():
    a5 = a_quiver(5)
    sd = split_quiver(a5, identity_automorphism(a5))
    assert sd.split == a5
    assert sd.induced.vertex_perm == {v: v for v in a5.vertices}
    assert project_dim({"2": 3}, sd)["2"] == 3


def test_split_a_flip_gives_d_with_fork_swap():
    a5 = a_quiver(5)
    sd = split_quiver(a5, flip_automorphism(a5, 5))
    assert str(classify_cartan(cartan_from_quiver(sd.split))) == "D4"
    check_automorphism(sd.split, sd.induced)
    assert is_admissible(sd.split, sd.induced)
    moved = [v for v in sd.split.vertices if sd.induced.vertex_perm[v] != v]
    # exactly the two phases of the middle orbit are exchanged
    assert len(moved) == 2
    assert {sd.vertex_table[v].orbit for v in moved} == {("3",)}


def test_split_vertex_count_formula_and_induced_validity():
    for entry in corpus():
        if not entry.admissible:
            continue
        sd = split_quiver(entry.quiver, entry.auto)
        od = sd.orbits
        expect = sum(od.e_vertex[o[0]] for o in od.vertex_orbits)
        assert len(sd.split.vertices) == expect
        check_automorphism(sd.split, sd.induced)
        assert is_admissible(sd.split, sd.induced)
        # the declared order annihilates the induced permutation
        cur = {v: v for v in sd.split.vertices}
        for _ in range(sd.induced.order):
            cur = {v: sd.induced.vertex_perm[cur[v]] for v in cur}
        assert cur == {v: v for v in sd.split.vertices}


def test_split_involution_on_corpus():
    for entry in corpus():
        if not entry.admissible:
            with pytest.raises(NotAdmissible):
                split_quiver(entry.quiver, entry.auto)
            continue
        witness = split_involution_check(entry.quiver, entry.auto)
        assert witness.automorphism_matched, entry.name


def test_split_involution_fails_for_free_action():
    # rotation by two steps on the four-cycle acts freely; the split
    # quiver forgets the action and splitting twice cannot recover it
    aff3 = affine_a_quiver(3)
    rot2 = automorphism(aff3, {"0": "2", "2": "0", "1": "3", "3": "1"})
    assert is_admissible(aff3, rot2)
    sd = split_quiver(aff3, rot2)
    assert len(sd.split.vertices) == 2  # double edge
    with pytest.raises(IsoNotFound):
        split_involution_check(aff3, rot2)


def test_graph_isomorphic_basics():
    a3 = a_quiver(3)
    relabeled = quotient_quiver(a3, identity_automorphism(a3))
    assert graph_isomorphic(a3, relabeled) is not None
    assert graph_isomorphic(a3, d_quiver(4)) is None
    d4 = d_quiver(4)
    from qfold.quiver_core import quiver
    relabel = quiver(["a", "b", "c", "d"],
                     [("x", "a", "b"), ("y", "b", "c"), ("z", "b", "d")])
    iso = graph_isomorphic(d4, relabel)
    assert iso is not None and iso["2"] == "b"


def test_project_dim_examples():
    d4 = d_quiver(4)
    sd = split_quiver(d4, fork_swap_automorphism(d4, 4))
    zero = {v: 0 for v in sd.split.vertices}
    assert project_dim(zero, sd) == {v: 0 for v in d4.vertices}
    ones = {v: 1 for v in sd.split.vertices}
    assert project_dim(ones, sd) == {"1": 2, "2": 2, "3": 1, "4": 1}
    fork_only = {"3@1/1": 3}
    assert project_dim(fork_only, sd) == {"1": 0, "2": 0, "3": 3, "4": 3}


def test_fibers_d4_and_roundtrip():
    d4 = d_quiver(4)
    sd = split_quiver(d4, fork_swap_automorphism(d4, 4))
    v = {"1": 1, "2": 1, "3": 1, "4": 1}
    fib = fibers_of_p(v, sd)
    assert len(fib) == 4 == fiber_count(v, sd)
    for f in fib:
        assert project_dim(f, sd) == v
    zero = {x: 0 for x in d4.vertices}
    assert fibers_of_p(zero, sd) == [{v: 0 for v in sd.split.vertices}]


def test_fibers_a3_flip_slices():
    a3 = a_quiver(3)
    sd = split_quiver(a3, flip_automorphism(a3, 3))
    fib = fibers_of_p({"1": 1, "2": 2, "3": 1}, sd)
    pairs = [(f["2@1/2"], f["2@2/2"]) for f in fib]
    assert sorted(pairs) == [(0, 2), (1, 1), (2, 0)]
    assert all(f["1@1/1"] == 1 for f in fib)


def test_fibers_not_orbit_constant():
    a3 = a_quiver(3)
    sd = split_quiver(a3, flip_automorphism(a3, 3))
    with pytest.raises(NotOrbitConstant):
        fibers_of_p({"1": 1, "2": 0, "3": 2}, sd)


def test_fibers_match_brute_enumeration():
    setups = [
        (d_quiver(4), fork_swap_automorphism(d_quiver(4), 4)),
        (a_quiver(3), flip_automorphism(a_quiver(3), 3)),
    ]
    for q, a in setups:
        sd = split_quiver(q, a)
        od = sd.orbits
        for combo in itertools.product(range(3), repeat=len(od.vertex_orbits)):
            v = {}
            for orbit, val in zip(od.vertex_orbits, combo):
                for x in orbit:
                    v[x] = val
            top = max(combo, default=0)
            brute = []
            names = list(sd.split.vertices)
            for values in itertools.product(range(top + 1), repeat=len(names)):
                cand = dict(zip(names, values))
                if project_dim(cand, sd) == v:
                    brute.append(cand)
            fast = fibers_of_p(v, sd)
            assert len(fast) == len(brute) == fiber_count(v, sd)
            assert sorted(map(sorted, (f.items() for f in fast))) == \
                sorted(map(sorted, (b.items() for b in brute)))


def test_split_framing_identity_and_signs():
    d4 = d_quiver(4)
    sd = split_quiver(d4, fork_swap_automorphism(d4, 4))
    w = {v: 3 for v in d4.vertices}
    ident = {v: Mat.identity(3) for v in d4.vertices}
    out = split_framing(w, ident, sd)
    assert out["1@1/2"] == 3 and out["1@2/2"] == 0
    assert out["3@1/1"] == 3

    signs = dict(ident)
    signs["1"] = Mat.rational([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    out2 = split_framing(w, signs, sd)
    assert out2["1@1/2"] == 1 and out2["1@2/2"] == 2
    assert sum(out2[s] for s in ("1@1/2", "1@2/2")) == 3

    w2 = {v: 2 for v in d4.vertices}
    half = {v: Mat.identity(2) for v in d4.vertices}
    half["2"] = Mat.rational([[1, 0], [0, -1]])
    out3 = split_framing(w2, half, sd)
    assert (out3["2@1/2"], out3["2@2/2"]) == (1, 1)


def test_split_framing_swapped_orbit_single_piece():
    d4 = d_quiver(4)
    sd = split_quiver(d4, fork_swap_automorphism(d4, 4))
    w = {v: 2 for v in d4.vertices}
    maps = {v: Mat.identity(2) for v in d4.vertices}
    maps["3"] = Mat.rational([[0, 1], [1, 0]])
    maps["4"] = Mat.rational([[0, 1], [1, 0]])
    out = split_framing(w, maps, sd)
    assert out["3@1/1"] == 2


def test_split_framing_order_three_rotation():
    d4 = d_quiver(4)
    rot = automorphism(d4, {"1": "3", "3": "4", "4": "1", "2": "2"})
    sd = split_quiver(d4, rot)
    w = {v: 2 for v in d4.vertices}
    maps = {v: Mat.identity(2) for v in d4.vertices}
    maps["2"] = Mat.rational([[0, -1], [1, -1]])  # order 3
    out = split_framing(w, maps, sd)
    assert (out["2@1/3"], out["2@2/3"], out["2@3/3"]) == (0, 1, 1)


def test_split_framing_constraint_violation():
    a3 = a_quiver(3)
    sd = split_quiver(a3, flip_automorphism(a3, 3))
    w = {v: 1 for v in a3.vertices}
    maps = {v: Mat.identity(1) for v in a3.vertices}
    maps["2"] = Mat.rational([[2]])  # (2)^2 != 1
    with pytest.raises(SigmaConstraintViolated):
        split_framing(w, maps, sd)


def test_split_framing_lift_independence():
    # the eigenvalue dimensions agree at every lift of a swapped orbit
    d4 = d_quiver(4)
    sd = split_quiver(d4, fork_swap_automorphism(d4, 4))
    from qfold.split_quotient import orbit_composite, root_of_unity_eigendims
    maps = {v: Mat.identity(2) for v in d4.vertices}
    maps["3"] = Mat.rational([[1, 1], [0, -1]])
    maps["4"] = maps["3"].inverse()
    od = sd.orbits
    a = sd.auto
    for orbit in od.vertex_orbits:
        e = od.e_vertex[orbit[0]]
        dims = [root_of_unity_eigendims(orbit_composite(maps, a, lift, len(orbit)), e)
                for lift in orbit]
        assert all(d == dims[0] for d in dims)


def test_affine_split_classifications():
    from qfold.corpus import corpus_entry

    cases = {
        "affineA3-flip": "affine-D4",
        "affineD4-doubleswap": "affine-A3",
        "affineD4-swap": "affine-D6",
        "D4-rot3": "D4",
    }
    for name, want in cases.items():
        entry = corpus_entry(name)
        sd = split_quiver(entry.quiver, entry.auto)
        got = classify_cartan(cartan_from_quiver(sd.split))
        assert str(got) == want, name


def test_split_keeps_parallel_edges():
    aff1 = affine_a_quiver(1)
    sd = split_quiver(aff1, identity_automorphism(aff1))
    assert sd.split == aff1
    assert str(classify_cartan(cartan_from_quiver(sd.split))) == "affine-A1"
