"""Command-line front door.

Subcommands: split, quotient, fold, branch, dims, module, verify-all.
Output is deterministic for fixed inputs and seed: JSON is emitted with
sorted keys, tables in canonical vertex order, and all randomness flows
from the --seed flag.  Exit codes: 0 success, 1 input or usage error,
2 verified property violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import zlib
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .corpus import corpus as corpus_entries, corpus_entry
from .dim_calc import dim_quiver_variety, dim_steinberg, fixed_components
from .errors import InputError, PropertyViolation, QfoldError
from .generators import (
    random_graded_pair,
    random_one_way_module,
    random_theta_module,
)
from .lie_fold import cartan_from_quiver, classify_cartan, fold_cartan, folded_generators, serre_check
from .linalg import Mat
from .module_lab import (
    apply_theta,
    brute_stability,
    build_theta_witness,
    check_relations,
    eigen_profile,
    find_transition,
    identity_sigma,
    is_stable,
    rational_eigenvalues,
    theorem5_verify,
    verify_transition,
)
from .quiver_core import (
    DiagramAutomorphism,
    Quiver,
    a_quiver,
    d_quiver,
    flip_automorphism,
    fork_swap_automorphism,
    orbit_data,
    quiver_from_dict,
    quiver_to_dict,
)
from .rep_branch import branch, freudenthal_character, highest_weight_from_framing, weyl_dim
from .serialize import (
    matmap_from_obj,
    module_from_dict,
    module_to_dict,
    sigma_from_dict,
    witness_from_dict,
    witness_to_dict,
)
from .split_quotient import SplitData, fiber_count, fibers_of_p, quotient_quiver, split_quiver

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _load_entry(args) -> tuple[Quiver, DiagramAutomorphism]:
    if args.corpus:
        entry = corpus_entry(args.corpus)
        return entry.quiver, entry.auto
    if args.file:
        text = sys.stdin.read() if args.file == "-" else open(args.file).read()
        q, a = quiver_from_dict(json.loads(text))
        if a is None:
            raise InputError("input JSON has no automorphism block")
        return q, a
    raise InputError("supply --corpus NAME or --file PATH")


def _emit(args, payload, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _labels_table(sd: SplitData) -> dict:
    return {
        svid: {"orbit": list(sv.orbit), "phase": f"{sv.j}/{sv.e}"}
        for svid, sv in sorted(sd.vertex_table.items())
    }


def _parse_dimvec(text: str, vertices: tuple[str, ...], name: str) -> dict[str, int]:
    """Accept a JSON object keyed by vertex id, or a comma list in
    canonical vertex order."""
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        return {str(k): int(v) for k, v in data.items()}
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != len(vertices):
        raise InputError(f"{name} needs {len(vertices)} entries, got {len(parts)}")
    return {v: int(p) for v, p in zip(vertices, parts)}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_split(args) -> int:
    q, a = _load_entry(args)
    sd = split_quiver(q, a)
    payload = quiver_to_dict(sd.split, sd.induced)
    payload["labels"] = _labels_table(sd)
    kind = classify_cartan(cartan_from_quiver(sd.split))
    lines = [f"split quiver: {len(sd.split.vertices)} vertices, "
             f"{len(sd.split.edges)} edges, type {kind}"]
    lines.append(f"{'vertex':<12} {'orbit':<16} phase")
    for svid in sd.split.vertices:
        sv = sd.vertex_table[svid]
        lines.append(f"{svid:<12} {','.join(sv.orbit):<16} {sv.j}/{sv.e}")
    lines.append("edges: " + ", ".join(f"{e.src}--{e.tgt}" for e in sd.split.edges))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_quotient(args) -> int:
    q, a = _load_entry(args)
    quo = quotient_quiver(q, a)
    payload = quiver_to_dict(quo)
    human = (f"quotient quiver: vertices {', '.join(quo.vertices)}; edges "
             + ", ".join(f"{e.src}--{e.tgt}" for e in quo.edges))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_fold(args) -> int:
    q, a = _load_entry(args)
    base_type = classify_cartan(cartan_from_quiver(q))
    sd = split_quiver(q, a)
    split_type = classify_cartan(cartan_from_quiver(sd.split))
    fold = fold_cartan(cartan_from_quiver(q), a)
    folded_type = classify_cartan(fold.folded)
    payload = {
        "base_type": str(base_type),
        "split_type": str(split_type),
        "folded_type": str(folded_type),
        "folded_cartan": [list(r) for r in fold.folded.entries],
    }
    human = (f"base {base_type}  ->  split {split_type}  ->  folded {folded_type}\n"
             + "\n".join(" ".join(f"{x:>3}" for x in row) for row in fold.folded.entries))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_branch(args) -> int:
    q, a = _load_entry(args)
    sd = split_quiver(q, a)
    split_c = cartan_from_quiver(sd.split)
    framing = _parse_dimvec(args.framing, sd.split.vertices, "--framing")
    lam = highest_weight_from_framing(framing, sd.split)
    fold = fold_cartan(split_c, sd.induced)
    rows = branch(split_c, lam, fold, dim_cap=args.dim_cap)
    total = weyl_dim(split_c, lam)
    parts = [{"weight": list(wt), "multiplicity": mult, "dim": weyl_dim(fold.folded, wt)}
             for wt, mult in rows]
    conserved = sum(p["multiplicity"] * p["dim"] for p in parts) == total
    payload = {
        "highest_weight": list(lam),
        "dim": total,
        "folded_type": str(classify_cartan(fold.folded)),
        "summands": parts,
        "dimension_conserved": conserved,
    }
    lines = [f"{'weight':<20} {'mult':>4} {'dim':>8}"]
    for p in parts:
        lines.append(f"{str(tuple(p['weight'])):<20} {p['multiplicity']:>4} {p['dim']:>8}")
    lines.append(
        f"total {total} = "
        + " + ".join(f"{p['multiplicity']}*{p['dim']}" for p in parts)
        + f"  (conserved: {conserved})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if conserved else EXIT_VIOLATION


def cmd_dims(args) -> int:
    q, a = _load_entry(args)
    sd = split_quiver(q, a)
    v = _parse_dimvec(args.v, q.vertices, "--v")
    if args.w_split:
        w_split = _parse_dimvec(args.w_split, sd.split.vertices, "--w-split")
    elif args.w:
        w = _parse_dimvec(args.w, q.vertices, "--w")
        from .split_quotient import split_framing
        sigma = {x: Mat.identity(w.get(x, 0)) for x in q.vertices}
        w_split = split_framing(w, sigma, sd)
    else:
        raise InputError("supply --w-split or --w")
    records = fixed_components(v, sd, w_split)
    payload = [r.to_dict() for r in records]
    lines = [f"{'v_split':<40} {'dim':>5}  empty?"]
    for r in records:
        vs = ",".join(f"{k}:{val}" for k, val in sorted(r.v_split.items()))
        lines.append(f"{vs:<40} {r.dim:>5}  {'yes' if r.empty_by_formula else 'no'}")
    lines.append(f"{len(records)} components (binomial formula: {fiber_count(v, sd)})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _load_module_file(path: str) -> dict:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return json.loads(text)


def cmd_module(args) -> int:
    data = _load_module_file(args.file)
    try:
        q, a = quiver_from_dict(data["quiver"])
        m = module_from_dict(q, data["module"])
    except KeyError as exc:
        raise InputError(f"module file is missing the {exc} block") from exc

    if args.action == "check":
        rep = check_relations(m)
        stable = is_stable(m) if rep.ok else None
        payload = {"relations_ok": rep.ok, "violating_vertex": rep.vertex, "stable": stable}
        human = (f"relations: {'ok' if rep.ok else 'violated at ' + str(rep.vertex)}"
                 + (f"; stable: {stable}" if stable is not None else ""))
        _emit(args, payload, human)
        return EXIT_OK if rep.ok else EXIT_VIOLATION

    if a is None:
        raise InputError("this action needs an automorphism in the quiver block")
    if "sigma" in data:
        sigma = sigma_from_dict(q, a, data["sigma"])
        sigma.validate(m.w)
    else:
        sigma = identity_sigma(q, a, m.w)

    if args.action == "theta":
        out = apply_theta(m, a, sigma)
        payload = {"module": module_to_dict(out)}
        _emit(args, payload, json.dumps(module_to_dict(out), indent=2, sort_keys=True))
        return EXIT_OK

    if args.action == "transition":
        witness = find_transition(m, a, sigma)
        if witness is None:
            _emit(args, {"witness": None}, "no transition: module is not isomorphic to its transport")
            return EXIT_OK
        payload = {"witness": witness_to_dict(witness)}
        human_rows = [f"{x}: {[[str(v) for v in row] for row in witness.g[x].data]}"
                      for x in q.vertices]
        _emit(args, payload, "transition witness\n" + "\n".join(human_rows))
        return EXIT_OK

    if args.action == "witness":
        if "g" not in data:
            raise InputError("the witness action needs a \"g\" block of gauge matrices")
        g = matmap_from_obj(data["g"])
        big, witness = build_theta_witness(m, g, a, sigma)
        od = orbit_data(q, a)
        eigen_report = {}
        for x in q.vertices:
            if a.vertex_perm[x] == x:
                prof = eigen_profile(witness.g[x], od.e_vertex[x])
                eigen_report[x] = {
                    "roots": {str(k): v for k, v in sorted(prof["roots"].items())},
                    "other": prof["other"],
                    "rational_eigenvalues": [[str(lam), mult]
                                             for lam, mult in rational_eigenvalues(witness.g[x])],
                }
        payload = {
            "module": module_to_dict(big),
            "witness": witness_to_dict(witness),
            "fixed_vertex_eigenvalues": eigen_report,
        }
        lines = ["summand-matched witness verified"]
        for x, rep in sorted(eigen_report.items()):
            lines.append(f"vertex {x}: root masses {rep['roots']}, other {rep['other']}")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK

    if args.action == "theorem5":
        try:
            sub = module_from_dict(q, data["sub"])
            xi = matmap_from_obj(data["xi"])
            witness = witness_from_dict(data["witness"])
            witness_sub = witness_from_dict(data["witness_sub"])
        except KeyError as exc:
            raise InputError(f"theorem5 file is missing the {exc} block") from exc
        rep = theorem5_verify(xi, sub, m, a, sigma, witness_sub, witness)
        payload = {"ok": rep.ok, "vertex": rep.vertex, "eigenvalue": rep.eigenvalue,
                   "counterexample": list(rep.vector) if rep.vector else None}
        human = "eigenspace inclusion holds" if rep.ok else \
            f"violated at vertex {rep.vertex}, eigenvalue {rep.eigenvalue}, vector {rep.vector}"
        _emit(args, payload, human)
        return EXIT_OK if rep.ok else EXIT_VIOLATION

    raise InputError(f"unknown module action {args.action}")


# ---------------------------------------------------------------------------
# verify-all
# ---------------------------------------------------------------------------

def _check_rng(seed: int, name: str) -> random.Random:
    return random.Random(seed ^ zlib.crc32(name.encode()))


def _vcheck_split_table(seed: int) -> list[str]:
    bad = []
    for n in range(2, 6):
        d = d_quiver(n + 1)
        sd = split_quiver(d, fork_swap_automorphism(d, n + 1))
        got = str(classify_cartan(cartan_from_quiver(sd.split)))
        if got != f"A{2 * n - 1}":
            bad.append(f"split(D{n + 1}) = {got}")
        aq = a_quiver(2 * n - 1)
        sd2 = split_quiver(aq, flip_automorphism(aq, 2 * n - 1))
        got2 = str(classify_cartan(cartan_from_quiver(sd2.split)))
        want = "A3" if n == 2 else f"D{n + 1}"
        if got2 != want:
            bad.append(f"split(A{2 * n - 1}) = {got2}")
    return bad


def _vcheck_involution(seed: int) -> list[str]:
    from .split_quotient import split_involution_check
    bad = []
    for entry in corpus_entries():
        if not entry.admissible:
            continue
        wit = split_involution_check(entry.quiver, entry.auto)
        if not wit.automorphism_matched:
            bad.append(f"{entry.name}: isomorphism does not match automorphisms")
    return bad


def _vcheck_fold_table(seed: int) -> list[str]:
    bad = []
    for n in range(2, 6):
        aq = a_quiver(2 * n - 1)
        fold = fold_cartan(cartan_from_quiver(aq), flip_automorphism(aq, 2 * n - 1))
        got = str(classify_cartan(fold.folded))
        if got != f"C{n}":
            bad.append(f"fold(A{2 * n - 1}) = {got}")
        d = d_quiver(n + 1)
        fold2 = fold_cartan(cartan_from_quiver(d), fork_swap_automorphism(d, n + 1))
        got2 = str(classify_cartan(fold2.folded))
        if got2 != f"B{n}":
            bad.append(f"fold(D{n + 1}) = {got2}")
    return bad


def _vcheck_serre(seed: int) -> list[str]:
    bad = []
    for n in (1, 3, 5, 7):
        q = a_quiver(n)
        a = flip_automorphism(q, n)
        fold = fold_cartan(cartan_from_quiver(q), a)
        e, f, h = folded_generators(n, "A", a)
        if not serre_check(fold.folded, e, f, h).ok:
            bad.append(f"A{n} flip generators fail")
    for n in (3, 4, 5):
        q = d_quiver(n)
        a = fork_swap_automorphism(q, n)
        fold = fold_cartan(cartan_from_quiver(q), a)
        e, f, h = folded_generators(n, "D", a)
        if not serre_check(fold.folded, e, f, h).ok:
            bad.append(f"D{n} swap generators fail")
    return bad


def _vcheck_branch(seed: int) -> list[str]:
    rng = _check_rng(seed, "branch")
    bad = []
    a3 = a_quiver(3)
    c = cartan_from_quiver(a3)
    fold = fold_cartan(c, flip_automorphism(a3, 3))
    if branch(c, (1, 0, 0), fold) != [((1, 0), 1)]:
        bad.append("A3 omega1 branch wrong")
    got = dict(branch(c, (0, 1, 0), fold))
    if got != {(0, 1): 1, (0, 0): 1}:
        bad.append("A3 omega2 branch wrong")
    a5 = a_quiver(5)
    c5 = cartan_from_quiver(a5)
    fold5 = fold_cartan(c5, flip_automorphism(a5, 5))
    for _ in range(5):
        while True:
            lam = tuple(rng.randint(0, 1) for _ in range(5))
            lam = (lam[0], lam[1], lam[2], lam[1], lam[0])
            if weyl_dim(c5, lam) <= 5000:
                break
        rows = branch(c5, lam, fold5)
        if sum(m * weyl_dim(fold5.folded, wt) for wt, m in rows) != weyl_dim(c5, lam):
            bad.append(f"A5 branch of {lam} does not conserve dimension")
    return bad


def _vcheck_characters(seed: int) -> list[str]:
    rng = _check_rng(seed, "characters")
    bad = []
    from .lie_fold import canonical_cartan
    cartans = [canonical_cartan("A", n) for n in range(1, 5)] + \
              [canonical_cartan("C", 2), canonical_cartan("B", 3)]
    for _ in range(10):
        c = rng.choice(cartans)
        lam = tuple(rng.randint(0, 2) for _ in range(c.n))
        if weyl_dim(c, lam) > 20000:
            continue
        ch = freudenthal_character(c, lam)
        if sum(ch.values()) != weyl_dim(c, lam):
            bad.append(f"character total mismatch at {lam}")
    return bad


def _vcheck_stability(seed: int) -> list[str]:
    bad = []
    quivers = [a_quiver(2), a_quiver(3), d_quiver(4)]
    for trial in range(50):
        rng = _check_rng(seed, f"stability:{trial}")  # independent per-trial seed
        q = quivers[trial % 3]
        p = (2, 3)[trial % 2]
        v = {x: rng.randint(0, 2) for x in q.vertices}
        w = {x: rng.randint(0, 2) for x in q.vertices}
        m = random_one_way_module(rng, q, v, w, p=p)
        if is_stable(m) != brute_stability(m):
            bad.append(f"stability disagreement on trial {trial}")
    return bad


def _vcheck_witness(seed: int) -> list[str]:
    from fractions import Fraction as F
    bad = []
    a3 = a_quiver(3)
    flip = flip_automorphism(a3, 3)
    from .module_lab import framed_module
    m1 = framed_module(
        a3, {"1": 1, "2": 1, "3": 1}, {"1": 1, "2": 1, "3": 1},
        B={"e2*": Mat.rational([[1]])},
        J={"1": Mat.rational([[1]]), "2": Mat.rational([[1]]), "3": Mat.rational([[0]])})
    sigma = identity_sigma(a3, flip, m1.w)
    g = {"1": Mat.rational([[1]]), "2": Mat.rational([[2]]), "3": Mat.rational([[1]])}
    big, witness = build_theta_witness(m1, g, flip, sigma)
    if not verify_transition(big, flip, sigma, witness):
        bad.append("witness verification failed")
    prof = eigen_profile(witness.g["2"], 2)
    outside = prof["other"] + sum(d for t, d in prof["roots"].items()
                                  if t not in (F(0), F(1, 2)))
    if outside == 0:
        bad.append("expected eigenvalue mass outside +-1 at the fixed vertex")
    return bad


def _vcheck_theorem5(seed: int) -> list[str]:
    bad = []
    setups = [(a_quiver(3), flip_automorphism(a_quiver(3), 3)),
              (d_quiver(4), fork_swap_automorphism(d_quiver(4), 4))]
    for trial in range(50):
        q, a = setups[trial % 2]
        rng = _check_rng(seed, f"theorem5:{trial}")  # independent per-trial seed
        xi, msub, m, sigma, wsub, wit = random_graded_pair(rng, q, a)
        rep = theorem5_verify(xi, msub, m, a, sigma, wsub, wit)
        if not rep.ok:
            bad.append(f"eigenspace inclusion failed on trial {trial} at {rep.vertex}")
    return bad


def _vcheck_theta_order(seed: int) -> list[str]:
    rng = _check_rng(seed, "theta-order")
    bad = []
    for entry in corpus_entries():
        od = orbit_data(entry.quiver, entry.auto)
        for trial in range(10):
            m, sigma = random_theta_module(rng, entry.quiver, entry.auto)
            cur = m
            for _ in range(od.n):
                cur = apply_theta(cur, entry.auto, sigma)
            if cur != m:
                bad.append(f"{entry.name}: transport order exceeds {od.n} (trial {trial})")
                break
    return bad


def _vcheck_dims(seed: int) -> list[str]:
    bad = []
    a1 = cartan_from_quiver(a_quiver(1))
    for m in range(6):
        for k in range(m + 1):
            got = dim_quiver_variety({"1": k}, {"1": m}, a1)
            if got != 2 * k * (m - k):
                bad.append(f"Grassmannian dimension wrong at ({k},{m})")
    if dim_steinberg({"1": 1}, {"1": 2}, {"1": 2}, a1) != Fraction(1):
        bad.append("half-sum value wrong")
    return bad


def _vcheck_fibers(seed: int) -> list[str]:
    bad = []
    setups = [(d_quiver(4), fork_swap_automorphism(d_quiver(4), 4)),
              (a_quiver(3), flip_automorphism(a_quiver(3), 3))]
    for q, a in setups:
        sd = split_quiver(q, a)
        od = sd.orbits
        import itertools
        orbit_values = [range(0, 3) for _ in od.vertex_orbits]
        for combo in itertools.product(*orbit_values):
            v = {}
            for orbit, val in zip(od.vertex_orbits, combo):
                for x in orbit:
                    v[x] = val
            fib = fibers_of_p(v, sd)
            if len(fib) != fiber_count(v, sd):
                bad.append(f"fiber count mismatch at {v}")
            from .split_quotient import project_dim
            if any(project_dim(f, sd) != v for f in fib):
                bad.append(f"fiber projection mismatch at {v}")
    return bad


def _vcheck_admissibility(seed: int) -> list[str]:
    from .quiver_core import is_admissible
    bad = []
    expect = {2: (True, False, True), 3: (True, False, True),
              4: (True, False, True), 5: (True, False, True)}
    for n, (odd_ok, even_ok, d_ok) in expect.items():
        q = a_quiver(2 * n - 1)
        if is_admissible(q, flip_automorphism(q, 2 * n - 1)) != odd_ok:
            bad.append(f"A{2 * n - 1} flip admissibility wrong")
        q = a_quiver(2 * n)
        if is_admissible(q, flip_automorphism(q, 2 * n)) != even_ok:
            bad.append(f"A{2 * n} flip admissibility wrong")
        q = d_quiver(n)
        if is_admissible(q, fork_swap_automorphism(q, n)) != d_ok:
            bad.append(f"D{n} swap admissibility wrong")
    return bad


VERIFY_CHECKS = [
    ("admissibility", _vcheck_admissibility),
    ("split-correspondence", _vcheck_split_table),
    ("split-involution", _vcheck_involution),
    ("folding-table", _vcheck_fold_table),
    ("folded-generators", _vcheck_serre),
    ("branching", _vcheck_branch),
    ("character-dimensions", _vcheck_characters),
    ("stability-oracle", _vcheck_stability),
    ("twisted-double-witness", _vcheck_witness),
    ("eigenspace-inclusion", _vcheck_theorem5),
    ("transport-order", _vcheck_theta_order),
    ("variety-dimensions", _vcheck_dims),
    ("fiber-enumeration", _vcheck_fibers),
]


def cmd_verify_all(args) -> int:
    results: list[tuple[str, list[str]]] = [None] * len(VERIFY_CHECKS)
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        futures = {pool.submit(fn, args.seed): idx
                   for idx, (_name, fn) in enumerate(VERIFY_CHECKS)}
        for fut, idx in futures.items():
            name = VERIFY_CHECKS[idx][0]
            try:
                results[idx] = (name, fut.result())
            except QfoldError as exc:
                results[idx] = (name, [f"error: {exc}"])
    failures = 0
    payload = {}
    lines = []
    for name, bad in results:
        status = "pass" if not bad else "FAIL"
        payload[name] = {"status": status, "problems": bad}
        lines.append(f"{name:<24} {status}" + (f"  ({'; '.join(bad)})" if bad else ""))
        failures += bool(bad)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for all randomness")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = _Parser(prog="qfold", parents=[common],
                     description="exact computations for quiver diagram automorphisms")
    parser.set_defaults(seed=0, json=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--corpus", help="named corpus entry")
        p.add_argument("--file", help="quiver+automorphism JSON file, - for stdin")

    p = sub.add_parser("split", parents=[common], help="split-quotient quiver")
    add_source(p)
    p = sub.add_parser("quotient", parents=[common], help="orbit quotient quiver")
    add_source(p)
    p = sub.add_parser("fold", parents=[common],
                       help="classify base, split and folded Cartan data")
    add_source(p)

    p = sub.add_parser("branch", parents=[common],
                       help="decompose the highest-weight module of a framing")
    add_source(p)
    p.add_argument("--framing", required=True,
                   help="framing dims on the split quiver: JSON object or comma list")
    p.add_argument("--dim-cap", type=int, default=100_000)

    p = sub.add_parser("dims", parents=[common], help="fixed-component dimension table")
    add_source(p)
    p.add_argument("--v", required=True, help="dimension vector on the base quiver")
    p.add_argument("--w", help="framing dims on the base quiver (identity twist)")
    p.add_argument("--w-split", help="framing dims on the split quiver")

    p = sub.add_parser("module", parents=[common], help="framed module laboratory")
    p.add_argument("action", choices=["check", "theta", "transition", "witness", "theorem5"])
    p.add_argument("file", help="module JSON file, - for stdin")

    p = sub.add_parser("verify-all", parents=[common],
                       help="run the whole property suite over the corpus")
    p.add_argument("--jobs", type=int, default=4)
    return parser


COMMANDS = {
    "split": cmd_split,
    "quotient": cmd_quotient,
    "fold": cmd_fold,
    "branch": cmd_branch,
    "dims": cmd_dims,
    "module": cmd_module,
    "verify-all": cmd_verify_all,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except PropertyViolation as exc:
        print(f"property violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (QfoldError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
