"""Cartan matrices, finite/affine type recognition, and diagram folding.

Convention: the stored Cartan matrix c has c[i][j] = alpha_i(h_j), so the
bracket [H_i, E_j] scales E_j by c[j][i] and the Serre relation for the
pair (i, j) reads ad(E_i)^(1 - c[j][i])(E_j) = 0.  Folding sums each row
over the column orbit at a fixed row representative; with this convention
the flip of A_3 yields [[2,-1],[-2,2]], which is the Bourbaki C_2 matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Optional, Sequence, Union

from .errors import (
    DimensionMismatch,
    InputError,
    NotAdmissible,
    NotSymmetrizable,
    RepresentativeDependence,
    SelfLoop,
    UnsupportedFamily,
)
from .linalg import Mat
from .quiver_core import (
    DiagramAutomorphism,
    Quiver,
    a_quiver,
    affine_a_quiver,
    affine_d_quiver,
    d_quiver,
)

FINITE_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True)
class CartanMatrix:
    labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise InputError("Cartan matrix must be square over its labels")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise InputError(f"diagonal entry at {self.labels[i]} must be 2")
            for j in range(n):
                if i != j:
                    if self.entries[i][j] > 0:
                        raise InputError("off-diagonal Cartan entries must be <= 0")
                    if (self.entries[i][j] == 0) != (self.entries[j][i] == 0):
                        raise InputError("zero pattern must be symmetric")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def as_mat(self) -> Mat:
        return Mat.rational(self.entries)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.n) for j in range(self.n))


def cartan_matrix(entries: Sequence[Sequence[int]],
                  labels: Optional[Sequence[str]] = None) -> CartanMatrix:
    if labels is None:
        labels = [str(i + 1) for i in range(len(entries))]
    return CartanMatrix(tuple(labels), tuple(tuple(int(x) for x in r) for r in entries))


def cartan_from_quiver(q: Quiver) -> CartanMatrix:
    """2*Id minus the adjacency matrix of the underlying diagram."""
    if q.has_self_loop():
        raise SelfLoop("Cartan matrix undefined for quivers with self-loops")
    n = len(q.vertices)
    idx = {v: i for i, v in enumerate(q.vertices)}
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for e in q.edges:
        i, j = idx[e.src], idx[e.tgt]
        m[i][j] -= 1
        m[j][i] -= 1
    return cartan_matrix(m, q.vertices)


# ---------------------------------------------------------------------------
# symmetrizer and definiteness
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def symmetrizer(c: CartanMatrix) -> tuple[int, ...]:
    """Positive integers d with c[i][j]*d[j] == c[j][i]*d[i], minimal per
    connected component."""
    n = c.n
    d: list[Optional[Fraction]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        comp = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or c[i, j] == 0:
                    continue
                # want d[i]*c[j][i] == d[j]*c[i][j]
                val = d[i] * Fraction(c[j, i], c[i, j])
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                    comp.append(j)
                elif d[j] != val:
                    raise NotSymmetrizable("inconsistent symmetrizer along a cycle")
        denom_lcm = 1
        for k in comp:
            denom_lcm = denom_lcm * d[k].denominator // gcd(denom_lcm, d[k].denominator)
        scaled = [d[k] * denom_lcm for k in comp]
        g = 0
        for x in scaled:
            g = gcd(g, x.numerator)
        for k, x in zip(comp, scaled):
            d[k] = Fraction(x.numerator // g)
    return tuple(int(x) for x in d)


def symmetrized(c: CartanMatrix) -> Mat:
    d = symmetrizer(c)
    return Mat.rational([[c[i, j] * d[j] for j in range(c.n)] for i in range(c.n)])


def is_finite_type(c: CartanMatrix) -> bool:
    """Positive-definiteness of the symmetrized matrix (Sylvester minors)."""
    try:
        b = symmetrized(c)
    except NotSymmetrizable:
        return False
    for k in range(1, c.n + 1):
        if b.submatrix(range(k), range(k)).det() <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# type labels and classification
# ---------------------------------------------------------------------------

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
    "affine-A": lambda n: n >= 1,
    "affine-D": lambda n: n >= 4,
    "other": lambda n: n >= 0,
}


@dataclass(frozen=True)
class TypeLabel:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise InputError(f"unknown family {self.family}")
        if not _RANK_OK[self.family](self.rank):
            raise InputError(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def canonical_cartan(family: str, rank: int) -> CartanMatrix:
    """Bourbaki-numbered Cartan matrix of a finite family, in the row
    convention of this module (c[i][j] = alpha_i(h_j))."""
    if not _RANK_OK.get(family, lambda n: False)(rank):
        raise UnsupportedFamily(f"{family}{rank}")
    n = rank
    if family == "A":
        return cartan_from_quiver(a_quiver(n))
    if family == "D":
        return cartan_from_quiver(d_quiver(n))
    if family in ("B", "C"):
        m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n - 1):
            m[i][i + 1] = m[i + 1][i] = -1
        if family == "B":
            m[n - 2][n - 1] = -2  # last simple root short
        else:
            m[n - 1][n - 2] = -2  # last simple root long
        return cartan_matrix(m)
    if family == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), vertex 2 hangs off 4
        pairs = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        pairs += [(6, 7)] if n >= 7 else []
        pairs += [(7, 8)] if n >= 8 else []
        m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in pairs:
            m[i - 1][j - 1] = m[j - 1][i - 1] = -1
        return cartan_matrix(m)
    if family == "F":
        m = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
        return cartan_matrix(m)
    if family == "G":
        return cartan_matrix([[2, -1], [-3, 2]])
    raise UnsupportedFamily(family)


def _permutation_match(c: CartanMatrix, target: CartanMatrix) -> bool:
    """Is there an index bijection carrying c onto target exactly?"""
    n = c.n
    if target.n != n:
        return False

    def row_profile(m: CartanMatrix, i: int):
        return sorted((m[i, j], m[j, i]) for j in range(m.n) if j != i and m[i, j] != 0)

    prof_c = [row_profile(c, i) for i in range(n)]
    prof_t = [row_profile(target, i) for i in range(n)]
    if sorted(map(tuple, prof_c)) != sorted(map(tuple, prof_t)):
        return False
    assign: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        for t in range(n):
            if t in used or prof_c[i] != prof_t[t]:
                continue
            ok = True
            for k, tk in assign.items():
                if c[i, k] != target[t, tk] or c[k, i] != target[tk, t]:
                    ok = False
                    break
            if ok:
                assign[i] = t
                used.add(t)
                if extend(i + 1):
                    return True
                del assign[i]
                used.discard(t)
        return False

    return extend(0)


def classify_cartan(c: CartanMatrix) -> TypeLabel:
    """Recognize finite types A..G and untwisted affine A/D; otherwise other.

    Rank-2 double-bond matrices are isomorphic as diagrams; the label is
    read off literally: [[2,-1],[-2,2]] is C2, [[2,-2],[-1,2]] is B2.
    """
    n = c.n
    if n == 2 and c.entries == ((2, -1), (-2, 2)):
        return TypeLabel("C", 2)
    if n == 2 and c.entries == ((2, -2), (-1, 2)):
        return TypeLabel("B", 2)
    if is_finite_type(c):
        for family in FINITE_FAMILIES:
            if not _RANK_OK[family](n):
                continue
            if _permutation_match(c, canonical_cartan(family, n)):
                return TypeLabel(family, n)
        return TypeLabel("other", n)
    if c.as_mat().rank() == n - 1:
        if n >= 2:
            target = cartan_from_quiver(affine_a_quiver(n - 1))
            if _permutation_match(c, target):
                return TypeLabel("affine-A", n - 1)
        if n >= 5:
            target = cartan_from_quiver(affine_d_quiver(n - 1))
            if _permutation_match(c, target):
                return TypeLabel("affine-D", n - 1)
    return TypeLabel("other", n)


# ---------------------------------------------------------------------------
# folding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FoldedAlgebraData:
    base: CartanMatrix
    orbits: tuple[tuple[str, ...], ...]
    folded: CartanMatrix


def _vertex_perm_of(a: Union[DiagramAutomorphism, Mapping[str, str]]) -> Mapping[str, str]:
    if isinstance(a, DiagramAutomorphism):
        return a.vertex_perm
    return a


def fold_cartan(c: CartanMatrix, a: Union[DiagramAutomorphism, Mapping[str, str]]) -> FoldedAlgebraData:
    """Cartan matrix of the automorphism-fixed subalgebra.

    Folded entry at (orbit I, orbit J) is sum over k in J of c[i0][k] for a
    representative i0 of I; representative independence is re-checked.
    """
    perm = _vertex_perm_of(a)
    if sorted(perm) != sorted(c.labels) or sorted(perm.values()) != sorted(c.labels):
        raise InputError("vertex map is not a permutation of the Cartan labels")
    for i, li in enumerate(c.labels):
        for j, lj in enumerate(c.labels):
            if c[i, j] != c[c.index(perm[li]), c.index(perm[lj])]:
                raise InputError(f"map does not preserve the Cartan matrix at ({li},{lj})")

    pos = {v: i for i, v in enumerate(c.labels)}
    seen: set[str] = set()
    orbits: list[tuple[str, ...]] = []
    for v in c.labels:
        if v in seen:
            continue
        orb = []
        x = v
        while x not in orb:
            orb.append(x)
            seen.add(x)
            x = perm[x]
        orbits.append(tuple(sorted(orb, key=pos.__getitem__)))

    for orb in orbits:
        for x in orb:
            for y in orb:
                if x != y and c[pos[x], pos[y]] != 0:
                    raise NotAdmissible(f"orbit {orb} contains the bond {x}-{y}")

    folded_entries = []
    for orb_i in orbits:
        rows = []
        for rep in orb_i:
            rows.append([sum(c[pos[rep], pos[k]] for k in orb_j) for orb_j in orbits])
        if any(r != rows[0] for r in rows[1:]):
            raise RepresentativeDependence(f"folded row for orbit {orb_i} depends on the representative")
        folded_entries.append(rows[0])
    folded = cartan_matrix(folded_entries, [orb[0] for orb in orbits])
    return FoldedAlgebraData(c, tuple(orbits), folded)


# ---------------------------------------------------------------------------
# Chevalley generators in defining representations
# ---------------------------------------------------------------------------

def _sl_generators(n: int) -> tuple[list[Mat], list[Mat], list[Mat]]:
    """Chevalley triple of sl_{n+1} in the defining (n+1)-dim representation."""
    size = n + 1
    E, F, H = [], [], []
    for i in range(n):
        e = [[Fraction(0)] * size for _ in range(size)]
        e[i][i + 1] = Fraction(1)
        f = [[Fraction(0)] * size for _ in range(size)]
        f[i + 1][i] = Fraction(1)
        h = [[Fraction(0)] * size for _ in range(size)]
        h[i][i] = Fraction(1)
        h[i + 1][i + 1] = Fraction(-1)
        E.append(Mat.from_rows(e))
        F.append(Mat.from_rows(f))
        H.append(Mat.from_rows(h))
    return E, F, H


def _so_even_generators(n: int) -> tuple[list[Mat], list[Mat], list[Mat]]:
    """Chevalley triple of so_{2n} (type D_n) in the defining 2n-dim
    representation preserving the anti-diagonal symmetric form."""
    size = 2 * n

    def unit(r, c):
        m = [[Fraction(0)] * size for _ in range(size)]
        m[r][c] = Fraction(1)
        return Mat.from_rows(m)

    E, F = [], []
    for i in range(1, n):  # alpha_i = eps_i - eps_{i+1}
        E.append(unit(i - 1, i) - unit(size - 1 - i, size - i))
        F.append(unit(i, i - 1) - unit(size - i, size - 1 - i))
    # alpha_n = eps_{n-1} + eps_n
    E.append(unit(n - 2, n) - unit(n - 1, n + 1))
    F.append(unit(n, n - 2) - unit(n + 1, n - 1))
    H = [e * f - f * e for e, f in zip(E, F)]
    return E, F, H


def folded_generators(rank: int, family: str,
                      a: Union[DiagramAutomorphism, Mapping[str, str]]
                      ) -> tuple[list[Mat], list[Mat], list[Mat]]:
    """Orbit-summed Chevalley generators in the defining representation.

    Vertices of the canonical diagram are labelled "1".."rank"; generators
    are returned in orbit order (orbits sorted by minimal member).
    """
    if family == "A":
        if rank < 1:
            raise UnsupportedFamily("A needs rank >= 1")
        E, F, H = _sl_generators(rank)
    elif family == "D":
        if rank < 3:
            raise UnsupportedFamily("D needs rank >= 3")
        E, F, H = _so_even_generators(rank)
    else:
        raise UnsupportedFamily(f"no defining representation wired for family {family}")

    perm = _vertex_perm_of(a)
    labels = [str(i + 1) for i in range(rank)]
    if sorted(perm) != labels or sorted(perm.values()) != labels:
        raise InputError("vertex map must permute the canonical labels 1..rank")
    seen: set[str] = set()
    orbits: list[list[str]] = []
    for v in labels:
        if v in seen:
            continue
        orb = []
        x = v
        while x not in orb:
            orb.append(x)
            seen.add(x)
            x = perm[x]
        orbits.append(sorted(orb, key=lambda s: int(s)))

    Ef, Ff, Hf = [], [], []
    for orb in orbits:
        idxs = [int(s) - 1 for s in orb]
        esum = E[idxs[0]]
        fsum = F[idxs[0]]
        for k in idxs[1:]:
            esum = esum + E[k]
            fsum = fsum + F[k]
        Ef.append(esum)
        Ff.append(fsum)
        Hf.append(esum * fsum - fsum * esum)
    return Ef, Ff, Hf


# ---------------------------------------------------------------------------
# Serre-type relation checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SerreViolation:
    kind: str  # "hh" | "he" | "hf" | "ef" | "serre"
    i: int
    j: int

    def __str__(self):
        return f"{self.kind} relation violated at pair ({self.i}, {self.j})"


@dataclass(frozen=True)
class SerreReport:
    ok: bool
    violations: tuple[SerreViolation, ...]

    @property
    def first_violation(self) -> Optional[SerreViolation]:
        return self.violations[0] if self.violations else None

    def has_kind(self, kind: str) -> bool:
        return any(v.kind == kind for v in self.violations)


def _comm(a: Mat, b: Mat) -> Mat:
    return a * b - b * a


def serre_check(c: CartanMatrix, E: Sequence[Mat], F: Sequence[Mat], H: Sequence[Mat]) -> SerreReport:
    """Check that (E, F, H) present the algebra with Cartan matrix c.

    Relations, in the convention of this module:
      [H_i, H_j] = 0
      [H_i, E_j] =  c[j][i] E_j     [H_i, F_j] = -c[j][i] F_j
      [E_i, F_j] = delta_ij H_i
      ad(E_i)^(1 - c[j][i]) E_j = 0 and the same for F (i != j).
    All relations are evaluated; every violation is reported.
    """
    n = c.n
    if not (len(E) == len(F) == len(H) == n):
        raise DimensionMismatch("generator list lengths must match the Cartan matrix")
    size = E[0].rows if n else 0
    for m in list(E) + list(F) + list(H):
        if m.rows != size or m.cols != size:
            raise DimensionMismatch("all generators must be square of equal size")

    bad: list[SerreViolation] = []
    for i in range(n):
        for j in range(n):
            if not _comm(H[i], H[j]).is_zero():
                bad.append(SerreViolation("hh", i, j))
    for i in range(n):
        for j in range(n):
            if not (_comm(H[i], E[j]) - E[j].scaled(Fraction(c[j, i]))).is_zero():
                bad.append(SerreViolation("he", i, j))
            if not (_comm(H[i], F[j]) + F[j].scaled(Fraction(c[j, i]))).is_zero():
                bad.append(SerreViolation("hf", i, j))
    for i in range(n):
        for j in range(n):
            expect = H[i] if i == j else Mat.zeros(size, size)
            if not (_comm(E[i], F[j]) - expect).is_zero():
                bad.append(SerreViolation("ef", i, j))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            power = 1 - c[j, i]
            x = E[j]
            for _ in range(power):
                x = _comm(E[i], x)
            if not x.is_zero():
                bad.append(SerreViolation("serre", i, j))
            y = F[j]
            for _ in range(power):
                y = _comm(F[i], y)
            if not y.is_zero():
                bad.append(SerreViolation("serre", i, j))
    return SerreReport(not bad, tuple(bad))
