"""Exact rational polyhedral geometry at desk scale.

Everything is decided over the rationals with no tolerances: feasibility by
Fourier-Motzkin elimination, boundedness by an extreme-ray search on the
recession cone, vertices by basic-solution enumeration, lattice points by
brute force over a box, and strong convexity by Caratheodory-style subset
checks.  Hard caps keep inputs at the intended desk scale; exceeding them
raises :class:`SizeLimit` rather than silently truncating.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd
from typing import Iterable, Sequence

from .errors import SizeLimit
from .jsonio import decode_fraction, decode_int, encode_fraction

RANK_CAP = 3
HALFSPACE_CAP = 16
ARRANGEMENT_CAP = 12
BOX_VOLUME_CAP = 10_000_000
GENERATOR_CAP = 16

# Relation kinds for the integer constraint kernel: a.x >= b, a.x > b, a.x == b.
_GE, _GT, _EQ = 0, 1, 2

_ZERO = Fraction(0)


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact polyhedral data; use Fraction or str")
    return Fraction(x)


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace {x : <normal, x> >= offset}."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __init__(self, normal: Sequence, offset=0):
        n = tuple(_frac(c) for c in normal)
        if not any(n):
            raise ValueError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", _frac(offset))

    def to_jsonable(self) -> dict:
        return {
            "normal": [encode_fraction(c) for c in self.normal],
            "offset": encode_fraction(self.offset),
        }

    @classmethod
    def from_jsonable(cls, obj) -> "Halfspace":
        return cls([decode_fraction(c) for c in obj["normal"]], decode_fraction(obj["offset"]))


@dataclass(frozen=True)
class Polyhedron:
    """Intersection of finitely many closed halfspaces; may be empty or unbounded."""

    rank: int
    halfspaces: tuple[Halfspace, ...]

    def __init__(self, rank: int, halfspaces: Iterable[Halfspace] = ()):
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise ValueError(f"rank must be a positive integer, got {rank!r}")
        hs = tuple(halfspaces)
        for h in hs:
            if not isinstance(h, Halfspace):
                raise TypeError(f"expected Halfspace, got {h!r}")
            if len(h.normal) != rank:
                raise ValueError(f"halfspace normal {h.normal} does not match rank {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "halfspaces", hs)

    def contains(self, point: Sequence) -> bool:
        p = tuple(_frac(c) for c in point)
        if len(p) != self.rank:
            raise ValueError(f"point {point!r} does not match rank {self.rank}")
        return all(
            sum(a * x for a, x in zip(h.normal, p)) >= h.offset for h in self.halfspaces
        )

    def to_jsonable(self) -> dict:
        return {
            "rank": self.rank,
            "halfspaces": [h.to_jsonable() for h in self.halfspaces],
        }

    @classmethod
    def from_jsonable(cls, obj) -> "Polyhedron":
        return cls(
            decode_int(obj["rank"]),
            [Halfspace.from_jsonable(h) for h in obj.get("halfspaces", [])],
        )


@dataclass(frozen=True)
class Cell:
    """A relatively open cell of a hyperplane arrangement.

    ``sign_vector[i]`` records the position relative to hyperplane i:
    +1 above, 0 on, -1 below.  The flags are exact LP answers for the region.
    """

    sign_vector: tuple[int, ...]
    feasible: bool
    bounded: bool


# ---------------------------------------------------------------------------
# Integer constraint kernel.


def _normalize_row(coeffs: tuple[int, ...], rhs: int, kind: int):
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    g = gcd(g, abs(rhs))
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        rhs = rhs // g
    return (coeffs, rhs, kind)


def _halfspace_int(h: Halfspace) -> tuple[tuple[int, ...], int]:
    """Scale a rational halfspace to coprime integers (a, b) with a.x >= b."""
    denoms = [c.denominator for c in h.normal] + [h.offset.denominator]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    a = tuple(int(c * lcm) for c in h.normal)
    b = int(h.offset * lcm)
    (a, b, _) = _normalize_row(a, b, _GE)
    return a, b


def _compress(rows, nvars):
    """Dedupe rows by coefficient vector, keeping the strongest; decide
    zero-coefficient rows on the spot.  Returns None when infeasible."""
    best: dict[tuple[int, ...], tuple[int, int]] = {}
    for coeffs, rhs, kind in rows:
        if not any(coeffs):
            if kind == _GT:
                if not 0 > rhs:
                    return None
            else:
                if not 0 >= rhs:
                    return None
            continue
        cur = best.get(coeffs)
        if cur is None or rhs > cur[0] or (rhs == cur[0] and kind > cur[1]):
            best[coeffs] = (rhs, kind)
    return [(c, rb[0], rb[1]) for c, rb in best.items()]


def _fm_feasible_point(cons, nvars):
    """Fourier-Motzkin feasibility with a rational witness.

    ``cons`` is a list of integer rows (coeffs, rhs, kind).  Returns an exact
    interior point of the solution set, or None when the system is infeasible.
    Strict inequalities are tracked through the elimination, so the witness
    satisfies them strictly.
    """
    rows = []
    for coeffs, rhs, kind in cons:
        coeffs = tuple(coeffs)
        if kind == _EQ:
            rows.append(_normalize_row(coeffs, rhs, _GE))
            rows.append(_normalize_row(tuple(-c for c in coeffs), -rhs, _GE))
        else:
            rows.append(_normalize_row(coeffs, rhs, kind))
    system = _compress(rows, nvars)
    if system is None:
        return None
    levels = []
    for var in range(nvars - 1, -1, -1):
        pos, neg, rest = [], [], []
        for row in system:
            c = row[0][var]
            if c > 0:
                pos.append(row)
            elif c < 0:
                neg.append(row)
            else:
                rest.append(row)
        levels.append((var, pos + neg))
        derived = list(rest)
        for (pa, pb, pk) in pos:
            pj = pa[var]
            for (na, nb, nk) in neg:
                nj = -na[var]
                coeffs = tuple(nj * x + pj * y for x, y in zip(pa, na))
                rhs = nj * pb + pj * nb
                kind = _GT if (pk == _GT or nk == _GT) else _GE
                derived.append(_normalize_row(coeffs, rhs, kind))
        system = _compress(derived, nvars)
        if system is None:
            return None
    values: list[Fraction] = [_ZERO] * nvars
    for var, binding in reversed(levels):
        lo = hi = None
        lo_strict = hi_strict = False
        for coeffs, rhs, kind in binding:
            rest = Fraction(rhs) - sum(
                Fraction(c) * values[i] for i, c in enumerate(coeffs) if i != var and c
            )
            bound = rest / coeffs[var]
            if coeffs[var] > 0:
                if lo is None or bound > lo or (bound == lo and kind == _GT):
                    lo, lo_strict = bound, kind == _GT
            else:
                if hi is None or bound < hi or (bound == hi and kind == _GT):
                    hi, hi_strict = bound, kind == _GT
        if lo is None and hi is None:
            values[var] = _ZERO
        elif lo is None:
            values[var] = hi - 1 if hi_strict else hi
        elif hi is None:
            values[var] = lo + 1 if lo_strict else lo
        elif lo < hi:
            values[var] = (lo + hi) / 2
        else:
            # lo == hi; both bounds non-strict or FM would have failed
            values[var] = lo
    return tuple(values)


def _row_echelon(rows: list[list[Fraction]]):
    """In-place Gauss-Jordan elimination over Fraction; returns pivot columns."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def _solve_square(normals, rhs, n):
    """Unique solution of <normals[i], x> = rhs[i], or None if singular."""
    rows = [[Fraction(c) for c in a] + [Fraction(b)] for a, b in zip(normals, rhs)]
    pivots = _row_echelon(rows)
    if len(pivots) != n or n in pivots:
        return None
    sol = [_ZERO] * n
    for i, col in enumerate(pivots):
        sol[col] = rows[i][n]
    return tuple(sol)


def _kernel_basis(rows_int, n):
    """Basis of the common kernel of the given integer row vectors."""
    if not rows_int:
        return [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
    rows = [[Fraction(c) for c in a] for a in rows_int]
    pivots = _row_echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [_ZERO] * n
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(tuple(vec))
    return basis


def _primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    lcm = 1
    for c in vec:
        d = Fraction(c).denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(Fraction(c) * lcm) for c in vec]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(ints)


def _cone_ray(rows_int, n):
    """A nonzero integer ray of the cone {d : row . d >= 0 for all rows},
    or None when the cone is the origin.

    If the rows do not span, any common-kernel direction is a line in the
    cone.  Otherwise the cone is pointed and a nonzero cone needs an extreme
    ray, which has n-1 independent active constraints, so it is found among
    kernels of (n-1)-subsets.
    """
    rows = sorted(set(_normalize_row(tuple(r), 0, _GE)[0] for r in rows_int if any(r)))
    kern = _kernel_basis(rows, n)
    if kern:
        return _primitive(kern[0])
    for subset in combinations(rows, n - 1):
        basis = _kernel_basis(list(subset), n)
        if len(basis) != 1:
            continue
        d = _primitive(basis[0])
        for cand in (d, tuple(-c for c in d)):
            if all(sum(a * x for a, x in zip(row, cand)) >= 0 for row in rows):
                return cand
    return None


def _check_caps(P: Polyhedron, op: str) -> None:
    if P.rank > RANK_CAP:
        raise SizeLimit(f"{op}: rank {P.rank} exceeds cap {RANK_CAP}")
    if len(P.halfspaces) > HALFSPACE_CAP:
        raise SizeLimit(
            f"{op}: {len(P.halfspaces)} halfspaces exceed cap {HALFSPACE_CAP}"
        )


def _ge_rows(P: Polyhedron):
    return [(a, b, _GE) for a, b in map(_halfspace_int, P.halfspaces)]


# ---------------------------------------------------------------------------
# Public operations.


def is_empty(P: Polyhedron) -> bool:
    """Exact emptiness test: True iff no rational point satisfies all halfspaces."""
    _check_caps(P, "is_empty")
    return _fm_feasible_point(_ge_rows(P), P.rank) is None


def recession_cone(P: Polyhedron) -> Polyhedron:
    """Syntactic homogenization: same normals, zero offsets."""
    return Polyhedron(P.rank, [Halfspace(h.normal, 0) for h in P.halfspaces])


def is_bounded(P: Polyhedron) -> bool:
    """True iff the recession cone is the origin (vacuously true when empty)."""
    _check_caps(P, "is_bounded")
    if is_empty(P):
        return True
    rows = [a for a, _ in map(_halfspace_int, P.halfspaces)]
    return _cone_ray(rows, P.rank) is None


def vertices(P: Polyhedron) -> list[tuple[Fraction, ...]]:
    """All basic feasible solutions, deduplicated, in lexicographic order.

    A vertex is the unique solution of some rank-many facet equalities that
    satisfies every constraint.
    """
    _check_caps(P, "vertices")
    ints = [_halfspace_int(h) for h in P.halfspaces]
    found = set()
    for subset in combinations(ints, P.rank):
        sol = _solve_square([a for a, _ in subset], [b for _, b in subset], P.rank)
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(row, sol)) >= b for row, b in ints):
            found.add(sol)
    return sorted(found)


def lattice_points(
    P: Polyhedron,
    box: Sequence[tuple[int, int]],
    *,
    volume_cap: int = BOX_VOLUME_CAP,
) -> list[tuple[int, ...]]:
    """All integer points of the box that lie in P, in lexicographic order.

    The box is a product of integer intervals [lo, hi], one per coordinate.
    Boxes with volume beyond ``volume_cap`` are rejected.
    """
    _check_caps(P, "lattice_points")
    if len(box) != P.rank:
        raise ValueError(f"box has {len(box)} intervals, expected {P.rank}")
    volume = 1
    for lo, hi in box:
        volume *= max(0, hi - lo + 1)
    if volume > volume_cap:
        raise SizeLimit(f"lattice_points: box volume {volume} exceeds cap {volume_cap}")
    if volume == 0:
        return []
    ints = [_halfspace_int(h) for h in P.halfspaces]
    out = []
    for pt in product(*[range(lo, hi + 1) for lo, hi in box]):
        if all(sum(a * x for a, x in zip(row, pt)) >= b for row, b in ints):
            out.append(pt)
    return out


def strongly_convex(vectors: Sequence[Sequence]) -> bool:
    """True iff no nonzero nonnegative combination of the vectors is zero.

    Equivalent to the cone they generate containing no line.  Decided exactly:
    the combination can be normalized to sum 1, so the question is whether the
    origin lies in the convex hull, and by Caratheodory it suffices to examine
    affinely independent subsets of at most dim+1 vectors.
    """
    vecs = [tuple(_frac(c) for c in v) for v in vectors]
    if not vecs:
        return True
    if len(vecs) > GENERATOR_CAP:
        raise SizeLimit(f"strongly_convex: {len(vecs)} generators exceed cap {GENERATOR_CAP}")
    dim = len(vecs[0])
    if dim > 8:
        raise SizeLimit(f"strongly_convex: ambient dimension {dim} exceeds cap 8")
    for v in vecs:
        if len(v) != dim:
            raise ValueError("generators must share a common ambient dimension")
    for size in range(1, min(len(vecs), dim + 1) + 1):
        for subset in combinations(vecs, size):
            # Solve sum t_i v_i = 0, sum t_i = 1 for the subset.
            rows = [
                [subset[i][coord] for i in range(size)] + [_ZERO] for coord in range(dim)
            ]
            rows.append([Fraction(1)] * size + [Fraction(1)])
            pivots = _row_echelon(rows)
            if size in pivots or len(pivots) != size:
                continue  # inconsistent or affinely dependent subset
            t = [rows[i][size] for i in range(size)]
            if all(x >= 0 for x in t):
                return False
    return True


# ---------------------------------------------------------------------------
# Hyperplane arrangements.


def _sign_rows(hps_int, sign_vector):
    rows = []
    for (a, b), s in zip(hps_int, sign_vector):
        if s > 0:
            rows.append((a, b, _GT))
        elif s < 0:
            rows.append((tuple(-c for c in a), -b, _GT))
        else:
            rows.append((a, b, _EQ))
    return rows


def _enumerate_cells(hps_int, rank):
    """All feasible sign vectors with a witness interior point and bounded flag.

    Hyperplanes are inserted one at a time; a partial sign vector that is
    already infeasible cannot become feasible, so pruning leaves the output
    equal to the full 3^H sweep.  Each live cell carries a witness point,
    which settles the matching child sign without an LP call.
    """
    live = [((), tuple([_ZERO] * rank))]
    for idx, (a, b) in enumerate(hps_int):
        prefix = hps_int[: idx + 1]
        nxt = []
        for sv, pt in live:
            val = sum(Fraction(c) * x for c, x in zip(a, pt))
            pt_sign = 1 if val > b else (-1 if val < b else 0)
            for s in (-1, 0, 1):
                if s == pt_sign:
                    nxt.append((sv + (s,), pt))
                    continue
                cand = sv + (s,)
                witness = _fm_feasible_point(_sign_rows(prefix, cand), rank)
                if witness is not None:
                    nxt.append((cand, witness))
        live = nxt
    out = []
    for sv, pt in live:
        rows = []
        for (a, _), s in zip(hps_int, sv):
            if s > 0:
                rows.append(a)
            elif s < 0:
                rows.append(tuple(-c for c in a))
            else:
                rows.append(a)
                rows.append(tuple(-c for c in a))
        bounded = _cone_ray(rows, rank) is None
        out.append((sv, pt, bounded))
    out.sort(key=lambda t: t[0])
    return out


def _arrangement_int(hyperplanes: Sequence[Halfspace], op: str):
    if not hyperplanes:
        raise ValueError(f"{op}: need at least one hyperplane")
    rank = len(hyperplanes[0].normal)
    if rank > RANK_CAP:
        raise SizeLimit(f"{op}: rank {rank} exceeds cap {RANK_CAP}")
    if len(hyperplanes) > ARRANGEMENT_CAP:
        raise SizeLimit(
            f"{op}: {len(hyperplanes)} hyperplanes exceed cap {ARRANGEMENT_CAP}"
        )
    for h in hyperplanes:
        if len(h.normal) != rank:
            raise ValueError("hyperplanes must share a common rank")
    return [_halfspace_int(h) for h in hyperplanes], rank


def arrangement_cells(hyperplanes: Sequence[Halfspace]) -> list[Cell]:
    """Feasible cells of the arrangement of the given hyperplane boundaries.

    Each Halfspace contributes the hyperplane <normal, x> = offset.  The
    result covers every sign vector in {-1, 0, +1}^H that cuts out a nonempty
    relatively open region, with an exact boundedness flag, ordered by sign
    vector.
    """
    hps_int, rank = _arrangement_int(hyperplanes, "arrangement_cells")
    return [
        Cell(sv, True, bounded) for sv, _, bounded in _enumerate_cells(hps_int, rank)
    ]


def arrangement_cells_with_points(
    hyperplanes: Sequence[Halfspace],
) -> list[tuple[Cell, tuple[Fraction, ...]]]:
    """Like :func:`arrangement_cells` but pairs each cell with a rational
    interior point of its relatively open region."""
    hps_int, rank = _arrangement_int(hyperplanes, "arrangement_cells")
    return [
        (Cell(sv, True, bounded), pt) for sv, pt, bounded in _enumerate_cells(hps_int, rank)
    ]


def arrangement_vertex_box(hyperplanes: Sequence[Halfspace]):
    """Integer bounding box of all rank-fold hyperplane intersection points.

    Every vertex of every bounded arrangement cell is such a point, so the box
    contains the closure of every bounded cell.  Returns None when the
    arrangement has no such points (and hence no bounded cells).
    """
    hps_int, rank = _arrangement_int(hyperplanes, "arrangement_vertex_box")
    lo = [None] * rank
    hi = [None] * rank
    seen = False
    for subset in combinations(hps_int, rank):
        sol = _solve_square([a for a, _ in subset], [b for _, b in subset], rank)
        if sol is None:
            continue
        seen = True
        for i, c in enumerate(sol):
            f, cc = floor(c), ceil(c)
            if lo[i] is None or f < lo[i]:
                lo[i] = f
            if hi[i] is None or cc > hi[i]:
                hi[i] = cc
    if not seen:
        return None
    return [(int(l), int(h)) for l, h in zip(lo, hi)]
