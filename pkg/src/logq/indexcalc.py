"""The two quantization routes and their cross-check.

Route one counts lattice points of the polytope pieces with crossing-parity
signs, after certifying that the signed indicator vanishes on every unbounded
arrangement cell (so the result is an honest finite character).  Route two
evaluates the Atiyah-Bott fixed-point sum as an exact rational character
expression and reduces it by exact division.  ``qr_check`` runs both and
reports their agreement weight by weight, which is the executable content of
quantization commuting with reduction.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import polyhedra, toricmodel
from .charring import (
    Character,
    LaurentPoly,
    RationalChar,
    RationalTerm,
    SU2Char,
    Weight,
    as_weight,
    rational_to_laurent,
    weyl_char,
)
from .errors import InfiniteSupport, NotDelzant, RankMismatch, SizeLimit, Unbounded
from .jsonio import decode_int, encode_int
from .polyhedra import Halfspace, Polyhedron
from .toricmodel import ToricLogData


@dataclass(frozen=True)
class FixedPointTerm:
    """One fixed-point contribution sign * t^mu / prod_i (1 - t^(w_i)).

    ``mu`` is the moment value of the fixed point and ``weights`` are the
    isotropy weights, stored raw so orientation conventions stay visible.
    """

    sign: int
    mu: Weight
    weights: tuple[Weight, ...]

    def __init__(self, sign: int, mu: Iterable[int], weights: Iterable[Iterable[int]] = ()):
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        m = as_weight(mu)
        ws = tuple(as_weight(w) for w in weights)
        for w in ws:
            if len(w) != len(m):
                raise RankMismatch(f"isotropy weight {w} does not match moment rank {len(m)}")
            if not any(w):
                raise ValueError("isotropy weights must be nonzero")
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "mu", m)
        object.__setattr__(self, "weights", ws)

    @property
    def rank(self) -> int:
        return len(self.mu)

    def to_jsonable(self) -> dict:
        return {
            "sign": self.sign,
            "mu": [encode_int(c) for c in self.mu],
            "weights": [[encode_int(c) for c in w] for w in self.weights],
        }

    @classmethod
    def from_jsonable(cls, obj) -> "FixedPointTerm":
        return cls(
            decode_int(obj["sign"]),
            [decode_int(c) for c in obj["mu"]],
            [[decode_int(c) for c in w] for w in obj.get("weights", [])],
        )


@dataclass(frozen=True)
class QRReport:
    """Outcome of the two-route comparison.

    ``per_weight_table`` rows are (weight, lattice multiplicity, fixed-point
    multiplicity, signed reduced-space point count), in lexicographic weight
    order over the union of supports padded by a 1-margin shell.
    """

    lattice_char: Character
    fixedpoint_char: Character
    agree: bool
    per_weight_table: tuple[tuple[Weight, int, int, int], ...]

    def to_jsonable(self) -> dict:
        return {
            "agree": self.agree,
            "lattice_char": self.lattice_char.to_jsonable(),
            "fixedpoint_char": self.fixedpoint_char.to_jsonable(),
            "per_weight_table": [
                {
                    "weight": [encode_int(c) for c in w],
                    "lattice": encode_int(a),
                    "fixed_point": encode_int(b),
                    "reduced_points": encode_int(c2),
                }
                for w, a, b, c2 in self.per_weight_table
            ],
        }


def _validated_signs(d: ToricLogData) -> tuple[int, ...]:
    toricmodel.validate(d).raise_if_failed()
    return toricmodel.signs(d)


def _facet_hyperplanes(d: ToricLogData) -> list[Halfspace]:
    """Deduplicated facet hyperplanes of all pieces, canonically oriented."""
    seen = {}
    for piece in d.pieces:
        for h in piece.region.halfspaces:
            a, b = polyhedra._halfspace_int(h)
            lead = next(c for c in a if c)
            if lead < 0:
                a, b = tuple(-c for c in a), -b
            seen[(a, b)] = None
    return [
        Halfspace(a, b) for a, b in sorted(seen)
    ]


def quantize_lattice(d: ToricLogData, *, box_cap: int = polyhedra.BOX_VOLUME_CAP) -> Character:
    """Signed lattice count of the polytope pieces, as a finite character.

    The arrangement of all facet hyperplanes is swept first: the signed
    indicator sum is constant on every relatively open cell, so evaluating it
    at one interior point per unbounded cell decides finiteness of the
    support.  A nonzero value there raises :class:`InfiniteSupport`.  The
    character is then accumulated over a box that contains every bounded
    cell.
    """
    o = _validated_signs(d)
    rank = d.rank
    if not d.pieces:
        return Character(rank, {})
    hyperplanes = _facet_hyperplanes(d)
    if not hyperplanes:
        # Pieces with no facets cover all of t*; only total cancellation is finite.
        if sum(o):
            raise InfiniteSupport("facet-free pieces with nonzero total sign")
        return Character(rank, {})
    cells = polyhedra.arrangement_cells_with_points(hyperplanes)
    for cell, point in cells:
        if cell.bounded:
            continue
        s = sum(
            oj for oj, piece in zip(o, d.pieces) if piece.region.contains(point)
        )
        if s:
            raise InfiniteSupport(
                f"signed indicator is {s} on unbounded cell {cell.sign_vector}"
            )
    box = polyhedra.arrangement_vertex_box(hyperplanes)
    if box is None:
        return Character(rank, {})
    terms: Counter = Counter()
    for oj, piece in zip(o, d.pieces):
        for pt in polyhedra.lattice_points(piece.region, box, volume_cap=box_cap):
            terms[pt] += oj
    return Character(rank, terms)


def reduced_multiplicity(d: ToricLogData, weight: Iterable[int]) -> int:
    """Signed count of reduced-space points over the given weight.

    This is the signed indicator sum of the pieces, evaluated at one lattice
    point; it equals the multiplicity of that weight in the lattice-count
    quantization by construction.
    """
    w = as_weight(weight)
    if len(w) != d.rank:
        raise RankMismatch(f"weight {w} does not match rank {d.rank}")
    o = toricmodel.signs(d)
    return sum(oj for oj, piece in zip(o, d.pieces) if piece.region.contains(w))


def atiyah_bott(terms: Sequence[FixedPointTerm]) -> Character:
    """Evaluate a rank-1 fixed-point sum as a finite character.

    Assembles sign * t^mu / prod(1 - t^w) over all terms and performs the
    exact division.  Raises :class:`NotFinite` when the sum is not a finite
    character (invalid fixed-point data) and :class:`RankMismatch` for ranks
    other than 1, which are handled through specialization in
    :func:`qr_check` instead.
    """
    if not terms:
        return Character(1, {})
    rank = terms[0].rank
    if any(t.rank != rank for t in terms):
        raise RankMismatch("fixed-point terms must share a common rank")
    if rank != 1:
        raise RankMismatch("direct evaluation requires rank 1; use qr_check for higher rank")
    rat = RationalChar(
        RationalTerm(t.sign, t.mu[0], [w[0] for w in t.weights]) for t in terms
    )
    return rational_to_laurent(rat).to_character()


def fixed_terms_s2(n1: int, n2: int) -> list[FixedPointTerm]:
    """Fixed-point data of the rank-1 sphere family.

    Both poles contribute denominator (1 - t): the complex structure is
    compatible with the log symplectic form, which flips sign across the
    divisor, so the isotropy weights agree.  The second pole carries the minus
    sign of its induced orientation.
    """
    return [
        FixedPointTerm(1, (n1,), ((1,),)),
        FixedPointTerm(-1, (n2,), ((1,),)),
    ]


def fixed_terms_delzant(P: Polyhedron) -> list[FixedPointTerm]:
    """One fixed-point term per vertex of a Delzant lattice polytope.

    The vertex v contributes t^v / prod(1 - t^(e_i)) with e_i the primitive
    inward edge generators.  Vertices must be simple (exactly rank active
    facets), unimodular (edge determinant +-1), and lattice points; anything
    else raises :class:`NotDelzant`.
    """
    if not polyhedra.is_bounded(P):
        raise Unbounded("fixed-point data needs a bounded polytope")
    rank = P.rank
    facets = sorted(set(polyhedra._halfspace_int(h) for h in P.halfspaces))
    out = []
    for v in polyhedra.vertices(P):
        active = [
            (a, b) for a, b in facets if sum(x * c for x, c in zip(a, v)) == b
        ]
        if len(active) != rank:
            raise NotDelzant(f"vertex {v} has {len(active)} active facets, expected {rank}")
        edges = []
        for i in range(rank):
            others = [a for j, (a, _) in enumerate(active) if j != i]
            kernel = polyhedra._kernel_basis(others, rank)
            if len(kernel) != 1:
                raise NotDelzant(f"vertex {v} has dependent active facets")
            e = polyhedra._primitive(kernel[0])
            inward = sum(x * c for x, c in zip(active[i][0], e))
            if inward == 0:
                raise NotDelzant(f"vertex {v} has dependent active facets")
            if inward < 0:
                e = tuple(-c for c in e)
            edges.append(e)
        if abs(_det_int(edges)) != 1:
            raise NotDelzant(f"vertex {v} has non-unimodular edge generators {edges}")
        if any(c.denominator != 1 for c in v):
            raise NotDelzant(f"vertex {v} is not in the weight lattice")
        mu = tuple(int(c) for c in v)
        out.append(FixedPointTerm(1, mu, edges))
    out.sort(key=lambda t: t.mu)
    return out


def _det_int(rows: Sequence[tuple[int, ...]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    raise SizeLimit(f"determinant of size {n} exceeds the rank cap")


def bwb(k: int) -> SU2Char:
    """Index of the degree-k line bundle on the projective line, as an SU(2)
    character: V_k for k >= 0, zero for k = -1, and -V_(-k-2) for k <= -2."""
    if k >= 0:
        return SU2Char({k: 1})
    if k == -1:
        return SU2Char()
    return SU2Char({-k - 2: -1})


def mincoupling_index(base_degree: int, fibre: Character) -> SU2Char:
    """Quantization of a fibre bundle over the degree-1 projective line.

    Each fibre weight j contributes its multiplicity times the index of the
    line bundle of degree base_degree + j on the base.
    """
    if fibre.rank != 1:
        raise RankMismatch("fibre character must have rank 1")
    total = SU2Char()
    for (j,), m in sorted(fibre.terms.items()):
        piece = bwb(base_degree + j)
        total = total + SU2Char({jj: m * mm for jj, mm in piece.mults.items()})
    return total


def _shell(weights: Iterable[Weight], rank: int) -> set[Weight]:
    """All lattice points within Chebyshev distance 1 of the given set."""
    out: set[Weight] = set()
    offsets = list(product((-1, 0, 1), repeat=rank))
    for w in weights:
        for off in offsets:
            out.add(tuple(a + b for a, b in zip(w, off)))
    return out


def _specialization_xi(
    lattice_char: Character, domain: Sequence[Weight], terms: Sequence[FixedPointTerm]
) -> Weight:
    """Deterministic generic one-parameter subgroup for rank >= 2 comparison.

    Tries xi = (1, m, m^2, ...) for m = M, M+1, ... with M past the support
    diameter, until pairing is injective on the comparison domain and nonzero
    on every denominator weight.  Only finitely many m fail either condition.
    """
    rank = lattice_char.rank
    support = lattice_char.support()
    diam = 0
    for i in range(rank):
        coords = [w[i] for w in support]
        if coords:
            diam = max(diam, max(coords) - min(coords))
    m0 = max(diam + 1, 2)
    for k in range(1000):
        m = m0 + k
        xi = tuple(m**i for i in range(rank))
        values = {sum(a * b for a, b in zip(w, xi)) for w in domain}
        if len(values) != len(domain):
            continue
        if any(sum(a * b for a, b in zip(w, xi)) == 0 for t in terms for w in t.weights):
            continue
        return xi
    raise RuntimeError("no injective specialization found")  # pragma: no cover


def qr_check(
    d: ToricLogData,
    terms: Sequence[FixedPointTerm],
    *,
    box_cap: int = polyhedra.BOX_VOLUME_CAP,
) -> QRReport:
    """Compare the lattice-count and fixed-point quantizations.

    Rank 1 compares the characters directly.  Higher rank compares the two
    sides after restricting to a deterministic generic one-parameter subgroup
    that is injective on the comparison domain; on agreement the fixed-point
    character is the lattice character, otherwise it records the
    coefficients attributed back through the specialization.  Disagreement is
    reported, not raised.
    """
    lattice_char = quantize_lattice(d, box_cap=box_cap)
    rank = d.rank
    terms = list(terms)
    if any(t.rank != rank for t in terms):
        raise RankMismatch("fixed-point terms do not match the rank of the toric data")
    if rank == 1:
        fp_char = atiyah_bott(terms)
        agree = fp_char == lattice_char
    else:
        domain = sorted(_shell(lattice_char.support(), rank))
        xi = _specialization_xi(lattice_char, domain, terms)
        specialized = RationalChar(
            RationalTerm(
                t.sign,
                sum(a * b for a, b in zip(t.mu, xi)),
                [sum(a * b for a, b in zip(w, xi)) for w in t.weights],
            )
            for t in terms
        )
        fp_poly = rational_to_laurent(specialized)
        agree = fp_poly == lattice_char.specialize(xi)
        if agree:
            fp_char = lattice_char
        else:
            attributed = {
                w: fp_poly.coeff(sum(a * b for a, b in zip(w, xi))) for w in domain
            }
            fp_char = Character(rank, attributed)
    support = set(lattice_char.support()) | set(fp_char.support())
    table_domain = sorted(_shell(support, rank)) if support else []
    table = tuple(
        (
            w,
            lattice_char.multiplicity(w),
            fp_char.multiplicity(w),
            reduced_multiplicity(d, w),
        )
        for w in table_domain
    )
    return QRReport(
        lattice_char=lattice_char,
        fixedpoint_char=fp_char,
        agree=agree,
        per_weight_table=table,
    )
