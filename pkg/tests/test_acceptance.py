"""Acceptance suite: one test per criterion, exact expectations, stated budgets.

Every test prints a single [PASS]/[FAIL] line (visible with ``pytest -s``).
Independent oracles live in this file: indicator membership is recomputed
with plain integer comparisons, never through the library's own lattice
enumeration, and the prequantization identity is checked at 60-digit
precision with mpmath.
"""
import random
import time

import mpmath
import pytest

from logq import (
    Character,
    DivisorWall,
    FixedPointTerm,
    Halfspace,
    InfiniteSupport,
    NotProper,
    Polyhedron,
    PolytopePiece,
    SU2Char,
    Stratum,
    ToricLogData,
    atiyah_bott,
    bwb,
    delzant,
    fixed_terms_delzant,
    fixed_terms_s2,
    mincoupling_index,
    qr_check,
    quantize_lattice,
    s2_family,
    su2_decompose,
    validate,
    weyl_char,
)


def report(number: int, name: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] acceptance criterion {number}: {name}")


def rank1(mapping):
    return Character(1, {(k,): v for k, v in mapping.items()})


# --- deterministic Delzant polygon catalogue (criteria 3 and 4) -------------


def _rect(x0, x1, y0, y1):
    return Polyhedron(
        2,
        [
            Halfspace((1, 0), x0),
            Halfspace((-1, 0), -x1),
            Halfspace((0, 1), y0),
            Halfspace((0, -1), -y1),
        ],
    )


def _simplex(x0, y0, k):
    return Polyhedron(
        2,
        [
            Halfspace((1, 0), x0),
            Halfspace((0, 1), y0),
            Halfspace((-1, -1), -(x0 + y0 + k)),
        ],
    )


def _trapezoid(x0, y0, width, height, slope):
    # vertices (x0,y0), (x0+width,y0), (x0,y0+height), (x0+width-slope*height, y0+height)
    return Polyhedron(
        2,
        [
            Halfspace((1, 0), x0),
            Halfspace((0, 1), y0),
            Halfspace((0, -1), -(y0 + height)),
            Halfspace((-1, -slope), -(x0 + width + slope * y0)),
        ],
    )


def delzant_polygon_catalogue():
    polygons = []
    for a in range(-4, 4):
        for b in range(a + 1, 5):
            polygons.append(_rect(a, b, a, b))
    for x0 in (-4, -2, 0):
        for y0 in (-4, 0):
            for k in (1, 2, 3):
                if x0 + y0 + k <= 4:
                    polygons.append(_simplex(x0, y0, k))
    for slope in (1, 2):
        for height in (1, 2):
            width = slope * height + 1
            polygons.append(_trapezoid(-4, -4, width, height, slope))
    return polygons


def polygon_lattice_indicator(P: Polyhedron) -> Character:
    """Independent oracle: brute-force membership with integer comparisons."""
    ints = []
    for h in P.halfspaces:
        denom = 1
        for c in list(h.normal) + [h.offset]:
            denom = denom * c.denominator
        ints.append(
            (tuple(int(c * denom) for c in h.normal), int(h.offset * denom))
        )
    terms = {}
    for x in range(-4, 5):
        for y in range(-4, 5):
            if all(a[0] * x + a[1] * y >= b for a, b in ints):
                terms[(x, y)] = 1
    return Character(2, terms)


# --- criteria ---------------------------------------------------------------


def test_criterion_1_s2_family_reproduction():
    ok = False
    try:
        start = time.perf_counter()
        cases = 0
        for n1 in range(-5, 6):
            for n2 in range(-5, 6):
                expected = (
                    rank1({j: 1 for j in range(n1, n2)})
                    if n1 <= n2
                    else rank1({j: -1 for j in range(n2, n1)})
                )
                d, _ = s2_family(n1, n2)
                lattice = quantize_lattice(d)
                fixed = atiyah_bott(fixed_terms_s2(n1, n2))
                assert lattice == expected
                assert fixed == expected
                assert lattice.dimension() == n2 - n1
                cases += 1
        elapsed = time.perf_counter() - start
        assert cases == 121
        assert elapsed < 1.0, f"took {elapsed:.2f}s, budget 1s"
        ok = True
    finally:
        report(1, "S2 family: fixed-point sum == lattice count == window indicator", ok)


def test_criterion_2_minimal_coupling():
    ok = False
    try:
        start = time.perf_counter()
        assert mincoupling_index(1, rank1({0: 1, 1: 1})) == SU2Char({1: 1, 2: 1})
        for n1 in range(0, 5):
            for n2 in range(n1, 5):
                fibre = rank1({j: 1 for j in range(n1, n2)})
                expected = SU2Char({j: 1 for j in range(n1 + 1, n2 + 1)})
                assert mincoupling_index(1, fibre) == expected
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"took {elapsed:.2f}s, budget 1s"
        ok = True
    finally:
        report(2, "minimal coupling gives the sum of V_j over the window", ok)


def test_criterion_3_classical_toric_polygons():
    ok = False
    try:
        start = time.perf_counter()
        polygons = delzant_polygon_catalogue()
        assert len(polygons) >= 50
        for P in polygons:
            d = delzant(P)
            char = quantize_lattice(d)
            assert char == polygon_lattice_indicator(P)
            assert set(char.terms.values()) == {1}
            assert qr_check(d, fixed_terms_delzant(P)).agree
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"took {elapsed:.2f}s, budget 10s"
        ok = True
    finally:
        report(3, "Delzant polygons: multiplicity-1 indicator, both routes agree", ok)


def test_criterion_4_orientation_sign():
    ok = False
    try:
        for n1 in range(-5, 6):
            for n2 in range(-5, 6):
                d, _ = s2_family(n1, n2)
                assert quantize_lattice(d.flipped()) == -quantize_lattice(d)
        for P in delzant_polygon_catalogue():
            d = delzant(P)
            assert quantize_lattice(d.flipped()) == -quantize_lattice(d)
        ok = True
    finally:
        report(4, "global orientation flip negates every fixture's character", ok)


def test_criterion_5_properness_detection():
    ok = False
    try:
        bad = ToricLogData(
            rank=1,
            components=("A", "B"),
            walls=(
                DivisorWall("w1", (-1,), ("A", "B")),  # modular weight +1
                DivisorWall("w2", (1,), ("A", "B")),  # modular weight -1
            ),
            pieces=(
                PolytopePiece(
                    "A", Polyhedron(1, [Halfspace((1,), 0), Halfspace((-1,), -1)])
                ),
            ),
            strata=(Stratum({"w1", "w2"}),),
            base_component="A",
        )
        with pytest.raises(NotProper):
            validate(bad).raise_if_failed()
        with pytest.raises(NotProper):
            quantize_lattice(bad)
        good, _ = s2_family(0, 3)
        assert validate(good).ok
        ok = True
    finally:
        report(5, "two-wall stratum with modular weights {+1,-1} rejected; S2 accepted", ok)


def test_criterion_6_finiteness_guard():
    ok = False
    try:
        unbounded = ToricLogData(
            rank=1,
            components=("A",),
            walls=(),
            pieces=(PolytopePiece("A", Polyhedron(1, [Halfspace((1,), 0)])),),
            strata=(),
            base_component="A",
        )
        with pytest.raises(InfiniteSupport):
            quantize_lattice(unbounded)
        d, _ = s2_family(0, 3)
        assert quantize_lattice(d) == rank1({0: 1, 1: 1, 2: 1})
        ok = True
    finally:
        report(6, "unbounded piece raises InfiniteSupport; cancelling rays pass", ok)


def test_criterion_7_character_ring_round_trips():
    ok = False
    try:
        rng = random.Random(2024)
        for _ in range(1000):
            mults = {}
            for j in rng.sample(range(7), rng.randrange(1, 5)):
                mults[j] = rng.choice([-3, -2, -1, 1, 2, 3])
            poly = None
            for j, m in mults.items():
                contrib = m * weyl_char(j)
                poly = contrib if poly is None else poly + contrib
            assert dict(su2_decompose(poly).mults) == mults
        for k in range(-10, 11):
            assert bwb(k) == -bwb(-k - 2)
        ok = True
    finally:
        report(7, "1000 SU(2) peel round trips; Weyl-numerator antisymmetry of bwb", ok)


def _interval_config(pieces_by_component):
    """Rank-1 welded data with two components across one wall."""
    pieces = []
    for comp, bounds in pieces_by_component:
        lo, hi = bounds
        hs = [Halfspace((1,), lo)]
        if hi is not None:
            hs.append(Halfspace((-1,), -hi))
        pieces.append(PolytopePiece(comp, Polyhedron(1, hs)))
    return ToricLogData(
        rank=1,
        components=("C1", "C2"),
        walls=(DivisorWall("w", (1,), ("C1", "C2")),),
        pieces=tuple(pieces),
        strata=(Stratum({"w"}),),
        base_component="C1",
    )


def test_criterion_8_oracle_equivalence():
    ok = False
    try:
        start = time.perf_counter()
        rng = random.Random(8)
        for _ in range(100):
            intervals = []
            for _ in range(rng.choice([1, 2])):
                # one +ray on C1 and one -ray on C2: recession rays cancel
                intervals.append(("C1", (rng.randrange(-8, 9), None)))
                intervals.append(("C2", (rng.randrange(-8, 9), None)))
            for _ in range(rng.randrange(0, 3)):
                lo = rng.randrange(-8, 5)
                comp = rng.choice(["C1", "C2"])
                intervals.append((comp, (lo, lo + rng.randrange(0, 5))))
            d = _interval_config(intervals)
            char = quantize_lattice(d)
            # brute-force oracle over [-100, 100] with plain comparisons
            expected = {}
            for lam in range(-100, 101):
                total = 0
                for comp, (lo, hi) in intervals:
                    if lam >= lo and (hi is None or lam <= hi):
                        total += 1 if comp == "C1" else -1
                if total:
                    expected[(lam,)] = total
            assert dict(char.terms) == expected
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"took {elapsed:.2f}s, budget 5s"
        ok = True
    finally:
        report(8, "100 signed-interval configs match brute-force enumeration", ok)


def test_criterion_9_prequantization_parameter():
    ok = False
    try:
        with mpmath.workdps(60):
            for n in range(-20, 21):
                a_hp = (1 - mpmath.e**n) / (1 + mpmath.e**n)
                if n == 0:
                    assert a_hp == 0
                else:
                    residual = abs(mpmath.log((1 - a_hp) / (1 + a_hp)) - n) / abs(n)
                    assert residual < mpmath.mpf("1e-12"), f"n={n}: {residual}"
                # the stored float agrees with the high-precision value
                _, params = s2_family(0, n)
                if n == 0:
                    assert params.a == 0.0
                else:
                    assert abs(params.a - a_hp) / abs(a_hp) < mpmath.mpf("1e-12")
        ok = True
    finally:
        report(9, "log((1-a)/(1+a)) = n to 1e-12 relative for |n| <= 20", ok)
