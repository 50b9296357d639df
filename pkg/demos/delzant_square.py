"""Quantize the 2x2 square two ways.

The classical toric fact: the quantization of a Delzant lattice polytope
carries exactly its lattice points, each with multiplicity one.  The
fixed-point route assigns one term per vertex (moment value over the product
of 1 - t^edge for the primitive inward edges) and agrees after restriction to
a generic one-parameter subgroup.

Run:  python3 demos/delzant_square.py
"""
from logq import (
    Halfspace,
    Polyhedron,
    delzant,
    fixed_terms_delzant,
    qr_check,
    quantize_lattice,
)

square = Polyhedron(
    2,
    [
        Halfspace((1, 0), 0),   # x >= 0
        Halfspace((-1, 0), -2),  # x <= 2
        Halfspace((0, 1), 0),   # y >= 0
        Halfspace((0, -1), -2),  # y <= 2
    ],
)

data = delzant(square)
char = quantize_lattice(data)

print("lattice quantization of [0,2]^2:")
for weight in char.support():
    print(f"  weight {weight}  multiplicity {char.terms[weight]}")
print(f"  total dimension: {char.dimension()}")
print()

print("fixed-point terms (one per vertex):")
for term in fixed_terms_delzant(square):
    factors = " ".join(f"(1 - t^{w})" for w in term.weights)
    print(f"  {'+' if term.sign > 0 else '-'} t^{term.mu} / {factors}")
print()

report = qr_check(data, fixed_terms_delzant(square))
print(f"two routes agree: {report.agree}")

flipped = quantize_lattice(data.flipped())
print(f"orientation flip negates: {flipped == -char}")
