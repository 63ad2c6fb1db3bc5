"""Hand-evaluated fixture tables shared by unit and acceptance tests."""

from fractions import Fraction as F

from braidforge.presentations import c_group

# (euler_M, signature_M, euler_Sigma, self_intersection, cone_order, orientable)
#   -> (chi_orb, tau_orb, index_K), each worked out by hand from
#   χ - (1 - 1/ν)χ(Σ),  τ - (1/3)(1 - 1/ν²)[Σ]²,  (15χ - 29τ)/2 - 4χ(Σ) + 4[Σ]².
INVARIANT_TABLE = [
    # S^4 with unknotted S^2
    ((2, 0, 2, 0, 2, True), (F(1), F(0), F(7))),
    # S^4 with RP^2, ν = 3: 2 - 2/3
    ((2, 0, 1, 0, 3, False), (F(4, 3), F(0), F(11))),
    # S^4 with a torus: the cone term vanishes
    ((2, 0, 0, 0, 5, True), (F(2), F(0), F(15))),
    # CP^2 with a sphere of square 3, ν = 2: τ = 1 - (1/3)(3/4)3; index 8 - 8 + 12
    ((3, 1, 2, 3, 2, True), (F(2), F(1, 4), F(12))),
    # CP^2 with a conic, ν = 2: τ = 1 - 1
    ((3, 1, 2, 4, 2, True), (F(2), F(0), F(16))),
    # χ = 4, τ = 0, sphere of square 1, ν = 2: τ = -(1/3)(3/4); index 30 - 8 + 4
    ((4, 0, 2, 1, 2, True), (F(3), F(-1, 4), F(26))),
    # all zero
    ((0, 0, 0, 0, 7, True), (F(0), F(0), F(0))),
    # K3 with a genus-2 curve of square 2, ν = 3: 24 + 4/3; -16 - 16/27; 412 + 8 + 8
    ((24, -16, -2, 2, 3, True), (F(76, 3), F(-448, 27), F(428))),
    # S^2 x S^2 with the diagonal, ν = 4: 4 - 3/2; -(1/3)(15/16)2; 30 - 8 + 8
    ((4, 0, 2, 2, 4, True), (F(5, 2), F(-5, 8), F(30))),
    # CP^2 with a smooth cubic, ν = 3: τ = 1 - 8/3; index 8 + 36
    ((3, 1, 0, 9, 3, True), (F(3), F(-5, 3), F(44))),
]

# geometry -> (plus_ok, minus_ok), with lhs± = 2χ ± 3τ and
# rhs± = (1 - 1/ν)(2χ(Σ) ± (1 + 1/ν)[Σ]²)
OBSTRUCTION_TABLE = [
    ((2, 0, 2, 0, 2, True), (True, True)),      # 4 >= 2
    ((0, 0, 2, 0, 2, True), (False, False)),    # 0 >= 2 fails
    ((2, 0, 0, 0, 3, True), (True, True)),      # rhs 0
    ((0, 1, 0, 0, 3, True), (True, False)),     # ±3 >= 0
    ((3, 1, 2, 4, 2, True), (True, True)),      # 9 >= 5; 3 >= -1
    ((3, 1, 0, 9, 3, True), (True, True)),      # 9 >= 8; 3 >= -8
    ((3, 1, 0, 12, 3, True), (False, True)),    # 9 >= 32/3 fails
    ((24, -16, -2, 2, 3, True), (True, True)),  # 0 >= -8/9; 96 >= -40/9
    ((4, 0, 2, 2, 4, True), (True, True)),      # 8 >= 39/8; 8 >= 9/8
    ((1, 0, 2, 0, 2, True), (True, True)),      # 2 >= 2
    ((1, 0, 2, 0, 3, True), (False, False)),    # 2 >= 8/3 fails
    ((2, 0, 2, 8, 2, True), (False, True)),     # 4 >= 8 fails; 4 >= -4
    ((2, 0, 2, -8, 2, True), (True, False)),    # 4 >= -4; 4 >= 8 fails
    ((0, 0, 0, 0, 2, True), (True, True)),      # 0 >= 0
    ((0, -1, 0, 0, 5, True), (False, True)),    # -3 >= 0 fails; 3 >= 0
    ((2, 0, 1, 0, 3, False), (True, True)),     # 4 >= 4/3
    ((2, 0, -2, 0, 2, True), (True, True)),     # 4 >= -2
    ((-2, 0, 0, 0, 2, True), (False, False)),   # -4 >= 0 fails
    ((10, 2, 2, 15, 4, True), (True, True)),    # 26 >= 273/16; 14 >= -177/16
    ((5, 3, 2, 20, 5, True), (False, True)),    # 19 >= 112/5 fails; 1 >= -16
]

# (square, pairing, blowups) -> excluded: pairing < 0 and blowups >= square / 3
SW_TABLE = [
    ((F(3), F(1), 5), False),
    ((F(3), F(0), 5), False),
    ((F(3), F(-1), 1), True),
    ((F(9), F(-1), 2), False),
    ((F(9), F(-1), 3), True),
    ((F(0), F(-2), 0), True),
    ((F(-4), F(-1, 2), 0), True),
    ((F(10, 3), F(-1), 1), False),   # 1 < 10/9
    ((F(10, 3), F(-1), 2), True),
    ((F(7), F(-5, 3), 2), False),    # 2 < 7/3
]


# Wirtinger-style data: each block is a knotted component on its own generators.
TREFOIL = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
FIGURE_EIGHT = [(1, 3, 2), (2, 4, 3), (3, 1, 4), (4, 2, 1)]


def shift(triples, k):
    return [(a + k, b + k, c + k) for a, b, c in triples]


C_GROUP_FIXTURES = {
    1: c_group(3, TREFOIL),
    # trefoil plus figure-eight, with the two meridians x1, x4 commuting (a linking relator)
    2: c_group(7, TREFOIL + shift(FIGURE_EIGHT, 3) + [(1, 4, 4)]),
    # trefoil, an unknotted sphere x4 commuting with x1, and a two-meridian component x5, x6
    3: c_group(6, TREFOIL + [(4, 1, 1), (1, 5, 6), (6, 2, 3)]),
}
