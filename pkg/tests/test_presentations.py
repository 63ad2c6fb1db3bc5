import itertools
import math
import random

import numpy as np
import pytest

from braidforge.braids import Permutation
from braidforge.errors import InvalidInputError, UnsupportedGroupError
from braidforge.presentations import (
    AbelianizationResult,
    GroupPresentation,
    WreathElement,
    WreathGroupSpec,
    abelianization,
    configuration_braid_group,
    orbifold_quotient,
    validate_c_group,
    wreath_identity,
    wreath_inverse,
    wreath_multiply,
)

from fixtures import C_GROUP_FIXTURES
from oracles import abelian_invariants


def test_validate_c_group():
    assert validate_c_group(GroupPresentation(3))
    assert validate_c_group(GroupPresentation(3, ((1, 2, -1, -3),)))
    assert not validate_c_group(GroupPresentation(1, ((1, 1),)))
    assert not validate_c_group(GroupPresentation(3, ((1, 2, -2, -3),)))
    assert all(validate_c_group(p) for p in C_GROUP_FIXTURES.values())


def test_abelianization_examples():
    assert abelianization(GroupPresentation(1)) == AbelianizationResult(1, ())
    trefoil = GroupPresentation(2, ((1, 2, 1, -2, -1, -2),))
    assert abelianization(trefoil) == AbelianizationResult(1, ())


@pytest.mark.parametrize("k", [1, 2, 3])
def test_c_group_components(k):
    assert abelianization(C_GROUP_FIXTURES[k]) == AbelianizationResult(k, ())


def random_presentation(rng):
    gens = rng.randint(1, 5)
    rels = []
    for _ in range(rng.randint(0, 5)):
        word = []
        for g in range(1, gens + 1):
            e = rng.randint(-3, 3)
            word.extend([g if e > 0 else -g] * abs(e))
        rng.shuffle(word)
        rels.append(tuple(word))
    return GroupPresentation(gens, tuple(rels))


def test_abelianization_matches_minor_oracle():
    rng = random.Random(7)
    for _ in range(200):
        p = random_presentation(rng)
        rank, tors = abelian_invariants(p.exponent_matrix(), p.generator_count)
        assert abelianization(p) == AbelianizationResult(rank, tuple(tors)), p


def test_orbifold_quotient():
    p = GroupPresentation(1)
    q = orbifold_quotient(p, [(1,)], [2])
    assert q.relators == ((1, 1),)
    assert abelianization(q).torsion_coefficients == (2,)
    for nu in range(2, 9):
        assert abelianization(orbifold_quotient(p, [(1,)], [nu])) == AbelianizationResult(0, (nu,))
    assert orbifold_quotient(p, [], []) == p


def test_orbifold_quotient_errors():
    p = GroupPresentation(2)
    with pytest.raises(InvalidInputError):
        orbifold_quotient(p, [(1,)], [2, 3])
    with pytest.raises(InvalidInputError):
        orbifold_quotient(p, [(3,)], [2])


def test_configuration_braid_group():
    spec = configuration_braid_group(AbelianizationResult(0, (5,)), 3)
    assert spec.order == 5**3 * 6
    assert configuration_braid_group(AbelianizationResult(0, ()), 4).order == 24
    assert configuration_braid_group(AbelianizationResult(0, ()), 4).name == "S_4"
    z = configuration_braid_group(AbelianizationResult(1, ()), 3)
    assert z.order == math.inf and z.name == "Z wr S_3"
    assert "pi_2" in z.report
    with pytest.raises(UnsupportedGroupError):
        configuration_braid_group(AbelianizationResult(2, ()), 3)
    with pytest.raises(UnsupportedGroupError):
        configuration_braid_group(AbelianizationResult(0, (2, 2)), 3)


def all_elements(spec):
    n = spec.copies
    for labels in itertools.product(range(spec.base_order), repeat=n):
        for p in itertools.permutations(range(1, n + 1)):
            yield WreathElement(labels, Permutation(p))


def test_wreath_examples():
    spec = WreathGroupSpec(2, 2)
    e = wreath_identity(spec)
    g = WreathElement((1, 0), Permutation((2, 1)))
    assert wreath_multiply(e, g, spec) == g
    x = WreathElement((1, 0), Permutation.identity(2))
    assert wreath_multiply(x, x, spec) == e
    with pytest.raises(InvalidInputError):
        wreath_multiply(WreathElement((0, 0, 0), Permutation.identity(3)), e, spec)


@pytest.mark.parametrize("nu,n", [(nu, n) for nu in (1, 2, 3) for n in (1, 2, 3)])
def test_wreath_group_axioms(nu, n):
    spec = WreathGroupSpec(nu, n)
    elems = list(all_elements(spec))
    assert len(elems) == spec.order
    e = wreath_identity(spec)
    mul = lambda a, b: wreath_multiply(a, b, spec)
    for a in elems:
        assert mul(a, wreath_inverse(a, spec)) == e
        assert mul(wreath_inverse(a, spec), a) == e
        # element orders divide the group order
        k, x = 1, a
        while x != e:
            x, k = mul(x, a), k + 1
        assert spec.order % k == 0
    index = {x: k for k, x in enumerate(elems)}
    table = np.array([[index[mul(a, b)] for b in elems] for a in elems])
    # exhaustive associativity over all triples
    left = table[table, :]  # T[T[a, b], c]
    right = table[np.arange(len(elems))[:, None, None], table[None, :, :]]  # T[a, T[b, c]]
    assert np.array_equal(left, right)


def test_wreath_product_is_closed():
    spec = WreathGroupSpec(3, 2)
    elems = set(all_elements(spec))
    assert {wreath_multiply(a, b, spec) for a in elems for b in elems} == elems


def test_presentation_file_roundtrip():
    text = "3\n1 2 -1 -3\n2 3 -2 -1\n"
    p = GroupPresentation.parse(text)
    assert p.generator_count == 3 and len(p.relators) == 2
    assert GroupPresentation.parse(p.dumps()) == p
    with pytest.raises(InvalidInputError):
        GroupPresentation.parse("2\n1 5\n")
    with pytest.raises(InvalidInputError):
        GroupPresentation.parse("")


def test_abelianization_string():
    assert str(AbelianizationResult(2, (2, 6))) == "Z^2 + Z/2 + Z/6"
    assert str(AbelianizationResult(0, ())) == "0"


@pytest.mark.parametrize("k", range(4, 12))
def test_rp2_complement_cone_parity(k):
    # π₁(S⁴ ∖ RP²) = Z/2 with cone order k - 2 on the meridian: Z/2 survives exactly for even k
    quotient = orbifold_quotient(GroupPresentation(1, ((1, 1),)), [(1,)], [k - 2])
    ab = abelianization(quotient)
    spec = configuration_braid_group(ab, 3)
    if k % 2 == 0:
        assert ab == AbelianizationResult(0, (2,)) and spec.name == "Z/2 wr S_3"
    else:
        assert ab == AbelianizationResult(0, ()) and spec.name == "S_3"
