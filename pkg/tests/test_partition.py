import random
from fractions import Fraction

import pytest

from conftest import random_group
from goa import GroundSet, Partition
from goa.errors import InputError
from goa.operators import e_klr, epsilon_map
from goa.partition import (_constant_on_blocks, coeff_matrix,
                           format_partition, merge_blocks, mnukhin_check,
                           parse_partition_text, partition_from_polys,
                           structure_constants, upward_count, verify_goa_closure,
                           verify_strongly_regular)
from goa.perms import orbit_partition
from goa.poly import Poly
from goa.incidence import signature_of
from goa.subsets import mask_of, popcount


def cardinality_partition(g):
    by_size = {}
    for m in g.masks():
        by_size.setdefault(popcount(m), []).append(m)
    return Partition.from_blocks(g, list(by_size.values()))


def singletons_partition(g):
    return Partition.from_blocks(g, [[m] for m in g.masks()])


# -- axioms ----------------------------------------------------------------

def test_example_is_strongly_regular(example_partition):
    rep = verify_strongly_regular(example_partition)
    assert rep.ok
    assert rep.comp_map == (5, 4, 3, 2, 1, 0)


def test_singletons_are_strongly_regular(g3):
    assert verify_strongly_regular(singletons_partition(g3)).ok


def test_mixed_sizes_fail_axiom_one():
    g = GroundSet(2)
    p = Partition.from_blocks(g, [[0, mask_of([1])], [mask_of([2]), mask_of([1, 2])]])
    rep = verify_strongly_regular(p)
    assert not rep.size_homogeneous
    assert rep.witness[0] == "axiom-1"


def test_complement_axiom_failure():
    g = GroundSet(2)
    p = Partition.from_blocks(g, [[0], [mask_of([1])], [mask_of([2]), mask_of([1, 2])]])
    rep = verify_strongly_regular(p)
    assert not rep.size_homogeneous or not rep.complement_closed


def test_axiom_three_witness():
    g = GroundSet(3)
    # size-homogeneous, complement-closed, but counts differ:
    # pair {1},{2} against the split 2-sets
    p = Partition.from_blocks(g, [
        [0], [mask_of([1]), mask_of([2])], [mask_of([3])],
        [mask_of([1, 3])], [mask_of([2, 3]), mask_of([1, 2])],
        [mask_of([1, 2, 3])]])
    rep = verify_strongly_regular(p)
    assert rep.size_homogeneous and not rep.ok


# -- coefficient matrix -----------------------------------------------------

def test_coeff_matrix_example_entries(example_partition):
    m = coeff_matrix(example_partition)
    pair_block = 1     # {1},{2}
    top_pair = 3       # {1,2}
    assert m.entries[top_pair][pair_block] == 2
    assert all(row[0] == 1 for row in m.entries)
    assert all(m.entries[0][j] == 0 for j in range(1, m.s))


def test_coeff_matrix_requires_srp():
    g = GroundSet(2)
    p = Partition.from_blocks(g, [[0, mask_of([1])], [mask_of([2]), mask_of([1, 2])]])
    with pytest.raises(InputError):
        coeff_matrix(p)


def test_coeff_row_sums_are_binomials():
    rng = random.Random(2)
    for _ in range(6):
        part = orbit_partition(random_group(rng, rng.randint(3, 6)))
        m = coeff_matrix(part)
        for i in range(m.s):
            for k in range(m.member_sizes[i] + 1):
                total = sum(m.entries[i][j] for j in range(m.s) if m.member_sizes[j] == k)
                from math import comb
                assert total == comb(m.member_sizes[i], k)


def test_upward_count_example(example_partition):
    m = coeff_matrix(example_partition)
    assert upward_count(example_partition, 1, 3, m) == 1     # {1} below {1,2}
    assert upward_count(example_partition, 0, 4, m) == 2     # {} below both 2-sets
    for i in range(m.s):
        assert upward_count(example_partition, i, i, m) == 1


def test_upward_count_three_routes_on_random_orbits():
    rng = random.Random(5)
    for _ in range(5):
        part = orbit_partition(random_group(rng, rng.randint(3, 5)))
        m = coeff_matrix(part)
        for i in range(m.s):
            for j in range(m.s):
                upward_count(part, i, j, m)   # raises on any route disagreement


def test_counting_relation():
    # |orbit_i| * upward(i -> j) = |orbit_j| * downward(j -> i)
    rng = random.Random(8)
    for _ in range(5):
        part = orbit_partition(random_group(rng, rng.randint(3, 6)))
        m = coeff_matrix(part)
        for i in range(m.s):
            for j in range(m.s):
                up = m.entries[m.comp_map[i]][m.comp_map[j]]
                assert m.orbit_sizes[i] * up == m.orbit_sizes[j] * m.entries[j][i]


# -- closure ----------------------------------------------------------------

def test_example_closure(example_partition):
    assert verify_goa_closure(example_partition).closed


def test_cardinality_partition_closed():
    for n in (2, 3, 4):
        assert verify_goa_closure(cardinality_partition(GroundSet(n))).closed


def test_split_one_merge_other_not_closed():
    g = GroundSet(2)
    p = Partition.from_blocks(g, [[0, mask_of([1, 2])], [mask_of([1])], [mask_of([2])]])
    rep = verify_goa_closure(p)
    assert not rep.closed


def test_closure_matches_axioms_on_negatives():
    rng = random.Random(13)
    found = 0
    while found < 12:
        n = rng.randint(2, 4)
        g = GroundSet(n)
        masks = list(g.masks())
        rng.shuffle(masks)
        cuts = sorted(rng.sample(range(1, g.size), rng.randint(1, g.size - 1)))
        blocks, prev = [], 0
        for c in cuts + [g.size]:
            blocks.append(masks[prev:c])
            prev = c
        p = Partition.from_blocks(g, blocks)
        srp = verify_strongly_regular(p).ok
        goa = verify_goa_closure(p).closed
        assert srp == goa
        if not srp:
            found += 1


# -- structure constants -----------------------------------------------------

def test_structure_constants_hand_example(example_partition):
    m = coeff_matrix(example_partition)
    # (x1+x2)^2 = (x1+x2) + 2 x1x2
    vec = structure_constants(example_partition, 1, 1, m)
    assert vec == (0, 1, 0, 2, 0, 0)


def test_structure_constants_unit_and_top(example_partition):
    m = coeff_matrix(example_partition)
    for i in range(m.s):
        vec = structure_constants(example_partition, 0, i, m)
        assert vec == tuple(1 if j == i else 0 for j in range(m.s))
    assert structure_constants(example_partition, 5, 5, m) == (0, 0, 0, 0, 0, 1)


def test_structure_constants_match_direct_multiplication():
    rng = random.Random(21)
    for _ in range(4):
        part = orbit_partition(random_group(rng, rng.randint(3, 5)))
        m = coeff_matrix(part)
        for i in range(m.s):
            for j in range(i, m.s):
                structure_constants(part, i, j, m)   # raises on route mismatch


# -- matrix power law ---------------------------------------------------------

def test_power_law_small_cases(example_partition):
    for m in (1, 2, 3, -1, -2):
        assert mnukhin_check(example_partition, m)


def test_power_law_rejects_zero(example_partition):
    with pytest.raises(InputError):
        mnukhin_check(example_partition, 0)


def test_power_law_square_by_hand(example_partition):
    cm = coeff_matrix(example_partition)
    from goa.linalg import mat_mul
    sq = mat_mul([list(r) for r in cm.entries], [list(r) for r in cm.entries])
    for i in range(cm.s):
        for j in range(cm.s):
            expected = cm.entries[i][j] * Fraction(2) ** (cm.member_sizes[i] - cm.member_sizes[j]) \
                if cm.entries[i][j] else 0
            assert sq[i][j] == expected


# -- merging and rebuilding ----------------------------------------------------

def test_merge_blocks(g3):
    p = singletons_partition(GroundSet(2))
    merged = merge_blocks(p, 1, 2)
    assert len(merged.blocks) == 3
    with pytest.raises(InputError):
        merge_blocks(p, 1, 1)


def test_merge_mixed_sizes_warns():
    p = singletons_partition(GroundSet(2))
    with pytest.warns(UserWarning):
        merge_blocks(p, 0, 1)


def test_random_merges_usually_break_regularity(example_partition):
    # same-size merge that breaks complement closure
    broken = merge_blocks(example_partition, 1, 2)
    assert not verify_strongly_regular(broken).ok


def test_partition_from_example_polys(g3, example_partition):
    x = lambda *e: Poly.term(g3, mask_of(e))
    basis = [Poly.one(g3), x(1) + x(2), x(3), x(1, 2), x(1, 3) + x(2, 3), x(1, 2, 3)]
    assert partition_from_polys(basis) == example_partition


def test_partition_from_constant(g3):
    assert len(partition_from_polys([Poly.one(g3)]).blocks) == 1


def test_partition_from_indicators(g3):
    eps = [epsilon_map(Poly.term(g3, a)) for a in g3.masks()]
    assert partition_from_polys(eps) == singletons_partition(g3)


# -- operator stability of blocks ---------------------------------------------

def test_intersection_operators_stabilize_blocks():
    rng = random.Random(34)
    for _ in range(3):
        n = rng.randint(3, 6)
        part = orbit_partition(random_group(rng, n))
        g = part.g
        for k in range(n + 1):
            for l in range(n + 1):
                for r in range(max(0, k + l - n), min(k, l) + 1):
                    op = e_klr(g, k, l, r)
                    for i in range(len(part.blocks)):
                        image = op(part.block_poly(i))
                        assert _constant_on_blocks(part, image) is None


def test_triple_intersection_counts_constant():
    # for every realized 3-set intersection pattern and block pair (i,j),
    # the number of (A,B) completing C is the same for all C in C's block
    rng = random.Random(55)
    for n in (4, 5):
        part = orbit_partition(random_group(rng, n))
        g = part.g

        def census(c):
            d = {}
            for a in g.masks():
                for b in g.masks():
                    sig = signature_of(g, (a, b, c))
                    key = (sig.values, part.block_of[a], part.block_of[b])
                    d[key] = d.get(key, 0) + 1
            return d

        for block in part.blocks:
            reference = census(block[0])
            for c in block[1:]:
                assert census(c) == reference


def test_livingstone_wagner_profile():
    rng = random.Random(89)
    for _ in range(6):
        n = rng.randint(3, 7)
        part = orbit_partition(random_group(rng, n))
        level_counts = {}
        for i in range(len(part.blocks)):
            k = part.member_size(i)
            level_counts[k] = level_counts.get(k, 0) + 1
        for k in range(0, (n + 1) // 2):
            assert level_counts.get(k + 1, 0) >= level_counts.get(k, 0)


# -- file format ----------------------------------------------------------------

def test_partition_file_round_trip(example_partition):
    assert parse_partition_text(format_partition(example_partition)) == example_partition


def test_partition_file_example():
    p = parse_partition_text("n 2\n-\n1 ; 2\n1 2\n")
    assert len(p.blocks) == 3


def test_partition_file_errors():
    with pytest.raises(InputError, match="cover"):
        parse_partition_text("n 2\n-\n1\n1 2\n")
    with pytest.raises(InputError, match="line 3"):
        parse_partition_text("n 2\n-\n1 3\n")
    with pytest.raises(InputError, match="two blocks"):
        parse_partition_text("n 1\n-\n- ; 1\n")
    with pytest.raises(InputError, match="header"):
        parse_partition_text("- ; 1\n")
