import random

import pytest

from conftest import random_group
from goa import GroundSet
from goa.errors import InputError
from goa.partition import Partition, coeff_matrix
from goa.perms import close_generators, orbit_partition, parse_permutation
from goa.recon import (acts_freely, deck, e_block_entry,
                       exact_intersection_counts, intersection_difference_rule,
                       intersection_sum_rule, kelly_check, lovasz_check,
                       lovasz_tight_instance, maynard_siemons_index, muller_check,
                       reconstruction_pairs)
from goa.subsets import mask_of, popcount


def brute_deck(p, i):
    """Independent deck: count subsets of a representative directly."""
    a = p.blocks[i][0]
    k = popcount(a)
    rows = {}
    for j, block in enumerate(p.blocks):
        if popcount(block[0]) < k and p.member_size(j) is not None:
            rows[j] = sum(1 for b in block if b & a == b)
    return rows


def test_deck_example(example_partition):
    m = coeff_matrix(example_partition)
    d = deck(example_partition, 4, m)     # block {1,3},{2,3}
    assert d.smaller_blocks == (0, 1, 2)
    assert d.entries == (1, 1, 1)
    assert deck(example_partition, 0, m).entries == ()
    top = deck(example_partition, 5, m)
    assert top.smaller_blocks == (0, 1, 2, 3, 4)


def test_deck_matches_brute_force():
    rng = random.Random(2)
    for _ in range(6):
        part = orbit_partition(random_group(rng, rng.randint(3, 6)))
        m = coeff_matrix(part)
        for i in range(m.s):
            d = deck(part, i, m)
            brute = brute_deck(part, i)
            assert dict(zip(d.smaller_blocks, d.entries)) == brute


def test_example_pairs_only_at_singletons(example_partition):
    m = coeff_matrix(example_partition)
    # the two singleton-level blocks share the forced trivial deck [1]
    assert [(q.a, q.b) for q in reconstruction_pairs(example_partition, 1, m)] == [(1, 2)]
    for k in (0, 2, 3):
        assert reconstruction_pairs(example_partition, k, m) == []


def test_tight_instance_r2():
    group, a, b = lovasz_tight_instance(2)
    assert group.order == 2
    part = orbit_partition(group)
    m = coeff_matrix(part)
    pairs = reconstruction_pairs(part, 2, m)
    blocks = {frozenset((q.a, q.b)) for q in pairs}
    assert frozenset((part.block_of[a], part.block_of[b])) in blocks
    assert set(part.blocks[part.block_of[a]]) == {mask_of([1, 4]), mask_of([2, 3])}
    assert set(part.blocks[part.block_of[b]]) == {mask_of([1, 3]), mask_of([2, 4])}


@pytest.mark.parametrize("r,pad", [(2, 0), (2, 1), (3, 0), (3, 1), (4, 0)])
def test_tight_instance_guarantees(r, pad):
    group, a, b = lovasz_tight_instance(r, pad)
    assert group.order == 2 ** (r - 1)
    assert popcount(a) == popcount(b) == r
    part = orbit_partition(group)
    assert part.block_of[a] != part.block_of[b]


def test_tight_instance_rejects_small_r():
    with pytest.raises(InputError):
        lovasz_tight_instance(1)


def test_kelly_check_examples(example_partition):
    m = coeff_matrix(example_partition)
    assert kelly_check(example_partition, 3, 1, m)   # 2*1 = 1+1 on A={1,2}
    for i in range(m.s):
        for j in range(m.s):
            if m.member_sizes[j] < m.member_sizes[i]:
                assert kelly_check(example_partition, i, j, m)


def test_kelly_check_exhaustive_random():
    rng = random.Random(6)
    for _ in range(6):
        part = orbit_partition(random_group(rng, rng.randint(3, 6)))
        m = coeff_matrix(part)
        for i in range(m.s):
            for j in range(m.s):
                if m.member_sizes[j] < m.member_sizes[i]:
                    kelly_check(part, i, j, m)


def test_lovasz_on_random_groups():
    rng = random.Random(10)
    for _ in range(12):
        part = orbit_partition(random_group(rng, rng.randint(4, 7)))
        lovasz_check(part)    # raises on any pair above n/2


def test_lovasz_mechanism_on_tight_pair():
    group, a, b = lovasz_tight_instance(3)
    part = orbit_partition(group)
    m = coeff_matrix(part)
    mech = lovasz_check(part, m)
    assert ((part.block_of[a], part.block_of[b], 3, -1) in mech
            or (part.block_of[b], part.block_of[a], 3, -1) in mech)


def test_tight_pair_padded_persists():
    group, a, b = lovasz_tight_instance(3, pad=1)
    part = orbit_partition(group)
    m = coeff_matrix(part)
    pairs = reconstruction_pairs(part, 3, m)
    assert any({q.a, q.b} == {part.block_of[a], part.block_of[b]} for q in pairs)


def test_muller_equality_on_tight_r3():
    group, a, b = lovasz_tight_instance(3)
    part = orbit_partition(group)
    m = coeff_matrix(part)
    pair = next(q for q in reconstruction_pairs(part, 3, m)
                if {q.a, q.b} == {part.block_of[a], part.block_of[b]})
    rows = muller_check(part, pair, m)
    empty_block = part.block_of[0]
    row = next(r for r in rows if r[0] == empty_block)
    assert row[1] == 4 == row[2]     # 2^(3-1) = orbit size, equality
    # orbit of A is the four stated sets
    assert set(part.blocks[part.block_of[a]]) == {
        mask_of([1, 4, 6]), mask_of([2, 3, 6]), mask_of([2, 4, 5]), mask_of([1, 3, 5])}


def test_muller_proof_scope_is_necessary():
    # blocks whose members never occur inside A fall outside the proof
    # scope, and there the unrestricted bound genuinely fails (1 > 0);
    # muller_check must flag them rather than assert them
    group, a, b = lovasz_tight_instance(3)
    part = orbit_partition(group)
    m = coeff_matrix(part)
    pair = next(q for q in reconstruction_pairs(part, 3, m)
                if {q.a, q.b} == {part.block_of[a], part.block_of[b]})
    rows = muller_check(part, pair, m)
    assert any(not scope and bound > up for _, bound, up, scope in rows)
    assert all(bound <= up for _, bound, up, scope in rows if scope)


def test_muller_holds_on_all_found_pairs():
    rng = random.Random(14)
    for _ in range(8):
        part = orbit_partition(random_group(rng, rng.randint(4, 6)))
        m = coeff_matrix(part)
        for k in sorted(set(m.member_sizes)):
            for pair in reconstruction_pairs(part, k, m):
                muller_check(part, pair, m)


def test_e_block_entries_match_brute_force():
    rng = random.Random(20)
    for _ in range(4):
        part = orbit_partition(random_group(rng, rng.randint(3, 5)))
        m = coeff_matrix(part)
        for i in range(m.s):
            for j in range(m.s):
                for r in range(min(m.member_sizes[i], m.member_sizes[j]) + 1):
                    e_block_entry(part, i, j, r, m)   # self-checking


def test_intersection_census_trivial_partition():
    g = GroundSet(2)
    p = Partition.from_blocks(g, [[m] for m in g.masks()])
    m = coeff_matrix(p)
    a = mask_of([1])
    b_block = p.block_of[mask_of([1])]
    assert exact_intersection_counts(p, a, b_block, p.block_of[0], m) == 0
    assert exact_intersection_counts(p, a, b_block, b_block, m) == 1


def test_intersection_rules_on_tight_instance():
    group, a, b = lovasz_tight_instance(3)
    part = orbit_partition(group)
    m = coeff_matrix(part)
    pair = next(q for q in reconstruction_pairs(part, 3, m)
                if {q.a, q.b} == {part.block_of[a], part.block_of[b]})
    for t in range(m.s):
        intersection_sum_rule(part, a, pair.a, t, m)
        if m.member_sizes[t] <= 3:
            intersection_difference_rule(part, pair, t, m)
    empty = part.block_of[0]
    # difference at the empty pattern block is (-1)^3 * 1
    lhs = (exact_intersection_counts(part, a, pair.a, empty, m)
           - exact_intersection_counts(part, b, pair.a, empty, m))
    assert lhs == -1


def test_free_index_cycles():
    for p in (5, 7):
        g = GroundSet(p)
        cycle = tuple(list(range(2, p + 1)) + [1])
        group = close_generators(g, [cycle])
        assert acts_freely(group)
        assert maynard_siemons_index(group) <= 5


def test_free_index_trivial_group():
    group = close_generators(GroundSet(3), [])
    # singletons of a trivial group are mutual reconstructions, so the
    # index is 2: every set of size >= 2 is reconstructible
    assert maynard_siemons_index(group) == 2


def test_free_index_rejects_nonfree():
    g = GroundSet(3)
    group = close_generators(g, [parse_permutation("(1,2)", g)])
    with pytest.raises(InputError):
        maynard_siemons_index(group)
