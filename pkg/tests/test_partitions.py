import itertools

import pytest

from ospart import partitions as P

o = P.osp


def all_osp(n):
    return list(P.enumerate_partitions(n))


# ---------------------------------------------------------------------------
# construction, formats, basic ops
# ---------------------------------------------------------------------------

def test_construction_validation():
    with pytest.raises(ValueError):
        P.OrderedSetPartition(3, [[1, 2]])          # missing cover
    with pytest.raises(ValueError):
        P.OrderedSetPartition(2, [[1], [1, 2]])     # repeated element
    with pytest.raises(ValueError):
        P.OrderedSetPartition(2, [[1], [], [2]])    # empty block
    with pytest.raises(ValueError):
        P.OrderedSetPartition(0, [])                # n = 0 rejected
    with pytest.raises(ValueError):
        P.SetPartition(0, [])
    with pytest.raises(ValueError):
        P.OrderedSetPartition.from_word((1, 3))     # gap in block indices


def test_parse_and_format_roundtrip():
    for text in ("2,4|3,5|1", "1", "1,2,3", "3|2|1", "1,3|2"):
        pi = P.OrderedSetPartition.parse(text)
        assert str(pi) == text
        assert P.OrderedSetPartition.parse(str(pi)) == pi
    assert o("31212") == P.OrderedSetPartition.parse("2,4|3,5|1")
    assert o("121").word_str() == "121"
    for pi in all_osp(4):
        assert P.OrderedSetPartition.parse(str(pi)) == pi
        assert P.OrderedSetPartition.parse(pi.word_str()) == pi


def test_underlying_examples():
    assert str(o("21").underlying()) == "1|2"
    assert str(o("2,4|3,5|1").underlying()) == "1|2,4|3,5"
    top = P.OrderedSetPartition.one_block(4)
    assert top.underlying() == P.SetPartition(4, [[1, 2, 3, 4]])


def test_block_lookup_total():
    pi = o("31212")
    assert [pi.block_of(i) for i in range(1, 6)] == [3, 1, 2, 1, 2]
    with pytest.raises(ValueError):
        pi.block_of(6)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_counts_are_fubini(full_mode):
    expected = {1: 1, 2: 3, 3: 13, 4: 75, 5: 541, 6: 4683}
    top = 6 if full_mode else 5
    for n in range(1, top + 1):
        assert sum(1 for _ in P.enumerate_partitions(n)) == expected[n]
        assert P.fubini(n) == expected[n]


def test_enumerate_small_sets():
    two = {str(x) for x in P.enumerate_partitions(2)}
    assert two == {"1,2", "1|2", "2|1"}
    assert [str(x) for x in P.enumerate_partitions(1)] == ["1"]
    with pytest.raises(ValueError):
        next(P.enumerate_partitions(0))


def test_enumerate_no_duplicates():
    for n in (3, 4):
        seen = list(P.enumerate_partitions(n))
        assert len(seen) == len(set(seen))


def test_set_partition_classes():
    assert sum(1 for _ in P.enumerate_partitions(4, P.SP)) == 15
    assert sum(1 for _ in P.enumerate_partitions(4, P.NC)) == 14
    assert sum(1 for _ in P.enumerate_partitions(4, P.IP)) == 8


def test_pair_monotone_example():
    got = {str(x) for x in P.enumerate_partitions(4, P.PAIR_MONOTONE)}
    assert got == {"1,2|3,4", "3,4|1,2", "1,4|2,3"}
    assert sum(1 for _ in P.enumerate_partitions(4, P.PAIR)) == 6
    assert list(P.enumerate_partitions(3, P.PAIR)) == []


def test_filtered_class_consistency():
    for n in (3, 4):
        alls = all_osp(n)
        assert ([x for x in alls if x.is_noncrossing()]
                == list(P.enumerate_partitions(n, P.ONC)))
        assert ([x for x in alls if x.is_monotone()]
                == list(P.enumerate_partitions(n, P.MONOTONE)))
        assert ([x for x in alls if x.is_interval()]
                == list(P.enumerate_partitions(n, P.OI)))


def test_enumeration_is_streaming_and_resumable():
    stream = P.enumerate_partitions(5)
    first = [next(stream) for _ in range(10)]
    rest = list(stream)
    assert len(first) + len(rest) == 541
    assert first == all_osp(5)[:10]


# ---------------------------------------------------------------------------
# order and quasi-meet
# ---------------------------------------------------------------------------

def test_leq_examples():
    assert P.leq(o("123"), o("112"))
    assert P.leq(o("213"), o("112"))          # ({2},{1},{3}) <= ({1,2},{3})
    assert not P.leq(o("132"), o("112"))      # ({1},{3},{2}) not below
    assert P.leq(P.SetPartition(3, [[1], [2], [3]]),
                 P.SetPartition(3, [[1, 2], [3]]))
    with pytest.raises(ValueError):
        P.leq(o("12"), o("112"))


def test_quasi_meet_examples():
    # pi = ({1,2},{3}), sigma = ({3},{1,2}): underlying(pi) <= underlying(sigma)
    assert P.quasi_meet(o("112"), o("221")) == o("112")
    # pi = ({1,3},{2}), sigma = ({2,3},{1}) -> ({3},{1},{2})
    assert P.quasi_meet(o("121"), o("211")) == o("231")


def test_quasi_meet_laws(full_mode):
    n = 4 if full_mode else 3
    elems = all_osp(n)
    for pi in elems:
        assert P.quasi_meet(pi, pi) == pi
    for pi, sg in itertools.product(elems, repeat=2):
        qm = P.quasi_meet(pi, sg)
        assert P.leq(qm, pi)
        assert qm.underlying() == pi.underlying().meet(sg.underlying())
        assert (qm == pi) == pi.underlying().refines(sg.underlying())
        assert (qm == sg) == P.leq(sg, pi)
def test_quasi_meet_associativity(full_mode):
    # exhaustive over all of OP_3; all of OP_4 too in full mode
    n = 4 if full_mode else 3
    elems = all_osp(n)
    for pi, sg, rho in itertools.product(elems, repeat=3):
        assert (P.quasi_meet(P.quasi_meet(pi, sg), rho)
                == P.quasi_meet(pi, P.quasi_meet(sg, rho)))


# ---------------------------------------------------------------------------
# kernels and words
# ---------------------------------------------------------------------------

def test_kernel_examples():
    assert P.kernel((5, 2, 3, 2, 3)) == o("2,4|3,5|1")
    assert P.kernel((1, 1, 1)) == P.OrderedSetPartition.one_block(3)
    assert P.kernel((3, 2, 1)) == o("321")
    with pytest.raises(ValueError):
        P.kernel(())


def test_to_word_examples():
    assert o("1,3|2").to_word() == (1, 2, 1)
    assert o("2,4|3,5|1").to_word() == (3, 1, 2, 1, 2)
    assert P.OrderedSetPartition.one_block(4).to_word() == (1, 1, 1, 1)


def test_kernel_word_roundtrip():
    for n in range(1, 6):
        for pi in P.enumerate_partitions(n):
            assert P.kernel(pi.to_word()) == pi


def test_restrict_examples():
    sg = o("3|1,2")
    assert sg.restrict({1, 2}) == P.OrderedSetPartition(2, [[1, 2]])
    assert str(sg.restrict({1, 3})) == "2|1"   # ({3},{1}) relabeled on {1,3}
    for pi in all_osp(4):
        assert pi.restrict(range(1, 5)) == pi
    with pytest.raises(ValueError):
        sg.restrict(set())


def test_restrict_relabels_to_subset_order():
    # restriction lives on the subset, positions renumbered 1..|P|
    sg = o("3|1,2")  # blocks ({3},{1,2})
    r = sg.restrict({1, 3})
    assert r.n == 2 and r.blocks == ((2,), (1,))


# ---------------------------------------------------------------------------
# interval structure
# ---------------------------------------------------------------------------

def test_interval_type_examples():
    assert P.interval_type(P.OrderedSetPartition.singletons(3), o("112")) == (2, 1)
    for pi in all_osp(3):
        assert P.interval_type(pi, pi) == (1,) * len(pi)
    sg = P.OrderedSetPartition(5, [[1], [2], [4], [3, 5]])
    pi = P.OrderedSetPartition(5, [[1, 2, 4], [3, 5]])
    assert P.interval_type(sg, pi) == (3, 1)
    with pytest.raises(ValueError):
        P.interval_type(o("132"), o("112"))


def test_interval_elements_examples():
    two = list(P.interval_elements(P.OrderedSetPartition.singletons(2),
                                   P.OrderedSetPartition.one_block(2)))
    assert {str(x) for x in two} == {"1|2", "1,2"}
    only = list(P.interval_elements(o("121"), o("121")))
    assert only == [o("121")]


def test_interval_elements_cardinality_and_filter(full_mode):
    n = 5 if full_mode else 4
    elems = all_osp(n)
    for pi in elems:
        for sg in P.ideal_elements(pi):
            got = list(P.interval_elements(sg, pi))
            t = P.interval_type(sg, pi)
            expect_count = 1
            for k in t:
                expect_count *= 2 ** (k - 1)
            assert len(got) == expect_count
            brute = [rho for rho in elems if P.leq(sg, rho) and P.leq(rho, pi)]
            assert sorted(x.word for x in got) == sorted(x.word for x in brute)


def test_ideal_elements_matches_brute_force():
    for n in (3, 4):
        elems = all_osp(n)
        for pi in elems:
            got = sorted(x.word for x in P.ideal_elements(pi))
            brute = sorted(x.word for x in elems if P.leq(x, pi))
            assert got == brute


# ---------------------------------------------------------------------------
# classes, components, block permutation
# ---------------------------------------------------------------------------

def test_is_class_examples():
    assert P.is_class(o("1,4|2,3"), P.MONOTONE)
    assert not P.is_class(o("2,3|1,4"), P.MONOTONE)
    assert not P.is_class(o("1,3|2,4"), P.ONC)
    assert P.is_class(o("1,2|3"), P.OI)
    assert not P.is_class(o("1,3|2"), P.OI)
    with pytest.raises(ValueError):
        P.is_class(o("12"), "nope")


def test_outintmax_intmax_examples():
    assert P.outintmax({1, 2, 4}, 5) == ((1, 2), (4,))
    assert P.intmax({1, 5}, 5) == ((1, 5),)
    assert P.outintmax({1, 5}, 5) == ((1,), (5,))
    assert P.outintmax(range(1, 6), 5) == ((1, 2, 3, 4, 5),)
    assert P.intmax(range(1, 6), 5) == ((1, 2, 3, 4, 5),)
    with pytest.raises(ValueError):
        P.outintmax(set(), 4)


def test_permute_blocks():
    pi = o("1,3|2")
    assert pi.permute_blocks((1, 2)) == pi
    assert o("1|2").permute_blocks((2, 1)) == o("2|1")
    swap = (2, 1, 3)
    for pi in all_osp(3):
        if len(pi) == 3:
            assert pi.permute_blocks(swap).permute_blocks(swap) == pi
    with pytest.raises(ValueError):
        o("1|2").permute_blocks((1, 1))


def test_inner_blocks():
    assert P.inner_block_indices(o("1,4|2,3")) == {2}
    assert P.inner_block_indices(o("2,3|1,4")) == {1}
    assert P.inner_block_indices(o("1,2|3")) == set()


# ---------------------------------------------------------------------------
# shift invariance of quasi-meet with kernels
# ---------------------------------------------------------------------------

def test_quasimeet_kernel_shift_invariance(full_mode):
    n = 4 if full_mode else 3
    vmax = 4 if full_mode else 3
    for pi in all_osp(n):
        for idx in itertools.product(range(1, vmax + 1), repeat=n):
            base = P.quasi_meet(pi, P.kernel(idx))
            for blk in pi.blocks:
                for shift in (1, 2, 3):
                    moved = tuple(v + shift if (i + 1) in blk else v
                                  for i, v in enumerate(idx))
                    assert P.quasi_meet(pi, P.kernel(moved)) == base


# ---------------------------------------------------------------------------
# pseudopartitions
# ---------------------------------------------------------------------------

def test_pseudo_partitions():
    got = list(P.iter_pseudo_partitions(2, 2))
    assert len(got) == 4
    assert len(set(got)) == 4
    assert all(len(x) == 2 for x in got)
    for n, k in ((1, 3), (3, 2)):
        assert sum(1 for _ in P.iter_pseudo_partitions(n, k)) == k ** n
    opp = P.OrderedPseudoPartition(2, [[], [1, 2]])
    assert len(opp) == 2
    with pytest.raises(ValueError):
        P.OrderedPseudoPartition(2, [[1], [1, 2]])
