import random

import pytest
from hypothesis import given, settings, strategies as st

from dyncover.setsystem import SetSystem, dump_instance, frequency_of, load_instance

from conftest import FIX1_TEXT, random_system


def test_fix1_transpose_by_hand(fix1):
    assert fix1.num_elements == 4
    assert fix1.num_sets == 3
    assert fix1.sets == ((0, 1, 2), (2, 3), (3,))
    assert fix1.incidence == ((0,), (0,), (0, 1), (1, 2))


def test_fix1_frequency(fix1):
    # e3 and e4 each lie in two sets
    assert frequency_of(fix1) == 2


def test_single_element_single_set_frequency():
    sys = load_instance("1 1\n1\n")
    assert frequency_of(sys) == 1


def test_element_in_all_sets_frequency():
    sys = load_instance("1 5\n1 2 3 4 5\n")
    assert frequency_of(sys) == 5


def test_zero_elements_rejected():
    with pytest.raises(ValueError, match="no elements"):
        load_instance("0 5\n")


def test_duplicate_vertex_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        load_instance("1 2\n1 1\n")


def test_empty_hyperedge_rejected():
    with pytest.raises(ValueError, match="no set"):
        load_instance("2 2\n\n1\n")
    # a trailing blank reads as a missing line, also rejected
    with pytest.raises(ValueError):
        load_instance("2 2\n1\n\n")


def test_vertex_out_of_range_rejected():
    with pytest.raises(ValueError, match="out of range"):
        load_instance("1 2\n3\n")


def test_malformed_header_rejected():
    with pytest.raises(ValueError, match="header"):
        load_instance("banana\n")
    with pytest.raises(ValueError, match="header"):
        load_instance("")


def test_missing_lines_rejected():
    with pytest.raises(ValueError, match="expected 3 hyperedge lines"):
        load_instance("3 2\n1\n2\n")


def test_comment_lines_ignored():
    sys = load_instance("% a comment\n4 3\n1\n1\n% another\n1 2\n2 3\n")
    assert sys.sets == ((0, 1, 2), (2, 3), (3,))


def test_load_is_deterministic():
    assert load_instance(FIX1_TEXT) == load_instance(FIX1_TEXT)


def test_dump_round_trip(fix1):
    assert load_instance(dump_instance(fix1)) == fix1


def test_from_sets_matches_file_parse(fix1):
    rebuilt = SetSystem.from_sets(4, [[0, 1, 2], [2, 3], [3]])
    assert rebuilt == fix1


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_transpose_round_trip_random(seed):
    sys = random_system(random.Random(seed))
    # rebuild incidence from the set-major view; must be bit-equal
    again = SetSystem.from_sets(sys.num_elements, [list(s) for s in sys.sets])
    assert again == sys
