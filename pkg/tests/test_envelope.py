import json
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from makespan import Line, LowerEnvelope, UsageError

from conftest import linear_scan_min


def four_line_envelope():
    env = LowerEnvelope()
    env.insert(Line(F(-1), F(4), 1))  # L1: y = -x + 4
    env.insert(Line(F(1), F(0), 2))   # L2: y = x
    env.insert(Line(F(2), F(0), 3))   # L3: y = 2x
    env.insert(Line(F(0), F(1), 4))   # L4: y = 1
    return env


def test_four_line_pieces():
    env = four_line_envelope()
    # pieces: L3 for x <= 0, L2 on [0, 1], L4 on [1, 3], L1 for x >= 3
    assert env.breakpoints() == [(None, 3), (F(0), 2), (F(1), 4), (F(3), 1)]


def test_four_line_breakpoint_dump_json():
    got = json.loads(four_line_envelope().breakpoints_json())
    assert got == [
        {"start": None, "owner": 3},
        {"start": "0", "owner": 2},
        {"start": "1", "owner": 4},
        {"start": "3", "owner": 1},
    ]


def test_four_line_queries():
    env = four_line_envelope()
    assert env.query_min(F(1, 2)) == (2, F(1, 2))
    assert env.query_min(F(2)) == (4, F(1))
    assert env.query_min(F(4)) == (1, F(0))


def test_four_line_delete_constant():
    env = four_line_envelope()
    env.delete(4)
    # At x = 2 the values of L1 (-x+4) and L2 (x) tie at 2; the canonical rule
    # picks the least slope, so L1 wins the breakpoint.
    owner, value = env.query_min(F(2))
    assert value == F(2)
    assert owner == 1
    assert env.query_min(F(2) - F(1, 1000)) == (2, F(1999, 1000))
    assert env.breakpoints() == [(None, 3), (F(0), 2), (F(2), 1)]


def test_single_line_queries():
    env = LowerEnvelope()
    env.insert(Line(F(3), F(1), 9))
    assert env.query_min(F(2)) == (9, F(7))
    assert env.query_min(F(0)) == (9, F(1))


def test_insert_then_query_at_zero():
    env = LowerEnvelope()
    env.insert(Line(F(-1), F(4), 1))
    assert env.query_min(F(0)) == (1, F(4))


def test_insert_delete_leaves_empty():
    env = LowerEnvelope()
    env.insert(Line(F(1), F(0), 0))
    env.delete(0)
    assert len(env) == 0
    with pytest.raises(UsageError):
        env.query_min(F(1))


def test_duplicate_owner_rejected():
    env = LowerEnvelope()
    env.insert(Line(F(1), F(0), 0))
    with pytest.raises(UsageError):
        env.insert(Line(F(2), F(0), 0))


def test_delete_unknown_owner_rejected():
    env = LowerEnvelope()
    with pytest.raises(UsageError):
        env.delete(42)


def test_negative_query_rejected():
    env = LowerEnvelope()
    env.insert(Line(F(1), F(0), 0))
    with pytest.raises(UsageError):
        env.query_min(F(-1))


def test_identical_lines_tie_on_owner():
    env = LowerEnvelope()
    env.insert(Line(F(1), F(2), 7))
    env.insert(Line(F(1), F(2), 3))
    assert env.query_min(F(5)) == (3, F(7))
    assert env.query_min(F(5)) == linear_scan_min(env, F(5))


def test_parallel_shadowed_line_restored_on_delete():
    env = LowerEnvelope()
    env.insert(Line(F(1), F(0), 0))   # dominant
    env.insert(Line(F(1), F(5), 1))   # shadowed twin slope
    assert env.query_min(F(2)) == (0, F(2))
    env.delete(0)
    assert env.query_min(F(2)) == (1, F(7))
    env.check_invariants()


def test_delete_then_reinsert_restores_prior_state():
    env = four_line_envelope()
    before = env.breakpoints()
    env.insert(Line(F(1, 2), F(1, 4), 9))
    env.delete(9)
    assert env.breakpoints() == before


def test_random_ops_match_linear_scan_oracle():
    rng = random.Random(2024)
    for trial in range(12):
        env = LowerEnvelope()
        live = []
        nxt = 0
        for step in range(300):
            roll = rng.random()
            if roll < 0.45 or not live:
                line = Line(F(rng.randint(-40, 40), rng.randint(1, 8)),
                            F(rng.randint(-80, 80), rng.randint(1, 8)), nxt)
                env.insert(line)
                live.append(nxt)
                nxt += 1
            elif roll < 0.7:
                victim = live.pop(rng.randrange(len(live)))
                env.delete(victim)
            else:
                x = F(rng.randint(0, 300), rng.randint(1, 4))
                assert env.query_min(x) == linear_scan_min(env, x)
            if step % 50 == 0:
                env.check_invariants()
        env.check_invariants()


def test_degenerate_ties_match_oracle():
    rng = random.Random(77)
    env = LowerEnvelope()
    live = []
    nxt = 0
    for step in range(600):
        roll = rng.random()
        if roll < 0.5 or not live:
            env.insert(Line(F(rng.randint(1, 3)), F(rng.randint(0, 2)), nxt))
            live.append(nxt)
            nxt += 1
        elif roll < 0.75:
            victim = live.pop(rng.randrange(len(live)))
            env.delete(victim)
        else:
            x = F(rng.randint(0, 9), rng.randint(1, 3))
            assert env.query_min(x) == linear_scan_min(env, x)
    env.check_invariants()


def test_envelope_values_concave():
    # the lower envelope is concave: value at a midpoint is at least the
    # average of the endpoint values
    rng = random.Random(5)
    env = LowerEnvelope()
    for owner in range(60):
        env.insert(Line(F(rng.randint(1, 50), 7), F(rng.randint(0, 99), 3), owner))
    for _ in range(200):
        x1 = F(rng.randint(0, 400), rng.randint(1, 5))
        x2 = F(rng.randint(0, 400), rng.randint(1, 5))
        mid = (x1 + x2) / 2
        v1 = env.query_min(x1)[1]
        v2 = env.query_min(x2)[1]
        vm = env.query_min(mid)[1]
        assert vm >= (v1 + v2) / 2


def test_insert_only_comparisons_near_linear():
    # comparison growth for N inserts stays under c * N * log^2 N, with c
    # fitted once at the smallest size (plus headroom)
    counts = {}
    for exp in (3, 4, 5):
        n = 10 ** exp
        rng = random.Random(exp)
        env = LowerEnvelope()
        for owner in range(n):
            env.insert(Line(rng.random() * 100.0 + 0.01,
                            rng.random() * 100.0, owner))
        counts[n] = env.counters["comparisons"]
    c = 1.3 * counts[1000] / (1000 * math.log2(1000) ** 2)
    for n, got in counts.items():
        assert got <= c * n * math.log2(n) ** 2, (n, got, c)


def test_lpt_pattern_stays_exact():
    # the scheduler's query/delete/reinsert loop, checked against the oracle
    env = LowerEnvelope()
    m = 60
    for j in range(m):
        env.insert(Line(F(j + 1, 20), F(0), j))
    for i in range(240):
        x = F(240 - i, 3)
        got = env.query_min(x)
        assert got == linear_scan_min(env, x)
        owner, value = got
        env.delete(owner)
        env.insert(Line(F(owner + 1, 20), value, owner))
    env.check_invariants()


_coeff = st.fractions(min_value=F(-30), max_value=F(30), max_denominator=6)
_ops = st.lists(
    st.one_of(
        st.tuples(st.just("insert"), _coeff, _coeff),
        st.tuples(st.just("delete"), st.integers(0, 30)),
        st.tuples(st.just("query"), st.fractions(min_value=F(0), max_value=F(50),
                                                 max_denominator=4)),
    ),
    max_size=60,
)


@settings(max_examples=150, deadline=None)
@given(ops=_ops)
def test_hypothesis_ops_match_oracle(ops):
    env = LowerEnvelope()
    live = []
    nxt = 0
    for op in ops:
        if op[0] == "insert":
            env.insert(Line(op[1], op[2], nxt))
            live.append(nxt)
            nxt += 1
        elif op[0] == "delete":
            if live:
                env.delete(live.pop(op[1] % len(live)))
        elif live:
            assert env.query_min(op[1]) == linear_scan_min(env, op[1])
    env.check_invariants()


def test_counters_track_api_calls():
    env = four_line_envelope()
    env.query_min(F(1))
    env.delete(4)
    assert env.counters["inserts"] == 4
    assert env.counters["deletes"] == 1
    assert env.counters["queries"] == 1
    assert env.counters["comparisons"] > 0
