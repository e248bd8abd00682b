"""Shared test helpers: the linear-scan envelope oracle and instance builders."""

from fractions import Fraction

import pytest

from makespan import Instance, Kind


def linear_scan_min(env, x):
    """Independent envelope oracle: evaluate every stored line at x and pick
    the canonical winner (least value, then least slope, then least owner)."""
    best = None
    for line in env.lines():
        key = (line.slope * x + line.intercept, line.slope, line.owner)
        if best is None or key < best:
            best = key
    assert best is not None, "oracle queried on an empty envelope"
    return best[2], best[0]


def usp(speeds, lengths):
    return Instance(
        kind=Kind.USP,
        speeds=tuple(speeds),
        batteries=(None,) * len(speeds),
        lengths=tuple(lengths),
    )


def dwp(machines, lengths):
    """machines: iterable of (speed, battery) pairs."""
    speeds, batteries = zip(*machines)
    return Instance(
        kind=Kind.DWP,
        speeds=tuple(speeds),
        batteries=tuple(batteries),
        lengths=tuple(lengths),
    )


def restricted(speeds, jobs):
    """jobs: iterable of (length, eligible-id-set) pairs."""
    lengths, eligibility = zip(*jobs)
    return Instance(
        kind=Kind.RESTRICTED,
        speeds=tuple(speeds),
        batteries=(None,) * len(speeds),
        lengths=tuple(lengths),
        eligibility=tuple(frozenset(e) for e in eligibility),
    )


@pytest.fixture
def graham_instance():
    one = Fraction(1)
    return usp([one, one], [Fraction(3), Fraction(3), Fraction(2), Fraction(2), Fraction(2)])
