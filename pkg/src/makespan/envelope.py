"""Fully dynamic lower envelope of lines: insert, delete, point-minimum query.

Lines are y = slope*x + intercept, one per owner id. query_min(x) returns the
stored line minimizing its value at x under the canonical tie rule: least
value, then least slope, then least owner id.

Geometry is handled in the dual: a line maps to the point (slope, intercept)
and the envelope corresponds to the strict lower convex hull of the dominant
point per distinct slope. Updates repair the hull locally:

* lines sharing a slope live in a per-slope bucket; only the bucket minimum
  (least intercept, then least owner) can reach the hull, and deleting it
  promotes the next bucket line;
* every off-hull slope group holds a shadow certificate: two live group
  points whose segment ("chord") its point lies on or above, with a slack
  budget of half the vertical margin per endpoint. The group provably cannot
  reach the envelope until an endpoint's cumulative upward drift exceeds its
  budget or an endpoint vanishes, so certificates sit in per-endpoint lazy
  heaps keyed by drift thresholds and are only re-examined when due;
* deleting the last line of a slope defers the group's teardown for one
  operation, so the delete-then-reinsert-higher pattern of LPT scheduling
  collapses into a cheap "raise this point" update.

Queries cost O(log H) for hull size H. Updates cost O(log N) plus released
certificate work, which is amortized constant on the scheduling workloads in
this package; adversarial delete patterns can degrade updates, see the
complexity notes in the README.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from heapq import heappop, heappush
from typing import NamedTuple, Optional

from .errors import UsageError
from .numeric import Scalar, scalar_to_str

_NEG_INF = float("-inf")


class Line(NamedTuple):
    slope: Scalar
    intercept: Scalar
    owner: int


class _Group:
    """All stored lines sharing one slope, plus hull/certificate state."""

    __slots__ = ("slope", "alive", "heap", "dom_icept", "dom_owner",
                 "on_hull", "cert", "cert_version", "parked_heap", "rise")

    def __init__(self, slope):
        self.slope = slope
        self.alive = {}            # owner -> intercept
        self.heap = []             # lazy min-heap of (intercept, owner)
        self.dom_icept = None
        self.dom_owner = None
        self.on_hull = False
        self.cert = None           # (groupA, groupB) shadow chord
        self.cert_version = 0      # bumps on park/unpark; stales heap entries
        self.parked_heap = []      # (drift threshold, seq, group, version)
        self.rise = None           # cumulative upward drift of the dominant

    @property
    def dead(self) -> bool:
        return not self.alive

    def refresh_dominant(self) -> None:
        while self.heap:
            icept, owner = self.heap[0]
            if self.alive.get(owner) == icept:
                self.dom_icept, self.dom_owner = icept, owner
                return
            heappop(self.heap)
        self.dom_icept = self.dom_owner = None


class LowerEnvelope:
    """Dynamic lower envelope with owner-keyed insert/delete and min queries."""

    def __init__(self):
        self._gslopes = []       # ascending distinct slopes (dead groups stay)
        self._groups = []        # parallel to _gslopes
        self._owner_slope = {}   # owner -> slope, for delete lookup
        self._size = 0
        self._seq = 0            # heap tie-breaker
        self._pending = None     # (group, old_icept) deferred teardown
        # Hull pieces in ascending-x order (descending slope). Piece i covers
        # [_hx[i], _hx[i+1]); _hx[0] is -inf.
        self._hx = []
        self._hp = []            # (slope, intercept, owner, group)
        self.counters = {
            "inserts": 0, "deletes": 0, "queries": 0,
            "comparisons": 0, "hull_pops": 0, "releases": 0,
        }

    # -- public API ---------------------------------------------------------

    def __len__(self) -> int:
        return self._size

    def lines(self):
        """All stored lines, in no particular order."""
        out = []
        for g in self._groups:
            for owner, icept in g.alive.items():
                out.append(Line(g.slope, icept, owner))
        return out

    def insert(self, line: Line) -> None:
        """Add a line; its owner id must not be present yet."""
        slope, icept, owner = line
        if owner in self._owner_slope:
            raise UsageError(f"owner {owner} already has a stored line")
        self.counters["inserts"] += 1
        self._owner_slope[owner] = slope
        self._size += 1

        if self._pending is not None:
            g, old_icept = self._pending
            if g.slope == slope and icept >= old_icept:
                # The LPT fast path: the just-vacated slope returns with a
                # higher intercept, so this is a plain upward move.
                self._pending = None
                g.alive[owner] = icept
                heappush(g.heap, (icept, owner))
                g.dom_icept, g.dom_owner = icept, owner
                self._raise_dominant(g, old_icept)
                return
            self._flush_pending()

        g = self._find_group(slope)
        if g is None:
            g = _Group(slope)
            g.rise = icept - icept  # zero of the instance's numeric mode
            idx = bisect_left(self._gslopes, slope)
            self._gslopes.insert(idx, slope)
            self._groups.insert(idx, g)
        g.alive[owner] = icept
        heappush(g.heap, (icept, owner))

        if g.dom_icept is None:
            g.dom_icept, g.dom_owner = icept, owner
            self._place(g)
        elif (icept, owner) < (g.dom_icept, g.dom_owner):
            # An equal-intercept, smaller-owner takeover moves no dual point;
            # a strictly lower one invalidates the group's own certificate.
            lowered = icept < g.dom_icept
            g.dom_icept, g.dom_owner = icept, owner
            if g.on_hull:
                self._update_hull_vertex(g, lowered)
            elif lowered:
                self._unpark(g)
                self._place(g)

    def delete(self, owner: int) -> None:
        """Remove the line with this owner id."""
        slope = self._owner_slope.pop(owner, None)
        if slope is None:
            raise UsageError(f"no stored line with owner {owner}")
        self.counters["deletes"] += 1
        self._size -= 1
        self._flush_pending()
        g = self._find_group(slope)
        del g.alive[owner]

        if owner != g.dom_owner:
            return  # shadowed bucket line; the envelope is untouched
        old_icept = g.dom_icept
        g.refresh_dominant()

        if g.dom_icept is None:
            # Defer teardown one operation; a same-slope reinsert becomes a
            # cheap raise instead of a certificate storm.
            g.dom_icept, g.dom_owner = old_icept, None
            self._pending = (g, old_icept)
        elif g.dom_icept == old_icept:
            if g.on_hull:  # equal-intercept twin: the dual point is unchanged
                k = self._piece_index(g.slope)
                s, c, _, _ = self._hp[k]
                self._hp[k] = (s, c, g.dom_owner, g)
        else:
            self._raise_dominant(g, old_icept)

    def query_min(self, x: Scalar):
        """Return (owner, value) of the minimal line at x >= 0, canonical ties."""
        if self._size == 0:
            raise UsageError("query on an empty envelope")
        if x < 0:
            raise UsageError(f"query point must be >= 0, got {scalar_to_str(x)}")
        self.counters["queries"] += 1
        self._flush_pending()
        i = bisect_right(self._hx, x) - 1
        self.counters["comparisons"] += max(1, len(self._hx).bit_length())
        s, c, owner, _ = self._hp[i]
        return owner, s * x + c

    def breakpoints(self):
        """Envelope pieces as (start_x, owner); the first start is None (-inf)."""
        self._flush_pending()
        return [(None if i == 0 else self._hx[i], p[2])
                for i, p in enumerate(self._hp)]

    def breakpoints_json(self) -> str:
        """The piece list as JSON, breakpoints rendered losslessly as strings."""
        entries = [
            {"start": None if x is None else scalar_to_str(x), "owner": owner}
            for x, owner in self.breakpoints()
        ]
        return json.dumps(entries)

    # -- certificate bookkeeping ---------------------------------------------

    def _chord_margin(self, a: _Group, g: _Group, b: _Group):
        """Vertical gap between g's point and segment a--b (a.slope < b.slope)."""
        span = b.slope - a.slope
        chord = a.dom_icept + (b.dom_icept - a.dom_icept) * (g.slope - a.slope) / span
        return g.dom_icept - chord

    def _park(self, g: _Group, a: _Group, b: _Group, margin) -> None:
        """Certify g as shadowed by chord a--b; each endpoint gets half the
        margin as drift budget before the certificate must be re-checked."""
        g.cert_version += 1
        g.cert = (a, b)
        half = margin / 2
        self._seq += 1
        heappush(a.parked_heap, (a.rise + half, self._seq, g, g.cert_version))
        self._seq += 1
        heappush(b.parked_heap, (b.rise + half, self._seq, g, g.cert_version))

    def _unpark(self, g: _Group) -> None:
        g.cert_version += 1  # stales both heap entries lazily
        g.cert = None

    def _pop_due(self, g: _Group, due_only: bool) -> list:
        """Pop overdue (or all) certificates parked on g; returns live ones."""
        released = []
        heap = g.parked_heap
        while heap:
            threshold, _, p, version = heap[0]
            if due_only and threshold >= g.rise:
                break
            heappop(heap)
            if p.cert_version == version and p.cert is not None:
                self._unpark(p)
                released.append(p)
        self.counters["releases"] += len(released)
        return released

    def _replace_all(self, released: list) -> None:
        """Re-test a batch of released groups.

        The batch first certifies its own interior: a monotone chain over the
        batch points parks every non-extreme member under two fellow batch
        members. Those chords reference rarely-rising ordinary groups, so a
        pocket of shadows released by a hot hull vertex does not immediately
        re-certify against that same vertex; only the batch's own lower-hull
        members fall through to a full placement.
        """
        pending = [p for p in released
                   if not p.dead and not p.on_hull and p.cert is None]
        if len(pending) > 2:
            pending.sort(key=lambda g: g.slope)
            chain = []
            for g in pending:
                while len(chain) >= 2:
                    mid = chain[-1]
                    margin = self._chord_margin(chain[-2], mid, g)
                    self.counters["comparisons"] += 1
                    if margin >= 0:
                        chain.pop()
                        self._park(mid, chain[-1], g, margin)
                    else:
                        break
                chain.append(g)
            pending = chain
        for p in pending:
            if not p.dead and not p.on_hull and p.cert is None:
                self._place(p)

    def _raise_dominant(self, g: _Group, old_icept) -> None:
        """g's dominant moved up by (dom_icept - old_icept): charge the drift,
        release overdue certificates, and repair g's own hull piece."""
        g.rise = g.rise + (g.dom_icept - old_icept)
        released = self._pop_due(g, due_only=True)
        if g.on_hull:
            k = self._piece_index(g.slope)
            self._hp[k] = (g.slope, g.dom_icept, g.dom_owner, g)
            hp = self._hp
            if 0 < k < len(hp) - 1 and self._covered(hp[k - 1], hp[k], hp[k + 1]):
                self._evict(k, hp[k - 1][3], hp[k + 1][3])
                self._hx[k] = self._bp(hp[k - 1], hp[k])
            else:
                self._refresh_seams(k)
        # else: parked; its own certificate only gains margin as it rises
        self._replace_all(released)

    def _flush_pending(self) -> None:
        """Finish a deferred group teardown: drop its hull piece and release
        every certificate that referenced it."""
        if self._pending is None:
            return
        g, _ = self._pending
        self._pending = None
        g.dom_icept = g.dom_owner = None
        released = self._pop_due(g, due_only=False)
        if g.on_hull:
            self._remove_hull_vertex(g)
        self._unpark(g)
        self._replace_all(released)

    # -- hull geometry ---------------------------------------------------------

    def _find_group(self, slope) -> Optional[_Group]:
        idx = bisect_left(self._gslopes, slope)
        self.counters["comparisons"] += max(1, len(self._gslopes).bit_length())
        if idx < len(self._gslopes) and self._gslopes[idx] == slope:
            return self._groups[idx]
        return None

    def _piece_index(self, slope) -> int:
        """First hull index whose slope is <= the given slope (_hp descends)."""
        hp = self._hp
        lo, hi = 0, len(hp)
        while lo < hi:
            mid = (lo + hi) // 2
            self.counters["comparisons"] += 1
            if hp[mid][0] > slope:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _bp(self, a, b):
        """Breakpoint x where piece a (larger slope) hands over to piece b."""
        return (a[1] - b[1]) / (b[0] - a[0])

    def _covered(self, a, b, c):
        """True if b never strictly wins between a and c (slopes a > b > c)."""
        self.counters["comparisons"] += 1
        return (b[1] - a[1]) * (b[0] - c[0]) >= (c[1] - b[1]) * (a[0] - b[0])

    def _park_tight(self, g: _Group, fb_a: _Group, fb_b: _Group) -> None:
        """Prefer the slope-adjacent live groups as g's certificate (keeps
        release cascades local); fall back to the proven pair fb_a, fb_b."""
        gi = bisect_left(self._gslopes, g.slope)
        left = self._groups[gi - 1] if gi > 0 else None
        right = self._groups[gi + 1] if gi + 1 < len(self._groups) else None
        if left is not None and right is not None and left.alive and right.alive:
            margin = self._chord_margin(left, g, right)
            self.counters["comparisons"] += 1
            if margin >= 0:
                self._park(g, left, right, margin)
                return
        lo, hi = (fb_a, fb_b) if fb_a.slope < fb_b.slope else (fb_b, fb_a)
        self._park(g, lo, hi, self._chord_margin(lo, g, hi))

    def _place(self, g: _Group) -> None:
        """Insert g's dominant point into the hull, or park it with a certificate."""
        hx, hp = self._hx, self._hp
        piece = (g.slope, g.dom_icept, g.dom_owner, g)
        if not hp:
            hx.append(_NEG_INF)
            hp.append(piece)
            g.on_hull = True
            return
        self.counters["comparisons"] += 2
        if g.slope > hp[0][0]:           # steepest line: wins as x -> -inf
            k = 0
        elif g.slope < hp[-1][0]:        # shallowest line: wins as x -> +inf
            k = len(hp)
        else:
            k = self._piece_index(g.slope)   # hp[k-1] > g.slope > hp[k]
            if self._covered(hp[k - 1], piece, hp[k]):
                self._park_tight(g, hp[k - 1][3], hp[k][3])
                return
        hx.insert(k, None)  # placeholder; seams fixed by _pop_around
        hp.insert(k, piece)
        g.on_hull = True
        self._pop_around(k)

    def _pop_around(self, k: int) -> None:
        """Graham-style pops on both sides of the new/lowered piece k, then
        refresh the seam breakpoints around it."""
        hp = self._hp
        piece = hp[k]
        while k + 2 < len(hp) and self._covered(piece, hp[k + 1], hp[k + 2]):
            self._evict(k + 1, piece[3], hp[k + 2][3])
        while k >= 2 and self._covered(hp[k - 2], hp[k - 1], piece):
            self._evict(k - 1, hp[k - 2][3], piece[3])
            k -= 1
        self._refresh_seams(k)

    def _refresh_seams(self, k: int) -> None:
        hx, hp = self._hx, self._hp
        hx[k] = _NEG_INF if k == 0 else self._bp(hp[k - 1], hp[k])
        if k + 1 < len(hp):
            hx[k + 1] = self._bp(hp[k], hp[k + 1])

    def _evict(self, k: int, chord_a: _Group, chord_b: _Group) -> None:
        """Pop hull piece k, now shadowed by the chord_a--chord_b segment."""
        g = self._hp[k][3]
        g.on_hull = False
        del self._hp[k]
        del self._hx[k]
        self.counters["hull_pops"] += 1
        self._park_tight(g, chord_a, chord_b)

    def _remove_hull_vertex(self, g: _Group) -> None:
        k = self._piece_index(g.slope)
        g.on_hull = False
        del self._hp[k]
        del self._hx[k]
        if k == 0:
            if self._hx:
                self._hx[0] = _NEG_INF
        elif k < len(self._hp):
            self._hx[k] = self._bp(self._hp[k - 1], self._hp[k])

    def _update_hull_vertex(self, g: _Group, lowered: bool) -> None:
        """g is on the hull and its dominant moved to a lower (icept, owner)."""
        k = self._piece_index(g.slope)
        s = self._hp[k][0]
        self._hp[k] = (s, g.dom_icept, g.dom_owner, g)
        if lowered:
            self._pop_around(k)

    # -- debug ---------------------------------------------------------------

    def check_invariants(self) -> None:
        """Recompute the strict hull from scratch and compare; verify every
        live off-hull group still sits on or above its certificate chord.
        Test hook, not part of the hot path."""
        self._flush_pending()
        pts = [(g.slope, g.dom_icept, g.dom_owner, g)
               for g in self._groups if not g.dead]
        pts.sort(key=lambda p: p[0], reverse=True)
        chain = []
        for p in pts:
            while len(chain) >= 2 and self._covered(chain[-2], chain[-1], p):
                chain.pop()
            chain.append(p)
        expect = [(p[0], p[1], p[2]) for p in chain]
        got = [(p[0], p[1], p[2]) for p in self._hp]
        assert got == expect, f"hull mismatch:\n got {got}\n want {expect}"
        if self._hp:
            assert self._hx[0] == _NEG_INF
        for i in range(1, len(self._hp)):
            assert self._hx[i] == self._bp(self._hp[i - 1], self._hp[i])
        for g in self._groups:
            if g.dead:
                assert not g.on_hull and g.cert is None
            elif not g.on_hull:
                a, b = g.cert
                assert a.alive and b.alive
                lo, hi = (a, b) if a.slope < b.slope else (b, a)
                assert lo.slope < g.slope < hi.slope
                assert self._chord_margin(lo, g, hi) >= 0
