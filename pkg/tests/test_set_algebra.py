#
# This file is part of ipalg.
#
# Copyright (C) 2025-2026 ipalg contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 3.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see https://www.gnu.org/licenses/.
#

import pytest

from itertools import combinations, product
from hypothesis import given, settings, strategies as st

from ipalg.common.exceptions import SpaceMismatchException
from ipalg.gamble_cone import ConeKind, combine, contains, equals, extract
from ipalg.set_algebra import EventSet, cylindrify, embed, event_union_meet
from ipalg.space import Gamble, Space
from tests.strategies import gambles

XY = Space.binary("X", "Y")
AB = Space.from_dict({"X": ["a", "b"]})


def _all_events(space: Space):
    size = space.cell_count(space.full_scope)
    return [EventSet(space, mask) for mask in range(1 << size)]


class TestEventSet:
    def test_cells_and_indices(self):
        event = EventSet.from_cells(XY, [(0, 1), (1, 1)])
        assert event.indices() == [1, 3]
        assert event.cells() == [(0, 1), (1, 1)]
        assert 3 in event and 0 not in event
        assert len(event) == 2

    def test_complement(self):
        event = EventSet.from_indices(XY, [0])
        assert event.complement().indices() == [1, 2, 3]
        assert event.complement().complement() == event

    def test_mask_out_of_range(self):
        with pytest.raises(ValueError):
            EventSet(AB, 0b100)

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatchException):
            EventSet.full(XY).intersection(EventSet.full(AB))


class TestCylindrify:
    def test_example(self):
        event = EventSet.from_cells(XY, [(0, 1)])
        assert cylindrify(event, frozenset({"X"})).cells() == [(0, 0), (0, 1)]

    def test_empty_event(self):
        for scope in (frozenset(), frozenset({"X"}), XY.full_scope):
            assert cylindrify(EventSet.empty(XY), scope).is_empty()

    def test_empty_scope_saturates(self):
        assert cylindrify(EventSet.from_indices(XY, [2]), frozenset()).is_full()

    def test_full_scope_identity(self):
        event = EventSet.from_indices(XY, [1, 2])
        assert cylindrify(event, XY.full_scope) == event


class TestEmbedding:
    def test_empty_is_contradiction(self):
        assert embed(EventSet.empty(AB)).is_contradiction

    def test_full_is_vacuous(self):
        assert embed(EventSet.full(AB)).is_vacuous

    def test_positive_on_event(self):
        piece = embed(EventSet.from_indices(AB, [0]))
        assert piece.kind == ConeKind.EVENT
        assert contains(piece, Gamble.on(AB, [1, -5]))
        assert not contains(piece, Gamble.on(AB, [0, -5]))

    def test_union_meet(self):
        a, b = EventSet.from_indices(AB, [0]), EventSet.from_indices(AB, [1])
        meet, union = event_union_meet(a, b)
        assert meet.is_empty() and union.is_full()
        assert event_union_meet(a, EventSet.full(AB))[0] == a
        assert event_union_meet(a, EventSet.empty(AB))[0].is_empty()

    def test_disjoint_events_contradict(self):
        assert combine(embed(EventSet.from_indices(AB, [0])), embed(EventSet.from_indices(AB, [1]))).is_contradiction

    @pytest.mark.parametrize("space", [XY, Space.binary("X", "Y", "Z")], ids=["2x2", "2x2x2"])
    def test_combination_is_intersection(self, space):
        events = _all_events(space)
        for a, b in product(events, repeat=2):
            assert equals(combine(embed(a), embed(b)), embed(a.intersection(b)))

    @pytest.mark.parametrize("space", [XY, Space.binary("X", "Y", "Z")], ids=["2x2", "2x2x2"])
    def test_extraction_is_cylindrification(self, space):
        scopes = [frozenset(s) for r in range(len(space.names) + 1) for s in combinations(space.names, r)]
        for a in _all_events(space):
            for scope in scopes:
                assert equals(extract(embed(a), scope), embed(cylindrify(a, scope)))

    def test_exhaustive_pairs_on_four_cells(self):
        for a, b in product(_all_events(XY), repeat=2):
            combined = combine(embed(a), embed(b))
            assert combined == embed(a.intersection(b))

    @settings(max_examples=100)
    @given(a=st.integers(min_value=0, max_value=15), b=st.integers(min_value=0, max_value=15), data=st.data())
    def test_intersection_is_union(self, a, b, data):
        first, second = EventSet(XY, a), EventSet(XY, b)
        union = event_union_meet(first, second)[1]
        f = data.draw(gambles(XY))
        both = contains(embed(first), f) and contains(embed(second), f)
        assert both == contains(embed(union), f)
