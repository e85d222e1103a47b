import numpy as np
import pytest

from src.maps import evaluate, snapshot
from src.symbolic import (
    HitsBreakpoint,
    KneadingOrder,
    NotUnimodal,
    UnmatchedCylinder,
    check_condition_three,
    compare_kneading,
    compare_partitions,
    condition_three_sweep,
    cylinders,
    is_renormalizable,
    itinerary,
    kneading_from_slopes,
    kneading_path,
    kneading_sequence,
    leading_l_run,
    partitions_up_to,
    renormalize,
)


class TestPartitions:
    def test_itinerary(self, doubling_family):
        snap = snapshot(doubling_family, 2.0)
        assert itinerary(snap, 0.3, 3) == (1, 2, 1)

    def test_itinerary_on_breakpoint(self, doubling_family):
        with pytest.raises(HitsBreakpoint) as info:
            itinerary(snapshot(doubling_family, 2.0), 0.5, 3)
        assert info.value.step == 0

    def test_doubling_cylinders(self, doubling_family):
        partition = cylinders(snapshot(doubling_family, 2.0), 3)
        assert len(partition) == 8
        assert partition.min_length == pytest.approx(1.0 / 8.0)
        assert [c.domain.lo for c in partition.cylinders] == pytest.approx(np.arange(8) / 8.0)

    def test_cylinders_tile_domain(self, mv_tent):
        snap = snapshot(mv_tent, 0.4)
        for partition in partitions_up_to(snap, 6):
            los = [c.domain.lo for c in partition.cylinders]
            his = [c.domain.hi for c in partition.cylinders]
            assert los[0] == pytest.approx(snap.domain.lo)
            assert his[-1] == pytest.approx(snap.domain.hi)
            assert los[1:] == pytest.approx(his[:-1])

    def test_cylinder_words_match_itineraries(self, beta_family):
        snap = snapshot(beta_family, 2.5)
        for cyl in cylinders(snap, 4).cylinders:
            mid = 0.5 * (cyl.domain.lo + cyl.domain.hi)
            assert itinerary(snap, mid, 4) == cyl.word

    @pytest.mark.parametrize("name, a", [("beta_family", 2.5), ("mv_tent", 0.6), ("markov_quadratic", 0.37)])
    def test_each_cylinder_has_one_parent(self, name, a, request):
        levels = partitions_up_to(snapshot(request.getfixturevalue(name), a), 6)
        for parents, children in zip(levels, levels[1:]):
            for child in children.cylinders:
                owners = [p for p in parents.cylinders if p.contains(child)]
                assert len(owners) == 1
                assert owners[0].word == child.word[:-1]

    @pytest.mark.parametrize("name, a, depth", [
        ("beta_family", 2.5, 6),
        ("markov_quadratic", 0.37, 5),
        ("mv_tent", 0.6, 8),
    ])
    def test_images_match_sampled_orbits(self, name, a, depth, request):
        snap = snapshot(request.getfixturevalue(name), a)
        partition = cylinders(snap, depth)
        picks = np.random.default_rng(13).choice(len(partition), size=min(100, len(partition)), replace=False)
        tol = 1e-7 * max(1.0, snap.domain.length)
        for i in picks:
            cyl = partition.cylinders[i]
            images = []
            for x in cyl.domain.lo + cyl.domain.length * np.linspace(1e-9, 1.0 - 1e-9, 50):
                x = float(x)
                for _ in range(depth):
                    x = evaluate(snap, x)
                images.append(x)
            assert min(images) == pytest.approx(cyl.image.lo, abs=tol)
            assert max(images) == pytest.approx(cyl.image.hi, abs=tol)


class TestKneading:
    def test_full_tent(self):
        word = kneading_from_slopes(2.0, 2.0, 5)
        assert str(word) == "RLLLL"
        assert leading_l_run(word) is None

    def test_turning_point_returns(self):
        word = kneading_from_slopes(2.0, 1.5, 5)
        assert str(word) == "RLC"
        assert word.ends_at_turning_point
        assert leading_l_run(word) == 1

    def test_signed_order(self):
        shorter = kneading_from_slopes(2.0, 1.5, 5)
        full = kneading_from_slopes(2.0, 2.0, 5)
        assert compare_kneading(shorter, full) is KneadingOrder.LESS
        assert compare_kneading(full, shorter) is KneadingOrder.GREATER
        assert compare_kneading(full, full) is KneadingOrder.EQUAL_TO_DEPTH

    def test_monotone_along_increasing_slopes(self, mv_tent):
        path = kneading_path(mv_tent, np.linspace(0.0, 1.0, 100), depth=40)
        assert path.violations == 0
        assert len(path.words) == 100

    def test_needs_skew_tent(self, markov_identity):
        with pytest.raises(NotUnimodal):
            kneading_sequence(snapshot(markov_identity, 0.5), 10)

    def test_renormalization(self):
        assert is_renormalizable(1.2, 1.2)
        assert not is_renormalizable(2.0, 2.0)
        assert renormalize(1.2, 1.5) == pytest.approx((2.25, 1.8))


class TestConditionThree:
    def test_markov_partitions_match(self, markov_identity):
        sweep = condition_three_sweep(markov_identity, 0.3, 0.5, 6)
        assert sweep.largest_verified_depth == 6
        for report in sweep.reports:
            assert report.unmatched == 0
            assert report.image_inclusion
            assert report.multiplicity == 1
            assert report.distance_ratio == pytest.approx(0.0, abs=1e-9)

    def test_beta_words_persist(self, beta_family):
        sweep = condition_three_sweep(beta_family, 2.2, 2.4, 10)
        assert len(sweep.reports) == 10
        for report in sweep.reports:
            assert report.unmatched == 0
            assert report.image_inclusion

    def test_reversed_parameters(self, beta_family):
        with pytest.raises(ValueError):
            check_condition_three(beta_family, 2.4, 2.2, 4)
        report = check_condition_three(beta_family, 2.2, 2.2, 4)
        assert report.passed

    def test_lost_words_are_reported(self, beta_family):
        p_high = cylinders(snapshot(beta_family, 2.8), 3)
        p_low = cylinders(snapshot(beta_family, 2.2), 3)
        assert len(p_high) > len(p_low)
        report = compare_partitions(beta_family, p_high, p_low)
        assert not report.symbolic_ok
        assert report.unmatched == len(p_high) - len(p_low)
        assert str(UnmatchedCylinder(report)).startswith(f"{report.unmatched} of {len(p_high)}")
