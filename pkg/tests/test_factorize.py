import random

import pytest

from braidfan.errors import DimensionMismatch, InadmissibleCenter, InvalidFan, StaleCenter
from braidfan.factorize import (
    DOWN,
    UP,
    candidate_centers,
    center_at,
    factor_to_braid,
    find_center,
    is_admissible,
    strong_factorize,
    subdivide_at_center,
)
from braidfan.fan import Cone, Fan, braid_fan, is_complete_coarsening, is_smooth, star_subdivide_rays
from braidfan.lattice import indicator, sum_vectors
from braidfan.oracle import enumerate_coarsenings, verify_step
from braidfan.preposet import Preposet

from conftest import braid_with_merges, detour_fan4, merged_fan4, overlapping_fan4, random_coarsening, rel


def e(n, *subset):
    return indicator(n, subset)


def chains(*orders):
    return {Preposet.chain(o) for o in orders}


def test_find_center_p2(p2_fan, star):
    c = find_center(p2_fan)
    # first cone in ray order is the star below 3
    assert c.sigma.label == star
    assert (c.b, c.orientation, c.k) == ((3,), DOWN, 2)
    assert c.parts == ((1,), (2,), (3,))
    assert set(c.tau.rays) <= set(c.sigma.rays)


def test_find_center_braid():
    assert find_center(braid_fan(4)) is None


def test_center_on_fig2(fig2):
    fan = braid_with_merges(4, [fig2])
    c = find_center(fan)
    assert c.sigma.label == fig2
    assert (c.b, c.orientation, c.k) == ((2,), UP, 2)
    assert c.parts == ((1,), (3,), (2, 4))
    everything_but_hub = [edge for edge in fig2.covers if edge[0] != fig2.class_of(2)]
    assert c.tau.label == fig2.contract(everything_but_hub)
    assert c.new_ray() == e(4, 1, 3)


def test_find_center_needs_smooth(diamond):
    with pytest.raises(InvalidFan):
        find_center(Fan.from_labels(4, [diamond]))


def test_subdivide_p2(p2_fan, star):
    c = center_at(Cone(star), 2, DOWN)
    ray, out = subdivide_at_center(p2_fan, c)
    assert ray == e(3, 3)
    labels = set(out.labels())
    assert chains((1, 2, 3), (2, 1, 3)) <= labels and star not in labels
    assert len(out) == 4
    assert set(out.rays()) == set(p2_fan.rays()) | {ray}


def test_subdivide_merged():
    f = merged_fan4()
    c = find_center(f)
    assert (c.b, c.orientation, c.hub_side) == ((2,), UP, (1, 2))
    ray, out = subdivide_at_center(f, c)
    assert ray == e(4, 3, 4)
    assert out == braid_fan(4)
    assert star_subdivide_rays(f, c.tau).fan == out


def test_subdivide_up_orientation():
    f = braid_with_merges(3, [rel(3, (3, 1), (3, 2))])
    c = find_center(f)
    assert (c.b, c.orientation) == ((3,), UP)
    ray, out = subdivide_at_center(f, c)
    assert ray == e(3, 1, 2)
    assert out == braid_fan(3)
    assert star_subdivide_rays(f, c.tau).fan == out


def test_new_ray_is_sum_of_tau_rays():
    for f in enumerate_coarsenings(3):
        for c in candidate_centers(f):
            assert c.new_ray() == sum_vectors(c.tau.rays)


def test_stale_center(p2_fan, star):
    c = find_center(p2_fan)
    _, out = subdivide_at_center(p2_fan, c)
    with pytest.raises(StaleCenter):
        subdivide_at_center(out, c)


def test_inadmissible_center_is_skipped():
    f = detour_fan4()
    first = next(candidate_centers(f))
    assert not is_admissible(f, first)
    # subdividing there leaves the braid-coarsening world
    assert star_subdivide_rays(f, first.tau).fan is None
    with pytest.raises(InadmissibleCenter):
        subdivide_at_center(f, first)
    chosen = find_center(f)
    assert chosen != first and is_admissible(f, chosen)
    trace = factor_to_braid(f, verify=True)
    assert len(trace) == 14 - len(f.rays())


def test_factor_examples(p2_fan):
    assert len(factor_to_braid(braid_fan(4))) == 0
    trace = factor_to_braid(p2_fan, verify=True)
    assert len(trace) == 3
    assert set(trace.added_rays()) == {e(3, 1), e(3, 2), e(3, 3)}
    assert trace.final == braid_fan(3)
    merged = factor_to_braid(merged_fan4(), verify=True)
    assert merged.added_rays() == [e(4, 3, 4)]


def test_factor_rejects_invalid(p2_fan, diamond):
    with pytest.raises(InvalidFan):
        factor_to_braid(Fan(3, p2_fan.maximal[1:]))
    with pytest.raises(InvalidFan):
        factor_to_braid(Fan.from_labels(4, [diamond]))


def test_factor_blames_overlapping_input():
    # every chamber is covered once, but two cones meet outside a common face
    with pytest.raises(InvalidFan, match="bad-intersection"):
        factor_to_braid(overlapping_fan4())


def check_trace(trace):
    fans = trace.fans()
    n = trace.n
    assert len(trace) == (2**n - 2) - len(trace.initial.rays())
    for before, step in zip(fans, trace.steps):
        after = step.result
        assert len(after.rays()) == len(before.rays()) + 1
        assert step.new_ray not in before.rays()
        assert step.new_ray == sum_vectors(step.center.tau.rays)
        assert star_subdivide_rays(before, step.center.tau).fan == after
        assert is_smooth(after) and is_complete_coarsening(after).ok
    assert trace.final == braid_fan(n)


def test_all_n3_coarsenings_factor():
    for f in enumerate_coarsenings(3):
        trace = factor_to_braid(f, verify=True)
        check_trace(trace)


@pytest.mark.slow
def test_all_n4_coarsenings_factor():
    fans = enumerate_coarsenings(4)
    assert len(fans) == 2671
    for f in fans:
        check_trace(factor_to_braid(f))


@pytest.mark.parametrize("n, count, seed", [(5, 12, 5), (6, 2, 6)])
def test_random_coarsenings_factor(n, count, seed):
    rng = random.Random(seed)
    done = 0
    while done < count:
        f = random_coarsening(n, rng)
        if f is None:
            continue
        trace = factor_to_braid(f)
        assert trace.final == braid_fan(n)
        assert len(trace) == (2**n - 2) - len(f.rays())
        done += 1


def test_determinism(p2_fan):
    assert factor_to_braid(p2_fan) == factor_to_braid(Fan(3, tuple(reversed(p2_fan.maximal))))


def test_strong_factorize(p2_fan, p2_opposite_fan):
    first, second = strong_factorize(p2_fan, braid_fan(3))
    assert (len(first), len(second)) == (3, 0)
    a, b = strong_factorize(p2_fan, p2_fan)
    assert a == b
    result = strong_factorize(p2_fan, p2_opposite_fan, verify=True)
    assert (len(result.first), len(result.second)) == (3, 3)
    assert result.first.final == result.second.final == result.common == braid_fan(3)
    assert set(result.second.added_rays()) == {e(3, 1, 2), e(3, 1, 3), e(3, 2, 3)}


def test_strong_factorize_dimension_mismatch(p2_fan):
    with pytest.raises(DimensionMismatch):
        strong_factorize(p2_fan, braid_fan(4))


def test_trace_json(p2_fan):
    data = factor_to_braid(p2_fan).to_json()
    assert data["n"] == 3 and data["final"] == "braid"
    assert [s["result_ray_count"] for s in data["steps"]] == [4, 5, 6]
    first = data["steps"][0]
    assert first["hub_class"] == [3] and first["orientation"] == "down"
    assert first["new_ray"] == [0, 0, 1]
    assert first["tau_rays"] == [[0, 1, 1], [1, 0, 1]]
    assert "result" not in first
    assert "result" in factor_to_braid(p2_fan).to_json(verbose=True)["steps"][0]
