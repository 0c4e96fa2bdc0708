import dataclasses

import numpy as np
import pytest

from cpih.consensus import (
    AgentRecord,
    ConfigError,
    FixedTarget,
    Graph,
    ImprecisionModel,
    ObservationSet,
    RandomBox,
    Role,
    Runaway,
    SplitTargets,
    baseline_step,
    cpih_step,
    hull_excursion,
    observe,
    run,
)
from cpih.geometry import ConvexRegion, convex_hull
from cpih.scenario import scenario_from_dict


def scenario(**kw):
    base = dict(n_agents=6, algorithm="cpih", steps=200, seed=0,
                adversaries=[{"id": 5, "strategy": "fixed_target", "params": {"target": [30, 30]}}])
    base.update(kw)
    return scenario_from_dict(base)


def point_obs(centers, observer=0):
    centers = tuple((float(x), float(y)) for x, y in centers)
    return ObservationSet(observer, tuple(range(len(centers))), centers,
                          tuple(ConvexRegion.point(c) for c in centers))


TRIANGLE_OBS = point_obs([(0, 0), (6, 0), (0, 6)])  # safe point (2, 2)


# ----------------------------------------------------------------- graph

def test_neighborhoods_include_the_agent():
    g = Graph.from_edges(4, [(0, 1), (2, 1)])
    assert g.neighborhood(1) == (0, 1, 2)
    assert g.neighborhood(3) == (3,)
    assert Graph.complete(3).neighborhood(2) == (0, 1, 2)


@pytest.mark.parametrize("edges", [[(1, 1)], [(0, 4)]])
def test_bad_edges(edges):
    with pytest.raises(ConfigError):
        Graph.from_edges(4, edges)


def test_agent_records_are_validated():
    with pytest.raises(ConfigError, match="strategy"):
        AgentRecord(0, Role.NORMAL, (0.0, 0.0), FixedTarget((1.0, 1.0)))
    with pytest.raises(ConfigError, match="strategy"):
        AgentRecord(0, Role.ADVERSARIAL, (0.0, 0.0))
    with pytest.raises(ConfigError, match="non-finite"):
        AgentRecord(0, Role.NORMAL, (float("nan"), 0.0))


@pytest.mark.parametrize("shape, delta", [("square", 0.0), ("none", 1.0), ("hexagon", 1.0), ("disk", -1.0)])
def test_imprecision_model_is_validated(shape, delta):
    with pytest.raises(ConfigError):
        ImprecisionModel(shape, delta)


# ----------------------------------------------------------- observation

def world_of(states, adversaries=None):
    adversaries = adversaries or {}
    return [AgentRecord(i, Role.ADVERSARIAL, p, adversaries[i]) if i in adversaries
            else AgentRecord(i, Role.NORMAL, p) for i, p in enumerate(states)]


STATES = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (1.0, 1.0)]


def test_exact_observation_without_imprecision():
    obs = observe(world_of(STATES), Graph.complete(4), ImprecisionModel(), 0, 0, np.random.default_rng(0))
    assert obs.centers == tuple(STATES)
    assert all(r.kind == "point" for r in obs.regions)


def test_square_noise_is_bounded_and_centred():
    m = ImprecisionModel("square", 0.5)
    rng = np.random.default_rng(1)
    world = world_of(STATES)
    offs = []
    for t in range(10_000 // 3 + 1):
        obs = observe(world, Graph.complete(4), m, 0, t, rng)
        offs += [(c[0] - s[0], c[1] - s[1]) for c, s in zip(obs.centers[1:], STATES[1:])]
    offs = np.array(offs[:10_000])
    assert np.abs(offs).max() <= 0.5
    assert np.abs(offs.mean(axis=0)).max() <= 0.02


def test_true_state_lies_in_its_region_and_self_is_exact():
    m = ImprecisionModel("disk", 0.3)
    obs = observe(world_of(STATES), Graph.complete(4), m, 2, 0, np.random.default_rng(2))
    assert obs.centers[2] == STATES[2] and obs.regions[2].kind == "point"
    for r, s in zip(obs.regions, STATES):
        assert r.contains(s)


def test_fixed_target_adversary_tells_everyone_the_same():
    world = world_of(STATES, {3: FixedTarget((100.0, 100.0))})
    m = ImprecisionModel("square", 0.5)
    for u in range(3):
        obs = observe(world, Graph.complete(4), m, u, 0, np.random.default_rng(u))
        assert obs.centers[3] == (100.0, 100.0)


def test_split_adversary_tells_observers_different_things():
    world = world_of(STATES, {3: SplitTargets(((9.0, 9.0), (-9.0, -9.0)))})
    seen = [observe(world, Graph.complete(4), ImprecisionModel(), u, 0, np.random.default_rng(0)).centers[3]
            for u in range(3)]
    assert seen == [(9.0, 9.0), (-9.0, -9.0), (9.0, 9.0)]


def test_other_strategies():
    r = Runaway(0.5, origin=(0.0, 0.0))
    assert r.position((3.0, 4.0), 10) == pytest.approx((6.0, 8.0))
    box = RandomBox((0.0, 0.0), (1.0, 2.0))
    rng = np.random.default_rng(0)
    for _ in range(100):
        x, y = box.advertise(0, (5.0, 5.0), 0, rng)
        assert 0 <= x <= 1 and 0 <= y <= 2


def test_only_normal_agents_observe():
    world = world_of(STATES, {3: FixedTarget((1.0, 1.0))})
    with pytest.raises(ConfigError):
        observe(world, Graph.complete(4), ImprecisionModel(), 3, 0, np.random.default_rng(0))


# ----------------------------------------------------------------- steps

def test_baseline_step_arithmetic():
    assert baseline_step(TRIANGLE_OBS, (0.0, 0.0), 0.0) == (0.0, 0.0)
    assert baseline_step(TRIANGLE_OBS, (0.0, 0.0), 1.0) == pytest.approx((2.0, 2.0))
    assert baseline_step(TRIANGLE_OBS, (0.0, 0.0), 0.5) == pytest.approx((1.0, 1.0))


def test_cpih_step_holds_on_identical_regions():
    sq = ConvexRegion.square((1.0, 1.0), 0.5)
    obs = ObservationSet(0, tuple(range(6)), ((1.0, 1.0),) * 6, (sq,) * 6)
    assert cpih_step(obs, (1.0, 1.0), 0.5) == (1.0, 1.0)


def test_cpih_step_equals_baseline_without_imprecision():
    obs = point_obs([(0, 0), (5, 1), (6, 4), (2, 6), (-1, 3), (3, 3)])
    for x in [(0.0, 0.0), (3.0, 3.0)]:
        assert cpih_step(obs, x, 0.5) == baseline_step(obs, x, 0.5)


# ------------------------------------------------------------------ runs

def test_consensus_without_adversaries_or_imprecision():
    tr = run(scenario(algorithm="baseline", adversaries=[], steps=5000))
    d = tr.diameters()
    assert all(b <= a + 1e-12 for a, b in zip(d, d[1:]))
    assert d[-1] < 1e-6


def test_runs_are_deterministic():
    cfg = scenario(imprecision={"shape": "square", "delta": 1.0})
    a, b = run(cfg), run(cfg)
    assert a.states == b.states and a.rows == b.rows


def test_zero_imprecision_makes_cpih_and_baseline_identical():
    a = run(scenario(algorithm="cpih"))
    b = run(scenario(algorithm="baseline"))
    assert a.states == b.states


def test_holds_keep_the_state_exactly():
    tr = run(scenario(imprecision={"shape": "square", "delta": 1.5}, initial_states={"box": [[0, 0], [3, 3]]}))
    held = [r for r in tr.rows if r.held]
    assert held, "scenario should force some holds"
    for r in held:
        assert tr.states[r.step + 1][r.agent] == tr.states[r.step][r.agent]
        assert r.safe_x is None and r.safe_y is None


@pytest.mark.parametrize("seed", range(20))
def test_cpih_keeps_normal_agents_in_their_initial_hull(seed):
    strategies = [
        {"strategy": "fixed_target", "params": {"target": [45, 45]}},
        {"strategy": "split", "params": {"targets": [[-20, 5], [40, 5], [5, 40]]}},
        {"strategy": "runaway", "params": {"speed": 0.05}},
        {"strategy": "random", "params": {"low": [-30, -30], "high": [45, 45]}},
    ]
    adv = dict(id=seed % 6, **strategies[seed % 4])
    cfg = scenario(imprecision={"shape": "square" if seed % 2 else "disk", "delta": 0.5 + 0.25 * (seed % 5)},
                   adversaries=[adv], initial_states={"box": [[0, 0], [15, 15]]}, steps=1000, seed=seed)
    tr = run(cfg)
    assert tr.max_hull_excursion() == 0.0
    assert all(r.in_hull for r in tr.rows if r.role == "normal")


def test_excursion_ignores_boundary_round_off():
    sq = convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert hull_excursion(sq, (1.0 + 1e-12, 0.5)) == 0.0
    assert hull_excursion(sq, (1.5, 0.5)) == pytest.approx(0.5)


def test_neighbourhoods_below_three_are_rejected():
    cfg = scenario(adversaries=[], graph={"edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]]})
    assert run(dataclasses.replace(cfg, steps=3)).states  # rings give neighbourhoods of three
    with pytest.raises(ConfigError, match="fewer than 3"):
        run(scenario(adversaries=[], graph={"edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5]]}))
