"""Synchronous multi-agent consensus with imprecise observations.

Normal agents observe each neighbour through an imprecision region and
step toward a safe point: either a centerpoint of the observed centres
(the classical rule, unsafe under imprecision) or a point of the CPIH
region built from invariant hulls.  Adversarial agents follow a scripted
strategy and may tell different observers different things.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import ConvexPolygon, ConvexRegion, Point, convex_hull, dist
from .invariant_hull import RegionFamily
from .safe_region import cpih_region, select_safe_point

if TYPE_CHECKING:
    from .scenario import ScenarioConfig

IN_HULL_TOL = 1e-7


class ConfigError(ValueError):
    """Invalid scenario or simulation setup."""


class Role(str, enum.Enum):
    NORMAL = "normal"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class Graph:
    """Undirected graph on agents 0..n-1 without self-loops."""

    n: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        for a, b in self.edges:
            if a == b:
                raise ConfigError(f"self-loop on agent {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ConfigError(f"edge ({a}, {b}) outside 0..{self.n - 1}")

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((a, b) for a in range(n) for b in range(a + 1, n)))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, frozenset((min(a, b), max(a, b)) for a, b in edges))

    def neighborhood(self, u: int) -> Tuple[int, ...]:
        """Neighbours of u plus u itself, ascending."""
        out = {u}
        for a, b in self.edges:
            if a == u:
                out.add(b)
            elif b == u:
                out.add(a)
        return tuple(sorted(out))


# ------------------------------------------------------------ adversaries
#
# A strategy fixes both where the adversary really is (position) and what
# it tells each observer (advertise).  Positions are functions of time so
# runs stay reproducible.

@dataclass(frozen=True)
class FixedTarget:
    target: Point
    name = "fixed_target"

    def position(self, x0: Point, t: int) -> Point:
        return self.target

    def advertise(self, observer: int, x: Point, t: int, rng) -> Point:
        return self.target


@dataclass(frozen=True)
class Runaway:
    """Moves at constant speed away from ``origin`` and reports its true state."""

    speed: float
    origin: Optional[Point] = None
    name = "runaway"

    def _direction(self, x0: Point) -> Point:
        ox, oy = self.origin if self.origin is not None else (0.0, 0.0)
        dx, dy = x0[0] - ox, x0[1] - oy
        L = math.hypot(dx, dy)
        return (1.0, 0.0) if L == 0.0 else (dx / L, dy / L)

    def position(self, x0: Point, t: int) -> Point:
        ex, ey = self._direction(x0)
        return (x0[0] + self.speed * t * ex, x0[1] + self.speed * t * ey)

    def advertise(self, observer: int, x: Point, t: int, rng) -> Point:
        return x


@dataclass(frozen=True)
class RandomBox:
    """Stays put and advertises independent uniform points from a box."""

    low: Point
    high: Point
    name = "random"

    def position(self, x0: Point, t: int) -> Point:
        return x0

    def advertise(self, observer: int, x: Point, t: int, rng) -> Point:
        u = rng.random(2)
        return (self.low[0] + u[0] * (self.high[0] - self.low[0]),
                self.low[1] + u[1] * (self.high[1] - self.low[1]))


@dataclass(frozen=True)
class SplitTargets:
    """Byzantine split: observer u is told ``targets[u % len(targets)]``."""

    targets: Tuple[Point, ...]
    name = "split"

    def position(self, x0: Point, t: int) -> Point:
        return x0

    def advertise(self, observer: int, x: Point, t: int, rng) -> Point:
        return self.targets[observer % len(self.targets)]


STRATEGIES = {cls.name: cls for cls in (FixedTarget, Runaway, RandomBox, SplitTargets)}


@dataclass(frozen=True)
class AgentRecord:
    id: int
    role: Role
    state: Point
    strategy: Optional[object] = None

    def __post_init__(self):
        if self.role is Role.NORMAL and self.strategy is not None:
            raise ConfigError(f"normal agent {self.id} cannot carry a strategy")
        if self.role is Role.ADVERSARIAL and self.strategy is None:
            raise ConfigError(f"adversarial agent {self.id} needs a strategy")
        if not all(math.isfinite(c) for c in self.state):
            raise ConfigError(f"agent {self.id} has a non-finite state {self.state}")


@dataclass(frozen=True)
class ImprecisionModel:
    """Observation noise: ``delta`` is the square half-width or disk radius."""

    shape: str = "none"
    delta: float = 0.0

    def __post_init__(self):
        if self.shape not in ("none", "square", "disk"):
            raise ConfigError(f"unknown imprecision shape {self.shape!r}")
        if self.delta < 0 or not math.isfinite(self.delta):
            raise ConfigError(f"imprecision delta must be a finite nonnegative number, got {self.delta}")
        if (self.delta == 0.0) != (self.shape == "none"):
            raise ConfigError("delta = 0 exactly when shape is 'none'")

    def region(self, center: Point) -> ConvexRegion:
        if self.shape == "square":
            return ConvexRegion.square(center, self.delta)
        if self.shape == "disk":
            return ConvexRegion.disk(center, self.delta)
        return ConvexRegion.point(center)

    def offsets(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Offsets uniform over the (centrally symmetric) region shape."""
        if self.shape == "square":
            return self.delta * rng.uniform(-1.0, 1.0, size=(count, 2))
        if self.shape == "disk":
            u = rng.random(size=(count, 2))
            r = self.delta * np.sqrt(u[:, 0])
            a = 2.0 * math.pi * u[:, 1]
            return np.column_stack((r * np.cos(a), r * np.sin(a)))
        return np.zeros((count, 2))


@dataclass(frozen=True)
class ObservationSet:
    """What one observer sees: a potential region per neighbourhood member."""

    observer: int
    ids: Tuple[int, ...]
    centers: Tuple[Point, ...]
    regions: Tuple[ConvexRegion, ...]

    def family(self) -> RegionFamily:
        return RegionFamily(self.regions, self.ids)

    def point_family(self) -> RegionFamily:
        return RegionFamily(tuple(ConvexRegion.point(c) for c in self.centers), self.ids)

    def __len__(self) -> int:
        return len(self.ids)


def observe(world: Sequence[AgentRecord], g: Graph, m: ImprecisionModel, u: int, t: int,
            rng: np.random.Generator) -> ObservationSet:
    """Observation of u's neighbourhood at step t.

    Normal neighbours appear as r_v = x_v + offset with the offset uniform in
    the region shape, so x_v is uniform in the region around r_v.  The
    observer sees itself exactly.  Adversaries pick their advertised centre
    per observer.
    """
    if world[u].role is not Role.NORMAL:
        raise ConfigError(f"agent {u} is not normal and does not observe")
    nbrs = g.neighborhood(u)
    noise = m.offsets(rng, len(nbrs)) if m.shape != "none" else None
    centers: List[Point] = []
    regions: List[ConvexRegion] = []
    for i, v in enumerate(nbrs):
        a = world[v]
        if v == u:
            c = a.state
            regions.append(ConvexRegion.point(c))
        else:
            if a.role is Role.NORMAL:
                if noise is None:
                    c = a.state
                else:
                    c = (a.state[0] + float(noise[i, 0]), a.state[1] + float(noise[i, 1]))
            else:
                c = tuple(map(float, a.strategy.advertise(u, a.state, t, rng)))
            regions.append(m.region(c))
        centers.append(c)
    return ObservationSet(u, nbrs, tuple(centers), tuple(regions))


def _combine(s: Point, x: Point, alpha: float) -> Point:
    # x(t+1) = alpha * s + (1 - alpha) * x
    b = 1.0 - alpha
    return (alpha * s[0] + b * x[0], alpha * s[1] + b * x[1])


def baseline_safe_point(obs: ObservationSet) -> Optional[Point]:
    """Centerpoint of the observed centres, ignoring imprecision."""
    return select_safe_point(cpih_region(obs.point_family()))


def cpih_safe_point(obs: ObservationSet) -> Optional[Point]:
    return select_safe_point(cpih_region(obs.family()))


def baseline_step(obs: ObservationSet, x_u: Point, alpha: float) -> Point:
    s = baseline_safe_point(obs)
    return x_u if s is None else _combine(s, x_u, alpha)


def cpih_step(obs: ObservationSet, x_u: Point, alpha: float) -> Point:
    """One CPIH update; holds (returns x_u) when the safe region is empty."""
    s = cpih_safe_point(obs)
    return x_u if s is None else _combine(s, x_u, alpha)


# ------------------------------------------------------------------ runs

@dataclass
class TraceRow:
    """One agent at one step.

    ``obs_x, obs_y`` is the centre the lowest-id normal agent observed for
    this agent (adversaries may tell others something else); ``safe_*`` is
    empty on holds, for adversaries and on the final step.
    """

    step: int
    agent: int
    role: str
    x: float
    y: float
    obs_x: Optional[float]
    obs_y: Optional[float]
    safe_x: Optional[float]
    safe_y: Optional[float]
    held: bool
    in_hull: bool


@dataclass
class Trace:
    """Full record of one run.

    ``states[t][v]`` is agent v's true state at step t (t = 0..steps) and
    ``rows`` holds one TraceRow per agent per recorded step.
    """

    roles: Tuple[Role, ...]
    initial_hull: ConvexPolygon
    states: List[Tuple[Point, ...]] = field(default_factory=list)
    rows: List[TraceRow] = field(default_factory=list)
    holds: int = 0

    @property
    def normal_ids(self) -> Tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r is Role.NORMAL)

    def normal_states(self, t: int) -> List[Point]:
        return [self.states[t][i] for i in self.normal_ids]

    def diameters(self) -> List[float]:
        out = []
        for t in range(len(self.states)):
            pts = self.normal_states(t)
            out.append(max((dist(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]), default=0.0))
        return out

    def max_hull_excursion(self) -> float:
        h = self.initial_hull
        return max(hull_excursion(h, p) for t in range(len(self.states)) for p in self.normal_states(t))


def hull_excursion(hull: ConvexPolygon, p: Point) -> float:
    """Distance of p outside ``hull``; 0 within IN_HULL_TOL (round-off on the boundary)."""
    d = hull.distance_to(p)
    return d if d > IN_HULL_TOL else 0.0


def initial_world(cfg: "ScenarioConfig", rng: np.random.Generator) -> List[AgentRecord]:
    n = cfg.n_agents
    if cfg.initial_states.explicit is not None:
        pts = [tuple(map(float, p)) for p in cfg.initial_states.explicit]
    else:
        (lx, ly), (hx, hy) = cfg.initial_states.box
        u = rng.random(size=(n, 2))
        pts = [(lx + a * (hx - lx), ly + b * (hy - ly)) for a, b in u]
    adv = {a.id: a for a in cfg.adversaries}
    normal_pts = [p for i, p in enumerate(pts) if i not in adv]
    centroid = (sum(p[0] for p in normal_pts) / len(normal_pts),
                sum(p[1] for p in normal_pts) / len(normal_pts))
    world = []
    for i, p in enumerate(pts):
        if i in adv:
            strat = adv[i].strategy
            if isinstance(strat, Runaway) and strat.origin is None:
                strat = replace(strat, origin=centroid)
            world.append(AgentRecord(i, Role.ADVERSARIAL, strat.position(p, 0), strat))
        else:
            world.append(AgentRecord(i, Role.NORMAL, p))
    return world


def run(scenario: "ScenarioConfig") -> Trace:
    """Simulate ``scenario.steps`` synchronous rounds; deterministic in the seed."""
    cfg = scenario
    g = cfg.build_graph()
    m = cfg.imprecision_model()
    init_seq, dyn_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    world = initial_world(cfg, np.random.default_rng(init_seq))
    rng = np.random.default_rng(dyn_seq)
    for a in world:
        if a.role is Role.NORMAL and len(g.neighborhood(a.id)) < 3:
            raise ConfigError(f"agent {a.id} has fewer than 3 agents in its neighborhood")

    x0 = [a.state for a in world]
    roles = tuple(a.role for a in world)
    normal = [a.id for a in world if a.role is Role.NORMAL]
    hull = convex_hull(x0[i] for i in normal)
    safe_fn = cpih_safe_point if cfg.algorithm == "cpih" else baseline_safe_point
    alpha = cfg.alpha
    first_observer = normal[0] if normal else None

    trace = Trace(roles, hull)
    for t in range(cfg.steps + 1):
        states = tuple(a.state for a in world)
        trace.states.append(states)
        last = t == cfg.steps
        safe: Dict[int, Optional[Point]] = {}
        shown: Dict[int, Point] = {}
        if not last:
            for u in normal:
                obs = observe(world, g, m, u, t, rng)
                if u == first_observer:
                    shown = dict(zip(obs.ids, obs.centers))
                safe[u] = safe_fn(obs)
        for a in world:
            s = safe.get(a.id)
            held = (not last) and a.role is Role.NORMAL and s is None
            o = shown.get(a.id)
            trace.rows.append(TraceRow(
                t, a.id, a.role.value, a.state[0], a.state[1],
                None if o is None else o[0], None if o is None else o[1],
                None if s is None else s[0], None if s is None else s[1],
                held, hull_excursion(hull, a.state) == 0.0,
            ))
            trace.holds += held
        if last:
            break
        # all normal agents update simultaneously
        new_world = []
        for a in world:
            if a.role is Role.NORMAL:
                s = safe[a.id]
                nxt = a.state if s is None else _combine(s, a.state, alpha)
                new_world.append(replace(a, state=nxt))
            else:
                new_world.append(replace(a, state=a.strategy.position(x0[a.id], t + 1)))
        world = new_world
    return trace
