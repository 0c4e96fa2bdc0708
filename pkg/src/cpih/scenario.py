"""Scenario files: a small YAML document describing one experiment.

Example::

    n_agents: 6
    algorithm: cpih
    imprecision: {shape: square, delta: 1.0}   # delta = full width
    adversaries:
      - {id: 5, strategy: fixed_target, params: {target: [30, 30]}}
    seed: 3

Unknown keys are rejected.  ``delta`` is the full width of the square (or
the diameter of the disk); the geometry layer gets half of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from .consensus import STRATEGIES, ConfigError, FixedTarget, Graph, ImprecisionModel, RandomBox, Runaway, SplitTargets

ALGORITHMS = ("baseline", "cpih")
FIELDS = ("n_agents", "graph", "adversaries", "imprecision", "algorithm", "alpha", "steps",
          "seed", "initial_states")
DEFAULT_BOX = ((0.0, 0.0), (10.0, 10.0))


@dataclass(frozen=True)
class AdversarySpec:
    id: int
    strategy: Any
    params: Dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class InitialStates:
    explicit: Optional[Tuple[Tuple[float, float], ...]] = None
    box: Tuple[Tuple[float, float], Tuple[float, float]] = DEFAULT_BOX


@dataclass(frozen=True)
class ScenarioConfig:
    n_agents: int
    algorithm: str = "cpih"
    imprecision_shape: str = "none"
    delta: float = 0.0
    adversaries: Tuple[AdversarySpec, ...] = ()
    graph_edges: Optional[Tuple[Tuple[int, int], ...]] = None
    alpha: float = 0.5
    steps: int = 5000
    seed: int = 0
    initial_states: InitialStates = InitialStates()

    def __post_init__(self):
        n = self.n_agents
        if not isinstance(n, int) or n < 3:
            raise ConfigError(f"n_agents: need an integer >= 3, got {n!r}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm: expected one of {ALGORITHMS}, got {self.algorithm!r}")
        if not (0.0 <= self.alpha <= 1.0):
            raise ConfigError(f"alpha: must lie in [0, 1], got {self.alpha}")
        if not isinstance(self.steps, int) or self.steps < 1:
            raise ConfigError(f"steps: need a positive integer, got {self.steps!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed: need a nonnegative integer, got {self.seed!r}")
        ids = [a.id for a in self.adversaries]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"adversaries: duplicate agent ids {sorted(ids)}")
        for i in ids:
            if not (0 <= i < n):
                raise ConfigError(f"adversaries: id {i} outside 0..{n - 1}")
        if len(ids) >= n:
            raise ConfigError("adversaries: at least one agent must be normal")
        init = self.initial_states.explicit
        if init is not None and len(init) != n:
            raise ConfigError(f"initial_states: {len(init)} points for {n} agents")
        # raises on bad shape/delta combinations
        self.imprecision_model()
        self.build_graph()

    def build_graph(self) -> Graph:
        if self.graph_edges is None:
            return Graph.complete(self.n_agents)
        return Graph.from_edges(self.n_agents, self.graph_edges)

    def imprecision_model(self) -> ImprecisionModel:
        if self.imprecision_shape == "none" or self.delta == 0.0:
            if self.delta != 0.0:
                raise ConfigError("imprecision: delta given without a shape")
            return ImprecisionModel()
        return ImprecisionModel(self.imprecision_shape, self.delta / 2.0)

    @property
    def guarantee_holds(self) -> bool:
        """Every normal agent has at most floor(N_u/3) - 1 adversaries among its N_u."""
        g = self.build_graph()
        adv = {a.id for a in self.adversaries}
        for u in range(self.n_agents):
            if u in adv:
                continue
            nb = g.neighborhood(u)
            if sum(v in adv for v in nb) > len(nb) // 3 - 1:
                return False
        return True


def _point(value, where: str) -> Tuple[float, float]:
    try:
        x, y = (float(c) for c in value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a point [x, y], got {value!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ConfigError(f"{where}: non-finite point {value!r}")
    return (x, y)


def _strategy(name: str, params: Dict[str, Any], where: str):
    if name not in STRATEGIES:
        raise ConfigError(f"{where}.strategy: unknown {name!r}; choose from {sorted(STRATEGIES)}")
    try:
        if name == "fixed_target":
            return FixedTarget(_point(params["target"], f"{where}.params.target"))
        if name == "runaway":
            origin = params.get("origin")
            return Runaway(float(params.get("speed", 0.01)),
                           None if origin is None else _point(origin, f"{where}.params.origin"))
        if name == "random":
            return RandomBox(_point(params["low"], f"{where}.params.low"),
                             _point(params["high"], f"{where}.params.high"))
        return SplitTargets(tuple(_point(p, f"{where}.params.targets") for p in params["targets"]))
    except KeyError as e:
        raise ConfigError(f"{where}.params: missing {e.args[0]!r} for strategy {name!r}") from None


def scenario_from_dict(data: Dict[str, Any]) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("scenario: top level must be a mapping")
    unknown = sorted(set(data) - set(FIELDS))
    if unknown:
        raise ConfigError(f"scenario: unknown fields {unknown}")
    if "n_agents" not in data:
        raise ConfigError("n_agents: required")
    kw: Dict[str, Any] = {"n_agents": data["n_agents"]}
    for key in ("algorithm", "alpha", "steps", "seed"):
        if key in data:
            kw[key] = data[key]
    if "alpha" in kw:
        try:
            kw["alpha"] = float(kw["alpha"])
        except (TypeError, ValueError):
            raise ConfigError(f"alpha: not a number: {kw['alpha']!r}") from None

    graph = data.get("graph", "complete")
    if graph != "complete":
        if not isinstance(graph, dict) or set(graph) != {"edges"}:
            raise ConfigError("graph: expected 'complete' or {edges: [[a, b], ...]}")
        try:
            kw["graph_edges"] = tuple((int(a), int(b)) for a, b in graph["edges"])
        except (TypeError, ValueError):
            raise ConfigError("graph.edges: expected a list of [a, b] pairs") from None

    imp = data.get("imprecision", {"shape": "none"})
    if not isinstance(imp, dict) or not set(imp) <= {"shape", "delta"}:
        raise ConfigError("imprecision: expected {shape: square|disk|none, delta: width}")
    kw["imprecision_shape"] = imp.get("shape", "square")
    try:
        kw["delta"] = float(imp.get("delta", 0.0))
    except (TypeError, ValueError):
        raise ConfigError(f"imprecision.delta: not a number: {imp.get('delta')!r}") from None
    if kw["imprecision_shape"] not in ("none", "square", "disk"):
        raise ConfigError(f"imprecision.shape: unknown {kw['imprecision_shape']!r}")

    advs = []
    for k, a in enumerate(data.get("adversaries") or []):
        where = f"adversaries[{k}]"
        if not isinstance(a, dict) or not set(a) <= {"id", "strategy", "params"} or "id" not in a:
            raise ConfigError(f"{where}: expected {{id, strategy, params}}")
        params = a.get("params") or {}
        name = a.get("strategy", "fixed_target")
        advs.append(AdversarySpec(int(a["id"]), _strategy(name, params, where), dict(params)))
    kw["adversaries"] = tuple(advs)

    init = data.get("initial_states")
    if init is not None:
        if isinstance(init, dict):
            if set(init) != {"box"}:
                raise ConfigError("initial_states: expected {box: [[xmin, ymin], [xmax, ymax]]} or a point list")
            lo, hi = init["box"]
            kw["initial_states"] = InitialStates(box=(_point(lo, "initial_states.box"),
                                                      _point(hi, "initial_states.box")))
        else:
            kw["initial_states"] = InitialStates(
                explicit=tuple(_point(p, f"initial_states[{i}]") for i, p in enumerate(init)))
    return ScenarioConfig(**kw)


def load_scenario(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise OSError(f"cannot read scenario {path}: {e.strerror}") from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: not valid YAML: {e}") from None
    return scenario_from_dict(data)


def regions_from_dict(data: Dict[str, Any]):
    """RegionFamily from ``{regions: [{shape, center, half_width|radius} | {shape: polygon, vertices}]}``."""
    from .geometry import ConvexRegion, GeometryError, convex_hull
    from .invariant_hull import RegionFamily

    if not isinstance(data, dict) or set(data) != {"regions"} or not isinstance(data["regions"], list):
        raise ConfigError("regions file: expected a mapping with a single 'regions' list")
    out = []
    for i, r in enumerate(data["regions"]):
        where = f"regions[{i}]"
        if not isinstance(r, dict) or "shape" not in r:
            raise ConfigError(f"{where}: expected a mapping with a 'shape'")
        shape = r["shape"]
        allowed = {"point": {"center"}, "square": {"center", "half_width"}, "disk": {"center", "radius"},
                   "polygon": {"vertices"}}
        if shape not in allowed:
            raise ConfigError(f"{where}.shape: unknown {shape!r}; choose from {sorted(allowed)}")
        keys = set(r) - {"shape"}
        if keys != allowed[shape]:
            raise ConfigError(f"{where}: {shape} takes fields {sorted(allowed[shape])}, got {sorted(keys)}")
        try:
            if shape == "polygon":
                verts = [_point(p, f"{where}.vertices") for p in r["vertices"]]
                out.append(ConvexRegion.from_polygon(convex_hull(verts)))
                continue
            c = _point(r["center"], f"{where}.center")
            if shape == "point":
                out.append(ConvexRegion.point(c))
            elif shape == "square":
                out.append(ConvexRegion.square(c, float(r["half_width"])))
            else:
                out.append(ConvexRegion.disk(c, float(r["radius"])))
        except (GeometryError, TypeError) as e:
            raise ConfigError(f"{where}: {e}") from None
    if len(out) < 3:
        raise ConfigError(f"regions file: need at least 3 regions, got {len(out)}")
    return RegionFamily.of(out)


def load_regions(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise OSError(f"cannot read regions file {path}: {e.strerror}") from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: not valid YAML: {e}") from None
    return regions_from_dict(data)
