"""Run a scenario and write its trace, metric summary and trajectory plot."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from .consensus import Role, Trace, run
from .scenario import ScenarioConfig

TRACE_COLUMNS = ("step", "id", "role", "x", "y", "obs_x", "obs_y", "safe_x", "safe_y", "held", "in_hull")
TAIL_STEPS = 500
CANVAS = 800
PADDING = 0.05
PALETTE = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")
ADVERSARY_COLOR = "#d62728"


def _num(v: Optional[float]) -> str:
    return "" if v is None else "%.12g" % v


def write_trace(trace: Trace, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_COLUMNS)
        for r in trace.rows:
            w.writerow((r.step, r.agent, r.role, _num(r.x), _num(r.y), _num(r.obs_x), _num(r.obs_y),
                        _num(r.safe_x), _num(r.safe_y), int(r.held), int(r.in_hull)))


def summarize(cfg: ScenarioConfig, trace: Trace) -> Dict[str, Any]:
    d = trace.diameters()
    tail = d[-TAIL_STEPS:]
    return {
        "algorithm": cfg.algorithm,
        "n_agents": cfg.n_agents,
        "adversaries": [a.id for a in cfg.adversaries],
        "imprecision": {"shape": cfg.imprecision_shape, "delta": cfg.delta},
        "alpha": cfg.alpha,
        "steps": cfg.steps,
        "seed": cfg.seed,
        "guarantee_holds": cfg.guarantee_holds,
        "initial_diameter": d[0],
        "final_diameter": d[-1],
        "tail_mean_diameter": sum(tail) / len(tail),
        "max_hull_excursion": trace.max_hull_excursion(),
        "hold_steps": trace.holds,
    }


def _fmt(v: float) -> str:
    return "%.2f" % v


def render_svg(trace: Trace, title: str = "") -> str:
    """Trajectories on a fixed 800x800 canvas; adversaries dashed, initial hull outlined."""
    n = len(trace.roles)
    paths = [[s[v] for s in trace.states] for v in range(n)]
    xs = [p[0] for path in paths for p in path] + [p[0] for p in trace.initial_hull.vertices]
    ys = [p[1] for path in paths for p in path] + [p[1] for p in trace.initial_hull.vertices]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    # square bounds centred on the data, padded on every side
    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
    half = 0.5 * span * (1.0 + 2.0 * PADDING)
    scale = CANVAS / (2.0 * half)

    def xy(p):
        return _fmt((p[0] - cx + half) * scale), _fmt((cy + half - p[1]) * scale)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
           f'viewBox="0 0 {CANVAS} {CANVAS}">',
           f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>']
    if title:
        out.append(f'<title>{title}</title>')
    hull = trace.initial_hull.vertices
    if hull:
        pts = " ".join(",".join(xy(p)) for p in hull)
        out.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
    k = 0
    for v in range(n):
        coords: List[str] = []
        for p in paths[v]:
            c = ",".join(xy(p))
            if not coords or coords[-1] != c:
                coords.append(c)
        if trace.roles[v] is Role.ADVERSARIAL:
            color, dash = ADVERSARY_COLOR, ' stroke-dasharray="6,4"'
        else:
            color, dash = PALETTE[k % len(PALETTE)], ""
            k += 1
        out.append(f'<polyline id="agent-{v}" points="{" ".join(coords)}" fill="none" '
                   f'stroke="{color}" stroke-width="1.2"{dash}/>')
        sx, sy = coords[0].split(",")
        ex, ey = coords[-1].split(",")
        # hollow marker at the start, filled at the end
        out.append(f'<circle cx="{sx}" cy="{sy}" r="3" fill="none" stroke="{color}"/>')
        out.append(f'<circle cx="{ex}" cy="{ey}" r="3" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def run_and_record(cfg: ScenarioConfig, out_dir) -> Dict[str, Any]:
    """Simulate ``cfg`` and write trace.csv, summary.json and trajectories.svg into out_dir."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OSError(f"cannot create output directory {out}: {e.strerror}") from e
    trace = run(cfg)
    summary = summarize(cfg, trace)
    title = f"{cfg.algorithm}, delta={cfg.delta:g}, seed={cfg.seed}"
    for name, write in (
        ("trace.csv", lambda p: write_trace(trace, p)),
        ("summary.json", lambda p: p.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")),
        ("trajectories.svg", lambda p: p.write_text(render_svg(trace, title))),
    ):
        path = out / name
        try:
            write(path)
        except OSError as e:
            raise OSError(f"cannot write {path}: {e.strerror}") from e
    return summary
