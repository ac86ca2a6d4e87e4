"""SVG line charts for profile, check and Schwarz runs."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["svg.hashsalt"] = "angdil"
SVG_META = {"Date": None}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=SVG_META)
    plt.close(fig)
    return path


def plot_area_vs_bound(check_rows, path) -> Path | None:
    series = defaultdict(list)
    for row in check_rows:
        if row["inequality_id"].startswith("theorem1"):
            series[(row["map"], row["p"])].append((row["r1"], row["lhs"], row["rhs"]))
    if not series:
        return None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (name, p), pts in sorted(series.items()):
        pts.sort()
        r = [x[0] for x in pts]
        line, = ax.plot(r, [x[1] for x in pts], "-", label=f"S(r) {name} p={p:g}")
        ax.plot(r, [x[2] for x in pts], "--", color=line.get_color(), label=f"bound {name} p={p:g}")
    ax.set_xlabel("r")
    ax.set_ylabel("area")
    ax.set_yscale("log")
    ax.set_title("measured image area vs area bound")
    ax.legend(fontsize="x-small")
    return _save(fig, Path(path))


def plot_area_profile(profile_rows, path) -> Path | None:
    series = defaultdict(dict)
    for row in profile_rows:
        series[row["map"]][row["r"]] = row["S_green"]
    if not series:
        return None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, pts in sorted(series.items()):
        r = sorted(pts)
        ax.plot(r, [pts[x] for x in r], "-o", ms=3, label=name)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("r")
    ax.set_ylabel("S(r)")
    ax.set_title("image area")
    ax.legend(fontsize="x-small")
    return _save(fig, Path(path))


def plot_schwarz(schwarz_rows, path) -> Path | None:
    series = defaultdict(list)
    for row in schwarz_rows:
        series[(row["map"], row["p"])].append((row["r"], row["functional"]))
    if not series:
        return None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (name, p), pts in sorted(series.items()):
        pts.sort()
        ax.plot([x[0] for x in pts], [x[1] for x in pts], "-", label=f"{name} p={p:g}")
    ax.axhline(1.0, color="k", lw=0.8, ls=":", label="1")
    ax.set_xscale("log")
    ax.set_xlabel("r")
    ax.set_ylabel("l_f(r) / R_p(r)")
    ax.set_title("Schwarz-type functional")
    ax.legend(fontsize="x-small")
    return _save(fig, Path(path))


def plot_margins(check_rows, path) -> Path | None:
    series = defaultdict(list)
    for row in check_rows:
        if row["inequality_id"] == "regularity":
            continue
        series[(row["inequality_id"], row["p"])].append((row["r1"], row["margin"]))
    if not series:
        return None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (ident, p), pts in sorted(series.items()):
        pts.sort()
        ax.plot([x[0] for x in pts], [x[1] for x in pts], ".", ms=3, label=f"{ident} p={p:g}")
    ax.set_yscale("symlog", linthresh=1e-12)
    ax.set_xlabel("r (first radius)")
    ax.set_ylabel("margin rhs - lhs")
    ax.set_title("inequality margins")
    ax.legend(fontsize="xx-small", ncol=2)
    return _save(fig, Path(path))


def emit_plots(directory, *, profile_rows=None, check_rows=None, schwarz_rows=None) -> list[Path]:
    """Write whichever charts the supplied tables support; returns the files written."""
    directory = Path(directory)
    out = []
    if profile_rows:
        out.append(plot_area_profile(profile_rows, directory / "area.svg"))
    if check_rows:
        out.append(plot_area_vs_bound(check_rows, directory / "area_vs_bound.svg"))
        out.append(plot_margins(check_rows, directory / "margins.svg"))
    if schwarz_rows:
        out.append(plot_schwarz(schwarz_rows, directory / "schwarz.svg"))
    return [p for p in out if p is not None]
