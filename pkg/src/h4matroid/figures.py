"""Matplotlib report figures for the census: flat counts and incidences."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .matroid import DISPLAY, FLAT_CLASSES, Census  # noqa: E402

_RC = {"svg.hashsalt": "h4matroid", "svg.fonttype": "none", "font.size": 9}


def _save(fig, path: Path) -> Path:
    fmt = path.suffix.lstrip(".") or "svg"
    meta = {"Date": None} if fmt == "svg" else {}
    if fmt == "png":
        meta = {"Software": None}
    fig.savefig(path, format=fmt, metadata=meta)
    plt.close(fig)
    return path


def census_bar_chart(census: Census, path: Path) -> Path:
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 3.5))
        labels = [DISPLAY[c] for c in FLAT_CLASSES]
        values = [census.counts[c] for c in FLAT_CLASSES]
        bars = ax.bar(labels, values, color="#4c72b0")
        for bar, v in zip(bars, values):
            ax.annotate(str(v), (bar.get_x() + bar.get_width() / 2, v), ha="center", va="bottom")
        ax.set_ylabel("number of flats")
        ax.set_title("Flats of M(H4) by class")
        ax.set_ylim(0, max(values) * 1.15)
        fig.tight_layout()
        return _save(fig, path)


def incidence_heatmap(census: Census, path: Path) -> Path:
    """Rows: flat class; columns: flat class containing it; cell: count per flat."""
    inc = census.incidence
    rows = [c for c in FLAT_CLASSES if c in inc.values]
    cols = [c for c in FLAT_CLASSES if any(c in inc.values[r] for r in rows)]
    grid = np.full((len(rows), len(cols)), np.nan)
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            if c in inc.values[r] and inc.uniform(r, c) is not None:
                grid[i, j] = inc.uniform(r, c)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 3.5))
        ax.imshow(np.ma.masked_invalid(grid), cmap="Blues", aspect="auto")
        ax.set_xticks(range(len(cols)), [DISPLAY[c] for c in cols])
        ax.set_yticks(range(len(rows)), [DISPLAY[r] for r in rows])
        ax.set_xlabel("containing flat")
        ax.set_ylabel("flat")
        for i in range(len(rows)):
            for j in range(len(cols)):
                if not np.isnan(grid[i, j]):
                    ax.text(j, i, str(int(grid[i, j])), ha="center", va="center")
        ax.set_title("Containing flats per flat")
        fig.tight_layout()
        return _save(fig, path)


def write_census_figures(census: Census, out_dir: str | Path, fmt: str = "svg") -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        census_bar_chart(census, out / f"census_counts.{fmt}"),
        incidence_heatmap(census, out / f"incidence.{fmt}"),
    ]
