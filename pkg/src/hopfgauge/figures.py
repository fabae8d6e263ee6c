"""Matplotlib renderings for the pipeline report (``pipeline --figures DIR``)."""
from __future__ import annotations

import os

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STATUS_COLORS = {"pass": "#4c956c", "fail": "#d1495b", "skipped": "#b0b0b0"}


def _as_float(F, arr) -> np.ndarray:
    arr = np.asarray(arr)
    if F.p is None:
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    # symmetric residues read better than 0..p-1
    r = np.vectorize(lambda x: int(x) % F.p, otypes=[np.int64])(arr)
    return np.where(r > F.p // 2, r - F.p, r).astype(float)


def _heat(ax, F, mat, title, xlabels=None, ylabels=None):
    vals = _as_float(F, mat)
    lim = max(1.0, float(np.abs(vals).max()) if vals.size else 1.0)
    im = ax.imshow(vals, cmap="RdBu_r", vmin=-lim, vmax=lim, aspect="auto", interpolation="nearest")
    ax.set_title(title, fontsize=9)
    if xlabels is not None and len(xlabels) <= 24:
        ax.set_xticks(range(len(xlabels)), xlabels, rotation=90, fontsize=6)
    else:
        ax.set_xticks([])
    if ylabels is not None and len(ylabels) <= 24:
        ax.set_yticks(range(len(ylabels)), ylabels, fontsize=6)
    else:
        ax.set_yticks([])
    if vals.size <= 256:
        for (i, j), x in np.ndenumerate(vals):
            if x:
                text = F.format(np.asarray(mat)[i, j]) if F.p is None else str(int(x))
                ax.text(j, i, text, ha="center", va="center", fontsize=6)
    return im


def stage_chart(report, path: str) -> None:
    names = [s.name for s in report.stages]
    secs = [s.seconds for s in report.stages]
    colors = [_STATUS_COLORS.get(s.status, "#b0b0b0") for s in report.stages]
    fig, ax = plt.subplots(figsize=(6, 0.35 * len(names) + 1.2))
    ax.barh(range(len(names)), secs, color=colors)
    ax.set_yticks(range(len(names)), names)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title(f"pipeline: {'pass' if report.ok else 'fail'}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def gauge_panels(report, path: str) -> bool:
    """Heatmaps of xi, v and alpha(v); False when the pipeline stopped before them."""
    ctx, F = report.context, report.field
    if "xi" not in ctx or "P" not in ctx:
        return False
    P = ctx["P"]
    d, dH = P.dim, P.H.dim
    labs = list(P.labels)
    pairs = [f"{a}|{b}" for a in labs for b in labs]
    panels = [("xi: R(x)R -> H", ctx["xi"], pairs, list(P.H.labels))]
    if "v" in ctx:
        panels.append(("v: rows r, columns s", np.asarray(ctx["v"]).reshape(d, d), labs, labs))
    if "Q" in ctx:
        panels.append(("alpha(v): rows r|s, columns t", np.asarray(ctx["Q"].alpha).reshape(d * d, d), labs, pairs))
    fig, axes = plt.subplots(1, len(panels), figsize=(3.6 * len(panels), 3.6), squeeze=False)
    for ax, (title, mat, xl, yl) in zip(axes[0], panels):
        _heat(ax, F, mat, title, xl, yl)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return True


def render(report, outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    written = []
    p = os.path.join(outdir, "stages.png")
    stage_chart(report, p)
    written.append(p)
    p = os.path.join(outdir, "gauge.png")
    if gauge_panels(report, p):
        written.append(p)
    return written
