"""SVG plots of rate-region curves."""

import io
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from bosoncast.capacity_regions import RegionCurve, Scheme  # noqa: E402
from bosoncast.utils import format_number, save_text  # noqa: E402

COLORS = {
    Scheme.OPTIMUM: "#1f77b4",
    Scheme.HOMODYNE: "#d62728",
    Scheme.HETERODYNE: "#2ca02c",
    Scheme.MAC_ENVELOPE: "#7f7f7f",
}

# Fixed element ids and no timestamp: identical curves give identical bytes.
SVG_STYLE = {"svg.hashsalt": "bosoncast", "svg.fonttype": "none"}


class RegionPlot:
    """Draw one or more RegionCurves on shared rate axes."""

    def __init__(self, width: float = 6.4, height: float = 4.8):
        self.width = width
        self.height = height

    def figure(self, curves: Sequence[RegionCurve], title: str = "") -> Figure:
        """Build the figure; the caller owns it and must close it."""
        if not curves:
            raise ValueError("nothing to plot")
        fig, ax = plt.subplots(figsize=(self.width, self.height))
        for curve in curves:
            nbar = curve.params.to_dict()["nbar"]
            ax.plot(
                curve.r_b,
                curve.r_c,
                color=COLORS[curve.scheme],
                linestyle="--" if curve.scheme is Scheme.MAC_ENVELOPE else "-",
                linewidth=1.5,
                label=f"{curve.scheme.value} nbar={format_number(nbar, 4)}",
            )
        ax.set_xlabel("R_B (bits per use)")
        ax.set_ylabel("R_C (bits per use)")
        ax.set_xlim(left=0.0)
        ax.set_ylim(bottom=0.0)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="upper right")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return fig

    def render(self, curves: Sequence[RegionCurve], title: str = "") -> str:
        """Return SVG text; output is deterministic for identical curves."""
        fig = self.figure(curves, title)
        buffer = io.StringIO()
        try:
            with plt.rc_context(SVG_STYLE):
                fig.savefig(buffer, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
        return buffer.getvalue()

    def write(self, curves: Sequence[RegionCurve], output_path: Path, title: str = "") -> Path:
        save_text(self.render(curves, title), output_path)
        return output_path
