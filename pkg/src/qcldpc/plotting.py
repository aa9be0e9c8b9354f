"""Figure rendering for the report tables.

Each table drawn by ``render_table_figure`` becomes one line chart over the
block size p, one line per (n0[, d_v]) row, saved to the given path.  The
Agg backend is selected before pyplot is touched, so this works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 120,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
    "lines.markersize": 4,
}

_YLABELS = {
    1: "public key size (bytes)",
    2: "binary ops per cleartext bit",
    3: "error-count threshold of the private decoder",
    4: "binary ops per cleartext bit",
    6: "correctable public error weight t'",
    7: "log2 work factor of the cheapest attack",
}

_TITLES = {
    1: "key size",
    2: "encryption cost",
    3: "decoding threshold",
    4: "decryption cost",
    6: "correctable error weight",
    7: "security level",
}


def _split_labels(header, row):
    """(line label, x values, y values) for one table row."""
    ncols = len([h for h in header if not h.startswith("p=")])
    label = ", ".join(f"{h}={v}" for h, v in zip(header[:ncols], row[:ncols]))
    xs = [int(h.split("=", 1)[1]) for h in header[ncols:]]
    return label, xs, row[ncols:]


def render_table_figure(table_id: int, header, rows, path) -> None:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for row in rows:
            label, xs, ys = _split_labels(header, row)
            ax.plot(xs, ys, marker="o", label=label)
        ax.set_xlabel("circulant block size p")
        ax.set_ylabel(_YLABELS.get(table_id, "value"))
        ax.set_title(_TITLES.get(table_id, f"table {table_id}"))
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
