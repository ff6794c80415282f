"""Sparsity-pattern figures for operators, rendered to files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .tensor import flatten_index


def save_sparsity(path, op, title=None):
    """Scatter the nonzero positions of the operator's flattened matrix
    and write the figure to path (format from the file extension)."""
    rows = []
    cols = []
    for (r, c) in sorted(op.entries):
        rows.append(flatten_index(r, op.row_dims))
        cols.append(flatten_index(c, op.col_dims))
    fig, axes = plt.subplots(figsize=(5, 5))
    axes.scatter(cols, rows, marker="s", s=16, color="black")
    axes.set_xlim(-0.5, op.col_dim - 0.5)
    axes.set_ylim(op.row_dim - 0.5, -0.5)
    axes.set_aspect("equal")
    axes.set_xlabel("column")
    axes.set_ylabel("row")
    if title:
        axes.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
