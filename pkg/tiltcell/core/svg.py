"""
Pictures of dominant alcoves for rank 2 root systems.
"""

from fractions import Fraction
import io
import logging

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Patch
import numpy as np

from .affine import AffineGroup, WfRep
from .errors import InvalidConfigError

logger = logging.getLogger(__name__)


def _embedding(group: AffineGroup) -> np.ndarray:
    """rows are the fundamental weights in the plane, with the invariant form as Gram matrix"""
    gram = np.array([[float(x) for x in row] for row in group.root_system.form])
    return np.linalg.cholesky(gram)


def alcove_vertices(group: AffineGroup, x: WfRep) -> list:
    """corners of the alcove x.C in lambda + rho coordinates"""
    coroot = group.root_system.highest_coroot
    corners = [
        (Fraction(0), Fraction(0)),
        (Fraction(group.level, coroot[0]), Fraction(0)),
        (Fraction(0), Fraction(group.level, coroot[1])),
    ]
    return [group.linear_act(x.element, corner) for corner in corners]


def emit_svg_alcoves(group: AffineGroup, alcoves, categories: dict = None, title: str = "") -> str:
    """
    SVG picture of the given dominant alcoves.

    Args:
        group: affine Weyl group of a rank 2 root system.
        alcoves: iterable of WfRep.
        categories: optional map WfRep -> legend label used for the fill
            colour (cell index, ideal membership, ...).
        title: figure title.

    Returns:
        the SVG document as text; identical inputs give identical bytes.
    """
    if group.rank != 2:
        raise InvalidConfigError(f"alcove pictures need a rank 2 root system, got {group.name}")
    alcoves = sorted(alcoves, key=WfRep.sort_key)
    categories = categories or {x: "alcove" for x in alcoves}
    labels = sorted({categories[x] for x in alcoves}, key=lambda c: (len(str(c)), str(c)))
    colormap = plt.get_cmap("tab20")
    colours = {label: colormap(i % 20) for i, label in enumerate(labels)}
    embedding = _embedding(group)

    plt.rcParams["svg.hashsalt"] = "tiltcell"
    fig, ax = plt.subplots(figsize=(8, 8))
    for x in alcoves:
        points = np.array([[float(c) for c in v] for v in alcove_vertices(group, x)]) @ embedding
        ax.add_patch(
            plt.Polygon(points, facecolor=colours[categories[x]], edgecolor="black", linewidth=0.5)
        )
        centre = points.mean(axis=0)
        ax.annotate(x.label, centre, fontsize=5, ha="center", va="center")
    if labels:
        ax.legend(handles=[Patch(facecolor=colours[c], label=str(c)) for c in labels], loc="upper right")
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.set_title(title or f"{group.name}, l = {group.level}")
    ax.axis("off")

    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()
