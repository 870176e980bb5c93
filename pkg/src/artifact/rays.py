"""Stokes ray diagrams: a JSON table and an SVG picture."""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

from .stokes import RayDiagram, stokes_rays


def _pi_text(a: Fraction) -> str:
    if a == 0:
        return "0"
    num = "" if abs(a.numerator) == 1 else str(abs(a.numerator))
    sign = "-" if a < 0 else ""
    body = f"{num}pi" if num else "pi"
    return sign + (body if a.denominator == 1 else f"{body}/{a.denominator}")


def ray_table(diagram: RayDiagram) -> dict:
    rows = []
    for r in sorted(diagram.rays, key=lambda r: (r.angle_pi, r.r, r.s)):
        rows.append(
            {
                "label": r.label,
                "r": r.r,
                "s": r.s,
                "angle_pi": str(r.angle_pi),
                "angle": _pi_text(r.angle_pi),
                "radians": r.radians,
            }
        )
    return {
        "k": diagram.k,
        "im_t2": diagram.im_t2,
        "admissible_line_pi": str(diagram.epsilon_pi),
        "directions": len({r.angle_pi for r in diagram.rays}),
        "rays": rows,
    }


def render_svg(diagram: RayDiagram, out: str | Path) -> Path:
    """Draw the rays, label each with all R_rs on it, and dash the line at eps."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "stokes-rays"
    fig, ax = plt.subplots(figsize=(6, 6))
    groups: dict[float, list[str]] = {}
    for r in diagram.rays:
        groups.setdefault(round(r.radians, 12), []).append(r.label)
    for ang, labels in sorted(groups.items()):
        ax.plot([0, math.cos(ang)], [0, math.sin(ang)], color="black", lw=1)
        ax.text(
            1.12 * math.cos(ang),
            1.12 * math.sin(ang),
            "\n".join(sorted(labels)),
            ha="center",
            va="center",
            fontsize=7,
        )
    eps = float(diagram.epsilon_pi) * math.pi
    ax.plot([-1.3 * math.cos(eps), 1.3 * math.cos(eps)], [-1.3 * math.sin(eps), 1.3 * math.sin(eps)], "--", color="tab:red", lw=1)
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"Stokes rays, k={diagram.k}")
    out = Path(out)
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
    return out


def rays(k: int, im_t2: float = 0.0, out: str | Path | None = None) -> dict:
    diagram = stokes_rays(k, im_t2)
    table = ray_table(diagram)
    if out is not None:
        table["svg"] = str(render_svg(diagram, out))
    return table
