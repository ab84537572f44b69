# --- START OF FILE svg_plot.py ---
"""
SVG picture of a point cloud with its minimizing ball (1D and 2D systems).
"""

import xml.etree.ElementTree as ET

import numpy as np

import constants
from debug_logging import log_debug
from models import DensityRecord
from pointcloud import PointCloud

SVG_NS = "http://www.w3.org/2000/svg"

POINT_COLOR = "#3a5a8c"
BALL_COLOR = "#c0392b"
CENTER_COLOR = "#e67e22"
WITNESS_COLOR = "#27ae60"


def build_svg(cloud: PointCloud, record: DensityRecord) -> ET.Element:
    """
    Dots with area proportional to weight, the ball as a circle, centre and witness
    highlighted. The view is the cloud's bounding box padded by d~.

    Raises:
        ValueError: for clouds in three or more dimensions.
    """
    n = cloud.coords.shape[1]
    if n > 2:
        raise ValueError(f"SVG output supports 1D and 2D systems only (this system is {n}D)")

    coords = np.zeros((cloud.size, 2))
    coords[:, :n] = cloud.coords
    center = np.zeros(2)
    center[:n] = record.center.coords
    witness = np.zeros(2)
    witness[:n] = record.witness.coords

    pad = record.d_tilde
    lo = coords.min(axis=0) - pad
    hi = coords.max(axis=0) + pad
    span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    scale = constants.SVG_CANVAS_PX / span
    width = (hi[0] - lo[0]) * scale
    height = (hi[1] - lo[1]) * scale

    def to_px(p):
        # y axis points up in the plane, down on the canvas
        return (p[0] - lo[0]) * scale, (hi[1] - p[1]) * scale

    svg = ET.Element("svg", {
        "xmlns": SVG_NS,
        "width": f"{width:.2f}",
        "height": f"{height:.2f}",
        "viewBox": f"0 0 {width:.2f} {height:.2f}",
    })
    ET.SubElement(svg, "title").text = (
        f"generation {record.generation}: m~ = {record.m_tilde:.6g}, d~ = {record.d_tilde:.6g}")
    ET.SubElement(svg, "rect", {"width": "100%", "height": "100%", "fill": "white"})

    dots = ET.SubElement(svg, "g", {"fill": POINT_COLOR})
    max_weight = float(cloud.weights.max())
    for p, w in zip(coords, cloud.weights):
        x, y = to_px(p)
        r = constants.SVG_MAX_DOT_PX * np.sqrt(w / max_weight)
        ET.SubElement(dots, "circle", {"cx": f"{x:.3f}", "cy": f"{y:.3f}", "r": f"{r:.3f}"})

    cx, cy = to_px(center)
    ET.SubElement(svg, "circle", {
        "cx": f"{cx:.3f}", "cy": f"{cy:.3f}", "r": f"{record.d_tilde * scale:.3f}",
        "fill": "none", "stroke": BALL_COLOR, "stroke-width": "1.5",
    })
    for p, color, role in ((center, CENTER_COLOR, "center"), (witness, WITNESS_COLOR, "witness")):
        x, y = to_px(p)
        ET.SubElement(svg, "circle", {
            "class": role, "cx": f"{x:.3f}", "cy": f"{y:.3f}",
            "r": f"{constants.SVG_MAX_DOT_PX + 2:.3f}", "fill": "none", "stroke": color, "stroke-width": "2",
        })
    return svg


def write_svg(cloud: PointCloud, record: DensityRecord, path) -> None:
    svg = build_svg(cloud, record)
    ET.ElementTree(svg).write(path, encoding="utf-8", xml_declaration=True)
    log_debug("MAIN", f"SVG with {cloud.size} points written to '{path}'")

# --- END OF FILE svg_plot.py ---
