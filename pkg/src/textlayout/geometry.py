"""Core layout data model: boxes, text lines, validation, and IoU."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

# Printable ASCII: 26 uppercase + 26 lowercase + 10 digits + 32 punctuation + space.
ALPHABET = frozenset(chr(c) for c in range(32, 127))

DEFAULT_CANVAS_SIDE = 128


@dataclass(frozen=True)
class Canvas:
    side: int = DEFAULT_CANVAS_SIDE

    def __post_init__(self):
        if self.side <= 0:
            raise ValueError(f"canvas side must be positive, got {self.side}")


@dataclass(frozen=True)
class BoxLTRB:
    left: int
    top: int
    right: int
    bottom: int

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.bottom - self.top

    @property
    def area(self) -> int:
        return self.width * self.height

    def translated(self, dx: int, dy: int) -> "BoxLTRB":
        return BoxLTRB(self.left + dx, self.top + dy, self.right + dx, self.bottom + dy)


@dataclass(frozen=True)
class CenterPoint:
    x: int
    y: int


@dataclass(frozen=True)
class TopLeftPoint:
    x: int
    y: int


@dataclass(frozen=True)
class LTRBAngle:
    box: BoxLTRB
    angle: int  # degrees, -90..90


@dataclass(frozen=True)
class QuadBox:
    """Four vertices starting top-left, clockwise: (x0,y0) .. (x3,y3)."""

    x0: int
    y0: int
    x1: int
    y1: int
    x2: int
    y2: int
    x3: int
    y3: int

    def coords(self) -> tuple[int, ...]:
        return (self.x0, self.y0, self.x1, self.y1, self.x2, self.y2, self.x3, self.y3)


BoxRepr = Union[BoxLTRB, CenterPoint, TopLeftPoint, LTRBAngle, QuadBox]


@dataclass(frozen=True)
class TextLine:
    text: str
    box: BoxRepr


@dataclass(frozen=True)
class Layout:
    lines: tuple[TextLine, ...] = ()
    canvas: Canvas = field(default_factory=Canvas)

    def __len__(self) -> int:
        return len(self.lines)

    def replace_lines(self, lines) -> "Layout":
        return Layout(tuple(lines), self.canvas)


@dataclass(frozen=True)
class Violation:
    line: Optional[int]
    message: str
    severity: str = "error"  # "error" | "warning"


def bounding_ltrb(box: BoxRepr) -> BoxLTRB:
    """Axis-aligned bounding rectangle of any representation (points degenerate)."""
    if isinstance(box, BoxLTRB):
        return box
    if isinstance(box, (CenterPoint, TopLeftPoint)):
        return BoxLTRB(box.x, box.y, box.x, box.y)
    if isinstance(box, LTRBAngle):
        return box.box
    if isinstance(box, QuadBox):
        xs = box.coords()[0::2]
        ys = box.coords()[1::2]
        return BoxLTRB(min(xs), min(ys), max(xs), max(ys))
    raise TypeError(f"not a box representation: {box!r}")


def _check_coords_in_range(values, side: int) -> bool:
    return all(0 <= v <= side for v in values)


def validate_layout(layout: Layout) -> list[Violation]:
    """Check every structural invariant; an empty result means the layout is ok.

    Zero-area boxes are flagged at warning severity only.
    """
    out: list[Violation] = []
    side = layout.canvas.side
    for i, line in enumerate(layout.lines):
        if not line.text:
            out.append(Violation(i, "content is empty"))
        elif line.text != line.text.strip():
            out.append(Violation(i, "content has leading/trailing whitespace"))
        bad = [c for c in line.text if c not in ALPHABET]
        if bad:
            out.append(Violation(i, f"content contains non-alphabet characters {bad!r}"))

        box = line.box
        if isinstance(box, (BoxLTRB, LTRBAngle)):
            rect = box if isinstance(box, BoxLTRB) else box.box
            if rect.left > rect.right:
                out.append(Violation(i, "left > right"))
            if rect.top > rect.bottom:
                out.append(Violation(i, "top > bottom"))
            if rect.left < 0 or rect.top < 0:
                out.append(Violation(i, "coordinate below 0"))
            if rect.right > side or rect.bottom > side:
                out.append(Violation(i, f"coordinate exceeds canvas side {side}"))
            if rect.left <= rect.right and rect.top <= rect.bottom and rect.area == 0:
                out.append(Violation(i, "zero-area box", severity="warning"))
            if isinstance(box, LTRBAngle) and not -90 <= box.angle <= 90:
                out.append(Violation(i, f"angle {box.angle} outside [-90, 90]"))
        elif isinstance(box, (CenterPoint, TopLeftPoint)):
            if not _check_coords_in_range((box.x, box.y), side):
                out.append(Violation(i, f"point outside [0, {side}]"))
        elif isinstance(box, QuadBox):
            if not _check_coords_in_range(box.coords(), side):
                out.append(Violation(i, f"quad vertex outside [0, {side}]"))
        else:
            out.append(Violation(i, f"unknown box representation {type(box).__name__}"))
    return out


def layout_ok(layout: Layout) -> bool:
    return not any(v.severity == "error" for v in validate_layout(layout))


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def normalize_box(pixel_box: BoxLTRB, source_side: int, canvas: Canvas) -> BoxLTRB:
    """Map a pixel-space box onto the grid canvas (round half-up, then clamp)."""
    if source_side <= 0:
        raise ValueError(f"source_side must be positive, got {source_side}")
    side = canvas.side

    def conv(c: int) -> int:
        v = _round_half_up(c * side / source_side)
        return max(0, min(side, v))

    l, t, r, b = (conv(c) for c in (pixel_box.left, pixel_box.top, pixel_box.right, pixel_box.bottom))
    if l > r:
        l, r = r, l
    if t > b:
        t, b = b, t
    return BoxLTRB(l, t, r, b)


def box_iou(a: BoxLTRB, b: BoxLTRB) -> float:
    """Intersection over union of two closed rectangles; 0 when the union is empty."""
    iw = min(a.right, b.right) - max(a.left, b.left)
    ih = min(a.bottom, b.bottom) - max(a.top, b.top)
    inter = max(0, iw) * max(0, ih)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    return inter / union


def max_pairwise_iou(layout: Layout) -> Optional[float]:
    """Maximum IoU over all box pairs; None for layouts with fewer than 2 lines.

    Non-rectangular representations contribute their bounding rectangle.
    """
    boxes = [bounding_ltrb(line.box) for line in layout.lines]
    if len(boxes) < 2:
        return None
    best = 0.0
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            best = max(best, box_iou(boxes[i], boxes[j]))
    return best
