"""Text serialization of layouts and the planner prompt template.

The wire format is one line per text entry: the content verbatim, a single
space, then a comma-separated coordinate group whose arity is fixed by the
representation variant.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .geometry import (
    BoxLTRB,
    BoxRepr,
    Canvas,
    CenterPoint,
    LTRBAngle,
    Layout,
    QuadBox,
    TextLine,
    TopLeftPoint,
    _round_half_up,
)


class ReprVariant(enum.Enum):
    LTRB = "ltrb"
    CENTER = "center"
    TOP_LEFT = "lt"
    LTRB_ANGLE = "ltrb_angle"
    QUAD = "quad"


COORD_ARITY = {
    ReprVariant.LTRB: 4,
    ReprVariant.CENTER: 2,
    ReprVariant.TOP_LEFT: 2,
    ReprVariant.LTRB_ANGLE: 5,
    ReprVariant.QUAD: 8,
}


class GrammarError(Exception):
    pass


class MalformedLine(GrammarError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"line {index}: {reason}")


class AngleOutOfRange(GrammarError):
    def __init__(self, index: int, angle: int):
        self.index = index
        self.angle = angle
        super().__init__(f"line {index}: angle {angle} outside [-90, 90]")


class ConversionError(GrammarError):
    pass


def task_description() -> str:
    """The fixed task-description preamble, shipped as a versioned resource."""
    text = resources.files("textlayout.data").joinpath("task_description.txt").read_text("utf-8")
    return text.rstrip("\n")


@dataclass(frozen=True)
class PlannerPrompt:
    prompt: str
    keywords: Optional[tuple[str, ...]] = None
    description: str = field(default_factory=task_description)


def build_planner_prompt(request: PlannerPrompt) -> str:
    out = f"{request.description} Prompt: {request.prompt}"
    if request.keywords:
        out += " Keywords: " + ", ".join(request.keywords)
    return out


def box_to_coords(box: BoxRepr, variant: ReprVariant) -> list[int]:
    """Project a box onto the coordinate group of the requested variant."""
    if variant is ReprVariant.LTRB:
        if isinstance(box, BoxLTRB):
            return [box.left, box.top, box.right, box.bottom]
        if isinstance(box, LTRBAngle):
            return [box.box.left, box.box.top, box.box.right, box.box.bottom]
    elif variant is ReprVariant.CENTER:
        if isinstance(box, CenterPoint):
            return [box.x, box.y]
        if isinstance(box, BoxLTRB):
            return [_round_half_up((box.left + box.right) / 2), _round_half_up((box.top + box.bottom) / 2)]
    elif variant is ReprVariant.TOP_LEFT:
        if isinstance(box, TopLeftPoint):
            return [box.x, box.y]
        if isinstance(box, BoxLTRB):
            return [box.left, box.top]
    elif variant is ReprVariant.LTRB_ANGLE:
        if isinstance(box, LTRBAngle):
            return [box.box.left, box.box.top, box.box.right, box.box.bottom, box.angle]
        if isinstance(box, BoxLTRB):
            return [box.left, box.top, box.right, box.bottom, 0]
    elif variant is ReprVariant.QUAD:
        if isinstance(box, QuadBox):
            return list(box.coords())
        if isinstance(box, BoxLTRB):
            return [box.left, box.top, box.right, box.top, box.right, box.bottom, box.left, box.bottom]
    raise ConversionError(f"cannot represent {type(box).__name__} as {variant.value}")


def coords_to_box(coords: list[int], variant: ReprVariant) -> BoxRepr:
    if variant is ReprVariant.LTRB:
        return BoxLTRB(*coords)
    if variant is ReprVariant.CENTER:
        return CenterPoint(*coords)
    if variant is ReprVariant.TOP_LEFT:
        return TopLeftPoint(*coords)
    if variant is ReprVariant.LTRB_ANGLE:
        return LTRBAngle(BoxLTRB(*coords[:4]), coords[4])
    if variant is ReprVariant.QUAD:
        return QuadBox(*coords)
    raise ConversionError(f"unknown variant {variant!r}")


def serialize_layout(layout: Layout, variant: ReprVariant = ReprVariant.LTRB) -> str:
    lines = []
    for i, line in enumerate(layout.lines):
        content = line.text.strip()
        if not content:
            raise MalformedLine(i, "content is empty after canonicalization")
        coords = box_to_coords(line.box, variant)
        lines.append(f"{content} {','.join(str(c) for c in coords)}")
    return "\n".join(lines)


@dataclass(frozen=True)
class ParseWarning:
    line: int
    message: str


@dataclass
class ParseResult:
    layout: Layout
    warnings: list[ParseWarning]


def _coord_group_pattern(arity: int) -> re.Pattern:
    num = r"-?\d+"
    group = num + (r"\s*,\s*" + num) * (arity - 1)
    # Greedy content pushes the coordinate group as far right as possible,
    # so the group is the maximal trailing run of exactly `arity` integers.
    return re.compile(rf"^(.*\S)\s+({group})\s*$")


def _parse_line(raw: str, index: int, variant: ReprVariant, canvas: Canvas, warnings: list[ParseWarning]):
    arity = COORD_ARITY[variant]
    m = _coord_group_pattern(arity).match(raw)
    if not m:
        # Count what trailing integers exist, for a useful diagnostic.
        found = re.search(r"((?:-?\d+\s*,\s*)*-?\d+)\s*$", raw)
        n = len(found.group(1).split(",")) if found else 0
        raise MalformedLine(index, f"expected {arity} coordinates, found {n}")
    content = m.group(1).strip()
    if not content:
        raise MalformedLine(index, "content is empty")
    coords = [int(p) for p in re.split(r"\s*,\s*", m.group(2))]

    side = canvas.side
    if variant is ReprVariant.LTRB_ANGLE:
        angle = coords[4]
        if not -90 <= angle <= 90:
            raise AngleOutOfRange(index, angle)
        spatial = coords[:4]
    else:
        spatial = coords

    clamped = [max(0, min(side, c)) for c in spatial]
    if clamped != spatial:
        warnings.append(ParseWarning(index, f"coordinates clamped to [0, {side}]"))
    if variant in (ReprVariant.LTRB, ReprVariant.LTRB_ANGLE):
        l, t, r, b = clamped
        if l > r:
            l, r = r, l
            warnings.append(ParseWarning(index, "left/right swapped"))
        if t > b:
            t, b = b, t
            warnings.append(ParseWarning(index, "top/bottom swapped"))
        clamped = [l, t, r, b]
    if variant is ReprVariant.LTRB_ANGLE:
        clamped = clamped + [coords[4]]
    return TextLine(content, coords_to_box(clamped, variant))


def parse_layout(
    text: str,
    variant: ReprVariant = ReprVariant.LTRB,
    canvas: Canvas = Canvas(),
    strict: bool = False,
) -> ParseResult:
    """Parse the line-per-entry layout format.

    Lenient mode (default) records unparseable lines as warnings and keeps
    going, which tolerates prose or fencing around model output. Strict mode
    raises on the first malformed line.
    """
    warnings: list[ParseWarning] = []
    lines: list[TextLine] = []
    for i, raw in enumerate(text.split("\n")):
        if not raw.strip():
            continue
        try:
            lines.append(_parse_line(raw, i, variant, canvas, warnings))
        except GrammarError as e:
            if strict:
                raise
            warnings.append(ParseWarning(i, str(e)))
    return ParseResult(Layout(tuple(lines), canvas), warnings)
