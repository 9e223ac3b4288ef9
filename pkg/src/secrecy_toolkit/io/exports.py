"""Writers for region CSVs, halfplane sidecars, FM traces and simulation reports."""

import csv
from pathlib import Path
from typing import Iterable, Optional, Sequence

from secrecy_toolkit.polyhedral.fourier_motzkin import EliminationStep
from secrecy_toolkit.polyhedral.system import LinSystem
from secrecy_toolkit.regions.geometry import HalfPlane, RateRegion2D, RegionUnion, Vertex
from secrecy_toolkit.sim.trials import SimulationReport
from secrecy_toolkit.utils.exceptions import OutputWriteError, SpecFieldError
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("io.exports")

CSV_HEADER = ("R1", "R2")
HALFPLANE_SUFFIX = ".halfplanes.txt"


def format_number(value: float, digits: Optional[int] = None) -> str:
    """``value`` with ``digits`` significant digits; negative zero prints as 0."""
    digits = settings.csv_significant_digits if digits is None else digits
    text = f"{float(value):.{digits}g}"
    return "0" if text in ("-0", "0") else text


def _write_text(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OutputWriteError(path, e.strerror or str(e)) from e
    logger.debug(f"Wrote {path}")
    return path


def sidecar_path(csv_path: Path | str) -> Path:
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.stem + HALFPLANE_SUFFIX)


def region_rings(region: RateRegion2D | RegionUnion) -> list[list[Vertex]]:
    """Vertex rings of a region, counterclockwise."""
    if isinstance(region, RegionUnion):
        return region.outline()
    return [list(region.vertices)]


def region_halfplanes(region: RateRegion2D | RegionUnion) -> tuple[list[HalfPlane], bool]:
    """Halfplanes describing ``region`` and whether they describe it exactly.

    A union only has an exact description when its outline is one convex
    ring; otherwise its convex hull is given.
    """
    if isinstance(region, RateRegion2D):
        return list(region.halfplanes), True
    hull = region.convex_hull()
    exact = region.contains_region(hull, tol=settings.vertex_tolerance)
    return list(hull.halfplanes), exact


def write_region_csv(
    region: RateRegion2D | RegionUnion, path: Path | str, digits: Optional[int] = None
) -> tuple[Path, Path]:
    """
    Write the vertex CSV and its halfplane sidecar.

    A union with several disjoint parts is written ring after ring, each
    ring after a ``# ring k`` comment line.

    Returns:
        (csv path, sidecar path)
    """
    path = Path(path)
    rings = region_rings(region)
    lines = [",".join(CSV_HEADER)]
    for k, ring in enumerate(rings):
        if len(rings) > 1:
            lines.append(f"# ring {k}")
        lines += [f"{format_number(x, digits)},{format_number(y, digits)}" for x, y in ring]
    _write_text(path, "\n".join(lines) + "\n")

    planes, exact = region_halfplanes(region)
    body = [] if exact else ["# union is not convex; halfplanes of its convex hull"]
    body += [_format_halfplane(h, digits) for h in planes]
    sidecar = _write_text(sidecar_path(path), "\n".join(body) + "\n")
    logger.info(f"Wrote region with {sum(len(r) for r in rings)} vertices to {path}")
    return path, sidecar


def _format_halfplane(h: HalfPlane, digits: Optional[int]) -> str:
    return f"{format_number(h.a, digits)}*R1 + {format_number(h.b, digits)}*R2 <= {format_number(h.c, digits)}"


def read_region_csv(path: Path | str) -> list[list[Vertex]]:
    """Rings of a CSV written by ``write_region_csv``."""
    path = Path(path)
    rings: list[list[Vertex]] = [[]]
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
            raise SpecFieldError(path, "header", f"expected {','.join(CSV_HEADER)}")
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if row[0].startswith("#"):
                if rings[-1]:
                    rings.append([])
                continue
            try:
                rings[-1].append((float(row[0]), float(row[1])))
            except (IndexError, ValueError) as e:
                raise SpecFieldError(path, f"row {row_no}", f"expected two numbers, got {row}") from e
    return [ring for ring in rings if ring]


def write_system(system: LinSystem, path: Path | str, comment: str = "") -> Path:
    header = [f"# {line}" for line in comment.splitlines()] if comment else []
    return _write_text(Path(path), "\n".join(header + [system.format()]) + "\n")


def format_fm_trace(initial: LinSystem, steps: Sequence[EliminationStep]) -> str:
    """Initial system, then each step's header and the system after it."""
    parts = [
        f"# initial system: {len(initial.ineqs)} rows over {len(initial.vars)} variables",
        initial.format(),
    ]
    for step in steps:
        parts += ["", f"# {step.header()}", step.system.format()]
    if steps:
        final_vars = ", ".join(steps[-1].system.vars)
        parts += ["", f"# remaining variables: {final_vars}"]
    return "\n".join(parts) + "\n"


def write_fm_trace(initial: LinSystem, steps: Iterable[EliminationStep], path: Path | str) -> Path:
    return _write_text(Path(path), format_fm_trace(initial, list(steps)))


def write_report(report: SimulationReport, out_dir: Path | str) -> tuple[Path, Path]:
    """Write ``report.txt`` and ``events.csv`` into ``out_dir``."""
    out_dir = Path(out_dir)
    text = _write_text(out_dir / "report.txt", report.to_text())
    events = _write_text(out_dir / "events.csv", report.events_csv())
    return text, events
