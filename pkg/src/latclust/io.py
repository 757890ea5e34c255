"""Data ingestion, synthetic blob generation, and result emission.

External formats:
  - points CSV: one object per row, numeric feature columns, optional label
    column, optional header row (never sniffed, always an explicit flag);
  - distance CSV: square numeric matrix;
  - result JSON / curve TSV / plot SVG as emitted below. All writers are
    deterministic byte-for-byte for identical inputs.
"""

import csv
import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .dynamics import ClusteringResult
from .errors import GenerationError, ParameterError, ParseError, ValidationError
from .model import DistanceMatrix, PointSet
from .sweep import SweepCurve, SweepSample

SYMMETRY_RTOL = 1e-9
DIAGONAL_ATOL = 1e-12
CENTER_ATTEMPTS = 1000


def _read_rows(path):
    with open(path, newline="") as fh:
        return [(lineno, row) for lineno, row in enumerate(csv.reader(fh), start=1)
                if row and any(cell.strip() for cell in row)]


def read_points_csv(path, has_header: bool = False, label_column: int = None):
    """Read a points CSV; returns (PointSet, labels-or-None).

    The label column, when present, is held out as opaque strings for
    evaluation only; it never participates in clustering.
    """
    rows = _read_rows(path)
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ParseError("file contains no data rows", line=1)
    width = len(rows[0][1])
    if label_column is not None and not 0 <= label_column < width:
        raise ParameterError(f"label column {label_column} out of range for {width} columns")
    features = []
    labels = []
    for lineno, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", line=lineno)
        cells = list(row)
        if label_column is not None:
            labels.append(cells.pop(label_column))
        try:
            features.append([float(c) for c in cells])
        except ValueError:
            bad = next(i for i, c in enumerate(cells) if not _is_float(c))
            raise ParseError(f"non-numeric feature cell {cells[bad]!r} in column {bad}",
                             line=lineno) from None
    return PointSet(np.array(features)), (np.array(labels) if label_column is not None else None)


def _is_float(cell):
    try:
        float(cell)
        return True
    except ValueError:
        return False


def read_distance_csv(path) -> DistanceMatrix:
    """Read and validate a square distance matrix.

    Mirrored entries may differ within 1e-9 relative (they are averaged);
    diagonal entries may differ from 0 within 1e-12 (they are zeroed);
    negative entries are rejected outright.
    """
    rows = _read_rows(path)
    if not rows:
        raise ParseError("file contains no data rows", line=1)
    values = []
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", line=lineno)
        try:
            values.append([float(c) for c in row])
        except ValueError:
            bad = next(i for i, c in enumerate(row) if not _is_float(c))
            raise ParseError(f"non-numeric cell {row[bad]!r} in column {bad}", line=lineno) from None
    d = np.array(values)
    if d.shape[0] != d.shape[1]:
        raise ValidationError(f"distance matrix must be square, got {d.shape[0]}x{d.shape[1]}")
    gap = np.abs(d - d.T)
    tol = SYMMETRY_RTOL * np.maximum(np.abs(d), np.abs(d.T))
    if (gap > tol).any():
        i, j = np.argwhere(gap > tol)[0]
        raise ValidationError(f"asymmetry beyond tolerance at ({i}, {j})/({j}, {i})")
    if (d < 0).any():
        i, j = np.argwhere(d < 0)[0]
        raise ValidationError(f"negative entry at ({i}, {j})")
    diag = np.abs(np.diagonal(d))
    if (diag > DIAGONAL_ATOL).any():
        i = int(np.flatnonzero(diag > DIAGONAL_ATOL)[0])
        raise ValidationError(f"nonzero diagonal entry at ({i}, {i})")
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


@dataclass(frozen=True)
class BlobSpec:
    """Parameters for the seeded Gaussian-blob generator."""

    clusters: int
    points_per_cluster: int
    sigma: float
    dim: int = 2
    center_box: float = 10.0
    seed: int = 0
    min_center_separation: float = 0.0

    def __post_init__(self):
        if self.clusters < 1 or self.points_per_cluster < 1 or self.dim < 1:
            raise ParameterError("clusters, points_per_cluster, and dim must all be >= 1")
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")
        if self.min_center_separation < 0:
            raise ParameterError("min_center_separation must be >= 0")
        if not self.center_box > 0:
            raise ParameterError(f"center_box must be > 0, got {self.center_box}")


def gen_blobs(spec: BlobSpec):
    """Sample isotropic Gaussian blobs; returns (PointSet, true labels).

    Cluster centers are drawn uniformly from the center box and rejected
    until all pairwise separations reach spec.min_center_separation. The
    stream is PCG64 seeded with spec.seed, so a given seed reproduces the
    same bytes on every platform.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    centers = None
    for _ in range(CENTER_ATTEMPTS):
        cand = rng.uniform(-spec.center_box, spec.center_box, size=(spec.clusters, spec.dim))
        if spec.clusters == 1:
            centers = cand
            break
        diff = cand[:, None, :] - cand[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=-1))
        np.fill_diagonal(dist, np.inf)
        if dist.min() >= spec.min_center_separation:
            centers = cand
            break
    if centers is None:
        raise GenerationError(
            f"could not place {spec.clusters} centers at separation "
            f">= {spec.min_center_separation} in a box of half-width {spec.center_box} "
            f"after {CENTER_ATTEMPTS} attempts"
        )
    n = spec.clusters * spec.points_per_cluster
    labels = np.repeat(np.arange(spec.clusters), spec.points_per_cluster)
    points = centers[labels] + rng.normal(0.0, spec.sigma, size=(n, spec.dim))
    return PointSet(points), labels


def load_iris():
    """The classical 150x4 iris measurements with species labels (bundled asset)."""
    ref = resources.files("latclust").joinpath("data/iris.csv")
    features = []
    labels = []
    with ref.open(newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            features.append([float(c) for c in row[:4]])
            labels.append(row[4])
    return PointSet(np.array(features)), np.array(labels)


def write_result_json(result: ClusteringResult, path):
    """Emit one clustering result as JSON with fixed key order."""
    doc = {
        "t": result.t,
        "alpha": result.alpha,
        "k": result.k,
        "centers": [int(c) for c in result.centers],
        "labels": [int(x) for x in result.labels],
        "class_sizes": [int(x) for x in result.class_sizes],
        "iters": result.iters,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_result_json(path) -> ClusteringResult:
    with open(path) as fh:
        doc = json.load(fh)
    return ClusteringResult(
        centers=list(doc["centers"]),
        labels=np.array(doc["labels"], dtype=np.intp),
        k=int(doc["k"]),
        t=float(doc["t"]),
        alpha=float(doc["alpha"]),
        iters=int(doc["iters"]),
        class_sizes=np.array(doc["class_sizes"], dtype=np.intp),
    )


def write_curve_tsv(curve: SweepCurve, path):
    """Emit the K(T) samples as TSV (full float precision, one row per sample)."""
    lines = ["t\tk_raw\tk_filtered\tconverged"]
    for s in curve.samples:
        lines.append(f"{s.t!r}\t{s.k_raw}\t{s.k_filtered}\t{1 if s.converged else 0}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_curve_tsv(path, min_class_size: int = 1) -> SweepCurve:
    with open(path) as fh:
        lines = fh.read().splitlines()
    samples = []
    for line in lines[1:]:
        t, k_raw, k_filtered, converged = line.split("\t")
        samples.append(SweepSample(float(t), int(k_raw), int(k_filtered), converged == "1"))
    return SweepCurve(samples=samples, min_class_size=min_class_size)


def write_plateau_json(plateaus, path):
    """Emit the plateau report (already ranked by the caller)."""
    doc = {
        "plateaus": [
            {
                "k": p.k,
                "t_start": p.t_start,
                "t_end": p.t_end,
                "width": p.width,
                "sample_count": p.sample_count,
            }
            for p in plateaus
        ]
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# SVG rendering


WIDTH, HEIGHT = 800, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 20, 20, 48
RAW_COLOR = "#1f6fb4"
FILTERED_COLOR = "#c44e52"
PLATEAU_COLOR = "#2a2a2a"


def render_curve_svg(curve: SweepCurve, plateaus, path):
    """Render the K(T) step plot with the widest plateaus annotated.

    Output is a self-contained vector file and is byte-identical for
    identical inputs. The raw count is always drawn; the filtered count is
    added when it differs anywhere. At most three plateau annotations are
    drawn, widest first.
    """
    samples = curve.samples
    if not samples:
        raise ParameterError("curve has no samples")
    t_lo, t_hi = samples[0].t, samples[-1].t
    span = (t_hi - t_lo) or 1.0
    converged = [s for s in samples if s.converged]
    k_top = max([max(s.k_raw, s.k_filtered) for s in converged], default=1)
    k_top = max(k_top, 1)

    def sx(t):
        return MARGIN_L + (t - t_lo) / span * (WIDTH - MARGIN_L - MARGIN_R)

    def sy(k):
        usable = HEIGHT - MARGIN_T - MARGIN_B
        return HEIGHT - MARGIN_B - k / (k_top * 1.05) * usable

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    axis_y = HEIGHT - MARGIN_B
    parts.append(f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{axis_y}" '
                 'stroke="black" stroke-width="1"/>')
    parts.append(f'<line x1="{MARGIN_L}" y1="{axis_y}" x2="{WIDTH - MARGIN_R}" y2="{axis_y}" '
                 'stroke="black" stroke-width="1"/>')

    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        t = t_lo + frac * span
        x = sx(t)
        parts.append(f'<line x1="{x:.2f}" y1="{axis_y}" x2="{x:.2f}" y2="{axis_y + 5}" '
                     'stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{x:.2f}" y="{axis_y + 20}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="middle">{t:.3g}</text>')
    k_step = max(1, int(np.ceil(k_top / 8)))
    for k in range(0, k_top + 1, k_step):
        y = sy(k)
        parts.append(f'<line x1="{MARGIN_L - 5}" y1="{y:.2f}" x2="{MARGIN_L}" y2="{y:.2f}" '
                     'stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{MARGIN_L - 9}" y="{y + 4:.2f}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="end">{k}</text>')
    parts.append(f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) / 2:.2f}" y="{HEIGHT - 10}" '
                 'font-family="sans-serif" font-size="13" text-anchor="middle">'
                 'interaction threshold T</text>')
    parts.append(f'<text x="16" y="{(MARGIN_T + axis_y) / 2:.2f}" font-family="sans-serif" '
                 f'font-size="13" text-anchor="middle" '
                 f'transform="rotate(-90 16 {(MARGIN_T + axis_y) / 2:.2f})">classes K</text>')

    show_filtered = any(s.k_filtered != s.k_raw for s in converged)
    parts.append(_step_path(samples, sx, sy, lambda s: s.k_raw, RAW_COLOR, None))
    if show_filtered:
        parts.append(_step_path(samples, sx, sy, lambda s: s.k_filtered, FILTERED_COLOR, "6 3"))

    for s in samples:
        if not s.converged:
            x = sx(s.t)
            parts.append(f'<line x1="{x - 4:.2f}" y1="{axis_y - 4}" x2="{x + 4:.2f}" '
                         f'y2="{axis_y + 4}" stroke="red" stroke-width="1.5"/>')
            parts.append(f'<line x1="{x - 4:.2f}" y1="{axis_y + 4}" x2="{x + 4:.2f}" '
                         f'y2="{axis_y - 4}" stroke="red" stroke-width="1.5"/>')

    ranked = sorted(plateaus, key=lambda p: (-p.width, p.k, p.t_start))[:3]
    for p in ranked:
        x0, x1, y = sx(p.t_start), sx(p.t_end), sy(p.k)
        parts.append(f'<line x1="{x0:.2f}" y1="{y:.2f}" x2="{x1:.2f}" y2="{y:.2f}" '
                     f'stroke="{PLATEAU_COLOR}" stroke-width="4" stroke-opacity="0.35"/>')
        parts.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{y - 7:.2f}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="middle" fill="{PLATEAU_COLOR}">K={p.k}</text>')

    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def _step_path(samples, sx, sy, pick, color, dash):
    cmds = []
    pen_down = False
    prev = None
    for s in samples:
        if not s.converged:
            pen_down = False
            prev = None
            continue
        x, y = sx(s.t), sy(pick(s))
        if not pen_down:
            cmds.append(f"M {x:.2f} {y:.2f}")
            pen_down = True
        else:
            cmds.append(f"H {x:.2f}")
            if y != prev:
                cmds.append(f"V {y:.2f}")
        prev = y
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<path d="{" ".join(cmds)}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"{dash_attr}/>')
