"""Geometric moments, normalized central moments, and the moment descriptor.

Coordinate convention
---------------------
The first array index (rows) is the x axis and the second (columns) is
the y axis, so a raw moment of order (p, q) is sum_i sum_j i^p j^q I(i, j)
with i the row index. Transposing an image therefore swaps p and q and
permutes descriptor entries; every function in this module follows the
row-first convention.

Three discretization schemes are supported for the underlying mass model:

* ``RAW_GRID``          -- point masses on the integer grid (i, j);
* ``PIXEL_CENTER_DELTA``-- point masses at pixel centers (i + 1/2, j + 1/2);
* ``PIXEL_INTEGRATED_CONSTANT`` -- piecewise-constant intensity integrated
  analytically over each unit pixel cell.

Normalized central moments are invariant to translation and, in the
continuous model, to uniform scaling; the descriptor collects them over
the triangular index set p + q <= N minus the trivial entries (0,0),
(1,0), (0,1).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from math import comb, isfinite

import numpy as np

from .errors import DegenerateImageError, ParameterError
from .image import GrayImage

DEFAULT_ORDER = 4

#: Degenerate-mass threshold: images with total mass at or below
#: 1e-12 * (pixel count) have no usable centroid.
MASS_EPS_PER_PIXEL = 1e-12


class MomentScheme(enum.Enum):
    """Discretization scheme for the image mass model."""

    RAW_GRID = "raw_grid"
    PIXEL_CENTER_DELTA = "pixel_center_delta"
    PIXEL_INTEGRATED_CONSTANT = "pixel_integrated_constant"

    @classmethod
    def parse(cls, name: "str | MomentScheme") -> "MomentScheme":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        aliases = {
            "raw": cls.RAW_GRID,
            "raw_grid": cls.RAW_GRID,
            "grid": cls.RAW_GRID,
            "center": cls.PIXEL_CENTER_DELTA,
            "pixel_center": cls.PIXEL_CENTER_DELTA,
            "pixel_center_delta": cls.PIXEL_CENTER_DELTA,
            "integrated": cls.PIXEL_INTEGRATED_CONSTANT,
            "pixel_integrated": cls.PIXEL_INTEGRATED_CONSTANT,
            "pixel_integrated_constant": cls.PIXEL_INTEGRATED_CONSTANT,
        }
        if key not in aliases:
            valid = ", ".join(sorted({m.value for m in cls}))
            raise ParameterError(f"unknown moment scheme {name!r}; valid: {valid}")
        return aliases[key]


DEFAULT_SCHEME = MomentScheme.RAW_GRID

_TRIVIAL = ((0, 0), (1, 0), (0, 1))


def informative_indices(order: int) -> list[tuple[int, int]]:
    """Canonical descriptor index set: p + q <= order minus trivial entries.

    Sorted by (p + q, p) ascending so descriptors are comparable across
    processes and serializations.
    """
    if order < 2:
        raise ParameterError(f"descriptor order must be >= 2, got {order}")
    return [(p, s - p) for s in range(2, order + 1) for p in range(s + 1)]


def _axis_powers(n: int, order: int, scheme: MomentScheme) -> np.ndarray:
    """(order+1, n) matrix whose row k holds the per-cell weight of x^k."""
    k = np.arange(order + 1, dtype=np.float64)[:, None]
    idx = np.arange(n, dtype=np.float64)[None, :]
    if scheme is MomentScheme.RAW_GRID:
        return idx**k
    if scheme is MomentScheme.PIXEL_CENTER_DELTA:
        return (idx + 0.5) ** k
    # integral of x^k over [i, i+1]
    return ((idx + 1.0) ** (k + 1.0) - idx ** (k + 1.0)) / (k + 1.0)


def raw_moment_matrix(
    img: GrayImage, order: int, scheme: MomentScheme = DEFAULT_SCHEME
) -> np.ndarray:
    """All raw moments m[p, q] for p, q <= order, as an (order+1)^2 matrix."""
    if order < 0:
        raise ParameterError(f"moment order must be >= 0, got {order}")
    vx = _axis_powers(img.height, order, scheme)
    vy = _axis_powers(img.width, order, scheme)
    return vx @ img.data @ vy.T


def raw_moment(
    img: GrayImage, p: int, q: int, scheme: MomentScheme = DEFAULT_SCHEME
) -> float:
    """Raw geometric moment of order (p, q) under the given scheme."""
    if p < 0 or q < 0:
        raise ParameterError(f"moment orders must be >= 0, got ({p}, {q})")
    vx = _axis_powers(img.height, p, scheme)[p]
    vy = _axis_powers(img.width, q, scheme)[q]
    return float(vx @ img.data @ vy)


def mass_epsilon(img: GrayImage) -> float:
    return MASS_EPS_PER_PIXEL * img.height * img.width


def centroid(
    img: GrayImage, scheme: MomentScheme = DEFAULT_SCHEME
) -> tuple[float, float]:
    """Intensity center of mass (m10/m00, m01/m00).

    Raises
    ------
    DegenerateImageError
        If the total mass is at or below the degenerate threshold.
    """
    m = raw_moment_matrix(img, 1, scheme)
    m00 = m[0, 0]
    if m00 <= mass_epsilon(img):
        raise DegenerateImageError(
            f"image mass {m00:.3e} is below the degenerate threshold "
            f"{mass_epsilon(img):.3e}; centroid undefined"
        )
    return float(m[1, 0] / m00), float(m[0, 1] / m00)


def central_moment_matrix(
    img: GrayImage, order: int, scheme: MomentScheme = DEFAULT_SCHEME
) -> np.ndarray:
    """All central moments mu[p, q] for p, q <= order.

    For the point-mass schemes the sums are evaluated directly on
    centroid-shifted coordinates. For the integrated scheme the
    analytically integrated raw moments are re-centered through the
    binomial expansion

        mu_pq = sum_{a<=p, b<=q} C(p,a) C(q,b) (-x)^(p-a) (-y)^(q-b) m_ab,

    which is exact in real arithmetic and avoids per-pixel shifted
    integration.
    """
    xbar, ybar = centroid(img, scheme)
    if scheme is MomentScheme.PIXEL_INTEGRATED_CONSTANT:
        m = raw_moment_matrix(img, order, scheme)
        a = _recenter_matrix(order, xbar)
        b = _recenter_matrix(order, ybar)
        return a @ m @ b.T
    off = 0.5 if scheme is MomentScheme.PIXEL_CENTER_DELTA else 0.0
    k = np.arange(order + 1, dtype=np.float64)[:, None]
    x = np.arange(img.height, dtype=np.float64)[None, :] + off - xbar
    y = np.arange(img.width, dtype=np.float64)[None, :] + off - ybar
    return (x**k) @ img.data @ (y**k).T


def _recenter_matrix(order: int, center: float) -> np.ndarray:
    t = np.zeros((order + 1, order + 1))
    for p in range(order + 1):
        for a in range(p + 1):
            t[p, a] = comb(p, a) * (-center) ** (p - a)
    return t


def central_moment(
    img: GrayImage, p: int, q: int, scheme: MomentScheme = DEFAULT_SCHEME
) -> float:
    """Central moment mu_pq; translation invariant, mu10 = mu01 = 0."""
    if p < 0 or q < 0:
        raise ParameterError(f"moment orders must be >= 0, got ({p}, {q})")
    return float(central_moment_matrix(img, max(p, q), scheme)[p, q])


def normalized_moment(
    img: GrayImage, p: int, q: int, scheme: MomentScheme = DEFAULT_SCHEME
) -> float:
    """Normalized central moment nu_pq = mu_pq / mu00^(1 + (p+q)/2)."""
    if p < 0 or q < 0:
        raise ParameterError(f"moment orders must be >= 0, got ({p}, {q})")
    mu = central_moment_matrix(img, max(p, q), scheme)
    return float(mu[p, q] / mu[0, 0] ** (1.0 + (p + q) / 2.0))


@dataclass(frozen=True)
class MomentDescriptor:
    """Ordered vector of normalized central moments nu_pq.

    ``entries`` holds (p, q, value) triples over all p, q >= 0 with
    p + q <= order, excluding (0,0), (1,0), (0,1), sorted by (p+q, p)
    ascending. The entry count is (order+1)(order+2)/2 - 3.
    """

    order: int
    scheme: MomentScheme
    entries: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        expected = informative_indices(self.order)
        got = [(p, q) for p, q, _ in self.entries]
        if got != expected:
            raise ParameterError(
                f"descriptor entries do not match the canonical index set for "
                f"order {self.order}"
            )
        if not all(isfinite(v) for _, _, v in self.entries):
            raise ParameterError("descriptor entries must be finite")

    def __len__(self) -> int:
        return len(self.entries)

    def indices(self) -> list[tuple[int, int]]:
        return [(p, q) for p, q, _ in self.entries]

    def values(self) -> np.ndarray:
        return np.array([v for _, _, v in self.entries], dtype=np.float64)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "scheme": self.scheme.value,
            "entries": [[p, q, v] for p, q, v in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MomentDescriptor":
        entries = tuple((int(p), int(q), float(v)) for p, q, v in obj["entries"])
        return cls(
            order=int(obj["order"]),
            scheme=MomentScheme.parse(obj["scheme"]),
            entries=entries,
        )

    @classmethod
    def from_json(cls, text: str) -> "MomentDescriptor":
        return cls.from_json_dict(json.loads(text))

    @classmethod
    def from_values(
        cls, order: int, scheme: MomentScheme, values
    ) -> "MomentDescriptor":
        idx = informative_indices(order)
        vals = list(values)
        if len(vals) != len(idx):
            raise ParameterError(
                f"expected {len(idx)} values for order {order}, got {len(vals)}"
            )
        return cls(order, scheme, tuple((p, q, float(v)) for (p, q), v in zip(idx, vals)))


def descriptor(
    img: GrayImage,
    order: int = DEFAULT_ORDER,
    scheme: "MomentScheme | str" = DEFAULT_SCHEME,
) -> MomentDescriptor:
    """Moment descriptor of an image: nu_pq over the informative index set.

    Parameters
    ----------
    img : GrayImage
    order : int
        Maximum total moment order N; must be >= 2. The default (4)
        yields 12 entries.
    scheme : MomentScheme or str
        Mass-model discretization; defaults to the raw integer grid.

    Raises
    ------
    ParameterError
        If ``order`` < 2.
    DegenerateImageError
        If the image mass is below the degenerate threshold.
    """
    scheme = MomentScheme.parse(scheme)
    if order < 2:
        raise ParameterError(f"descriptor order must be >= 2, got {order}")
    mu = central_moment_matrix(img, order, scheme)
    mu00 = mu[0, 0]
    idx = informative_indices(order)
    sums = np.array([p + q for p, q in idx], dtype=np.float64)
    vals = np.array([mu[p, q] for p, q in idx]) / mu00 ** (1.0 + sums / 2.0)
    return MomentDescriptor(
        order=order,
        scheme=scheme,
        entries=tuple((p, q, float(v)) for (p, q), v in zip(idx, vals)),
    )
