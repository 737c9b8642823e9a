"""Distances between moment descriptors.

Two variants are provided:

* ``msiq_rmse``     -- root mean square difference over the descriptor
  entries, i.e. sqrt( (1/n) * sum (nu_a - nu_b)^2 );
* ``msiq_weighted`` -- sqrt( sum w_pq (nu_a - nu_b)^2 ) with default
  weights w_pq = 1 / (1 + p + q). The weighted form is deliberately NOT
  normalized by the weight sum, so its absolute values live on a
  different scale from the RMSE variant and the two must not be
  compared numerically, only rank-wise.

Both are full metrics on descriptor space (weighted Euclidean norms);
lower is better, 0 means identical descriptors.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DescriptorMismatchError, ParameterError
from .moments import MomentDescriptor, informative_indices


class MsiqVariant(enum.Enum):
    RMSE = "rmse"
    WEIGHTED = "weighted"

    @classmethod
    def parse(cls, name: "str | MsiqVariant") -> "MsiqVariant":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {
            "rmse": cls.RMSE,
            "msiq_rmse": cls.RMSE,
            "weighted": cls.WEIGHTED,
            "w": cls.WEIGHTED,
            "msiq_w": cls.WEIGHTED,
        }
        if key not in aliases:
            raise ParameterError(f"unknown msiq variant {name!r}; valid: rmse, weighted")
        return aliases[key]


def default_weights(order: int) -> dict[tuple[int, int], float]:
    """Order-inverse weights w_pq = 1 / (1 + p + q) over the index set."""
    return {(p, q): 1.0 / (1.0 + p + q) for p, q in informative_indices(order)}


def _check_comparable(a: MomentDescriptor, b: MomentDescriptor) -> None:
    if a.order != b.order or a.scheme != b.scheme:
        raise DescriptorMismatchError(
            f"descriptors disagree: order {a.order} vs {b.order}, "
            f"scheme {a.scheme.value} vs {b.scheme.value}"
        )
    if a.indices() != b.indices():
        raise DescriptorMismatchError("descriptors have different index layouts")


def msiq_rmse(a: MomentDescriptor, b: MomentDescriptor) -> float:
    """RMSE distance between two moment descriptors (lower is better)."""
    _check_comparable(a, b)
    d = a.values() - b.values()
    return float(np.sqrt(np.mean(d * d)))


def msiq_weighted(
    a: MomentDescriptor,
    b: MomentDescriptor,
    weights: "dict[tuple[int, int], float] | None" = None,
) -> float:
    """Weighted descriptor distance; weights are keyed by (p, q) so a
    change of entry order can never silently misalign them."""
    _check_comparable(a, b)
    if weights is None:
        weights = default_weights(a.order)
    idx = a.indices()
    missing = [pq for pq in idx if pq not in weights]
    if missing:
        raise ParameterError(f"missing weights for entries {missing}")
    w = np.array([weights[pq] for pq in idx], dtype=np.float64)
    if (w <= 0).any():
        raise ParameterError("weights must be strictly positive")
    d = a.values() - b.values()
    return float(np.sqrt(np.sum(w * d * d)))


def msiq_distance(
    a: MomentDescriptor,
    b: MomentDescriptor,
    variant: "MsiqVariant | str" = MsiqVariant.RMSE,
    weights: "dict[tuple[int, int], float] | None" = None,
) -> float:
    """Dispatch to the requested variant."""
    variant = MsiqVariant.parse(variant)
    if variant is MsiqVariant.RMSE:
        return msiq_rmse(a, b)
    return msiq_weighted(a, b, weights)
