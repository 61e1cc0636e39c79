"""Zero-free regions of 2-spin and set-cover partition functions."""

import json

from . import _zerofree
from ._zerofree import Error, partition_2spin, partition_setcover, polynomial_2spin, roots

__all__ = [
    "Error",
    "thresholds",
    "setcover_thresholds",
    "certify",
    "partition_2spin",
    "partition_setcover",
    "polynomial_2spin",
    "roots",
    "zero_scan",
    "approx",
]


def thresholds(beta, gamma, delta, sign="pos"):
    return json.loads(_zerofree.thresholds_json(beta, gamma, delta, sign))


def setcover_thresholds(delta, mu):
    return json.loads(_zerofree.setcover_thresholds_json(delta, mu))


def certify(regime, **kwargs):
    """Run a certifier; regime is bounded, rect, unbounded or setcover."""
    return json.loads(_zerofree.certify_json(regime, **kwargs))


def zero_scan(beta, gamma, delta, lambda0, **kwargs):
    return json.loads(_zerofree.zero_scan_json(beta, gamma, delta, lambda0, **kwargs))


def approx(coeffs, lam, terms, apex=None, angle_deg=90.0):
    return json.loads(_zerofree.approx_json(coeffs, lam, terms, apex, angle_deg))
