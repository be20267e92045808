"""Traces of supersingular endomorphisms given as isogeny chains."""

from .curves import INFINITY, Curve, Point, is_supersingular, isomorphism_u
from .endgen import random_cycle, random_prime, random_supersingular_curve
from .isogenies import Chain, IsogenyStep, two_isogeny, velu_from_kernel
from .serialize import load_chain, load_curve, save_chain, save_curve
from .trace import (
    METHODS,
    TraceResult,
    compute_trace,
    trace_mod_ell,
    trace_mod_p,
    trace_oracle_bruteforce,
    trace_points_mod,
    trace_schoof_mod_ell,
)

__all__ = [
    "INFINITY",
    "METHODS",
    "Chain",
    "Curve",
    "IsogenyStep",
    "Point",
    "TraceResult",
    "compute_trace",
    "is_supersingular",
    "isomorphism_u",
    "load_chain",
    "load_curve",
    "random_cycle",
    "random_prime",
    "random_supersingular_curve",
    "save_chain",
    "save_curve",
    "trace_mod_ell",
    "trace_mod_p",
    "trace_oracle_bruteforce",
    "trace_points_mod",
    "trace_schoof_mod_ell",
    "two_isogeny",
    "velu_from_kernel",
]
