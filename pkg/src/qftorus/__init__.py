"""Quasifuchsian once-punctured-torus groups from bending data.

Builds marked groups from complex twist-length parameters, traces
rational pleating rays through quakebend planes by Newton continuation
of real-trace loci, solves trace = +-2 for boundary cusps, and
assembles BM-slices, pleating planes, and critical lines into datasets
and pictures.
"""

from .errors import QFToolError
from .farey import Slope, convergents, farey_parents, intersection_number, stern_brocot_enumerate
from .fngroup import FNParams, MarkedGroup, group_from_fn, matrices_from_triple, remark, triple_from_fn
from .fuchsian import CriticalPoint, critical_line, critical_point, f_value
from .rays import CuspPoint, QuakebendPoint, RayTrace, bending_angle, cusp_point, locate_group, trace_ray
from .slices import bm_slice, jmap, pleating_plane, qf_boundary_catalog
from .traces import DualComplex, TraceTriple, markov_complete, markov_residual, trace_and_derivative, trace_of_slope

__version__ = "0.1.0"

__all__ = [
    "QFToolError",
    "Slope",
    "convergents",
    "farey_parents",
    "intersection_number",
    "stern_brocot_enumerate",
    "FNParams",
    "MarkedGroup",
    "group_from_fn",
    "matrices_from_triple",
    "remark",
    "triple_from_fn",
    "CriticalPoint",
    "critical_line",
    "critical_point",
    "f_value",
    "CuspPoint",
    "QuakebendPoint",
    "RayTrace",
    "bending_angle",
    "cusp_point",
    "locate_group",
    "trace_ray",
    "bm_slice",
    "jmap",
    "pleating_plane",
    "qf_boundary_catalog",
    "DualComplex",
    "TraceTriple",
    "markov_complete",
    "markov_residual",
    "trace_and_derivative",
    "trace_of_slope",
]
