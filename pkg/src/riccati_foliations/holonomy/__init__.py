"""Local models, loop lifting and holonomy generators."""

from .generators import generator_loops, holonomy_generators, order_fibers, product_relation
from .integrate import (
    HolonomyResult,
    IntegratorStats,
    compile_field,
    lift,
    numeric_holonomy,
    sample_points,
)
from .local_models import (
    AffineFiberMap,
    LocalModel,
    analytic_holonomy,
    gluing_map,
    local_model_field,
    model_from_normal_form,
)
from .loops import Arc, LoopPath, Segment
from .synthesis import SynthesisReport, verify_synthesis

__all__ = [
    "AffineFiberMap", "Arc", "HolonomyResult", "IntegratorStats", "LocalModel",
    "LoopPath", "Segment", "SynthesisReport", "analytic_holonomy", "compile_field",
    "generator_loops", "gluing_map", "holonomy_generators", "lift",
    "local_model_field", "model_from_normal_form", "numeric_holonomy",
    "order_fibers", "product_relation", "sample_points", "verify_synthesis",
]
