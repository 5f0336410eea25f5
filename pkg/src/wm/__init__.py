"""Plane P/SV reflection at the free surface of a poroelastic half-space.

Library surface: variants and their store, the bulk-wave core, the
reflection engine, table/log output, compute runs, CLI and HTTP service.
"""
from . import errors
from .core import (BiotConstants, ComplexDensities, DensityMatrix, WaveSet,
                   biot_constants, bulk_wavenumbers, density_matrix,
                   dissipation_b, effective_densities, normalized_velocities)
from .reflection import (FluxReport, ReflectionSolution, contact_stresses,
                         energy_balance, solve_reflection, sweep_angle,
                         sweep_frequency)
from .report import RunOutputs, render_log, write_run_outputs
from .run import RunConfig, compute_run, default_samples_dir
from .store import (VariantSet, emit_legacy_input, legacy_input_path, parse_dat,
                    parse_variants, serialize_variants, variants_from_json,
                    variants_to_json)
from .tables import SeriesTable, read_table, write_table
from .variant import (InputVariant, ValidationReport, normalize_variant,
                      validate_variant)

__version__ = "0.1.0"

__all__ = [
    "BiotConstants", "ComplexDensities", "DensityMatrix", "FluxReport",
    "InputVariant", "ReflectionSolution", "RunConfig", "RunOutputs",
    "SeriesTable", "ValidationReport", "VariantSet", "WaveSet",
    "biot_constants", "bulk_wavenumbers", "compute_run", "contact_stresses",
    "default_samples_dir", "density_matrix", "dissipation_b",
    "effective_densities", "emit_legacy_input", "energy_balance", "errors",
    "legacy_input_path", "normalize_variant", "normalized_velocities",
    "parse_dat", "parse_variants", "read_table", "render_log",
    "serialize_variants", "solve_reflection", "sweep_angle", "sweep_frequency",
    "validate_variant", "variants_from_json", "variants_to_json",
    "write_run_outputs", "write_table",
]
