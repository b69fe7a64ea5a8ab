"""Stability analysis of planar plasma-vacuum interfaces in incompressible
MHD with a nonzero vacuum displacement current.

Layers:

  state       equilibrium parameters, validation, frame reduction
  criterion   closed-form violent-instability classification
  dispersion  Lopatinski determinant, root counting, small-eps series
  modes       explicit exponentially growing mode sequences with residual checks
  oracle      independent brute-force verifiers (grids, dense scans)
  cli         scenario files, sweeps, and the criterion-vs-numerics gate
"""

from .criterion import (Classification, MinimizationResult, Verdict, classify,
                        critical_e1_squared, default_tol_eq, f_of_omega,
                        minimize_f, transitional_discriminant)
from .dispersion import (BranchKind, DirectionScan, HalfDiskRegion,
                         LopatinskiContext, RootReport, ScanSummary,
                         SeriesRoot, count_unstable_roots, default_region,
                         find_unstable_roots, lopatinski, lopatinski_deriv,
                         lopatinski_raw, lopatinski_scale, make_context,
                         newton_refine, plasma_decay_root, scan_directions,
                         series_root_generic, series_root_transitional,
                         transitional_tolerance, vacuum_decay_root)
from .errors import (ContourTooCloseError, DegenerateSymbolError,
                     DirectionError, NonConvergentError, NotTransitionalError,
                     PvstabError, ScenarioParseError, SingularFrameError,
                     StateValidationError, TransitionalAtThisDirectionError)
from .modes import (ModeSolution, ResidualReport, build_mode, growth_table,
                    residuals)
from .oracle import (ConvergenceRecord, OracleConfig, dense_root_scan,
                     eigen_fmin, grid_fmin, series_vs_numeric)
from .state import (EquilibriumState, FrequencyBundle, WaveDirection,
                    b0_matrix, frequency_bundle, galilean_transform,
                    validate_state)

__version__ = "0.1.0"
