"""Arnold-tongue / Farey structure of piecewise monotone contracting interval maps."""

from .farey import (CharSeq, Rational, char_seq, lhat, mediant_concat, seq_at,
                    stern_brocot)
from .linear_model import (NOT_FOUND, PERIOD_ONE, LinearParams, PeriodicOrbit,
                           PreimageChain, TongueRegion, classify,
                           periodic_points, preimage_zero_chain, region,
                           region_boundaries, region_contains, step)
from .piecewise_map import (AssumptionReport, OrbitSummary, PiecewiseMap,
                            PreimageOrder, check_assumptions, detect_period,
                            from_linear, preimage_order)
from .tongue_solver import (FamilyError, FamilySpec, NonOverlapError,
                            TongueInterval, Word, boundary_words, family_from_f,
                            family_from_g, farey_atlas, linear_crosscheck,
                            solve_by_descent, solve_tongue)
from .conjugacy import ConjugacyMap, build_homeomorphism, verify_conjugacy
from .families import (linear_f_family, quadratic_family, sine_alpha,
                       sine_family, solver_family, sweep_map)
from .atlas import (SweepConfig, SweepResult, atlas_csv_text, render_svg,
                    run_atlas, tongues_csv_text, write_atlas_csv,
                    write_tongues_csv)

__version__ = "0.1.0"
