"""oll, Orlicz-Lorentz norms and composition-operator dynamics.

A small numerical library for:

- evaluating convex gauge functions, generalized inverses and the
  doubling-condition probe (:mod:`oll.orlicz`);
- non-increasing weights with exact cumulative integrals
  (:mod:`oll.weights`);
- atomic measure spaces, injective transformations, preimage orbits and
  distortion bounds (:mod:`oll.measure`);
- distribution functions, decreasing rearrangements, the modular and the
  Luxemburg norm of simple functions (:mod:`oll.rearrangement`);
- three-valued expansivity classification of composition operators,
  cross-validated by a direct orbit-norm oracle (:mod:`oll.dynamics`);
- batch jobs with deterministic canonical reports (:mod:`oll.config`,
  :mod:`oll.report`, ``oll`` CLI).
"""

from ._version import VERSION as __version__
from .config import JobConfig, build_config, parse_config
from .dynamics import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    NOTIONS,
    CriterionTrace,
    OrbitTrace,
    TestFamily,
    Verdict,
    Witness,
    classify,
    classify_expansive,
    classify_positively_expansive,
    classify_uniformly_expansive,
    classify_uniformly_positively_expansive,
    compose_iterate,
    criterion_sequence,
    default_test_family,
    oracle_classify,
    orbit_norms,
)
from .errors import (
    AdmissibilityError,
    ConfigError,
    DomainError,
    NumericError,
    OllError,
    OutOfWindowError,
    ValidationError,
)
from .extreal import INF, ext_add, ext_div, ext_mul, ext_value
from .measure import (
    AtomSet,
    AtomicSpace,
    CompositionSystem,
    OutOfWindow,
    SystemReport,
    Transformation,
    distortion_bound,
    is_wandering,
    preimage_set,
    set_measure,
    validate_system,
)
from .orlicz import (
    Delta2Report,
    OrliczFunction,
    delta2_probe,
    phi_eval,
    phi_inverse,
    phi_params,
)
from .rearrangement import (
    NormResult,
    SimpleFunction,
    StepFunction,
    char_norm_formula,
    distribution,
    luxemburg_norm,
    luxemburg_norm_info,
    modular,
    rearrangement,
)
from .report import RunReport, canonical_json_bytes, config_digest, emit_report, run_job
from .weights import WeightFunction, h_cumulative, h_eval, validate_weight, with_domain

__all__ = [name for name in dir() if not name.startswith("_")]
