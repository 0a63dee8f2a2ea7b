"""cvpower: complex-vector power decomposition for three-phase sinusoidal systems.

The library splits apparent power into the classical intraphase complex power
P + jQ and a cross-phase unbalance vector, works in phase, symmetrical-
component and four-wire equivalent coordinates, and verifies its own
invariants on every analysis run.
"""

from .errors import (
    CvpError,
    InputDocumentError,
    IntegrityError,
    InvalidConfigError,
    InvalidInputError,
    KclViolationError,
)
from .fixtures import Fixture, builtin_fixtures, run_fixture
from .fortescue import (
    FORTESCUE_DET,
    FORTESCUE_INVERSE,
    FORTESCUE_MATRIX,
    SequenceTriple,
    cross_transform_check,
    from_sequence,
    sequence_cross,
    sequence_dot,
    to_sequence,
)
from .four_wire import (
    FourWireEquivalents,
    NeutralConfig,
    artificial_neutral_shift,
    equivalent_coordinates,
    homopolar_correction,
    k_factor,
)
from .io import (
    InputDocument,
    builtin_example_json,
    parse_input,
    render_json,
    render_table,
    report_to_dict,
    write_waveform_csv,
)
from .phasors import (
    CvpResult,
    PhasorTriple,
    angle_distance_deg,
    cross_unbalance,
    cvp,
    dot_power,
    lagrange_residual,
    magnitude_angle,
    phasor,
)
from .pipeline import (
    AnalysisReport,
    AnalysisRequest,
    Ieee1459Comparison,
    analyze,
    ieee1459_compare,
)
from .waveforms import (
    CrossTermDecomposition,
    WaveformGrid,
    WaveformSet,
    decompose_cross_term,
    synthesize,
    verify_mean_power,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CvpError",
    "InvalidInputError",
    "InvalidConfigError",
    "KclViolationError",
    "IntegrityError",
    "InputDocumentError",
    "PhasorTriple",
    "CvpResult",
    "phasor",
    "magnitude_angle",
    "angle_distance_deg",
    "dot_power",
    "cross_unbalance",
    "cvp",
    "lagrange_residual",
    "FORTESCUE_MATRIX",
    "FORTESCUE_INVERSE",
    "FORTESCUE_DET",
    "SequenceTriple",
    "to_sequence",
    "from_sequence",
    "sequence_dot",
    "sequence_cross",
    "cross_transform_check",
    "NeutralConfig",
    "FourWireEquivalents",
    "artificial_neutral_shift",
    "k_factor",
    "homopolar_correction",
    "equivalent_coordinates",
    "WaveformGrid",
    "WaveformSet",
    "CrossTermDecomposition",
    "synthesize",
    "decompose_cross_term",
    "verify_mean_power",
    "AnalysisRequest",
    "AnalysisReport",
    "Ieee1459Comparison",
    "analyze",
    "ieee1459_compare",
    "Fixture",
    "builtin_fixtures",
    "run_fixture",
    "InputDocument",
    "parse_input",
    "report_to_dict",
    "render_json",
    "render_table",
    "write_waveform_csv",
    "builtin_example_json",
]
