from .monodromy import (
    WieneckEmbedding,
    extend_isometry,
    is_monodromy,
    reflection_monodromy_criterion,
    special_isometries,
    standard_wieneck,
)
from .effective import Effectiveness, is_pex, symplectic_effective
from .modularity import ExceptionModel, exception_models, exceptions_scan, is_twisted_modular
from .walls import (
    DIVISORIAL,
    FLOPPING,
    NOT_A_WALL,
    MukaiData,
    SeriesHit,
    VerticalWallReport,
    WallVerdict,
    classify_wall,
    detect_series,
    monodromy_condition,
    mukai_pairing,
    verify_verdict,
    vertical_wall_lattice,
    vertical_wall_report,
)
