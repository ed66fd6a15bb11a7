"""Exact verification toolkit for tail-comparison inequalities on sums of
i.i.d. random variables.

Everything verdict-bearing runs in exact rational arithmetic over finitely
supported laws; Monte Carlo estimation exists only as a clearly separated
cross-check for laws outside the exact engine's reach.
"""

from ._version import __version__
from .checks import (
    check_corollary4,
    check_corollary5,
    check_corollary6,
    check_latala_sharp,
    check_levy_ottaviani,
    check_theorem1,
    sweep_curves,
    threshold_candidates,
    upper_envelope,
)
from .concentration import (
    CaseVerdict,
    ConcentrationSet,
    check_corollary3,
    check_lemma2,
    classify_case,
    concentration_set,
    has_concentration_point,
    window_mass,
)
from .corpus import CorpusConfig, CorpusReport, generate_corpus, run_corpus, write_csv
from .counterexample import (
    CounterexampleReport,
    cbrt_combo_sign,
    centered_sum_tail,
    extended_sum_tail,
    find_M,
    icbrt,
    normalized_sum_tail,
    refutes_constant,
    verify_counterexample,
)
from .dists import (
    DEFAULT_SUPPORT_CAP,
    STRICT,
    WEAK,
    DiscreteDist,
    Norm,
    SupportCapExceeded,
    TailCurve,
    affine,
    convolve,
    delta,
    first_exceedance_probs,
    iid_sum,
    path_max_curve,
    path_max_gauge_dist,
    path_max_tail,
    tail,
    tail_curve,
    weighted_iid_sum,
)
from .montecarlo import (
    McVerdict,
    SamplerSpec,
    TailEstimate,
    clopper_pearson,
    estimate_tail,
    mc_check,
)
from .reports import HOLDS, VACUOUS, VIOLATED, InequalityReport
from .search import (
    SearchResult,
    SearchSpace,
    SoundnessViolation,
    probe_necessity,
    ratio_objective,
    ratio_objective_witness,
    search,
    snap_to_space,
)
from .specfile import (
    SpecFileError,
    dist_from_jsonable,
    dist_to_jsonable,
    dump_dist,
    load_dist,
    parse_dist,
    save_dist,
)

__all__ = [name for name in dir() if not name.startswith("_")]
