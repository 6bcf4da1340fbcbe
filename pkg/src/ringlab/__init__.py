"""ringlab: finite commutative rings, their ideals and modules, and a
brute-force checker for statements about semi r-ideals and semi r-submodules.
"""

from .ring import (
    RingError,
    RingFlags,
    RingTable,
    Violation,
    annihilator_elem,
    build_product,
    build_zn,
    nilradical,
    ring_flags,
    units,
    verify_ring_axioms,
    zero_divisors,
)
from .ideals import (
    Ideal,
    IdealFlags,
    all_ideals,
    char_crosscheck,
    classify_ideal,
    colon_ideal,
    generate_ideal,
    ideal_arith,
    radical,
    z_upper,
)

from .dsl import (
    ElaborationError,
    ParseError,
    elaborate,
    elaborate_module,
    format_canonical,
    parse_gens,
    parse_modexpr,
    parse_ring_expr,
)
from .modules import (
    ModuleTable,
    Submodule,
    SubmoduleFlags,
    all_submodules,
    build_module,
    classify_submodule,
    generate_submodule,
)
from .verdict import BoundedNoCounterexample, Proved, Refuted, Verdict
from .corpus import CorpusSpec, build_corpus, default_corpus, read_corpus_file, symbolic_registry
from .harness import (
    CheckResult,
    SuiteReport,
    report_json,
    report_table,
    run_check,
    run_suite,
    search_counterexamples,
    symbolic_exactness,
    validate_report,
)

__version__ = "0.1.0"
