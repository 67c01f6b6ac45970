"""Depth-aware synthesis of reversible permutations into MCT circuits.

Typical use::

    from cyclesmith import hwb, synthesize, synthesize_parallel, verify, measure

    p = hwb(6)
    c = synthesize(p)
    assert verify(c, p)
    print(measure(c).qc)
"""
from .circuit import (MCT, Circuit, Not, Swap, VerifyResult, WidthTooLarge, circuit_permutation,
                      cnot, concat, invert, mct, simulate, toffoli, verify)
from .ecsynth import (Kappa0Spec, NoSafeControl, PiRow, PiSafetyError, SynthesisError, Window,
                      build_kappa0, build_pi, decompose, synth_ec, synthesize, window_lines)
from .formats import (FormatError, MalformedHeader, NonBijective, OutOfRange, hwb, parse_circuit,
                      parse_spec, write_circuit, write_spec)
from .lnn import LnnReport, is_lnn, map_lnn, simplify
from .metrics import (DEFAULT_COST_MODEL, CostModel, MetricsReport, NTooSmall, depth,
                      ec_cost_formula, interaction_cost, measure, quantum_cost,
                      repeated_terms_bound, two_qubit_cost, worst_case_bound)
from .parallel import (Bin, BlockVariant, DistributionPlan, distribute, restoring_block,
                       storing_block, synthesize_parallel, synthesize_parallel_detailed)
from .perm import (Cycle, ECGroup, ECKind, Parity, Permutation, compose, elementary_groups, group_elementary,
                   parity, split_long_cycle, to_disjoint_cycles)
from .report import ReportDocument, report

__version__ = "0.1.0"
