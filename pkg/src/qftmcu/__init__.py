"""QFT-based synthesis of multi-controlled single-qubit gates.

Build multi-controlled unitaries from QFT-conjugated increment/decrement
blocks, optimize the conditional-phase structure, lower to the native set
{CX, Rz, SX, X} on fully-connected or line-shaped couplings, and verify
everything against brute-force oracles.
"""
from .circuit import (
    Circuit,
    Gate,
    MetricsReport,
    count_classes,
    count_gates,
    from_json,
    inverse,
    normalize_angle,
    schedule_slots,
    structural_equal,
    to_json,
)
from .gate_algebra import (
    abc_decompose,
    controlled,
    identity_battery,
    random_unitary,
    root,
    rx_mat,
    ry_mat,
    rz_mat,
    u2_mat,
    zyz_decompose,
)
from .layout import (
    ARCHES,
    NativeCircuit,
    NativeMetrics,
    RouteReport,
    layout_permutation,
    lower_to_ngs,
    native_metrics,
    route_lnn,
    synth_native,
)
from .linalg import equal_up_to_global_phase, is_unitary, kron
from .optimizer import (
    PASSES,
    PassReport,
    cancel_cx_pairs,
    cp_to_crz,
    insert_phase_ladder,
    ldd_to_qft,
    merge_phase_columns,
)
from .synthesis import (
    METHODS,
    SynthConfig,
    apply_aqft,
    aqft_expected_counts,
    build,
    build_decrement,
    build_increment,
    build_ldd,
    build_mcu_mod,
    build_mcu_zyz,
    build_mcx_qft,
    build_qft,
    default_aqft_cutoff,
    expected_counts,
    expected_slots,
)
from .verifier import (
    VerifyResult,
    apply_statevector,
    circuit_unitary,
    mcu_oracle,
    oracle_apply,
    verify_mcu,
)

__version__ = "0.1.0"
