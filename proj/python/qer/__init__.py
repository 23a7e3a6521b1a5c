"""Channel-adapted recovery optimization for quantum error correcting codes."""

from ._qer import (
    Recovery,
    amplitude_damping_kraus,
    baseline_fidelity,
    choi_to_kraus,
    code_isometry,
    decode_only_fidelity,
    entanglement_fidelity,
    kraus_to_choi,
    optimal_recovery,
    qec_fidelity,
)

__all__ = [
    "Recovery",
    "amplitude_damping_kraus",
    "baseline_fidelity",
    "choi_to_kraus",
    "code_isometry",
    "decode_only_fidelity",
    "entanglement_fidelity",
    "kraus_to_choi",
    "optimal_recovery",
    "qec_fidelity",
]
