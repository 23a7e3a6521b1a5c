#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qer/channel.hpp"
#include "qer/codes.hpp"
#include "qer/sdp.hpp"

namespace qer {

enum class RecoveryMethod { Optimal, Qec, DecodeOnly, None };

std::string to_string(RecoveryMethod method);
RecoveryMethod recovery_method_from_string(const std::string& name);

struct RecoveryResult {
    ChoiOperator recovery;
    KrausChannel kraus;
    double fidelity = 0.0;
    double gamma = std::numeric_limits<double>::quiet_NaN();
    RecoveryMethod method = RecoveryMethod::Optimal;
    std::optional<SdpSolution> certificate;
};

struct FitResult {
    double c2 = 0.0;
    double c3 = 0.0;
    double residual = 0.0;
};

RecoveryResult optimal_recovery(const CodeIsometry& enc, const KrausChannel& noise,
                                const DensityOperator& rho_source,
                                const SdpOptions& options = {});
RecoveryResult optimal_recovery(const CodeIsometry& enc, const KrausChannel& noise,
                                const SdpOptions& options = {});

KrausChannel stabilizer_qec_recovery(const StabilizerCode& code, const CodeIsometry& enc);
KrausChannel decode_only_recovery(const CodeIsometry& enc);
double no_recovery_baseline(double gamma);

// Least-squares fit of 1 - fidelity against {gamma^2, gamma^3}; c2 is the
// quadratic coefficient.
FitResult fit_quadratic_coefficient(const std::vector<std::pair<double, double>>& points);

// Eight log-spaced gammas on [1e-3, 1e-2], the grid used for coefficient fits.
std::vector<double> coefficient_fit_grid();

// Solver tolerance tight enough that the duality gap stays well below
// 1 - fidelity at the given gamma.
double fit_solver_tolerance(double gamma);

}  // namespace qer
