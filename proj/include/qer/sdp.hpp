#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qer/channel.hpp"
#include "qer/linalg.hpp"

namespace qer {

// Maximize tr(X cost) over Hermitian X >= 0 with the trace over the output
// factor of X equal to the identity on the input factor. The dual minimizes
// tr(Y) subject to I (x) Y >= cost.
struct SdpProblem {
    Eigen::Index dim_out = 0;
    Eigen::Index dim_in = 0;
    Mat cost;
};

struct SdpResiduals {
    double tp = 0.0;
    double psd = 0.0;
    double dual_psd = 0.0;
};

struct SdpIterate {
    int iteration = 0;
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    double mu = 0.0;
    double tp_residual = 0.0;
    double dual_residual = 0.0;
};

struct SdpSolution {
    ChoiOperator x;
    Mat dual_y;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    int iterations = 0;
    SdpResiduals residuals;
    std::vector<SdpIterate> trace;
};

struct SdpOptions {
    double tol = 1e-8;
    int max_iterations = 200;
    std::ostream* trace_stream = nullptr;
};

class SdpConvergenceError : public std::runtime_error {
  public:
    SdpConvergenceError(const std::string& message, SdpSolution best_iterate)
        : std::runtime_error(message), best(std::move(best_iterate)) {}

    SdpSolution best;
};

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace qer
