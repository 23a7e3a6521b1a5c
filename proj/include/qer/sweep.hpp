#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "qer/codes.hpp"
#include "qer/recovery.hpp"

namespace qer {

struct SweepRecord {
    double gamma = 0.0;
    double f_optimal = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> f_qec;
    double f_none = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    double wall_time = 0.0;
};

struct SweepConfig {
    CodeSystem code;
    std::vector<double> gammas;
    bool with_optimal = true;
    bool with_qec = true;
    bool with_none = true;
    double tol = 1e-8;
    int max_iterations = 200;
    int jobs = 1;
};

// One record per grid point, ordered by the grid. A solver failure at a point
// leaves f_optimal NaN there; the sweep continues.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

// Uniform grid of `steps` points from start to stop inclusive.
std::vector<double> uniform_grid(double start, double stop, int steps);

KrausChannel physical_noise(const CodeSystem& code, double gamma);

double recovery_fidelity(const CodeSystem& code, double gamma, const KrausChannel& recovery);

}  // namespace qer
