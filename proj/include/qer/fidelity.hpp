#pragma once

#include <utility>
#include <vector>

#include "qer/channel.hpp"
#include "qer/linalg.hpp"

namespace qer {

struct Ensemble {
    std::vector<std::pair<double, DensityOperator>> items;
};

// Pure state on reference (x) system whose reduced state on the system factor
// is the purified density; the reference factor comes first.
struct PurifiedState {
    Eigen::Index dim_ref = 0;
    Eigen::Index dim_sys = 0;
    Vec amplitudes;
};

double state_fidelity(const DensityOperator& rho, const DensityOperator& sigma);
PurifiedState purify(const DensityOperator& rho);
double entanglement_fidelity(const DensityOperator& rho, const KrausChannel& ch);
double entanglement_fidelity(const DensityOperator& rho, const ChoiOperator& ch);

// Evaluates the same quantity by carrying a purification through the channel;
// slower, kept as an independent cross-check of the two routes above.
double entanglement_fidelity_via_purification(const DensityOperator& rho, const KrausChannel& ch);

double ensemble_average_fidelity(const Ensemble& ensemble, const KrausChannel& ch);

// Cost matrix of the recovery optimization: sum_j |rho E_j^dagger>><<rho E_j^dagger|
// over the elements of the spreading channel, side dim_source * dim_code.
Mat data_matrix(const DensityOperator& rho, const KrausChannel& spread);

}  // namespace qer
