#pragma once

#include <vector>

#include "qer/linalg.hpp"

namespace qer {

// Operator elements {E_k}, each dim_out x dim_in.
struct KrausChannel {
    Eigen::Index dim_in = 0;
    Eigen::Index dim_out = 0;
    std::vector<Mat> elements;
};

// Positive operator on out (x) in; side dim_out * dim_in, output factor first.
struct ChoiOperator {
    Eigen::Index dim_in = 0;
    Eigen::Index dim_out = 0;
    Mat x;
};

struct DensityOperator {
    Eigen::Index dim = 0;
    Mat rho;
};

struct CptpReport {
    bool cp = false;
    bool tp = false;
    double cp_residual = 0.0;
    double tp_residual = 0.0;
};

KrausChannel make_kraus_channel(std::vector<Mat> elements);
DensityOperator make_density(const Mat& rho);
DensityOperator maximally_mixed(Eigen::Index dim);

KrausChannel amplitude_damping(double gamma);
ChoiOperator kraus_to_choi(const KrausChannel& k);
KrausChannel choi_to_kraus(const ChoiOperator& c);
DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);
DensityOperator apply(const ChoiOperator& ch, const DensityOperator& rho);
CptpReport is_cptp(const KrausChannel& ch, double tol = 1e-8);
CptpReport is_cptp(const ChoiOperator& ch, double tol = 1e-8);
ChoiOperator compose_choi(const ChoiOperator& x_r, const KrausChannel& e);
KrausChannel tensor_power(const KrausChannel& ch, int n);

}  // namespace qer
