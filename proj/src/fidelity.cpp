#include "qer/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace qer {

double state_fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim != sigma.dim) {
        throw std::invalid_argument("state_fidelity: dimensions must match");
    }
    const Mat root = psd_sqrt(rho.rho);
    HermitianEig eig = eig_hermitian(hermitize(root * sigma.rho * root));
    double sum = 0.0;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        sum += std::sqrt(std::max(0.0, eig.values(k)));
    }
    return std::clamp(sum, 0.0, 1.0);
}

PurifiedState purify(const DensityOperator& rho) {
    HermitianEig eig = eig_hermitian(rho.rho);
    Eigen::Index rank = 0;
    while (rank < eig.values.size() && eig.values(rank) > 1e-12) {
        ++rank;
    }
    if (rank == 0) {
        throw std::invalid_argument("purify: density has no positive eigenvalue");
    }
    PurifiedState state{rank, rho.dim, Vec::Zero(rank * rho.dim)};
    for (Eigen::Index a = 0; a < rank; ++a) {
        const double weight = std::sqrt(eig.values(a));
        for (Eigen::Index i = 0; i < rho.dim; ++i) {
            state.amplitudes(a * rho.dim + i) = weight * eig.vectors(i, a);
        }
    }
    return state;
}

double entanglement_fidelity(const DensityOperator& rho, const KrausChannel& ch) {
    if (ch.dim_in != ch.dim_out || ch.dim_in != rho.dim) {
        throw std::invalid_argument("entanglement_fidelity: channel must act on the state space");
    }
    double sum = 0.0;
    for (const Mat& e : ch.elements) {
        const Complex overlap = (rho.rho * e).trace();
        sum += std::norm(overlap);
    }
    return sum;
}

double entanglement_fidelity(const DensityOperator& rho, const ChoiOperator& ch) {
    if (ch.dim_in != ch.dim_out || ch.dim_in != rho.dim) {
        throw std::invalid_argument("entanglement_fidelity: channel must act on the state space");
    }
    const Vec ket = vectorize(rho.rho).amplitudes;
    return (ket.adjoint() * ch.x * ket).value().real();
}

double entanglement_fidelity_via_purification(const DensityOperator& rho, const KrausChannel& ch) {
    if (ch.dim_in != ch.dim_out || ch.dim_in != rho.dim) {
        throw std::invalid_argument("entanglement_fidelity: channel must act on the state space");
    }
    const PurifiedState pure = purify(rho);
    const Mat eye = Mat::Identity(pure.dim_ref, pure.dim_ref);
    const Eigen::Index side = pure.dim_ref * pure.dim_sys;
    Mat output = Mat::Zero(side, side);
    for (const Mat& e : ch.elements) {
        const Vec moved = kron(eye, e) * pure.amplitudes;
        output.noalias() += moved * moved.adjoint();
    }
    return (pure.amplitudes.adjoint() * output * pure.amplitudes).value().real();
}

double ensemble_average_fidelity(const Ensemble& ensemble, const KrausChannel& ch) {
    if (ensemble.items.empty()) {
        throw std::invalid_argument("ensemble_average_fidelity: ensemble is empty");
    }
    double total_probability = 0.0;
    const Eigen::Index dim = ensemble.items.front().second.dim;
    for (const auto& [p, state] : ensemble.items) {
        if (p < 0.0) {
            throw std::invalid_argument("ensemble_average_fidelity: probabilities must be nonnegative");
        }
        if (state.dim != dim) {
            throw std::invalid_argument("ensemble_average_fidelity: states must share dimension");
        }
        total_probability += p;
    }
    if (std::abs(total_probability - 1.0) > 1e-12) {
        throw std::invalid_argument("ensemble_average_fidelity: probabilities must sum to one");
    }
    double sum = 0.0;
    for (const auto& [p, state] : ensemble.items) {
        HermitianEig eig = eig_hermitian(state.rho);
        if (eig.values.size() > 1 && eig.values(1) > 1e-10) {
            std::cerr << "ensemble_average_fidelity: warning: ensemble member is not pure\n";
        }
        const double f = state_fidelity(state, apply(ch, state));
        sum += p * f * f;
    }
    return sum;
}

Mat data_matrix(const DensityOperator& rho, const KrausChannel& spread) {
    if (rho.dim != spread.dim_in) {
        throw std::invalid_argument("data_matrix: density dimension must match spreading input");
    }
    const Eigen::Index side = spread.dim_in * spread.dim_out;
    Mat cost = Mat::Zero(side, side);
    for (const Mat& e : spread.elements) {
        const Vec ket = vectorize(rho.rho * e.adjoint()).amplitudes;
        cost.noalias() += ket * ket.adjoint();
    }
    return hermitize(cost);
}

}  // namespace qer
