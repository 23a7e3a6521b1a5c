#include "qer/recovery.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "qer/fidelity.hpp"

namespace qer {

std::string to_string(RecoveryMethod method) {
    switch (method) {
        case RecoveryMethod::Optimal:
            return "optimal";
        case RecoveryMethod::Qec:
            return "qec";
        case RecoveryMethod::DecodeOnly:
            return "decode-only";
        case RecoveryMethod::None:
            return "none";
    }
    throw std::invalid_argument("to_string: unknown recovery method");
}

RecoveryMethod recovery_method_from_string(const std::string& name) {
    if (name == "optimal") {
        return RecoveryMethod::Optimal;
    }
    if (name == "qec") {
        return RecoveryMethod::Qec;
    }
    if (name == "decode-only") {
        return RecoveryMethod::DecodeOnly;
    }
    if (name == "none") {
        return RecoveryMethod::None;
    }
    throw std::invalid_argument("unknown recovery method '" + name + "'");
}

RecoveryResult optimal_recovery(const CodeIsometry& enc, const KrausChannel& noise,
                                const DensityOperator& rho_source, const SdpOptions& options) {
    if (rho_source.dim != enc.dim_source) {
        throw std::invalid_argument("optimal_recovery: density must live on the source space");
    }
    const KrausChannel spread = spreading_transform(noise, enc);
    SdpProblem problem{enc.dim_source, enc.dim_code, data_matrix(rho_source, spread)};
    SdpSolution solution = solve(problem, options);

    const double recomputed =
        entanglement_fidelity(rho_source, compose_choi(solution.x, spread));
    if (std::abs(recomputed - solution.primal_value) > 1e-8) {
        throw std::runtime_error("optimal_recovery: objective recomputation mismatch");
    }

    RecoveryResult result;
    result.recovery = solution.x;
    result.kraus = choi_to_kraus(solution.x);
    result.fidelity = solution.primal_value;
    result.method = RecoveryMethod::Optimal;
    result.certificate = std::move(solution);
    return result;
}

RecoveryResult optimal_recovery(const CodeIsometry& enc, const KrausChannel& noise,
                                const SdpOptions& options) {
    return optimal_recovery(enc, noise, maximally_mixed(enc.dim_source), options);
}

KrausChannel stabilizer_qec_recovery(const StabilizerCode& code, const CodeIsometry& enc) {
    const std::size_t r = code.generators.size();
    if (r == 0 || r >= 31) {
        throw std::invalid_argument("stabilizer_qec_recovery: unsupported generator count");
    }
    if (enc.dim_code != (Eigen::Index{1} << code.n)) {
        throw std::invalid_argument("stabilizer_qec_recovery: isometry does not match the code");
    }

    const auto syndrome_of = [&](const PauliString& p) {
        unsigned s = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (pauli_anticommute(p, code.generators[i])) {
                s |= 1u << i;
            }
        }
        return s;
    };

    // Weight-ordered candidates: identity, then every single-qubit Pauli.
    std::vector<std::pair<PauliString, int>> candidates;
    candidates.emplace_back(PauliString{std::string(static_cast<std::size_t>(code.n), 'I')}, 0);
    for (int q = 0; q < code.n; ++q) {
        for (char letter : {'X', 'Y', 'Z'}) {
            PauliString p{std::string(static_cast<std::size_t>(code.n), 'I')};
            p.letters[static_cast<std::size_t>(q)] = letter;
            candidates.emplace_back(std::move(p), 1);
        }
    }

    std::map<unsigned, std::pair<PauliString, int>> table;
    for (const auto& [candidate, weight] : candidates) {
        const unsigned s = syndrome_of(candidate);
        const auto found = table.find(s);
        if (found == table.end()) {
            table.emplace(s, std::make_pair(candidate, weight));
        } else if (found->second.second == weight) {
            throw std::invalid_argument(
                "stabilizer_qec_recovery: ambiguous syndrome table, two corrections of weight " +
                std::to_string(weight) + " share syndrome " + std::to_string(s));
        }
    }
    const unsigned syndrome_count = 1u << r;
    if (table.size() != syndrome_count) {
        throw std::invalid_argument(
            "stabilizer_qec_recovery: some syndromes have no correction of weight at most one");
    }

    const Eigen::Index dim = enc.dim_code;
    std::vector<Mat> generator_matrices;
    generator_matrices.reserve(r);
    for (const PauliString& g : code.generators) {
        generator_matrices.push_back(pauli_matrix(g));
    }

    std::vector<Mat> elements;
    elements.reserve(syndrome_count);
    for (unsigned s = 0; s < syndrome_count; ++s) {
        Mat projector = Mat::Identity(dim, dim);
        for (std::size_t i = 0; i < r; ++i) {
            const double sign = (s >> i) & 1u ? -1.0 : 1.0;
            projector = projector * (0.5 * (Mat::Identity(dim, dim) + sign * generator_matrices[i]));
        }
        const Mat correction = pauli_matrix(table.at(s).first);
        elements.push_back(enc.u.adjoint() * correction * hermitize(projector));
    }

    KrausChannel recovery{dim, enc.dim_source, std::move(elements)};
    if (!is_cptp(recovery, 1e-10).tp) {
        throw std::runtime_error("stabilizer_qec_recovery: recovery is not trace-preserving");
    }
    return recovery;
}

KrausChannel decode_only_recovery(const CodeIsometry& enc) {
    // Decode the codespace with the adjoint isometry; send the orthogonal
    // complement to a fixed source state so the channel is trace-preserving.
    Eigen::HouseholderQR<Mat> qr(enc.u);
    const Mat q = qr.householderQ() * Mat::Identity(enc.dim_code, enc.dim_code);

    std::vector<Mat> elements;
    elements.push_back(enc.u.adjoint());
    for (Eigen::Index j = enc.dim_source; j < enc.dim_code; ++j) {
        Mat element = Mat::Zero(enc.dim_source, enc.dim_code);
        element.row(0) = q.col(j).adjoint();
        elements.push_back(std::move(element));
    }

    KrausChannel recovery{enc.dim_code, enc.dim_source, std::move(elements)};
    if (!is_cptp(recovery, 1e-10).tp) {
        throw std::runtime_error("decode_only_recovery: recovery is not trace-preserving");
    }
    return recovery;
}

double no_recovery_baseline(double gamma) {
    return entanglement_fidelity(maximally_mixed(2), amplitude_damping(gamma));
}

FitResult fit_quadratic_coefficient(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) {
        throw std::invalid_argument("fit_quadratic_coefficient: at least four points are required");
    }
    const Eigen::Index count = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(count, 2);
    Eigen::VectorXd target(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        const auto& [gamma, fidelity] = points[static_cast<std::size_t>(i)];
        if (!(gamma > 0.0 && gamma <= 0.02)) {
            throw std::invalid_argument(
                "fit_quadratic_coefficient: gammas must lie in (0, 0.02]");
        }
        if (!std::isfinite(fidelity)) {
            throw std::invalid_argument("fit_quadratic_coefficient: fidelities must be finite");
        }
        design(i, 0) = gamma * gamma;
        design(i, 1) = gamma * gamma * gamma;
        target(i) = 1.0 - fidelity;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(1) < 1e-12 * svd.singularValues()(0)) {
        throw std::invalid_argument("fit_quadratic_coefficient: design matrix is degenerate");
    }
    const Eigen::Vector2d coefficients = svd.solve(target);
    return FitResult{coefficients(0), coefficients(1), (design * coefficients - target).norm()};
}

std::vector<double> coefficient_fit_grid() {
    std::vector<double> grid;
    grid.reserve(8);
    for (int k = 0; k < 8; ++k) {
        grid.push_back(1e-3 * std::pow(10.0, static_cast<double>(k) / 7.0));
    }
    return grid;
}

double fit_solver_tolerance(double gamma) {
    return gamma <= 2e-3 ? 1e-9 : 1e-8;
}

}  // namespace qer
