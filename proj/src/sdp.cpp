#include "qer/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

namespace qer {

namespace {

constexpr double kFractionToBoundary = 0.98;
constexpr double kFeasibilityTol = 1e-8;
constexpr double kEigenFloor = 1e-300;

double inner(const Mat& a, const Mat& b) {
    return (a.array().conjugate() * b.array()).sum().real();
}

// Square root and inverse square root from one decomposition; eigenvalues are
// floored to keep negative powers finite on the last interior iterates.
std::pair<Mat, Mat> sqrt_pair(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(m);
    const RealVec roots = solver.eigenvalues().cwiseMax(kEigenFloor).cwiseSqrt();
    const Mat half = solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
    const Mat inv_half = solver.eigenvectors() * roots.cwiseInverse().asDiagonal() *
                         solver.eigenvectors().adjoint();
    return {hermitize(half), hermitize(inv_half)};
}

double min_eigenvalue(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// Largest step a with m + a*d still positive semidefinite, for m positive
// definite; infinity when d pushes in no decreasing direction.
double max_step(const Mat& m, const Mat& d) {
    Eigen::LLT<Mat> llt(m);
    if (llt.info() != Eigen::Success) {
        return 0.0;
    }
    const Mat scaled = llt.matrixL().solve(llt.matrixL().solve(d).adjoint());
    const double lambda_min = min_eigenvalue(scaled);
    if (lambda_min >= -1e-16) {
        return std::numeric_limits<double>::infinity();
    }
    return -1.0 / lambda_min;
}

// Real coordinates of a Hermitian matrix in the orthonormal basis
// [diagonal; sqrt(2) * real upper; sqrt(2) * imaginary upper], pairs in
// lexicographic (k, l) order with k < l.
class HermitianBasis {
  public:
    explicit HermitianBasis(Eigen::Index m) : m_(m) {
        pair_row_.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
        pair_col_.reserve(pair_row_.capacity());
        for (Eigen::Index k = 0; k < m; ++k) {
            for (Eigen::Index l = k + 1; l < m; ++l) {
                pair_row_.push_back(k);
                pair_col_.push_back(l);
            }
        }
    }

    Eigen::Index size() const { return m_ * m_; }
    Eigen::Index pairs() const { return static_cast<Eigen::Index>(pair_row_.size()); }
    Eigen::Index pair_row(Eigen::Index p) const { return pair_row_[static_cast<std::size_t>(p)]; }
    Eigen::Index pair_col(Eigen::Index p) const { return pair_col_[static_cast<std::size_t>(p)]; }

    RealVec to_coords(const Mat& h) const {
        RealVec out(size());
        for (Eigen::Index k = 0; k < m_; ++k) {
            out(k) = h(k, k).real();
        }
        const double root2 = std::sqrt(2.0);
        for (Eigen::Index p = 0; p < pairs(); ++p) {
            const Complex entry = h(pair_row(p), pair_col(p));
            out(m_ + p) = root2 * entry.real();
            out(m_ + pairs() + p) = root2 * entry.imag();
        }
        return out;
    }

    Mat from_coords(const RealVec& coords) const {
        Mat h = Mat::Zero(m_, m_);
        for (Eigen::Index k = 0; k < m_; ++k) {
            h(k, k) = coords(k);
        }
        const double inv_root2 = 1.0 / std::sqrt(2.0);
        for (Eigen::Index p = 0; p < pairs(); ++p) {
            const Complex entry =
                inv_root2 * Complex(coords(m_ + p), coords(m_ + pairs() + p));
            h(pair_row(p), pair_col(p)) = entry;
            h(pair_col(p), pair_row(p)) = std::conj(entry);
        }
        return h;
    }

  private:
    Eigen::Index m_;
    std::vector<Eigen::Index> pair_row_;
    std::vector<Eigen::Index> pair_col_;
};

// Matrix of the map Y -> tr_out(W (I (x) Y) W) in the Hermitian basis. The
// map decomposes over the output-index blocks of W as sum_{i,j} W_ij Y W_ji,
// so each basis element contributes outer products of block columns and rows.
Eigen::MatrixXd schur_matrix(const Mat& w, Eigen::Index dout, const HermitianBasis& basis) {
    const Eigen::Index m = w.rows() / dout;
    Eigen::MatrixXd out(basis.size(), basis.size());
    Mat image(m, m);
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index b = 0; b < basis.size(); ++b) {
        image.setZero();
        Eigen::Index k = 0;
        Eigen::Index l = 0;
        Complex weight_kl = 0.0;
        Complex weight_lk = 0.0;
        if (b < m) {
            k = b;
            l = b;
            weight_kl = 1.0;
        } else if (b < m + basis.pairs()) {
            k = basis.pair_row(b - m);
            l = basis.pair_col(b - m);
            weight_kl = inv_root2;
            weight_lk = inv_root2;
        } else {
            k = basis.pair_row(b - m - basis.pairs());
            l = basis.pair_col(b - m - basis.pairs());
            weight_kl = Complex(0.0, inv_root2);
            weight_lk = Complex(0.0, -inv_root2);
        }
        for (Eigen::Index i = 0; i < dout; ++i) {
            for (Eigen::Index j = 0; j < dout; ++j) {
                const auto block_col = [&](Eigen::Index col) {
                    return w.block(i * m, j * m + col, m, 1);
                };
                const auto block_row = [&](Eigen::Index row) {
                    return w.block(j * m + row, i * m, 1, m);
                };
                image.noalias() += weight_kl * (block_col(k) * block_row(l));
                if (weight_lk != 0.0) {
                    image.noalias() += weight_lk * (block_col(l) * block_row(k));
                }
            }
        }
        out.col(b) = basis.to_coords(hermitize(image));
    }
    return 0.5 * (out + out.transpose());
}

struct IterateSnapshot {
    Mat x;
    Mat y;
    SdpIterate stats;
    double score = std::numeric_limits<double>::infinity();
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
    if (problem.dim_out < 1 || problem.dim_in < 1) {
        throw std::invalid_argument("solve: dimensions must be positive");
    }
    const Eigen::Index dout = problem.dim_out;
    const Eigen::Index m = problem.dim_in;
    const Eigen::Index n = dout * m;
    if (problem.cost.rows() != n || problem.cost.cols() != n) {
        throw std::invalid_argument("solve: cost side must equal dim_out*dim_in");
    }
    require_hermitian(problem.cost, 1e-12, "solve");
    if (!(options.tol > 0.0)) {
        throw std::invalid_argument("solve: tolerance must be positive");
    }
    if (options.max_iterations < 1) {
        throw std::invalid_argument("solve: iteration cap must be positive");
    }

    const Mat cost = hermitize(problem.cost);
    const Mat eye_n = Mat::Identity(n, n);
    const Mat eye_m = Mat::Identity(m, m);
    const Mat eye_out = Mat::Identity(dout, dout);
    const HermitianBasis basis(m);

    HermitianEig cost_eig = eig_hermitian(cost);
    const double cost_norm = cost_eig.values.cwiseAbs().maxCoeff();

    Mat x = eye_n / static_cast<double>(dout);
    Mat y = (1.0 + cost_norm) * eye_m;
    Mat s = hermitize(kron(eye_out, y) - cost);

    std::vector<SdpIterate> trace;
    IterateSnapshot best;

    const auto finalize = [&](const Mat& xf, const Mat& yf, const SdpIterate& stats) {
        SdpSolution solution;
        solution.x = ChoiOperator{m, dout, xf};
        solution.dual_y = yf;
        solution.primal_value = stats.primal;
        solution.dual_value = stats.dual;
        solution.gap = stats.gap;
        solution.iterations = stats.iteration;
        solution.residuals.tp = stats.tp_residual;
        solution.residuals.psd = std::max(0.0, -min_eigenvalue(xf));
        solution.residuals.dual_psd =
            std::max(0.0, -min_eigenvalue(kron(eye_out, yf) - cost));
        solution.trace = trace;
        return solution;
    };

    for (int it = 0; it <= options.max_iterations; ++it) {
        const double mu = inner(x, s) / static_cast<double>(n);
        SdpIterate stats;
        stats.iteration = it;
        stats.primal = inner(cost, x);
        stats.dual = y.trace().real();
        stats.gap = stats.dual - stats.primal;
        stats.mu = mu;

        const Mat r_primal = eye_m - partial_trace(x, dout, m, Factor::First);
        const Mat r_dual = hermitize(cost + s - kron(eye_out, y));
        stats.tp_residual = max_abs(r_primal);
        stats.dual_residual = max_abs(r_dual);
        trace.push_back(stats);

        if (options.trace_stream != nullptr) {
            *options.trace_stream << "iter " << stats.iteration << " primal " << stats.primal
                                  << " dual " << stats.dual << " gap " << stats.gap << " tp "
                                  << stats.tp_residual << " dual_res " << stats.dual_residual
                                  << "\n";
        }

        const double scale = std::max(1.0, std::abs(stats.primal));
        const double score =
            std::max({stats.gap / scale, stats.tp_residual, stats.dual_residual});
        if (score < best.score) {
            best = IterateSnapshot{x, y, stats, score};
        }

        if (stats.gap <= options.tol * scale && stats.tp_residual <= kFeasibilityTol &&
            stats.dual_residual <= kFeasibilityTol) {
            return finalize(x, y, stats);
        }
        if (it == options.max_iterations) {
            break;
        }

        const auto [s_half, s_inv_half] = sqrt_pair(s);
        const Mat t_half = sqrt_pair(hermitize(s_half * x * s_half)).first;
        const Mat w = hermitize(s_inv_half * t_half * s_inv_half);
        const auto [g, g_inv] = sqrt_pair(w);
        const Mat v = hermitize(g * s * g);
        Eigen::SelfAdjointEigenSolver<Mat> v_eig(v);
        const RealVec v_values = v_eig.eigenvalues().cwiseMax(kEigenFloor);
        const Mat v_vectors = v_eig.eigenvectors();

        const auto lyapunov_inverse = [&](const Mat& rhs) {
            Mat rotated = v_vectors.adjoint() * rhs * v_vectors;
            for (Eigen::Index a = 0; a < n; ++a) {
                for (Eigen::Index b = 0; b < n; ++b) {
                    rotated(a, b) /= 0.5 * (v_values(a) + v_values(b));
                }
            }
            return hermitize(v_vectors * rotated * v_vectors.adjoint());
        };

        Eigen::MatrixXd schur = schur_matrix(w, dout, basis);
        const double regularization = 1e-14 * schur.trace() / static_cast<double>(basis.size());
        schur.diagonal().array() += regularization;
        Eigen::LLT<Eigen::MatrixXd> schur_llt(schur);
        Eigen::LDLT<Eigen::MatrixXd> schur_ldlt;
        const bool use_llt = schur_llt.info() == Eigen::Success;
        if (!use_llt) {
            schur_ldlt.compute(schur);
            if (schur_ldlt.info() != Eigen::Success) {
                throw SdpConvergenceError("solve: Newton system factorization failed",
                                          finalize(best.x, best.y, best.stats));
            }
        }
        const auto schur_solve = [&](const RealVec& rhs) -> RealVec {
            if (use_llt) {
                return schur_llt.solve(rhs);
            }
            return schur_ldlt.solve(rhs);
        };

        const auto newton = [&](const Mat& r_mz) {
            const Mat r_combined = hermitize(r_mz + w * r_dual * w);
            const Mat rhs = partial_trace(r_combined, dout, m, Factor::First) - r_primal;
            const Mat dy = basis.from_coords(schur_solve(basis.to_coords(hermitize(rhs))));
            const Mat ds = hermitize(kron(eye_out, dy) - r_dual);
            const Mat dx = hermitize(r_combined - w * kron(eye_out, dy) * w);
            return std::make_tuple(dx, dy, ds);
        };

        const auto [dx_aff, dy_aff, ds_aff] = newton(-x);
        const double alpha_p_aff = std::min(1.0, max_step(x, dx_aff));
        const double alpha_d_aff = std::min(1.0, max_step(s, ds_aff));
        const double mu_aff = inner(x + alpha_p_aff * dx_aff, s + alpha_d_aff * ds_aff) /
                              static_cast<double>(n);
        const double sigma =
            std::clamp(std::pow(mu_aff / std::max(mu, kEigenFloor), 3.0), 1e-6, 0.999);

        const Mat cross = hermitize((g_inv * dx_aff * g_inv) * (g * ds_aff * g));
        const Mat centering = sigma * mu * eye_n - v * v - cross;
        const Mat r_mz = hermitize(g * lyapunov_inverse(hermitize(centering)) * g);
        const auto [dx, dy, ds] = newton(r_mz);

        const double alpha_p = std::min(1.0, kFractionToBoundary * max_step(x, dx));
        const double alpha_d = std::min(1.0, kFractionToBoundary * max_step(s, ds));
        x = hermitize(x + alpha_p * dx);
        y = hermitize(y + alpha_d * dy);
        s = hermitize(s + alpha_d * ds);
    }

    SdpSolution best_solution = finalize(best.x, best.y, best.stats);
    throw SdpConvergenceError(
        "solve: no convergence within " + std::to_string(options.max_iterations) +
            " iterations (best gap " + std::to_string(best.stats.gap) + ")",
        std::move(best_solution));
}

}  // namespace qer
