#include "qer/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qer {

double max_abs(const Mat& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

Mat hermitize(const Mat& m) {
    return 0.5 * (m + m.adjoint());
}

bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const double scale = std::max(1.0, max_abs(m));
    return max_abs(m - m.adjoint()) <= tol * scale;
}

void require_hermitian(const Mat& m, double tol, const std::string& what) {
    if (!is_hermitian(m, tol)) {
        throw std::invalid_argument(what + ": matrix is not Hermitian");
    }
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Mat partial_trace(const Mat& m, Eigen::Index d1, Eigen::Index d2, Factor factor) {
    if (d1 < 1 || d2 < 1) {
        throw std::invalid_argument("partial_trace: factor dimensions must be positive");
    }
    if (m.rows() != m.cols() || m.rows() != d1 * d2) {
        throw std::invalid_argument("partial_trace: matrix side must equal d1*d2");
    }
    if (factor == Factor::First) {
        Mat out = Mat::Zero(d2, d2);
        for (Eigen::Index k = 0; k < d1; ++k) {
            out += m.block(k * d2, k * d2, d2, d2);
        }
        return out;
    }
    Mat out = Mat::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i) {
        for (Eigen::Index j = 0; j < d1; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index k = 0; k < d2; ++k) {
                sum += m(i * d2 + k, j * d2 + k);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

OperatorKet vectorize(const Mat& c) {
    OperatorKet ket{c.rows(), c.cols(), Vec(c.size())};
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            ket.amplitudes(i * c.cols() + j) = c(i, j);
        }
    }
    return ket;
}

Mat devectorize(const OperatorKet& k) {
    if (k.dim1 < 1 || k.dim2 < 1 || k.amplitudes.size() != k.dim1 * k.dim2) {
        throw std::invalid_argument("devectorize: amplitude length must equal dim1*dim2");
    }
    Mat c(k.dim1, k.dim2);
    for (Eigen::Index i = 0; i < k.dim1; ++i) {
        for (Eigen::Index j = 0; j < k.dim2; ++j) {
            c(i, j) = k.amplitudes(i * k.dim2 + j);
        }
    }
    return c;
}

HermitianEig eig_hermitian(const Mat& m) {
    require_hermitian(m, 1e-12, "eig_hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(m));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigendecomposition failed");
    }
    const RealVec& w = solver.eigenvalues();
    const Mat& v = solver.eigenvectors();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(w.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&w](Eigen::Index a, Eigen::Index b) { return w(a) > w(b); });

    HermitianEig out;
    out.values.resize(w.size());
    out.vectors.resize(v.rows(), v.cols());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        out.values(k) = w(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

Mat psd_sqrt(const Mat& m) {
    HermitianEig eig = eig_hermitian(m);
    if (eig.values.size() > 0 && eig.values.minCoeff() < -1e-10) {
        throw std::invalid_argument("psd_sqrt: matrix is not positive semidefinite");
    }
    RealVec roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    return hermitize(eig.vectors * roots.asDiagonal() * eig.vectors.adjoint());
}

}  // namespace qer
