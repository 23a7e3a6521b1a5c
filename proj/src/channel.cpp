#include "qer/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qer {

KrausChannel make_kraus_channel(std::vector<Mat> elements) {
    if (elements.empty()) {
        throw std::invalid_argument("make_kraus_channel: element list is empty");
    }
    const Eigen::Index rows = elements.front().rows();
    const Eigen::Index cols = elements.front().cols();
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("make_kraus_channel: elements must be non-empty matrices");
    }
    for (const Mat& e : elements) {
        if (e.rows() != rows || e.cols() != cols) {
            throw std::invalid_argument("make_kraus_channel: elements must share dimensions");
        }
    }
    return KrausChannel{cols, rows, std::move(elements)};
}

DensityOperator make_density(const Mat& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) {
        throw std::invalid_argument("make_density: matrix must be square");
    }
    require_hermitian(rho, 1e-12, "make_density");
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12) {
        throw std::invalid_argument("make_density: trace must equal one");
    }
    HermitianEig eig = eig_hermitian(rho);
    if (eig.values.minCoeff() < -1e-10) {
        throw std::invalid_argument("make_density: matrix is not positive semidefinite");
    }
    return DensityOperator{rho.rows(), hermitize(rho)};
}

DensityOperator maximally_mixed(Eigen::Index dim) {
    if (dim < 1) {
        throw std::invalid_argument("maximally_mixed: dimension must be positive");
    }
    return DensityOperator{dim, Mat::Identity(dim, dim) / static_cast<double>(dim)};
}

KrausChannel amplitude_damping(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("amplitude_damping: gamma must lie in [0, 1]");
    }
    Mat e0 = Mat::Zero(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - gamma);
    Mat e1 = Mat::Zero(2, 2);
    e1(0, 1) = std::sqrt(gamma);
    return KrausChannel{2, 2, {e0, e1}};
}

ChoiOperator kraus_to_choi(const KrausChannel& k) {
    const Eigen::Index side = k.dim_out * k.dim_in;
    Mat x = Mat::Zero(side, side);
    for (const Mat& e : k.elements) {
        const Vec ket = vectorize(e).amplitudes;
        x.noalias() += ket * ket.adjoint();
    }
    return ChoiOperator{k.dim_in, k.dim_out, hermitize(x)};
}

KrausChannel choi_to_kraus(const ChoiOperator& c) {
    HermitianEig eig = eig_hermitian(c.x);
    const double lambda_max = eig.values.size() > 0 ? eig.values(0) : 0.0;
    if (eig.values.minCoeff() < -1e-9) {
        throw std::invalid_argument("choi_to_kraus: operator is not completely positive");
    }
    const double threshold = 1e-10 * std::max(lambda_max, 0.0);
    std::vector<Mat> elements;
    for (Eigen::Index m = 0; m < eig.values.size(); ++m) {
        if (eig.values(m) <= threshold) {
            continue;
        }
        const Vec scaled = std::sqrt(eig.values(m)) * eig.vectors.col(m);
        elements.push_back(devectorize(OperatorKet{c.dim_out, c.dim_in, scaled}));
    }
    return KrausChannel{c.dim_in, c.dim_out, std::move(elements)};
}

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
    if (rho.dim != ch.dim_in) {
        throw std::invalid_argument("apply: density dimension must match channel input");
    }
    Mat out = Mat::Zero(ch.dim_out, ch.dim_out);
    for (const Mat& e : ch.elements) {
        out.noalias() += e * rho.rho * e.adjoint();
    }
    return DensityOperator{ch.dim_out, out};
}

DensityOperator apply(const ChoiOperator& ch, const DensityOperator& rho) {
    if (rho.dim != ch.dim_in) {
        throw std::invalid_argument("apply: density dimension must match channel input");
    }
    Mat out = Mat::Zero(ch.dim_out, ch.dim_out);
    for (Eigen::Index i1 = 0; i1 < ch.dim_out; ++i1) {
        for (Eigen::Index i2 = 0; i2 < ch.dim_out; ++i2) {
            Complex sum = 0.0;
            for (Eigen::Index j1 = 0; j1 < ch.dim_in; ++j1) {
                for (Eigen::Index j2 = 0; j2 < ch.dim_in; ++j2) {
                    sum += ch.x(i1 * ch.dim_in + j1, i2 * ch.dim_in + j2) * rho.rho(j1, j2);
                }
            }
            out(i1, i2) = sum;
        }
    }
    return DensityOperator{ch.dim_out, out};
}

CptpReport is_cptp(const KrausChannel& ch, double tol) {
    Mat sum = Mat::Zero(ch.dim_in, ch.dim_in);
    for (const Mat& e : ch.elements) {
        sum.noalias() += e.adjoint() * e;
    }
    CptpReport report;
    report.cp_residual = 0.0;
    report.cp = true;
    report.tp_residual = max_abs(sum - Mat::Identity(ch.dim_in, ch.dim_in));
    report.tp = report.tp_residual <= tol;
    return report;
}

CptpReport is_cptp(const ChoiOperator& ch, double tol) {
    CptpReport report;
    HermitianEig eig = eig_hermitian(ch.x);
    report.cp_residual = std::max(0.0, -eig.values.minCoeff());
    report.cp = report.cp_residual <= tol;
    Mat traced = partial_trace(ch.x, ch.dim_out, ch.dim_in, Factor::First);
    report.tp_residual = max_abs(traced - Mat::Identity(ch.dim_in, ch.dim_in));
    report.tp = report.tp_residual <= tol;
    return report;
}

ChoiOperator compose_choi(const ChoiOperator& x_r, const KrausChannel& e) {
    if (x_r.dim_in != e.dim_out) {
        throw std::invalid_argument("compose_choi: recovery input must match channel output");
    }
    const Eigen::Index side = x_r.dim_out * e.dim_in;
    const Mat eye = Mat::Identity(x_r.dim_out, x_r.dim_out);
    Mat out = Mat::Zero(side, side);
    for (const Mat& ej : e.elements) {
        const Mat m = kron(eye, ej.transpose());
        out.noalias() += m * x_r.x * m.adjoint();
    }
    return ChoiOperator{e.dim_in, x_r.dim_out, hermitize(out)};
}

KrausChannel tensor_power(const KrausChannel& ch, int n) {
    if (n < 1) {
        throw std::invalid_argument("tensor_power: exponent must be at least one");
    }
    KrausChannel out = ch;
    for (int step = 1; step < n; ++step) {
        std::vector<Mat> next;
        next.reserve(out.elements.size() * ch.elements.size());
        for (const Mat& a : out.elements) {
            for (const Mat& b : ch.elements) {
                next.push_back(kron(a, b));
            }
        }
        out.elements = std::move(next);
        out.dim_in *= ch.dim_in;
        out.dim_out *= ch.dim_out;
    }
    return out;
}

}  // namespace qer
