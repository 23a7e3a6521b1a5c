#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qer {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Operator stored as a ket: amplitudes[i * dim2 + j] is the (i, j) matrix
// element of the housed dim1 x dim2 operator (row-major stacking).
struct OperatorKet {
    Eigen::Index dim1 = 0;
    Eigen::Index dim2 = 0;
    Vec amplitudes;
};

enum class Factor { First, Second };

struct HermitianEig {
    RealVec values;  // descending; ties keep the solver's ascending order
    Mat vectors;     // orthonormal columns, vectors.col(k) pairs with values(k)
};

double max_abs(const Mat& m);
Mat hermitize(const Mat& m);
bool is_hermitian(const Mat& m, double tol = 1e-12);
void require_hermitian(const Mat& m, double tol, const std::string& what);

Mat kron(const Mat& a, const Mat& b);
Mat partial_trace(const Mat& m, Eigen::Index d1, Eigen::Index d2, Factor factor);
OperatorKet vectorize(const Mat& c);
Mat devectorize(const OperatorKet& k);
HermitianEig eig_hermitian(const Mat& m);
Mat psd_sqrt(const Mat& m);

}  // namespace qer
