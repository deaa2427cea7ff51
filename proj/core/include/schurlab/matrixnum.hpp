#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

namespace schurlab::matrixnum {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Non-increasing singular values.
struct SingularSpectrum {
  std::vector<double> values;
};

// A = U * diag(s) * V^*, s non-increasing, U and V with orthonormal columns.
struct SvdResult {
  ComplexMatrix U;
  Eigen::VectorXd s;
  ComplexMatrix V;
};

// One-sided (Hestenes) Jacobi with column-norm pivoting and a fixed cyclic
// sweep order. Throws ConvergenceFailure past 100*max(rows, cols) sweeps.
SvdResult svd(const ComplexMatrix& a);

// Divide-and-conquer SVD for inner optimisation loops.
SvdResult svd_fast(const ComplexMatrix& a);

// Eigendecomposition of the Gram matrix. Small singular values lose relative
// accuracy and their U columns are zero; for ascent loops only.
SvdResult svd_gram(const ComplexMatrix& a);

SingularSpectrum singular_values(const ComplexMatrix& a);

double conjugate_exponent(double p);

// p in [1, inf]; pass kInf for the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);
double schatten_norm(const Eigen::VectorXd& s, double p);

// Real gradient of ||.||_p at a (Re tr(G^* dA) convention).
ComplexMatrix schatten_gradient(const SvdResult& f, double p);

// mu_t = s_{floor(t)+1}, 0 past the end.
double decreasing_rearrangement(const SingularSpectrum& s, double t);

// sup_{t>0} (int_0^t mu) / log(1+t).
double marcinkiewicz_norm(const SingularSpectrum& s);
double marcinkiewicz_norm(const ComplexMatrix& a);

// z = y x with y = U|z|^{1/2}, x = |z|^{1/2}. Returns {y, x}.
std::pair<ComplexMatrix, ComplexMatrix> holder_split(const ComplexMatrix& z, double p);

// "rows cols" then row-major "re im" pairs.
ComplexMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const ComplexMatrix& a);

}  // namespace schurlab::matrixnum
