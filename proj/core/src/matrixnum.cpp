#include "schurlab/matrixnum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "schurlab/error.hpp"

namespace schurlab::matrixnum {

namespace {

constexpr const char* kModule = "matrixnum";

void check_matrix(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw Error(kModule, ErrorCode::DimensionMismatch, "empty matrix");
  if (!a.allFinite()) throw Error(kModule, ErrorCode::InvalidArgument, "non-finite entry");
}

void check_exponent(double p) {
  if (!(p >= 1)) throw Error(kModule, ErrorCode::BadExponent, "Schatten exponent below 1");
}

void permute_columns(ComplexMatrix& m, const std::vector<int>& order) {
  ComplexMatrix tmp(m.rows(), m.cols());
  for (int j = 0; j < static_cast<int>(order.size()); ++j) tmp.col(j) = m.col(order[j]);
  m.swap(tmp);
}

// Orthonormalise columns [from, cols) against all previous ones.
void complete_basis(ComplexMatrix& u, int from) {
  const int m = static_cast<int>(u.rows());
  int next_unit = 0;
  for (int j = from; j < u.cols(); ++j) {
    for (int attempt = 0; attempt <= m; ++attempt) {
      Eigen::VectorXcd v = u.col(j);
      if (attempt > 0 || v.norm() == 0) v = Eigen::VectorXcd::Unit(m, (next_unit++) % m);
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < j; ++i) v -= u.col(i).dot(v) * u.col(i);
      double nv = v.norm();
      if (nv > 1e-8) {
        u.col(j) = v / nv;
        break;
      }
    }
  }
}

}  // namespace

SvdResult svd(const ComplexMatrix& a_in) {
  check_matrix(a_in);
  const bool transposed = a_in.rows() < a_in.cols();
  ComplexMatrix a = transposed ? ComplexMatrix(a_in.adjoint()) : a_in;
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double tol = std::numeric_limits<double>::epsilon() * m;
  const int max_sweeps = 100 * std::max(m, n);

  std::vector<int> order(n);
  Eigen::VectorXd norms(n);
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int j = 0; j < n; ++j) norms(j) = a.col(j).squaredNorm();
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return norms(x) > norms(y); });
    if (!std::is_sorted(order.begin(), order.end())) {
      permute_columns(a, order);
      permute_columns(v, order);
    }
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const Complex gamma = a.col(p).dot(a.col(q));
        const double g = std::abs(gamma);
        if (g == 0 || g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma / g);
        const double zeta = (beta - alpha) / (2 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = c * t;
        Eigen::VectorXcd ap = a.col(p);
        Eigen::VectorXcd aq = a.col(q) * phase;
        a.col(p) = c * ap - s * aq;
        a.col(q) = s * ap + c * aq;
        Eigen::VectorXcd vp = v.col(p);
        Eigen::VectorXcd vq = v.col(q) * phase;
        v.col(p) = c * vp - s * vq;
        v.col(q) = s * vp + c * vq;
      }
    }
    if (!rotated) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(kModule, ErrorCode::ConvergenceFailure, "Jacobi sweep budget exhausted");

  Eigen::VectorXd s(n);
  for (int j = 0; j < n; ++j) s(j) = a.col(j).norm();
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return s(x) > s(y); });
  permute_columns(a, order);
  permute_columns(v, order);
  Eigen::VectorXd sorted(n);
  for (int j = 0; j < n; ++j) sorted(j) = s(order[j]);

  ComplexMatrix u(m, n);
  const double cutoff = sorted(0) * std::numeric_limits<double>::epsilon() * m;
  int rank = 0;
  while (rank < n && sorted(rank) > cutoff && sorted(rank) > 0) {
    u.col(rank) = a.col(rank) / sorted(rank);
    ++rank;
  }
  for (int j = rank; j < n; ++j) u.col(j) = a.col(j);
  complete_basis(u, rank);

  SvdResult r;
  r.s = sorted;
  if (transposed) {
    r.U = v;
    r.V = u;
  } else {
    r.U = u;
    r.V = v;
  }
  return r;
}

SvdResult svd_fast(const ComplexMatrix& a) {
  check_matrix(a);
  Eigen::BDCSVD<ComplexMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw Error(kModule, ErrorCode::ConvergenceFailure, "BDCSVD failed");
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

SvdResult svd_gram(const ComplexMatrix& a) {
  check_matrix(a);
  if (a.cols() > a.rows()) {
    auto t = svd_gram(a.adjoint());
    return {t.V, t.s, t.U};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a);
  if (es.info() != Eigen::Success) throw Error(kModule, ErrorCode::ConvergenceFailure, "Hermitian eigensolver failed");
  const Eigen::Index k = a.cols();
  SvdResult r{ComplexMatrix::Zero(a.rows(), k), Eigen::VectorXd(k), ComplexMatrix(k, k)};
  const double floor = es.eigenvalues().cwiseAbs().maxCoeff() * 1e-28;
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index src = k - 1 - c;  // eigenvalues ascend
    const double ev = es.eigenvalues()(src);
    r.s(c) = ev > 0 ? std::sqrt(ev) : 0;
    r.V.col(c) = es.eigenvectors().col(src);
    if (ev > floor && r.s(c) > 0) r.U.col(c) = a * r.V.col(c) / r.s(c);
  }
  return r;
}

SingularSpectrum singular_values(const ComplexMatrix& a) {
  auto f = svd(a);
  return {std::vector<double>(f.s.data(), f.s.data() + f.s.size())};
}

double conjugate_exponent(double p) {
  check_exponent(p);
  if (p == 1) return kInf;
  if (std::isinf(p)) return 1;
  return p / (p - 1);
}

double schatten_norm(const Eigen::VectorXd& s, double p) {
  check_exponent(p);
  const double top = s.size() ? s.cwiseAbs().maxCoeff() : 0.0;
  if (top == 0) return 0;
  if (std::isinf(p)) return top;
  double acc = 0;
  for (int i = 0; i < s.size(); ++i) acc += std::pow(std::abs(s(i)) / top, p);
  return top * std::pow(acc, 1 / p);
}

double schatten_norm(const ComplexMatrix& a, double p) {
  check_exponent(p);
  if (p == 2) {
    check_matrix(a);
    return a.norm();
  }
  return schatten_norm(svd(a).s, p);
}

ComplexMatrix schatten_gradient(const SvdResult& f, double p) {
  check_exponent(p);
  const double nrm = schatten_norm(f.s, p);
  ComplexMatrix g = ComplexMatrix::Zero(f.U.rows(), f.V.rows());
  if (nrm == 0) return g;
  if (std::isinf(p)) return f.U.col(0) * f.V.col(0).adjoint();
  Eigen::VectorXd w(f.s.size());
  for (int i = 0; i < f.s.size(); ++i) w(i) = std::pow(f.s(i) / nrm, p - 1);
  return f.U * w.asDiagonal() * f.V.adjoint();
}

double decreasing_rearrangement(const SingularSpectrum& s, double t) {
  if (!(t >= 0)) throw Error(kModule, ErrorCode::InvalidArgument, "t must be non-negative");
  const double idx = std::floor(t);
  if (idx >= static_cast<double>(s.values.size())) return 0;
  return s.values[static_cast<std::size_t>(idx)];
}

double marcinkiewicz_norm(const SingularSpectrum& s) {
  // int_0^t mu is piecewise linear; on each [k, k+1] the ratio with log(1+t)
  // has no interior maximum, so the sup is attained at an integer breakpoint.
  double best = 0, partial = 0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    partial += s.values[k];
    best = std::max(best, partial / std::log1p(static_cast<double>(k + 1)));
  }
  return best;
}

double marcinkiewicz_norm(const ComplexMatrix& a) { return marcinkiewicz_norm(singular_values(a)); }

std::pair<ComplexMatrix, ComplexMatrix> holder_split(const ComplexMatrix& z, double p) {
  check_exponent(p);
  if (z.rows() != z.cols()) throw Error(kModule, ErrorCode::DimensionMismatch, "square matrix required");
  auto f = svd(z);
  Eigen::VectorXd root = f.s.cwiseSqrt();
  ComplexMatrix half = root.asDiagonal() * f.V.adjoint();
  return {f.U * half, f.V * half};
}

ComplexMatrix read_matrix(std::istream& in) {
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw Error(kModule, ErrorCode::DimensionMismatch, "bad matrix header");
  ComplexMatrix a(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      if (!(in >> re >> im)) throw Error(kModule, ErrorCode::DimensionMismatch, "truncated matrix body");
      a(i, j) = Complex(re, im);
    }
  return a;
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  out << std::setprecision(17);
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << a(i, j).real() << ' ' << a(i, j).imag();
    }
    out << '\n';
  }
}

}  // namespace schurlab::matrixnum
