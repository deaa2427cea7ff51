#include "schurlab/schur.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>

#include "schurlab/error.hpp"
#include "schurlab/runtime.hpp"

namespace schurlab::schur {

namespace {

constexpr const char* kModule = "schur";

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_square(const ComplexMatrix& a, int n, const char* what) {
  if (a.rows() != n || a.cols() != n)
    throw Error(kModule, ErrorCode::DimensionMismatch, std::string(what) + " must be n x n with n = " +
                                                           std::to_string(n));
}

void require_exponent(double p) {
  if (!(p >= 1)) throw Error(kModule, ErrorCode::BadExponent, "exponent below 1");
}

ComplexMatrix gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double re = nd(rng);
      double im = nd(rng);
      a(i, j) = Complex(re, im);
    }
  return a;
}

int resolve_threads(int t) { return t > 0 ? t : default_threads(); }

struct FastNorm {
  matrixnum::SvdResult f;
  double norm = 0;
};

FastNorm fast_norm(const ComplexMatrix& a, double p) {
  FastNorm r;
  r.f = matrixnum::svd_gram(a);
  r.norm = matrixnum::schatten_norm(r.f.s, p);
  return r;
}

}  // namespace

PointSet::PointSet(std::vector<double> labels) : x_(std::move(labels)) {
  if (x_.empty()) throw Error(kModule, ErrorCode::DimensionMismatch, "empty point set");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw Error(kModule, ErrorCode::InvalidArgument, "non-finite label");
    if (i > 0 && !(x_[i] > x_[i - 1]))
      throw Error(kModule, ErrorCode::InvalidArgument, "labels must be strictly increasing");
  }
}

PointSet PointSet::integers(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return PointSet(std::move(v));
}

DiscreteSymbol DiscreteSymbol::linear(Fn2 f) {
  DiscreteSymbol s;
  s.arity_ = 2;
  s.f2_ = std::move(f);
  return s;
}

DiscreteSymbol DiscreteSymbol::bilinear(Fn3 f) {
  DiscreteSymbol s;
  s.arity_ = 3;
  s.f3_ = std::move(f);
  return s;
}

Complex DiscreteSymbol::operator()(double a, double b) const {
  if (arity_ != 2) throw Error(kModule, ErrorCode::DimensionMismatch, "symbol has arity 3");
  return f2_(a, b);
}

Complex DiscreteSymbol::operator()(double a, double b, double c) const {
  if (arity_ != 3) throw Error(kModule, ErrorCode::DimensionMismatch, "symbol has arity 2");
  return f3_(a, b, c);
}

Grid2 tabulate2(const DiscreteSymbol& m, const PointSet& x) {
  const int n = x.size();
  ComplexMatrix v(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) v(i, k) = m(x[i], x[k]);
  return grid2_from_matrix(v);
}

Grid3 tabulate3(const DiscreteSymbol& m, const PointSet& x) {
  Grid3 g;
  g.n = x.size();
  g.values.resize(static_cast<std::size_t>(g.n) * g.n * g.n);
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.n; ++l) {
        Complex v = m(x[i], x[j], x[l]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw Error(kModule, ErrorCode::InvalidArgument, "non-finite symbol value");
        g.values[idx++] = v;
        g.sup = std::max(g.sup, std::abs(v));
      }
  return g;
}

Grid2 grid2_from_matrix(const ComplexMatrix& values) {
  if (values.rows() != values.cols() || values.rows() < 1)
    throw Error(kModule, ErrorCode::DimensionMismatch, "linear symbol grid must be square");
  if (!values.allFinite()) throw Error(kModule, ErrorCode::InvalidArgument, "non-finite symbol value");
  Grid2 g;
  g.values = values;
  g.sup = values.cwiseAbs().maxCoeff();
  return g;
}

Grid3 grid3_from_blocks(const ComplexMatrix& stacked) {
  const int n = static_cast<int>(stacked.cols());
  if (n < 1 || stacked.rows() != static_cast<long>(n) * n)
    throw Error(kModule, ErrorCode::DimensionMismatch, "bilinear grid must be n stacked n x n blocks");
  if (!stacked.allFinite()) throw Error(kModule, ErrorCode::InvalidArgument, "non-finite symbol value");
  Grid3 g;
  g.n = n;
  g.values.resize(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Complex v = stacked(static_cast<long>(i) * n + j, l);
        g.values[(static_cast<std::size_t>(i) * n + j) * n + l] = v;
        g.sup = std::max(g.sup, std::abs(v));
      }
  return g;
}

ComplexMatrix apply_linear(const Grid2& m, const ComplexMatrix& a) {
  require_square(a, m.size(), "A");
  return m.values.cwiseProduct(a);
}

ComplexMatrix apply_linear(const DiscreteSymbol& m, const PointSet& x, const ComplexMatrix& a) {
  return apply_linear(tabulate2(m, x), a);
}

ComplexMatrix apply_linear_adjoint(const Grid2& m, const ComplexMatrix& g) {
  require_square(g, m.size(), "G");
  return m.values.conjugate().cwiseProduct(g);
}

ComplexMatrix apply_bilinear(const Grid3& m, const ComplexMatrix& a, const ComplexMatrix& b) {
  const int n = m.n;
  require_square(a, n, "A");
  require_square(b, n, "B");
  RowMatrix br = b;
  RowMatrix c = RowMatrix::Zero(n, n);
  const Complex* mv = m.values.data();
  for (int i = 0; i < n; ++i) {
    Complex* crow = c.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0)) continue;
      const Complex* mrow = mv + (static_cast<std::size_t>(i) * n + j) * n;
      const Complex* brow = br.data() + static_cast<std::size_t>(j) * n;
      for (int l = 0; l < n; ++l) crow[l] += mrow[l] * aij * brow[l];
    }
  }
  return c;
}

ComplexMatrix apply_bilinear(const DiscreteSymbol& m, const PointSet& x, const ComplexMatrix& a,
                             const ComplexMatrix& b) {
  return apply_bilinear(tabulate3(m, x), a, b);
}

ComplexMatrix bilinear_adjoint_first(const Grid3& m, const ComplexMatrix& g, const ComplexMatrix& b) {
  const int n = m.n;
  require_square(g, n, "G");
  require_square(b, n, "B");
  RowMatrix gr = g, br = b;
  ComplexMatrix h(n, n);
  const Complex* mv = m.values.data();
  for (int i = 0; i < n; ++i) {
    const Complex* grow = gr.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const Complex* mrow = mv + (static_cast<std::size_t>(i) * n + j) * n;
      const Complex* brow = br.data() + static_cast<std::size_t>(j) * n;
      Complex acc = 0;
      for (int l = 0; l < n; ++l) acc += grow[l] * std::conj(mrow[l] * brow[l]);
      h(i, j) = acc;
    }
  }
  return h;
}

ComplexMatrix bilinear_adjoint_second(const Grid3& m, const ComplexMatrix& g, const ComplexMatrix& a) {
  const int n = m.n;
  require_square(g, n, "G");
  require_square(a, n, "A");
  RowMatrix gr = g;
  RowMatrix h = RowMatrix::Zero(n, n);
  const Complex* mv = m.values.data();
  for (int i = 0; i < n; ++i) {
    const Complex* grow = gr.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const Complex caij = std::conj(a(i, j));
      if (caij == Complex(0)) continue;
      const Complex* mrow = mv + (static_cast<std::size_t>(i) * n + j) * n;
      Complex* hrow = h.data() + static_cast<std::size_t>(j) * n;
      for (int l = 0; l < n; ++l) hrow[l] += grow[l] * std::conj(mrow[l]) * caij;
    }
  }
  return h;
}

ComplexMatrix triangular_truncation(const ComplexMatrix& a, const PointSet& x, Triangle which) {
  const int n = x.size();
  require_square(a, n, "A");
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const bool keep = which == Triangle::upper ? x[i] < x[k] : x[i] > x[k];
      if (keep) r(i, k) = a(i, k);
    }
  return r;
}

ComplexMatrix diagonal_part(const ComplexMatrix& a) {
  ComplexMatrix r = ComplexMatrix::Zero(a.rows(), a.cols());
  r.diagonal() = a.diagonal();
  return r;
}

ComplexMatrix off_diagonal_part(const ComplexMatrix& a) { return a - diagonal_part(a); }

DiscreteSymbol m_plus() {
  return DiscreteSymbol::linear([](double xi, double xk) -> Complex {
    if (xi < xk) return 1.0;
    if (xi > xk) return -1.0;
    return 0.0;
  });
}

DiscreteSymbol t_plus() {
  return DiscreteSymbol::linear([](double xi, double xk) -> Complex { return xi < xk ? 1.0 : 0.0; });
}

double linear_ratio(const Grid2& m, const ComplexMatrix& x, double p_in, double p_out) {
  const double nx = matrixnum::schatten_norm(x, p_in);
  if (nx == 0) return 0;
  return matrixnum::schatten_norm(apply_linear(m, x), p_out) / nx;
}

double bilinear_ratio(const Grid3& m, const ComplexMatrix& x, const ComplexMatrix& y, double p1, double p2,
                      double p) {
  const double d = matrixnum::schatten_norm(x, p1) * matrixnum::schatten_norm(y, p2);
  if (d == 0) return 0;
  return matrixnum::schatten_norm(apply_bilinear(m, x, y), p) / d;
}

NormEstimate norm_lower_estimate(const Grid2& m, double p_in, double p_out, const EstimateOptions& opt,
                                 const std::vector<ComplexMatrix>& seeds) {
  require_exponent(p_in);
  require_exponent(p_out);
  const int n = m.size();
  if (opt.budget.restarts < 1 || opt.budget.iterations < 0)
    throw Error(kModule, ErrorCode::InvalidArgument, "budget must have at least one restart");
  for (const auto& s : seeds) require_square(s, n, "seed");

  Eigen::Index ai = 0, ak = 0;
  m.values.cwiseAbs().maxCoeff(&ai, &ak);
  const int restarts = std::max<int>(opt.budget.restarts, 1 + static_cast<int>(seeds.size()));
  std::vector<NormEstimate> results(restarts);

  parallel_for(restarts, resolve_threads(opt.threads), [&](int r) {
    ComplexMatrix x;
    if (r == 0) {
      x = ComplexMatrix::Zero(n, n);
      x(ai, ak) = 1;
    } else if (r <= static_cast<int>(seeds.size())) {
      x = seeds[r - 1];
    } else {
      std::mt19937_64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(r)));
      x = gaussian(n, rng);
    }
    NormEstimate best;
    best.restart = r;
    for (int it = 0; it <= opt.budget.iterations; ++it) {
      auto fx = fast_norm(x, p_in);
      if (fx.norm == 0) break;
      x /= fx.norm;
      fx.f.s /= fx.norm;
      ComplexMatrix y = apply_linear(m, x);
      auto fy = fast_norm(y, p_out);
      const double ratio = fy.norm;
      if (ratio > best.ratio || best.x.size() == 0) {
        best.ratio = ratio;
        best.x = x;
      }
      if (it == opt.budget.iterations || ratio == 0) break;
      ComplexMatrix grad = apply_linear_adjoint(m, matrixnum::schatten_gradient(fy.f, p_out)) -
                           ratio * matrixnum::schatten_gradient(fx.f, p_in);
      const double gn = grad.norm();
      if (gn == 0) break;
      x += (opt.step / std::sqrt(static_cast<double>(it + 1))) * x.norm() / gn * grad;
    }
    results[r] = std::move(best);
  });

  NormEstimate out = results[0];
  for (int r = 1; r < restarts; ++r)
    if (results[r].ratio > out.ratio) out = results[r];
  if (out.x.size()) out.ratio = linear_ratio(m, out.x, p_in, p_out);
  return out;
}

NormEstimate norm_lower_estimate(const Grid3& m, double p1, double p2, double p, const EstimateOptions& opt,
                                 const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& seeds) {
  require_exponent(p1);
  require_exponent(p2);
  require_exponent(p);
  const int n = m.n;
  if (opt.budget.restarts < 1 || opt.budget.iterations < 0)
    throw Error(kModule, ErrorCode::InvalidArgument, "budget must have at least one restart");
  for (const auto& s : seeds) {
    require_square(s.first, n, "seed");
    require_square(s.second, n, "seed");
  }

  std::size_t arg = 0;
  for (std::size_t k = 1; k < m.values.size(); ++k)
    if (std::abs(m.values[k]) > std::abs(m.values[arg])) arg = k;
  const int ai = static_cast<int>(arg / (static_cast<std::size_t>(n) * n));
  const int aj = static_cast<int>((arg / n) % n);
  const int al = static_cast<int>(arg % n);

  const int restarts = std::max<int>(opt.budget.restarts, 1 + static_cast<int>(seeds.size()));
  std::vector<NormEstimate> results(restarts);

  parallel_for(restarts, resolve_threads(opt.threads), [&](int r) {
    ComplexMatrix x, y;
    if (r == 0) {
      x = ComplexMatrix::Zero(n, n);
      y = ComplexMatrix::Zero(n, n);
      x(ai, aj) = 1;
      y(aj, al) = 1;
    } else if (r <= static_cast<int>(seeds.size())) {
      x = seeds[r - 1].first;
      y = seeds[r - 1].second;
    } else {
      std::mt19937_64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(r)));
      x = gaussian(n, rng);
      y = gaussian(n, rng);
    }
    NormEstimate best;
    best.restart = r;
    for (int it = 0; it <= opt.budget.iterations; ++it) {
      auto fx = fast_norm(x, p1);
      auto fy = fast_norm(y, p2);
      if (fx.norm == 0 || fy.norm == 0) break;
      x /= fx.norm;
      fx.f.s /= fx.norm;
      y /= fy.norm;
      fy.f.s /= fy.norm;
      ComplexMatrix c = apply_bilinear(m, x, y);
      auto fc = fast_norm(c, p);
      const double ratio = fc.norm;
      if (ratio > best.ratio || best.x.size() == 0) {
        best.ratio = ratio;
        best.x = x;
        best.y = y;
      }
      if (it == opt.budget.iterations || ratio == 0) break;
      ComplexMatrix gc = matrixnum::schatten_gradient(fc.f, p);
      ComplexMatrix gx = bilinear_adjoint_first(m, gc, y) - ratio * matrixnum::schatten_gradient(fx.f, p1);
      ComplexMatrix gy = bilinear_adjoint_second(m, gc, x) - ratio * matrixnum::schatten_gradient(fy.f, p2);
      const double gn = std::sqrt(gx.squaredNorm() + gy.squaredNorm());
      if (gn == 0) break;
      const double eta = opt.step / std::sqrt(static_cast<double>(it + 1));
      x += eta * x.norm() / gn * gx;
      y += eta * y.norm() / gn * gy;
    }
    results[r] = std::move(best);
  });

  NormEstimate out = results[0];
  for (int r = 1; r < restarts; ++r)
    if (results[r].ratio > out.ratio) out = results[r];
  if (out.x.size()) out.ratio = bilinear_ratio(m, out.x, out.y, p1, p2, p);
  return out;
}

Grid2 read_grid2(std::istream& in) { return grid2_from_matrix(matrixnum::read_matrix(in)); }

Grid3 read_grid3(std::istream& in) { return grid3_from_blocks(matrixnum::read_matrix(in)); }

}  // namespace schurlab::schur
