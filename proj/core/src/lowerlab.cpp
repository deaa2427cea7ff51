#include "schurlab/lowerlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "schurlab/error.hpp"

namespace schurlab::lowerlab {

namespace {

constexpr const char* kModule = "lowerlab";

double log_add(double x, double y) {
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(-std::abs(x - y)));
}

// log |e^x - e^y|, x != y
double log_sub(double x, double y) {
  const double m = std::max(x, y);
  return m + std::log(-std::expm1(-std::abs(x - y)));
}

// 1 / (1 + e^t)
double logistic_neg(double t) {
  if (t > 0) {
    const double e = std::exp(-t);
    return e / (1 + e);
  }
  return 1 / (1 + std::exp(t));
}

void check_index(const Discretization& d, int i, int j, int l) {
  if (i < 1 || j < 1 || l < 1 || i > d.n || j > d.n || l > d.n)
    throw Error(kModule, ErrorCode::IndexConstraint, "indices must lie in 1..n");
}

}  // namespace

const char* to_string(Variant v) { return v == Variant::B1 ? "B1" : "B2"; }

Variant variant_from_string(const std::string& s) {
  if (s == "B1" || s == "b1") return Variant::B1;
  if (s == "B2" || s == "b2") return Variant::B2;
  throw Error(kModule, ErrorCode::InvalidArgument, "variant must be B1 or B2");
}

void validate(const Discretization& d) {
  if (!(d.q > 0 && d.q < 1)) throw Error(kModule, ErrorCode::InvalidArgument, "q must lie in (0, 1)");
  if (d.k < 1 || d.n < 1) throw Error(kModule, ErrorCode::InvalidArgument, "k and n must be positive");
}

std::array<LogNode, 3> log_nodes(const Discretization& d, int i, int j, int l) {
  validate(d);
  const double lq = d.k * std::log(d.q);
  if (d.variant == Variant::B1) return {{{1, lq * i}, {-1, lq * j}, {1, lq * l}}};
  return {{{1, lq * i}, {1, lq * (i + l)}, {-1, lq * l}}};
}

std::array<double, 3> node_values(const Discretization& d, int i, int j, int l) {
  validate(d);
  check_index(d, i, j, l);
  if (d.k * d.n * std::log2(1 / d.q) > 900)
    throw Error(kModule, ErrorCode::InvalidArgument, "k n log2(1/q) > 900: plain node values underflow");
  const auto ln = log_nodes(d, i, j, l);
  return {ln[0].sign * std::exp(ln[0].log_abs), ln[1].sign * std::exp(ln[1].log_abs),
          ln[2].sign * std::exp(ln[2].log_abs)};
}

double phi_value(const Discretization& d, int i, int j, int l) {
  const auto ln = log_nodes(d, i, j, l);
  if (d.variant == Variant::B1) {
    // nodes (a, -b, c): f^[2] = b(a - b) / ((a + b)(b + c)) + c / (b + c)
    const double la = ln[0].log_abs, lb = ln[1].log_abs, lc = ln[2].log_abs;
    const double t2 = logistic_neg(lb - lc);
    if (la == lb) return t2;
    const double sign = la > lb ? 1.0 : -1.0;
    const double t1 = sign * std::exp(lb + log_sub(la, lb) - log_add(la, lb) - log_add(lb, lc));
    return t1 + t2;
  }
  // nodes (a, b, -c): f^[2] = a / (a + c) + c(b - c) / ((a + c)(b + c))
  const double la = ln[0].log_abs, lb = ln[1].log_abs, lc = ln[2].log_abs;
  const double t1 = logistic_neg(lc - la);
  if (lb == lc) return t1;
  const double sign = lb > lc ? 1.0 : -1.0;
  const double t2 = sign * std::exp(lc + log_sub(lb, lc) - log_add(la, lc) - log_add(lb, lc));
  return t1 + t2;
}

double phi_symbol(const Discretization& d, int i, int j, int l) {
  validate(d);
  check_index(d, i, j, l);
  if (d.variant == Variant::B1 && (i == j || j == l))
    throw Error(kModule, ErrorCode::IndexConstraint, "B1 needs i != j and j != l");
  if (d.variant == Variant::B2 && i == l) throw Error(kModule, ErrorCode::IndexConstraint, "B2 needs i != l");
  return phi_value(d, i, j, l);
}

double limit_symbol(Variant v, int i, int j, int l) {
  if (v == Variant::B1) {
    if (i == j || j == l) throw Error(kModule, ErrorCode::IndexConstraint, "B1 needs i != j and j != l");
    return (j < i && j < l) ? -1.0 : 1.0;
  }
  if (i == l) throw Error(kModule, ErrorCode::IndexConstraint, "B2 needs i != l");
  return i < l ? 1.0 : -1.0;
}

double limit_convergence_report(const Discretization& d) {
  validate(d);
  double worst = 0;
  for (int i = 1; i <= d.n; ++i)
    for (int j = 1; j <= d.n; ++j)
      for (int l = 1; l <= d.n; ++l) {
        if (d.variant == Variant::B1 && (i == j || j == l)) continue;
        if (d.variant == Variant::B2 && i == l) continue;
        worst = std::max(worst, std::abs(phi_symbol(d, i, j, l) - limit_symbol(d.variant, i, j, l)));
      }
  return worst;
}

schur::Grid3 phi_grid(const Discretization& d) {
  validate(d);
  schur::Grid3 g;
  g.n = d.n;
  g.values.resize(static_cast<std::size_t>(d.n) * d.n * d.n);
  std::size_t idx = 0;
  for (int i = 1; i <= d.n; ++i)
    for (int j = 1; j <= d.n; ++j)
      for (int l = 1; l <= d.n; ++l) {
        const double v = phi_value(d, i, j, l);
        g.values[idx++] = v;
        g.sup = std::max(g.sup, std::abs(v));
      }
  return g;
}

ComplexMatrix volterra_matrix(int n) {
  if (n < 1) throw Error(kModule, ErrorCode::InvalidArgument, "n must be positive");
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) v(i, k) = 1.0 / n;
    v(i, i) = 0.5 / n;
  }
  return v;
}

std::vector<ComplexMatrix> volterra_seeds(int n) {
  std::vector<ComplexMatrix> seeds;
  const ComplexMatrix v = volterra_matrix(n);
  seeds.push_back(v);
  seeds.push_back(v.adjoint());
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) h(i, k) = 1.0 / (i - k + 0.5);
  seeds.push_back(h);
  seeds.push_back(h.adjoint());
  return seeds;
}

std::vector<SweepRow> truncation_norm_sweep(const std::vector<double>& ps, int n,
                                            const schur::EstimateOptions& opt) {
  const auto x = schur::PointSet::integers(n);
  const auto tp = schur::tabulate2(schur::t_plus(), x);
  const auto mp = schur::tabulate2(schur::m_plus(), x);
  const auto seeds = volterra_seeds(n);
  std::vector<SweepRow> rows;
  for (double p : ps) {
    SweepRow r;
    r.p = p;
    r.t_plus = schur::norm_lower_estimate(tp, p, p, opt, seeds).ratio;
    r.m_plus = schur::norm_lower_estimate(mp, p, p, opt, seeds).ratio;
    rows.push_back(r);
  }
  return rows;
}

ComplexMatrix b1_factorized(const ComplexMatrix& y, const ComplexMatrix& x) {
  const auto pts = schur::PointSet::integers(static_cast<int>(x.rows()));
  return y * x - 2.0 * schur::triangular_truncation(y, pts, schur::Triangle::lower) *
                     schur::triangular_truncation(x, pts, schur::Triangle::upper);
}

ExperimentRow b1_experiment(double p, const Discretization& d_in, const schur::EstimateOptions& opt) {
  Discretization d = d_in;
  d.variant = Variant::B1;
  validate(d);
  if (!(p >= 1)) throw Error(kModule, ErrorCode::BadExponent, "p must be >= 1");
  const auto pts = schur::PointSet::integers(d.n);
  const auto mp = schur::tabulate2(schur::m_plus(), pts);
  const auto est = schur::norm_lower_estimate(mp, 2 * p, 2 * p, opt, volterra_seeds(d.n));

  const ComplexMatrix x = schur::off_diagonal_part(est.x);
  const ComplexMatrix y = schur::off_diagonal_part(est.x.adjoint());
  const ComplexMatrix action = schur::apply_bilinear(phi_grid(d), y, x);
  const ComplexMatrix limit = b1_factorized(y, x);

  ExperimentRow r;
  r.variant = Variant::B1;
  r.p = p;
  r.n = d.n;
  r.q = d.q;
  r.k = d.k;
  r.seed = opt.seed;
  r.nu = est.ratio;
  r.direct_value = matrixnum::schatten_norm(action, p);
  const double nx = matrixnum::schatten_norm(x, 2 * p);
  r.implied_bound = nx == 0 ? 0 : r.direct_value / (nx * nx);
  r.reference_value = matrixnum::schatten_norm(limit, p);
  const double scale = limit.norm();
  r.reference_gap = scale == 0 ? (action - limit).norm() : (action - limit).norm() / scale;
  return r;
}

ExperimentRow b2_experiment(double p, const Discretization& d_in, const schur::EstimateOptions& opt) {
  Discretization d = d_in;
  d.variant = Variant::B2;
  validate(d);
  if (!(p >= 1)) throw Error(kModule, ErrorCode::BadExponent, "p must be >= 1");
  const auto pts = schur::PointSet::integers(d.n);
  const auto mp = schur::tabulate2(schur::m_plus(), pts);
  const auto est = schur::norm_lower_estimate(mp, p, p, opt, volterra_seeds(d.n));

  const ComplexMatrix& z = est.x;
  const auto [y, x] = matrixnum::holder_split(z, p);
  const ComplexMatrix action = schur::off_diagonal_part(schur::apply_bilinear(phi_grid(d), y, x));

  ExperimentRow r;
  r.variant = Variant::B2;
  r.p = p;
  r.n = d.n;
  r.q = d.q;
  r.k = d.k;
  r.seed = opt.seed;
  r.nu = est.ratio;
  r.direct_value = matrixnum::schatten_norm(action, p);
  const double den = matrixnum::schatten_norm(y, 2 * p) * matrixnum::schatten_norm(x, 2 * p);
  r.implied_bound = den == 0 ? 0 : r.direct_value / den;
  r.reference_value = matrixnum::schatten_norm(schur::apply_linear(mp, z), p);
  r.reference_gap = std::abs(r.reference_value - r.direct_value);
  return r;
}

std::string csv_header() { return "variant,p,n,q,k,nu,direct_value,implied_bound,reference_value,reference_gap,seed"; }

std::string csv_row(const ExperimentRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.12g,%d,%.12g,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%llu", to_string(r.variant), r.p,
                r.n, r.q, r.k, r.nu, r.direct_value, r.implied_bound, r.reference_value, r.reference_gap,
                static_cast<unsigned long long>(r.seed));
  return buf;
}

}  // namespace schurlab::lowerlab
