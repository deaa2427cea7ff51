#include "schurlab/hms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "schurlab/error.hpp"

namespace schurlab::hms {

namespace {

constexpr const char* kModule = "hms";

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Complex central(const std::function<Complex(double, double)>& f, double l, double m, bool wrt_lambda) {
  const double x = wrt_lambda ? l : m;
  const double h = 1e-6 * (1 + std::abs(x));
  if (wrt_lambda) return (f(l + h, m) - f(l - h, m)) / (2 * h);
  return (f(l, m + h) - f(l, m - h)) / (2 * h);
}

}  // namespace

std::vector<double> chebyshev_lobatto(double lo, double hi, int n) {
  if (n < 2) throw Error(kModule, ErrorCode::InvalidArgument, "need at least two grid points");
  std::vector<double> x(n);
  const double c = (lo + hi) / 2, r = (hi - lo) / 2;
  for (int j = 0; j < n; ++j) x[j] = c - r * std::cos(std::numbers::pi * j / (n - 1));
  x.front() = lo;
  x.back() = hi;
  return x;
}

HmsResult hms_norm(const TwoVariableSymbol& phi, const GridSpec& grid) {
  if (!(grid.hi > grid.lo)) throw Error(kModule, ErrorCode::InvalidArgument, "empty box");
  const double width = grid.hi - grid.lo;
  const double delta = grid.margin < 0 ? 1e-3 * width : grid.margin;
  if (!(delta > 0)) throw Error(kModule, ErrorCode::DiagonalMargin, "diagonal margin must be positive");
  const auto xs = chebyshev_lobatto(grid.lo, grid.hi, grid.points);
  HmsResult r;
  for (double l : xs) {
    for (double m : xs) {
      if (std::abs(l - m) < delta) continue;
      if (phi.domain && !phi.domain(l, m)) continue;
      const Complex v = phi.value(l, m);
      const Complex dl = phi.d_lambda ? phi.d_lambda(l, m) : central(phi.value, l, m, true);
      const Complex dm = phi.d_mu ? phi.d_mu(l, m) : central(phi.value, l, m, false);
      r.sup_value = std::max(r.sup_value, std::abs(v));
      r.sup_derivative = std::max(r.sup_derivative, std::abs(l - m) * (std::abs(dl) + std::abs(dm)));
      ++r.evaluated;
    }
  }
  r.norm = r.sup_value + r.sup_derivative;
  return r;
}

TwoVariableSymbol divdiff_symbol(const divdiff::ScalarFunction& f, int n, int k, bool signed_variant) {
  if (k < 0 || k > n + 1) throw Error(kModule, ErrorCode::InvalidArgument, "need 0 <= k <= n+1");
  auto sign = [signed_variant](double l, double m) { return signed_variant ? (m - l >= 0 ? 1.0 : -1.0) : 1.0; };
  TwoVariableSymbol s;
  s.value = [f, n, k, sign](double l, double m) -> Complex {
    return sign(l, m) * divdiff::divdiff_two_var(f, n, k, l, m);
  };
  s.d_lambda = [f, n, k, sign](double l, double m) -> Complex {
    return sign(l, m) * divdiff::divdiff_partial(f, n, k, l, m, divdiff::Variable::lambda);
  };
  s.d_mu = [f, n, k, sign](double l, double m) -> Complex {
    return sign(l, m) * divdiff::divdiff_partial(f, n, k, l, m, divdiff::Variable::mu);
  };
  return s;
}

TwoVariableSymbol ks_symbol(double s, int sigma) {
  if (sigma != 1 && sigma != -1) throw Error(kModule, ErrorCode::InvalidArgument, "sigma must be +-1");
  TwoVariableSymbol k;
  k.value = [s](double l, double m) { return std::exp(Complex(0, s * std::log(std::abs(m - l)))); };
  // d/dl |m-l|^{is} = is |m-l|^{is} / (l - m)
  k.d_lambda = [s](double l, double m) {
    return Complex(0, s) * std::exp(Complex(0, s * std::log(std::abs(m - l)))) / (l - m);
  };
  k.d_mu = [s](double l, double m) {
    return Complex(0, s) * std::exp(Complex(0, s * std::log(std::abs(m - l)))) / (m - l);
  };
  k.domain = [sigma](double l, double m) { return sigma * (m - l) > 0; };
  return k;
}

double sup_derivative(const divdiff::ScalarFunction& f, int n, double lo, double hi, int samples) {
  if (n > f.max_order) throw Error(kModule, ErrorCode::InvalidArgument, "derivative order exceeds max order");
  if (samples < 3 || !(hi >= lo)) throw Error(kModule, ErrorCode::InvalidArgument, "bad sampling interval");
  auto g = [&](double x) { return std::abs(f.deriv(n, x)); };
  std::vector<double> xs(samples), vs(samples);
  for (int i = 0; i < samples; ++i) {
    xs[i] = lo + (hi - lo) * i / (samples - 1);
    vs[i] = g(xs[i]);
  }
  double best = std::max(vs.front(), vs.back());
  // golden-section refinement around every interior local maximum
  const double ratio = (std::sqrt(5.0) - 1) / 2;
  for (int i = 1; i + 1 < samples; ++i) {
    best = std::max(best, vs[i]);
    if (!(vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) || vs[i] == 0) continue;
    double a = xs[i - 1], b = xs[i + 1];
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 60; ++it) {
      if (gc >= gd) {
        b = d; d = c; gd = gc;
        c = b - ratio * (b - a); gc = g(c);
      } else {
        a = c; c = d; gc = gd;
        d = a + ratio * (b - a); gd = g(d);
      }
    }
    best = std::max({best, gc, gd});
  }
  return best;
}

double hms_bound(int n, int k, const divdiff::ScalarFunction& f, double lo, double hi) {
  if (n < 0 || k < 0 || k > n + 1) throw Error(kModule, ErrorCode::InvalidArgument, "need 0 <= k <= n+1");
  return (2.0 * n + 3) / factorial(n) * sup_derivative(f, n, lo, hi);
}

PointwiseBoundReport pointwise_bound_check(int n, int k, int gamma, const divdiff::ScalarFunction& f,
                                           const std::vector<std::pair<double, double>>& samples) {
  if (k < 0 || k > n + 1 || gamma < 0 || gamma > std::min(k, n + 1 - k))
    throw Error(kModule, ErrorCode::InvalidArgument, "need 0 <= gamma <= min(k, n+1-k)");
  if (samples.empty()) throw Error(kModule, ErrorCode::InvalidArgument, "no samples");
  double lo = samples.front().first, hi = lo;
  for (auto [l, m] : samples) {
    lo = std::min({lo, l, m});
    hi = std::max({hi, l, m});
  }
  double rising = 1;  // (k + gamma - 1)! / (k - 1)!
  for (int i = 0; i < gamma; ++i) rising *= (k + i);
  PointwiseBoundReport r;
  r.bound = std::pow(2.0, gamma) * rising * sup_derivative(f, n, lo, hi) / factorial(n);
  r.max_violation = -r.bound;
  for (auto [l, m] : samples) {
    const double deriv = rising * divdiff::divdiff_two_var(f, n + gamma, k + gamma, l, m);
    const double lhs = std::pow(std::abs(l - m), gamma) * std::abs(deriv);
    r.max_lhs = std::max(r.max_lhs, lhs);
    r.max_violation = std::max(r.max_violation, lhs - r.bound);
  }
  return r;
}

}  // namespace schurlab::hms
