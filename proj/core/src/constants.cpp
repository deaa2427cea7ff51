#include "schurlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "schurlab/error.hpp"

namespace schurlab::constants {

namespace {

constexpr const char* kModule = "constants";

void require_above_one(double q, const char* what) {
  if (!(q > 1) || !std::isfinite(q)) throw Error(kModule, ErrorCode::BadExponent, std::string(what) + " must be in (1, inf)");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0)) throw Error(kModule, ErrorCode::InvalidArgument, "log_gamma needs x > 0");
  static constexpr double kCoeff[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) - log_gamma(1 - x);
  }
  const double z = x - 1;
  double a = kCoeff[0];
  const double t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += kCoeff[i] / (z + i);
  return 0.5 * std::log(2 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double beta(double q) {
  require_above_one(q, "q");
  return q * q / (q - 1);
}

double conjugate(double q) {
  require_above_one(q, "q");
  return q / (q - 1);
}

double c_bmo(double p) {
  if (!(p >= 1) || !std::isfinite(p)) throw Error(kModule, ErrorCode::BadExponent, "p must be in [1, inf)");
  const double e = std::numbers::e;
  return 2 * e * std::exp((1 + std::log(p) + log_gamma(p)) / p);
}

double kappa(double p, double q) {
  if (!(p >= 1) || !(q >= 1)) throw Error(kModule, ErrorCode::BadExponent, "p, q must be >= 1");
  return std::pow(2.0, 1 + 1 / q) * std::numbers::e * (1 + 2 * p / q);
}

double c_constant(double p, double p1, double p2) {
  const double b = beta(p), b1 = beta(p1), b2 = beta(p2);
  return b * b1 * b2 + std::min(b1 * b1 * b, b * b * b1) + std::min(b2 * b2 * b, b * b * b2) +
         std::min(b2 * b2 * b1, b1 * b1 * b2);
}

double d_constant(double p, double p1, double p2) {
  const double b = beta(p), b1 = beta(p1), b2 = beta(p2);
  return c_constant(p, p1, p2) * (b1 + b2) + b1 * b2 * (b + b1 + b2);
}

double c_double_prime(double p, double q) {
  const double bp = beta(p), bq = beta(q);
  return bp * bp * bp * bq * bq * c_bmo(q);
}

double c_prime(double p, double p1, double p2) {
  return c_constant(p, p1, p2) + std::min(c_double_prime(p, p1), c_double_prime(p, p2)) +
         std::min(c_double_prime(p1, p2), c_double_prime(p1, p)) +
         std::min(c_double_prime(p2, p1), c_double_prime(p2, p));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(kModule, ErrorCode::InvalidArgument, "need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AsymptoticTable asymptotics_table(double pmin, double pmax, int per_decade) {
  require_above_one(pmin, "pmin");
  if (!(pmax > pmin) || per_decade < 1) throw Error(kModule, ErrorCode::InvalidArgument, "bad p range");
  AsymptoticTable t;
  const double lo = std::log10(pmin), hi = std::log10(pmax);
  const int count = static_cast<int>(std::ceil((hi - lo) * per_decade)) + 1;
  std::vector<double> px, dy;
  t.scaled_min = std::numeric_limits<double>::infinity();
  t.scaled_max = 0;
  for (int i = 0; i < count; ++i) {
    const double p = i + 1 == count ? pmax : std::pow(10.0, lo + (hi - lo) * i / (count - 1));
    AsymptoticRow r;
    r.p = p;
    r.d = d_constant(p, 2 * p, 2 * p);
    const double ps = conjugate(p);
    r.d_scaled = r.d / (std::pow(p, 4) * ps);
    r.p2_pstar = p * p * ps;
    r.d_times_pm1 = r.d * (p - 1);
    t.scaled_min = std::min(t.scaled_min, r.d_scaled);
    t.scaled_max = std::max(t.scaled_max, r.d_scaled);
    if (p >= 16 && p <= 64) {
      px.push_back(p);
      dy.push_back(r.d);
    }
    t.rows.push_back(r);
  }
  t.slope_top = px.size() >= 2 ? loglog_slope(px, dy) : std::nan("");
  return t;
}

}  // namespace schurlab::constants
