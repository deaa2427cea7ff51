#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "schurlab/divdiff.hpp"

namespace schurlab::hms {

using Complex = std::complex<double>;

// phi(lambda, mu) with partial derivatives. Missing partials fall back to
// central differences. `domain` restricts evaluation (e.g. a half-plane).
struct TwoVariableSymbol {
  std::function<Complex(double, double)> value;
  std::function<Complex(double, double)> d_lambda;
  std::function<Complex(double, double)> d_mu;
  std::function<bool(double, double)> domain;
};

struct GridSpec {
  double lo = -1;
  double hi = 1;
  int points = 512;       // Chebyshev-Lobatto points per axis
  double margin = -1;     // distance kept from lambda = mu; < 0 means 1e-3 * width
};

struct HmsResult {
  double norm = 0;
  double sup_value = 0;       // sup |phi|
  double sup_derivative = 0;  // sup |lambda - mu| (|d_lambda phi| + |d_mu phi|)
  long evaluated = 0;
};

std::vector<double> chebyshev_lobatto(double lo, double hi, int n);

HmsResult hms_norm(const TwoVariableSymbol& phi, const GridSpec& grid);

// f^[n](lambda^(k), mu^(n+1-k)), optionally multiplied by sign(mu - lambda).
TwoVariableSymbol divdiff_symbol(const divdiff::ScalarFunction& f, int n, int k, bool signed_variant = false);

// |mu - lambda|^{is} on sigma (mu - lambda) > 0.
TwoVariableSymbol ks_symbol(double s, int sigma = 1);

// Sampled sup of |f^(n)| on [lo, hi].
double sup_derivative(const divdiff::ScalarFunction& f, int n, double lo, double hi, int samples = 20001);

// (2n + 3) / n! * ||f^(n)||_inf on [lo, hi].
double hms_bound(int n, int k, const divdiff::ScalarFunction& f, double lo, double hi);

struct PointwiseBoundReport {
  double max_violation = 0;  // max of lhs - bound (<= 0 when the bound holds)
  double max_lhs = 0;
  double bound = 0;
};

// |lambda - mu|^g |d_lambda^g f^[n](lambda^(k), mu^(n+1-k))|
//   <= 2^g (k+g-1)!/(k-1)! ||f^(n)||_inf / n!
PointwiseBoundReport pointwise_bound_check(int n, int k, int gamma, const divdiff::ScalarFunction& f,
                                           const std::vector<std::pair<double, double>>& samples);

}  // namespace schurlab::hms
