#pragma once

#include <string>
#include <vector>

namespace schurlab::constants {

// Lanczos log-gamma (g = 7, 9 coefficients), x > 0.
double log_gamma(double x);

double beta(double q);            // q^2 / (q - 1)
double conjugate(double q);       // q / (q - 1)
double c_bmo(double p);           // 2e (e p Gamma(p))^{1/p}
double kappa(double p, double q); // 2^{1+1/q} e (1 + 2p/q)

// Constants for exponents with 1/p = 1/p1 + 1/p2 (not enforced).
double c_constant(double p, double p1, double p2);
double d_constant(double p, double p1, double p2);
double c_double_prime(double p, double q);  // beta_p^3 beta_q^2 c_bmo(q)
double c_prime(double p, double p1, double p2);

struct AsymptoticRow {
  double p = 0;
  double d = 0;          // D(p, 2p, 2p)
  double d_scaled = 0;   // D / (p^4 p*)
  double p2_pstar = 0;   // p^2 p*
  double d_times_pm1 = 0;
};

struct AsymptoticTable {
  std::vector<AsymptoticRow> rows;
  double slope_top = 0;      // least-squares log-log slope of D over [16, 64]
  double scaled_min = 0;     // bracket of D / (p^4 p*)
  double scaled_max = 0;
};

// p log-spaced on [pmin, pmax], 32 points per decade.
AsymptoticTable asymptotics_table(double pmin, double pmax, int per_decade = 32);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace schurlab::constants
