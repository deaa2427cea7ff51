#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "schurlab/decomp.hpp"

namespace schurlab::symcalc {

using Complex = std::complex<double>;

// Degree-0 homogeneous symbol m(xi) = profile(arg xi).
struct HomogeneousSymbol {
  std::string name;
  std::function<Complex(double)> profile;
  Complex operator()(double xi1, double xi2) const;
};

HomogeneousSymbol harmonic(int k);          // e^{ik theta}
HomogeneousSymbol cos_harmonic();           // cos theta
HomogeneousSymbol sin3_symbol();            // sin 3 theta
// Smooth bump in the angle window (pi/8, 3pi/8).
HomogeneousSymbol bump_symbol();
// bump_symbol plus its odd reflection into (9pi/8, 11pi/8).
HomogeneousSymbol odd_bump_symbol();
// Coefficient a_j (j = 3..6) in Toeplitz variables (lambda0, lambda1, lambda2) = (0, xi1, xi1 + xi2).
// unsigned_form drops the sign factor epsilon_1/2/3.
HomogeneousSymbol coefficient_symbol(const decomp::SectorPartition& p, int j, bool unsigned_form);
// Periodic tabulated profile (theta, rho), theta in [0, 2pi), interpolated by modified Akima cubics.
HomogeneousSymbol tabulated_symbol(std::vector<std::pair<double, double>> table);

struct FourierCoefficients {
  int K = 0;
  std::vector<Complex> alpha;  // alpha[k + K], |k| <= K
  double tail_bound = 0;       // sum of |k| |alpha_k| over K < |k| <= 2K
  Complex operator[](int k) const { return alpha[k + K]; }
};

FourierCoefficients circle_fourier_coeffs(const HomogeneousSymbol& m, int K = 256);

struct KernelValue {
  Complex value;
  Complex dx;
  Complex dy;
};

// K(z) = sum_{k != 0} |k| alpha_k / (2 pi i^k) z^k / |z|^{k+2}
KernelValue kernel_eval(const FourierCoefficients& c, double x, double y);

struct SizeSmoothness {
  double c1 = 0;  // sup |z|^2 |K|
  double c2 = 0;  // sup |z|^3 |grad K|
};

SizeSmoothness size_smoothness_check(const FourierCoefficients& c, const std::vector<double>& radii,
                                     int angular_samples = 720);

struct Factorization {
  int sigma1 = 1;
  int sigma2 = 1;
  double S = 40;
  int N = 4096;
  std::vector<double> s;
  std::vector<Complex> g;
  std::vector<double> weights;  // trapezoid weights on s
  double c_m = 0;               // int |g| (1 + 2|s|)^2
  double t_lo = 0, t_hi = 0;    // support window of rho(sigma1 e^t)

  // m(xi) ~ int g(s) |xi1|^{is} |xi2|^{-is} ds on the quadrant.
  Complex reconstruct(double xi1, double xi2) const;
};

// g(s) = (1/2pi) int rho(sigma1 e^t) e^{-ist} dt with rho(u) = m(u, sigma2).
// Throws SupportViolation if m is not supported inside the open quadrant.
Factorization s1_factorize(const HomogeneousSymbol& m, int sigma1, int sigma2, double S = 40, int N = 4096);

// max |m - reconstruct| over angles strictly inside the quadrant.
double reconstruction_error(const Factorization& f, const HomogeneousSymbol& m, int samples = 401);

struct SectorConstants {
  std::array<double, 4> c{};            // a3..a6, both quadrants summed
  std::array<double, 4> per_quadrant{};  // quadrant (-, +)
  double S = 0;
  int N = 0;
};

inline constexpr double kSectorS = 1280;
inline constexpr int kSectorN = 51200;

SectorConstants sector_coefficient_constants(const decomp::SectorPartition& p, double S = kSectorS,
                                             int N = kSectorN);

}  // namespace schurlab::symcalc
