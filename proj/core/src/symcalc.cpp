#include "schurlab/symcalc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/interpolators/makima.hpp>
#include <cmath>
#include <memory>
#include <numbers>

#include "schurlab/error.hpp"

namespace schurlab::symcalc {

namespace {

constexpr const char* kModule = "symcalc";
constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  return t;
}

// exp(a - a / (1 - u^2)) on |u| < 1, peak 1
double bump(double u, double a) {
  if (std::abs(u) >= 1) return 0;
  return std::exp(a - a / (1 - u * u));
}

Complex ipow(int k) {  // i^k
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

Complex HomogeneousSymbol::operator()(double xi1, double xi2) const {
  if (xi1 == 0 && xi2 == 0) throw Error(kModule, ErrorCode::OriginQuery, "symbol at the origin");
  return profile(wrap_angle(std::atan2(xi2, xi1)));
}

HomogeneousSymbol harmonic(int k) {
  return {"harmonic" + std::to_string(k), [k](double t) { return std::exp(Complex(0, k * t)); }};
}

HomogeneousSymbol cos_harmonic() {
  return {"cos", [](double t) { return Complex(std::cos(t), 0); }};
}

HomogeneousSymbol sin3_symbol() {
  return {"sin3", [](double t) { return Complex(std::sin(3 * t), 0); }};
}

HomogeneousSymbol bump_symbol() {
  // t = log(cot theta) maps (pi/8, 3pi/8) onto (-L, L)
  const double L = std::log(1 / std::tan(kPi / 8));
  return {"bump", [L](double theta) {
            if (!(theta > kPi / 8 && theta < 3 * kPi / 8)) return Complex(0);
            const double t = std::log(1 / std::tan(theta));
            return Complex(bump(t / L, 16.0), 0);
          }};
}

HomogeneousSymbol odd_bump_symbol() {
  const auto b = bump_symbol();
  return {"odd_bump", [b](double theta) {
            if (theta >= kPi) return -b.profile(theta - kPi);
            return b.profile(theta);
          }};
}

HomogeneousSymbol coefficient_symbol(const decomp::SectorPartition& p, int j, bool unsigned_form) {
  if (j < 3 || j > 6) throw Error(kModule, ErrorCode::InvalidArgument, "coefficient index must be 3..6");
  decomp::validate(p);
  return {"a" + std::to_string(j) + (unsigned_form ? "u" : ""), [p, j, unsigned_form](double theta) {
            const double xi1 = std::cos(theta), xi2 = std::sin(theta);
            const double l0 = 0, l1 = xi1, l2 = xi1 + xi2;
            const double a = decomp::coefficients(p, l0, l1, l2)[j - 1];
            if (!unsigned_form || a == 0) return Complex(a, 0);
            const double e = (j == 3 || j == 6) ? decomp::sgn(l2 - l0)
                             : (j == 4)          ? decomp::sgn(l1 - l0)
                                                 : decomp::sgn(l2 - l1);
            return Complex(e * a, 0);
          }};
}

HomogeneousSymbol tabulated_symbol(std::vector<std::pair<double, double>> table) {
  if (table.size() < 4) throw Error(kModule, ErrorCode::InvalidArgument, "need at least 4 table rows");
  for (auto& [t, r] : table) {
    if (!std::isfinite(t) || !std::isfinite(r)) throw Error(kModule, ErrorCode::InvalidArgument, "non-finite row");
    t = wrap_angle(t);
  }
  std::sort(table.begin(), table.end());
  for (std::size_t i = 1; i < table.size(); ++i)
    if (!(table[i].first > table[i - 1].first))
      throw Error(kModule, ErrorCode::InvalidArgument, "duplicate angle in table");
  // three periods so the middle one sees periodic neighbours
  std::vector<double> xs, ys;
  for (int period = -1; period <= 1; ++period)
    for (auto [t, r] : table) {
      xs.push_back(t + period * 2 * kPi);
      ys.push_back(r);
    }
  using Interp = boost::math::interpolators::makima<std::vector<double>>;
  auto interp = std::make_shared<Interp>(std::move(xs), std::move(ys));
  return {"table", [interp](double theta) { return Complex((*interp)(wrap_angle(theta)), 0); }};
}

FourierCoefficients circle_fourier_coeffs(const HomogeneousSymbol& m, int K) {
  if (K < 1) throw Error(kModule, ErrorCode::InvalidArgument, "K must be positive");
  const int M = 4 * K;
  std::vector<Complex> samples(M);
  for (int n = 0; n < M; ++n) samples[n] = m.profile(2 * kPi * n / M);
  std::vector<Complex> out(M);
  fftw_plan plan = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(samples.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  auto coeff = [&](int k) { return out[((k % M) + M) % M] / static_cast<double>(M); };
  FourierCoefficients c;
  c.K = K;
  c.alpha.resize(2 * K + 1);
  for (int k = -K; k <= K; ++k) c.alpha[k + K] = coeff(k);
  for (int k = K + 1; k <= 2 * K; ++k) c.tail_bound += k * (std::abs(coeff(k)) + (k < 2 * K ? std::abs(coeff(-k)) : 0));
  return c;
}

KernelValue kernel_eval(const FourierCoefficients& c, double x, double y) {
  const double r = std::hypot(x, y);
  if (r == 0) throw Error(kModule, ErrorCode::OriginQuery, "kernel at the origin");
  const double phi = std::atan2(y, x);
  const double cp = x / r, sp = y / r;
  const double r2 = r * r, r3 = r2 * r;
  KernelValue kv{};
  for (int k = -c.K; k <= c.K; ++k) {
    if (k == 0) continue;
    const Complex a = c[k];
    if (a == Complex(0)) continue;
    const Complex w = static_cast<double>(std::abs(k)) * a / (2 * kPi * ipow(k));
    const Complex e = std::exp(Complex(0, k * phi));
    kv.value += w * e / r2;
    const Complex dr = -2.0 * e / r3;
    const Complex dang = Complex(0, k) * e / r3;  // (1/r) d/dphi
    kv.dx += w * (cp * dr - sp * dang);
    kv.dy += w * (sp * dr + cp * dang);
  }
  return kv;
}

SizeSmoothness size_smoothness_check(const FourierCoefficients& c, const std::vector<double>& radii,
                                     int angular_samples) {
  if (radii.empty() || angular_samples < 1) throw Error(kModule, ErrorCode::InvalidArgument, "empty sample set");
  SizeSmoothness out;
  for (double r : radii) {
    if (!(r > 0)) throw Error(kModule, ErrorCode::OriginQuery, "radius must be positive");
    for (int a = 0; a < angular_samples; ++a) {
      const double phi = 2 * kPi * (a + 0.5) / angular_samples;
      const auto kv = kernel_eval(c, r * std::cos(phi), r * std::sin(phi));
      out.c1 = std::max(out.c1, r * r * std::abs(kv.value));
      out.c2 = std::max(out.c2, r * r * r * std::sqrt(std::norm(kv.dx) + std::norm(kv.dy)));
    }
  }
  return out;
}

Complex Factorization::reconstruct(double xi1, double xi2) const {
  if (!(sigma1 * xi1 > 0 && sigma2 * xi2 > 0))
    throw Error(kModule, ErrorCode::SupportViolation, "point outside the factorisation quadrant");
  const double t = std::log(std::abs(xi1) / std::abs(xi2));
  Complex acc = 0;
  for (std::size_t m = 0; m < s.size(); ++m) acc += weights[m] * g[m] * std::exp(Complex(0, s[m] * t));
  return acc;
}

Factorization s1_factorize(const HomogeneousSymbol& m, int sigma1, int sigma2, double S, int N) {
  if ((sigma1 != 1 && sigma1 != -1) || (sigma2 != 1 && sigma2 != -1))
    throw Error(kModule, ErrorCode::InvalidArgument, "sigma must be +-1");
  if (!(S > 0) || N < 8) throw Error(kModule, ErrorCode::InvalidArgument, "need S > 0 and N >= 8");

  // quadrant angles: open interval (q0, q0 + pi/2)
  const double q0 = sigma1 > 0 ? (sigma2 > 0 ? 0 : 1.5 * kPi) : (sigma2 > 0 ? 0.5 * kPi : kPi);
  constexpr int kScan = 20000;
  constexpr double kZero = 1e-12;
  for (int a = 0; a < kScan; ++a) {
    const double theta = q0 + kPi / 2 + (1.5 * kPi) * (a + 0.5) / kScan;
    if (std::abs(m.profile(wrap_angle(theta))) > kZero)
      throw Error(kModule, ErrorCode::SupportViolation, "symbol has mass outside the quadrant");
  }
  // support window in t = log(|xi1| / |xi2|)
  auto rho = [&](double t) { return m(sigma1 * std::exp(t), static_cast<double>(sigma2)); };
  double t_lo = 0, t_hi = 0;
  bool found = false;
  for (int a = 0; a <= kScan; ++a) {
    const double t = -40 + 80.0 * a / kScan;
    if (std::abs(rho(t)) > kZero) {
      if (!found) t_lo = t;
      t_hi = t;
      found = true;
    }
  }
  if (!found) throw Error(kModule, ErrorCode::SupportViolation, "symbol vanishes on the quadrant");
  if (t_lo <= -40 + 80.0 / kScan || t_hi >= 40 - 80.0 / kScan)
    throw Error(kModule, ErrorCode::SupportViolation, "symbol does not decay towards the quadrant edges");
  t_lo -= 80.0 / kScan;
  t_hi += 80.0 / kScan;

  // trapezoid in t via FFT: dt = pi / (4S), s spacing ds = 2S / N
  const int M = 4 * N;
  const double dt = kPi / (4 * S);
  const double ds = 2 * kPi / (M * dt);
  if ((t_hi - t_lo) >= M * dt) throw Error(kModule, ErrorCode::InvalidArgument, "t window exceeds FFT length");
  std::vector<Complex> in(M, 0.0), out(M);
  const double t0 = t_lo;
  const int nt = static_cast<int>(std::ceil((t_hi - t_lo) / dt)) + 1;
  for (int j = 0; j < nt && j < M; ++j) in[j] = rho(t0 + j * dt);
  fftw_plan plan = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  Factorization f;
  f.sigma1 = sigma1;
  f.sigma2 = sigma2;
  f.S = S;
  f.N = N;
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  const int half = N / 2;
  for (int q = -half; q <= half; ++q) {
    const double sv = q * ds;
    const Complex gv = dt / (2 * kPi) * std::exp(Complex(0, -sv * t0)) * out[((q % M) + M) % M];
    f.s.push_back(sv);
    f.g.push_back(gv);
    f.weights.push_back((q == -half || q == half) ? ds / 2 : ds);
  }
  for (std::size_t q = 0; q < f.s.size(); ++q) {
    const double w = 1 + 2 * std::abs(f.s[q]);
    f.c_m += f.weights[q] * std::abs(f.g[q]) * w * w;
  }
  return f;
}

double reconstruction_error(const Factorization& f, const HomogeneousSymbol& m, int samples) {
  const double q0 = f.sigma1 > 0 ? (f.sigma2 > 0 ? 0 : 1.5 * kPi) : (f.sigma2 > 0 ? 0.5 * kPi : kPi);
  double worst = 0;
  for (int a = 0; a < samples; ++a) {
    const double theta = q0 + (kPi / 2) * (a + 0.5) / samples;
    const double xi1 = std::cos(theta), xi2 = std::sin(theta);
    worst = std::max(worst, std::abs(m(xi1, xi2) - f.reconstruct(xi1, xi2)));
  }
  return worst;
}

SectorConstants sector_coefficient_constants(const decomp::SectorPartition& p, double S, int N) {
  SectorConstants out;
  out.S = S;
  out.N = N;
  for (int j = 3; j <= 6; ++j) {
    const auto sym = coefficient_symbol(p, j, true);
    // coefficients of a_3..a_6 live on quadrants (-,+) and (+,-)
    auto restrict = [&](int s1, int s2) {
      HomogeneousSymbol r = sym;
      r.profile = [sym, s1, s2](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return (s1 * c > 0 && s2 * s > 0) ? sym.profile(theta) : Complex(0);
      };
      return r;
    };
    const double upper = s1_factorize(restrict(-1, 1), -1, 1, S, N).c_m;
    const double lower = s1_factorize(restrict(1, -1), 1, -1, S, N).c_m;
    out.per_quadrant[j - 3] = upper;
    out.c[j - 3] = upper + lower;
  }
  return out;
}

}  // namespace schurlab::symcalc
