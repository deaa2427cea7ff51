#include "schurlab/decomp.hpp"

#include <cmath>

#include "schurlab/error.hpp"

namespace schurlab::decomp {

namespace {

constexpr const char* kModule = "decomp";
constexpr double kPi = std::numbers::pi;

double ramp(double phi, double centre, double width) { return smoothstep((phi - (centre - width / 2)) / width); }

}  // namespace

void validate(const SectorPartition& p) {
  if (!(p.epsilon > 0 && p.epsilon < kPi / 16))
    throw Error(kModule, ErrorCode::InvalidArgument, "epsilon must lie in (0, pi/16)");
}

double smoothstep(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  const double a = std::exp(-1 / t);
  const double b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

std::array<double, 3> thetas(const SectorPartition& p, double xi1, double xi2) {
  validate(p);
  if (xi1 == 0 && xi2 == 0) throw Error(kModule, ErrorCode::OriginQuery, "theta at the origin");
  double phi = std::atan2(xi2, xi1);
  phi = std::fmod(phi, kPi);
  if (phi < 0) phi += kPi;
  // angles in (pi - 2e, pi) belong to the wrap-around part of A_1
  const double r12 = ramp(phi, p.band12_centre(), p.band12_width());
  const double r23 = ramp(phi, p.band23_centre(), p.band23_width());
  const double r31 = ramp(phi, p.band31_centre(), p.band31_width());
  double t2 = r12 * (1 - r23);
  double t3 = r23 * (1 - r31);
  double t1 = (1 - r12) + r31;
  const double sum = t1 + t2 + t3;
  return {t1 / sum, t2 / sum, t3 / sum};
}

double theta(const SectorPartition& p, int j, double xi1, double xi2) {
  if (j < 1 || j > 3) throw Error(kModule, ErrorCode::InvalidArgument, "theta index must be 1..3");
  return thetas(p, xi1, xi2)[j - 1];
}

double theta_tilde(const SectorPartition& p, int j, double l0, double l1, double l2) {
  return theta(p, j, l1 - l0, l2 - l1);
}

double psi(int j, double l0, double l1, double l2) {
  double num = 0, den = 0;
  switch (j) {
    case 1: num = l0 - l1; den = l0 - l2; break;
    case 2: num = l2 - l0; den = l2 - l1; break;
    case 3: num = l1 - l2; den = l1 - l0; break;
    default: throw Error(kModule, ErrorCode::InvalidArgument, "psi index must be 1..3");
  }
  if (den == 0) throw Error(kModule, ErrorCode::PoleHit, "psi_" + std::to_string(j) + " denominator vanishes");
  return num / den;
}

double phi(const divdiff::ScalarFunction& f, double lambda, double mu) {
  const double nodes[3] = {lambda, mu, mu};
  return divdiff::divided_difference(f, nodes);
}

double phi_ring(const divdiff::ScalarFunction& f, double lambda, double mu) {
  const double nodes[3] = {lambda, lambda, mu};
  return divdiff::divided_difference(f, nodes);
}

std::array<double, 6> coefficients(const SectorPartition& p, double l0, double l1, double l2) {
  if (l0 == l1 && l1 == l2) throw Error(kModule, ErrorCode::DiagonalQuery, "triple on the diagonal");
  const auto th = thetas(p, l1 - l0, l2 - l1);
  const double e1 = sgn(l1 - l0), e2 = sgn(l2 - l1), e3 = sgn(l2 - l0);
  constexpr double kTiny = 1e-300;
  std::array<double, 6> a{};
  if (th[0] >= kTiny) {
    const double s = psi(1, l0, l1, l2);
    a[0] = e1 * th[0] * s;
    a[1] = e2 * th[0] * (1 - s);
  }
  if (th[1] >= kTiny) {
    const double s = psi(2, l0, l1, l2);
    a[2] = e3 * th[1] * s;
    a[3] = e1 * th[1] * (1 - s);
  }
  if (th[2] >= kTiny) {
    const double s = psi(3, l0, l1, l2);
    a[4] = e2 * th[2] * s;
    a[5] = e3 * th[2] * (1 - s);
  }
  return a;
}

PointwiseCheck pointwise_identity(const divdiff::ScalarFunction& f, const SectorPartition& p, double l0,
                                  double l1, double l2) {
  const auto a = coefficients(p, l0, l1, l2);
  PointwiseCheck c;
  const double nodes[3] = {l0, l1, l2};
  c.lhs = divdiff::divided_difference(f, nodes);
  const double lin[6] = {
      eps_pair(l0, l1) * phi(f, l0, l1),      eps_pair(l1, l2) * phi_ring(f, l1, l2),
      eps_pair(l0, l2) * phi_ring(f, l0, l2), eps_pair(l0, l1) * phi_ring(f, l0, l1),
      eps_pair(l1, l2) * phi(f, l1, l2),      eps_pair(l0, l2) * phi(f, l0, l2),
  };
  c.scale = std::abs(c.lhs);
  for (int k = 0; k < 6; ++k) {
    c.terms[k] = a[k] == 0 ? 0 : a[k] * lin[k];
    c.rhs += c.terms[k];
    c.scale += std::abs(c.terms[k]);
  }
  c.residual = std::abs(c.lhs - c.rhs);
  return c;
}

schur::Grid3 coefficient_grid(const SectorPartition& p, const schur::PointSet& x, int k) {
  if (k < 1 || k > 6) throw Error(kModule, ErrorCode::InvalidArgument, "coefficient index must be 1..6");
  auto sym = schur::DiscreteSymbol::bilinear([&p, k](double l0, double l1, double l2) -> schur::Complex {
    if (l0 == l1 && l1 == l2) return k == 1 ? 1.0 : 0.0;
    return coefficients(p, l0, l1, l2)[k - 1];
  });
  return schur::tabulate3(sym, x);
}

schur::Grid2 eps_phi_grid(const divdiff::ScalarFunction& f, const schur::PointSet& x) {
  auto sym = schur::DiscreteSymbol::linear(
      [&f](double l, double m) -> schur::Complex { return eps_pair(l, m) * phi(f, l, m); });
  return schur::tabulate2(sym, x);
}

schur::Grid2 eps_phi_ring_grid(const divdiff::ScalarFunction& f, const schur::PointSet& x) {
  auto sym = schur::DiscreteSymbol::linear(
      [&f](double l, double m) -> schur::Complex { return eps_pair(l, m) * phi_ring(f, l, m); });
  return schur::tabulate2(sym, x);
}

schur::Grid3 second_divdiff_grid(const divdiff::ScalarFunction& f, const schur::PointSet& x) {
  auto sym = schur::DiscreteSymbol::bilinear([&f](double l0, double l1, double l2) -> schur::Complex {
    const double nodes[3] = {l0, l1, l2};
    return divdiff::divided_difference(f, nodes);
  });
  return schur::tabulate3(sym, x);
}

OperatorCheck operator_identity(const divdiff::ScalarFunction& f, const SectorPartition& p,
                                const schur::PointSet& x, const schur::ComplexMatrix& a,
                                const schur::ComplexMatrix& b) {
  using schur::apply_bilinear;
  using schur::apply_linear;
  const auto lhs = apply_bilinear(second_divdiff_grid(f, x), a, b);
  const auto ep = eps_phi_grid(f, x);
  const auto er = eps_phi_ring_grid(f, x);
  schur::Grid3 g[6];
  for (int k = 0; k < 6; ++k) g[k] = coefficient_grid(p, x, k + 1);
  schur::ComplexMatrix rhs = apply_bilinear(g[0], apply_linear(ep, a), b);
  rhs += apply_bilinear(g[1], a, apply_linear(er, b));
  rhs += apply_linear(er, apply_bilinear(g[2], a, b));
  rhs += apply_bilinear(g[3], apply_linear(er, a), b);
  rhs += apply_bilinear(g[4], a, apply_linear(ep, b));
  rhs += apply_linear(ep, apply_bilinear(g[5], a, b));
  return {lhs.norm(), (lhs - rhs).norm()};
}

double extension_bound_sample(const SectorPartition& p, double l0, double l1, double l2) {
  const auto th = thetas(p, l1 - l0, l2 - l1);
  double worst = 0;
  for (int j = 1; j <= 3; ++j) {
    if (th[j - 1] < 1e-300) continue;
    const double s = psi(j, l0, l1, l2);
    worst = std::max({worst, std::abs(th[j - 1] * s), std::abs(th[j - 1] * (1 - s))});
  }
  return worst;
}

}  // namespace schurlab::decomp
