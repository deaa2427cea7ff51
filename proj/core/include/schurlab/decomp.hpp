#pragma once

#include <array>
#include <numbers>

#include "schurlab/divdiff.hpp"
#include "schurlab/schur.hpp"

namespace schurlab::decomp {

// Smooth partition of unity theta_1 + theta_2 + theta_3 = 1 on R^2 \ {0}.
// Each theta_j is even, 0-homogeneous and supported inside the open sector
// A_j (angles mod pi):
//   A_1 = (-2e, pi/2 + 2e), A_2 = (pi/2 + e, 3pi/4 + e), A_3 = (3pi/4 - e, pi - e).
struct SectorPartition {
  double epsilon = std::numbers::pi / 32;

  // Centres and widths of the three exp(-1/t) transition bands.
  double band12_centre() const { return std::numbers::pi / 2 + 1.5 * epsilon; }
  double band12_width() const { return 0.8 * epsilon; }
  double band23_centre() const { return 0.75 * std::numbers::pi; }
  double band23_width() const { return epsilon; }
  double band31_centre() const { return std::numbers::pi - 1.5 * epsilon; }
  double band31_width() const { return 0.8 * epsilon; }
};

void validate(const SectorPartition& p);

// exp(-1/t) smoothstep: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t);

std::array<double, 3> thetas(const SectorPartition& p, double xi1, double xi2);
double theta(const SectorPartition& p, int j, double xi1, double xi2);
double theta_tilde(const SectorPartition& p, int j, double l0, double l1, double l2);

// psi_1 = (l0-l1)/(l0-l2), psi_2 = (l2-l0)/(l2-l1), psi_3 = (l1-l2)/(l1-l0).
double psi(int j, double l0, double l1, double l2);

// sign with sign(0) = 1
inline double sgn(double v) { return v >= 0 ? 1.0 : -1.0; }
// epsilon(lambda, mu) = sign(mu - lambda)
inline double eps_pair(double lambda, double mu) { return sgn(mu - lambda); }

// phi_f(l, m) = f^[2](l, m, m); ring_f(l, m) = f^[2](l, l, m).
double phi(const divdiff::ScalarFunction& f, double lambda, double mu);
double phi_ring(const divdiff::ScalarFunction& f, double lambda, double mu);

// a_1 .. a_6 at an off-diagonal triple. Terms with theta~ < 1e-300 are 0.
std::array<double, 6> coefficients(const SectorPartition& p, double l0, double l1, double l2);

struct PointwiseCheck {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  double scale = 0;  // |lhs| + sum of |term|
  std::array<double, 6> terms{};
};

PointwiseCheck pointwise_identity(const divdiff::ScalarFunction& f, const SectorPartition& p, double l0,
                                  double l1, double l2);

// Coefficient a_k (k = 1..6) as a bilinear grid on X. On the diagonal
// triple (x, x, x) the grid holds (1, 0, 0, 0, 0, 0).
schur::Grid3 coefficient_grid(const SectorPartition& p, const schur::PointSet& x, int k);
// epsilon * phi_f and epsilon * ring_f as linear grids.
schur::Grid2 eps_phi_grid(const divdiff::ScalarFunction& f, const schur::PointSet& x);
schur::Grid2 eps_phi_ring_grid(const divdiff::ScalarFunction& f, const schur::PointSet& x);
schur::Grid3 second_divdiff_grid(const divdiff::ScalarFunction& f, const schur::PointSet& x);

struct OperatorCheck {
  double lhs_norm = 0;
  double residual = 0;  // Hilbert-Schmidt norm of lhs - rhs
};

OperatorCheck operator_identity(const divdiff::ScalarFunction& f, const SectorPartition& p,
                                const schur::PointSet& x, const schur::ComplexMatrix& a,
                                const schur::ComplexMatrix& b);

// max over samples of |theta~_j psi_j| and of |theta~_j (1 - psi_j)|.
double extension_bound_sample(const SectorPartition& p, double l0, double l1, double l2);

}  // namespace schurlab::decomp
