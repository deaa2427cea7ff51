#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "schurlab/schur.hpp"

namespace schurlab::lowerlab {

using schur::ComplexMatrix;

enum class Variant { B1, B2 };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// B1: phi_k(i, j, l) = ( q^{ki}, -q^{kj}, q^{kl})
// B2: phi_k(i, j, l) = ( q^{ki},  q^{k(i+l)}, -q^{kl})
// Indices run over 1..n. Symbol values are f^[2] at these nodes for f(s) = s|s|.
struct Discretization {
  Variant variant = Variant::B1;
  double q = 0.5;
  int k = 40;
  int n = 16;
};

void validate(const Discretization& d);

// Node in log form: value = sign * exp(log_abs).
struct LogNode {
  int sign = 1;
  double log_abs = 0;
};

std::array<LogNode, 3> log_nodes(const Discretization& d, int i, int j, int l);
// Plain node values; requires k * n * log2(1/q) <= 900.
std::array<double, 3> node_values(const Discretization& d, int i, int j, int l);

// Symbol at an admissible triple (B1: i != j, j != l; B2: i != l).
double phi_symbol(const Discretization& d, int i, int j, int l);
// Same closed form without the admissibility check.
double phi_value(const Discretization& d, int i, int j, int l);
// k -> infinity limit: B1 -1 iff j < min(i, l); B2 sign(l - i).
double limit_symbol(Variant v, int i, int j, int l);

// max |phi_symbol - limit| over admissible triples in 1..n.
double limit_convergence_report(const Discretization& d);

// phi_value on all triples of 1..n.
schur::Grid3 phi_grid(const Discretization& d);

// V_ik = 1/n for i > k, 1/(2n) on the diagonal.
ComplexMatrix volterra_matrix(int n);
// Structured starting points for truncation norm searches.
std::vector<ComplexMatrix> volterra_seeds(int n);

struct SweepRow {
  double p = 0;
  double t_plus = 0;
  double m_plus = 0;
};

std::vector<SweepRow> truncation_norm_sweep(const std::vector<double>& ps, int n,
                                            const schur::EstimateOptions& opt);

// y x - 2 T-(y) T+(x)
ComplexMatrix b1_factorized(const ComplexMatrix& y, const ComplexMatrix& x);

struct ExperimentRow {
  Variant variant = Variant::B1;
  double p = 0;
  int n = 0;
  double q = 0;
  int k = 0;
  double nu = 0;              // best M+ ratio found
  double direct_value = 0;
  double implied_bound = 0;
  double reference_value = 0; // B1: factorised limit action; B2: ||M+(z)||_p
  double reference_gap = 0;   // B1: relative HS gap of the two actions; B2: |reference - direct|
  std::uint64_t seed = 0;
};

ExperimentRow b1_experiment(double p, const Discretization& d, const schur::EstimateOptions& opt);
ExperimentRow b2_experiment(double p, const Discretization& d, const schur::EstimateOptions& opt);

std::string csv_header();
std::string csv_row(const ExperimentRow& r);

}  // namespace schurlab::lowerlab
