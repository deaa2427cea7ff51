#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schurlab/matrixnum.hpp"

namespace schurlab::dyadic {

using matrixnum::Complex;
using matrixnum::ComplexMatrix;

// Cube of side 2^scale; index counts cubes of that scale from the shifted origin.
struct Cube {
  int scale = 0;
  std::int64_t index = 0;
  bool operator==(const Cube&) const = default;
  auto operator<=>(const Cube&) const = default;
};

// Dyadic grid on the periodic window [0, 2^kmax), resolved down to cells of
// side 2^kmin. omega[r - kmin] in {0, 1} shifts every cube of side > 2^r by
// omega_r 2^r. Positions are integers in units of 2^kmin.
class DyadicSystem {
 public:
  DyadicSystem(int kmin, int kmax, std::vector<int> omega = {});

  int kmin() const { return kmin_; }
  int kmax() const { return kmax_; }
  std::int64_t cells() const { return cells_; }
  double cell_length() const;
  double measure(const Cube& q) const;
  std::int64_t length_units(int scale) const;
  std::int64_t offset_units(int scale) const;
  std::int64_t cube_count(int scale) const;
  std::int64_t start_unit(const Cube& q) const;
  bool contains(const Cube& q, std::int64_t cell) const;
  // Offset of `cell` from the start of q (meaningful when contains()).
  std::int64_t relative_unit(const Cube& q, std::int64_t cell) const;
  Cube cube_containing(int scale, std::int64_t cell) const;
  Cube parent(const Cube& q) const;
  std::pair<Cube, Cube> children(const Cube& q) const;  // left, right
  // idx-th descendant at `depth` levels below q, ordered left to right.
  Cube descendant(const Cube& q, int depth, std::int64_t idx) const;
  std::vector<Cube> cubes(int scale) const;
  void check(const Cube& q) const;

 private:
  int kmin_, kmax_;
  std::int64_t cells_;
  std::vector<int> omega_;
};

enum class HaarKind { average, cancellative };  // h^0 and h^1

// Value of the L2-normalised Haar function on a finest cell.
double haar_value(const DyadicSystem& d, const Cube& q, HaarKind kind, std::int64_t cell);

// Piecewise-constant d x d matrix function on the finest cells.
class StepFunction {
 public:
  StepFunction(const DyadicSystem& sys, int dim);
  int dim() const { return dim_; }
  std::int64_t cells() const { return static_cast<std::int64_t>(values_.size()); }
  ComplexMatrix& operator[](std::int64_t c) { return values_[c]; }
  const ComplexMatrix& operator[](std::int64_t c) const { return values_[c]; }
  StepFunction& operator+=(const StepFunction& o);
  StepFunction& operator-=(const StepFunction& o);
  double max_abs_diff(const StepFunction& o) const;

 private:
  int dim_;
  std::vector<ComplexMatrix> values_;
};

StepFunction haar_function(const DyadicSystem& d, const Cube& q, HaarKind kind, const ComplexMatrix& coeff);
StepFunction random_step_function(const DyadicSystem& d, int dim, std::uint64_t seed);

// <f, h> = integral of f h
ComplexMatrix haar_coefficient(const DyadicSystem& d, const StepFunction& f, const Cube& q, HaarKind kind);
ComplexMatrix average(const DyadicSystem& d, const StepFunction& f, const Cube& q);
StepFunction martingale_difference(const DyadicSystem& d, const StepFunction& f, const Cube& q);
// integral of tr(F G)
Complex trace_pairing(const DyadicSystem& d, const StepFunction& f, const StepFunction& g);
// (integral ||F||_p^p)^{1/p}
double lp_schatten_norm(const DyadicSystem& d, const StepFunction& f, double p);

// One term: cube Q and the positions of I_1, I_2, I_3 among the 2^{k_j}
// descendants of Q at depth k_j.
struct ShiftTerm {
  Cube q;
  std::array<std::int64_t, 3> sub{};
  Complex alpha;
};

// Shift of complexity (k1, k2, k3); slot j0 (1..3) carries h^0, the others h^1.
struct ShiftSpec {
  std::array<int, 3> k{};
  int j0 = 3;
  std::vector<ShiftTerm> terms;
};

// |alpha| <= |Q|^{-2} prod |I_j|^{1/2}
double coefficient_bound(const DyadicSystem& d, const ShiftSpec& s, const Cube& q);
void validate(const DyadicSystem& d, const ShiftSpec& s);

// All-positive spec attaining the coefficient bound on every (I1, I2, I3) under each Q of `cubes`.
ShiftSpec extremal_spec(const DyadicSystem& d, std::array<int, 3> k, int j0, const std::vector<Cube>& cubes);
// Random admissible spec: `terms` distinct (Q, I1, I2, I3) tuples with |alpha| <= bound.
ShiftSpec random_spec(const DyadicSystem& d, std::array<int, 3> k, int j0, int terms, std::uint64_t seed);

// Slot order (3, 1, 2): Lambda_S(f1, f2, f3) = Lambda_{S'}(f3, f1, f2).
ShiftSpec cyclic_renumber(const ShiftSpec& s);

std::string to_json(const ShiftSpec& s);
ShiftSpec shift_from_json(const std::string& text);

// S(f, g) = sum alpha <f, h~_I1> <g, h~_I2> h~_I3
StepFunction shift_apply(const DyadicSystem& d, const ShiftSpec& s, const StepFunction& f, const StepFunction& g);
// sum alpha tr(<f1, h~_I1> <f2, h~_I2> <f3, h~_I3>)
Complex trilinear_form(const DyadicSystem& d, const ShiftSpec& s, const StepFunction& f1, const StepFunction& f2,
                       const StepFunction& f3);

struct Paraproduct {
  std::vector<std::pair<Cube, Complex>> coeffs;
  int j0 = 3;  // slot carrying h_Q; the others carry 1_Q / |Q|
};

double carleson_norm(const DyadicSystem& d, const Paraproduct& a);
StepFunction paraproduct_apply(const DyadicSystem& d, const Paraproduct& a, const StepFunction& f,
                               const StepFunction& g);

enum class BkCase { all_cancellative, one_average };

struct BkReport {
  double max_abs = 0;
  int cubes = 0;
  long samples = 0;
};

// Regrouped kernel b_K at random sample points of each K. `levels` holds l_j
// (0 <= l_j <= k_j); empty means l_j = k_j, with l_j0 = 0 in the one_average case.
BkReport bk_bound_check(const DyadicSystem& d, const ShiftSpec& s, int samples_per_cube, std::uint64_t seed,
                        BkCase which = BkCase::one_average, std::vector<int> levels = {});

struct ProbeResult {
  double ratio = 0;
  long candidates = 0;
};

ProbeResult shift_norm_probe(const DyadicSystem& d, const ShiftSpec& s, int dim, double p1, double p2, double p,
                             int candidates, std::uint64_t seed);

}  // namespace schurlab::dyadic
