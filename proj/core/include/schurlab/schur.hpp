#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "schurlab/matrixnum.hpp"

namespace schurlab::schur {

using matrixnum::Complex;
using matrixnum::ComplexMatrix;

// Strictly increasing real labels x_1 < ... < x_n.
class PointSet {
 public:
  explicit PointSet(std::vector<double> labels);
  static PointSet integers(int n);  // 1, 2, ..., n

  int size() const { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[i]; }
  const std::vector<double>& labels() const { return x_; }

 private:
  std::vector<double> x_;
};

// Coefficient function on label pairs (arity 2) or triples (arity 3).
class DiscreteSymbol {
 public:
  using Fn2 = std::function<Complex(double, double)>;
  using Fn3 = std::function<Complex(double, double, double)>;

  static DiscreteSymbol linear(Fn2 f);
  static DiscreteSymbol bilinear(Fn3 f);

  int arity() const { return arity_; }
  Complex operator()(double a, double b) const;
  Complex operator()(double a, double b, double c) const;

 private:
  int arity_ = 2;
  Fn2 f2_;
  Fn3 f3_;
};

// Symbol values on an n x n grid.
struct Grid2 {
  ComplexMatrix values;
  double sup = 0;
  int size() const { return static_cast<int>(values.rows()); }
};

// Symbol values on an n x n x n grid, index (i * n + j) * n + l.
struct Grid3 {
  int n = 0;
  std::vector<Complex> values;
  double sup = 0;
  Complex operator()(int i, int j, int l) const { return values[(static_cast<std::size_t>(i) * n + j) * n + l]; }
};

Grid2 tabulate2(const DiscreteSymbol& m, const PointSet& x);
Grid3 tabulate3(const DiscreteSymbol& m, const PointSet& x);
Grid2 grid2_from_matrix(const ComplexMatrix& values);
Grid3 grid3_from_blocks(const ComplexMatrix& stacked);  // n stacked n x n blocks

ComplexMatrix apply_linear(const Grid2& m, const ComplexMatrix& a);
ComplexMatrix apply_linear(const DiscreteSymbol& m, const PointSet& x, const ComplexMatrix& a);
ComplexMatrix apply_linear_adjoint(const Grid2& m, const ComplexMatrix& g);

// C_il = sum_j m(x_i, x_j, x_l) A_ij B_jl
ComplexMatrix apply_bilinear(const Grid3& m, const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix apply_bilinear(const DiscreteSymbol& m, const PointSet& x, const ComplexMatrix& a,
                             const ComplexMatrix& b);
// Gradients of Re<G, M(A, B)> with respect to A and B.
ComplexMatrix bilinear_adjoint_first(const Grid3& m, const ComplexMatrix& g, const ComplexMatrix& b);
ComplexMatrix bilinear_adjoint_second(const Grid3& m, const ComplexMatrix& g, const ComplexMatrix& a);

enum class Triangle { upper, lower };

// upper keeps x_i < x_k, lower keeps x_i > x_k; the diagonal is dropped by both.
ComplexMatrix triangular_truncation(const ComplexMatrix& a, const PointSet& x, Triangle which);
ComplexMatrix diagonal_part(const ComplexMatrix& a);
ComplexMatrix off_diagonal_part(const ComplexMatrix& a);

// Symbol of T+ - T-: sign(x_k - x_i), zero on the diagonal.
DiscreteSymbol m_plus();
DiscreteSymbol t_plus();

struct Budget {
  int restarts = 20;
  int iterations = 60;
};

struct EstimateOptions {
  Budget budget;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: default_threads()
  double step = 0.5;  // step_t = step / sqrt(t)
};

struct NormEstimate {
  double ratio = 0;
  ComplexMatrix x;  // best first argument
  ComplexMatrix y;  // best second argument (bilinear only)
  int restart = -1;
};

// Lower bound for ||M_m : S_p_in -> S_p_out||. Candidate 0 is the matrix
// unit at argmax |m|; then `seeds`; remaining restarts are Gaussian.
NormEstimate norm_lower_estimate(const Grid2& m, double p_in, double p_out, const EstimateOptions& opt,
                                 const std::vector<ComplexMatrix>& seeds = {});

// Lower bound for ||M_m : S_p1 x S_p2 -> S_p||.
NormEstimate norm_lower_estimate(const Grid3& m, double p1, double p2, double p, const EstimateOptions& opt,
                                 const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& seeds = {});

// Ratio of a given candidate (Jacobi-based norms).
double linear_ratio(const Grid2& m, const ComplexMatrix& x, double p_in, double p_out);
double bilinear_ratio(const Grid3& m, const ComplexMatrix& x, const ComplexMatrix& y, double p1, double p2,
                      double p);

Grid2 read_grid2(std::istream& in);
Grid3 read_grid3(std::istream& in);

}  // namespace schurlab::schur
