#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace schurlab::divdiff {

enum class FunctionKind { smooth, generalized_abs };

// Real function with derivatives up to max_order.
// For generalized_abs (s|s|) the second derivative is never evaluated:
// a fully confluent second divided difference is defined as 0.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(int, double)> deriv;  // deriv(0, s) == eval(s)
  int max_order = 0;
  FunctionKind kind = FunctionKind::smooth;
};

ScalarFunction square();
ScalarFunction cube();
ScalarFunction sine();
ScalarFunction cosine();
ScalarFunction exponential();
ScalarFunction abs2();  // s|s|
ScalarFunction polynomial(std::vector<double> coeffs);  // coeffs[i] * s^i

// Lookup by short name: sq, cube, sin, cos, exp, abs2.
ScalarFunction by_name(const std::string& name);

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kMaxOrder = 8;

// f^[n] at nodes (n = nodes.size() - 1). Nodes within tol are merged.
double divided_difference(const ScalarFunction& f, std::span<const double> nodes,
                          double tol = kDefaultTol);

// f^[n](lambda^(k), mu^(n+1-k)).
double divdiff_two_var(const ScalarFunction& f, int n, int k, double lambda, double mu,
                       double tol = kDefaultTol);

enum class Variable { lambda, mu };

// Derivative of divdiff_two_var in lambda or mu.
double divdiff_partial(const ScalarFunction& f, int n, int k, double lambda, double mu,
                       Variable which, double tol = kDefaultTol);

struct SplitResult {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
};

// Node insertion at the pivot pair (i, j) with inserted node mu.
SplitResult node_insertion_split(const ScalarFunction& f, std::span<const double> nodes,
                                 int i, int j, double mu, double tol = kDefaultTol);

}  // namespace schurlab::divdiff
