#include "schurlab/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "schurlab/error.hpp"

namespace schurlab::divdiff {

namespace {

constexpr const char* kModule = "divdiff";

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double falling(int p, int j) {  // p (p-1) ... (p-j+1)
  double r = 1;
  for (int i = 0; i < j; ++i) r *= (p - i);
  return r;
}

}  // namespace

ScalarFunction polynomial(std::vector<double> coeffs) {
  ScalarFunction f;
  f.name = "poly";
  auto c = std::make_shared<std::vector<double>>(std::move(coeffs));
  f.deriv = [c](int j, double s) {
    double acc = 0;
    for (int p = static_cast<int>(c->size()) - 1; p >= j; --p) acc = acc * s + (*c)[p] * falling(p, j);
    return acc;
  };
  f.eval = [d = f.deriv](double s) { return d(0, s); };
  f.max_order = 64;
  return f;
}

ScalarFunction square() {
  auto f = polynomial({0, 0, 1});
  f.name = "sq";
  return f;
}

ScalarFunction cube() {
  auto f = polynomial({0, 0, 0, 1});
  f.name = "cube";
  return f;
}

ScalarFunction sine() {
  ScalarFunction f;
  f.name = "sin";
  f.eval = [](double s) { return std::sin(s); };
  f.deriv = [](int j, double s) {
    switch (j % 4) {
      case 0: return std::sin(s);
      case 1: return std::cos(s);
      case 2: return -std::sin(s);
      default: return -std::cos(s);
    }
  };
  f.max_order = 64;
  return f;
}

ScalarFunction cosine() {
  ScalarFunction f;
  f.name = "cos";
  f.eval = [](double s) { return std::cos(s); };
  f.deriv = [](int j, double s) {
    switch (j % 4) {
      case 0: return std::cos(s);
      case 1: return -std::sin(s);
      case 2: return -std::cos(s);
      default: return std::sin(s);
    }
  };
  f.max_order = 64;
  return f;
}

ScalarFunction exponential() {
  ScalarFunction f;
  f.name = "exp";
  f.eval = [](double s) { return std::exp(s); };
  f.deriv = [](int, double s) { return std::exp(s); };
  f.max_order = 64;
  return f;
}

ScalarFunction abs2() {
  ScalarFunction f;
  f.name = "abs2";
  f.eval = [](double s) { return s * std::abs(s); };
  f.deriv = [](int j, double s) {
    if (j == 0) return s * std::abs(s);
    if (j == 1) return 2 * std::abs(s);
    throw Error(kModule, ErrorCode::OrderUnsupported, "s|s| has no classical derivative of order >= 2");
  };
  f.max_order = 1;
  f.kind = FunctionKind::generalized_abs;
  return f;
}

ScalarFunction by_name(const std::string& name) {
  if (name == "sq" || name == "square") return square();
  if (name == "cube") return cube();
  if (name == "sin") return sine();
  if (name == "cos") return cosine();
  if (name == "exp") return exponential();
  if (name == "abs2") return abs2();
  throw Error(kModule, ErrorCode::InvalidArgument, "unknown function '" + name + "'");
}

double divided_difference(const ScalarFunction& f, std::span<const double> nodes, double tol) {
  if (!(tol > 0)) throw Error(kModule, ErrorCode::DegenerateTolerance, "tol must be positive");
  const int m = static_cast<int>(nodes.size());
  if (m < 1) throw Error(kModule, ErrorCode::InvalidArgument, "need at least one node");
  const int n = m - 1;
  if (n > kMaxOrder) throw Error(kModule, ErrorCode::OrderUnsupported, "order above 8");
  const bool abs_exception = f.kind == FunctionKind::generalized_abs && n == 2;
  if (n > f.max_order && !abs_exception)
    throw Error(kModule, ErrorCode::OrderUnsupported,
                "order " + std::to_string(n) + " exceeds " + f.name + " max order");
  for (double v : nodes)
    if (!std::isfinite(v)) throw Error(kModule, ErrorCode::InvalidArgument, "non-finite node");

  std::vector<double> x(nodes.begin(), nodes.end());
  std::sort(x.begin(), x.end());

  // merge chains of nodes closer than tol to their mean
  for (int a = 0; a < m;) {
    int b = a + 1;
    while (b < m && x[b] - x[b - 1] <= tol) ++b;
    if (b - a > 1) {
      double mean = 0;
      for (int i = a; i < b; ++i) mean += x[i];
      mean /= (b - a);
      for (int i = a; i < b; ++i) x[i] = mean;
    }
    a = b;
  }

  // Newton table on sorted nodes: dd[i] holds f[x_i..x_{i+len}]
  std::vector<double> dd(m);
  for (int i = 0; i < m; ++i) dd[i] = f.eval(x[i]);
  for (int len = 1; len <= n; ++len) {
    for (int i = 0; i + len < m; ++i) {
      const int j = i + len;
      if (x[j] == x[i]) {
        if (f.kind == FunctionKind::generalized_abs && len == 2)
          dd[i] = 0;
        else
          dd[i] = f.deriv(len, x[i]) / factorial(len);
      } else {
        dd[i] = (dd[i + 1] - dd[i]) / (x[j] - x[i]);
      }
    }
  }
  return dd[0];
}

double divdiff_two_var(const ScalarFunction& f, int n, int k, double lambda, double mu, double tol) {
  if (n < 0 || k < 0 || k > n + 1)
    throw Error(kModule, ErrorCode::InvalidArgument, "need 0 <= k <= n+1");
  std::vector<double> nodes;
  nodes.reserve(n + 1);
  nodes.insert(nodes.end(), k, lambda);
  nodes.insert(nodes.end(), n + 1 - k, mu);
  return divided_difference(f, nodes, tol);
}

double divdiff_partial(const ScalarFunction& f, int n, int k, double lambda, double mu, Variable which,
                       double tol) {
  if (n < 0 || k < 0 || k > n + 1)
    throw Error(kModule, ErrorCode::InvalidArgument, "need 0 <= k <= n+1");
  if (which == Variable::lambda) {
    if (k == 0) return 0;
    return k * divdiff_two_var(f, n + 1, k + 1, lambda, mu, tol);
  }
  if (k == n + 1) return 0;
  return (n + 1 - k) * divdiff_two_var(f, n + 1, k, lambda, mu, tol);
}

SplitResult node_insertion_split(const ScalarFunction& f, std::span<const double> nodes, int i, int j,
                                 double mu, double tol) {
  const int m = static_cast<int>(nodes.size());
  if (i < 0 || j < 0 || i >= m || j >= m || i == j)
    throw Error(kModule, ErrorCode::InvalidArgument, "pivot indices out of range");
  const double li = nodes[i], lj = nodes[j];
  if (std::abs(li - lj) <= tol) throw Error(kModule, ErrorCode::CoincidentPivot, "lambda_i == lambda_j");
  SplitResult r;
  r.lhs = divided_difference(f, nodes, tol);
  std::vector<double> at_j(nodes.begin(), nodes.end()), at_i(nodes.begin(), nodes.end());
  at_j[j] = mu;
  at_i[i] = mu;
  r.rhs = (li - mu) / (li - lj) * divided_difference(f, at_j, tol) +
          (mu - lj) / (li - lj) * divided_difference(f, at_i, tol);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace schurlab::divdiff
