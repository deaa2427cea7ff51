// Acceptance harness: one PASS/FAIL line per criterion.
#include <CLI11.hpp>

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "schurlab/constants.hpp"
#include "schurlab/decomp.hpp"
#include "schurlab/divdiff.hpp"
#include "schurlab/dyadic.hpp"
#include "schurlab/hms.hpp"
#include "schurlab/lowerlab.hpp"
#include "schurlab/matrixnum.hpp"
#include "schurlab/schur.hpp"
#include "schurlab/symcalc.hpp"

using namespace schurlab;
using matrixnum::Complex;
using matrixnum::ComplexMatrix;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void note(Outcome& o, bool ok, const std::string& what) {
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + (ok ? "" : " [x]");
}

ComplexMatrix gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

std::vector<double> random_labels(int n, double lo, double hi, double min_gap, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    std::sort(x.begin(), x.end());
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && x[i] - x[i - 1] >= min_gap;
    if (ok) return x;
  }
}

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// ---------------------------------------------------------------------------

Outcome divided_differences() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-2, 2);
  const std::vector<std::pair<divdiff::ScalarFunction, int>> pool{
      {divdiff::sine(), 5}, {divdiff::cosine(), 5}, {divdiff::exponential(), 5},
      {divdiff::cube(), 3}, {divdiff::square(), 2}};
  constexpr int kInstances = 2000;

  double perm = 0, bound = -1, insertion = 0, fd = 0;
  for (int t = 0; t < kInstances; ++t) {
    const auto& [f, top] = pool[t % pool.size()];
    const int n = 1 + static_cast<int>(rng() % top);
    std::vector<double> nodes = random_labels(n + 1, -2, 2, 0.05, rng);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    if (n >= 2 && rng() % 4 == 0) nodes[1] = nodes[0];  // confluent pair
    const double lo = *std::min_element(nodes.begin(), nodes.end());
    const double hi = *std::max_element(nodes.begin(), nodes.end());
    const double dd = divdiff::divided_difference(f, nodes);
    const double sup = hms::sup_derivative(f, n, lo, hi) / factorial(n);

    auto shuffled = nodes;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    perm = std::max(perm, std::abs(divdiff::divided_difference(f, shuffled) - dd) / (std::abs(dd) + sup));
    bound = std::max(bound, (std::abs(dd) - sup) / sup);

    // insertion needs a well separated pivot pair
    std::vector<double> sep = random_labels(n + 1, -2, 2, 0.05, rng);
    std::shuffle(sep.begin(), sep.end(), rng);
    const double mu = u(rng);
    const auto split = divdiff::node_insertion_split(f, sep, 0, n, mu);
    const double s_lo = std::min(*std::min_element(sep.begin(), sep.end()), mu);
    const double s_hi = std::max(*std::max_element(sep.begin(), sep.end()), mu);
    const double scale = std::abs(split.lhs) + hms::sup_derivative(f, n, s_lo, s_hi, 2001) / factorial(n);
    insertion = std::max(insertion, split.residual / scale);

    // partial derivative of f^[n](l^(k), m^(n+1-k)) against central differences
    const int k = static_cast<int>(rng() % (n + 2));
    // clustered but unmerged nodes cost eps / gap^n in the Newton table; keep the pair apart
    double l = u(rng), m = u(rng);
    while (std::abs(l - m) < 0.25) m = u(rng);
    const auto which = rng() % 2 ? divdiff::Variable::lambda : divdiff::Variable::mu;
    if ((which == divdiff::Variable::lambda && k == 0) || (which == divdiff::Variable::mu && k == n + 1)) continue;
    if ((f.name == "cube" || f.name == "sq") && n >= top) continue;  // derivative vanishes identically
    const double an = divdiff::divdiff_partial(f, n, k, l, m, which);
    const double h = 1e-4;
    const bool wl = which == divdiff::Variable::lambda;
    const double fp = divdiff::divdiff_two_var(f, n, k, l + (wl ? h : 0), m + (wl ? 0 : h));
    const double fm = divdiff::divdiff_two_var(f, n, k, l - (wl ? h : 0), m - (wl ? 0 : h));
    const double num = (fp - fm) / (2 * h);
    const double dscale = std::max(std::abs(an), hms::sup_derivative(f, n + 1, std::min(l, m) - h,
                                                                     std::max(l, m) + h, 2001) /
                                                     factorial(n + 1));
    fd = std::max(fd, std::abs(num - an) / dscale);
  }
  note(o, true, std::to_string(kInstances) + " instances");
  note(o, perm <= 1e-12, fmt("permutation %.2e <= 1e-12", perm));
  note(o, bound <= 1e-12, fmt("uniform bound excess %.2e <= 1e-12", bound));
  note(o, insertion <= 1e-10, fmt("insertion %.2e <= 1e-10", insertion));
  note(o, fd <= 1e-5, fmt("derivative vs FD %.2e <= 1e-5", fd));
  return o;
}

Outcome decomposition_identity() {
  Outcome o;
  const decomp::SectorPartition p;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-3, 3);
  const std::vector<divdiff::ScalarFunction> fs{divdiff::square(), divdiff::cube(), divdiff::sine(),
                                                divdiff::exponential(), divdiff::abs2()};
  double pointwise = 0;
  for (const auto& f : fs) {
    for (int t = 0; t < 10000; ++t) {
      double l[3] = {u(rng), u(rng), u(rng)};
      if (t % 10 == 0) l[(t / 10) % 3] = l[(t / 10 + 1) % 3];  // one coincident pair
      const auto c = decomp::pointwise_identity(f, p, l[0], l[1], l[2]);
      pointwise = std::max(pointwise, c.residual / c.scale);
    }
  }
  note(o, pointwise <= 1e-10, fmt("pointwise 5x1e4 triples %.2e <= 1e-10", pointwise));

  double op = 0;
  for (int t = 0; t < 20; ++t) {
    const schur::PointSet x(random_labels(32, -2, 2, 1e-3, rng));
    const auto r = decomp::operator_identity(fs[t % fs.size()], p, x, gaussian(32, rng), gaussian(32, rng));
    op = std::max(op, r.residual / r.lhs_norm);
  }
  note(o, op <= 1e-8, fmt("operator n=32 x20 %.2e <= 1e-8", op));
  return o;
}

Outcome part2_limits() {
  Outcome o;
  for (auto v : {lowerlab::Variant::B1, lowerlab::Variant::B2}) {
    lowerlab::Discretization d{v, 0.5, 40, 5};
    const double e40 = lowerlab::limit_convergence_report(d);
    d.k = 80;
    const double e80 = lowerlab::limit_convergence_report(d);
    note(o, e40 <= 1e-3, std::string(lowerlab::to_string(v)) + fmt(" k=40 %.2e <= 1e-3", e40));
    note(o, e80 < e40, fmt("k=80 %.2e decreases", e80));
  }
  return o;
}

Outcome b1_factorization() {
  Outcome o;
  std::mt19937_64 rng(404);
  double gap = 0;
  const lowerlab::Discretization d{lowerlab::Variant::B1, 0.5, 40, 16};
  const auto grid = lowerlab::phi_grid(d);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix y = schur::off_diagonal_part(gaussian(16, rng));
    const ComplexMatrix x = schur::off_diagonal_part(gaussian(16, rng));
    const ComplexMatrix ref = lowerlab::b1_factorized(y, x);
    gap = std::max(gap, (schur::apply_bilinear(grid, y, x) - ref).norm() / ref.norm());
  }
  note(o, gap <= 1e-6, fmt("n=16 x20 relative %.2e <= 1e-6", gap));

  long mismatches = 0;
  for (int n : {2, 4, 6, 8}) {
    const lowerlab::Discretization dn{lowerlab::Variant::B1, 0.5, 40, n};
    const auto g = lowerlab::phi_grid(dn);
    const ComplexMatrix y = gaussian(n, rng), x = gaussian(n, rng);
    const ComplexMatrix fast = schur::apply_bilinear(g, y, x);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        Complex acc = 0;
        for (int j = 0; j < n; ++j) acc += lowerlab::phi_value(dn, i + 1, j + 1, l + 1) * y(i, j) * x(j, l);
        mismatches += acc != fast(i, l);
      }
  }
  note(o, mismatches == 0, "brute-force triple sum n<=8 mismatches " + std::to_string(mismatches));
  return o;
}

Outcome growth_rates() {
  Outcome o;
  schur::EstimateOptions opt;
  opt.budget = {40, 80};
  opt.seed = 7;
  const int n = 128;
  const lowerlab::Discretization d{lowerlab::Variant::B1, 0.5, 40, n};

  const auto b1_4 = lowerlab::b1_experiment(4, d, opt);    // M+ ascent at 8
  const auto b1_16 = lowerlab::b1_experiment(16, d, opt);  // M+ ascent at 32
  const auto mp = schur::tabulate2(schur::m_plus(), schur::PointSet::integers(n));
  const auto seeds = lowerlab::volterra_seeds(n);
  const double m4 = schur::norm_lower_estimate(mp, 4, 4, opt, seeds).ratio;
  const double m8 = b1_4.nu;
  const double m16 = schur::norm_lower_estimate(mp, 16, 16, opt, seeds).ratio;
  note(o, m4 < m8 && m8 < m16, fmt("(a) M+ p=4 %.4f", m4) + fmt(" < p=8 %.4f", m8) + fmt(" < p=16 %.4f", m16));

  const double r = b1_16.implied_bound / b1_4.implied_bound;
  note(o, r >= 8,
       fmt("(b) B1 implied(16) %.4f", b1_16.implied_bound) + fmt(" / implied(4) %.4f", b1_4.implied_bound) +
           fmt(" = %.4f >= 8", r) + fmt(" [limit gap %.1e]", std::max(b1_4.reference_gap, b1_16.reference_gap)));

  const auto b2_11 = lowerlab::b2_experiment(1.1, d, opt);
  const auto b2_2 = lowerlab::b2_experiment(2, d, opt);
  note(o, b2_11.implied_bound > b2_2.implied_bound,
       fmt("(c) B2 implied(1.1) %.4f", b2_11.implied_bound) + fmt(" > implied(2) %.4f", b2_2.implied_bound));
  return o;
}

Outcome hms_suite() {
  Outcome o;
  const std::vector<std::pair<divdiff::ScalarFunction, int>> fs{
      {divdiff::sine(), 3}, {divdiff::cosine(), 3}, {divdiff::exponential(), 3},
      {divdiff::cube(), 3}, {divdiff::square(), 2}, {divdiff::abs2(), 1}};
  const hms::GridSpec grid;  // 512 x 512 Chebyshev-Lobatto
  double worst = 0;
  int symbols = 0;
  for (const auto& [f, top] : fs)
    for (int n = 1; n <= top; ++n)
      for (int k = 0; k <= n + 1; ++k)
        for (bool sgn : {false, true}) {
          const double norm = hms::hms_norm(hms::divdiff_symbol(f, n, k, sgn), grid).norm;
          const double bound = hms::hms_bound(n, k, f, grid.lo, grid.hi);
          worst = std::max(worst, norm / bound);
          ++symbols;
        }
  note(o, worst <= 1 + 1e-9, fmt("max norm/bound %.4f <= 1", worst) + " over " + std::to_string(symbols) + " symbols");

  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::pair<double, double>> samples(10000);
  for (auto& s : samples) s = {u(rng), u(rng)};
  double violation = -1e300;
  for (const auto& f : {divdiff::sine(), divdiff::exponential(), divdiff::cube()})
    for (int n = 1; n <= 2; ++n)
      for (int k = 0; k <= n + 1; ++k)
        for (int g = 0; g <= std::min(k, n + 1 - k); ++g)
          violation = std::max(violation, hms::pointwise_bound_check(n, k, g, f, samples).max_violation);
  note(o, violation <= 1e-9, fmt("pointwise bound violation %.2e <= 1e-9", violation));

  double ks = 0;
  for (double s : {0.0, 1.0, 3.0})
    for (int sigma : {1, -1}) ks = std::max(ks, std::abs(hms::hms_norm(hms::ks_symbol(s, sigma), {}).norm - (1 + 2 * s)));
  note(o, ks <= 1e-3, fmt("k_s norm vs 1+2|s| %.2e <= 1e-3", ks));
  return o;
}

Outcome kernel_suite() {
  Outcome o;
  using namespace symcalc;
  const auto c1 = circle_fourier_coeffs(harmonic(1), 8);
  double size = 0;
  for (auto [r0, r1] : {std::pair{0.5, 2.0}, std::pair{10.0, 40.0}})
    for (int i = 0; i < 40; ++i)
      for (int a = 0; a < 90; ++a) {
        const double r = r0 + (r1 - r0) * i / 39, t = 2 * kPi * a / 90;
        const auto k = kernel_eval(c1, r * std::cos(t), r * std::sin(t));
        size = std::max(size, std::abs(r * r * std::abs(k.value) - 1 / (2 * kPi)));
      }
  note(o, size <= 1e-8, fmt("|z|^2|K| - 1/2pi %.2e <= 1e-8", size));

  double hom = 0;
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const auto& c : {circle_fourier_coeffs(sin3_symbol(), 16), circle_fourier_coeffs(odd_bump_symbol(), 512)})
    for (int t = 0; t < 200; ++t) {
      const double x = u(rng), y = u(rng);
      const auto a = kernel_eval(c, x, y), b = kernel_eval(c, 2 * x, 2 * y);
      const double ga = std::hypot(std::abs(a.dx), std::abs(a.dy));
      hom = std::max(hom, std::hypot(std::abs(8.0 * b.dx - a.dx), std::abs(8.0 * b.dy - a.dy)) / ga);
    }
  note(o, hom <= 1e-6, fmt("gradient degree -3 %.2e <= 1e-6", hom));

  const auto bump = bump_symbol();
  const auto f = s1_factorize(bump, 1, 1);
  double rec = reconstruction_error(f, bump);
  std::uniform_real_distribution<double> ang(1e-3, kPi / 2 - 1e-3);
  for (int t = 0; t < 1000; ++t) {
    const double a = ang(rng);
    rec = std::max(rec, std::abs(bump(std::cos(a), std::sin(a)) - f.reconstruct(std::cos(a), std::sin(a))));
  }
  note(o, rec <= 1e-6, fmt("bump reconstruction %.2e <= 1e-6", rec));

  const decomp::SectorPartition p;
  const auto first = sector_coefficient_constants(p);
  const auto again = sector_coefficient_constants(p);
  const auto coarse = sector_coefficient_constants(p, kSectorS / 2, kSectorN / 2);
  double rep = 0, conv = 0;
  bool finite = true;
  std::string values;
  for (int j = 0; j < 4; ++j) {
    finite = finite && std::isfinite(first.c[j]) && first.c[j] > 0;
    rep = std::max(rep, std::abs(first.c[j] - again.c[j]) / first.c[j]);
    conv = std::max(conv, std::abs(first.c[j] - coarse.c[j]) / first.c[j]);
    values += fmt(j ? ",%.2f" : "%.2f", first.c[j]);
  }
  note(o, finite && conv <= 1e-3, "C(a3..a6)=" + values + fmt(" S-halving change %.1e", conv));
  note(o, rep <= 1e-8, fmt("repeat %.1e <= 1e-8", rep));
  return o;
}

Outcome constants_suite() {
  Outcome o;
  const auto t = constants::asymptotics_table(1.01, 64);
  note(o, std::abs(t.slope_top - 4) <= 0.1, fmt("slope over [16,64] %.4f in 4+-0.1", t.slope_top));
  note(o, t.scaled_min >= 60 && t.scaled_max <= 400,
       fmt("D/(p^4p*) in [%.2f", t.scaled_min) + fmt(", %.2f] within [60, 400]", t.scaled_max));
  double kap = 0;
  for (int i = 0; i <= 6300; ++i) kap = std::max(kap, constants::kappa(2, 1 + i * 0.01));
  note(o, kap <= 60, fmt("max kappa(2,q) %.4f <= 60", kap));

  using big = boost::multiprecision::cpp_bin_float_50;
  double err = 0;
  for (int n = 1; n <= 30; ++n) {
    big fact = 1;
    for (int i = 2; i < n; ++i) fact *= i;  // Gamma(n)
    const big e = boost::multiprecision::exp(big(1));
    const big want = 2 * e * boost::multiprecision::pow(e * n * fact, big(1) / n);
    err = std::max(err, static_cast<double>(boost::multiprecision::abs(big(constants::c_bmo(n)) - want) / want));
  }
  note(o, err <= 1e-12, fmt("C_BMO at integers 1..30 %.2e <= 1e-12", err));
  return o;
}

Outcome dyadic_suite() {
  using namespace dyadic;
  Outcome o;
  const DyadicSystem d(-2, 3, {1, 0, 1, 1, 0});
  std::vector<std::pair<Cube, HaarKind>> basis{{{d.kmax(), 0}, HaarKind::average}};
  for (int s = d.kmin() + 1; s <= d.kmax(); ++s)
    for (const auto& q : d.cubes(s)) basis.emplace_back(q, HaarKind::cancellative);
  auto sign = [&](const Cube& q, HaarKind k, std::int64_t c) {
    const double v = haar_value(d, q, k, c);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  long bad = 0;
  for (const auto& [q, kq] : basis)
    for (const auto& [r, kr] : basis) {
      std::int64_t sum = 0;
      for (std::int64_t c = 0; c < d.cells(); ++c) sum += sign(q, kq, c) * sign(r, kr, c);
      bad += sum != ((q == r && kq == kr) ? d.length_units(q.scale) : 0);
    }
  note(o, bad == 0 && static_cast<std::int64_t>(basis.size()) == d.cells(),
       "orthonormality sign sums, " + std::to_string(bad) + " mismatches");

  // integer data: averages and differences are dyadic rationals, exact in double
  std::mt19937_64 rng(909);
  StepFunction f(d, 1);
  for (std::int64_t c = 0; c < d.cells(); ++c) f[c](0, 0) = static_cast<double>(static_cast<int>(rng() % 201) - 100);
  auto exact_avg = [&](const Cube& q) {
    double s = 0;
    for (std::int64_t c = 0; c < d.cells(); ++c)
      if (d.contains(q, c)) s += f[c](0, 0).real();
    return s / static_cast<double>(d.length_units(q.scale));
  };
  bool exact = true;
  double lib = 0;
  std::vector<double> rec(d.cells(), exact_avg({d.kmax(), 0}));
  for (int s = d.kmin() + 1; s <= d.kmax(); ++s)
    for (const auto& q : d.cubes(s)) {
      const auto [a, b] = d.children(q);
      const double eq = exact_avg(q), ea = exact_avg(a), eb = exact_avg(b);
      const auto md = martingale_difference(d, f, q);
      for (std::int64_t c = 0; c < d.cells(); ++c) {
        if (!d.contains(q, c)) continue;
        const double delta = (d.contains(a, c) ? ea : eb) - eq;
        rec[c] += delta;
        lib = std::max(lib, std::abs(md[c](0, 0) - delta));
      }
    }
  for (std::int64_t c = 0; c < d.cells(); ++c) exact = exact && rec[c] == f[c](0, 0).real();
  note(o, exact, "exact dyadic reconstruction");
  note(o, lib <= 1e-13, fmt("library differences %.1e <= 1e-13", lib));

  const DyadicSystem e(-3, 2, {0, 1, 1, 0, 1});
  double pair = 0, cyc = 0;
  bool maps = true;
  for (int t = 0; t < 10; ++t) {
    const std::array<int, 3> k{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    const auto s = random_spec(e, k, 1 + t % 3, 30, rng());
    const auto f1 = random_step_function(e, 3, rng()), f2 = random_step_function(e, 3, rng()),
               f3 = random_step_function(e, 3, rng());
    const Complex lam = trilinear_form(e, s, f1, f2, f3);
    pair = std::max(pair, std::abs(trace_pairing(e, shift_apply(e, s, f1, f2), f3) - lam) / std::abs(lam));
    const auto r = cyclic_renumber(s);
    maps = maps && r.k == std::array<int, 3>{s.k[2], s.k[0], s.k[1]} && r.j0 == s.j0 % 3 + 1;
    for (std::size_t i = 0; i < s.terms.size(); ++i)
      maps = maps && r.terms[i].q == s.terms[i].q && r.terms[i].alpha == s.terms[i].alpha &&
             r.terms[i].sub == std::array<std::int64_t, 3>{s.terms[i].sub[2], s.terms[i].sub[0], s.terms[i].sub[1]};
    cyc = std::max(cyc, std::abs(trilinear_form(e, r, f3, f1, f2) - lam) / std::abs(lam));
  }
  note(o, pair <= 1e-12, fmt("<S(f,g),h> vs Lambda %.1e <= 1e-12", pair));
  note(o, maps && cyc <= 1e-13, fmt("cyclic renumbering term-exact, form %.1e <= 1e-13", cyc));

  const DyadicSystem g(-4, 1, {1, 0, 0, 1, 1});
  double bk = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::array<int, 3> k{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), static_cast<int>(rng() % 2)};
    const auto s = random_spec(g, k, 1 + static_cast<int>(rng() % 3), 25, rng());
    bk = std::max(bk, bk_bound_check(g, s, 8, rng()).max_abs);
    bk = std::max(bk, bk_bound_check(g, s, 8, rng(), BkCase::all_cancellative).max_abs);
  }
  note(o, bk <= 1 + 1e-10, fmt("max |b_K| over 1e3 specs %.12f <= 1+1e-10", bk));
  return o;
}

Outcome multiplier_norms() {
  Outcome o;
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> gn;
  std::uniform_real_distribution<double> ph(0, 2 * kPi);

  bool exact = true;
  double above = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + t % 6;
    ComplexMatrix v(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v(i, j) = gn(rng);
    const auto m = schur::grid2_from_matrix(v);
    Eigen::Index ai = 0, ak = 0;
    v.cwiseAbs().maxCoeff(&ai, &ak);
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(ai, ak) = 1;
    exact = exact && schur::linear_ratio(m, e, 2, 2) == m.sup;
    schur::EstimateOptions opt;
    opt.budget = {8, 30};
    opt.seed = static_cast<std::uint64_t>(t);
    above = std::max(above, schur::norm_lower_estimate(m, 2, 2, opt).ratio - m.sup);
  }
  note(o, exact, "S2 ratio of argmax unit == sup|m|");
  note(o, above <= 1e-12, fmt("S2 estimate - sup %.1e <= 1e-12", above));

  // (4,4,2) on symbols of the form g(l0) k(l1) h(l2), including m = 1
  double b442 = -1e300;
  for (int t = 0; t < 12; ++t) {
    const int n = 6;
    std::vector<Complex> g(n), k(n), h(n);
    for (int i = 0; i < n; ++i) {
      const bool one = t == 0;
      g[i] = one ? 1.0 : std::polar(std::abs(gn(rng)), ph(rng));
      k[i] = one ? 1.0 : std::polar(std::abs(gn(rng)), ph(rng));
      h[i] = one ? 1.0 : std::polar(std::abs(gn(rng)), ph(rng));
    }
    ComplexMatrix stacked(n * n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) stacked(i * n + j, l) = g[i] * k[j] * h[l];
    const auto m = schur::grid3_from_blocks(stacked);
    schur::EstimateOptions opt;
    opt.budget = {10, 40};
    opt.seed = static_cast<std::uint64_t>(100 + t);
    b442 = std::max(b442, schur::norm_lower_estimate(m, 4, 4, 2, opt).ratio - m.sup);
  }
  note(o, b442 <= 1e-9, fmt("(4,4,2) product symbols: estimate - sup %.2e <= 1e-9", b442));

  double b222 = -1e300;
  for (int t = 0; t < 12; ++t) {
    const int n = 6;
    ComplexMatrix stacked(n * n, n);
    for (int r = 0; r < n * n; ++r)
      for (int l = 0; l < n; ++l) stacked(r, l) = Complex(gn(rng), gn(rng));
    const auto m = schur::grid3_from_blocks(stacked);
    schur::EstimateOptions opt;
    opt.budget = {10, 40};
    opt.seed = static_cast<std::uint64_t>(200 + t);
    b222 = std::max(b222, schur::norm_lower_estimate(m, 2, 2, 2, opt).ratio - m.sup);
  }
  note(o, b222 <= 1e-9, fmt("(2,2,2) random symbols: estimate - sup %.2e <= 1e-9", b222));

  double dual = 0;
  for (int t = 0; t < 6; ++t) {
    ComplexMatrix v(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) v(i, j) = Complex(gn(rng), gn(rng));
    const auto m = schur::grid2_from_matrix(v);
    const auto mc = schur::grid2_from_matrix(v.conjugate());
    schur::EstimateOptions opt;
    opt.budget = {60, 200};
    opt.seed = static_cast<std::uint64_t>(300 + t);
    for (double p : {1.25, 1.5, 3.0}) {
      const double ps = matrixnum::conjugate_exponent(p);
      const double a = schur::norm_lower_estimate(m, p, p, opt).ratio;
      const double b = schur::norm_lower_estimate(mc, ps, ps, opt).ratio;
      dual = std::max(dual, std::abs(a - b) / std::max(a, b));
    }
  }
  note(o, dual <= 0.05, fmt("4x4 duality gap %.2e <= 5%%", dual));
  return o;
}

Outcome extrapolation() {
  Outcome o;
  const auto f = divdiff::sine();
  const double ceiling = 0.5;  // sup |f''| / 2 for sin
  double env[2] = {0, 0};
  const int sizes[2] = {64, 128};
  std::mt19937_64 rng(1111);
  for (int s = 0; s < 2; ++s) {
    const int n = sizes[s];
    const schur::PointSet x(random_labels(n, -kPi, kPi, 0, rng));
    const auto grid = decomp::second_divdiff_grid(f, x);
    for (int t = 0; t < 50; ++t) {
      ComplexMatrix a = gaussian(n, rng), b = gaussian(n, rng);
      a /= a.norm();
      b /= b.norm();
      env[s] = std::max(env[s], matrixnum::marcinkiewicz_norm(schur::apply_bilinear(grid, a, b)));
    }
  }
  note(o, std::max(env[0], env[1]) <= ceiling,
       fmt("envelope n=64 %.5f", env[0]) + fmt(", n=128 %.5f", env[1]) + fmt(" <= %.2f", ceiling));
  const double ratio = env[1] / env[0];
  note(o, std::abs(ratio - 1) <= 0.2, fmt("n=128/n=64 %.4f within 1+-0.2", ratio));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks; prints one PASS/FAIL line per criterion."};
  std::vector<int> only;
  app.add_option("--only", only, "criterion ids to run (default: all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "divided differences", 30, divided_differences},
      {2, "decomposition identity", 120, decomposition_identity},
      {3, "discretized limits", 5, part2_limits},
      {4, "B1 factorization oracle", 30, b1_factorization},
      {5, "growth rates n=128", 900, growth_rates},
      {6, "HMS suite", 60, hms_suite},
      {7, "kernel suite", 120, kernel_suite},
      {8, "constants", 5, constants_suite},
      {9, "dyadic suite", 60, dyadic_suite},
      {10, "Schur multiplier norms", 120, multiplier_norms},
      {11, "extrapolation envelope", 180, extrapolation},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) note(out, false, "TIMEOUT");
    const bool ok = out.pass;
    all_pass = all_pass && ok;
    std::printf("%s C%02d %-24s [%.1f s < %.0f s] %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
