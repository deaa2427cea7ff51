#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "report.hpp"
#include "schurlab/constants.hpp"
#include "schurlab/decomp.hpp"
#include "schurlab/divdiff.hpp"
#include "schurlab/dyadic.hpp"
#include "schurlab/error.hpp"
#include "schurlab/hms.hpp"
#include "schurlab/lowerlab.hpp"
#include "schurlab/matrixnum.hpp"
#include "schurlab/runtime.hpp"
#include "schurlab/schur.hpp"
#include "schurlab/symcalc.hpp"

using namespace schurlab;
using cli::num;
using cli::Table;

namespace {

cli::RunContext ctx;

struct Command {
  CLI::App* app;
  std::function<Table()> run;
};

std::vector<Command> commands;

void add(CLI::App* app, std::function<Table()> run) { commands.push_back({app, std::move(run)}); }

schur::EstimateOptions estimate_options(int restarts, int iterations) {
  schur::EstimateOptions o;
  o.budget = {restarts, iterations};
  o.seed = ctx.seed;
  o.threads = ctx.threads;
  return o;
}

void fail(const std::string& what) { throw Error("cli", ErrorCode::InvalidArgument, what); }

// ---------------------------------------------------------------------------

void setup_divdiff(CLI::App& root) {
  auto* c = root.add_subcommand("divdiff",
                                "Divided difference f^[n] at arbitrary, possibly repeated, nodes. Repeated nodes use "
                                "derivatives; the value is symmetric in the nodes and bounded by sup|f^(n)|/n! on "
                                "their hull. Prints the value. Functions: sq, cube, sin, cos, exp, abs2 (s|s|).");
  static std::string f = "sin";
  static std::vector<double> nodes;
  static double tol = divdiff::kDefaultTol;
  c->add_option("--f", f, "function name");
  c->add_option("--nodes", nodes, "comma separated nodes")->delimiter(',')->required();
  c->add_option("--tol", tol, "nodes closer than this are merged");
  add(c, [] {
    const double v = divdiff::divided_difference(divdiff::by_name(f), nodes, tol);
    std::cout << num(v) << '\n';
    Table t{{"f", "order", "value"}, {{f, num(static_cast<long long>(nodes.size()) - 1), num(v)}}, {}};
    if (ctx.out.empty()) t.header.clear();
    return t;
  });
}

void setup_decomp(CLI::App& root) {
  auto* c = root.add_subcommand(
      "decomp",
      "Splits the second divided difference f^[2](l0, l1, l2) into six first-order terms weighted by smooth "
      "angular sector coefficients, and checks the same identity for the associated Schur multipliers. Reports "
      "the largest relative residual over random triples and random matrix pairs.");
  static std::string f = "sin";
  static double eps = std::numbers::pi / 32;
  static int triples = 10000, n = 16, trials = 5;
  static double lo = -2, hi = 2;
  c->add_option("--f", f, "function name");
  c->add_option("--epsilon", eps, "sector overlap parameter in (0, pi/16)");
  c->add_option("--triples", triples, "random triples for the pointwise identity");
  c->add_option("--n", n, "matrix size for the operator identity (0 skips)");
  c->add_option("--trials", trials, "random matrix pairs");
  c->add_option("--lo", lo, "label range lower end");
  c->add_option("--hi", hi, "label range upper end");
  add(c, [] {
    const auto fn = divdiff::by_name(f);
    decomp::SectorPartition p;
    p.epsilon = eps;
    decomp::validate(p);
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> u(lo, hi);
    double worst = 0;
    for (int t = 0; t < triples; ++t) {
      double a = u(rng), b = u(rng), cc = u(rng);
      if (a == b && b == cc) continue;
      const auto r = decomp::pointwise_identity(fn, p, a, b, cc);
      worst = std::max(worst, r.scale == 0 ? 0 : r.residual / r.scale);
    }
    Table tab{{"check", "f", "epsilon", "size", "count", "max_relative_residual"}, {}, {}};
    tab.rows.push_back({"pointwise", f, num(eps), "1", num(static_cast<long long>(triples)), num(worst)});
    if (n > 0) {
      double op = 0;
      std::normal_distribution<double> g;
      for (int t = 0; t < trials; ++t) {
        std::vector<double> x(n);
        for (auto& v : x) v = u(rng);
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        const int m = static_cast<int>(x.size());
        schur::ComplexMatrix a(m, m), b(m, m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            a(i, j) = {g(rng), g(rng)};
            b(i, j) = {g(rng), g(rng)};
          }
        const auto r = decomp::operator_identity(fn, p, schur::PointSet(x), a, b);
        op = std::max(op, r.lhs_norm == 0 ? 0 : r.residual / r.lhs_norm);
      }
      tab.rows.push_back({"operator", f, num(eps), num(static_cast<long long>(n)), num(static_cast<long long>(trials)),
                          num(op)});
    }
    return tab;
  });
}

void setup_hms(CLI::App& root) {
  auto* c = root.add_subcommand(
      "hms",
      "Hormander-Mikhlin-Schur norm sup|phi| + sup|l - m|(|d_l phi| + |d_m phi|) of the two-variable symbols "
      "f^[n](l^(k), m^(n+1-k)), optionally signed by sign(m - l), next to the bound (2n+3)/n! sup|f^(n)|. "
      "With --ks, the norm of |m - l|^{is} on a half-plane, which equals 1 + 2|s|.");
  static std::string f = "sin";
  static int n = 1;
  static std::vector<int> ks;
  static bool signed_variant = false;
  static std::vector<double> s_list;
  static hms::GridSpec grid;
  c->add_option("--f", f, "function name");
  c->add_option("--n", n, "divided difference order");
  c->add_option("--k", ks, "multiplicities of l (default 0..n+1)")->delimiter(',');
  c->add_flag("--signed", signed_variant, "multiply by sign(m - l)");
  c->add_option("--ks", s_list, "evaluate |m - l|^{is} for these s instead")->delimiter(',');
  c->add_option("--lo", grid.lo, "box lower end");
  c->add_option("--hi", grid.hi, "box upper end");
  c->add_option("--points", grid.points, "Chebyshev-Lobatto points per axis");
  c->add_option("--margin", grid.margin, "distance kept from the diagonal (<0: 1e-3 of the width)");
  add(c, [] {
    Table t;
    if (!s_list.empty()) {
      t.header = {"s", "sigma", "hms_norm", "expected"};
      for (double s : s_list)
        for (int sigma : {1, -1})
          t.rows.push_back({num(s), num(static_cast<long long>(sigma)), num(hms::hms_norm(hms::ks_symbol(s, sigma), grid).norm),
                            num(1 + 2 * std::abs(s))});
      return t;
    }
    const auto fn = divdiff::by_name(f);
    std::vector<int> list = ks;
    if (list.empty())
      for (int k = 0; k <= n + 1; ++k) list.push_back(k);
    t.header = {"f", "n", "k", "signed", "hms_norm", "sup_value", "sup_derivative", "bound"};
    for (int k : list) {
      const auto r = hms::hms_norm(hms::divdiff_symbol(fn, n, k, signed_variant), grid);
      t.rows.push_back({f, num(static_cast<long long>(n)), num(static_cast<long long>(k)), signed_variant ? "1" : "0",
                        num(r.norm), num(r.sup_value), num(r.sup_derivative),
                        num(hms::hms_bound(n, k, fn, grid.lo, grid.hi))});
    }
    return t;
  });
}

symcalc::HomogeneousSymbol symbol_by_name(const std::string& name, const std::string& table, double eps) {
  using namespace symcalc;
  if (!table.empty()) {
    std::ifstream in(table);
    if (!in) fail("cannot read " + table);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double a = 0, b = 0;
      if (ls >> a >> b) rows.emplace_back(a, b);
    }
    return tabulated_symbol(rows);
  }
  if (name == "harmonic1") return harmonic(1);
  if (name == "cos") return cos_harmonic();
  if (name == "sin3") return sin3_symbol();
  if (name == "bump") return bump_symbol();
  if (name == "oddbump") return odd_bump_symbol();
  if (name.size() == 2 && name[0] == 'a' && name[1] >= '3' && name[1] <= '6') {
    decomp::SectorPartition p;
    p.epsilon = eps;
    return coefficient_symbol(p, name[1] - '0', true);
  }
  fail("unknown symbol '" + name + "'");
  return {};
}

void setup_symcalc(CLI::App& root) {
  auto* c = root.add_subcommand(
      "symcalc",
      "Degree-zero homogeneous multipliers m(xi) on the plane. kernel: circle Fourier coefficients and the size "
      "and smoothness constants sup|z|^2|K| and sup|z|^3|grad K| of the associated Calderon-Zygmund kernel. "
      "factorize: writes m on a quadrant as an integral of |xi1|^{is}|xi2|^{-is} against g(s) and reports "
      "int|g|(1+2|s|)^2 and the reconstruction error. sectors: the constants C(a_j) of the four sector "
      "coefficients, summed over both mixed-sign quadrants.");
  static std::string mode = "kernel", name = "oddbump", table;
  static int K = 512, sigma1 = 1, sigma2 = 1, N = symcalc::kSectorN;
  static double S = symcalc::kSectorS, eps = std::numbers::pi / 32;
  static std::vector<double> radii{0.5, 1, 2, 4};
  c->add_option("--mode", mode, "kernel | factorize | sectors")
      ->check(CLI::IsMember({"kernel", "factorize", "sectors"}));
  c->add_option("--symbol", name, "harmonic1, cos, sin3, bump, oddbump, a3..a6");
  c->add_option("--table", table, "theta,rho profile file (overrides --symbol)");
  c->add_option("--K", K, "Fourier truncation");
  c->add_option("--radii", radii, "radii for the kernel constants")->delimiter(',');
  c->add_option("--sigma1", sigma1, "quadrant sign of xi1");
  c->add_option("--sigma2", sigma2, "quadrant sign of xi2");
  c->add_option("--S", S, "frequency cut-off for factorization");
  c->add_option("--N", N, "frequency samples for factorization");
  c->add_option("--epsilon", eps, "sector overlap parameter");
  add(c, [] {
    Table t;
    if (mode == "sectors") {
      decomp::SectorPartition p;
      p.epsilon = eps;
      const auto r = symcalc::sector_coefficient_constants(p, S, N);
      t.header = {"coefficient", "C_total", "C_minus_plus", "S", "N"};
      for (int j = 0; j < 4; ++j)
        t.rows.push_back({"a" + std::to_string(j + 3), num(r.c[j]), num(r.per_quadrant[j]), num(S),
                          num(static_cast<long long>(N))});
      return t;
    }
    const auto m = symbol_by_name(name, table, eps);
    if (mode == "kernel") {
      const auto fc = symcalc::circle_fourier_coeffs(m, K);
      const auto sz = symcalc::size_smoothness_check(fc, radii);
      t.header = {"symbol", "K", "alpha0_abs", "tail_bound", "c1_size", "c2_smoothness"};
      t.rows.push_back({table.empty() ? name : "table", num(static_cast<long long>(K)), num(std::abs(fc[0])),
                        num(fc.tail_bound), num(sz.c1), num(sz.c2)});
      return t;
    }
    const auto f = symcalc::s1_factorize(m, sigma1, sigma2, S, N);
    t.header = {"symbol", "sigma1", "sigma2", "S", "N", "c_m", "reconstruction_error", "t_lo", "t_hi"};
    t.rows.push_back({table.empty() ? name : "table", num(static_cast<long long>(sigma1)),
                      num(static_cast<long long>(sigma2)), num(S), num(static_cast<long long>(N)), num(f.c_m),
                      num(symcalc::reconstruction_error(f, m)), num(f.t_lo), num(f.t_hi)});
    return t;
  });
}

void setup_schur(CLI::App& root) {
  auto* c = root.add_subcommand(
      "schur",
      "Certified lower bounds for the norm of a Schur multiplier between Schatten classes, found by randomized "
      "ascent and recomputed with a Jacobi SVD. Linear: S_p_in -> S_p_out. Bilinear: S_p1 x S_p2 -> S_p. "
      "Built-in symbols: mplus (sign(k - i)) and tplus (upper triangular truncation) on 1..n.");
  static std::string symbol = "mplus", grid2, grid3;
  static int n = 16, restarts = 20, iterations = 60;
  static std::vector<double> ps{2};
  static double p_out = -1, p1 = 4, p2 = 4;
  c->add_option("--symbol", symbol, "mplus | tplus")->check(CLI::IsMember({"mplus", "tplus"}));
  c->add_option("--grid2", grid2, "linear symbol file (n x n complex, 'rows cols' header)");
  c->add_option("--grid3", grid3, "bilinear symbol file (n stacked n x n blocks)");
  c->add_option("--n", n, "size for built-in symbols");
  c->add_option("--p", ps, "exponents (linear: p_in; bilinear: target p)")->delimiter(',');
  c->add_option("--p-out", p_out, "linear target exponent (default: p_in)");
  c->add_option("--p1", p1, "bilinear first exponent");
  c->add_option("--p2", p2, "bilinear second exponent");
  c->add_option("--restarts", restarts, "ascent restarts");
  c->add_option("--iterations", iterations, "iterations per restart");
  add(c, [] {
    const auto opt = estimate_options(restarts, iterations);
    Table t;
    if (!grid3.empty()) {
      std::ifstream in(grid3);
      if (!in) fail("cannot read " + grid3);
      const auto g = schur::read_grid3(in);
      t.header = {"p1", "p2", "p", "ratio", "sup_m", "restart"};
      for (double p : ps) {
        const auto e = schur::norm_lower_estimate(g, p1, p2, p, opt);
        t.rows.push_back({num(p1), num(p2), num(p), num(e.ratio), num(g.sup), num(static_cast<long long>(e.restart))});
      }
      return t;
    }
    schur::Grid2 g;
    std::vector<schur::ComplexMatrix> seeds;
    if (!grid2.empty()) {
      std::ifstream in(grid2);
      if (!in) fail("cannot read " + grid2);
      g = schur::read_grid2(in);
    } else {
      const auto x = schur::PointSet::integers(n);
      g = schur::tabulate2(symbol == "mplus" ? schur::m_plus() : schur::t_plus(), x);
      seeds = lowerlab::volterra_seeds(n);
    }
    t.header = {"p_in", "p_out", "ratio", "sup_m", "restart"};
    for (double p : ps) {
      const double q = p_out > 0 ? p_out : p;
      const auto e = schur::norm_lower_estimate(g, p, q, opt, seeds);
      t.rows.push_back({num(p), num(q), num(e.ratio), num(g.sup), num(static_cast<long long>(e.restart))});
    }
    return t;
  });
}

void setup_lowerlab(CLI::App& root) {
  auto* c = root.add_subcommand(
      "lowerlab",
      "Desk-scale lower bounds. The multiplier of f(s) = s|s| on geometric nodes q^{ki} converges, as k grows, "
      "to an expression in the triangular truncations T+ and T-, so the norm of the discretized bilinear map "
      "inherits their growth in p.");
  c->require_subcommand(1);
  static double q = 0.5;
  static int n = 16, k = 40, restarts = 20, iterations = 60;
  static std::vector<double> ps{4};
  auto common = [](CLI::App* s, bool with_p) {
    s->add_option("--q", q, "node ratio in (0, 1)");
    s->add_option("--n", n, "matrix size");
    s->add_option("--k", k, "discretization exponent");
    s->add_option("--restarts", restarts, "ascent restarts");
    s->add_option("--iterations", iterations, "iterations per restart");
    if (with_p) s->add_option("--p", ps, "exponents")->delimiter(',');
  };
  auto experiment = [](lowerlab::Variant v) {
    return [v] {
      const lowerlab::Discretization d{v, q, k, n};
      lowerlab::validate(d);
      const auto opt = estimate_options(restarts, iterations);
      std::vector<double> sorted = ps;
      std::sort(sorted.begin(), sorted.end());
      Table t;
      std::istringstream hs(lowerlab::csv_header());
      for (std::string h; std::getline(hs, h, ',');) t.header.push_back(h);
      for (double p : sorted) {
        const auto r = v == lowerlab::Variant::B1 ? lowerlab::b1_experiment(p, d, opt)
                                                  : lowerlab::b2_experiment(p, d, opt);
        std::vector<std::string> row;
        std::istringstream rs(lowerlab::csv_row(r));
        for (std::string cell; std::getline(rs, cell, ',');) row.push_back(cell);
        t.rows.push_back(row);
      }
      return t;
    };
  };
  auto* b1 = c->add_subcommand("b1",
                               "Bilinear map (y, x) -> y x - 2 T-(y) T+(x) on S_2p x S_2p -> S_p, approached by the "
                               "discretized multiplier; the implied bound should grow like p^2 for large p.");
  common(b1, true);
  add(b1, experiment(lowerlab::Variant::B1));
  auto* b2 = c->add_subcommand("b2",
                               "Discretized multiplier whose limit is the sign symbol sign(l - i), evaluated on Holder "
                               "splittings of the best S_p input; the implied bound should grow like p/(p-1) as p "
                               "approaches 1.");
  common(b2, true);
  add(b2, experiment(lowerlab::Variant::B2));
  auto* sw = c->add_subcommand("sweep", "Lower bounds for the triangular truncation T+ and for M+ = T+ - T- on S_p.");
  common(sw, true);
  add(sw, [] {
    std::vector<double> sorted = ps;
    std::sort(sorted.begin(), sorted.end());
    const auto rows = lowerlab::truncation_norm_sweep(sorted, n, estimate_options(restarts, iterations));
    Table t{{"p", "n", "t_plus", "m_plus"}, {}, {}};
    for (const auto& r : rows) t.rows.push_back({num(r.p), num(static_cast<long long>(n)), num(r.t_plus), num(r.m_plus)});
    return t;
  });
  auto* li = c->add_subcommand("limits",
                               "Largest gap between the discretized symbols and their k -> infinity limits over all "
                               "admissible index triples, for each k in --ks.");
  static std::vector<int> klist{10, 20, 40, 80};
  li->add_option("--q", q, "node ratio in (0, 1)");
  li->add_option("--n", n, "index range 1..n");
  li->add_option("--ks", klist, "values of k")->delimiter(',');
  add(li, [] {
    Table t{{"variant", "q", "k", "n", "max_gap"}, {}, {}};
    for (auto v : {lowerlab::Variant::B1, lowerlab::Variant::B2})
      for (int kk : klist)
        t.rows.push_back({lowerlab::to_string(v), num(q), num(static_cast<long long>(kk)), num(static_cast<long long>(n)),
                          num(lowerlab::limit_convergence_report({v, q, kk, n}))});
    return t;
  });
}

void setup_dyadic(CLI::App& root) {
  auto* c = root.add_subcommand(
      "dyadic",
      "Dyadic shifts of complexity (k1, k2, k3) on a shifted periodic dyadic grid, acting on matrix-valued step "
      "functions. bk: regrouped kernel coefficients stay within 1 for admissible coefficients. pairing: "
      "<S(f, g), h> against the trilinear form. probe: random lower bound for the S_p1 x S_p2 -> S_p norm. "
      "json: print a random admissible spec.");
  static std::string mode = "bk", spec_file;
  static int kmin = -3, kmax = 2, terms = 20, j0 = 3, dim = 2, samples = 8, candidates = 200;
  static std::vector<int> omega, kk{1, 0, 1};
  static double p1 = 4, p2 = 4, p = 2;
  c->add_option("--mode", mode, "bk | pairing | probe | json")->check(CLI::IsMember({"bk", "pairing", "probe", "json"}));
  c->add_option("--kmin", kmin, "finest scale");
  c->add_option("--kmax", kmax, "window scale");
  c->add_option("--omega", omega, "grid shift bits, one per scale")->delimiter(',');
  c->add_option("--complexity", kk, "k1,k2,k3")->delimiter(',')->expected(3);
  c->add_option("--j0", j0, "slot carrying the average Haar function (1..3)");
  c->add_option("--terms", terms, "random terms");
  c->add_option("--spec", spec_file, "JSON spec instead of a random one");
  c->add_option("--dim", dim, "matrix dimension of the step functions");
  c->add_option("--samples", samples, "sample points per cube (bk)");
  c->add_option("--candidates", candidates, "random candidates (probe)");
  c->add_option("--p1", p1, "probe exponent of f");
  c->add_option("--p2", p2, "probe exponent of g");
  c->add_option("--p", p, "probe target exponent");
  add(c, [] {
    const dyadic::DyadicSystem d(kmin, kmax, omega);
    dyadic::ShiftSpec s;
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) fail("cannot read " + spec_file);
      std::stringstream ss;
      ss << in.rdbuf();
      s = dyadic::shift_from_json(ss.str());
      dyadic::validate(d, s);
    } else {
      s = dyadic::random_spec(d, {kk[0], kk[1], kk[2]}, j0, terms, ctx.seed);
    }
    Table t;
    if (mode == "json") {
      std::cout << dyadic::to_json(s) << '\n';
      t.header = {"terms"};
      t.rows.push_back({num(static_cast<long long>(s.terms.size()))});
      if (ctx.out.empty()) t.header.clear(), t.rows.clear();
      return t;
    }
    if (mode == "bk") {
      t.header = {"case", "max_abs_bK", "cubes", "samples"};
      for (auto which : {dyadic::BkCase::one_average, dyadic::BkCase::all_cancellative}) {
        const auto r = dyadic::bk_bound_check(d, s, samples, ctx.seed, which);
        t.rows.push_back({which == dyadic::BkCase::one_average ? "one_average" : "all_cancellative", num(r.max_abs),
                          num(static_cast<long long>(r.cubes)), num(static_cast<long long>(r.samples))});
      }
      return t;
    }
    if (mode == "pairing") {
      const auto f = dyadic::random_step_function(d, dim, mix_seed(ctx.seed, 1));
      const auto g = dyadic::random_step_function(d, dim, mix_seed(ctx.seed, 2));
      const auto h = dyadic::random_step_function(d, dim, mix_seed(ctx.seed, 3));
      const auto lhs = dyadic::trace_pairing(d, dyadic::shift_apply(d, s, f, g), h);
      const auto rhs = dyadic::trilinear_form(d, s, f, g, h);
      t.header = {"pairing_re", "pairing_im", "form_re", "form_im", "relative_gap"};
      t.rows.push_back({num(lhs.real()), num(lhs.imag()), num(rhs.real()), num(rhs.imag()),
                        num(std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300))});
      return t;
    }
    const auto r = dyadic::shift_norm_probe(d, s, dim, p1, p2, p, candidates, ctx.seed);
    t.header = {"p1", "p2", "p", "ratio", "candidates"};
    t.rows.push_back({num(p1), num(p2), num(p), num(r.ratio), num(static_cast<long long>(r.candidates))});
    return t;
  });
}

void setup_constants(CLI::App& root) {
  auto* c = root.add_subcommand(
      "constants",
      "Explicit constants of the bilinear Schatten multiplier bounds. table: D(p, 2p, 2p) against p^4 p* and the "
      "lower-bound reference p^2 p*, with the log-log slope over [16, 64]; or kappa(2, q), which stays below 60. "
      "eval: beta, C_BMO, C, D and C' at one exponent triple.");
  c->require_subcommand(1);
  auto* tb = c->add_subcommand("table", "Tables over a log-spaced exponent range (32 points per decade by default).");
  static std::string mode = "D2p";
  static double pmin = 1.01, pmax = 64;
  static int per_decade = 32;
  tb->add_option("--mode", mode, "D2p | kappa")->check(CLI::IsMember({"D2p", "kappa"}));
  tb->add_option("--pmin", pmin, "lower end");
  tb->add_option("--pmax", pmax, "upper end");
  tb->add_option("--per-decade", per_decade, "grid density");
  add(tb, [] {
    Table t;
    if (mode == "kappa") {
      t.header = {"q", "kappa_2_q"};
      const double lo = std::log10(pmin), hi = std::log10(pmax);
      const int count = static_cast<int>(std::ceil((hi - lo) * per_decade)) + 1;
      double top = 0;
      for (int i = 0; i < count; ++i) {
        const double qv = std::pow(10.0, lo + (hi - lo) * i / std::max(count - 1, 1));
        const double kv = constants::kappa(2, qv);
        top = std::max(top, kv);
        t.rows.push_back({num(qv), num(kv)});
      }
      t.notes.push_back({"max_kappa", num(top)});
      return t;
    }
    const auto tab = constants::asymptotics_table(pmin, pmax, per_decade);
    t.header = {"p", "D_p_2p_2p", "D_over_p4_pstar", "p2_pstar", "D_times_p_minus_1"};
    for (const auto& r : tab.rows) t.rows.push_back({num(r.p), num(r.d), num(r.d_scaled), num(r.p2_pstar), num(r.d_times_pm1)});
    t.notes.push_back({"slope_16_64", num(tab.slope_top)});
    t.notes.push_back({"scaled_min", num(tab.scaled_min)});
    t.notes.push_back({"scaled_max", num(tab.scaled_max)});
    return t;
  });
  auto* ev = c->add_subcommand("eval", "Constants at one exponent triple with 1/p = 1/p1 + 1/p2.");
  static double p = 2, p1 = 4, p2 = 4;
  ev->add_option("--p", p, "target exponent");
  ev->add_option("--p1", p1, "first exponent");
  ev->add_option("--p2", p2, "second exponent");
  add(ev, [] {
    Table t{{"p", "p1", "p2", "beta_p", "c_bmo_p", "kappa_2_p", "C", "D", "C_prime"}, {}, {}};
    t.rows.push_back({num(p), num(p1), num(p2), num(constants::beta(p)), num(constants::c_bmo(p)),
                      num(constants::kappa(2, p)), num(constants::c_constant(p, p1, p2)),
                      num(constants::d_constant(p, p1, p2)), num(constants::c_prime(p, p1, p2))});
    return t;
  });
}

void setup_extrapolate(CLI::App& root) {
  auto* c = root.add_subcommand(
      "extrapolate",
      "Weak-type endpoint of the second-order divided difference multiplier: for T = M_{f^[2]}(x, y) with x, y "
      "normalized in S_2, records sup over s of (mu_1 + ... + mu_s)/log(1 + s) for random pairs on random labels. "
      "The envelope over trials stays bounded as n grows.");
  static std::string f = "sin";
  static std::vector<int> sizes{64, 128};
  static int trials = 50;
  static double lo = -std::numbers::pi, hi = std::numbers::pi;
  c->add_option("--f", f, "function name");
  c->add_option("--n", sizes, "matrix sizes")->delimiter(',');
  c->add_option("--trials", trials, "random pairs per size");
  c->add_option("--lo", lo, "label range lower end");
  c->add_option("--hi", hi, "label range upper end");
  add(c, [] {
    const auto fn = divdiff::by_name(f);
    std::vector<int> ns = sizes;
    std::sort(ns.begin(), ns.end());
    Table t{{"f", "n", "trials", "envelope", "mean", "min"}, {}, {}};
    for (int n : ns) {
      std::mt19937_64 lab(mix_seed(ctx.seed, static_cast<std::uint64_t>(n)));
      std::uniform_real_distribution<double> u(lo, hi);
      std::vector<double> x(n);
      for (auto& v : x) v = u(lab);
      std::sort(x.begin(), x.end());
      x.erase(std::unique(x.begin(), x.end()), x.end());
      const int m = static_cast<int>(x.size());
      const auto grid = decomp::second_divdiff_grid(fn, schur::PointSet(x));
      std::vector<double> vals(trials);
      parallel_for(trials, ctx.threads > 0 ? ctx.threads : default_threads(), [&](int i) {
        std::mt19937_64 rng(mix_seed(ctx.seed, (static_cast<std::uint64_t>(n) << 32) + static_cast<std::uint64_t>(i) + 1));
        std::normal_distribution<double> g;
        schur::ComplexMatrix a(m, m), b(m, m);
        for (int r = 0; r < m; ++r)
          for (int s = 0; s < m; ++s) {
            a(r, s) = {g(rng), g(rng)};
            b(r, s) = {g(rng), g(rng)};
          }
        a /= a.norm();
        b /= b.norm();
        vals[i] = matrixnum::marcinkiewicz_norm(schur::apply_bilinear(grid, a, b));
      });
      double mean = 0;
      for (double v : vals) mean += v;
      t.rows.push_back({f, num(static_cast<long long>(m)), num(static_cast<long long>(trials)),
                        num(*std::max_element(vals.begin(), vals.end())), num(mean / trials),
                        num(*std::min_element(vals.begin(), vals.end()))});
    }
    return t;
  });
}

nlohmann::json options_json(const CLI::App* app) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto* o : app->get_options()) {
    if (o->get_lnames().empty() || o->get_lnames()[0] == "help" || o->get_lnames()[0] == "config") continue;
    const std::string key = o->get_lnames()[0];
    if (o->count() > 0) {
      const auto& r = o->results();
      j[key] = r.size() == 1 ? nlohmann::json(r[0]) : nlohmann::json(r);
    } else {
      j[key] = o->get_default_str();
    }
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schurlab: numerical experiments on Schur multipliers, divided differences and Schatten class bounds."};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags win");
  const char* env = std::getenv("SCHURLAB_THREADS");
  ctx.threads = env ? std::atoi(env) : 0;
  app.add_option("--seed", ctx.seed, "64-bit seed");
  app.add_option("--threads", ctx.threads, "worker threads (default SCHURLAB_THREADS or hardware)");
  app.add_option("--out", ctx.out, "CSV output path; the manifest goes to <out>.json");
  app.fallthrough();

  setup_divdiff(app);
  setup_decomp(app);
  setup_hms(app);
  setup_symcalc(app);
  setup_schur(app);
  setup_lowerlab(app);
  setup_dyadic(app);
  setup_constants(app);
  setup_extrapolate(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const Table t = cmd.run();
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      nlohmann::json config = options_json(cmd.app);
      for (const auto* p = cmd.app->get_parent(); p && p->get_parent(); p = p->get_parent())
        config[p->get_name()] = options_json(p);
      std::string name = cmd.app->get_name();
      for (const auto* p = cmd.app->get_parent(); p && p->get_parent(); p = p->get_parent()) name = p->get_name() + " " + name;
      if (!t.header.empty() || !ctx.out.empty()) cli::emit(t, ctx, name, config, wall);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::exit_code(e);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    return 0;
  }
  return 2;
}
