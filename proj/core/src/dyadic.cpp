#include "schurlab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "schurlab/error.hpp"
#include "schurlab/runtime.hpp"

namespace schurlab::dyadic {

namespace {

constexpr const char* kModule = "dyadic";

std::int64_t pmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_cancellative_slot(const ShiftSpec& s, int slot) { return slot + 1 != s.j0; }

HaarKind slot_kind(const ShiftSpec& s, int slot) {
  return is_cancellative_slot(s, slot) ? HaarKind::cancellative : HaarKind::average;
}

ComplexMatrix gaussian_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ComplexMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      double re = nd(rng);
      double im = nd(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

// Adds coeff * h_Q to out.
void add_haar(const DyadicSystem& d, StepFunction& out, const Cube& q, HaarKind kind, const ComplexMatrix& coeff) {
  const std::int64_t len = d.length_units(q.scale), start = d.start_unit(q);
  for (std::int64_t rel = 0; rel < len; ++rel) {
    const std::int64_t cell = pmod(start + rel, d.cells());
    out[cell] += haar_value(d, q, kind, cell) * coeff;
  }
}

}  // namespace

DyadicSystem::DyadicSystem(int kmin, int kmax, std::vector<int> omega)
    : kmin_(kmin), kmax_(kmax), omega_(std::move(omega)) {
  if (kmax <= kmin) throw Error(kModule, ErrorCode::InvalidArgument, "need kmin < kmax");
  if (kmax - kmin > 24) throw Error(kModule, ErrorCode::InvalidArgument, "window wider than 2^24 cells");
  if (omega_.empty()) omega_.assign(kmax - kmin, 0);
  if (static_cast<int>(omega_.size()) != kmax - kmin)
    throw Error(kModule, ErrorCode::InvalidArgument, "omega needs kmax - kmin entries");
  for (int w : omega_)
    if (w != 0 && w != 1) throw Error(kModule, ErrorCode::InvalidArgument, "omega entries must be 0 or 1");
  cells_ = std::int64_t{1} << (kmax - kmin);
}

double DyadicSystem::cell_length() const { return std::ldexp(1.0, kmin_); }

double DyadicSystem::measure(const Cube& q) const { return std::ldexp(1.0, q.scale); }

std::int64_t DyadicSystem::length_units(int scale) const {
  if (scale < kmin_ || scale > kmax_) throw Error(kModule, ErrorCode::ScaleMismatch, "scale outside window");
  return std::int64_t{1} << (scale - kmin_);
}

std::int64_t DyadicSystem::offset_units(int scale) const {
  if (scale < kmin_ || scale > kmax_) throw Error(kModule, ErrorCode::ScaleMismatch, "scale outside window");
  std::int64_t off = 0;
  for (int r = kmin_; r < scale; ++r) off += static_cast<std::int64_t>(omega_[r - kmin_]) << (r - kmin_);
  return pmod(off, cells_);
}

std::int64_t DyadicSystem::cube_count(int scale) const { return cells_ / length_units(scale); }

void DyadicSystem::check(const Cube& q) const {
  if (q.scale < kmin_ || q.scale > kmax_) throw Error(kModule, ErrorCode::ScaleMismatch, "cube scale outside window");
  if (q.index < 0 || q.index >= cube_count(q.scale))
    throw Error(kModule, ErrorCode::OutOfWindow, "cube index outside window");
}

std::int64_t DyadicSystem::start_unit(const Cube& q) const {
  check(q);
  return pmod(q.index * length_units(q.scale) + offset_units(q.scale), cells_);
}

std::int64_t DyadicSystem::relative_unit(const Cube& q, std::int64_t cell) const {
  return pmod(cell - start_unit(q), cells_);
}

bool DyadicSystem::contains(const Cube& q, std::int64_t cell) const {
  if (cell < 0 || cell >= cells_) throw Error(kModule, ErrorCode::OutOfWindow, "cell outside window");
  return relative_unit(q, cell) < length_units(q.scale);
}

Cube DyadicSystem::cube_containing(int scale, std::int64_t cell) const {
  const std::int64_t len = length_units(scale);
  return {scale, pmod(cell - offset_units(scale), cells_) / len};
}

Cube DyadicSystem::parent(const Cube& q) const {
  if (q.scale >= kmax_) throw Error(kModule, ErrorCode::ScaleMismatch, "top cube has no parent");
  return cube_containing(q.scale + 1, start_unit(q));
}

std::pair<Cube, Cube> DyadicSystem::children(const Cube& q) const {
  if (q.scale <= kmin_) throw Error(kModule, ErrorCode::ScaleMismatch, "finest cube has no children");
  const std::int64_t start = start_unit(q), half = length_units(q.scale - 1);
  return {cube_containing(q.scale - 1, start), cube_containing(q.scale - 1, pmod(start + half, cells_))};
}

Cube DyadicSystem::descendant(const Cube& q, int depth, std::int64_t idx) const {
  if (depth < 0 || q.scale - depth < kmin_)
    throw Error(kModule, ErrorCode::ScaleMismatch, "descendant below the finest scale");
  if (idx < 0 || idx >= (std::int64_t{1} << depth)) throw Error(kModule, ErrorCode::OutOfWindow, "bad descendant index");
  const std::int64_t start = start_unit(q);
  return cube_containing(q.scale - depth, pmod(start + idx * length_units(q.scale - depth), cells_));
}

std::vector<Cube> DyadicSystem::cubes(int scale) const {
  std::vector<Cube> out;
  for (std::int64_t i = 0; i < cube_count(scale); ++i) out.push_back({scale, i});
  return out;
}

double haar_value(const DyadicSystem& d, const Cube& q, HaarKind kind, std::int64_t cell) {
  if (kind == HaarKind::cancellative && q.scale <= d.kmin())
    throw Error(kModule, ErrorCode::ScaleMismatch, "cancellative Haar function needs a cube above the finest scale");
  if (!d.contains(q, cell)) return 0;
  const double v = 1 / std::sqrt(d.measure(q));
  if (kind == HaarKind::average) return v;
  return d.relative_unit(q, cell) < d.length_units(q.scale) / 2 ? v : -v;
}

StepFunction::StepFunction(const DyadicSystem& sys, int dim)
    : dim_(dim), values_(static_cast<std::size_t>(sys.cells()), ComplexMatrix::Zero(dim, dim)) {
  if (dim < 1) throw Error(kModule, ErrorCode::DimensionMismatch, "matrix size must be positive");
}

StepFunction& StepFunction::operator+=(const StepFunction& o) {
  if (o.values_.size() != values_.size() || o.dim_ != dim_)
    throw Error(kModule, ErrorCode::DimensionMismatch, "step functions differ in shape");
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& o) {
  if (o.values_.size() != values_.size() || o.dim_ != dim_)
    throw Error(kModule, ErrorCode::DimensionMismatch, "step functions differ in shape");
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
  return *this;
}

double StepFunction::max_abs_diff(const StepFunction& o) const {
  if (o.values_.size() != values_.size() || o.dim_ != dim_)
    throw Error(kModule, ErrorCode::DimensionMismatch, "step functions differ in shape");
  double m = 0;
  for (std::size_t c = 0; c < values_.size(); ++c) m = std::max(m, (values_[c] - o.values_[c]).cwiseAbs().maxCoeff());
  return m;
}

StepFunction haar_function(const DyadicSystem& d, const Cube& q, HaarKind kind, const ComplexMatrix& coeff) {
  StepFunction f(d, static_cast<int>(coeff.rows()));
  add_haar(d, f, q, kind, coeff);
  return f;
}

StepFunction random_step_function(const DyadicSystem& d, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StepFunction f(d, dim);
  for (std::int64_t c = 0; c < f.cells(); ++c) f[c] = gaussian_matrix(dim, rng);
  return f;
}

ComplexMatrix haar_coefficient(const DyadicSystem& d, const StepFunction& f, const Cube& q, HaarKind kind) {
  const std::int64_t len = d.length_units(q.scale), start = d.start_unit(q);
  ComplexMatrix acc = ComplexMatrix::Zero(f.dim(), f.dim());
  for (std::int64_t rel = 0; rel < len; ++rel) {
    const std::int64_t cell = pmod(start + rel, d.cells());
    acc += haar_value(d, q, kind, cell) * f[cell];
  }
  return acc * d.cell_length();
}

ComplexMatrix average(const DyadicSystem& d, const StepFunction& f, const Cube& q) {
  return haar_coefficient(d, f, q, HaarKind::average) / std::sqrt(d.measure(q));
}

StepFunction martingale_difference(const DyadicSystem& d, const StepFunction& f, const Cube& q) {
  return haar_function(d, q, HaarKind::cancellative, haar_coefficient(d, f, q, HaarKind::cancellative));
}

Complex trace_pairing(const DyadicSystem& d, const StepFunction& f, const StepFunction& g) {
  if (f.dim() != g.dim() || f.cells() != g.cells())
    throw Error(kModule, ErrorCode::DimensionMismatch, "step functions differ in shape");
  Complex acc = 0;
  for (std::int64_t c = 0; c < f.cells(); ++c) acc += (f[c] * g[c]).trace();
  return acc * d.cell_length();
}

double lp_schatten_norm(const DyadicSystem& d, const StepFunction& f, double p) {
  if (!(p >= 1) || std::isinf(p)) throw Error(kModule, ErrorCode::BadExponent, "p must be in [1, inf)");
  double acc = 0;
  for (std::int64_t c = 0; c < f.cells(); ++c) acc += std::pow(matrixnum::schatten_norm(f[c], p), p);
  return std::pow(acc * d.cell_length(), 1 / p);
}

double coefficient_bound(const DyadicSystem& d, const ShiftSpec& s, const Cube& q) {
  const double mq = d.measure(q);
  double b = 1 / (mq * mq);
  for (int j = 0; j < 3; ++j) b *= std::sqrt(std::ldexp(mq, -s.k[j]));
  return b;
}

void validate(const DyadicSystem& d, const ShiftSpec& s) {
  if (s.j0 < 1 || s.j0 > 3) throw Error(kModule, ErrorCode::InvalidArgument, "j0 must be 1, 2 or 3");
  for (int j = 0; j < 3; ++j)
    if (s.k[j] < 0) throw Error(kModule, ErrorCode::InvalidArgument, "complexity entries must be >= 0");
  for (const auto& t : s.terms) {
    d.check(t.q);
    for (int j = 0; j < 3; ++j) {
      if (t.q.scale - s.k[j] < d.kmin()) throw Error(kModule, ErrorCode::ScaleMismatch, "I_j below the finest scale");
      if (is_cancellative_slot(s, j) && t.q.scale - s.k[j] <= d.kmin())
        throw Error(kModule, ErrorCode::ScaleMismatch, "cancellative I_j must lie above the finest scale");
      if (t.sub[j] < 0 || t.sub[j] >= (std::int64_t{1} << s.k[j]))
        throw Error(kModule, ErrorCode::OutOfWindow, "I_j index outside Q");
    }
  }
  // repeated (Q, I1, I2, I3) tuples add up to one coefficient
  std::map<std::pair<Cube, std::array<std::int64_t, 3>>, Complex> merged;
  for (const auto& t : s.terms) merged[{t.q, t.sub}] += t.alpha;
  for (const auto& [key, alpha] : merged)
    if (std::abs(alpha) > coefficient_bound(d, s, key.first) * (1 + 1e-12))
      throw Error(kModule, ErrorCode::CoefficientBound, "|alpha| exceeds |Q|^-2 prod |I_j|^1/2");
}

ShiftSpec extremal_spec(const DyadicSystem& d, std::array<int, 3> k, int j0, const std::vector<Cube>& cubes) {
  ShiftSpec s;
  s.k = k;
  s.j0 = j0;
  for (const auto& q : cubes) {
    const double b = coefficient_bound(d, s, q);
    for (std::int64_t a = 0; a < (std::int64_t{1} << k[0]); ++a)
      for (std::int64_t bb = 0; bb < (std::int64_t{1} << k[1]); ++bb)
        for (std::int64_t c = 0; c < (std::int64_t{1} << k[2]); ++c) s.terms.push_back({q, {a, bb, c}, b});
  }
  validate(d, s);
  return s;
}

ShiftSpec random_spec(const DyadicSystem& d, std::array<int, 3> k, int j0, int terms, std::uint64_t seed) {
  ShiftSpec s;
  s.k = k;
  s.j0 = j0;
  int min_scale = d.kmin();
  for (int j = 0; j < 3; ++j) min_scale = std::max(min_scale, d.kmin() + k[j] + (j + 1 != j0 ? 1 : 0));
  if (min_scale > d.kmax()) throw Error(kModule, ErrorCode::ScaleMismatch, "complexity too large for the window");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> scale_dist(min_scale, d.kmax());
  std::uniform_real_distribution<double> unit(0, 1);
  std::int64_t available = 0;
  for (int sc = min_scale; sc <= d.kmax(); ++sc) available += d.cube_count(sc);
  available <<= k[0] + k[1] + k[2];
  if (terms > available) throw Error(kModule, ErrorCode::InvalidArgument, "more terms than distinct (Q, I) tuples");
  std::set<std::pair<Cube, std::array<std::int64_t, 3>>> used;
  while (static_cast<int>(s.terms.size()) < terms) {
    ShiftTerm term;
    term.q.scale = scale_dist(rng);
    term.q.index = std::uniform_int_distribution<std::int64_t>(0, d.cube_count(term.q.scale) - 1)(rng);
    for (int j = 0; j < 3; ++j)
      term.sub[j] = std::uniform_int_distribution<std::int64_t>(0, (std::int64_t{1} << k[j]) - 1)(rng);
    const double r = std::sqrt(unit(rng)), phase = 2 * std::numbers::pi * unit(rng);  // uniform in the disk
    term.alpha = std::polar(r * coefficient_bound(d, s, term.q), phase);
    if (used.insert({term.q, term.sub}).second) s.terms.push_back(term);
  }
  validate(d, s);
  return s;
}

ShiftSpec cyclic_renumber(const ShiftSpec& s) {
  ShiftSpec r;
  r.k = {s.k[2], s.k[0], s.k[1]};
  r.j0 = s.j0 % 3 + 1;
  for (const auto& t : s.terms) r.terms.push_back({t.q, {t.sub[2], t.sub[0], t.sub[1]}, t.alpha});
  return r;
}

std::string to_json(const ShiftSpec& s) {
  nlohmann::json j;
  j["k"] = s.k;
  j["j0"] = s.j0;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : s.terms)
    j["terms"].push_back({{"scale", t.q.scale},
                          {"index", t.q.index},
                          {"sub", t.sub},
                          {"re", t.alpha.real()},
                          {"im", t.alpha.imag()}});
  return j.dump();
}

ShiftSpec shift_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ShiftSpec s;
    s.k = j.at("k").get<std::array<int, 3>>();
    s.j0 = j.at("j0").get<int>();
    for (const auto& t : j.at("terms"))
      s.terms.push_back({{t.at("scale").get<int>(), t.at("index").get<std::int64_t>()},
                         t.at("sub").get<std::array<std::int64_t, 3>>(),
                         Complex(t.at("re").get<double>(), t.value("im", 0.0))});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(kModule, ErrorCode::InvalidArgument, std::string("bad shift JSON: ") + e.what());
  }
}

StepFunction shift_apply(const DyadicSystem& d, const ShiftSpec& s, const StepFunction& f, const StepFunction& g) {
  validate(d, s);
  if (f.dim() != g.dim()) throw Error(kModule, ErrorCode::DimensionMismatch, "inputs differ in matrix size");
  StepFunction out(d, f.dim());
  for (const auto& t : s.terms) {
    const Cube i1 = d.descendant(t.q, s.k[0], t.sub[0]);
    const Cube i2 = d.descendant(t.q, s.k[1], t.sub[1]);
    const Cube i3 = d.descendant(t.q, s.k[2], t.sub[2]);
    const ComplexMatrix c =
        t.alpha * haar_coefficient(d, f, i1, slot_kind(s, 0)) * haar_coefficient(d, g, i2, slot_kind(s, 1));
    add_haar(d, out, i3, slot_kind(s, 2), c);
  }
  return out;
}

Complex trilinear_form(const DyadicSystem& d, const ShiftSpec& s, const StepFunction& f1, const StepFunction& f2,
                       const StepFunction& f3) {
  validate(d, s);
  Complex acc = 0;
  for (const auto& t : s.terms) {
    const Cube i1 = d.descendant(t.q, s.k[0], t.sub[0]);
    const Cube i2 = d.descendant(t.q, s.k[1], t.sub[1]);
    const Cube i3 = d.descendant(t.q, s.k[2], t.sub[2]);
    acc += t.alpha * (haar_coefficient(d, f1, i1, slot_kind(s, 0)) * haar_coefficient(d, f2, i2, slot_kind(s, 1)) *
                      haar_coefficient(d, f3, i3, slot_kind(s, 2)))
                         .trace();
  }
  return acc;
}

double carleson_norm(const DyadicSystem& d, const Paraproduct& a) {
  std::map<Cube, double> mass;
  for (const auto& [q, v] : a.coeffs) {
    d.check(q);
    Cube c = q;
    while (true) {
      mass[c] += std::norm(v);
      if (c.scale == d.kmax()) break;
      c = d.parent(c);
    }
  }
  double best = 0;
  for (const auto& [q, m] : mass) best = std::max(best, std::sqrt(m / d.measure(q)));
  return best;
}

StepFunction paraproduct_apply(const DyadicSystem& d, const Paraproduct& a, const StepFunction& f,
                               const StepFunction& g) {
  if (a.j0 < 1 || a.j0 > 3) throw Error(kModule, ErrorCode::InvalidArgument, "j0 must be 1, 2 or 3");
  if (carleson_norm(d, a) > 1 + 1e-12) throw Error(kModule, ErrorCode::CarlesonViolation, "Carleson norm exceeds 1");
  StepFunction out(d, f.dim());
  for (const auto& [q, v] : a.coeffs) {
    // slot j0 carries h_Q; the others 1_Q / |Q| = |Q|^{-1/2} h^0_Q
    auto functional = [&](const StepFunction& u, int slot) -> ComplexMatrix {
      if (slot == a.j0) return haar_coefficient(d, u, q, HaarKind::cancellative);
      return average(d, u, q);
    };
    const ComplexMatrix c = v * functional(f, 1) * functional(g, 2);
    if (a.j0 == 3)
      add_haar(d, out, q, HaarKind::cancellative, c);
    else
      add_haar(d, out, q, HaarKind::average, c / std::sqrt(d.measure(q)));
  }
  return out;
}

BkReport bk_bound_check(const DyadicSystem& d, const ShiftSpec& s, int samples_per_cube, std::uint64_t seed,
                        BkCase which, std::vector<int> levels) {
  validate(d, s);
  if (levels.empty()) {
    levels = {s.k[0], s.k[1], s.k[2]};
    if (which == BkCase::one_average) levels[s.j0 - 1] = 0;
  }
  if (levels.size() != 3) throw Error(kModule, ErrorCode::InvalidArgument, "levels needs three entries");
  for (int j = 0; j < 3; ++j)
    if (levels[j] < 0 || levels[j] > s.k[j]) throw Error(kModule, ErrorCode::InvalidArgument, "need 0 <= l_j <= k_j");
  if (which == BkCase::one_average && levels[s.j0 - 1] != 0)
    throw Error(kModule, ErrorCode::InvalidArgument, "the averaging slot regroups to K (l_j0 = 0)");

  std::map<Cube, std::vector<const ShiftTerm*>> by_cube;
  for (const auto& t : s.terms) by_cube[t.q].push_back(&t);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  BkReport rep;
  for (const auto& [q, terms] : by_cube) {
    const double mk = d.measure(q);
    const double power = which == BkCase::one_average ? 1.5 : 2.0;
    for (int smp = 0; smp < samples_per_cube; ++smp) {
      std::array<double, 3> z{};  // sample positions in units of |K|, in [0, 1)
      for (auto& v : z) v = unit(rng);
      Complex b = 0;
      for (const ShiftTerm* t : terms) {
        Complex term = t->alpha;
        bool hit = true;
        for (int j = 0; j < 3 && hit; ++j) {
          const double mq = std::ldexp(mk, -s.k[j]);
          const double ml = std::ldexp(mk, -levels[j]);
          term *= std::sqrt(mq / ml);
          const bool averaged = which == BkCase::one_average && j + 1 == s.j0;
          if (averaged) continue;
          // L_j: ancestor of I_j at depth l_j below K
          const std::int64_t l_idx = t->sub[j] >> (s.k[j] - levels[j]);
          const double pos = z[j] * std::ldexp(1.0, levels[j]);
          const auto z_idx = static_cast<std::int64_t>(std::floor(pos));
          if (z_idx != l_idx) {
            hit = false;
            break;
          }
          const double sign = (pos - z_idx) < 0.5 ? 1.0 : -1.0;
          term *= sign / std::sqrt(ml);
        }
        if (hit) b += term;
      }
      b *= std::pow(mk, power);
      rep.max_abs = std::max(rep.max_abs, std::abs(b));
      ++rep.samples;
    }
    ++rep.cubes;
  }
  return rep;
}

ProbeResult shift_norm_probe(const DyadicSystem& d, const ShiftSpec& s, int dim, double p1, double p2, double p,
                             int candidates, std::uint64_t seed) {
  validate(d, s);
  ProbeResult r;
  auto consider = [&](const StepFunction& f, const StepFunction& g) {
    const double den = lp_schatten_norm(d, f, p1) * lp_schatten_norm(d, g, p2);
    if (den == 0) return;
    r.ratio = std::max(r.ratio, lp_schatten_norm(d, shift_apply(d, s, f, g), p) / den);
    ++r.candidates;
  };
  // Haar functions aligned with the shift's own cubes
  const ComplexMatrix e = ComplexMatrix::Identity(dim, dim);
  for (std::size_t t = 0; t < s.terms.size() && static_cast<int>(t) < candidates; ++t) {
    const auto& term = s.terms[t];
    consider(haar_function(d, d.descendant(term.q, s.k[0], term.sub[0]), slot_kind(s, 0), e),
             haar_function(d, d.descendant(term.q, s.k[1], term.sub[1]), slot_kind(s, 1), e));
  }
  for (int c = 0; c < candidates; ++c)
    consider(random_step_function(d, dim, schurlab::mix_seed(seed, 2 * c)), random_step_function(d, dim, schurlab::mix_seed(seed, 2 * c + 1)));
  return r;
}

}  // namespace schurlab::dyadic
