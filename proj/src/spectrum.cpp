#include "rspec/spectrum.hpp"

#include <cmath>

#include "rspec/parallel.hpp"

namespace rspec {

DetectorConfig::DetectorConfig(ProjectiveRational f1_, ProjectiveRational fc_,
                               std::optional<std::size_t> n_max_)
    : f1(std::move(f1_)), fc(std::move(fc_)), n_max(n_max_) {
  if (f1.is_infinite() || fc.is_infinite() || !(fc > 0) || !(fc < f1))
    throw std::invalid_argument("detector needs 0 < fc < f1, got f1=" + f1.to_string() +
                                " fc=" + fc.to_string());
}

Integer q_max(const DetectorConfig& cfg) { return cfg.ratio().floor(); }

Integer a_max(const DetectorConfig& cfg, const Integer& q) {
  if (q < 1) throw std::invalid_argument("denominator must be positive");
  return (cfg.ratio() / ProjectiveRational(q)).floor();
}

bool admissible(const ContinuedFraction& x, const ProjectiveRational& center, const DetectorConfig& cfg) {
  const ContinuedFraction c = cf_from_rational(center);
  if (x.size() < c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (x[i] != c[i]) return false;
  return x.size() == c.size() || x[c.size()] <= a_max(cfg, center.den());
}

SpectrumZone spectrum_zone(const ProjectiveRational& center, const DetectorConfig& cfg) {
  if (center.is_infinite() || center < 0)
    throw std::invalid_argument("zone center must be finite and non-negative");
  const Integer& q = center.den();
  const Integer qm = q_max(cfg);
  if (q > qm)
    throw DomainError("EmptyZone", "denominator " + q.str() + " exceeds q_max = " + qm.str() +
                                       ": S(" + center.to_string() + ") is empty");
  const Integer a = a_max(cfg, q);
  const ContinuedFraction c = cf_from_rational(center);
  const bool representable = std::all_of(c.quotients.begin(), c.quotients.end(),
                                         [&](const Integer& x) { return x < a; });
  return {boundary_zone(center, a), a, representable};
}

const SpectrumZone* Spectrum::locate(const ProjectiveRational& x) const {
  for (const SpectrumZone& z : zones)
    if (z.zone.contains(x)) return &z;
  return nullptr;
}

namespace {

// Stern–Brocot descent below (l, r) collecting mediants in [lo, hi] with
// denominator <= limit.
void descend(const Integer& limit, const ProjectiveRational& lo, const ProjectiveRational& hi,
             ProjectiveRational l, ProjectiveRational r, std::vector<ProjectiveRational>& out) {
  std::vector<std::pair<ProjectiveRational, ProjectiveRational>> stack{{std::move(l), std::move(r)}};
  while (!stack.empty()) {
    auto [left, right] = std::move(stack.back());
    stack.pop_back();
    if (left.den() + right.den() > limit) continue;
    ProjectiveRational m(left.num() + right.num(), left.den() + right.den());
    if (m >= lo) stack.emplace_back(left, m);
    if (m <= hi) stack.emplace_back(m, right);
    if (lo <= m && m <= hi) out.push_back(std::move(m));
  }
}

}  // namespace

Spectrum build_spectrum(const DetectorConfig& cfg, const ProjectiveRational& lo,
                        const ProjectiveRational& hi, unsigned threads) {
  if (lo.is_infinite() || hi.is_infinite() || lo < 0 || !(lo < hi))
    throw std::invalid_argument("spectrum range needs finite 0 <= lo < hi");
  const Integer limit = q_max(cfg);
  std::vector<ProjectiveRational> centers;
  for (Integer k = lo.floor(); ProjectiveRational(k) <= hi; ++k) {
    if (ProjectiveRational(k) >= lo) centers.emplace_back(k);
    descend(limit, lo, hi, ProjectiveRational(k), ProjectiveRational(k + 1), centers);
  }
  std::sort(centers.begin(), centers.end());

  std::vector<std::optional<SpectrumZone>> computed(centers.size());
  parallel_for(centers.size(), threads, [&](std::size_t i) {
    SpectrumZone z = spectrum_zone(centers[i], cfg);
    if (z.representable) computed[i] = std::move(z);
  });

  Spectrum s{cfg, lo, hi, {}, {}};
  for (auto& z : computed)
    if (z) s.zones.push_back(std::move(*z));

  auto add_gap = [&](const ProjectiveRational& a, const ProjectiveRational& b) {
    const std::size_t depth = cf_from_rational(simplest_between(a, b)).size();
    s.gaps.push_back({a, b, depth, cfg.n_max && depth > *cfg.n_max});
  };
  ProjectiveRational cursor = lo;
  for (const SpectrumZone& z : s.zones) {
    const ProjectiveRational left = std::max(z.zone.nu_minus, lo);
    if (cursor < left) add_gap(cursor, left);
    cursor = std::max(cursor, std::min(z.zone.nu_plus, hi));
  }
  if (cursor < hi) add_gap(cursor, hi);
  return s;
}

std::vector<Integer> expansion(const Classifiable& x, std::size_t depth) {
  if (const auto* r = std::get_if<ProjectiveRational>(&x)) {
    std::vector<Integer> q = cf_from_rational(*r).quotients;
    if (q.size() > depth) q.resize(depth);
    return q;
  }
  return std::get<QuadraticIrrational>(x).quotients(depth);
}

namespace {

std::vector<Integer> denominators(const Classifiable& x, std::size_t depth) {
  const ConvergentTable t = convergents(ContinuedFraction(expansion(x, depth)));
  std::vector<Integer> q;
  q.reserve(t.rows.size());
  for (const auto& row : t.rows) q.push_back(row.q);
  return q;
}

}  // namespace

std::vector<StabilityRow> stability_profile(const Classifiable& x, std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("stability profile needs depth >= 2");
  const std::vector<Integer> q = denominators(x, depth);
  std::vector<StabilityRow> rows;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    if (q[i] < 2) continue;
    unsigned tau = 1;
    Integer power = q[i];
    while (power * q[i] <= q[i + 1]) {
      power *= q[i];
      ++tau;
    }
    ProjectiveRational gamma(q[i + 1], power);
    if (gamma < 1 || !(gamma < ProjectiveRational(q[i])))
      throw std::logic_error("stability constraint 1 <= gamma < q violated at row " + std::to_string(i));
    rows.push_back({i, q[i], q[i + 1], tau, std::move(gamma)});
  }
  return rows;
}

BrjunoResult brjuno(const Classifiable& x, std::size_t depth, double tol) {
  if (depth < 1) throw std::invalid_argument("brjuno needs depth >= 1");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const std::vector<Integer> q = denominators(x, depth);
  BrjunoResult out{0.0, {}, false};
  double last_term = 0.0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    last_term = log_integer(q[i + 1]) / q[i].convert_to<double>();
    out.value += last_term;
    out.partial_sums.push_back(out.value);
  }
  const auto* r = std::get_if<ProjectiveRational>(&x);
  const bool complete = r && cf_from_rational(*r).size() <= depth;
  out.converged = complete || (!out.partial_sums.empty() && last_term < tol);
  return out;
}

ProjectiveRational beat_frequency(const ProjectiveRational& pq, const ProjectiveRational& f0,
                                  const ProjectiveRational& f1) {
  if (pq.is_infinite()) throw std::invalid_argument("beat frequency needs a finite p/q");
  return (ProjectiveRational(pq.num()) * f0 - ProjectiveRational(pq.den()) * f1).abs();
}

std::vector<JumpRow> jump_scan(const ContinuedFraction& prefix, const Integer& a_from,
                               const Integer& a_to, const ProjectiveRational& f0,
                               const ProjectiveRational& f1, unsigned threads) {
  if (prefix.empty()) throw std::invalid_argument("jump scan needs a non-empty prefix");
  if (a_from < 1 || a_to < a_from) throw std::invalid_argument("jump scan needs 1 <= a_from <= a_to");
  const std::size_t n = static_cast<std::size_t>(a_to - a_from) + 1;
  std::vector<JumpRow> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const Integer a = a_from + i;
    std::vector<Integer> cf = prefix.quotients;
    cf.push_back(a);
    const ProjectiveRational nu = rational_from_cf(cf);
    rows[i] = {a, nu.num(), nu.den(), beat_frequency(nu, f0, f1)};
  });
  return rows;
}

}  // namespace rspec
