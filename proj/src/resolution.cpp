#include "rspec/resolution.hpp"

#include <queue>

#include "rspec/parallel.hpp"

namespace rspec {

namespace {

void require_invariant(const ContinuedFraction& cf, const ProjectiveRational& x, const Integer& a) {
  if (!in_invariant_set(cf, a))
    throw DomainError("NotInvariant", x.to_string() + " has a partial quotient >= " + a.str() +
                                          " (" + cf.to_string() + ")");
}

ContinuedFraction minimal_cf(const ProjectiveRational& x) {
  if (x.is_infinite() || x < 0)
    throw std::invalid_argument("expected a finite non-negative value, got " + x.to_string());
  return cf_from_rational(x);
}

std::vector<Integer> primitive_period(const std::vector<Integer>& period) {
  const std::size_t n = period.size();
  for (std::size_t len = 1; len <= n; ++len) {
    if (n % len != 0) continue;
    bool repeats = true;
    for (std::size_t i = len; i < n && repeats; ++i) repeats = period[i] == period[i - len];
    if (repeats) return {period.begin(), period.begin() + static_cast<std::ptrdiff_t>(len)};
  }
  return period;
}

bool equal_up_to_rotation(const std::vector<Integer>& x, const std::vector<Integer>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t shift = 0; shift < x.size(); ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < x.size() && same; ++i) same = x[(i + shift) % x.size()] == y[i];
    if (same) return true;
  }
  return false;
}

}  // namespace

void check_resolution(const Integer& a) {
  if (a < 2) throw std::invalid_argument("resolution bound a must be at least 2, got " + a.str());
}

TruncatedWord truncate_word(const GeneratorWord& w, const Integer& a) {
  check_resolution(a);
  GeneratorWord prefix;
  for (const Run& r : w.runs()) {
    if (r.exponent >= a) return {prefix, r.letter == Letter::T ? Terminal::Infinity : Terminal::Zero};
    prefix.append(r.letter, r.exponent);
  }
  return {prefix, Terminal::None};
}

ProjectiveRational evaluate(const TruncatedWord& t) {
  const LatticePoint base = t.terminal == Terminal::Infinity ? LatticePoint{0, 1} : LatticePoint{1, 0};
  return apply_point(word_to_matrix(t.prefix), base).slope();
}

ProjectiveRational r_a(const ProjectiveRational& x, const Integer& a) {
  check_resolution(a);
  if (x.is_infinite()) return x;
  const ContinuedFraction cf = minimal_cf(x);
  for (std::size_t i = 0; i < cf.size(); ++i) {
    if (cf[i] >= a) {
      if (i == 0) return ProjectiveRational::infinity();
      return rational_from_cf(std::span<const Integer>(cf.quotients.data(), i));
    }
  }
  return x;
}

std::vector<ProjectiveRational> orbit(const ProjectiveRational& x, const Integer& a,
                                      std::size_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  std::vector<ProjectiveRational> out;
  ProjectiveRational y = x;
  while (out.size() < max_steps) {
    ProjectiveRational z = r_a(y, a);
    out.push_back(z);
    if (z == y || r_a(z, a) == z) break;
    y = std::move(z);
  }
  return out;
}

bool in_invariant_set(const ContinuedFraction& cf, const Integer& a) {
  check_resolution(a);
  const ContinuedFraction minimal = to_minimal_form(cf);
  return std::all_of(minimal.quotients.begin(), minimal.quotients.end(),
                     [&](const Integer& q) { return q < a; });
}

bool in_invariant_set(const ProjectiveRational& x, const Integer& a) {
  check_resolution(a);
  if (x.is_infinite() || x < 0) return false;
  return in_invariant_set(cf_from_rational(x), a);
}

bool in_invariant_set(const QuadraticIrrational& x, const Integer& a) {
  check_resolution(a);
  auto below = [&](const Integer& q) { return q < a; };
  return std::all_of(x.preperiod.begin(), x.preperiod.end(), below) &&
         std::all_of(x.period.begin(), x.period.end(), below);
}

LockingZone zone(const ProjectiveRational& center, const Integer& a) {
  check_resolution(a);
  require_invariant(minimal_cf(center), center, a);
  return boundary_zone(center, a);
}

LockingZone boundary_zone(const ProjectiveRational& center, const Integer& a) {
  if (a < 1) throw std::invalid_argument("quotient bound must be positive, got " + a.str());
  const ContinuedFraction c = minimal_cf(center);
  if (center.is_zero()) return {center, 0, ProjectiveRational(Integer(1), a), a};

  std::vector<Integer> s = c.quotients;
  s.push_back(a);
  std::vector<Integer> t = c.quotients;
  t.back() -= 1;
  t.push_back(1);
  t.push_back(a);
  ProjectiveRational vs = rational_from_cf(s), vt = rational_from_cf(t);
  const bool even = (c.size() - 1) % 2 == 0;
  if (even) return {center, std::move(vt), std::move(vs), a};
  return {center, std::move(vs), std::move(vt), a};
}

ProjectiveRational nu_plus(const ProjectiveRational& center, const Integer& a) {
  return zone(center, a).nu_plus;
}

ProjectiveRational nu_minus(const ProjectiveRational& center, const Integer& a) {
  return zone(center, a).nu_minus;
}

bool functional_check(const ProjectiveRational& x, const Integer& a) {
  if (x.is_zero()) throw DomainError("NotInvariant", "1/0 is outside the invariant set");
  const LockingZone z = zone(x, a);
  const LockingZone shifted = zone(x + 1, a);
  const LockingZone inverted = zone(x.reciprocal(), a);
  return shifted.nu_plus == z.nu_plus + 1 && shifted.nu_minus == z.nu_minus + 1 &&
         inverted.nu_plus == z.nu_minus.reciprocal() && inverted.nu_minus == z.nu_plus.reciprocal();
}

std::vector<ProjectiveRational> mediant_grid(const ProjectiveRational& lo,
                                             const ProjectiveRational& hi, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("samples must be at least 2");
  if (lo.is_infinite() || hi.is_infinite() || lo < 0 || !(lo < hi))
    throw std::invalid_argument("expected finite 0 <= lo < hi");
  struct Gap {
    ProjectiveRational lo, hi, width;
  };
  // widest first; leftmost among equal widths
  auto after = [](const Gap& x, const Gap& y) {
    if (x.width != y.width) return x.width < y.width;
    return y.lo < x.lo;
  };
  std::priority_queue<Gap, std::vector<Gap>, decltype(after)> gaps(after);
  gaps.push({lo, hi, hi - lo});
  std::vector<ProjectiveRational> points{lo, hi};
  while (points.size() < samples) {
    Gap g = gaps.top();
    gaps.pop();
    ProjectiveRational mid = simplest_between(g.lo, g.hi);
    gaps.push({g.lo, mid, mid - g.lo});
    gaps.push({mid, g.hi, g.hi - mid});
    points.push_back(std::move(mid));
  }
  std::sort(points.begin(), points.end());
  return points;
}

std::vector<ErrorSample> error_profile(const ProjectiveRational& lo, const ProjectiveRational& hi,
                                       const Integer& a, std::size_t samples, unsigned threads) {
  check_resolution(a);
  const std::vector<ProjectiveRational> grid = mediant_grid(lo, hi, samples);
  std::vector<ErrorSample> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const ProjectiveRational image = r_a(grid[i], a);
    out[i] = {grid[i], image.is_infinite() ? image : (grid[i] - image).abs()};
  });
  return out;
}

Basin basin(const ProjectiveRational& center, const Integer& a) {
  check_resolution(a);
  const ContinuedFraction c = minimal_cf(center);
  require_invariant(c, center, a);
  if (center.is_zero())
    throw DomainError("ZeroBasin", "the basin of 0 is bounded by the cone edge, not a quadratic irrational");
  const std::vector<Integer> period{a - 1, 1};
  std::vector<Integer> other = c.quotients;
  other.back() -= 1;
  other.push_back(1);
  QuadraticIrrational e1 = make_quadratic_irrational(c.quotients, period);
  QuadraticIrrational e2 = make_quadratic_irrational(other, period);
  if (compare(e1.surd, center) == std::strong_ordering::less) return {center, std::move(e1), std::move(e2)};
  return {center, std::move(e2), std::move(e1)};
}

std::string to_string(ZoneTag tag) {
  switch (tag) {
    case ZoneTag::AttractiveRational: return "AttractiveRational";
    case ZoneTag::TransientRational: return "TransientRational";
    case ZoneTag::BlockingIrrational: return "BlockingIrrational";
    case ZoneTag::TransientIrrational: return "TransientIrrational";
    case ZoneTag::MixedIrrational: return "MixedIrrational";
    case ZoneTag::Fuzzy: return "Fuzzy";
  }
  return "?";
}

ZoneClass classify(const Classifiable& x, const Integer& a, std::size_t depth) {
  check_resolution(a);
  if (const auto* r = std::get_if<ProjectiveRational>(&x)) {
    if (r->is_infinite()) return {ZoneTag::AttractiveRational, {*r}, {}, 0};
    const ContinuedFraction cf = minimal_cf(*r);
    if (cf.size() > depth) return {ZoneTag::Fuzzy, {}, {}, depth};
    std::vector<ProjectiveRational> path = orbit(*r, a);
    const ZoneTag tag = path.front() == *r ? ZoneTag::AttractiveRational : ZoneTag::TransientRational;
    return {tag, std::move(path), {}, cf.size()};
  }

  const auto& qi = std::get<QuadraticIrrational>(x);
  const std::size_t needed = qi.preperiod.size() + qi.period.size();
  if (needed > depth) return {ZoneTag::Fuzzy, {}, {}, depth};
  if (!in_invariant_set(qi, a)) {
    const std::vector<Integer> q = qi.quotients(needed);
    std::size_t i = 0;
    while (q[i] < a) ++i;
    ProjectiveRational image = i == 0 ? ProjectiveRational::infinity()
                                      : rational_from_cf(std::span<const Integer>(q.data(), i));
    std::vector<ProjectiveRational> path{image};
    if (r_a(image, a) != image) {
      const auto rest = orbit(image, a);
      path.insert(path.end(), rest.begin(), rest.end());
    }
    return {ZoneTag::TransientRational, std::move(path), {}, i + 1};
  }

  std::vector<Integer> period = primitive_period(qi.period);
  const std::vector<Integer> transit = primitive_period({a - 1, 1});
  ZoneTag tag;
  if (equal_up_to_rotation(period, transit)) {
    tag = ZoneTag::TransientIrrational;
  } else {
    bool has_transit_pair = false;
    for (std::size_t i = 0; i < period.size(); ++i)
      has_transit_pair |= period[i] == a - 1 && period[(i + 1) % period.size()] == 1;
    tag = has_transit_pair ? ZoneTag::MixedIrrational : ZoneTag::BlockingIrrational;
  }
  return {tag, {}, std::move(period), needed};
}

ResolutionTree resolution_tree(const Integer& a, const Integer& q_limit, const Integer& value_limit) {
  check_resolution(a);
  const FareyTree farey = build_farey_tree(q_limit, value_limit);
  ResolutionTree tree{a, {}, {}};
  std::vector<std::optional<std::size_t>> kept(farey.nodes.size());
  for (std::size_t i = 0; i < farey.nodes.size(); ++i) {
    const FareyNode& n = farey.nodes[i];
    const ProjectiveRational x = n.point.slope();
    if (!in_invariant_set(x, a)) continue;
    std::optional<std::size_t> parent;
    for (auto up = n.parent; up && !parent; up = farey.nodes[*up].parent) parent = kept[*up];
    kept[i] = tree.nodes.size();
    if (parent) tree.edges.emplace_back(*parent, tree.nodes.size());
    tree.nodes.push_back({n, zone(x, a), parent});
  }
  return tree;
}

}  // namespace rspec
