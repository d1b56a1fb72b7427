// Acceptance criteria: one PASS/FAIL line each. Tolerances and runtime budgets
// are fixed here; a criterion passes only if its check holds within budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "rspec/io.hpp"
#include "rspec/mixsim.hpp"
#include "rspec/parallel.hpp"
#include "rspec/resolution.hpp"
#include "rspec/spectrum.hpp"
#include "rspec/words.hpp"

using namespace rspec;

namespace {

const unsigned kThreads = std::max(1u, std::thread::hardware_concurrency());

ProjectiveRational R(long long p, long long q) { return {Integer(p), Integer(q)}; }

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_ms;
  std::function<Outcome()> run;
};

// Reduced rationals n/d with d <= max_den and lo <= n/d <= hi, sorted.
std::vector<ProjectiveRational> rational_grid(long long max_den, long long lo, long long hi) {
  std::vector<ProjectiveRational> out;
  for (long long d = 1; d <= max_den; ++d)
    for (long long n = lo * d; n <= hi * d; ++n)
      if (std::gcd(n, d) == 1) out.push_back(R(n, d));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome orbit_regression() {
  const ProjectiveRational x = rational_from_cf(ContinuedFraction{0, 1, 2, 1, 3});
  const ProjectiveRational once = r_a(x, 3);
  const ProjectiveRational twice = r_a(once, 3);
  return {once == R(3, 4) && twice == 1, "r3(" + x.to_string() + ") = " + once.to_string() + ", r3^2 = " +
                                             twice.to_string()};
}

Outcome cf_regression() {
  const ContinuedFraction cf = truncate(cf_from_rational(parse_rational("0.599975/1.00000007")), 7);
  return {cf == ContinuedFraction{0, 1, 1, 2, 1596, 1, 10}, "first 7 quotients " + cf.to_string()};
}

Outcome jump_reproduction() {
  const ProjectiveRational f0 = parse_rational("1000000.07"), f1 = parse_rational("599975");
  const auto rows = jump_scan(ContinuedFraction{0, 1, 1, 2}, 1585, 1610, f0, f1, 1);
  const double targets[] = {135, 261, 386};
  std::optional<std::size_t> start;
  for (std::size_t i = 0; i + 2 < rows.size() && !start; ++i) {
    bool all = true;
    for (int k = 0; k < 3; ++k) all = all && std::abs(rows[i + k].f.to_double() - targets[k]) <= 1.0;
    if (all) start = i;
  }
  std::size_t lowest = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].f < rows[lowest].f) lowest = i;
  // Signed p f0 - q f1 changes sign next to the minimum.
  auto signed_beat = [&](std::size_t i) {
    return ProjectiveRational(rows[i].p) * f0 - ProjectiveRational(rows[i].q) * f1;
  };
  const bool sign_change = lowest > 0 && lowest + 1 < rows.size() &&
                           ((signed_beat(lowest - 1) < 0) != (signed_beat(lowest + 1) < 0));
  const double minimum = rows[lowest].f.to_double();
  const bool near_10_4 = std::abs(minimum - 10.4) <= 0.1;
  std::string detail;
  if (start) {
    const Integer a = rows[*start].a;
    detail = "f = " + to_decimal_string(rows[*start].f, 2) + ", " + to_decimal_string(rows[*start + 1].f, 2) + ", " +
             to_decimal_string(rows[*start + 2].f, 2) + " Hz at a = " + a.str() + ".." + Integer(a + 2).str() +
             "; reference a = 1593..1595, offset " + Integer(a - 1593).str();
  } else {
    detail = "no three consecutive a within 1 Hz of 135/261/386";
  }
  detail += "; minimum " + to_decimal_string(rows[lowest].f, 2) + " Hz at a = " + rows[lowest].a.str() +
            (sign_change ? " between a sign change" : " without a sign change");
  return {start.has_value() && sign_change && near_10_4, detail};
}

struct ZoneSweep {
  std::size_t zones = 0, mismatches = 0;
  std::vector<std::string> symmetric;  // centre@a with equal widths
};

ZoneSweep zone_sweep() {
  const auto grid = rational_grid(200, 0, 4);
  const auto centers = rational_grid(40, 0, 3);
  std::vector<ZoneSweep> per_a(4);
  parallel_for(4, kThreads, [&](std::size_t i) {
    const Integer a = static_cast<long long>(i) + 2;
    std::vector<ProjectiveRational> image(grid.size());
    std::map<ProjectiveRational, std::size_t> preimages;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      image[k] = r_a(grid[k], a);
      ++preimages[image[k]];
    }
    ZoneSweep& s = per_a[i];
    for (const ProjectiveRational& c : centers) {
      if (!in_invariant_set(c, a)) continue;
      ++s.zones;
      const LockingZone z = zone(c, a);
      const auto lo = std::lower_bound(grid.begin(), grid.end(), z.nu_minus);
      const auto hi = std::upper_bound(grid.begin(), grid.end(), z.nu_plus);
      std::size_t inside = 0;
      for (auto it = lo; it != hi; ++it) inside += image[it - grid.begin()] == c;
      const std::size_t range = hi - lo;
      const auto found = preimages.find(c);
      const std::size_t total = found == preimages.end() ? 0 : found->second;
      s.mismatches += (range - inside) + (total - inside);
      if (c - z.nu_minus == z.nu_plus - c) s.symmetric.push_back(c.to_string() + "@a=" + a.str());
    }
  });
  ZoneSweep all;
  for (const ZoneSweep& s : per_a) {
    all.zones += s.zones;
    all.mismatches += s.mismatches;
    all.symmetric.insert(all.symmetric.end(), s.symmetric.begin(), s.symmetric.end());
  }
  return all;
}

const ZoneSweep& cached_sweep() {
  static const ZoneSweep sweep = zone_sweep();
  return sweep;
}

Outcome boundary_equivalence() {
  const ZoneSweep& s = cached_sweep();
  return {s.mismatches == 0, std::to_string(s.zones) + " zones over a = 2..5 against the denominator-200 grid, " +
                                 std::to_string(s.mismatches) + " mismatches"};
}

Outcome asymmetry() {
  const ZoneSweep& s = cached_sweep();
  const LockingZone one = zone(1, 3);
  const bool instance = one.center - one.nu_minus == R(1, 4) && one.nu_plus - one.center == R(1, 3);
  std::string list;
  for (const auto& c : s.symmetric) list += (list.empty() ? "" : " ") + c;
  return {instance && s.symmetric.empty(),
          std::string("worked instance 1@a=3 widths 1/4, 1/3 ") + (instance ? "hold" : "differ") + "; " +
              std::to_string(s.symmetric.size()) + " of " + std::to_string(s.zones) +
              " zones symmetric" + (list.empty() ? "" : ": " + list)};
}

Outcome basin_edges() {
  const Basin b = basin(1, 3);
  const bool symbolic = normalize(b.right_edge.surd) == normalize(Surd{1, 3, 2});
  const auto q = b.right_edge.quotients(10);
  bool pattern = true;
  for (std::size_t i = 0; i < q.size(); ++i) pattern = pattern && q[i] == (i % 2 == 0 ? 1 : 2);
  std::size_t checked = 0, failures = 0;
  for (long long d = 1; d <= 150; ++d)
    for (long long n = 0; n <= 2 * d; ++n) {
      if (std::gcd(n, d) != 1) continue;
      const ProjectiveRational x = R(n, d);
      if (compare(b.left_edge.surd, x) != std::strong_ordering::less ||
          compare(b.right_edge.surd, x) != std::strong_ordering::greater)
        continue;
      ++checked;
      const auto path = orbit(x, 3);
      failures += path.empty() || path.back() != 1;
    }
  return {symbolic && pattern && failures == 0,
          "right edge " + b.right_edge.to_string() + (pattern ? ", CF [1,2,1,2,...]" : ", CF mismatch") + "; " +
              std::to_string(checked) + " interior rationals, " + std::to_string(failures) + " orbits not ending at 1"};
}

Outcome word_bijection() {
  const long long max_den = 500;
  std::vector<std::size_t> failures(max_den + 1), counts(max_den + 1);
  parallel_for(max_den, kThreads, [&](std::size_t i) {
    const long long d = static_cast<long long>(i) + 1;
    for (long long n = 0; n <= 10 * d; ++n) {
      if (std::gcd(n, d) != 1) continue;
      ++counts[d];
      const ProjectiveRational x = R(n, d);
      const ContinuedFraction minimal = cf_from_rational(x);
      const ContinuedFraction word_form = to_word_form(minimal);
      const GeneratorWord w = word_from_cf(word_form);
      const ContinuedFraction back = cf_from_word(w);
      failures[d] += back != word_form || to_minimal_form(back) != minimal || rational_from_cf(minimal) != x ||
                     apply_point(word_to_matrix(w), {1, 0}) != point_of(x);
    }
  });
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> runs(1, 12), exponent(1, 30);
  std::size_t bad_det = 0;
  for (int i = 0; i < 10000; ++i) {
    GeneratorWord w;
    Letter letter = rng() % 2 ? Letter::T : Letter::J;
    for (int r = runs(rng); r > 0; --r) {
      w.append(letter, exponent(rng));
      letter = letter == Letter::T ? Letter::J : Letter::T;
    }
    bad_det += word_to_matrix(w).det() != 1;
  }
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  const std::size_t failed = std::accumulate(failures.begin(), failures.end(), std::size_t{0});
  return {failed == 0 && bad_det == 0, std::to_string(total) + " rationals with q <= 500 in [0,10], " +
                                           std::to_string(failed) + " round-trip failures; 10000 random words, " +
                                           std::to_string(bad_det) + " with det != 1"};
}

Outcome spectrum_gate() {
  std::size_t checked = 0, failures = 0;
  for (long long n : {3, 10, 100}) {
    const DetectorConfig cfg(n, 1);
    for (long long q = 1; q <= 2 * n; ++q)
      for (long long p = 0; p <= q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        ++checked;
        const ProjectiveRational c = R(p, q);
        bool nonempty = false;
        try {
          const SpectrumZone z = spectrum_zone(c, cfg);
          nonempty = z.zone.nu_minus < z.zone.nu_plus && z.zone.contains(c);
        } catch (const DomainError& e) {
          if (e.code() != "EmptyZone") throw;
        }
        failures += nonempty != (q <= n);
      }
  }
  return {failures == 0, std::to_string(checked) + " centres for N in {3,10,100}, q in [1,2N], " +
                             std::to_string(failures) + " failures"};
}

Outcome stability_brjuno() {
  std::size_t rows = 0, violations = 0;
  const std::vector<Classifiable> inputs{
      make_quadratic_irrational({}, {1}),        make_quadratic_irrational({1}, {2}),
      make_quadratic_irrational({0}, {2, 1}),    make_quadratic_irrational({2}, {1, 1, 1, 4}),
      make_quadratic_irrational({3}, {7, 15, 1}), parse_rational("0.599975/1.00000007"),
      R(103993, 33102)};
  for (const Classifiable& x : inputs)
    for (const StabilityRow& r : stability_profile(x, 40)) {
      ++rows;
      violations += !(r.gamma >= 1 && r.gamma < ProjectiveRational(r.q));
    }
  const auto golden = stability_profile(make_quadratic_irrational({}, {1}), 40);
  const bool golden_tau = !golden.empty() &&
                          std::all_of(golden.begin(), golden.end(), [](const StabilityRow& r) { return r.tau == 1; });
  const QuadraticIrrational x = make_quadratic_irrational({}, {2, 1});
  const double at40 = brjuno(x, 40).value, at80 = brjuno(x, 80).value;
  const double gap = std::abs(at40 - at80);
  return {violations == 0 && golden_tau && gap <= 1e-6,
          std::to_string(rows) + " rows, " + std::to_string(violations) + " outside 1 <= gamma < q; golden tau = 1 " +
              (golden_tau ? "throughout" : "violated") + "; Brjuno [(2,1)] depth 40 vs 80 differ by " +
              format_double(gap, 12)};
}

Outcome simulator() {
  SweepOptions opt;
  opt.f0_lo = 5;
  opt.f0_hi = 15;
  opt.steps = 201;
  opt.f1 = 10;
  opt.fc = 1;
  opt.model = {MixerKind::Intermodulating, 5, 0.3};
  opt.window = 100;
  opt.threads = kThreads;
  const auto rows = sweep(opt);
  std::size_t in_zone = 0, agree = 0;
  std::string misses;
  for (const SweepRow& r : rows) {
    if (!r.center) continue;
    ++in_zone;
    if (agrees(r, 2 / opt.window)) ++agree;
    else misses += (misses.empty() ? "" : " ") + to_decimal_string(r.f0, 2, true) + "Hz";
  }
  const double share = in_zone ? static_cast<double>(agree) / static_cast<double>(in_zone) : 0;
  return {in_zone > 0 && share >= 0.9, std::to_string(agree) + "/" + std::to_string(in_zone) +
                                           " in-zone grid points agree (" + format_double(100 * share, 1) +
                                           "%)" + (misses.empty() ? "" : "; misses at f0 = " + misses)};
}

Outcome branch_formulas() {
  const FareyTree tree = build_farey_tree(50);
  // [quantity][last quotient == 1]
  std::map<std::string, std::array<std::size_t, 2>> diffs;
  std::array<std::size_t, 2> nodes{};
  std::size_t reciprocal = 0;
  for (const FareyNode& n : tree.nodes) {
    if (n.point.q == 1 && n.point.p <= 1) continue;
    const std::size_t last_one = n.cf.quotients.back() == 1;
    ++nodes[last_one];
    for (const BranchCheck& c : check_branch_formulas(n.point.slope())) {
      diffs[c.quantity][last_one] += c.discrepancy;
      if (c.quantity == "mother_slope" && !c.oracle.is_zero() && c.formula == c.oracle.reciprocal()) ++reciprocal;
    }
  }
  bool ok = true;
  std::string detail = std::to_string(nodes[0]) + " nodes with last quotient > 1 (discrepancies:";
  for (const auto& [name, d] : diffs) {
    ok = ok && d[0] == 0;
    detail += " " + name + " " + std::to_string(d[0]);
  }
  detail += "); " + std::to_string(nodes[1]) + " with last quotient = 1 (tracked:";
  for (const auto& [name, d] : diffs) detail += " " + name + " " + std::to_string(d[1]);
  detail += "); mother_slope formula equals 1/oracle on " + std::to_string(reciprocal) + " nodes";
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "orbit regression", 1, orbit_regression},
      {2, "CF regression", 1, cf_regression},
      {3, "jump frequencies", 10, jump_reproduction},
      {4, "boundary formulas vs r_a preimages", 60000, boundary_equivalence},
      {5, "zone asymmetry", 60000, asymmetry},
      {6, "basin edges of 1 at a = 3", 30000, basin_edges},
      {7, "word calculus bijection", 30000, word_bijection},
      {8, "spectrum gate q <= floor(f1/fc)", 60000, spectrum_gate},
      {9, "stability and Brjuno", 1000, stability_brjuno},
      {10, "simulator cross-check", 120000, simulator},
      {11, "mother/daughter formulas", 60000, branch_formulas},
  };
  int passed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = ms < c.budget_ms;
    const bool ok = o.ok && in_budget;
    passed += ok;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
              << format_double(ms, 2) << " ms, budget " << format_double(c.budget_ms, 0) << " ms"
              << (in_budget ? "" : ", over budget") << ")" << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed" << std::endl;
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
