#include <cmath>
#include <numeric>

#include "doctest.h"
#include "rspec/spectrum.hpp"

using namespace rspec;

namespace {

ProjectiveRational R(long long p, long long q) { return {Integer(p), Integer(q)}; }

DetectorConfig ratio_config(long long n, std::optional<std::size_t> n_max = std::nullopt) {
  return DetectorConfig(ProjectiveRational(n), ProjectiveRational(1), n_max);
}

const ProjectiveRational F0 = parse_rational("1000000.07");
const ProjectiveRational F1 = parse_rational("599975");

QuadraticIrrational periodic(std::vector<Integer> pre, std::vector<Integer> period) {
  return make_quadratic_irrational(std::move(pre), std::move(period));
}

}  // namespace

TEST_CASE("detector thresholds") {
  const auto cfg = ratio_config(10);
  CHECK(q_max(cfg) == 10);
  CHECK(a_max(cfg, 3) == 3);
  CHECK(a_max(cfg, 11) == 0);
  CHECK(a_max(ratio_config(2), 1) == 2);
  CHECK(cfg.kappa() == R(1, 10));
  CHECK_THROWS_AS(a_max(cfg, 0), std::invalid_argument);
  CHECK_THROWS_AS(DetectorConfig(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(DetectorConfig(1, 0), std::invalid_argument);
  const DetectorConfig hz(parse_rational("599975"), parse_rational("150.5"));
  CHECK(q_max(hz) == 3986);
}

TEST_CASE("spectrum zones") {
  const auto one = spectrum_zone(1, ratio_config(3));
  CHECK(one.zone.nu_minus == R(3, 4));
  CHECK(one.zone.nu_plus == R(4, 3));
  CHECK(one.a_max == 3);
  CHECK(one.representable);
  const auto half = spectrum_zone(R(1, 2), ratio_config(10));
  CHECK(half.a_max == 5);
  CHECK(half.zone.nu_minus == R(5, 11));
  CHECK(half.zone.nu_plus == R(6, 11));
  CHECK_THROWS_AS(spectrum_zone(R(1, 11), ratio_config(10)), DomainError);
  CHECK_FALSE(spectrum_zone(R(1, 3), ratio_config(10)).representable);
}

TEST_CASE("zone is nonempty exactly up to q_max") {
  for (long long n : {3, 10, 100}) {
    const auto cfg = ratio_config(n);
    for (long long q = 1; q <= 2 * n; ++q) {
      for (long long p = 0; p <= 2 * q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        bool nonempty = false;
        try {
          const auto z = spectrum_zone(R(p, q), cfg).zone;
          nonempty = z.nu_minus < z.nu_plus && z.contains(R(p, q));
        } catch (const DomainError& e) {
          REQUIRE(e.code() == "EmptyZone");
        }
        REQUIRE(nonempty == (q <= n));
      }
    }
  }
}

TEST_CASE("admissibility against zone membership") {
  const auto cfg12 = ratio_config(12);
  CHECK(admissible(ContinuedFraction{0, 1, 3, 2}, R(3, 4), cfg12));
  CHECK(admissible(ContinuedFraction{0, 1, 3, 3, 5}, R(3, 4), cfg12));
  CHECK_FALSE(admissible(ContinuedFraction{0, 1, 3, 4}, R(3, 4), cfg12));
  CHECK(admissible(ContinuedFraction{0, 1, 3}, R(3, 4), cfg12));
  CHECK_FALSE(admissible(ContinuedFraction{0, 2, 3}, R(3, 4), cfg12));

  // For x extending the center's CF, the predicates bound the next quotient
  // from opposite sides: they overlap only at x = p/q or x_{n+1} = a_max.
  const auto cfg = ratio_config(10);
  std::size_t compared = 0;
  for (long long xq = 1; xq <= 300; ++xq) {
    for (long long xp = 0; xp <= 2 * xq; ++xp) {
      if (std::gcd(xp, xq) != 1) continue;
      const auto xcf = cf_from_rational(R(xp, xq));
      for (std::size_t len = 1; len <= xcf.size(); ++len) {
        const auto center = rational_from_cf(truncate(xcf, len));
        if (center.den() > 10) break;
        const auto z = spectrum_zone(center, cfg);
        if (!z.representable || !is_minimal_form(truncate(xcf, len))) continue;
        const bool adm = admissible(xcf, center, cfg);
        const bool in_zone = z.zone.contains(R(xp, xq));
        REQUIRE((adm || in_zone));
        const bool boundary = len == xcf.size() || xcf[len] == z.a_max;
        REQUIRE((adm && in_zone) == boundary);
        ++compared;
      }
    }
  }
  CHECK(compared > 10000);
}

TEST_CASE("spectrum enumeration, ordering and gaps") {
  for (long long n : {3, 5, 10}) {
    const auto cfg = ratio_config(n, 3);
    const Spectrum s = build_spectrum(cfg, 0, 2, 3);
    // enumeration oracle
    std::vector<ProjectiveRational> expected;
    for (long long q = 1; q <= n; ++q)
      for (long long p = 0; p <= 2 * q; ++p)
        if (std::gcd(p, q) == 1 && spectrum_zone(R(p, q), cfg).representable) expected.push_back(R(p, q));
    std::sort(expected.begin(), expected.end());
    std::vector<ProjectiveRational> centers;
    for (const auto& z : s.zones) centers.push_back(z.zone.center);
    REQUIRE(centers == expected);

    ProjectiveRational covered = 0, gap_total = 0;
    for (std::size_t i = 0; i < s.zones.size(); ++i) {
      const auto& z = s.zones[i].zone;
      if (i + 1 < s.zones.size()) REQUIRE(z.nu_plus < s.zones[i + 1].zone.nu_minus);
      covered = covered + (std::min(z.nu_plus, ProjectiveRational(2)) - std::max(z.nu_minus, ProjectiveRational(0)));
    }
    for (const auto& g : s.gaps) {
      REQUIRE(g.lo < g.hi);
      REQUIRE(s.locate(simplest_between(g.lo, g.hi)) == nullptr);
      REQUIRE(g.fuzzy == (g.depth > 3));
      gap_total = gap_total + (g.hi - g.lo);
    }
    CHECK(covered + gap_total == ProjectiveRational(2));
    CHECK(covered < ProjectiveRational(2));
    CHECK_FALSE(s.gaps.empty());
  }
  const Spectrum three = build_spectrum(ratio_config(3), 0, 2);
  REQUIRE(three.zones.size() == 3);
  CHECK(three.zones[0].zone.center == ProjectiveRational(0));
  CHECK(three.zones[0].zone.nu_plus == R(1, 3));
  CHECK(three.zones[1].zone.center == ProjectiveRational(1));
  CHECK(three.zones[2].zone.center == ProjectiveRational(2));
  CHECK(three.locate(R(9, 10))->zone.center == ProjectiveRational(1));
  CHECK(three.locate(R(1, 2)) == nullptr);
}

TEST_CASE("spectrum output does not depend on thread count") {
  const auto cfg = ratio_config(40, 4);
  const Spectrum a = build_spectrum(cfg, R(1, 3), R(7, 2), 1);
  const Spectrum b = build_spectrum(cfg, R(1, 3), R(7, 2), 4);
  REQUIRE(a.zones.size() == b.zones.size());
  for (std::size_t i = 0; i < a.zones.size(); ++i) {
    CHECK(a.zones[i].zone.center == b.zones[i].zone.center);
    CHECK(a.zones[i].zone.nu_minus == b.zones[i].zone.nu_minus);
  }
  CHECK(a.gaps.size() == b.gaps.size());
}

TEST_CASE("stability profile") {
  const auto golden = stability_profile(periodic({}, {Integer(1)}), 30);
  REQUIRE_FALSE(golden.empty());
  CHECK(golden.front().q == 2);
  for (const auto& row : golden) REQUIRE(row.tau == 1);

  const auto jump = stability_profile(ProjectiveRational(rational_from_cf(ContinuedFraction{0, 1, 1, 2, 1596})), 10);
  REQUIRE(jump.size() == 2);
  CHECK(jump[0].q == 2);
  CHECK(jump[1].q == 5);
  CHECK(jump[1].q_next == 7982);
  CHECK(jump[1].tau == 5);
  CHECK(jump[1].gamma == R(7982, 3125));

  // bounded quotients: τ = 1 once q_i > K + 1
  const auto bounded = stability_profile(periodic({Integer(0)}, {Integer(4), Integer(1), Integer(3)}), 40);
  for (const auto& row : bounded)
    if (row.q > 5) REQUIRE(row.tau == 1);

  for (long long q = 2; q <= 400; q += 7) {
    for (long long p = 1; p < 3 * q; p += 5) {
      if (std::gcd(p, q) != 1) continue;
      for (const auto& row : stability_profile(R(p, q), 50)) {
        REQUIRE(row.gamma >= 1);
        REQUIRE(row.gamma < ProjectiveRational(row.q));
        REQUIRE(ProjectiveRational(row.q_next) == row.gamma * ProjectiveRational(pow(row.q, row.tau)));
      }
    }
  }
  CHECK_THROWS_AS(stability_profile(R(1, 2), 1), std::invalid_argument);
}

TEST_CASE("brjuno partial sums") {
  const auto golden = periodic({}, {Integer(1)});
  const auto b40 = brjuno(golden, 40);
  const auto b80 = brjuno(golden, 80);
  CHECK(std::abs(b40.value - b80.value) < 1e-6);
  CHECK(b80.converged);
  for (std::size_t i = 1; i < b80.partial_sums.size(); ++i)
    REQUIRE(b80.partial_sums[i] >= b80.partial_sums[i - 1]);
  // Fibonacci oracle: the first terms are log 1/1, log 2/1, log 3/2, log 5/3
  REQUIRE(b80.partial_sums.size() >= 4);
  CHECK(b80.partial_sums[3] == doctest::Approx(std::log(2.0) + std::log(3.0) / 2 + std::log(5.0) / 3));
  // tail after the i-th term is bounded by a geometric series in 1/φ
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (std::size_t i = 5; i < 30; ++i)
    REQUIRE(b80.value - b80.partial_sums[i] < 10 * (i + 2) * std::pow(phi, -double(i)));

  const auto surd = periodic({}, {Integer(2), Integer(1)});
  CHECK(std::abs(brjuno(surd, 40).value - brjuno(surd, 80).value) < 1e-6);

  const auto rational = brjuno(R(3, 4), 10);
  CHECK(rational.converged);
  CHECK(rational.partial_sums.size() == 2);
  CHECK(rational.value == doctest::Approx(std::log(4.0)));
  CHECK_FALSE(brjuno(periodic({}, {Integer(1)}), 3).converged);
}

TEST_CASE("beat frequencies and the jump scan") {
  CHECK(beat_frequency(R(3, 5), F0, F1) == R(12521, 100));
  CHECK(beat_frequency(1, 7, 7) == ProjectiveRational(0));
  CHECK(beat_frequency(R(4795, 7992), F0, F1) == R(13565, 100));

  const auto rows = jump_scan(ContinuedFraction{0, 1, 1, 2}, 1590, 1605, F0, F1, 4);
  REQUIRE(rows.size() == 16);
  const ProjectiveRational slope = R(12521, 100), offset = parse_rational("199949.93");
  for (const auto& row : rows) {
    REQUIRE(row.p == 3 * row.a + 1);
    REQUIRE(row.q == 5 * row.a + 2);
    REQUIRE(row.f == (slope * ProjectiveRational(row.a) - offset).abs());
  }
  auto at = [&](long long a) { return rows[static_cast<std::size_t>(a - 1590)].f; };
  CHECK(at(1598) == R(13565, 100));
  CHECK(to_decimal_string(at(1599), 2) == "260.86");
  CHECK(to_decimal_string(at(1600), 2) == "386.07");
  CHECK(to_decimal_string(at(1597), 2) == "10.44");
  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.f < y.f; });
  CHECK(best->a == 1597);
  CHECK_THROWS_AS(jump_scan(ContinuedFraction{}, 1, 2, F0, F1), std::invalid_argument);
}

TEST_CASE("beat is smallest at convergents of f1/f0") {
  const auto table = convergents(cf_from_rational(F1 / F0));
  // the 0th convergent is not a best approximation when a1 = 1
  for (const auto& row : table.rows) {
    if (row.index == 0) continue;
    if (row.q > 7982) break;
    const ProjectiveRational best = beat_frequency({row.p, row.q}, F0, F1);
    for (Integer q = 1; q <= row.q; ++q) {
      const Integer p = (ProjectiveRational(q) * F1 / F0 + R(1, 2)).floor();
      if (p == row.p && q == row.q) continue;
      if (gcd(p, q) != 1) continue;
      REQUIRE(best < beat_frequency({p, q}, F0, F1));
    }
  }
}
