#include "rspec/cli.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>

#include "CLI11.hpp"
#include "rspec/io.hpp"

namespace rspec::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Dot, Text };

Format pick_format(const std::string& requested, std::initializer_list<Format> allowed) {
  if (requested.empty()) return *allowed.begin();
  static const std::map<std::string, Format> names{
      {"json", Format::Json}, {"csv", Format::Csv}, {"dot", Format::Dot}, {"text", Format::Text}};
  const auto it = names.find(requested);
  if (it == names.end() || std::find(allowed.begin(), allowed.end(), it->second) == allowed.end())
    throw UsageError("format '" + requested + "' is not available for this subcommand");
  return it->second;
}

void emit(std::ostream& out, const Json& j, Format f) {
  if (f != Format::Text) {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : j.items())
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

// All flags as raw strings; each subcommand registers the ones it accepts.
struct Options {
  std::string a, pq, x, word, f0, f1, fc, n_max, depth, lo, hi, samples, format, threads, config;
  std::string prefix, a_from, a_to, q_limit, model, order, rolloff, window, sample_rate;
  bool orbit = false;
  bool word_form = false;
};

template <class T>
T parse_number(const std::string& text, const char* flag) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw UsageError(std::string("malformed value for ") + flag + ": '" + text + "'");
  return value;
}

std::size_t parse_count(const std::string& text, const char* flag, std::size_t fallback) {
  return text.empty() ? fallback : parse_number<std::size_t>(text, flag);
}

double parse_real(const std::string& text, const char* flag) {
  try {
    return parse_rational(text).to_double();
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("malformed value for ") + flag + ": '" + text + "'");
  }
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

unsigned thread_count(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("RESOLUTION_SPECTRA_THREADS");
    text = env ? env : "1";
  }
  const auto n = parse_number<unsigned>(text, "--threads");
  if (n == 0) throw UsageError("--threads must be at least 1");
  return n;
}

Integer resolution_of(const std::string& text) {
  const Integer a = parse_integer(need(text, "--a"));
  check_resolution(a);
  return a;
}

ProjectiveRational finite_rational(const std::string& text, const char* flag) {
  const ProjectiveRational x = parse_rational(need(text, flag));
  if (x.is_infinite()) throw std::invalid_argument(std::string(flag) + " must be finite");
  return x;
}

ProjectiveRational nonnegative_rational(const std::string& text, const char* flag) {
  const ProjectiveRational x = finite_rational(text, flag);
  if (x < 0) throw std::invalid_argument(std::string(flag) + " must be non-negative");
  return x;
}

// "p/q", an exact decimal, "[a0,...,an]" or "[pre;(period)]".
Classifiable parse_value(const std::string& text, const char* flag) {
  need(text, flag);
  if (text.find(';') != std::string::npos) return parse_quadratic_irrational(text);
  if (text.find('[') != std::string::npos) return rational_from_cf(parse_cf(text));
  return parse_rational(text);
}

std::string value_string(const Classifiable& x) {
  if (const auto* r = std::get_if<ProjectiveRational>(&x)) return r->to_string();
  return std::get<QuadraticIrrational>(x).to_string();
}

std::string printed_cf(const ContinuedFraction& minimal, bool word_form) {
  return (word_form ? to_word_form(minimal) : minimal).to_string();
}

Json convergent_list(const ContinuedFraction& cf) {
  Json out = Json::array();
  const ConvergentTable t = convergents(cf);
  for (std::size_t i = 0; i < t.rows.size(); ++i) out.push_back(t.value(i).to_string());
  return out;
}

std::string point_string(const LatticePoint& pt) { return pt.p.str() + "/" + pt.q.str(); }

Json branch_json(const Branch& b) {
  return {{"word", b.word.to_string()},
          {"ray", b.ray == Ray::LInf ? "L_inf" : "L_0"},
          {"k", b.k.str()},
          {"origin", point_string(b.origin)},
          {"direction", point_string(b.direction)},
          {"slope", b.slope().to_string()}};
}

// ---------------------------------------------------------------------------

int cmd_cf(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json, Format::Text});
  const Classifiable x = parse_value(o.x, "--x");
  Json j;
  j["x"] = value_string(x);
  if (const auto* qi = std::get_if<QuadraticIrrational>(&x)) {
    const ContinuedFraction cf(qi->quotients(parse_count(o.depth, "--depth", 20)));
    j["cf"] = cf.to_string();
    j["convergents"] = convergent_list(cf);
  } else {
    const auto& r = std::get<ProjectiveRational>(x);
    if (r.is_infinite() || r < 0) throw std::invalid_argument("--x must be a finite non-negative number");
    ContinuedFraction cf = cf_from_rational(r);
    if (!o.depth.empty()) cf = truncate(cf, parse_count(o.depth, "--depth", 0));
    j["decimal"] = to_decimal_string(r, 12);
    j["cf"] = printed_cf(cf, o.word_form);
    j["convergents"] = convergent_list(cf);
  }
  emit(out, j, f);
  return 0;
}

int cmd_word(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json, Format::Text});
  if (o.word.empty() == o.x.empty()) throw UsageError("give exactly one of --x and --word");
  GeneratorWord w;
  ProjectiveRational v;
  if (!o.word.empty()) {
    w = parse_word(o.word);
    v = apply_point(word_to_matrix(w), {1, 0}).slope();
  } else {
    const Classifiable x = parse_value(o.x, "--x");
    if (!std::holds_alternative<ProjectiveRational>(x)) throw std::invalid_argument("--x must be rational");
    v = std::get<ProjectiveRational>(x);
    if (v.is_infinite() || v < 0) throw std::invalid_argument("--x must be a finite non-negative number");
    w = word_from_cf(to_word_form(cf_from_rational(v)));
  }
  const IntMatrix2 m = word_to_matrix(w);
  const LatticePoint pt = point_of(v);
  Json j;
  j["value"] = v.to_string();
  j["point"] = {{"q", pt.q.str()}, {"p", pt.p.str()}};
  j["cf"] = printed_cf(cf_from_rational(v), o.word_form);
  j["word"] = w.to_string();
  j["matrix"] = Json::array({Json::array({m.a.str(), m.b.str()}), Json::array({m.c.str(), m.d.str()})});
  if (pt.q > 1 || pt.p > 1) {
    const NodeBranches nb = find_branches(pt);
    j["mother"] = branch_json(nb.mother);
    j["daughter"] = branch_json(nb.daughter);
    Json checks = Json::array();
    for (const BranchCheck& c : check_branch_formulas(v))
      checks.push_back({{"quantity", c.quantity},
                        {"formula", c.formula.to_string()},
                        {"oracle", c.oracle.to_string()},
                        {"discrepancy", c.discrepancy}});
    j["formula_check"] = checks;
  }
  emit(out, j, f);
  return 0;
}

int cmd_tree(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json, Format::Dot});
  const Integer q_limit = o.q_limit.empty() ? Integer(5) : parse_integer(o.q_limit);
  const Integer value_limit = o.hi.empty() ? Integer(2) : parse_integer(o.hi);
  if (q_limit < 1 || value_limit < 1) throw std::invalid_argument("--q-limit and --hi must be at least 1");
  if (o.a.empty()) {
    const FareyTree t = build_farey_tree(q_limit, value_limit);
    if (f == Format::Dot) out << to_dot(t);
    else emit(out, to_json(t), f);
  } else {
    const ResolutionTree t = resolution_tree(resolution_of(o.a), q_limit, value_limit);
    if (f == Format::Dot) out << to_dot(t);
    else emit(out, to_json(t), f);
  }
  return 0;
}

int cmd_resolve(const Options& o, std::ostream& out) {
  const Integer a = resolution_of(o.a);
  if (!o.lo.empty() || !o.hi.empty()) {
    if (!o.x.empty() || o.orbit) throw UsageError("--lo/--hi (error profile) cannot be combined with --x or --orbit");
    const Format f = pick_format(o.format, {Format::Csv, Format::Json});
    const auto samples = error_profile(nonnegative_rational(o.lo, "--lo"), nonnegative_rational(o.hi, "--hi"), a,
                                       parse_count(o.samples, "--samples", 64), thread_count(o.threads));
    if (f == Format::Csv) {
      write_error_csv(out, samples);
    } else {
      Json rows = Json::array();
      for (const ErrorSample& s : samples) rows.push_back({{"x", s.x.to_string()}, {"error", s.error.to_string()}});
      emit(out, {{"a", a.str()}, {"samples", rows}}, f);
    }
    return 0;
  }
  const Format f = pick_format(o.format, {Format::Json, Format::Text});
  const Classifiable x = parse_value(o.x, "--x");
  Json j;
  j["x"] = value_string(x);
  j["a"] = a.str();
  if (const auto* r = std::get_if<ProjectiveRational>(&x)) {
    if (*r < 0) throw std::invalid_argument("--x must be non-negative");
    j["image"] = r_a(*r, a).to_string();
    j["in_invariant_set"] = in_invariant_set(*r, a);
    if (o.orbit) {
      Json path = Json::array({r->to_string()});
      for (const auto& y : orbit(*r, a)) path.push_back(y.to_string());
      j["orbit"] = path;
    }
  } else {
    j["in_invariant_set"] = in_invariant_set(std::get<QuadraticIrrational>(x), a);
  }
  const ZoneClass cls = classify(x, a, parse_count(o.depth, "--depth", 64));
  j["class"] = to_string(cls.tag);
  if (o.orbit && std::holds_alternative<QuadraticIrrational>(x)) j["classification"] = to_json(cls);
  emit(out, j, f);
  return 0;
}

int cmd_zone(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json, Format::Text});
  const ProjectiveRational center = nonnegative_rational(o.pq, "--pq");
  const bool detector = !o.f1.empty() || !o.fc.empty();
  if (detector == !o.a.empty()) throw UsageError("give either --a or --f1/--fc");
  Json j;
  if (!detector) {
    const LockingZone z = zone(center, resolution_of(o.a));
    j = to_json(z);
    j["width_minus"] = (z.center - z.nu_minus).to_string();
    j["width_plus"] = (z.nu_plus - z.center).to_string();
  } else {
    const DetectorConfig cfg(finite_rational(o.f1, "--f1"), finite_rational(o.fc, "--fc"));
    const SpectrumZone z = spectrum_zone(center, cfg);
    j = to_json(z.zone);
    j.erase("a");
    j["a_max"] = z.a_max.str();
    j["representable"] = z.representable;
  }
  emit(out, j, f);
  return 0;
}

int cmd_basin(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json, Format::Text});
  const Basin b = basin(nonnegative_rational(o.pq, "--pq"), resolution_of(o.a));
  emit(out,
       {{"center", b.center.to_string()},
        {"left_edge", b.left_edge.to_string()},
        {"right_edge", b.right_edge.to_string()}},
       f);
  return 0;
}

DetectorConfig detector_of(const Options& o) {
  std::optional<std::size_t> n_max;
  if (!o.n_max.empty()) n_max = parse_number<std::size_t>(o.n_max, "--n-max");
  return DetectorConfig(finite_rational(o.f1, "--f1"), finite_rational(o.fc, "--fc"), n_max);
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json});
  const ProjectiveRational lo = o.lo.empty() ? ProjectiveRational(0) : nonnegative_rational(o.lo, "--lo");
  const ProjectiveRational hi = o.hi.empty() ? ProjectiveRational(1) : nonnegative_rational(o.hi, "--hi");
  emit(out, to_json(build_spectrum(detector_of(o), lo, hi, thread_count(o.threads))), f);
  return 0;
}

int cmd_jumps(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Csv, Format::Json});
  const auto rows = jump_scan(parse_cf(need(o.prefix, "--prefix")), parse_integer(need(o.a_from, "--a-from")),
                              parse_integer(need(o.a_to, "--a-to")), finite_rational(o.f0, "--f0"),
                              finite_rational(o.f1, "--f1"), thread_count(o.threads));
  if (f == Format::Csv) {
    write_jump_csv(out, rows);
    return 0;
  }
  Json j = Json::array();
  for (const JumpRow& r : rows)
    j.push_back({{"a", r.a.str()}, {"p", r.p.str()}, {"q", r.q.str()}, {"f_hz", to_decimal_string(r.f, 6, true)}});
  emit(out, j, f);
  return 0;
}

int cmd_brjuno(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Json, Format::Text});
  const Classifiable x = parse_value(o.x, "--x");
  const BrjunoResult b = brjuno(x, parse_count(o.depth, "--depth", 40));
  Json sums = Json::array();
  for (double s : b.partial_sums) sums.push_back(format_double(s, 12));
  emit(out, {{"x", value_string(x)}, {"value", format_double(b.value, 12)}, {"converged", b.converged}, {"partial_sums", sums}},
       f);
  return 0;
}

int cmd_stability(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Csv, Format::Json});
  const auto rows = stability_profile(parse_value(o.x, "--x"), parse_count(o.depth, "--depth", 20));
  if (f == Format::Csv) {
    out << "index,q,q_next,tau,gamma\n";
    for (const StabilityRow& r : rows)
      out << r.index << ',' << r.q << ',' << r.q_next << ',' << r.tau << ',' << r.gamma.to_string() << '\n';
    return 0;
  }
  Json j = Json::array();
  for (const StabilityRow& r : rows)
    j.push_back({{"index", r.index}, {"q", r.q.str()}, {"q_next", r.q_next.str()}, {"tau", r.tau},
                 {"gamma", r.gamma.to_string()}});
  emit(out, j, f);
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Format f = pick_format(o.format, {Format::Csv, Format::Json});
  std::map<std::string, std::string> cfg{{"f1", "10"},           {"fc", "1"},
                                         {"f0_lo", "5"},         {"f0_hi", "15"},
                                         {"steps", "201"},       {"model.kind", "intermodulating"},
                                         {"model.order_limit", "5"}, {"model.rolloff", "0.3"},
                                         {"window", "100"},      {"sample_rate", "50"}};
  if (!o.config.empty()) {
    for (const auto& [key, value] : read_config(o.config)) {
      if (!cfg.count(key)) throw UsageError("unknown config key '" + key + "'");
      cfg[key] = value;
    }
  }
  const std::pair<const std::string*, const char*> overrides[] = {
      {&o.f1, "f1"},      {&o.fc, "fc"},          {&o.lo, "f0_lo"},           {&o.hi, "f0_hi"},
      {&o.samples, "steps"}, {&o.model, "model.kind"}, {&o.order, "model.order_limit"},
      {&o.rolloff, "model.rolloff"}, {&o.window, "window"}, {&o.sample_rate, "sample_rate"}};
  for (const auto& [flag, key] : overrides)
    if (!flag->empty()) cfg[key] = *flag;

  SweepOptions opt;
  opt.f1 = finite_rational(cfg["f1"], "f1");
  opt.fc = finite_rational(cfg["fc"], "fc");
  opt.f0_lo = finite_rational(cfg["f0_lo"], "f0_lo");
  opt.f0_hi = finite_rational(cfg["f0_hi"], "f0_hi");
  opt.steps = parse_number<std::size_t>(cfg["steps"], "steps");
  if (cfg["model.kind"] == "ideal") opt.model.kind = MixerKind::Ideal;
  else if (cfg["model.kind"] == "intermodulating") opt.model.kind = MixerKind::Intermodulating;
  else throw UsageError("model.kind must be 'ideal' or 'intermodulating'");
  opt.model.order_limit = parse_number<unsigned>(cfg["model.order_limit"], "model.order_limit");
  opt.model.rolloff = parse_real(cfg["model.rolloff"], "model.rolloff");
  opt.window = parse_real(cfg["window"], "window");
  opt.sample_rate = parse_real(cfg["sample_rate"], "sample_rate");
  opt.threads = thread_count(o.threads);

  const double tolerance = 2 / opt.window;
  const auto rows = sweep(opt);
  if (f == Format::Csv) {
    write_sweep_csv(out, rows, tolerance);
    return 0;
  }
  Json j = Json::array();
  for (const SweepRow& r : rows) {
    Json row{{"f0", r.f0.to_string()}, {"nu", r.nu.to_string()}};
    row["detected_hz"] = r.detected ? Json(format_double(*r.detected)) : Json(nullptr);
    row["center"] = r.center ? Json(r.center->to_string()) : Json(nullptr);
    row["expected_hz"] = r.expected ? Json(r.expected->to_string()) : Json(nullptr);
    row["zone_hit"] = agrees(r, tolerance);
    j.push_back(std::move(row));
  }
  emit(out, j, f);
  return 0;
}

// ---------------------------------------------------------------------------

struct SelfCheck {
  std::string name;
  bool ok;
  std::string detail;
};

SelfCheck check_orbit() {
  const auto path = orbit(rational_from_cf(ContinuedFraction{0, 1, 2, 1, 3}), 3);
  return {"orbit regression", path == std::vector<ProjectiveRational>{{3, 4}, 1}, "r3([0,1,2,1,3]) = 3/4, r3^2 = 1"};
}

SelfCheck check_cf() {
  const ContinuedFraction cf = truncate(cf_from_rational(parse_rational("0.599975/1.00000007")), 7);
  return {"cf regression", cf == ContinuedFraction{0, 1, 1, 2, 1596, 1, 10}, cf.to_string()};
}

SelfCheck check_zones() {
  std::size_t mismatches = 0, zones = 0;
  for (int a = 2; a <= 4; ++a) {
    for (long long q = 1; q <= 10; ++q)
      for (long long p = 0; p <= 2 * q; ++p) {
        const ProjectiveRational c{Integer(p), Integer(q)};
        if (std::gcd(p, q) != 1 || !in_invariant_set(c, a)) continue;
        ++zones;
        const LockingZone z = zone(c, a);
        for (long long d = 1; d <= 60; ++d)
          for (long long n = 0; n <= 3 * d; ++n) {
            if (std::gcd(n, d) != 1) continue;
            const ProjectiveRational x{Integer(n), Integer(d)};
            mismatches += (r_a(x, a) == c) != z.contains(x);
          }
      }
  }
  return {"zone oracle", mismatches == 0,
          std::to_string(zones) + " zones, " + std::to_string(mismatches) + " mismatches"};
}

SelfCheck check_words() {
  std::size_t failures = 0, count = 0;
  for (long long q = 1; q <= 60; ++q)
    for (long long p = 0; p <= 3 * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++count;
      const ProjectiveRational x{Integer(p), Integer(q)};
      const ContinuedFraction cf = to_word_form(cf_from_rational(x));
      const GeneratorWord w = word_from_cf(cf);
      failures += cf_from_word(w) != cf || rational_from_cf(cf) != x || word_to_matrix(w).det() != 1 ||
                  apply_point(word_to_matrix(w), {1, 0}) != point_of(x);
    }
  return {"word bijection", failures == 0, std::to_string(count) + " rationals"};
}

SelfCheck check_gate() {
  std::size_t failures = 0;
  for (int n : {3, 10}) {
    const DetectorConfig cfg(n, 1);
    for (int q = 1; q <= 2 * n; ++q) {
      bool nonempty = true;
      try {
        spectrum_zone(ProjectiveRational(Integer(1), Integer(q)), cfg);
      } catch (const DomainError&) {
        nonempty = false;
      }
      failures += nonempty != (q <= n);
    }
  }
  return {"spectrum gate", failures == 0, "q <= floor(f1/fc)"};
}

SelfCheck check_stability() {
  std::size_t rows = 0;
  bool ok = true;
  for (const char* text : {"[;(1)]", "[1;(2)]", "[0;(2,1)]", "355/113", "0.599975/1.00000007"}) {
    for (const StabilityRow& r : stability_profile(parse_value(text, "--x"), 30)) {
      ++rows;
      ok = ok && r.gamma >= 1 && r.gamma < ProjectiveRational(r.q);
    }
  }
  return {"stability bounds", ok, std::to_string(rows) + " rows with 1 <= gamma < q"};
}

SelfCheck check_functional() {
  std::size_t failures = 0, count = 0;
  for (long long q = 1; q <= 12; ++q)
    for (long long p = 1; p <= 2 * q; ++p) {
      const ProjectiveRational x{Integer(p), Integer(q)};
      if (std::gcd(p, q) != 1 || !in_invariant_set(x, 3) || !in_invariant_set(x.reciprocal(), 3) ||
          !in_invariant_set(x + 1, 3))
        continue;
      ++count;
      failures += !functional_check(x, 3);
    }
  return {"functional equations", failures == 0, std::to_string(count) + " centres at a = 3"};
}

// Formula-versus-oracle discrepancies are tracked, not failures.
std::string branch_report() {
  std::map<std::string, std::array<std::size_t, 2>> diffs;
  std::array<std::size_t, 2> nodes{};
  for (long long q = 1; q <= 50; ++q)
    for (long long p = 0; p <= 2 * q; ++p) {
      if (std::gcd(p, q) != 1 || (q == 1 && p <= 1)) continue;
      const ProjectiveRational x{Integer(p), Integer(q)};
      const std::size_t last_one = to_word_form(cf_from_rational(x)).quotients.back() == 1;
      ++nodes[last_one];
      for (const BranchCheck& c : check_branch_formulas(x)) diffs[c.quantity][last_one] += c.discrepancy;
    }
  std::string out = "branch formulas over " + std::to_string(nodes[0]) + " nodes with last quotient > 1 and " +
                    std::to_string(nodes[1]) + " with last quotient = 1; discrepancies:";
  for (const auto& [name, d] : diffs)
    out += " " + name + " " + std::to_string(d[0]) + "/" + std::to_string(d[1]);
  return out;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  pick_format(o.format, {Format::Text});
  bool all = true;
  for (auto check : {check_orbit, check_cf, check_zones, check_words, check_gate, check_stability, check_functional}) {
    const auto start = std::chrono::steady_clock::now();
    const SelfCheck c = check();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    all = all && c.ok;
    out << (c.ok ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ", " << format_double(ms, 1) << " ms)\n";
  }
  out << "INFO " << branch_report() << '\n';
  return all ? 0 : 1;
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      s = s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
      if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        s = s.substr(1, s.size() - 2);
      return s;
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    out[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Resolution spectra: continued fractions, generator words, locking zones and detector spectra.",
               "rspec"};
  app.require_subcommand(1);
  app.footer(
      "Fractions are exact: \"p/q\", decimals such as 1000000.07, \"[a0,...,an]\" or \"[pre;(period)]\".\n"
      "RESOLUTION_SPECTRA_THREADS is used when --threads is absent.");

  auto add = [&](CLI::App* sc, const std::string& name, std::string& target, const std::string& help) {
    sc->add_option(name, target, help);
  };
  auto fmt = [&](CLI::App* sc, const std::string& choices) {
    add(sc, "--format", o.format, "output format: " + choices);
  };
  auto threads = [&](CLI::App* sc) { add(sc, "--threads", o.threads, "worker threads (default 1)"); };

  auto* cf = app.add_subcommand("cf", "continued fraction and convergents of a number");
  add(cf, "--x", o.x, "number");
  add(cf, "--depth", o.depth, "number of quotients");
  cf->add_flag("--word-form", o.word_form, "print the even-length word form");
  fmt(cf, "json, text");
  cf->footer("Example: rspec cf --x 0.599975/1.00000007 --depth 7");

  auto* word = app.add_subcommand("word", "generator word, matrix and branches of a lattice point");
  add(word, "--x", o.x, "non-negative rational");
  add(word, "--word", o.word, "word such as \"T^2 J^1 T^3\"");
  word->add_flag("--word-form", o.word_form, "print the even-length word form");
  fmt(word, "json, text");
  word->footer("Example: rspec word --x 3/7");

  auto* tree = app.add_subcommand("tree", "Farey tree, or the resolution tree when --a is given");
  add(tree, "--q-limit", o.q_limit, "largest denominator (default 5)");
  add(tree, "--hi", o.hi, "largest value (default 2)");
  add(tree, "--a", o.a, "resolution");
  fmt(tree, "json, dot");
  tree->footer("Example: rspec tree --q-limit 4 --a 3 --format dot");

  auto* resolve = app.add_subcommand("resolve", "r_a image, orbit and class of a number, or an error profile");
  add(resolve, "--x", o.x, "number (rational, CF or periodic CF)");
  add(resolve, "--a", o.a, "resolution (>= 2)");
  add(resolve, "--depth", o.depth, "classification depth (default 64)");
  resolve->add_flag("--orbit", o.orbit, "include the orbit");
  add(resolve, "--lo", o.lo, "error profile lower end");
  add(resolve, "--hi", o.hi, "error profile upper end");
  add(resolve, "--samples", o.samples, "error profile size (default 64)");
  threads(resolve);
  fmt(resolve, "json, text; csv or json for error profiles");
  resolve->footer("Example: rspec resolve --x 3/4 --a 3 --orbit");

  auto* zone_cmd = app.add_subcommand("zone", "locking zone of p/q at resolution a or for a detector");
  add(zone_cmd, "--pq", o.pq, "zone center");
  add(zone_cmd, "--a", o.a, "resolution");
  add(zone_cmd, "--f1", o.f1, "reference frequency (Hz)");
  add(zone_cmd, "--fc", o.fc, "cutoff (Hz)");
  fmt(zone_cmd, "json, text");
  zone_cmd->footer("Example: rspec zone --pq 1/1 --a 3");

  auto* basin_cmd = app.add_subcommand("basin", "quadratic-irrational basin edges of p/q");
  add(basin_cmd, "--pq", o.pq, "center");
  add(basin_cmd, "--a", o.a, "resolution");
  fmt(basin_cmd, "json, text");
  basin_cmd->footer("Example: rspec basin --pq 1 --a 3");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "detector locking spectrum on [lo, hi]");
  add(spectrum_cmd, "--f1", o.f1, "reference frequency (Hz)");
  add(spectrum_cmd, "--fc", o.fc, "cutoff (Hz)");
  add(spectrum_cmd, "--n-max", o.n_max, "resolvable CF depth");
  add(spectrum_cmd, "--lo", o.lo, "lower ratio (default 0)");
  add(spectrum_cmd, "--hi", o.hi, "upper ratio (default 1)");
  threads(spectrum_cmd);
  fmt(spectrum_cmd, "json");
  spectrum_cmd->footer("Example: rspec spectrum --f1 10 --fc 1 --lo 0 --hi 2 --n-max 4");

  auto* jumps = app.add_subcommand("jumps", "beat frequencies along prefix extended by a");
  add(jumps, "--prefix", o.prefix, "CF prefix such as 0,1,1,2");
  add(jumps, "--a-from", o.a_from, "first quotient");
  add(jumps, "--a-to", o.a_to, "last quotient");
  add(jumps, "--f0", o.f0, "f0 (Hz)");
  add(jumps, "--f1", o.f1, "f1 (Hz)");
  threads(jumps);
  fmt(jumps, "csv, json");
  jumps->footer("Example: rspec jumps --prefix 0,1,1,2 --a-from 1590 --a-to 1605 --f0 1000000.07 --f1 599975");

  auto* brjuno_cmd = app.add_subcommand("brjuno", "Brjuno partial sums");
  add(brjuno_cmd, "--x", o.x, "number");
  add(brjuno_cmd, "--depth", o.depth, "quotients used (default 40)");
  fmt(brjuno_cmd, "json, text");
  brjuno_cmd->footer("Example: rspec brjuno --x \"[0;(2,1)]\" --depth 80");

  auto* stability = app.add_subcommand("stability", "(tau, gamma) profile of the convergent denominators");
  add(stability, "--x", o.x, "number");
  add(stability, "--depth", o.depth, "quotients used (default 20)");
  fmt(stability, "csv, json");
  stability->footer("Example: rspec stability --x \"[;(1)]\" --depth 20");

  auto* simulate = app.add_subcommand("simulate", "mixer / low-pass / counter sweep of f0");
  add(simulate, "--config", o.config, "key = value file");
  add(simulate, "--f1", o.f1, "reference frequency (Hz, default 10)");
  add(simulate, "--fc", o.fc, "cutoff (Hz, default 1)");
  add(simulate, "--lo", o.lo, "first f0 (Hz, default 5)");
  add(simulate, "--hi", o.hi, "last f0 (Hz, default 15)");
  add(simulate, "--samples", o.samples, "grid points (default 201)");
  add(simulate, "--model", o.model, "ideal or intermodulating (default)");
  add(simulate, "--order", o.order, "intermodulation order limit (default 5)");
  add(simulate, "--rolloff", o.rolloff, "amplitude factor per order (default 0.3)");
  add(simulate, "--window", o.window, "counting window (s, default 100)");
  add(simulate, "--sample-rate", o.sample_rate, "synthesis rate (Hz, default 50)");
  threads(simulate);
  fmt(simulate, "csv, json");
  simulate->footer("Example: rspec simulate --f1 10 --fc 1 --lo 9 --hi 11 --samples 21");

  auto* selftest = app.add_subcommand("selftest", "cross-module oracle checks");
  fmt(selftest, "text");
  selftest->footer("Example: rspec selftest");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }

  try {
    const std::pair<CLI::App*, int (*)(const Options&, std::ostream&)> commands[] = {
        {cf, cmd_cf},         {word, cmd_word},         {tree, cmd_tree},         {resolve, cmd_resolve},
        {zone_cmd, cmd_zone}, {basin_cmd, cmd_basin},   {spectrum_cmd, cmd_spectrum}, {jumps, cmd_jumps},
        {brjuno_cmd, cmd_brjuno}, {stability, cmd_stability}, {simulate, cmd_simulate}, {selftest, cmd_selftest}};
    for (const auto& [sc, fn] : commands)
      if (sc->parsed()) return fn(o, out);
    throw UsageError("no subcommand");
  } catch (const DomainError& e) {
    err << Json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace rspec::cli
