#include "rspec/exact.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace rspec {

namespace mp = boost::multiprecision;

Integer floor_div(const Integer& n, const Integer& d) {
  if (d == 0) throw std::invalid_argument("floor_div: division by zero");
  Integer q = n / d;
  Integer r = n % d;
  if (r != 0 && ((r < 0) != (d < 0))) --q;
  return q;
}

Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  return mp::sqrt(n);
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer s = isqrt(n);
  return s * s == n;
}

double log_integer(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("log_integer: non-positive argument");
  const unsigned bits = static_cast<unsigned>(mp::msb(n)) + 1;
  if (bits <= 62) return std::log(n.convert_to<double>());
  const unsigned shift = bits - 62;
  Integer head = n >> shift;
  return std::log(head.convert_to<double>()) + shift * std::log(2.0);
}

Integer pow(const Integer& base, unsigned exponent) { return mp::pow(base, exponent); }

// ---------------------------------------------------------------------------

ProjectiveRational::ProjectiveRational(Integer num, Integer den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) {
    if (num_ == 0) throw std::invalid_argument("0/0 is not a projective rational");
    num_ = 1;
    return;
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g = gcd(mp::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

ProjectiveRational ProjectiveRational::reciprocal() const {
  if (is_infinite()) return ProjectiveRational();
  if (is_zero()) return infinity();
  return {den_, num_};
}

ProjectiveRational ProjectiveRational::abs() const {
  return num_ < 0 ? ProjectiveRational(-num_, den_) : *this;
}

Integer ProjectiveRational::floor() const {
  if (is_infinite()) throw DomainError("Infinite", "floor of infinity");
  return floor_div(num_, den_);
}

double ProjectiveRational::to_double() const {
  if (is_infinite()) return HUGE_VAL;
  mp::cpp_rational r(num_, den_);
  return r.convert_to<double>();
}

std::string ProjectiveRational::to_string() const {
  if (is_infinite()) return "inf";
  return num_.str() + "/" + den_.str();
}

namespace {

void require_finite(const ProjectiveRational& x, const ProjectiveRational& y, const char* op) {
  if (x.is_infinite() || y.is_infinite())
    throw DomainError("Infinite", std::string("arithmetic on infinity: ") + op);
}

}  // namespace

ProjectiveRational operator+(const ProjectiveRational& x, const ProjectiveRational& y) {
  require_finite(x, y, "+");
  return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
}

ProjectiveRational operator-(const ProjectiveRational& x, const ProjectiveRational& y) {
  require_finite(x, y, "-");
  return {x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_};
}

ProjectiveRational operator*(const ProjectiveRational& x, const ProjectiveRational& y) {
  require_finite(x, y, "*");
  return {x.num_ * y.num_, x.den_ * y.den_};
}

ProjectiveRational operator/(const ProjectiveRational& x, const ProjectiveRational& y) {
  require_finite(x, y, "/");
  if (y.is_zero()) throw DomainError("DivisionByZero", "division by zero");
  return {x.num_ * y.den_, x.den_ * y.num_};
}

ProjectiveRational ProjectiveRational::operator-() const {
  if (is_infinite()) return *this;
  return {-num_, den_};
}

std::strong_ordering operator<=>(const ProjectiveRational& x, const ProjectiveRational& y) {
  if (x.is_infinite() || y.is_infinite()) {
    if (x.is_infinite() && y.is_infinite()) return std::strong_ordering::equal;
    return x.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  const Integer lhs = x.num_ * y.den_;
  const Integer rhs = y.num_ * x.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ProjectiveRational parse_decimal(std::string_view text) {
  static const std::regex pattern(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::string s(trim(text));
  std::smatch m;
  if (!std::regex_match(s, m, pattern) || (m[2].length() == 0 && m[3].length() == 0))
    throw std::invalid_argument("malformed number: '" + s + "'");
  const std::string digits = m[2].str() + m[3].str();
  Integer num = digits.empty() ? Integer(0) : parse_integer(digits);
  Integer den = pow(Integer(10), static_cast<unsigned>(m[3].length()));
  if (m[4].matched) {
    const long e = std::stol(m[4].str());
    if (std::labs(e) > 10000) throw std::invalid_argument("exponent out of range: '" + s + "'");
    if (e >= 0)
      num *= pow(Integer(10), static_cast<unsigned>(e));
    else
      den *= pow(Integer(10), static_cast<unsigned>(-e));
  }
  if (m[1].str() == "-") num = -num;
  return {num, den};
}

}  // namespace

Integer parse_integer(std::string_view text) {
  static const std::regex pattern(R"(([+-]?)0*(\d+))");
  const std::string s(trim(text));
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw std::invalid_argument("malformed integer: '" + s + "'");
  Integer n(m[2].str());
  return m[1].str() == "-" ? Integer(-n) : n;
}

ProjectiveRational parse_rational(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf" || text == "infinity") return ProjectiveRational::infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const ProjectiveRational num = parse_decimal(text.substr(0, slash));
  const ProjectiveRational den = parse_decimal(text.substr(slash + 1));
  if (den.is_zero()) {
    if (num.is_zero()) throw std::invalid_argument("0/0 is not a number");
    return ProjectiveRational::infinity();
  }
  return num / den;
}

std::string to_decimal_string(const ProjectiveRational& x, unsigned digits, bool trim_zeros) {
  if (x.is_infinite()) return "inf";
  const Integer scale = pow(Integer(10), digits);
  const Integer n = mp::abs(x.num());
  const Integer rounded = (2 * n * scale + x.den()) / (2 * x.den());
  std::string out = (x.num() < 0 && rounded != 0) ? "-" : "";
  out += Integer(rounded / scale).str();
  if (digits > 0) {
    std::string frac = Integer(rounded % scale).str();
    frac.insert(0, digits - frac.size(), '0');
    if (trim_zeros) {
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
    }
    if (!frac.empty()) out += "." + frac;
  }
  return out;
}

// ---------------------------------------------------------------------------

ContinuedFraction::ContinuedFraction(std::initializer_list<long long> q) {
  quotients.reserve(q.size());
  for (long long a : q) quotients.emplace_back(a);
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    if (i) out += ",";
    out += quotients[i].str();
  }
  return out + "]";
}

ContinuedFraction parse_cf(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') text.remove_prefix(1);
  if (!text.empty() && text.back() == ']') text.remove_suffix(1);
  static const std::regex digits(R"(\d+)");
  ContinuedFraction cf;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item(trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (!std::regex_match(item, digits))
      throw std::invalid_argument("malformed continued fraction: '" + std::string(text) + "'");
    cf.quotients.push_back(parse_integer(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cf;
}

namespace {

bool positive_tail(const ContinuedFraction& cf) {
  if (cf.empty() || cf[0] < 0) return false;
  return std::all_of(cf.quotients.begin() + 1, cf.quotients.end(),
                     [](const Integer& a) { return a >= 1; });
}

void require_positive_tail(const ContinuedFraction& cf, const char* where) {
  if (!positive_tail(cf))
    throw std::invalid_argument(std::string(where) + ": expected a0 >= 0 and ai >= 1, got " +
                                cf.to_string());
}

}  // namespace

bool is_minimal_form(const ContinuedFraction& cf) {
  if (!positive_tail(cf)) return false;
  return cf.size() == 1 || cf.quotients.back() >= 2;
}

bool is_word_form(const ContinuedFraction& cf) {
  if (!positive_tail(cf) || cf.size() % 2 == 0) return false;
  return cf.size() == 1 || cf.quotients.back() >= 1;
}

ContinuedFraction cf_from_rational(const ProjectiveRational& x) {
  if (x.is_infinite()) throw DomainError("Infinite", "infinity has no continued fraction");
  if (x.num() < 0) throw DomainError("Negative", "negative value " + x.to_string());
  ContinuedFraction cf;
  Integer p = x.num();
  Integer q = x.den();
  while (q != 0) {
    Integer a = p / q;
    Integer r = p - a * q;
    cf.quotients.push_back(std::move(a));
    p = std::move(q);
    q = std::move(r);
  }
  return cf;
}

ProjectiveRational rational_from_cf(std::span<const Integer> quotients) {
  if (quotients.empty()) throw std::invalid_argument("empty continued fraction");
  // (p, q) = [[a, 1], [1, 0]] (p, q), seeded with ∞ = (1, 0).
  Integer p = 1;
  Integer q = 0;
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
    if (*it < 0) throw std::invalid_argument("negative partial quotient");
    Integer next = *it * p + q;
    q = std::move(p);
    p = std::move(next);
  }
  return {p, q};
}

ProjectiveRational rational_from_cf(const ContinuedFraction& cf) {
  return rational_from_cf(std::span<const Integer>(cf.quotients));
}

ContinuedFraction to_minimal_form(const ContinuedFraction& cf) {
  require_positive_tail(cf, "to_minimal_form");
  ContinuedFraction out = cf;
  if (out.size() >= 2 && out.quotients.back() == 1) {
    out.quotients.pop_back();
    out.quotients.back() += 1;
  }
  return out;
}

ContinuedFraction to_word_form(const ContinuedFraction& cf) {
  ContinuedFraction out = to_minimal_form(cf);
  if (out.size() % 2 == 0) {
    out.quotients.back() -= 1;
    out.quotients.emplace_back(1);
  }
  return out;
}

ContinuedFraction truncate(const ContinuedFraction& cf, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  ContinuedFraction out = cf;
  if (out.size() > depth) out.quotients.resize(depth);
  return out;
}

ContinuedFraction cf_of_decimal(std::string_view decimal, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  return truncate(cf_from_rational(parse_rational(decimal)), depth);
}

ConvergentTable convergents(const ContinuedFraction& cf) {
  require_positive_tail(cf, "convergents");
  ConvergentTable table;
  Integer p_prev2 = 0, p_prev = 1;
  Integer q_prev2 = 1, q_prev = 0;
  for (std::size_t i = 0; i < cf.size(); ++i) {
    Integer p = cf[i] * p_prev + p_prev2;
    Integer q = cf[i] * q_prev + q_prev2;
    table.rows.push_back({i, p, q});
    p_prev2 = std::exchange(p_prev, std::move(p));
    q_prev2 = std::exchange(q_prev, std::move(q));
  }
  return table;
}

ProjectiveRational simplest_between(const ProjectiveRational& lo, const ProjectiveRational& hi) {
  if (lo.num() < 0 || lo >= hi) throw std::invalid_argument("simplest_between: need 0 <= lo < hi");
  // Descend the Stern–Brocot tree through the common CF prefix of lo and hi.
  const Integer base = lo.floor();
  const ProjectiveRational next = ProjectiveRational(base + 1);
  if (next < hi) return next;
  const ProjectiveRational frac_lo = lo - ProjectiveRational(base);
  const ProjectiveRational frac_hi = hi - ProjectiveRational(base);
  const ProjectiveRational inner = simplest_between(frac_hi.reciprocal(), frac_lo.reciprocal());
  return ProjectiveRational(base) + inner.reciprocal();
}

}  // namespace rspec
