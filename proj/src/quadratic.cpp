#include <cmath>
#include <regex>

#include "rspec/exact.hpp"

namespace rspec {

namespace mp = boost::multiprecision;

namespace {

struct Mat {
  Integer a, b, c, d;
};

// Product of [[q, 1], [1, 0]] over the quotients: maps y to [q0, ..., qk, y].
Mat cf_matrix(std::span<const Integer> quotients) {
  Mat m{1, 0, 0, 1};
  for (const Integer& q : quotients) {
    Mat next{m.a * q + m.b, m.a, m.c * q + m.d, m.c};
    m = std::move(next);
  }
  return m;
}

void validate_quotients(std::span<const Integer> pre, std::span<const Integer> period) {
  if (period.empty()) throw std::invalid_argument("period must be non-empty");
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (pre[i] < (i == 0 ? 0 : 1)) throw std::invalid_argument("invalid preperiod quotient");
  }
  for (const Integer& q : period) {
    if (q < 1) throw std::invalid_argument("period quotients must be positive");
  }
}

// Prime factors of n by trial division; a large leftover cofactor is
// returned as-is (only used to strip common factors, so it may be composite).
std::vector<Integer> factor(Integer n) {
  std::vector<Integer> out;
  n = mp::abs(n);
  for (Integer f = 2; f * f <= n && f < 1000000; ++f) {
    while (n % f == 0) {
      out.push_back(f);
      n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Surd normalize(Surd s) {
  if (s.Q == 0) throw std::invalid_argument("surd with zero denominator");
  if (s.D <= 0 || is_square(s.D)) throw DomainError("NotIrrational", "surd radicand must be a positive non-square");
  if ((s.D - s.P * s.P) % s.Q != 0) {
    const Integer m = mp::abs(s.Q);
    s.P *= m;
    s.D *= m * m;
    s.Q *= m;
  }
  const Integer g = gcd(s.P, s.Q);
  for (const Integer& f : factor(g)) {
    if (s.P % f != 0 || s.Q % f != 0 || s.D % (f * f) != 0) continue;
    const Integer p = s.P / f, d = s.D / (f * f), q = s.Q / f;
    if ((d - p * p) % q != 0) continue;
    s = Surd{p, d, q};
  }
  return s;
}

double Surd::to_double() const {
  return (P.convert_to<double>() + std::sqrt(D.convert_to<double>())) / Q.convert_to<double>();
}

std::string Surd::to_string() const {
  return "(" + P.str() + "+sqrt(" + D.str() + "))/" + Q.str();
}

std::strong_ordering compare(const Surd& s, const ProjectiveRational& x) {
  if (x.is_infinite()) return std::strong_ordering::less;
  const Integer& n = x.num();
  const Integer& d = x.den();
  // sign of (dP - nQ + d√D) / (dQ)
  const Integer X = d * s.P - n * s.Q;
  int sign;
  if (X >= 0) {
    sign = 1;
  } else {
    sign = d * d * s.D > X * X ? 1 : -1;
  }
  if (s.Q < 0) sign = -sign;
  return sign > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

bool satisfies_quadratic(const Surd& s, const Integer& A, const Integer& B, const Integer& C) {
  // Q² (A x² + B x + C) = A(P² + D) + BPQ + CQ² + (2AP + BQ)√D
  const bool rational_part = A * (s.P * s.P + s.D) + B * s.P * s.Q + C * s.Q * s.Q == 0;
  const bool surd_part = 2 * A * s.P + B * s.Q == 0;
  return rational_part && surd_part;
}

QuadraticPolynomial minimal_polynomial(const Surd& s) {
  QuadraticPolynomial poly{s.Q * s.Q, -2 * s.P * s.Q, s.P * s.P - s.D};
  const Integer g = gcd(gcd(poly.A, poly.B), poly.C);
  poly.A /= g;
  poly.B /= g;
  poly.C /= g;
  return poly;
}

Surd surd_value(std::span<const Integer> preperiod, std::span<const Integer> period) {
  validate_quotients(preperiod, period);
  // y = [period; y]  <=>  m.c y² + (m.d - m.a) y - m.b = 0
  const Mat m = cf_matrix(period);
  const Integer disc = (m.d - m.a) * (m.d - m.a) + 4 * m.c * m.b;
  if (is_square(disc))
    throw DomainError("DegeneratePeriod", "period has a rational fixed point");
  Surd y = normalize({m.a - m.d, disc, 2 * m.c});
  if (preperiod.empty()) return y;

  // x = (A y + B) / (C y + E), rationalised against the conjugate.
  const Mat t = cf_matrix(preperiod);
  const Integer u = t.a * y.P + t.b * y.Q;
  const Integer v = t.c * y.P + t.d * y.Q;
  const Integer k = (t.a * t.d - t.b * t.c) * y.Q;
  const Integer num = u * v - t.a * t.c * y.D;
  const Integer den = v * v - t.c * t.c * y.D;
  if (k > 0) return normalize({num, k * k * y.D, den});
  return normalize({-num, k * k * y.D, -den});
}

QuadraticIrrational make_quadratic_irrational(std::vector<Integer> preperiod,
                                              std::vector<Integer> period) {
  Surd s = surd_value(preperiod, period);
  return {std::move(preperiod), std::move(period), std::move(s)};
}

std::vector<Integer> QuadraticIrrational::quotients(std::size_t n) const {
  std::vector<Integer> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < preperiod.size() ? preperiod[i]
                                       : period[(i - preperiod.size()) % period.size()]);
  }
  return out;
}

std::string QuadraticIrrational::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < preperiod.size(); ++i) out += (i ? "," : "") + preperiod[i].str();
  out += ";(";
  for (std::size_t i = 0; i < period.size(); ++i) out += (i ? "," : "") + period[i].str();
  return out + ")] = " + surd.to_string();
}

QuadraticIrrational parse_quadratic_irrational(std::string_view text) {
  static const std::regex pattern(R"(\s*\[\s*([\d,\s]*?)\s*;\s*\(([\d,\s]+)\)\s*\](?:\s*=.*)?\s*)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern))
    throw std::invalid_argument("malformed quadratic irrational: '" + s + "'");
  const std::string pre = m[1].str();
  std::vector<Integer> preperiod;
  if (pre.find_first_not_of(" \t") != std::string::npos) preperiod = parse_cf(pre).quotients;
  return make_quadratic_irrational(std::move(preperiod), parse_cf(m[2].str()).quotients);
}

std::vector<Integer> surd_expand(const Surd& s, std::size_t depth) {
  Surd cur = normalize(s);
  if (compare(cur, ProjectiveRational(0)) != std::strong_ordering::greater)
    throw DomainError("NegativeSurd", "surd value must be positive: " + s.to_string());
  const Integer root = isqrt(cur.D);
  std::vector<Integer> out;
  out.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    Integer a = cur.Q > 0 ? floor_div(cur.P + root, cur.Q) : -floor_div(cur.P + root, -cur.Q) - 1;
    const Integer p = a * cur.Q - cur.P;
    const Integer q = (cur.D - p * p) / cur.Q;
    out.push_back(std::move(a));
    cur.P = p;
    cur.Q = q;
  }
  return out;
}

}  // namespace rspec
