#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rspec {

using Integer = boost::multiprecision::cpp_int;

// Raised when an input is well-formed but outside an operation's domain.
// `code` is a short machine-readable tag ("EmptyZone", "NoSignal", ...).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string code, const std::string& what)
      : std::domain_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Floor division for signed integers (rounds toward -inf).
Integer floor_div(const Integer& n, const Integer& d);
Integer gcd(const Integer& a, const Integer& b);
// Largest s with s*s <= n, n >= 0.
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
// Natural logarithm of a positive integer, valid far beyond double range.
double log_integer(const Integer& n);
Integer pow(const Integer& base, unsigned exponent);
// Optional sign followed by decimal digits; leading zeros are decimal, not octal.
Integer parse_integer(std::string_view text);

/// A point of Q ∪ {∞}: an irreducible fraction with non-negative
/// denominator. Infinity is stored as 1/0 and zero as 0/1.
class ProjectiveRational {
 public:
  ProjectiveRational() : num_(0), den_(1) {}
  ProjectiveRational(long long n) : num_(n), den_(1) {}  // NOLINT
  ProjectiveRational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
  // Normalises sign and common factors. (0, 0) is rejected.
  ProjectiveRational(Integer num, Integer den);

  static ProjectiveRational infinity() { return {Integer(1), Integer(0)}; }

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  bool is_infinite() const { return den_ == 0; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  ProjectiveRational reciprocal() const;
  ProjectiveRational abs() const;
  Integer floor() const;
  double to_double() const;
  std::string to_string() const;

  friend ProjectiveRational operator+(const ProjectiveRational& x, const ProjectiveRational& y);
  friend ProjectiveRational operator-(const ProjectiveRational& x, const ProjectiveRational& y);
  friend ProjectiveRational operator*(const ProjectiveRational& x, const ProjectiveRational& y);
  friend ProjectiveRational operator/(const ProjectiveRational& x, const ProjectiveRational& y);
  ProjectiveRational operator-() const;

  friend bool operator==(const ProjectiveRational&, const ProjectiveRational&) = default;
  // ∞ compares above every finite value.
  friend std::strong_ordering operator<=>(const ProjectiveRational& x, const ProjectiveRational& y);

 private:
  Integer num_;
  Integer den_;
};

// Accepts "p/q", "inf", integers and exact decimals ("-1.00000007").
ProjectiveRational parse_rational(std::string_view text);

// Exact decimal rendering with `digits` fractional digits, rounded half away
// from zero; trailing zeros are trimmed when `trim` is set. ∞ renders as "inf".
std::string to_decimal_string(const ProjectiveRational& x, unsigned digits, bool trim = false);

/// Finite sequence of partial quotients [a0, a1, ..., an].
struct ContinuedFraction {
  std::vector<Integer> quotients;

  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<Integer> q) : quotients(std::move(q)) {}
  ContinuedFraction(std::initializer_list<long long> q);

  std::size_t size() const { return quotients.size(); }
  bool empty() const { return quotients.empty(); }
  const Integer& operator[](std::size_t i) const { return quotients[i]; }
  std::string to_string() const;

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

// "[a0,a1,...]" or "a0,a1,..." (brackets optional).
ContinuedFraction parse_cf(std::string_view text);

// a0 >= 0, ai >= 1 for i >= 1, and an >= 2 when n >= 1.
bool is_minimal_form(const ContinuedFraction& cf);
// Same positivity rules with an odd quotient count and an >= 1 (or [0]).
bool is_word_form(const ContinuedFraction& cf);

// Euclidean algorithm. x must be finite and non-negative.
ContinuedFraction cf_from_rational(const ProjectiveRational& x);
// Nested evaluation in P¹; zero quotients are allowed anywhere.
ProjectiveRational rational_from_cf(std::span<const Integer> quotients);
ProjectiveRational rational_from_cf(const ContinuedFraction& cf);

ContinuedFraction to_word_form(const ContinuedFraction& cf);
ContinuedFraction to_minimal_form(const ContinuedFraction& cf);

ContinuedFraction truncate(const ContinuedFraction& cf, std::size_t depth);
// Parses an exact decimal and truncates its expansion at `depth` quotients.
ContinuedFraction cf_of_decimal(std::string_view decimal, std::size_t depth);

struct ConvergentRow {
  std::size_t index;
  Integer p;
  Integer q;
};

struct ConvergentTable {
  std::vector<ConvergentRow> rows;
  ProjectiveRational value(std::size_t i) const { return {rows[i].p, rows[i].q}; }
};

ConvergentTable convergents(const ContinuedFraction& cf);

// The simplest (smallest denominator, then smallest numerator) rational in
// the open interval (lo, hi), 0 <= lo < hi.
ProjectiveRational simplest_between(const ProjectiveRational& lo, const ProjectiveRational& hi);

/// (P + √D) / Q with D > 0 non-square and Q | D − P².
struct Surd {
  Integer P;
  Integer D;
  Integer Q;

  double to_double() const;
  std::string to_string() const;
  friend bool operator==(const Surd&, const Surd&) = default;
};

// Brings (P + √D)/Q into the form with Q | D − P², then strips common
// factors that keep that property.
Surd normalize(Surd s);

std::strong_ordering compare(const Surd& s, const ProjectiveRational& x);

// True iff A x² + B x + C = 0 for x = s, checked on integers.
bool satisfies_quadratic(const Surd& s, const Integer& A, const Integer& B, const Integer& C);

struct QuadraticPolynomial {
  Integer A, B, C;
};
// Primitive integer polynomial with positive leading coefficient vanishing at s.
QuadraticPolynomial minimal_polynomial(const Surd& s);

/// Eventually periodic continued fraction [pre; (period)] with its exact value.
struct QuadraticIrrational {
  std::vector<Integer> preperiod;
  std::vector<Integer> period;
  Surd surd;

  // "[pre;(period)] = (P+sqrt(D))/Q"
  std::string to_string() const;
  // The first n quotients of the infinite expansion.
  std::vector<Integer> quotients(std::size_t n) const;
};

// Solves the period's fixed-point equation and transports the root through
// the preperiod. Throws DomainError("DegeneratePeriod") on a rational root.
Surd surd_value(std::span<const Integer> preperiod, std::span<const Integer> period);
QuadraticIrrational make_quadratic_irrational(std::vector<Integer> preperiod,
                                              std::vector<Integer> period);
// Parses "[a0,...;(p1,...)]", ignoring any " = surd" suffix.
QuadraticIrrational parse_quadratic_irrational(std::string_view text);
// Integral CF algorithm on (P + √D)/Q.
std::vector<Integer> surd_expand(const Surd& s, std::size_t depth);

}  // namespace rspec
