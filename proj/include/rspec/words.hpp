#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rspec/exact.hpp"

namespace rspec {

enum class Letter { T, J };

struct Run {
  Letter letter;
  Integer exponent;
  friend bool operator==(const Run&, const Run&) = default;
};

/// Element of the positive monoid generated by T and J, kept in run-length
/// normal form (adjacent runs alternate, exponents positive).
class GeneratorWord {
 public:
  GeneratorWord() = default;
  explicit GeneratorWord(const std::vector<Run>& runs);

  // Appends letter^exponent, merging with the last run; exponent 0 is a no-op.
  void append(Letter letter, const Integer& exponent = 1);

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  // "T^2 J^1 T^3"; the identity word is "id".
  std::string to_string() const;

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  std::vector<Run> runs_;
};

GeneratorWord parse_word(std::string_view text);

/// Row-major [[a, b], [c, d]].
struct IntMatrix2 {
  Integer a, b, c, d;

  static IntMatrix2 identity() { return {1, 0, 0, 1}; }
  static IntMatrix2 T() { return {1, 0, 1, 1}; }
  static IntMatrix2 J() { return {1, 1, 0, 1}; }
  static IntMatrix2 S() { return {0, 1, 1, 0}; }

  Integer det() const { return a * d - b * c; }
  friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y);
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

/// The point (q, p) standing for the slope p/q.
struct LatticePoint {
  Integer q, p;

  ProjectiveRational slope() const { return {p, q}; }
  bool is_prime() const { return gcd(q, p) == 1; }
  std::string to_string() const { return "(" + q.str() + "," + p.str() + ")"; }
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator<(const LatticePoint& x, const LatticePoint& y) {
    return x.q < y.q || (x.q == y.q && x.p < y.p);
  }
};

LatticePoint point_of(const ProjectiveRational& x);

IntMatrix2 word_to_matrix(const GeneratorWord& w);
// (q, p) ↦ (a q + b p, c q + d p)
LatticePoint apply_point(const IntMatrix2& m, const LatticePoint& pt);
// z ↦ (c + d z) / (a + b z) on Q ∪ {∞}, matching apply_point on slopes.
ProjectiveRational mobius(const IntMatrix2& m, const ProjectiveRational& z);

// The word T^{a0} J^{a1} ... T^{a2n} of the word form of cf.
GeneratorWord word_from_cf(const ContinuedFraction& cf);
// Word form of the slope of w(1,0). A trailing J run fixes (1,0) and is dropped.
ContinuedFraction cf_from_word(const GeneratorWord& w);

/// The image u(L) of a base ray, L∞⁺ = {(1,k)} or L₀⁺ = {(k,1)}, k ≥ 1.
enum class Ray { LInf, L0 };

struct Branch {
  GeneratorWord word;
  Ray ray;
  Integer k;  // position of the queried point on the ray
  LatticePoint origin;     // u(1,1)
  LatticePoint direction;  // u(0,1) on L∞, u(1,0) on L₀
  ProjectiveRational slope() const { return direction.slope(); }
};

struct NodeBranches {
  Branch mother;    // the point is interior (k ≥ 2)
  Branch daughter;  // the point is the origin (k = 1)
};

// Geometric oracle: enumerates the letter-prefixes u of the point's word and
// keeps those with u⁻¹(M) on a base ray. Throws DomainError for (1,1) and (1,0).
NodeBranches find_branches(const LatticePoint& m);

// Closed-form values from the word form [a0, ..., a2n], evaluated with zero
// quotients allowed.
ProjectiveRational mother_origin(const ContinuedFraction& cf);
ProjectiveRational mother_slope(const ContinuedFraction& cf);
ProjectiveRational daughter_slope(const ContinuedFraction& cf);

struct BranchCheck {
  std::string quantity;  // "mother_origin", "mother_slope", "daughter_slope"
  ProjectiveRational formula;
  ProjectiveRational oracle;
  bool discrepancy;
};

std::vector<BranchCheck> check_branch_formulas(const ProjectiveRational& x);

struct FareyNode {
  LatticePoint point;
  GeneratorWord word;
  ContinuedFraction cf;  // word form
  std::optional<std::size_t> parent;
};

struct FareyTree {
  std::vector<FareyNode> nodes;  // sorted by (q, p); nodes[0] is (1,0)
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (parent, child)
  std::optional<std::size_t> find(const LatticePoint& pt) const;
};

// Prime points with 1 ≤ q ≤ q_limit and p/q ≤ value_limit. Each node's parent
// is the previous point on its mother branch (the branch origin for k = 2);
// (1,1) hangs off the root (1,0).
FareyTree build_farey_tree(const Integer& q_limit, const Integer& value_limit = 2);

}  // namespace rspec
