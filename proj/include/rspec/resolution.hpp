#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rspec/exact.hpp"
#include "rspec/words.hpp"

namespace rspec {

// Throws std::invalid_argument unless a >= 2.
void check_resolution(const Integer& a);

enum class Terminal { None, Infinity, Zero };

struct TruncatedWord {
  GeneratorWord prefix;
  Terminal terminal;  // None: the word had no run with exponent >= a
};

// Cuts w before its first run with exponent >= a; an offending T run sends the
// prefix to ∞, an offending J run to 0.
TruncatedWord truncate_word(const GeneratorWord& w, const Integer& a);
ProjectiveRational evaluate(const TruncatedWord& t);

// [a0, ..., a_{i-1}] where a_i is the first quotient >= a of the minimal
// continued fraction; ∞ when i = 0. Fixed points are exactly the rationals
// whose minimal quotients are all < a. r_a(∞) = ∞.
ProjectiveRational r_a(const ProjectiveRational& x, const Integer& a);

// Successive images r_a(x), r_a²(x), ... up to and including the first fixed
// one, or max_steps images.
std::vector<ProjectiveRational> orbit(const ProjectiveRational& x, const Integer& a,
                                      std::size_t max_steps = 1000);

bool in_invariant_set(const ContinuedFraction& cf, const Integer& a);
bool in_invariant_set(const ProjectiveRational& x, const Integer& a);
bool in_invariant_set(const QuadraticIrrational& x, const Integer& a);

struct LockingZone {
  ProjectiveRational center;
  ProjectiveRational nu_minus;
  ProjectiveRational nu_plus;
  Integer a_used;

  bool contains(const ProjectiveRational& x) const { return nu_minus <= x && x <= nu_plus; }
};

// Boundaries [c, a] and [a0, ..., a_n - 1, 1, a] of the minimal form c; the
// zone of 0 is clipped to [0, 1/a]. Throws DomainError("NotInvariant") when the
// center has a quotient >= a.
LockingZone zone(const ProjectiveRational& center, const Integer& a);
// The same boundary formulas without the invariance check; a >= 1.
LockingZone boundary_zone(const ProjectiveRational& center, const Integer& a);
ProjectiveRational nu_plus(const ProjectiveRational& center, const Integer& a);
ProjectiveRational nu_minus(const ProjectiveRational& center, const Integer& a);

// ν(1+x) = 1 + ν(x) for both signs and ν±(1/x) = 1/ν∓(x). Requires x, 1/x and
// 1 + x in the invariant set.
bool functional_check(const ProjectiveRational& x, const Integer& a);

struct ErrorSample {
  ProjectiveRational x;
  ProjectiveRational error;  // |x - r_a(x)|, ∞ when r_a(x) = ∞
};

// Stern–Brocot grid on [lo, hi]: starting from the endpoints, the simplest
// rational of the widest gap (leftmost on ties) is inserted until `samples`
// points exist.
std::vector<ProjectiveRational> mediant_grid(const ProjectiveRational& lo,
                                             const ProjectiveRational& hi, std::size_t samples);
std::vector<ErrorSample> error_profile(const ProjectiveRational& lo, const ProjectiveRational& hi,
                                       const Integer& a, std::size_t samples, unsigned threads = 1);

struct Basin {
  ProjectiveRational center;
  QuadraticIrrational left_edge;
  QuadraticIrrational right_edge;
};

// Edges [c; (a-1, 1)] and [a0, ..., a_n - 1, 1; (a-1, 1)].
Basin basin(const ProjectiveRational& center, const Integer& a);

enum class ZoneTag {
  AttractiveRational,
  TransientRational,
  BlockingIrrational,
  TransientIrrational,
  MixedIrrational,
  Fuzzy
};
std::string to_string(ZoneTag tag);

struct ZoneClass {
  ZoneTag tag;
  // Rationals (and irrationals leaving the invariant set): the r_a orbit.
  std::vector<ProjectiveRational> orbit;
  // Irrationals: the primitive period that decided the tag.
  std::vector<Integer> period;
  std::size_t depth_used;
};

using Classifiable = std::variant<ProjectiveRational, QuadraticIrrational>;

ZoneClass classify(const Classifiable& x, const Integer& a, std::size_t depth);

struct ResolutionNode {
  FareyNode node;
  LockingZone zone;
  std::optional<std::size_t> parent;
};

struct ResolutionTree {
  Integer a;
  std::vector<ResolutionNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// The Farey tree restricted to the invariant set; each surviving node hangs off
// its nearest surviving ancestor.
ResolutionTree resolution_tree(const Integer& a, const Integer& q_limit,
                               const Integer& value_limit = 2);

}  // namespace rspec
