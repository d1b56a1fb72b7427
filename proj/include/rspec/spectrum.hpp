#pragma once

#include <optional>
#include <vector>

#include "rspec/exact.hpp"
#include "rspec/resolution.hpp"

namespace rspec {

/// Reference frequency f1 and low-pass cutoff fc (Hz), both exact.
struct DetectorConfig {
  ProjectiveRational f1;
  ProjectiveRational fc;
  std::optional<std::size_t> n_max;  // CF depth the detector can resolve

  DetectorConfig(ProjectiveRational f1, ProjectiveRational fc,
                 std::optional<std::size_t> n_max = std::nullopt);

  ProjectiveRational ratio() const { return f1 / fc; }  // N = f1/fc
  ProjectiveRational kappa() const { return fc / f1; }
};

Integer q_max(const DetectorConfig& cfg);
// floor(N / q); throws std::invalid_argument for q < 1.
Integer a_max(const DetectorConfig& cfg, const Integer& q);

// x matches the minimal CF [a0..an] of p/q and, if it continues, its next
// quotient is at most a_max(q).
bool admissible(const ContinuedFraction& x, const ProjectiveRational& center, const DetectorConfig& cfg);

struct SpectrumZone {
  LockingZone zone;  // boundaries with a = a_max(q)
  Integer a_max;
  // Every quotient of the center is < a_max, i.e. the center is a fixed
  // point of r_{a_max} and its zone is a genuine preimage.
  bool representable;
};

// Throws DomainError("EmptyZone") when q > q_max.
SpectrumZone spectrum_zone(const ProjectiveRational& center, const DetectorConfig& cfg);

struct SpectrumGap {
  ProjectiveRational lo, hi;
  std::size_t depth;  // minimal-CF length of the simplest rational inside
  bool fuzzy;         // depth > n_max
};

struct Spectrum {
  DetectorConfig cfg;
  ProjectiveRational lo, hi;
  std::vector<SpectrumZone> zones;  // sorted by center
  std::vector<SpectrumGap> gaps;    // complement of the zones inside [lo, hi]

  // Zone containing x, if any.
  const SpectrumZone* locate(const ProjectiveRational& x) const;
};

// Representable centers p/q in [lo, hi] with q <= q_max, found by Stern–Brocot
// descent, with the gaps between their zones.
Spectrum build_spectrum(const DetectorConfig& cfg, const ProjectiveRational& lo,
                        const ProjectiveRational& hi, unsigned threads = 1);

// First `depth` quotients: the whole minimal CF for a rational (if shorter).
std::vector<Integer> expansion(const Classifiable& x, std::size_t depth);

struct StabilityRow {
  std::size_t index;
  Integer q;       // q_i
  Integer q_next;  // q_{i+1}
  unsigned tau;    // largest τ with q_i^τ <= q_{i+1}
  ProjectiveRational gamma;  // q_{i+1} / q_i^τ, 1 <= γ < q_i
};

// Rows for consecutive convergent denominators with q_i >= 2.
std::vector<StabilityRow> stability_profile(const Classifiable& x, std::size_t depth);

struct BrjunoResult {
  double value;
  std::vector<double> partial_sums;
  bool converged;
};

// Σ log(q_{i+1}) / q_i over the available convergents. A rational input is a
// finite sum and always converged; otherwise converged means the last term is
// below tol.
BrjunoResult brjuno(const Classifiable& x, std::size_t depth, double tol = 1e-9);

// |p f0 - q f1|
ProjectiveRational beat_frequency(const ProjectiveRational& pq, const ProjectiveRational& f0,
                                  const ProjectiveRational& f1);

struct JumpRow {
  Integer a;
  Integer p, q;  // ν(a) = prefix extended by a
  ProjectiveRational f;
};

std::vector<JumpRow> jump_scan(const ContinuedFraction& prefix, const Integer& a_from,
                               const Integer& a_to, const ProjectiveRational& f0,
                               const ProjectiveRational& f1, unsigned threads = 1);

}  // namespace rspec
