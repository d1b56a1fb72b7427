#pragma once

#include <optional>
#include <vector>

#include "rspec/exact.hpp"
#include "rspec/spectrum.hpp"

namespace rspec {

struct Oscillator {
  ProjectiveRational frequency;  // Hz
  double amplitude = 1.0;
  double phase = 0.0;
};

enum class MixerKind { Ideal, Intermodulating };

struct MixerModel {
  MixerKind kind = MixerKind::Ideal;
  unsigned order_limit = 2;  // products with |p| + |q| <= order_limit
  double rolloff = 0.3;      // amplitude factor per extra combined order
};

struct Component {
  ProjectiveRational frequency;  // Hz, non-negative
  double amplitude;
};

// Ideal: f0 + f1 and |f0 - f1| with amplitude a0 a1 / 2. Intermodulating:
// |p f0 - q f1| for 1 <= |p| + |q| <= P (up to overall sign) with amplitude
// a0 a1 rolloff^(|p|+|q|-2) / 2; equal frequencies are merged by summing.
// Sorted by frequency.
std::vector<Component> mix(const Oscillator& osc0, const Oscillator& osc1, const MixerModel& model);

// Components strictly below fc.
std::vector<Component> lowpass(const std::vector<Component>& components, const ProjectiveRational& fc);

// Samples Σ A cos(2π f t) on [0, window] and returns sign changes / (2 window).
// Throws DomainError("NoSignal") for an empty or all-zero input and
// DomainError("Aliasing") unless sample_rate > 4 max f.
double count_beat(const std::vector<Component>& components, double window, double sample_rate);

struct SweepRow {
  ProjectiveRational f0;
  ProjectiveRational nu;                 // f0 / f1
  std::optional<double> detected;        // empty when nothing passes the filter
  std::optional<ProjectiveRational> center;    // predicted zone center
  std::optional<ProjectiveRational> expected;  // |q f0 - p f1| for center p/q
};

struct SweepOptions {
  ProjectiveRational f0_lo, f0_hi;
  std::size_t steps = 201;
  ProjectiveRational f1, fc;
  MixerModel model;
  double window = 100.0;
  double sample_rate = 50.0;
  unsigned threads = 1;
};

// Uniform exact grid of f0; each row is mixed, filtered, counted and tagged
// with the spectrum zone containing ν = f0/f1.
std::vector<SweepRow> sweep(const SweepOptions& opt);

// Detected beat within `tolerance` Hz of the expected one.
bool agrees(const SweepRow& row, double tolerance);

}  // namespace rspec
