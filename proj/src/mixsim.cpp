#include "rspec/mixsim.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "rspec/parallel.hpp"

namespace rspec {

namespace {

struct Phasor {
  std::complex<double> value;
};

// cos(2π f t + φ) with f possibly negative is folded onto |f|.
void add_term(std::map<ProjectiveRational, Phasor>& terms, const ProjectiveRational& f,
              double amplitude, double phase) {
  const bool flip = f < 0;
  terms[flip ? -f : f].value += std::polar(amplitude, flip ? -phase : phase);
}

std::vector<Component> collect(const std::map<ProjectiveRational, Phasor>& terms) {
  std::vector<Component> out;
  for (const auto& [f, p] : terms) out.push_back({f, std::abs(p.value)});
  return out;
}

void check_oscillator(const Oscillator& o) {
  if (o.frequency.is_infinite() || !(o.frequency > 0))
    throw std::invalid_argument("oscillator frequency must be positive");
  if (!(o.amplitude > 0)) throw std::invalid_argument("oscillator amplitude must be positive");
}

}  // namespace

std::vector<Component> mix(const Oscillator& osc0, const Oscillator& osc1, const MixerModel& model) {
  check_oscillator(osc0);
  check_oscillator(osc1);
  const double base = osc0.amplitude * osc1.amplitude / 2;
  std::map<ProjectiveRational, Phasor> terms;
  if (model.kind == MixerKind::Ideal) {
    add_term(terms, osc0.frequency + osc1.frequency, base, osc0.phase + osc1.phase);
    add_term(terms, osc0.frequency - osc1.frequency, base, osc0.phase - osc1.phase);
    return collect(terms);
  }
  if (model.order_limit < 1) throw std::invalid_argument("order limit must be at least 1");
  if (!(model.rolloff > 0 && model.rolloff <= 1)) throw std::invalid_argument("rolloff must be in (0, 1]");
  const long long P = model.order_limit;
  for (long long p = 0; p <= P; ++p) {
    for (long long q = -P; q <= P; ++q) {
      const long long order = std::llabs(p) + std::llabs(q);
      if (order < 1 || order > P || (p == 0 && q < 0)) continue;
      const ProjectiveRational f = ProjectiveRational(p) * osc0.frequency - ProjectiveRational(q) * osc1.frequency;
      const double amplitude = base * std::pow(model.rolloff, static_cast<double>(order - 2));
      add_term(terms, f, amplitude, p * osc0.phase - q * osc1.phase);
    }
  }
  return collect(terms);
}

std::vector<Component> lowpass(const std::vector<Component>& components, const ProjectiveRational& fc) {
  if (fc.is_infinite() || !(fc > 0)) throw std::invalid_argument("cutoff must be positive");
  std::vector<Component> out;
  for (const Component& c : components)
    if (c.frequency < fc) out.push_back(c);
  return out;
}

double count_beat(const std::vector<Component>& components, double window, double sample_rate) {
  if (!(window > 0) || !(sample_rate > 0)) throw std::invalid_argument("window and sample rate must be positive");
  double max_f = 0, total = 0;
  for (const Component& c : components) {
    max_f = std::max(max_f, c.frequency.to_double());
    total += std::abs(c.amplitude);
  }
  if (components.empty() || total == 0) throw DomainError("NoSignal", "no component survives the filter");
  if (!(sample_rate > 4 * max_f))
    throw DomainError("Aliasing", "sample rate must exceed 4x the highest component frequency");

  const auto samples = static_cast<long long>(std::floor(window * sample_rate));
  std::vector<double> omega;
  for (const Component& c : components) omega.push_back(2 * std::numbers::pi * c.frequency.to_double());
  long long crossings = 0;
  int last_sign = 0;
  for (long long k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    double s = 0;
    for (std::size_t i = 0; i < components.size(); ++i) s += components[i].amplitude * std::cos(omega[i] * t);
    const int sign = (s > 0) - (s < 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++crossings;
      last_sign = sign;
    }
  }
  return static_cast<double>(crossings) / (2 * window);
}

std::vector<SweepRow> sweep(const SweepOptions& opt) {
  if (opt.steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  if (!(opt.f0_lo > 0) || !(opt.f0_lo < opt.f0_hi)) throw std::invalid_argument("sweep needs 0 < f0_lo < f0_hi");
  const DetectorConfig cfg(opt.f1, opt.fc);
  const ProjectiveRational nu_hi = opt.f0_hi / opt.f1;
  const Spectrum spectrum = build_spectrum(cfg, 0, ProjectiveRational(nu_hi.floor() + 2), opt.threads);

  const ProjectiveRational step = (opt.f0_hi - opt.f0_lo) / ProjectiveRational(Integer(opt.steps - 1));
  std::vector<SweepRow> rows(opt.steps);
  parallel_for(opt.steps, opt.threads, [&](std::size_t k) {
    SweepRow row;
    row.f0 = opt.f0_lo + step * ProjectiveRational(Integer(k));
    row.nu = row.f0 / opt.f1;
    const auto components = lowpass(mix({row.f0}, {opt.f1}, opt.model), opt.fc);
    try {
      row.detected = count_beat(components, opt.window, opt.sample_rate);
    } catch (const DomainError& e) {
      if (e.code() != "NoSignal") throw;
    }
    if (const SpectrumZone* z = spectrum.locate(row.nu)) {
      const ProjectiveRational& c = z->zone.center;
      row.center = c;
      row.expected = (ProjectiveRational(c.den()) * row.f0 - ProjectiveRational(c.num()) * opt.f1).abs();
    }
    rows[k] = std::move(row);
  });
  return rows;
}

bool agrees(const SweepRow& row, double tolerance) {
  return row.center && row.detected && std::abs(*row.detected - row.expected->to_double()) <= tolerance;
}

}  // namespace rspec
