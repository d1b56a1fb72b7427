#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rspec/mixsim.hpp"
#include "rspec/resolution.hpp"
#include "rspec/spectrum.hpp"
#include "rspec/words.hpp"

namespace rspec {

using Json = nlohmann::ordered_json;

// Locale-independent fixed-point rendering of a double.
std::string format_double(double x, int digits = 6);

Json to_json(const LockingZone& zone);
Json to_json(const ZoneClass& cls);

Json to_json(const FareyTree& tree);
std::string to_dot(const FareyTree& tree);

Json to_json(const ResolutionTree& tree);
std::string to_dot(const ResolutionTree& tree);

Json to_json(const Spectrum& spectrum);

void write_jump_csv(std::ostream& out, const std::vector<JumpRow>& rows);
void write_error_csv(std::ostream& out, const std::vector<ErrorSample>& samples, unsigned digits = 12);
// zone_hit is 1 when the row lies in a predicted zone and its counted beat
// agrees with the zone's expected beat within `tolerance` Hz.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double tolerance);

}  // namespace rspec
