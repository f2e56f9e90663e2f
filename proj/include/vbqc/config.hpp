#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "vbqc/blindness.hpp"
#include "vbqc/protocol.hpp"
#include "vbqc/verify.hpp"

namespace vbqc {

// A fully validated experiment description. Parsed from a flat key=value
// file ('#' comments); every key is checked against the schema and validated
// with a field-specific message before anything runs.
struct RunConfig {
  Algorithm algorithm{Angle8(2), Angle8(2), 0, 0};
  std::uint64_t rounds = 10000;
  double test_fraction = 0.5;
  std::uint64_t seed = 1;
  Thresholds thresholds;

  bool noise_ideal = false;   // ideal preset: pure graph state, no device errors
  NoiseParams noise;          // used when not ideal

  ServerBehavior adversary = Honest{};
  std::string adversary_name = "honest";

  FFMode ff_mode = FFMode::Table;

  bool blindness_enabled = false;
  Angle8 blindness_delta1{5};
  std::optional<int> blindness_condition_on;

  std::filesystem::path output_dir = "out";

  void validate() const;  // throws std::invalid_argument with the offending field
  RunDevices devices() const;
};

// Parse + validate. Errors are distinct and name the problem: missing file,
// syntax, unknown key, duplicate key, or a constraint violation.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Named adversary presets used by the CLI override (--adversary NAME).
ServerBehavior adversary_by_name(const std::string& name);

}  // namespace vbqc
