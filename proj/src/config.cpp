#include "vbqc/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vbqc/qmath.hpp"

namespace vbqc {
namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::invalid_argument("config " + origin + ": " + what);
}

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

std::uint64_t parse_u64(const std::string& origin, const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    fail(origin, "key '" + key + "': expected a non-negative integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& origin, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(origin, "key '" + key + "': expected a number, got '" + v + "'");
  }
}

int parse_bit(const std::string& origin, const std::string& key, const std::string& v) {
  if (v == "0") return 0;
  if (v == "1") return 1;
  fail(origin, "key '" + key + "': expected 0 or 1, got '" + v + "'");
}

bool parse_bool(const std::string& origin, const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(origin, "key '" + key + "': expected true or false, got '" + v + "'");
}

Angle8 parse_angle(const std::string& origin, const std::string& key, const std::string& v) {
  const std::uint64_t k = parse_u64(origin, key, v);
  if (k > 7) fail(origin, "key '" + key + "': expected an angle code in 0..7, got '" + v + "'");
  return Angle8(static_cast<int>(k));
}

double parse_prob(const std::string& origin, const std::string& key, const std::string& v) {
  const double p = parse_double(origin, key, v);
  if (p < 0.0 || p > 1.0)
    fail(origin, "key '" + key + "': expected a probability in [0, 1], got '" + v + "'");
  return p;
}

const std::vector<std::string> kKnownKeys = {
    "algorithm.phi1",       "algorithm.phi2",
    "algorithm.x1",         "algorithm.x2",
    "rounds",               "test_fraction",
    "seed",                 "thresholds.omega",
    "thresholds.nu",        "thresholds.k",
    "thresholds.p",         "noise.preset",
    "noise.v",              "noise.lambda",
    "noise.lc_err_halfwidth", "noise.hwp_err_halfwidth_deg",
    "noise.pc_phase_offset", "noise.pc_random",
    "adversary",            "adversary.m1",
    "adversary.m2",         "adversary.flip_p1",
    "adversary.flip_p2",    "adversary.offset1",
    "adversary.offset2",    "adversary.state",
    "ff_mode",              "blindness",
    "blindness.delta1",     "blindness.condition_on",
    "output_dir",
};

bool known_key(const std::string& k) {
  for (const auto& known : kKnownKeys)
    if (k == known) return true;
  return false;
}

}  // namespace

ServerBehavior adversary_by_name(const std::string& name) {
  if (name == "honest") return Honest{};
  if (name == "fixed-outcome") return FixedOutcome{std::nullopt, 0};
  if (name == "outcome-flip") return OutcomeFlip{0.5, 0.5};
  if (name == "angle-tamper") return AngleTamper{Angle8(0), Angle8(4)};
  if (name == "state-replace") {
    return StateReplace{0.25 * qmath::Mat4::Identity()};
  }
  throw std::invalid_argument(
      "unknown adversary '" + name +
      "' (expected honest, fixed-outcome, outcome-flip, angle-tamper or state-replace)");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  // Pass 1: syntax. Collect key=value pairs, reject duplicates and junk.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, "line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, "line " + std::to_string(lineno) + ": empty key");
    if (value.empty())
      fail(origin, "line " + std::to_string(lineno) + ": empty value for key '" + key + "'");
    if (!known_key(key)) fail(origin, "unknown key '" + key + "'");
    if (const auto it = seen.find(key); it != seen.end())
      fail(origin, "duplicate key '" + key + "' (lines " + std::to_string(it->second) + " and " +
                       std::to_string(lineno) + ")");
    seen[key] = lineno;
    pairs.emplace_back(key, value);
  }

  RunConfig cfg;

  // Pass 2: selectors first, so dependent keys can be checked against them
  // no matter where they appear in the file.
  std::string noise_preset = "si-default";
  for (const auto& [key, value] : pairs) {
    if (key == "noise.preset") {
      if (value != "ideal" && value != "si-default" && value != "si-literal" && value != "custom")
        fail(origin, "key 'noise.preset': expected ideal, si-default, si-literal or custom, got '" +
                         value + "'");
      noise_preset = value;
    } else if (key == "adversary") {
      try {
        cfg.adversary = adversary_by_name(value);
      } catch (const std::invalid_argument& e) {
        fail(origin, std::string("key 'adversary': ") + e.what());
      }
      cfg.adversary_name = value;
    }
  }
  cfg.noise_ideal = noise_preset == "ideal";
  if (noise_preset == "si-literal") cfg.noise = NoiseParams::preset_si_literal();
  // si-default and custom both start from the calibrated defaults; custom is
  // just the conventional name for a run that overrides them.

  // Pass 3: everything else.
  for (const auto& [key, value] : pairs) {
    if (key == "noise.preset" || key == "adversary") continue;

    if (key.rfind("noise.", 0) == 0 && cfg.noise_ideal)
      fail(origin, "key '" + key + "' requires a non-ideal noise preset");

    if (key == "algorithm.phi1") cfg.algorithm.phi1 = parse_angle(origin, key, value);
    else if (key == "algorithm.phi2") cfg.algorithm.phi2 = parse_angle(origin, key, value);
    else if (key == "algorithm.x1") cfg.algorithm.x1 = parse_bit(origin, key, value);
    else if (key == "algorithm.x2") cfg.algorithm.x2 = parse_bit(origin, key, value);
    else if (key == "rounds") {
      cfg.rounds = parse_u64(origin, key, value);
      if (cfg.rounds == 0) fail(origin, "key 'rounds': must be at least 1");
    } else if (key == "test_fraction") {
      cfg.test_fraction = parse_double(origin, key, value);
      if (!(cfg.test_fraction > 0.0) || !(cfg.test_fraction < 1.0))
        fail(origin, "key 'test_fraction': must lie strictly between 0 and 1, got '" + value + "'");
    } else if (key == "seed") cfg.seed = parse_u64(origin, key, value);
    else if (key == "thresholds.omega") cfg.thresholds.omega = parse_double(origin, key, value);
    else if (key == "thresholds.nu") cfg.thresholds.nu = parse_double(origin, key, value);
    else if (key == "thresholds.k") {
      const auto k = parse_u64(origin, key, value);
      if (k == 0) fail(origin, "key 'thresholds.k': must be at least 1");
      cfg.thresholds.k = static_cast<int>(k);
    } else if (key == "thresholds.p") cfg.thresholds.p = parse_double(origin, key, value);
    else if (key == "noise.v") cfg.noise.v = parse_prob(origin, key, value);
    else if (key == "noise.lambda") cfg.noise.lambda = parse_prob(origin, key, value);
    else if (key == "noise.lc_err_halfwidth") {
      cfg.noise.lc_err_halfwidth = parse_double(origin, key, value);
      if (cfg.noise.lc_err_halfwidth < 0)
        fail(origin, "key 'noise.lc_err_halfwidth': must be non-negative");
    } else if (key == "noise.hwp_err_halfwidth_deg") {
      cfg.noise.hwp_err_halfwidth_deg = parse_double(origin, key, value);
      if (cfg.noise.hwp_err_halfwidth_deg < 0)
        fail(origin, "key 'noise.hwp_err_halfwidth_deg': must be non-negative");
    } else if (key == "noise.pc_phase_offset") {
      cfg.noise.pc_phase_offset = parse_double(origin, key, value);
    } else if (key == "noise.pc_random") cfg.noise.pc_random = parse_bool(origin, key, value);
    else if (key == "adversary.m1" || key == "adversary.m2") {
      auto* fixed = std::get_if<FixedOutcome>(&cfg.adversary);
      if (fixed == nullptr)
        fail(origin, "key '" + key + "' requires adversary = fixed-outcome");
      (key == "adversary.m1" ? fixed->m1 : fixed->m2) = parse_bit(origin, key, value);
    } else if (key == "adversary.flip_p1" || key == "adversary.flip_p2") {
      auto* flip = std::get_if<OutcomeFlip>(&cfg.adversary);
      if (flip == nullptr)
        fail(origin, "key '" + key + "' requires adversary = outcome-flip");
      (key == "adversary.flip_p1" ? flip->p1 : flip->p2) = parse_prob(origin, key, value);
    } else if (key == "adversary.offset1" || key == "adversary.offset2") {
      auto* tamper = std::get_if<AngleTamper>(&cfg.adversary);
      if (tamper == nullptr)
        fail(origin, "key '" + key + "' requires adversary = angle-tamper");
      (key == "adversary.offset1" ? tamper->offset1 : tamper->offset2) =
          parse_angle(origin, key, value);
    } else if (key == "adversary.state") {
      auto* replace = std::get_if<StateReplace>(&cfg.adversary);
      if (replace == nullptr)
        fail(origin, "key '" + key + "' requires adversary = state-replace");
      if (value == "maximally-mixed") replace->rho = 0.25 * qmath::Mat4::Identity();
      else if (value == "zero") {
        replace->rho = qmath::Mat4::Zero();
        replace->rho(0, 0) = 1.0;
      } else
        fail(origin, "key 'adversary.state': expected maximally-mixed or zero, got '" + value + "'");
    } else if (key == "ff_mode") {
      if (value == "table") cfg.ff_mode = FFMode::Table;
      else if (value == "direct") cfg.ff_mode = FFMode::Direct;
      else fail(origin, "key 'ff_mode': expected table or direct, got '" + value + "'");
    } else if (key == "blindness") cfg.blindness_enabled = parse_bool(origin, key, value);
    else if (key == "blindness.delta1") cfg.blindness_delta1 = parse_angle(origin, key, value);
    else if (key == "blindness.condition_on") {
      if (value == "none") cfg.blindness_condition_on.reset();
      else cfg.blindness_condition_on = parse_bit(origin, key, value);
    } else if (key == "output_dir") cfg.output_dir = value;
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not found: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void RunConfig::validate() const {
  if (rounds == 0) throw std::invalid_argument("rounds must be at least 1");
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must lie strictly between 0 and 1");
  thresholds.validate();
  if (!noise_ideal) noise.validate();
}

RunDevices RunConfig::devices() const {
  return noise_ideal ? RunDevices::ideal() : RunDevices::noisy(noise);
}

}  // namespace vbqc
