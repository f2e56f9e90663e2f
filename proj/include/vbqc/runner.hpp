#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "vbqc/blindness.hpp"
#include "vbqc/config.hpp"
#include "vbqc/verify.hpp"

namespace vbqc {

// Everything a finished run produced: the raw transcript, the verifier's
// decision, outcome histograms split by round type, and (optionally) the
// blindness diagnostics for the configured source.
struct RunReport {
  Transcript transcript;
  Verdict verdict;
  double sigma = 0.0;
  double robustness_bound = 0.0;
  double soundness_bound = 0.0;
  // hist[type][m1][m2] with type 0 = test, 1 = computation; true outcomes.
  std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2> histogram{};
  std::optional<BlindnessReport> blindness;
  // fidelity of the outcome-conditioned qubit-2 average with I/2, when the
  // config asks for the conditioned diagnostic
  std::optional<double> blindness_f1q_conditioned;
  double wall_seconds = 0.0;
};

RunReport run(const RunConfig& cfg, int threads = 0);

// summary.json contents. `overrides` echoes any command-line overrides that
// were applied on top of the config file (empty object when none).
nlohmann::json summary_json(const RunReport& report, const RunConfig& cfg,
                            const nlohmann::json& overrides);

// Writes summary.json, rounds.jsonl and histogram.csv into `dir` (created if
// missing). rounds.jsonl carries integers only, so identical runs are
// byte-identical regardless of platform or thread count.
void write_outputs(const RunReport& report, const RunConfig& cfg,
                   const std::filesystem::path& dir, const nlohmann::json& overrides);

}  // namespace vbqc
