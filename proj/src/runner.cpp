#include "vbqc/runner.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

namespace vbqc {
namespace {

using nlohmann::json;

json secrets_json(const ClientSecrets& s) {
  return json{{"theta1", s.theta1.code()}, {"theta2", s.theta2.code()},
              {"b1", s.b1},               {"b2", s.b2},
              {"r1", s.r1},               {"r2", s.r2}};
}

json round_json(const RoundRecord& r, std::uint64_t index) {
  return json{
      {"round", index},
      {"type", r.round_type == RoundType::Test ? "test" : "computation"},
      {"t", json::array({r.t0, r.t1, r.t2})},
      {"a", secrets_json(r.secrets_a)},
      {"b", secrets_json(r.secrets_b)},
      {"theta_prime", json::array({r.theta_prime1.code(), r.theta_prime2.code()})},
      {"delta1", r.delta_1.code()},
      {"delta2", r.delta_2.code()},
      {"f", r.f},
      {"m1", r.m1_raw},
      {"m2", r.m2_raw},
      {"m1_true", r.m1_true},
      {"m2_true", r.m2_true},
  };
}

const char* type_name(int t) { return t == 0 ? "test" : "computation"; }

}  // namespace

RunReport run(const RunConfig& cfg, int threads) {
  const auto start = std::chrono::steady_clock::now();

  RunReport rep;
  const RunDevices devices = cfg.devices();
  rep.transcript = run_protocol(cfg.algorithm, cfg.rounds, cfg.test_fraction, devices,
                                cfg.adversary, cfg.seed, cfg.ff_mode,
                                threads > 0 ? static_cast<unsigned>(threads) : 0);
  rep.verdict = decide(rep.transcript, cfg.thresholds);
  rep.sigma = cfg.thresholds.sigma();
  rep.robustness_bound =
      robustness_bound(rep.verdict.stats.n_test, cfg.thresholds.omega, cfg.thresholds.nu);
  rep.soundness_bound = soundness_bound(rep.verdict.stats.n_test, rep.sigma, cfg.thresholds.omega);

  for (const auto& r : rep.transcript.rounds) {
    const int t = r.round_type == RoundType::Test ? 0 : 1;
    ++rep.histogram[t][r.m1_true][r.m2_true];
  }

  if (cfg.blindness_enabled) {
    rep.blindness = blindness_report(devices.source, cfg.blindness_delta1);
    if (cfg.blindness_condition_on) {
      const qmath::Mat2 cond =
          averaged_second_qubit(devices.source, cfg.blindness_delta1, cfg.blindness_condition_on);
      rep.blindness_f1q_conditioned = qmath::fidelity(cond, 0.5 * qmath::Mat2::Identity());
    }
  }

  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json summary_json(const RunReport& report, const RunConfig& cfg, const json& overrides) {
  const Verdict& v = report.verdict;

  json histogram = json::object();
  for (int t = 0; t < 2; ++t) {
    json cells = json::object();
    for (int m1 = 0; m1 < 2; ++m1)
      for (int m2 = 0; m2 < 2; ++m2)
        cells[std::to_string(m1) + std::to_string(m2)] = report.histogram[t][m1][m2];
    histogram[type_name(t)] = cells;
  }

  json noise;
  if (cfg.noise_ideal) {
    noise = json{{"ideal", true}};
  } else {
    noise = json{{"ideal", false},
                 {"v", cfg.noise.v},
                 {"lambda", cfg.noise.lambda},
                 {"lc_err_halfwidth", cfg.noise.lc_err_halfwidth},
                 {"hwp_err_halfwidth_deg", cfg.noise.hwp_err_halfwidth_deg},
                 {"pc_phase_offset", cfg.noise.pc_phase_offset},
                 {"pc_random", cfg.noise.pc_random}};
  }

  json summary{
      {"verdict", v.accept ? "accept" : "abort"},
      {"output", v.output ? json(*v.output) : json(nullptr)},
      {"majority_fraction", v.majority_fraction ? json(*v.majority_fraction) : json(nullptr)},
      {"epsilon", v.stats.epsilon},
      {"counts",
       {{"rounds", v.stats.n},
        {"test", v.stats.n_test},
        {"computation", v.stats.n_comp},
        {"failed_tests", v.stats.failed_tests}}},
      {"thresholds",
       {{"omega", cfg.thresholds.omega},
        {"nu", cfg.thresholds.nu},
        {"k", cfg.thresholds.k},
        {"p", cfg.thresholds.p},
        {"sigma", report.sigma}}},
      {"bounds", {{"robustness", report.robustness_bound}, {"soundness", report.soundness_bound}}},
      {"algorithm",
       {{"phi1", cfg.algorithm.phi1.code()},
        {"phi2", cfg.algorithm.phi2.code()},
        {"x1", cfg.algorithm.x1},
        {"x2", cfg.algorithm.x2}}},
      {"rounds", cfg.rounds},
      {"test_fraction", cfg.test_fraction},
      {"seed", cfg.seed},
      {"ff_mode", cfg.ff_mode == FFMode::Table ? "table" : "direct"},
      {"adversary", cfg.adversary_name},
      {"noise", noise},
      {"histogram", histogram},
      {"overrides", overrides},
      {"wall_clock_seconds", report.wall_seconds},
  };

  if (report.blindness) {
    const BlindnessReport& b = *report.blindness;
    json bj{{"delta1", cfg.blindness_delta1.code()},
            {"ensemble_size", b.ensemble_size},
            {"f_single_qubit", b.f_1q},
            {"f_two_qubit", b.f_2q},
            {"holevo_chi", b.chi}};
    if (report.blindness_f1q_conditioned) {
      bj["condition_on"] = *cfg.blindness_condition_on;
      bj["f_single_qubit_conditioned"] = *report.blindness_f1q_conditioned;
    }
    summary["blindness"] = bj;
  } else {
    summary["blindness"] = nullptr;
  }

  return summary;
}

void write_outputs(const RunReport& report, const RunConfig& cfg,
                   const std::filesystem::path& dir, const json& overrides) {
  std::filesystem::create_directories(dir);

  {
    std::ofstream out(dir / "summary.json");
    if (!out) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
    out << summary_json(report, cfg, overrides).dump(2) << '\n';
  }

  {
    std::ofstream out(dir / "rounds.jsonl");
    if (!out) throw std::runtime_error("cannot write " + (dir / "rounds.jsonl").string());
    for (std::uint64_t i = 0; i < report.transcript.rounds.size(); ++i)
      out << round_json(report.transcript.rounds[i], i).dump() << '\n';
  }

  {
    std::ofstream out(dir / "histogram.csv");
    if (!out) throw std::runtime_error("cannot write " + (dir / "histogram.csv").string());
    out << "type,m1,m2,count\n";
    for (int t = 0; t < 2; ++t)
      for (int m1 = 0; m1 < 2; ++m1)
        for (int m2 = 0; m2 < 2; ++m2)
          out << type_name(t) << ',' << m1 << ',' << m2 << ','
              << report.histogram[t][m1][m2] << '\n';
  }
}

}  // namespace vbqc
