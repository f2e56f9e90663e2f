#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vbqc/config.hpp"
#include "vbqc/runner.hpp"

// Exit codes: 0 = run finished and was accepted, 2 = run finished and was
// aborted by the verifier, 1 = anything failed before a verdict was reached.
int main(int argc, char** argv) {
  CLI::App app{"Simulator for the two-client delegated measurement protocol"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  double omega = 0.0;
  std::string adversary;
  bool blindness = false;
  std::string out_dir;
  int threads = 0;

  auto* run_cmd = app.add_subcommand("run", "execute a protocol run described by a config file");
  run_cmd->add_option("config", config_path, "key=value config file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "override the rng seed");
  auto* rounds_opt = run_cmd->add_option("--rounds", rounds, "override the number of rounds");
  auto* omega_opt = run_cmd->add_option("--omega", omega, "override the accept threshold");
  auto* adv_opt = run_cmd->add_option(
      "--adversary", adversary,
      "override the server behavior: honest, fixed-outcome, outcome-flip, angle-tamper, state-replace");
  run_cmd->add_flag("--blindness", blindness, "compute the blindness diagnostics");
  auto* out_opt = run_cmd->add_option("--out", out_dir, "override the output directory");
  run_cmd->add_option("--threads", threads,
                      "worker threads (0 = VBQC_THREADS env or hardware default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    vbqc::RunConfig cfg = vbqc::load_config(config_path);

    nlohmann::json overrides = nlohmann::json::object();
    if (seed_opt->count() > 0) {
      cfg.seed = seed;
      overrides["seed"] = seed;
    }
    if (rounds_opt->count() > 0) {
      if (rounds == 0) throw std::invalid_argument("--rounds must be at least 1");
      cfg.rounds = rounds;
      overrides["rounds"] = rounds;
    }
    if (omega_opt->count() > 0) {
      cfg.thresholds.omega = omega;
      overrides["omega"] = omega;
    }
    if (adv_opt->count() > 0) {
      cfg.adversary = vbqc::adversary_by_name(adversary);
      cfg.adversary_name = adversary;
      overrides["adversary"] = adversary;
    }
    if (blindness) {
      cfg.blindness_enabled = true;
      overrides["blindness"] = true;
    }
    if (out_opt->count() > 0) {
      cfg.output_dir = out_dir;
      overrides["out"] = out_dir;
    }
    cfg.validate();  // overrides can break cross-field constraints (e.g. --omega)

    const vbqc::RunReport rep = vbqc::run(cfg, threads);
    vbqc::write_outputs(rep, cfg, cfg.output_dir, overrides);

    const vbqc::Verdict& v = rep.verdict;
    std::cout << (v.accept ? "ACCEPT" : "ABORT") << "  epsilon=" << v.stats.epsilon
              << " omega=" << cfg.thresholds.omega << "  failed " << v.stats.failed_tests << "/"
              << v.stats.n_test << " test rounds\n";
    if (v.output)
      std::cout << "output=" << *v.output << " (majority " << *v.majority_fraction << ")\n";
    if (rep.blindness)
      std::cout << "blindness: f_1q=" << rep.blindness->f_1q << " f_2q=" << rep.blindness->f_2q
                << " chi=" << rep.blindness->chi << "\n";
    std::cout << "outputs in " << cfg.output_dir.string() << "\n";
    return v.accept ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
