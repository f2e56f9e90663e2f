#include "vbqc/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace vbqc {

double sigma_threshold(int k, double p) {
  if (k < 1) throw std::invalid_argument("sigma_threshold: k must be >= 1");
  if (p < 0.0 || p >= 0.5) {
    throw std::invalid_argument("sigma_threshold: p must lie in [0, 1/2)");
  }
  return (1.0 / k) * (2.0 * p - 1.0) / (2.0 * p - 2.0);
}

double Thresholds::sigma() const { return sigma_threshold(k, p); }

void Thresholds::validate() const {
  const double s = sigma();
  if (!(0.0 <= nu && nu <= omega && omega < s && s <= 1.0)) {
    throw std::invalid_argument(
        "thresholds must satisfy 0 <= nu <= omega < sigma <= 1");
  }
}

double test_error_fraction(const Transcript& t) {
  std::uint64_t tests = 0, failed = 0;
  for (const auto& r : t.rounds) {
    if (r.round_type != RoundType::Test) continue;
    ++tests;
    failed += static_cast<std::uint64_t>(r.m1_true ^ r.m2_true);
  }
  if (tests == 0) {
    throw std::invalid_argument("test_error_fraction: no test rounds");
  }
  return static_cast<double>(failed) / static_cast<double>(tests);
}

std::pair<int, double> majority_vote(const std::vector<RoundRecord>& computation_rounds) {
  if (computation_rounds.empty()) {
    throw std::invalid_argument("majority_vote: no computation rounds");
  }
  std::uint64_t ones = 0;
  for (const auto& r : computation_rounds) ones += static_cast<std::uint64_t>(r.m2_true);
  const std::uint64_t n = computation_rounds.size();
  if (2 * ones == n) throw std::runtime_error("majority_vote: exact tie");
  const int bit = (2 * ones > n) ? 1 : 0;
  const std::uint64_t count = bit ? ones : n - ones;
  return {bit, static_cast<double>(count) / static_cast<double>(n)};
}

Verdict decide(const Transcript& t, const Thresholds& th) {
  th.validate();

  Verdict v;
  v.stats.n = t.rounds.size();
  v.stats.omega = th.omega;
  std::vector<RoundRecord> comp;
  comp.reserve(t.rounds.size());
  std::uint64_t failed = 0;
  for (const auto& r : t.rounds) {
    if (r.round_type == RoundType::Test) {
      ++v.stats.n_test;
      failed += static_cast<std::uint64_t>(r.m1_true ^ r.m2_true);
    } else {
      comp.push_back(r);
    }
  }
  v.stats.n_comp = comp.size();
  if (v.stats.n_test == 0 || v.stats.n_comp == 0) {
    throw std::invalid_argument("decide: need at least one test and one computation round");
  }
  v.stats.failed_tests = failed;
  v.stats.epsilon = static_cast<double>(failed) / static_cast<double>(v.stats.n_test);

  if (v.stats.epsilon <= th.omega) {
    const auto [bit, fraction] = majority_vote(comp);
    v.accept = true;
    v.output = bit;
    v.majority_fraction = fraction;
  }
  return v;
}

double robustness_bound(std::uint64_t n_test, double omega, double nu) {
  if (n_test < 1) throw std::invalid_argument("robustness_bound: n_test must be >= 1");
  if (!(omega >= nu)) throw std::invalid_argument("robustness_bound: requires omega >= nu");
  const double gap = omega - nu;
  return std::exp(-2.0 * static_cast<double>(n_test) * gap * gap);
}

double soundness_bound(std::uint64_t n_test, double sigma, double omega) {
  if (n_test < 1) throw std::invalid_argument("soundness_bound: n_test must be >= 1");
  if (!(omega < sigma)) throw std::invalid_argument("soundness_bound: requires omega < sigma");
  const double gap = sigma - omega;
  return std::exp(-2.0 * static_cast<double>(n_test) * gap * gap);
}

}  // namespace vbqc
