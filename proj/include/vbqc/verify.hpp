#pragma once

#include <optional>
#include <vector>

#include "vbqc/protocol.hpp"

// Accept/abort machinery: the security threshold σ, the observed test-failure
// fraction ε, the decision rule ε ≤ ω, the majority vote over computation
// outcomes, and generic concentration bounds on the failure probabilities.
namespace vbqc {

struct Thresholds {
  double omega = 0.18;  // tolerated failed-test fraction
  double nu = 0.14;     // expected hardware-noise failure rate
  int k = 2;            // number of test-round types
  double p = 0.0;       // inherent algorithm error probability

  double sigma() const;   // the k/p security bound
  void validate() const;  // enforces 0 ≤ ν ≤ ω < σ ≤ 1
};

// σ = (1/k)·(2p−1)/(2p−2); requires k ≥ 1 and 0 ≤ p < ½.
double sigma_threshold(int k, double p);

// Failed tests / total tests; a test round fails iff m₁ ⊕ m₂ = 1 after
// unmasking. Throws if the transcript has no test rounds.
double test_error_fraction(const Transcript& t);

// Modal m₂ over computation rounds and its empirical fraction; an exact tie
// is an error (never a silent coin flip: it could mask adversarial balancing).
std::pair<int, double> majority_vote(const std::vector<RoundRecord>& computation_rounds);

struct VerdictStats {
  std::uint64_t n = 0;
  std::uint64_t n_test = 0;
  std::uint64_t n_comp = 0;
  std::uint64_t failed_tests = 0;
  double epsilon = 0.0;
  double omega = 0.0;
};

// Accept carries the voted output bit; Abort happens before any vote, so
// output and majority_fraction stay empty.
struct Verdict {
  bool accept = false;
  std::optional<int> output;
  std::optional<double> majority_fraction;
  VerdictStats stats;
};

Verdict decide(const Transcript& t, const Thresholds& th);

// Generic Hoeffding-style bounds — intentionally coarse, clearly not the
// tight theorem constants, but monotone and directly checkable:
//   robustness ≤ exp(−2·n_test·(ω−ν)²)   requires ω > ν
//   soundness  ≤ exp(−2·n_test·(σ−ω)²)   requires ω < σ
double robustness_bound(std::uint64_t n_test, double omega, double nu);
double soundness_bound(std::uint64_t n_test, double sigma, double omega);

}  // namespace vbqc
