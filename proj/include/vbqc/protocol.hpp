#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vbqc/angle.hpp"
#include "vbqc/devices.hpp"
#include "vbqc/qmath.hpp"
#include "vbqc/rng.hpp"

// The protocol roles and the per-round state machine: clients' secret masking,
// the TTP's blind-angle computation, the feed-forward table emulator, and the
// server's two measurements.
namespace vbqc {

enum class RoundType { Computation, Test };

// One client's per-round secrets: masking angles θ₁, θ₂, bit-flip masks
// b₁, b₂ and outcome masks r₁, r₂.
struct ClientSecrets {
  Angle8 theta1, theta2;
  int b1 = 0, b2 = 0;
  int r1 = 0, r2 = 0;

  static ClientSecrets draw(PhiloxRng& rng);
};

// The delegated computation: measurement pattern (φ₁, φ₂) plus the two
// classical input bits.
struct Algorithm {
  Angle8 phi1, phi2;
  int x1 = 0, x2 = 0;
};

// Inputs/outputs of the classical feed-forward box between the two
// measurements. A and B are the TTP's 3-bit angle codes with
// δ₂ = (1−c)(A + (−1)^{m₁}B) + c(A + B); the first outcome arrives as the
// one-hot detector pair (exactly one of m1_plus/m1_minus fires).
struct FFInput {
  int A = 0;        // angle code 0..7
  int B = 0;        // angle code 0..7
  int r1 = 0;       // qubit-1 outcome mask
  int m1_plus = 0;  // "+" detector fired (outcome bit 0)
  int m1_minus = 0; // "−" detector fired (outcome bit 1)
  int c = 0;        // 1 = non-adaptive (test) branch
};

struct FFOutput {
  int V = 0;             // one-hot voltage code v₂v₁v₀: basis phases 3π/4, π/2, π/4
  int f = 0;             // leftover-π flag: flips the reported second bit
  int m1_true_plus = 0;  // detector pair with the r₁ mask removed
  int m1_true_minus = 0;
};

// Pure lookup reproducing the feed-forward electronics bit-exactly. Throws
// std::invalid_argument if the detector pair is not one-hot (coincidence-logic
// fault).
FFOutput ff_lookup(const FFInput& in);

// Basis phase code (0..3, units of π/4) selected by a voltage code.
int pc_code_from_voltage(int v);

// δ₂ code reconstructed from the feed-forward pair (cross-check helper).
Angle8 delta2_from_ff(int pc_code, int f);

// θ′₁ = (−1)^{b₁^B}θ₁^A + θ₁^B + (b₂^A⊕b₂^B)π and the index-swapped θ′₂:
// the composite of both clients' maskings, as compensated by the TTP.
std::pair<Angle8, Angle8> theta_prime(const ClientSecrets& a, const ClientSecrets& b);

// δ₁ = θ′₁ + x₁π + φ₁ + r₁π (computation); test rounds drop the input bit.
Angle8 delta1(Angle8 theta_prime_1, const Algorithm& alg, int r1, RoundType t);

// The two adaptive branches (δ₂ for m₁ = 0, m₁ = 1). Test rounds are
// non-adaptive: both entries equal θ′₂ + φ₂ + r₂π.
std::pair<Angle8, Angle8> delta2_branches(Angle8 theta_prime_2, const Algorithm& alg,
                                          int r2, RoundType t);

// Whether the second measurement is realized through the feed-forward table
// (basis = table phase, f flips the bit) or directly at δ₂.
enum class FFMode { Table, Direct };

struct RoundRecord {
  RoundType round_type = RoundType::Computation;
  ClientSecrets secrets_a, secrets_b;
  Angle8 theta_prime1, theta_prime2;
  Angle8 delta_1, delta_2;
  int f = 0;
  int m1_raw = 0, m2_raw = 0;
  int m1_true = 0, m2_true = 0;
  // strictly ordered logical times: state prepared, qubit 1 measured,
  // qubit 2 measured
  std::uint64_t t0 = 0, t1 = 1, t2 = 2;
};

struct Transcript {
  Algorithm algorithm;
  std::uint64_t n = 0;
  double test_fraction = 0.5;
  FFMode ff_mode = FFMode::Table;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> rounds;
};

// What the protocol runs on: the emitted two-qubit state plus the per-round
// error model. ideal() skips the device-error draws entirely.
struct RunDevices {
  qmath::Mat4 source;
  NoiseParams noise;
  bool ideal_devices = true;

  static RunDevices ideal();
  static RunDevices noisy(const NoiseParams& p);
};

// One full round at fixed secrets-free inputs; the rng must be the round's
// substream, already past the round-type and device-error draws.
RoundRecord run_round(const Algorithm& alg, RoundType type,
                      const qmath::Mat4& source_state, const DeviceErrors& errors,
                      const ServerBehavior& behavior, PhiloxRng& rng,
                      FFMode mode = FFMode::Table);

// n rounds, round types drawn per-round with probability test_fraction.
// Deterministic in (arguments, seed): round i consumes only the substream
// keyed (seed, i+1), so any thread count produces the identical transcript.
Transcript run_protocol(const Algorithm& alg, std::uint64_t n, double test_fraction,
                        const RunDevices& devices, const ServerBehavior& behavior,
                        std::uint64_t seed, FFMode mode = FFMode::Table,
                        unsigned threads = 0);

}  // namespace vbqc
