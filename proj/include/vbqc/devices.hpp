#pragma once

#include <optional>
#include <variant>

#include "vbqc/angle.hpp"
#include "vbqc/qmath.hpp"
#include "vbqc/rng.hpp"

// Source noise model, per-round device-imperfection sampling, and the
// pluggable (possibly malicious) measuring-server strategies.
namespace vbqc {

struct NoiseParams {
  double v = 0.935;       // source visibility
  double lambda = 0.493;  // colored-noise fraction

  // Device-error magnitudes. The shipped defaults are calibrated so an honest
  // noisy run lands at a test-failure rate of ~0.14; preset("si-literal")
  // carries the uncalibrated magnitudes (pi/8, 1 deg, pi/16).
  double lc_err_halfwidth = 1.45 * M_PI / 8.0;   // rad, per liquid crystal
  double hwp_err_halfwidth_deg = 1.45;           // deg, per analyzer waveplate
  double pc_phase_offset = 1.45 * M_PI / 16.0;   // rad, qubit-2 basis only
  bool pc_random = false;  // resample the offset in [-|offset|, +|offset|]

  void validate() const;  // throws std::invalid_argument on out-of-range fields

  static NoiseParams preset_si_default() { return NoiseParams{}; }
  static NoiseParams preset_si_literal() {
    NoiseParams p;
    p.lc_err_halfwidth = M_PI / 8.0;
    p.hwp_err_halfwidth_deg = 1.0;
    p.pc_phase_offset = M_PI / 16.0;
    return p;
  }
};

// One round's sampled perturbations, all in radians of equatorial angle.
struct DeviceErrors {
  double lc[2][2] = {{0, 0}, {0, 0}};  // [client A|B][qubit 1|2] preparation phase
  double station[2] = {0, 0};          // measurement-angle error per station
  double pc_offset = 0;                // systematic offset on qubit-2's basis
};

// Server strategies. Honest delegates to the exact measurement; the rest
// model malicious deviations at the two measurement points / source emission.
struct Honest {};
struct FixedOutcome {
  std::optional<int> m1;  // report this bit for qubit 1 (if set)
  std::optional<int> m2;
};
struct OutcomeFlip {
  double p1 = 0.0;  // probability of flipping each honest report
  double p2 = 0.0;
};
struct AngleTamper {
  Angle8 offset1{0};  // added to each measurement basis
  Angle8 offset2{0};
};
struct StateReplace {
  qmath::Mat4 rho;  // used instead of the source's emitted state
};
using ServerBehavior =
    std::variant<Honest, FixedOutcome, OutcomeFlip, AngleTamper, StateReplace>;

// The SI source mixture on Bell states, mapped through I⊗H so that v=1 gives
// the protocol's graph state.
qmath::Mat4 noisy_source_state(const NoiseParams& p);

// Draw order (fixed, part of the determinism contract): lc A1, A2, B1, B2,
// station 1, station 2, then the pc offset only when pc_random is set.
DeviceErrors sample_device_errors(const NoiseParams& p, PhiloxRng& rng);

// Rz(theta + lc_err) · X^b — the client's preparation optics with its
// liquid-crystal phase error.
qmath::Mat2 perturbed_client_unitary(Angle8 theta, int b, double lc_err);

// Measurement of one qubit of a two-qubit state at the already-perturbed
// effective angle; `qubit` selects the strategy's per-qubit fields. Returns
// the reported outcome and the remaining qubit's state. StateReplace is
// applied at round start, so it measures honestly here.
struct ServerMeas2Q {
  int outcome;
  qmath::Mat2 post;
};
ServerMeas2Q server_measure(const ServerBehavior& b, const qmath::Mat4& rho,
                            int qubit, double delta_effective, PhiloxRng& rng);

// Measurement of the remaining qubit (after the first has been projected out).
int server_measure(const ServerBehavior& b, const qmath::Mat2& rho, int qubit,
                   double delta_effective, PhiloxRng& rng);

}  // namespace vbqc
