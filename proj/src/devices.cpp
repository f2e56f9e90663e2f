#include "vbqc/devices.hpp"

#include <cmath>
#include <stdexcept>

namespace vbqc {

using qmath::Mat2;
using qmath::Mat4;

void NoiseParams::validate() const {
  if (v < 0.0 || v > 1.0) throw std::invalid_argument("noise.v outside [0,1]");
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("noise.lambda outside [0,1]");
  if (lc_err_halfwidth < 0.0) throw std::invalid_argument("noise.lc_err_halfwidth negative");
  if (hwp_err_halfwidth_deg < 0.0) throw std::invalid_argument("noise.hwp_err_halfwidth_deg negative");
}

Mat4 noisy_source_state(const NoiseParams& p) {
  p.validate();
  const qmath::Vec4 plus = qmath::bell_phi_plus();
  qmath::Vec4 minus;
  minus << plus(0), 0.0, 0.0, -plus(3);
  const Mat4 rho_plus = qmath::density(plus);
  const Mat4 rho_minus = qmath::density(minus);
  const Mat4 bell_frame =
      p.v * rho_plus +
      (1.0 - p.v) * (p.lambda / 2.0 * (rho_plus + rho_minus) +
                     (1.0 - p.lambda) / 4.0 * Mat4::Identity());
  // The source emits in the Bell frame; the protocol's resource state is the
  // same pair under a fixed local I⊗H.
  const Mat4 u = qmath::kron(Mat2::Identity(), qmath::hadamard());
  return qmath::apply(u, bell_frame);
}

DeviceErrors sample_device_errors(const NoiseParams& p, PhiloxRng& rng) {
  DeviceErrors e;
  for (int client = 0; client < 2; ++client)
    for (int qubit = 0; qubit < 2; ++qubit)
      e.lc[client][qubit] = rng.next_symmetric(p.lc_err_halfwidth);
  // waveplate misalignment of eta degrees rotates the analyzed equatorial
  // angle by 2*eta
  const double station_halfwidth = 2.0 * p.hwp_err_halfwidth_deg * M_PI / 180.0;
  e.station[0] = rng.next_symmetric(station_halfwidth);
  e.station[1] = rng.next_symmetric(station_halfwidth);
  e.pc_offset = p.pc_random ? rng.next_symmetric(std::abs(p.pc_phase_offset))
                            : p.pc_phase_offset;
  return e;
}

Mat2 perturbed_client_unitary(Angle8 theta, int b, double lc_err) {
  Mat2 u = qmath::rz(theta.radians() + lc_err);
  if (b & 1) u = u * qmath::pauli_x();
  return u;
}

ServerMeas2Q server_measure(const ServerBehavior& b, const Mat4& rho, int qubit,
                            double delta_effective, PhiloxRng& rng) {
  if (const auto* fixed = std::get_if<FixedOutcome>(&b)) {
    const auto& forced = (qubit == 1) ? fixed->m1 : fixed->m2;
    // the server skips the measurement and reports a constant: the other
    // qubit keeps its reduced state, and no rng draw is consumed
    if (forced) return {*forced, qmath::partial_trace(rho, qubit == 1 ? 2 : 1)};
  }
  double angle = delta_effective;
  if (const auto* tamper = std::get_if<AngleTamper>(&b)) {
    angle += (qubit == 1 ? tamper->offset1 : tamper->offset2).radians();
  }
  auto m = qmath::measure_equatorial(rho, qubit, angle, rng);
  if (const auto* flip = std::get_if<OutcomeFlip>(&b)) {
    const double p = (qubit == 1) ? flip->p1 : flip->p2;
    if (p > 0.0 && rng.next_double() < p) m.outcome ^= 1;
  }
  return {m.outcome, m.post};
}

int server_measure(const ServerBehavior& b, const Mat2& rho, int qubit,
                   double delta_effective, PhiloxRng& rng) {
  if (const auto* fixed = std::get_if<FixedOutcome>(&b)) {
    const auto& forced = (qubit == 1) ? fixed->m1 : fixed->m2;
    if (forced) return *forced;
  }
  double angle = delta_effective;
  if (const auto* tamper = std::get_if<AngleTamper>(&b)) {
    angle += (qubit == 1 ? tamper->offset1 : tamper->offset2).radians();
  }
  auto m = qmath::measure_equatorial(rho, angle, rng);
  if (const auto* flip = std::get_if<OutcomeFlip>(&b)) {
    const double p = (qubit == 1) ? flip->p1 : flip->p2;
    if (p > 0.0 && rng.next_double() < p) m.outcome ^= 1;
  }
  return m.outcome;
}

}  // namespace vbqc
