#pragma once

#include <optional>

#include "vbqc/angle.hpp"
#include "vbqc/qmath.hpp"

// What the server could learn: twirl-averaged states over the clients'
// masking angles, their fidelity to the maximally mixed state, and the Holevo
// quantity of the masked-state ensemble.
namespace vbqc {

// Average over the 64 (θ₁^A, θ₁^B) pairs of the qubit-2 state after qubit 1
// is measured at delta1. By default the average includes both measurement
// outcomes at their Born weights (unconditioned); pass an outcome bit to
// condition on it instead.
qmath::Mat2 averaged_second_qubit(const qmath::Mat4& source, Angle8 delta1,
                                  std::optional<int> condition_on = std::nullopt);

// Uniform average over all 64 (θ₁^A, θ₂^B) maskings of the source.
qmath::Mat4 averaged_two_qubit(const qmath::Mat4& source);

// χ of the 16-group ensemble: the 64 masked states, partitioned by
// (θ₁^A mod π, θ₂^B mod π) into 16 uniform groups of 4, each group averaged.
double holevo_protocol_ensemble(const qmath::Mat4& source);

struct BlindnessReport {
  qmath::Mat2 avg_single_qubit;
  double f_1q = 0.0;  // fidelity with I/2
  qmath::Mat4 avg_two_qubit;
  double f_2q = 0.0;  // fidelity with I/4
  double chi = 0.0;   // bits
  int ensemble_size = 64;
};

BlindnessReport blindness_report(const qmath::Mat4& source, Angle8 delta1);

}  // namespace vbqc
