#include "vbqc/blindness.hpp"

#include <array>
#include <vector>

namespace vbqc {

using qmath::Mat2;
using qmath::Mat4;

Mat2 averaged_second_qubit(const Mat4& source, Angle8 delta1,
                           std::optional<int> condition_on) {
  qmath::check_density(source);
  const Mat2 p_plus = qmath::proj_plus(delta1.radians());
  const Mat2 p_minus = Mat2::Identity() - p_plus;

  Mat2 acc = Mat2::Zero();
  double weight = 0.0;
  for (int ka = 0; ka < 8; ++ka) {
    for (int kb = 0; kb < 8; ++kb) {
      // both clients rotate qubit 1; all other secrets held at zero
      const Mat4 u = qmath::kron(qmath::rz(Angle8(ka + kb).radians()), Mat2::Identity());
      const Mat4 rho = qmath::apply(u, source);
      for (int outcome = 0; outcome < 2; ++outcome) {
        if (condition_on && *condition_on != outcome) continue;
        const Mat2& p = outcome == 0 ? p_plus : p_minus;
        const Mat4 k = qmath::kron(p, Mat2::Identity());
        // unnormalized branch: carries its own Born weight
        const Mat4 projected = k * rho * k;
        acc += qmath::partial_trace(projected, 2);
        weight += projected.trace().real();
      }
    }
  }
  // unconditioned: weight is exactly 64 (both branches of each pair);
  // conditioned: normalize by the total weight of the kept branch
  return acc / weight;
}

Mat4 averaged_two_qubit(const Mat4& source) {
  qmath::check_density(source);
  Mat4 acc = Mat4::Zero();
  for (int k1 = 0; k1 < 8; ++k1) {
    for (int k2 = 0; k2 < 8; ++k2) {
      const Mat4 u = qmath::kron(qmath::rz(Angle8(k1).radians()),
                                 qmath::rz(Angle8(k2).radians()));
      acc += qmath::apply(u, source);
    }
  }
  return acc / 64.0;
}

double holevo_protocol_ensemble(const Mat4& source) {
  qmath::check_density(source);
  // 16 groups labelled by the angle codes mod π (i.e. mod 4); each group is
  // the uniform average of its four ±π shifts.
  std::array<Mat4, 16> groups;
  groups.fill(Mat4::Zero());
  for (int k1 = 0; k1 < 8; ++k1) {
    for (int k2 = 0; k2 < 8; ++k2) {
      const Mat4 u = qmath::kron(qmath::rz(Angle8(k1).radians()),
                                 qmath::rz(Angle8(k2).radians()));
      groups[(k1 % 4) * 4 + (k2 % 4)] += qmath::apply(u, source);
    }
  }
  std::vector<std::pair<double, Mat4>> ensemble;
  ensemble.reserve(16);
  for (const auto& g : groups) ensemble.emplace_back(1.0 / 16.0, g / 4.0);
  return qmath::holevo(ensemble);
}

BlindnessReport blindness_report(const Mat4& source, Angle8 delta1) {
  BlindnessReport r;
  r.avg_single_qubit = averaged_second_qubit(source, delta1);
  r.f_1q = qmath::fidelity(r.avg_single_qubit, Mat2::Identity() / 2.0);
  r.avg_two_qubit = averaged_two_qubit(source);
  r.f_2q = qmath::fidelity(r.avg_two_qubit, Mat4::Identity() / 4.0);
  r.chi = holevo_protocol_ensemble(source);
  r.ensemble_size = 64;
  return r;
}

}  // namespace vbqc
