#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "vbqc/rng.hpp"

// Dense complex linear algebra and quantum-information primitives at
// dimensions 2 and 4. Conventions used throughout the library:
//   - basis order |00>,|01>,|10>,|11>, qubit 1 is the left tensor factor;
//   - Rz(t) = diag(1, e^{it}) (global phase fixed so tests are exact);
//   - equatorial observable M(d) = cos(d)σx + sin(d)σy, outcome bit 0 is the
//     +1 eigenvector (|0> + e^{id}|1>)/√2.
namespace vbqc::qmath {

using cplx = std::complex<double>;
using Vec4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Tolerances shared by validity checks. PSD violations beyond kPsdTol are
// invalid inputs, not round-off.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;

Vec4 graph_state();     // (|00>+|01>+|10>-|11>)/2
Vec4 bell_phi_plus();   // (|00>+|11>)/√2

Mat2 rz(double theta);
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
Mat4 cz();
Mat4 kron(const Mat2& a, const Mat2& b);

// |psi><psi|
Mat4 density(const Vec4& psi);

// M(delta) and its +1 eigenprojector ½[[1, e^{-id}],[e^{id}, 1]].
Mat2 meas_op(double delta);
Mat2 proj_plus(double delta);

// U rho U†
Mat4 apply(const Mat4& u, const Mat4& rho);

// Throws std::invalid_argument if rho is not Hermitian/trace-1/PSD within
// the library tolerances.
void check_density(const Eigen::MatrixXcd& rho);

struct Measurement {
  int outcome;    // 0 ↔ +1 eigenvector of M(delta)
  Mat2 post;      // normalized state of the remaining qubit
  double prob;    // Born probability of the sampled outcome
};

// Projective M(delta) measurement of one qubit (1 or 2) of a two-qubit state;
// the measured qubit is projected out and traced away. The rng draw is always
// consumed; branches with probability below 1e-12 are never sampled (keeps
// analytically-deterministic rounds exact), and if both branch probabilities
// are below 1e-15 the state was invalid and a std::runtime_error is thrown.
Measurement measure_equatorial(const Mat4& rho, int qubit, double delta,
                               PhiloxRng& rng);

struct Measurement1Q {
  int outcome;
  double prob;
};

// Same measurement on a single-qubit state (the second Qline measurement).
Measurement1Q measure_equatorial(const Mat2& rho, double delta, PhiloxRng& rng);

// keep = 1 keeps qubit 1 (traces out qubit 2), keep = 2 the reverse.
Mat2 partial_trace(const Mat4& rho, int keep);

// Uhlmann fidelity F = (Tr √(√a b √a))²; 1 for identical states, and the
// squared-overlap <psi|rho|psi> when either argument is pure.
double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// −Σ λ log2 λ in bits; eigenvalues in [-1e-9, 0) are clamped to 0, anything
// lower is an invalid state.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// χ = S(Σ p_i ρ_i) − Σ p_i S(ρ_i), clamped to 0 when within -1e-9 of zero.
double holevo(const std::vector<std::pair<double, Mat4>>& ensemble);

}  // namespace vbqc::qmath
