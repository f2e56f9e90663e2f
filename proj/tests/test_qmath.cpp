#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracle.hpp"
#include "vbqc/qmath.hpp"
#include "vbqc/rng.hpp"

using namespace vbqc::qmath;
using vbqc::PhiloxRng;

namespace {

constexpr double kPi = 3.14159265358979323846;

double maxdiff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Mat4 from_oracle(const oracle::M4& m) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m[i][j];
  return out;
}

Vec4 ket(int index) {
  Vec4 v = Vec4::Zero();
  v(index) = 1.0;
  return v;
}

const Vec4 kPlusZero = []() {
  Vec4 v;
  v << 1, 0, 1, 0;  // (|0> + |1>)/sqrt(2) on qubit 1, |0> on qubit 2
  return Vec4(v / std::sqrt(2.0));
}();

}  // namespace

TEST_CASE("graph state amplitudes and constructions") {
  const Vec4 g = graph_state();
  CHECK(g(0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g(1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g(2).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g(3).real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(g.norm() - 1.0) < 1e-14);

  // CZ (H ⊗ H) |00>
  const Vec4 built = cz() * kron(hadamard(), hadamard()) * ket(0);
  CHECK((built - g).norm() < 1e-14);

  // Bell pair with the second qubit through a Hadamard
  const Vec4 from_bell = kron(Mat2::Identity(), hadamard()) * bell_phi_plus();
  CHECK((from_bell - g).norm() < 1e-14);
}

TEST_CASE("graph state stabilizers") {
  const Vec4 g = graph_state();
  CHECK((kron(pauli_x(), pauli_z()) * g - g).norm() < 1e-14);
  CHECK((kron(pauli_z(), pauli_x()) * g - g).norm() < 1e-14);
  CHECK((kron(pauli_y(), pauli_y()) * g - g).norm() < 1e-14);

  // byproduct propagation: X on one qubit acts as Z on the other
  CHECK((kron(pauli_x(), Mat2::Identity()) * g - kron(Mat2::Identity(), pauli_z()) * g).norm() <
        1e-14);
  CHECK((kron(Mat2::Identity(), pauli_x()) * g - kron(pauli_z(), Mat2::Identity()) * g).norm() <
        1e-14);
}

TEST_CASE("rz is a one-parameter group") {
  CHECK(maxdiff(rz(0.0), Mat2::Identity()) < 1e-15);
  CHECK(maxdiff(rz(0.3) * rz(1.1), rz(1.4)) < 1e-14);
  CHECK(maxdiff(rz(2.0 * kPi), Mat2::Identity()) < 1e-14);
  CHECK(maxdiff(rz(kPi), pauli_z()) < 1e-14);
}

TEST_CASE("equatorial observable and its projector") {
  for (const double d : {0.0, 0.4, kPi / 2, 2.2, -1.0}) {
    const Mat2 m = std::cos(d) * pauli_x() + std::sin(d) * pauli_y();
    CHECK(maxdiff(meas_op(d), m) < 1e-14);
    CHECK(maxdiff(proj_plus(d), 0.5 * (Mat2::Identity() + m)) < 1e-14);

    Mat2 expected;
    expected << 0.5, 0.5 * std::exp(std::complex<double>(0, -d)),
        0.5 * std::exp(std::complex<double>(0, d)), 0.5;
    CHECK(maxdiff(proj_plus(d), expected) < 1e-14);
  }
}

TEST_CASE("apply conjugates") {
  const Mat4 rho = density(graph_state());
  const Mat4 u = kron(rz(0.8), rz(-0.3));
  CHECK(maxdiff(apply(u, rho), u * rho * u.adjoint()) < 1e-14);
}

TEST_CASE("density checks accept states and reject junk") {
  CHECK_NOTHROW(check_density(density(graph_state())));
  CHECK_NOTHROW(check_density(Mat4(0.25 * Mat4::Identity())));

  CHECK_THROWS_AS(check_density(Mat4(Mat4::Identity())), std::invalid_argument);  // trace 4

  Mat4 nonherm = density(graph_state());
  nonherm(0, 1) += std::complex<double>(0, 0.1);
  CHECK_THROWS_AS(check_density(nonherm), std::invalid_argument);

  Mat4 negative = Mat4::Zero();
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(check_density(negative), std::invalid_argument);
}

TEST_CASE("two-qubit measurement: deterministic branches") {
  PhiloxRng rng(1, 1);

  // qubit 1 in |+>: M(0) must report 0 and leave qubit 2 alone
  const Mat4 rho = density(kPlusZero);
  const Measurement m0 = measure_equatorial(rho, 1, 0.0, rng);
  CHECK(m0.outcome == 0);
  CHECK(m0.prob == doctest::Approx(1.0).epsilon(1e-12));
  Mat2 zero;
  zero << 1, 0, 0, 0;
  CHECK(maxdiff(m0.post, zero) < 1e-12);

  // M(pi) = -X: |+> is its -1 eigenvector, outcome 1
  PhiloxRng rng2(1, 2);
  const Measurement m1 = measure_equatorial(rho, 1, kPi, rng2);
  CHECK(m1.outcome == 1);
  CHECK(m1.prob == doctest::Approx(1.0).epsilon(1e-12));

  // qubit selector: measuring qubit 2 of |0>|+> keeps qubit 1's state
  Vec4 zp;
  zp << 1, 1, 0, 0;
  zp /= std::sqrt(2.0);
  PhiloxRng rng3(1, 3);
  const Measurement m2 = measure_equatorial(density(zp), 2, 0.0, rng3);
  CHECK(m2.outcome == 0);
  CHECK(maxdiff(m2.post, zero) < 1e-12);

  PhiloxRng rng4(1, 4);
  CHECK_THROWS_AS(measure_equatorial(Mat4(Mat4::Zero()), 1, 0.0, rng4), std::runtime_error);
  PhiloxRng rng5(1, 5);
  CHECK_THROWS_AS(measure_equatorial(rho, 3, 0.0, rng5), std::invalid_argument);
}

TEST_CASE("measurement consumes exactly one draw even when deterministic") {
  PhiloxRng used(9, 9), reference(9, 9);
  const Mat4 rho = density(kPlusZero);
  (void)measure_equatorial(rho, 1, 0.0, used);
  (void)reference.next_double();
  for (int i = 0; i < 8; ++i) CHECK(used.next_u64() == reference.next_u64());
}

TEST_CASE("graph-state measurement statistics match the reference distribution") {
  const oracle::M4 ref = oracle::ideal_graph_density();
  const Mat4 rho = density(graph_state());
  const double a = 0.7, b = -1.3;

  int counts[2][2] = {};
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    PhiloxRng rng(31, static_cast<std::uint64_t>(i) + 1);
    const Measurement first = measure_equatorial(rho, 1, a, rng);
    const Measurement1Q second = measure_equatorial(first.post, b, rng);
    ++counts[first.outcome][second.outcome];
  }
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      const double p = oracle::joint_prob(ref, a, b, m1, m2);
      const double sd = std::sqrt(p * (1 - p) / n);
      CHECK(std::abs(counts[m1][m2] / double(n) - p) < 5 * sd + 1e-9);
    }
  }
}

TEST_CASE("single-qubit measurement") {
  Mat2 plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  PhiloxRng rng(3, 1);
  const Measurement1Q m = measure_equatorial(plus, 0.0, rng);
  CHECK(m.outcome == 0);
  CHECK(m.prob == doctest::Approx(1.0).epsilon(1e-12));

  // orthogonal basis: fair coin
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    PhiloxRng r(4, static_cast<std::uint64_t>(i) + 1);
    ones += measure_equatorial(plus, kPi / 2, r).outcome;
  }
  CHECK(std::abs(ones - n / 2) < 5 * std::sqrt(n * 0.25));
}

TEST_CASE("partial trace") {
  const Mat4 rho = density(graph_state());
  CHECK(maxdiff(partial_trace(rho, 1), 0.5 * Mat2::Identity()) < 1e-14);
  CHECK(maxdiff(partial_trace(rho, 2), 0.5 * Mat2::Identity()) < 1e-14);

  const Mat4 prod = density(ket(1));  // |01>
  Mat2 zero, one;
  zero << 1, 0, 0, 0;
  one << 0, 0, 0, 1;
  CHECK(maxdiff(partial_trace(prod, 1), zero) < 1e-14);
  CHECK(maxdiff(partial_trace(prod, 2), one) < 1e-14);

  CHECK_THROWS_AS(partial_trace(rho, 0), std::invalid_argument);
}

TEST_CASE("fidelity") {
  const Mat4 g = density(graph_state());
  CHECK(fidelity(g, g) == doctest::Approx(1.0).epsilon(1e-12));

  Mat2 zero, one, plus;
  zero << 1, 0, 0, 0;
  one << 0, 0, 0, 1;
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity(Mat2(0.5 * Mat2::Identity()), zero) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity(Mat4(0.25 * Mat4::Identity()), g) == doctest::Approx(0.25).epsilon(1e-12));

  // symmetry and range on a mixed pair
  const Mat4 noisy = from_oracle(oracle::noisy_source_density(0.935, 0.493));
  const double f1 = fidelity(noisy, g), f2 = fidelity(g, noisy);
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-10));
  CHECK(f1 > 0.9);
  CHECK(f1 <= 1.0);

  CHECK_THROWS_AS(fidelity(g, zero), std::invalid_argument);
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(density(graph_state())) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(von_neumann_entropy(Mat4(0.25 * Mat4::Identity())) ==
        doctest::Approx(2.0).epsilon(1e-12));

  Mat2 diag = Mat2::Zero();
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  CHECK(von_neumann_entropy(diag) == doctest::Approx(0.8112781244591328).epsilon(1e-12));

  Mat2 bad = Mat2::Zero();
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(bad), std::invalid_argument);
}

TEST_CASE("holevo quantity") {
  const Mat4 g = density(graph_state());
  CHECK(holevo({{0.5, g}, {0.5, g}}) == doctest::Approx(0.0).epsilon(1e-10));

  // two orthogonal pure states at equal weight carry exactly one bit
  CHECK(holevo({{0.5, density(ket(0))}, {0.5, density(ket(1))}}) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(holevo({{0.6, g}, {0.6, g}}), std::invalid_argument);
  CHECK_THROWS_AS(holevo({{-0.5, g}, {1.5, g}}), std::invalid_argument);
}
