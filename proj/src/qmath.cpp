#include "vbqc/qmath.hpp"

#include <cmath>
#include <stdexcept>

namespace vbqc::qmath {

namespace {
const cplx kI(0.0, 1.0);
}

Vec4 graph_state() {
  Vec4 v;
  v << 0.5, 0.5, 0.5, -0.5;
  return v;
}

Vec4 bell_phi_plus() {
  Vec4 v;
  const double s = 1.0 / std::sqrt(2.0);
  v << s, 0.0, 0.0, s;
  return v;
}

Mat2 rz(double theta) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(kI * theta);
  return m;
}

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 hadamard() {
  Mat2 m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Mat4 cz() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1.0;
  return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Mat4 density(const Vec4& psi) { return psi * psi.adjoint(); }

Mat2 meas_op(double delta) {
  return std::cos(delta) * pauli_x() + std::sin(delta) * pauli_y();
}

Mat2 proj_plus(double delta) {
  Mat2 m;
  m << 0.5, 0.5 * std::exp(-kI * delta), 0.5 * std::exp(kI * delta), 0.5;
  return m;
}

Mat4 apply(const Mat4& u, const Mat4& rho) { return u * rho * u.adjoint(); }

void check_density(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > kHermTol ||
      std::abs(rho.trace().imag()) > kHermTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

namespace {

// Shared outcome sampling on the two raw branch weights. The caller's draw is
// consumed unconditionally so the rng stream advances identically no matter
// what the state is; near-certain branches are clamped so analytically-
// deterministic outcomes stay exact.
int sample_outcome(double w0, double w1, double u) {
  if (w0 < 1e-15 && w1 < 1e-15) {
    throw std::runtime_error("measurement: both branch probabilities vanish");
  }
  const double p0 = w0 / (w0 + w1);
  if (p0 > 1.0 - 1e-12) return 0;
  if (p0 < 1e-12) return 1;
  return u < p0 ? 0 : 1;
}

}  // namespace

Measurement measure_equatorial(const Mat4& rho, int qubit, double delta,
                               PhiloxRng& rng) {
  if (qubit != 1 && qubit != 2) {
    throw std::invalid_argument("measure_equatorial: qubit must be 1 or 2");
  }
  const Mat2 p = proj_plus(delta);
  const Mat4 k0 = (qubit == 1) ? kron(p, Mat2::Identity())
                               : kron(Mat2::Identity(), p);
  const double w0 = std::max((k0 * rho).trace().real(), 0.0);
  const double w1 = std::max(rho.trace().real() - w0, 0.0);

  const double u = rng.next_double();
  const int outcome = sample_outcome(w0, w1, u);

  const Mat4 k = (outcome == 0) ? k0
                                : ((qubit == 1) ? kron(Mat2::Identity() - p, Mat2::Identity())
                                                : kron(Mat2::Identity(), Mat2::Identity() - p));
  const double prob = (outcome == 0 ? w0 : w1) / (w0 + w1);
  const Mat4 proj = k * rho * k / (outcome == 0 ? w0 : w1);

  // remove the measured qubit
  Mat2 rest;
  if (qubit == 1) {
    rest << proj(0, 0) + proj(2, 2), proj(0, 1) + proj(2, 3),
            proj(1, 0) + proj(3, 2), proj(1, 1) + proj(3, 3);
  } else {
    rest << proj(0, 0) + proj(1, 1), proj(0, 2) + proj(1, 3),
            proj(2, 0) + proj(3, 1), proj(2, 2) + proj(3, 3);
  }
  return {outcome, rest, prob};
}

Measurement1Q measure_equatorial(const Mat2& rho, double delta, PhiloxRng& rng) {
  const double w0 = std::max((proj_plus(delta) * rho).trace().real(), 0.0);
  const double w1 = std::max(rho.trace().real() - w0, 0.0);
  const double u = rng.next_double();
  const int outcome = sample_outcome(w0, w1, u);
  return {outcome, (outcome == 0 ? w0 : w1) / (w0 + w1)};
}

Mat2 partial_trace(const Mat4& rho, int keep) {
  Mat2 m;
  if (keep == 1) {
    m << rho(0, 0) + rho(1, 1), rho(0, 2) + rho(1, 3),
         rho(2, 0) + rho(3, 1), rho(2, 2) + rho(3, 3);
  } else if (keep == 2) {
    m << rho(0, 0) + rho(2, 2), rho(0, 1) + rho(2, 3),
         rho(1, 0) + rho(3, 2), rho(1, 1) + rho(3, 3);
  } else {
    throw std::invalid_argument("partial_trace: keep must be 1 or 2");
  }
  return m;
}

namespace {

// Eigenvalues this far (relatively) below the largest one are eigensolver
// noise; sqrt would amplify them from ~1e-16 to ~1e-8, so zero them first.
constexpr double kSqrtNoiseCut = 1e-14;

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double cut = kSqrtNoiseCut * std::max(ev.maxCoeff(), 0.0);
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPsdTol) {
      throw std::invalid_argument("matrix square root of a non-PSD matrix");
    }
    ev(i) = ev(i) <= cut ? 0.0 : std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Eigen::MatrixXcd sa = matrix_sqrt_psd(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sa * b * sa,
                                                     Eigen::EigenvaluesOnly);
  const double cut = kSqrtNoiseCut * std::max(es.eigenvalues().maxCoeff(), 0.0);
  double sum = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev < -kPsdTol) {
      throw std::invalid_argument("fidelity: inner matrix not PSD");
    }
    sum += ev <= cut ? 0.0 : std::sqrt(ev);
  }
  const double f = sum * sum;
  return std::min(f, 1.0);
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev < -kPsdTol) {
      throw std::invalid_argument("entropy of a non-PSD matrix");
    }
    if (ev > 0.0) s -= ev * std::log2(ev);
  }
  return s;
}

double holevo(const std::vector<std::pair<double, Mat4>>& ensemble) {
  double total_p = 0.0;
  Mat4 avg = Mat4::Zero();
  double mean_entropy = 0.0;
  for (const auto& [p, rho] : ensemble) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("holevo: probability outside [0,1]");
    }
    total_p += p;
    avg += p * rho;
    mean_entropy += p * von_neumann_entropy(rho);
  }
  if (std::abs(total_p - 1.0) > 1e-9) {
    throw std::invalid_argument("holevo: probabilities do not sum to 1");
  }
  double chi = von_neumann_entropy(avg) - mean_entropy;
  if (chi < 0.0 && chi > -1e-9) chi = 0.0;
  return chi;
}

}  // namespace vbqc::qmath
