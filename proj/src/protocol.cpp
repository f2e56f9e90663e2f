#include "vbqc/protocol.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace vbqc {

using qmath::Mat2;
using qmath::Mat4;

ClientSecrets ClientSecrets::draw(PhiloxRng& rng) {
  ClientSecrets s;
  s.theta1 = Angle8(static_cast<int>(rng.next_uint(8)));
  s.theta2 = Angle8(static_cast<int>(rng.next_uint(8)));
  s.b1 = rng.next_bit();
  s.b2 = rng.next_bit();
  s.r1 = rng.next_bit();
  s.r2 = rng.next_bit();
  return s;
}

FFOutput ff_lookup(const FFInput& in) {
  if ((in.m1_plus ^ in.m1_minus) != 1) {
    throw std::invalid_argument("ff_lookup: detector pair must be one-hot");
  }
  FFOutput out;
  // unmask the first outcome: r1 = 1 swaps the detector roles
  out.m1_true_plus = in.r1 ? in.m1_minus : in.m1_plus;
  out.m1_true_minus = in.r1 ? in.m1_plus : in.m1_minus;
  const int m1_true = out.m1_true_minus;

  const Angle8 a{in.A}, b{in.B};
  const Angle8 d2 = in.c ? a + b : a + angle_signed(b, m1_true);

  // The basis box can only realize phases in [0, π); the ideal phase shift
  // −δ₂ splits into that phase plus a leftover π accounted by the f bit.
  const int ideal = (-d2).code();
  out.f = ideal >= 4 ? 1 : 0;
  const int pc = ideal % 4;
  static constexpr int kVoltage[4] = {0b000, 0b001, 0b010, 0b100};
  out.V = kVoltage[pc];
  return out;
}

int pc_code_from_voltage(int v) {
  switch (v) {
    case 0b000: return 0;
    case 0b001: return 1;
    case 0b010: return 2;
    case 0b100: return 3;
  }
  throw std::invalid_argument("voltage code must be one-hot or zero");
}

Angle8 delta2_from_ff(int pc_code, int f) {
  return -Angle8(pc_code + 4 * (f & 1));
}

std::pair<Angle8, Angle8> theta_prime(const ClientSecrets& a, const ClientSecrets& b) {
  const Angle8 tp1 =
      angle_signed(a.theta1, b.b1) + b.theta1 + Angle8(4 * (a.b2 ^ b.b2));
  const Angle8 tp2 =
      angle_signed(a.theta2, b.b2) + b.theta2 + Angle8(4 * (a.b1 ^ b.b1));
  return {tp1, tp2};
}

Angle8 delta1(Angle8 theta_prime_1, const Algorithm& alg, int r1, RoundType t) {
  Angle8 d = theta_prime_1 + alg.phi1;
  if (t == RoundType::Computation) d = angle_add_pi(d, alg.x1);
  return angle_add_pi(d, r1);
}

std::pair<Angle8, Angle8> delta2_branches(Angle8 theta_prime_2, const Algorithm& alg,
                                          int r2, RoundType t) {
  if (t == RoundType::Test) {
    const Angle8 d = angle_add_pi(theta_prime_2 + alg.phi2, r2);
    return {d, d};
  }
  const Angle8 base = angle_add_pi(angle_add_pi(theta_prime_2, alg.x2), r2);
  return {base + alg.phi2, base - alg.phi2};
}

RunDevices RunDevices::ideal() {
  RunDevices d;
  d.source = qmath::density(qmath::graph_state());
  d.noise = NoiseParams{};
  d.ideal_devices = true;
  return d;
}

RunDevices RunDevices::noisy(const NoiseParams& p) {
  RunDevices d;
  d.source = noisy_source_state(p);
  d.noise = p;
  d.ideal_devices = false;
  return d;
}

RoundRecord run_round(const Algorithm& alg, RoundType type, const Mat4& source_state,
                      const DeviceErrors& errors, const ServerBehavior& behavior,
                      PhiloxRng& rng, FFMode mode) {
  RoundRecord rec;
  rec.round_type = type;

  // t0: both clients mask their qubits; the TTP derives the blind angles.
  rec.secrets_a = ClientSecrets::draw(rng);
  rec.secrets_b = ClientSecrets::draw(rng);
  const auto [tp1, tp2] = theta_prime(rec.secrets_a, rec.secrets_b);
  rec.theta_prime1 = tp1;
  rec.theta_prime2 = tp2;
  const int r1 = rec.secrets_a.r1 ^ rec.secrets_b.r1;
  const int r2 = rec.secrets_a.r2 ^ rec.secrets_b.r2;
  rec.delta_1 = delta1(tp1, alg, r1, type);

  // TTP's feed-forward inputs: δ₂ = (1−c)(A ± B) + c(A + B)
  const int c = (type == RoundType::Test) ? 1 : 0;
  Angle8 ff_a = angle_add_pi(tp2, r2);
  if (type == RoundType::Computation) ff_a = angle_add_pi(ff_a, alg.x2);
  const Angle8 ff_b = alg.phi2;

  const Mat4* rho = &source_state;
  if (const auto* replace = std::get_if<StateReplace>(&behavior)) {
    rho = &replace->rho;
  }
  Mat2 u1 = perturbed_client_unitary(rec.secrets_a.theta1, rec.secrets_a.b1,
                                     errors.lc[0][0]);
  u1 = perturbed_client_unitary(rec.secrets_b.theta1, rec.secrets_b.b1,
                                errors.lc[1][0]) * u1;
  Mat2 u2 = perturbed_client_unitary(rec.secrets_a.theta2, rec.secrets_a.b2,
                                     errors.lc[0][1]);
  u2 = perturbed_client_unitary(rec.secrets_b.theta2, rec.secrets_b.b2,
                                errors.lc[1][1]) * u2;
  const Mat4 prepared = qmath::apply(qmath::kron(u1, u2), *rho);

  // t1: first measurement, then the feed-forward box.
  const double a1 = rec.delta_1.radians() + errors.station[0];
  const auto m1 = server_measure(behavior, prepared, 1, a1, rng);
  rec.m1_raw = m1.outcome;

  FFInput ff;
  ff.A = ff_a.code();
  ff.B = ff_b.code();
  ff.r1 = r1;
  ff.m1_plus = rec.m1_raw == 0 ? 1 : 0;
  ff.m1_minus = rec.m1_raw == 0 ? 0 : 1;
  ff.c = c;
  const FFOutput out = ff_lookup(ff);
  rec.m1_true = out.m1_true_minus;
  rec.delta_2 = c ? Angle8(ff.A) + ff_b
                  : Angle8(ff.A) + angle_signed(ff_b, rec.m1_true);

  // t2: second measurement. Table mode sets the physical basis from the
  // voltage code and lets f flip the reported bit; direct mode measures at
  // δ₂ itself and records f = 0 so m2_true = m2 ⊕ r2 ⊕ f holds either way.
  const double perturb2 = errors.station[1] + errors.pc_offset;
  if (mode == FFMode::Table) {
    const int pc = pc_code_from_voltage(out.V);
    const double a2 = (-Angle8(pc)).radians() + perturb2;
    rec.m2_raw = server_measure(behavior, m1.post, 2, a2, rng);
    rec.f = out.f;
  } else {
    const double a2 = rec.delta_2.radians() + perturb2;
    rec.m2_raw = server_measure(behavior, m1.post, 2, a2, rng);
    rec.f = 0;
  }
  rec.m2_true = rec.m2_raw ^ r2 ^ rec.f;
  return rec;
}

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t n) {
  unsigned t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("VBQC_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v < 1) throw std::invalid_argument("VBQC_THREADS must be >= 1");
      t = static_cast<unsigned>(v);
    } else {
      t = std::thread::hardware_concurrency();
      if (t == 0) t = 1;
    }
  }
  if (n < t) t = static_cast<unsigned>(n);
  return t == 0 ? 1 : t;
}

}  // namespace

Transcript run_protocol(const Algorithm& alg, std::uint64_t n, double test_fraction,
                        const RunDevices& devices, const ServerBehavior& behavior,
                        std::uint64_t seed, FFMode mode, unsigned threads) {
  if (n < 1) throw std::invalid_argument("round count must be >= 1");
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie strictly between 0 and 1");
  }

  Transcript t;
  t.algorithm = alg;
  t.n = n;
  t.test_fraction = test_fraction;
  t.ff_mode = mode;
  t.seed = seed;
  t.rounds.resize(n);

  // Round i consumes only the stream keyed (seed, i+1), in a fixed order:
  // round-type draw, device errors, then everything inside run_round. Each
  // round is therefore reproducible in isolation, and the partition of rounds
  // over threads cannot change the transcript.
  const auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      PhiloxRng rng(seed, i + 1);
      const RoundType type = rng.next_double() < test_fraction ? RoundType::Test
                                                               : RoundType::Computation;
      DeviceErrors errors;
      if (!devices.ideal_devices) {
        errors = sample_device_errors(devices.noise, rng);
      }
      RoundRecord rec = run_round(alg, type, devices.source, errors, behavior, rng, mode);
      rec.t0 = 3 * i;
      rec.t1 = 3 * i + 1;
      rec.t2 = 3 * i + 2;
      t.rounds[i] = rec;
    }
  };

  const unsigned nthreads = resolve_threads(threads, n);
  if (nthreads <= 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::uint64_t chunk = (n + nthreads - 1) / nthreads;
    for (unsigned k = 0; k < nthreads; ++k) {
      const std::uint64_t begin = k * chunk;
      const std::uint64_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return t;
}

}  // namespace vbqc
