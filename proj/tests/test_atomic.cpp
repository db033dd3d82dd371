#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "photontrain/atomic.hpp"
#include "photontrain/protocol.hpp"

#include <cmath>

using namespace photontrain;
using namespace photontrain::atomic;

namespace {

constexpr double kSqrt3Over3 = 0.5773502691896257645;
constexpr double kSqrt6Over3 = 0.8164965809277260327;

double drive(const LevelScheme& s, int e, int g) {
  return s.amplitude(e, g, +1) + s.amplitude(e, g, -1);
}

}  // namespace

TEST_CASE("ca40 dipole table") {
  const LevelScheme ca = build_ca40();
  const int sp = ca.find("4S1/2", -1, 1), sm = ca.find("4S1/2", -1, -1);
  const int pp = ca.find("4P1/2", -1, 1), pm = ca.find("4P1/2", -1, -1);
  REQUIRE(sp >= 0); REQUIRE(sm >= 0); REQUIRE(pp >= 0); REQUIRE(pm >= 0);

  // pi couplings: equal magnitude, opposite sign.
  CHECK(ca.amplitude(pp, sp, 0) == doctest::Approx(kSqrt3Over3).epsilon(1e-14));
  CHECK(ca.amplitude(pm, sm, 0) == doctest::Approx(-kSqrt3Over3).epsilon(1e-14));
  // sigma couplings: equal magnitude, opposite sign.
  CHECK(ca.amplitude(pp, sm, +1) == doctest::Approx(kSqrt6Over3).epsilon(1e-14));
  CHECK(ca.amplitude(pm, sp, -1) == doctest::Approx(-kSqrt6Over3).epsilon(1e-14));
  // Selection rules: nothing stored off the q = m_e - m_g diagonal.
  CHECK(ca.amplitude(pp, sp, +1) == 0.0);
  CHECK(ca.amplitude(pp, sm, 0) == 0.0);
  // Sum rule out of each excited sublevel.
  for (int e : {pp, pm}) {
    double sum = 0.0;
    for (int g : {sp, sm})
      for (int q = -1; q <= 1; ++q) {
        const double t = ca.amplitude(e, g, q);
        sum += t * t;
      }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("rb87 dipole table") {
  const LevelScheme rb = build_rb87();
  REQUIRE(rb.sublevels.size() == 16);  // 3 + 5 ground, 3 + 5 excited

  const int g1p = rb.find("5S1/2", 2, 2), g2p = rb.find("5S1/2", 4, 2);
  const int g1m = rb.find("5S1/2", 2, -2), g2m = rb.find("5S1/2", 4, -2);
  const int e2p0 = rb.find("5P1/2", 4, 0);
  const int e2pp = rb.find("5P1/2", 4, 4), e2pm = rb.find("5P1/2", 4, -4);

  // Values frozen from an exact 3j*6j evaluation (unit reduced element).
  CHECK(rb.amplitude(e2p0, g1p, -1) ==
        doctest::Approx(-std::sqrt(3.0) / 6.0).epsilon(1e-14));
  CHECK(rb.amplitude(e2p0, g2p, -1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(rb.amplitude(e2p0, g1m, +1) ==
        doctest::Approx(-std::sqrt(3.0) / 6.0).epsilon(1e-14));
  CHECK(rb.amplitude(e2p0, g2m, +1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rb.amplitude(e2pp, g1p, +1) ==
        doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(rb.amplitude(e2pm, g1m, -1) ==
        doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-14));

  // The sigma-leg ratio that forces the dark states: the two channels have
  // magnitude ratio sqrt(3) with m-dependent relative sign, so that
  // -sqrt(3)|1,m> +- |2,m> decouples from |2',0>.
  const double ratio_p =
      rb.amplitude(e2p0, g2p, -1) / rb.amplitude(e2p0, g1p, -1);
  const double ratio_m =
      rb.amplitude(e2p0, g2m, +1) / rb.amplitude(e2p0, g1m, +1);
  CHECK(ratio_p == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(ratio_m == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));

  // Sum rule out of every excited sublevel.
  for (std::size_t e = 0; e < rb.sublevels.size(); ++e) {
    if (rb.sublevels[e].term != "5P1/2") continue;
    double sum = 0.0;
    for (const Transition& t : rb.transitions)
      if (t.upper == static_cast<int>(e)) sum += t.amplitude * t.amplitude;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Selection rules hold for every stored entry.
  for (const Transition& t : rb.transitions) {
    CHECK(rb.sublevels[t.upper].two_m - rb.sublevels[t.lower].two_m ==
          2 * t.q);
    CHECK(std::abs(rb.sublevels[t.upper].two_f -
                   rb.sublevels[t.lower].two_f) <= 2);
  }
}

TEST_CASE("dark state report") {
  const DarkStateReport rep = dark_state_check(build_rb87());
  CHECK(rep.pass);
  CHECK(std::abs(rep.c_2p0_eta_plus) < 1e-12);
  CHECK(std::abs(rep.c_2p0_eta_minus) < 1e-12);
  CHECK(std::abs(rep.c_1p0_eta_plus) < 1e-12);
  CHECK(std::abs(rep.c_1p0_eta_minus) < 1e-12);
  CHECK(std::abs(rep.perp_overlap_plus) < 1e-12);
  CHECK(std::abs(rep.perp_overlap_minus) < 1e-12);
  CHECK(rep.max_stray_excitation < 1e-12);
  // |eta+-> drive into |2',+-2> with strength sqrt(6)/3; the bright
  // combination reaches |2',0> with strength sqrt(3)/3.
  CHECK(std::abs(rep.coupling_eta_plus) ==
        doctest::Approx(kSqrt6Over3).epsilon(1e-12));
  CHECK(std::abs(rep.coupling_eta_minus) ==
        doctest::Approx(kSqrt6Over3).epsilon(1e-12));
  CHECK(rep.coupling_eta_perp ==
        doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("stirap map") {
  CHECK((stirap_map(0.0) - Eigen::Matrix4cd::Identity()).norm() < 1e-14);
  const Eigen::Matrix4cd u = stirap_map(stirap_theta_star());
  // |1,+1> -> (-sqrt(3)|1,+1> + |2,+1>)/2 = +|eta+>.
  CHECK(u(0, 0).real() == doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(u(1, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  // |1,-1> -> (sqrt(3)|1,-1> + |2,-1>)/2 = -|eta->.
  CHECK(u(2, 2).real() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(u(3, 2).real() == doctest::Approx(0.5).epsilon(1e-14));
  // No cross-talk between the two Zeeman channels; unitary at any angle.
  CHECK(u.block<2, 2>(0, 2).norm() == 0.0);
  for (double theta : {0.3, 1.1, 2.9}) {
    const Eigen::Matrix4cd v = stirap_map(theta);
    CHECK((v.adjoint() * v - Eigen::Matrix4cd::Identity()).norm() < 1e-13);
  }
}

TEST_CASE("raman rotation map") {
  CHECK((raman_rotation_map(0.0) - Matrix2::Identity()).norm() < 1e-14);
  const Matrix2 r = raman_rotation_map(M_PI / 2);
  // |1,+1> -> (|1,1> + |1,-1>)/sqrt(2); |1,-1> -> (-|1,1> + |1,-1>)/sqrt(2).
  CHECK(r(0, 0).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(r(1, 0).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(r(0, 1).real() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
  CHECK(r(1, 1).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  for (double area : {0.4, 2.2}) {
    const Matrix2 v = raman_rotation_map(area);
    CHECK((v.adjoint() * v - Matrix2::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("effective Rabi frequency") {
  const double omega = 3.7;
  CHECK(effective_rabi(omega / 2, omega) ==
        doctest::Approx((4.0 / 3.0) / omega).epsilon(1e-12));
  CHECK(effective_rabi(1e6 * omega, omega) < 1e-6 / omega);
  double prev = effective_rabi(0.1, omega);
  for (double d = 0.2; d < 20.0; d += 0.1) {
    const double cur = effective_rabi(d, omega);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(effective_rabi(0.0, omega), std::invalid_argument);
  CHECK_THROWS_AS(effective_rabi(-1.0, omega), std::invalid_argument);
}

TEST_CASE("ca40 compiled isometry across the polarization scan") {
  for (double alpha = 0.0; alpha <= M_PI / 2 + 1e-9; alpha += 0.01) {
    const CompiledIsometry c = compile_ca40(alpha);
    CAPTURE(alpha);
    CHECK(is_isometry(c.v, 1e-10));
    CHECK(is_isometry(c.corrected(), 1e-10));
    // Two thirds of the excited population decays into the cavity modes.
    CHECK(c.branch_weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(c.branch_weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("ca40 general-alpha columns") {
  // |S,+1/2> -> sin(a)|S,+1/2>|s-> + cos(a)|S,-1/2>|s+> up to the frame.
  for (double alpha : {0.3, 0.7, 1.2}) {
    const CompiledIsometry c = compile_ca40(alpha);
    CHECK(std::abs(c.v(1, 0).real() - std::sin(alpha)) < 1e-12);
    CHECK(std::abs(c.v(2, 0).real() - std::cos(alpha)) < 1e-12);
    CHECK(std::abs(c.v(0, 0)) + std::abs(c.v(3, 0)) < 1e-12);
    // The |-> column lives on the same rows with swapped trig weights.
    CHECK(std::abs(std::abs(c.v(1, 1).real()) - std::cos(alpha)) < 1e-12);
    CHECK(std::abs(std::abs(c.v(2, 1).real()) - std::sin(alpha)) < 1e-12);
  }
}

TEST_CASE("ca40 endpoints reproduce the pump isometries through the frame") {
  const CompiledIsometry ghz = compile_ca40(0.0);
  CHECK((ghz.frame_atom_out - gates::pauli_x()).norm() < 1e-14);
  CHECK((ghz.frame_photon_out - gates::pauli_z()).norm() < 1e-14);
  CHECK((ghz.corrected() - protocol::t_ghz()).norm() < 1e-10);
  const CompiledIsometry lc = compile_ca40(M_PI / 4);
  CHECK((lc.corrected() - protocol::t_lc()).norm() < 1e-10);
}

TEST_CASE("rb87 full sequences reproduce the pump isometries exactly") {
  const CompiledIsometry ghz = rb_full_sequence(protocol::StateKind::GHZ);
  CHECK((ghz.frame_atom_out - gates::identity()).norm() == 0.0);
  CHECK((ghz.corrected() - protocol::t_ghz()).norm() < 1e-10);
  // Half the excited population reaches the cavity-resonant F=1 sigma decay.
  CHECK(ghz.branch_weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ghz.branch_weights[1] == doctest::Approx(0.5).epsilon(1e-12));

  const CompiledIsometry lc =
      rb_full_sequence(protocol::StateKind::LinearCluster);
  CHECK((lc.corrected() - protocol::t_lc()).norm() < 1e-10);
  CHECK(lc.branch_weights[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("compiled isometries drive the full protocol end to end") {
  using protocol::StateKind;
  const protocol::IsometryPair ca{compile_ca40(0.0).corrected(),
                                  compile_ca40(M_PI / 4).corrected()};
  const protocol::IsometryPair rb{
      rb_full_sequence(StateKind::GHZ).corrected(),
      rb_full_sequence(StateKind::LinearCluster).corrected()};
  for (const auto& isos : {ca, rb}) {
    for (int n = 1; n <= 8; ++n)
      for (double draw : {0.25, 0.75}) {
        const auto ghz = protocol::run_protocol(StateKind::GHZ, n, draw, isos);
        const auto us =
            protocol::correction_unitaries(StateKind::GHZ, n, ghz.mu);
        CHECK(fidelity(protocol::apply_corrections(ghz.final_state, us),
                       protocol::canonical_ghz(n, 0)) >= 1.0 - 1e-9);
        const auto lc =
            protocol::run_protocol(StateKind::LinearCluster, n, draw, isos);
        const auto vs = protocol::correction_unitaries(
            StateKind::LinearCluster, n, lc.mu);
        CHECK(fidelity(protocol::apply_corrections(lc.final_state, vs),
                       protocol::cz_cluster(n)) >= 1.0 - 1e-9);
      }
  }
}

TEST_CASE("pulse compiler rejects unsupported recipes") {
  CHECK_THROWS_AS(
      compile_pulse_sequence(build_ca40(), {PulseSpec::stirap(0.1)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      compile_pulse_sequence(build_rb87(),
                             {PulseSpec::linear_excitation(0.1),
                              PulseSpec::bichromatic(M_PI)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      compile_pulse_sequence(build_rb87(), {PulseSpec::stirap(0.1)}),
      std::invalid_argument);
  LevelScheme unknown;
  unknown.species = "3He";
  CHECK_THROWS_AS(compile_pulse_sequence(unknown, {}), std::invalid_argument);
}

TEST_CASE("sublevel labels are human-readable") {
  const LevelScheme rb = build_rb87();
  CHECK(rb.sublevels[rb.find("5S1/2", 2, 2)].label() == "5S1/2 F=1 m=+1");
  CHECK(rb.sublevels[rb.find("5P1/2", 4, -4)].label() == "5P1/2 F=2 m=-2");
  const LevelScheme ca = build_ca40();
  CHECK(ca.sublevels[ca.find("4P1/2", -1, -1)].label() == "4P1/2 m=-1/2");
}
