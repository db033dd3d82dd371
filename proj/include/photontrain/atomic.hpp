// Derivation of the effective pump isometries from atomic structure:
// level schemes for 40Ca and 87Rb, dipole-amplitude tables from
// Wigner/Clebsch-Gordan machinery, pulse compilation and dark-state checks.

#pragma once

#include "photontrain/protocol.hpp"
#include "photontrain/statevec.hpp"

#include <string>
#include <vector>

namespace photontrain::atomic {

// Half-integer quantum numbers are stored as doubled integers; two_f = -1
// marks the absence of hyperfine structure.
struct Sublevel {
  std::string term;
  int two_j = 0;
  int two_f = -1;
  int two_m = 0;
  std::string energy_tag;

  std::string label() const;
};

struct Transition {
  int upper = 0;  // sublevel indices
  int lower = 0;
  int q = 0;      // -1, 0, +1
  double amplitude = 0.0;
};

struct LevelScheme {
  std::string species;
  std::vector<Sublevel> sublevels;
  std::vector<Transition> transitions;

  int find(const std::string& term, int two_f, int two_m) const;
  double amplitude(int upper, int lower, int q) const;
};

// 4S_1/2 and 4P_1/2 Zeeman sublevels; amplitudes from Clebsch-Gordan
// coefficients for the J = 1/2 <-> J = 1/2 dipole transition.
LevelScheme build_ca40();

// 5S_1/2 F = 1,2 and 5P_1/2 F' = 1,2 with all Zeeman sublevels; amplitudes
// via the 3j * 6j hyperfine reduction with a unit shared reduced element
// (arbitrary units: only ratios and signs are contractual).
LevelScheme build_rb87();

struct PulseSpec {
  enum class Kind {
    LinearPolarizedExcitation,  // angle alpha to the cavity axis
    Stirap,                     // rotation angle theta
    BichromaticExcitation,      // pulse area
    RamanRotation,              // pulse area, detuning
  };
  Kind kind;
  double angle = 0.0;
  double area = 0.0;
  double detuning = 0.0;

  static PulseSpec linear_excitation(double alpha);
  static PulseSpec stirap(double theta);
  static PulseSpec bichromatic(double area);
  static PulseSpec raman(double area, double detuning = 0.0);
};

struct CompiledIsometry {
  Isometry v;                      // exact isometry, canonical global phase
  Eigen::Vector2d branch_weights;  // per-column cavity-coupled decay weight
  Matrix2 frame_atom_out;          // documented local frame such that
  Matrix2 frame_photon_out;        // (atom_out (x) photon_out) * v matches Eq. (1)

  Isometry corrected() const;
};

// Compiles a pulse recipe into the effective qubit -> (qubit x photon)
// isometry: ground-manifold unitary steps, then the excitation amplitudes of
// the final pulse, then projection of the decay onto cavity-supported
// sigma+- photons, renormalized to an exact isometry. Throws on unsupported
// step combinations and on excitation that cannot decay into the cavity.
CompiledIsometry compile_pulse_sequence(const LevelScheme& scheme,
                                        const std::vector<PulseSpec>& steps);

CompiledIsometry compile_ca40(double alpha);
CompiledIsometry rb_full_sequence(protocol::StateKind kind);

// Net ground-manifold STIRAP rotation on {|1,+1>,|2,+1>,|1,-1>,|2,-1>}.
// The two Zeeman channels rotate in opposite effective senses and stop at
// supplementary angles: at theta* the images are +|eta+> and -|eta->.
Eigen::Matrix4cd stirap_map(double theta);
double stirap_theta_star();

// pi/2-area Raman rotation on {|1,+1>, |1,-1>}.
Matrix2 raman_rotation_map(double area);

// 1/Delta - 1/(Delta + omega0'); requires Delta > 0, omega0' > 0.
double effective_rabi(double delta, double omega0p);

struct DarkStateReport {
  double c_2p0_eta_plus = 0.0;   // <2',0|H|eta+>
  double c_2p0_eta_minus = 0.0;
  double c_1p0_eta_plus = 0.0;   // <1',0|H|eta+> (broadened-linewidth channel)
  double c_1p0_eta_minus = 0.0;
  double perp_overlap_plus = 0.0;   // <eta_perp|eta+>
  double perp_overlap_minus = 0.0;
  double coupling_eta_plus = 0.0;   // <2',+2|H|eta+>
  double coupling_eta_minus = 0.0;  // <2',-2|H|eta->
  double coupling_eta_perp = 0.0;   // <2',0|H|eta_perp>
  double max_stray_excitation = 0.0;  // |eta+-> overlap with any other 2'/1' level
  bool pass = false;
};

DarkStateReport dark_state_check(const LevelScheme& rb);

}  // namespace photontrain::atomic
