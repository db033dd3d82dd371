// Dense pure-state representation for the atom + emitted-photon register.
//
// Bit convention: photon k (k = 1 is the first emitted) occupies bit k-1 of
// the basis index; the atom, when present, occupies the highest bit. The
// computational encoding is |+>, |sigma^+> -> bit 0 and |->, |sigma^-> -> bit 1.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace photontrain {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

// Atom-qubit -> (atom-qubit x photon) map. Columns are indexed by the atom
// input |+>, |->; rows by (atom', photon) pairs in the order
// (+,s+), (+,s-), (-,s+), (-,s-).
using Isometry = Eigen::Matrix<Complex, 4, 2>;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kOperatorTol = 1e-10;

struct PureState {
  int n_photons = 0;
  bool has_atom = false;
  Vector amps;

  int n_qubits() const { return n_photons + (has_atom ? 1 : 0); }
  Eigen::Index dim() const { return amps.size(); }
  double norm_sq() const { return amps.squaredNorm(); }
};

enum class Pauli { I, X, Y, Z };

struct PauliString {
  std::vector<Pauli> ops;  // ops[k] acts on qubit k+1 (bit k)

  static PauliString from_string(const std::string& s);
  std::string str() const;
};

// Normalized one-qubit atom state a_plus|+> + a_minus|->. Throws on the
// zero vector.
PureState atom_state(Complex a_plus, Complex a_minus);

// Appends one photon: the atom amplitudes are replaced by the 4-dimensional
// image of v on (atom x new photon); the new photon occupies bit n_photons.
// Throws if the state has no atom or v is not an isometry.
PureState apply_isometry(const PureState& state, const Isometry& v);

bool is_isometry(const Isometry& v, double tol = kOperatorTol);

// Projective measurement of one qubit in the computational basis. Outcome is
// 0 iff random_draw < P(bit = 0); the collapsed state is renormalized.
// qubit indexes photons 1..n_photons; pass kAtomQubit for the atom.
inline constexpr int kAtomQubit = -1;
std::pair<int, PureState> measure_qubit(const PureState& state, int qubit,
                                        double random_draw);

// Marginal probability of bit value 0 on the given qubit.
double marginal_p0(const PureState& state, int qubit);

// Removes a qubit that is in a definite computational basis state (all
// amplitude on one bit value). Throws if the qubit is still entangled.
PureState remove_qubit(const PureState& state, int qubit);

// |<a|b>|^2, global-phase invariant. Throws on dimension mismatch.
double fidelity(const PureState& a, const PureState& b);

Complex overlap(const PureState& a, const PureState& b);

// <state| P |state>. The string length must equal the qubit count.
double pauli_expectation(const PureState& state, const PauliString& p);

// Applies a single-qubit unitary to one tensor factor.
PureState apply_local(const PureState& state, int qubit, const Matrix2& u);

// Largest squared Schmidt coefficient of the atom-vs-photons bipartition.
double atom_schmidt_weight(const PureState& state);

namespace gates {
Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
Matrix2 phase_s();
// The 24-element single-qubit Clifford group (exact representatives up to
// global phase).
const std::vector<Matrix2>& clifford_group();
}  // namespace gates

}  // namespace photontrain
