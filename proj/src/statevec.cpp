#include "photontrain/statevec.hpp"

#include <cmath>
#include <stdexcept>

namespace photontrain {

namespace {

int bit_of(const PureState& state, int qubit) {
  if (qubit == kAtomQubit) {
    if (!state.has_atom) throw std::out_of_range("state has no atom qubit");
    return state.n_photons;
  }
  if (qubit < 1 || qubit > state.n_photons)
    throw std::out_of_range("photon index out of range");
  return qubit - 1;
}

void check_normalized(const PureState& state) {
  if (std::abs(state.norm_sq() - 1.0) > 1e-9)
    throw std::invalid_argument("state is not normalized");
}

}  // namespace

PauliString PauliString::from_string(const std::string& s) {
  PauliString p;
  p.ops.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': p.ops.push_back(Pauli::I); break;
      case 'X': p.ops.push_back(Pauli::X); break;
      case 'Y': p.ops.push_back(Pauli::Y); break;
      case 'Z': p.ops.push_back(Pauli::Z); break;
      default: throw std::invalid_argument("bad Pauli character");
    }
  }
  return p;
}

std::string PauliString::str() const {
  std::string s;
  for (Pauli op : ops) s += "IXYZ"[static_cast<int>(op)];
  return s;
}

PureState atom_state(Complex a_plus, Complex a_minus) {
  const double n2 = std::norm(a_plus) + std::norm(a_minus);
  if (n2 <= 0.0) throw std::invalid_argument("zero atom state");
  PureState s;
  s.n_photons = 0;
  s.has_atom = true;
  s.amps = Vector(2);
  s.amps << a_plus / std::sqrt(n2), a_minus / std::sqrt(n2);
  return s;
}

bool is_isometry(const Isometry& v, double tol) {
  return (v.adjoint() * v - Eigen::Matrix2cd::Identity()).norm() <= tol;
}

PureState apply_isometry(const PureState& state, const Isometry& v) {
  if (!state.has_atom) throw std::invalid_argument("state has no atom");
  if (!is_isometry(v)) throw std::invalid_argument("matrix is not an isometry");

  const int atom_bit = state.n_photons;      // current atom position
  const int photon_bit = state.n_photons;    // new photon position
  const int new_atom_bit = state.n_photons + 1;

  PureState out;
  out.n_photons = state.n_photons + 1;
  out.has_atom = true;
  out.amps = Vector::Zero(state.dim() * 2);

  const Eigen::Index lower_mask = (Eigen::Index{1} << atom_bit) - 1;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const Complex a = state.amps[i];
    if (a == Complex{0, 0}) continue;
    const int atom_in = static_cast<int>((i >> atom_bit) & 1);
    const Eigen::Index rest = i & lower_mask;
    for (int atom_out = 0; atom_out < 2; ++atom_out) {
      for (int photon = 0; photon < 2; ++photon) {
        const Complex c = v(atom_out * 2 + photon, atom_in);
        if (c == Complex{0, 0}) continue;
        const Eigen::Index j = rest |
                               (Eigen::Index{photon} << photon_bit) |
                               (Eigen::Index{atom_out} << new_atom_bit);
        out.amps[j] += c * a;
      }
    }
  }
  return out;
}

double marginal_p0(const PureState& state, int qubit) {
  const int bit = bit_of(state, qubit);
  double p0 = 0.0;
  for (Eigen::Index i = 0; i < state.dim(); ++i)
    if (((i >> bit) & 1) == 0) p0 += std::norm(state.amps[i]);
  return p0;
}

std::pair<int, PureState> measure_qubit(const PureState& state, int qubit,
                                        double random_draw) {
  check_normalized(state);
  const int bit = bit_of(state, qubit);
  const double p0 = marginal_p0(state, qubit);
  const int outcome = (random_draw < p0) ? 0 : 1;
  const double p = (outcome == 0) ? p0 : 1.0 - p0;

  PureState out = state;
  const double scale = 1.0 / std::sqrt(p);
  for (Eigen::Index i = 0; i < out.dim(); ++i) {
    if (static_cast<int>((i >> bit) & 1) == outcome)
      out.amps[i] *= scale;
    else
      out.amps[i] = Complex{0, 0};
  }
  return {outcome, out};
}

PureState remove_qubit(const PureState& state, int qubit) {
  const int bit = bit_of(state, qubit);
  const double p0 = marginal_p0(state, qubit);
  if (p0 > 1e-10 && p0 < 1.0 - 1e-10)
    throw std::invalid_argument("qubit is not in a definite basis state");
  const int value = (p0 >= 0.5) ? 0 : 1;

  PureState out;
  out.has_atom = (qubit != kAtomQubit) && state.has_atom;
  out.n_photons = state.n_photons - (qubit == kAtomQubit ? 0 : 1);
  out.amps = Vector::Zero(state.dim() / 2);
  const Eigen::Index low = (Eigen::Index{1} << bit) - 1;
  for (Eigen::Index j = 0; j < out.dim(); ++j) {
    const Eigen::Index i = (j & low) | (Eigen::Index{value} << bit) |
                           ((j & ~low) << 1);
    out.amps[j] = state.amps[i];
  }
  out.amps.normalize();
  return out;
}

Complex overlap(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim() || a.has_atom != b.has_atom)
    throw std::invalid_argument("state dimension mismatch");
  return a.amps.dot(b.amps);
}

double fidelity(const PureState& a, const PureState& b) {
  return std::norm(overlap(a, b));
}

double pauli_expectation(const PureState& state, const PauliString& p) {
  if (static_cast<int>(p.ops.size()) != state.n_qubits())
    throw std::invalid_argument("Pauli string length mismatch");
  Complex acc{0, 0};
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const Complex a = state.amps[i];
    if (a == Complex{0, 0}) continue;
    // |i> maps to phase * |j> under the Pauli string.
    Eigen::Index j = i;
    Complex phase{1, 0};
    for (int k = 0; k < state.n_qubits(); ++k) {
      const int b = static_cast<int>((i >> k) & 1);
      switch (p.ops[k]) {
        case Pauli::I: break;
        case Pauli::X: j ^= (Eigen::Index{1} << k); break;
        case Pauli::Y:
          j ^= (Eigen::Index{1} << k);
          phase *= (b == 0) ? Complex{0, 1} : Complex{0, -1};
          break;
        case Pauli::Z:
          if (b == 1) phase = -phase;
          break;
      }
    }
    acc += std::conj(state.amps[j]) * phase * a;
  }
  return acc.real();
}

PureState apply_local(const PureState& state, int qubit, const Matrix2& u) {
  if ((u.adjoint() * u - Matrix2::Identity()).norm() > kNormTol * 1e2)
    throw std::invalid_argument("matrix is not unitary");
  const int bit = bit_of(state, qubit);
  PureState out = state;
  const Eigen::Index mask = Eigen::Index{1} << bit;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (i & mask) continue;
    const Complex a0 = state.amps[i];
    const Complex a1 = state.amps[i | mask];
    out.amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
    out.amps[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return out;
}

double atom_schmidt_weight(const PureState& state) {
  if (!state.has_atom) throw std::invalid_argument("state has no atom");
  const int bit = state.n_photons;
  const Eigen::Index half = state.dim() / 2;
  Matrix2 rho = Matrix2::Zero();
  for (Eigen::Index r = 0; r < half; ++r) {
    const Complex a0 = state.amps[r];
    const Complex a1 = state.amps[r | (Eigen::Index{1} << bit)];
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 0) += a1 * std::conj(a0);
    rho(1, 1) += a1 * std::conj(a1);
  }
  Eigen::SelfAdjointEigenSolver<Matrix2> es(rho);
  return es.eigenvalues().maxCoeff();
}

namespace gates {

Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 pauli_x() { Matrix2 m; m << 0, 1, 1, 0; return m; }
Matrix2 pauli_y() { Matrix2 m; m << 0, Complex{0,-1}, Complex{0,1}, 0; return m; }
Matrix2 pauli_z() { Matrix2 m; m << 1, 0, 0, -1; return m; }
Matrix2 hadamard() { Matrix2 m; m << 1, 1, 1, -1; return m / std::sqrt(2.0); }
Matrix2 phase_s() { Matrix2 m; m << 1, 0, 0, Complex{0,1}; return m; }

const std::vector<Matrix2>& clifford_group() {
  static const std::vector<Matrix2> group = [] {
    std::vector<Matrix2> out;
    auto canonical_phase = [](Matrix2 m) {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          if (std::abs(m(r, c)) > 1e-9) {
            m *= std::abs(m(r, c)) / m(r, c);
            return m;
          }
      return m;
    };
    auto contains = [&](const Matrix2& m) {
      for (const auto& g : out)
        if ((g - m).norm() < 1e-9) return true;
      return false;
    };
    out.push_back(canonical_phase(identity()));
    const std::vector<Matrix2> generators = {hadamard(), phase_s()};
    // Closure under the generators, up to global phase.
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& g : generators) {
        Matrix2 m = canonical_phase(g * out[i]);
        if (!contains(m)) out.push_back(m);
      }
    return out;
  }();
  return group;
}

}  // namespace gates

}  // namespace photontrain
