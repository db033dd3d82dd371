// The abstract sequential-emission protocol: the two pump isometries, full
// protocol runs with the disconnection measurement, canonical target states,
// outcome-dependent correction unitaries and stabilizer verification.

#pragma once

#include "photontrain/statevec.hpp"

#include <optional>
#include <vector>

namespace photontrain::protocol {

enum class StateKind { GHZ, LinearCluster };

// |+> -> |+>|s+>,  |-> -> -|->|s->
Isometry t_ghz();
// |+-> -> ( +-|+>|s+> - |->|s-> ) / sqrt(2)
Isometry t_lc();

struct RunOptions {
  // GHZ runs normally start from (|+> + |->)/sqrt(2). With this flag the
  // atom starts in |+> and the first pump step is T_LC instead of T_GHZ;
  // the output equals the standard run up to a global sign.
  bool ghz_start_plus = false;
};

struct IsometryPair {
  Isometry ghz;
  Isometry lc;
};

struct ProtocolRun {
  StateKind kind = StateKind::GHZ;
  int n = 0;
  int mu = 0;
  double measurement_draw = 0.0;
  PureState final_state;               // N photons, atom removed
  PureState hybrid_pre_measurement;    // atom + (N+1) photons
  std::vector<Isometry> transcript;    // the N+1 applied isometries
  double atom_schmidt_weight = 0.0;    // after the disconnection measurement
};

// Runs the protocol with the abstract Eq.-(1) isometries.
ProtocolRun run_protocol(StateKind kind, int n, double draw,
                         const RunOptions& opts = {});

// Same pipeline driven by caller-supplied (e.g. atomic-compiled) isometries.
ProtocolRun run_protocol(StateKind kind, int n, double draw,
                         const IsometryPair& isos, const RunOptions& opts = {});

// ((-1)^mu |s+...s+> - (-1)^n |s-...s->) / sqrt(2)
PureState canonical_ghz(int n, int mu);

// Equal superposition over polarization configurations with sign
// (-1)^(i'_1 i'_2 + ... + i'_{N-1} i'_N + i'_N mu + mu).
PureState canonical_cluster(int n, int mu);

// Independent reference: |+>^N followed by nearest-neighbor CZ in the
// |s+> -> |0> frame.
PureState cz_cluster(int n);

// Per-qubit unitaries U_1..U_N mapping the run output onto the mu = 0
// reference (canonical GHZ, resp. the CZ-built cluster). Throws if the
// closed-form pattern fails its internal fidelity check.
std::vector<Matrix2> correction_unitaries(StateKind kind, int n, int mu);

PureState apply_corrections(const PureState& state,
                            const std::vector<Matrix2>& us);

// K_i = Z_{i-1} X_i Z_{i+1} with boundary Z omitted; requires n >= 2.
std::vector<PauliString> cluster_stabilizer_generators(int n);

}  // namespace photontrain::protocol
