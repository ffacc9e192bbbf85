#pragma once

// Canonical constructors for the entangled resources both protocols run on.
// Amplitudes are hard-coded from the defining expansions rather than built
// by gate circuits; every downstream derivation starts from these vectors.

#include <cmath>
#include <string>
#include <vector>

#include "cqsdc/qsim.hpp"

namespace cqsdc::states {

struct QubitRole {
  std::string qubit;  // name of the position in the defining ket, e.g. "a1"
  std::string party;  // owner: "alice", "bob", "charlie", "charlie1", ...
};

struct NamedState {
  std::string label;
  qsim::StateVector vector;
  std::vector<QubitRole> qubit_roles;  // one entry per qubit position

  std::vector<int> positions_of(const std::string& party) const {
    std::vector<int> positions;
    for (int q = 0; q < static_cast<int>(qubit_roles.size()); ++q) {
      if (qubit_roles[static_cast<std::size_t>(q)].party == party) {
        positions.push_back(q);
      }
    }
    return positions;
  }
};

// 4-qubit cluster state (|0000> + |1001> + |0110> - |1111>)/2 on positions
// (a1, a2, b1, c1); Alice holds a1,a2, Bob b1, Charlie c1.
inline NamedState cluster4() {
  std::vector<qsim::Amplitude> amps(16, qsim::Amplitude{0.0});
  amps[0] = 0.5;    // |0000>
  amps[9] = 0.5;    // |1001>
  amps[6] = 0.5;    // |0110>
  amps[15] = -0.5;  // |1111>
  return NamedState{"cluster4",
                    qsim::StateVector(4, std::move(amps)),
                    {{"a1", "alice"},
                     {"a2", "alice"},
                     {"b1", "bob"},
                     {"c1", "charlie"}}};
}

// 5-qubit Brown state
//   (|001>|phi-> + |010>|psi-> + |100>|phi+> - |111>|psi+>)/2
// on positions (a, b, c, d, e); Charlie1..3 hold a, b, c and Alice holds
// the Bell pair d,e.  Expanded into computational terms of weight
// 1/(2*sqrt(2)):
//   + |00100> + |01001> + |10000> + |10011>
//   - |00111> - |01010> - |11101> - |11110>
inline NamedState brown5() {
  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  std::vector<qsim::Amplitude> amps(32, qsim::Amplitude{0.0});
  amps[4] = c;    // |00100>
  amps[9] = c;    // |01001>
  amps[16] = c;   // |10000>
  amps[19] = c;   // |10011>
  amps[7] = -c;   // |00111>
  amps[10] = -c;  // |01010>
  amps[29] = -c;  // |11101>
  amps[30] = -c;  // |11110>
  return NamedState{"brown5",
                    qsim::StateVector(5, std::move(amps)),
                    {{"a", "charlie1"},
                     {"b", "charlie2"},
                     {"c", "charlie3"},
                     {"d", "alice"},
                     {"e", "alice"}}};
}

// Two-qubit Bell states, written out from their definitions:
// phi+- = (|00> +- |11>)/sqrt(2), psi+- = (|01> +- |10>)/sqrt(2).
inline NamedState bell(qsim::BellOutcome kind) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<qsim::Amplitude> amps(4, qsim::Amplitude{0.0});
  switch (kind) {
    case qsim::BellOutcome::PhiPlus:
      amps[0] = r;
      amps[3] = r;
      break;
    case qsim::BellOutcome::PhiMinus:
      amps[0] = r;
      amps[3] = -r;
      break;
    case qsim::BellOutcome::PsiPlus:
      amps[1] = r;
      amps[2] = r;
      break;
    case qsim::BellOutcome::PsiMinus:
      amps[1] = r;
      amps[2] = -r;
      break;
  }
  return NamedState{std::string("bell-") + qsim::bell_label(kind),
                    qsim::StateVector(2, std::move(amps)),
                    {{"q0", "none"}, {"q1", "none"}}};
}

}  // namespace cqsdc::states
