#pragma once

// Efficiency ratios and the comparison table.
//
//   eta1 = message bits / (qubits used + transmitted classical bits)
//   eta2 = message bits / qubits used
//
// The counts for the two protocols here are taken from an actual session
// transcript, not hard-coded.  Rows for the three protocols we compare
// against are stored constants taken from their publications.

#include <stdexcept>
#include <string>
#include <vector>

#include "cqsdc/protocol.hpp"

namespace cqsdc::metrics {

using protocol::Protocol;

struct EfficiencyInput {
  int message_bits;    // m_u
  int qubits;          // q_k
  int classical_bits;  // b_k (written c_k in some accounts)
};

inline void check_nonnegative(const EfficiencyInput& input) {
  if (input.message_bits < 0 || input.qubits < 0 || input.classical_bits < 0) {
    throw std::invalid_argument("efficiency counts must be nonnegative");
  }
}

inline double eta1(const EfficiencyInput& input) {
  check_nonnegative(input);
  const int denominator = input.qubits + input.classical_bits;
  if (denominator == 0) {
    throw std::domain_error("eta1 denominator must be positive");
  }
  return static_cast<double>(input.message_bits) / denominator;
}

inline double eta2(const EfficiencyInput& input) {
  check_nonnegative(input);
  if (input.qubits == 0) {
    throw std::domain_error("eta2 denominator must be positive");
  }
  return static_cast<double>(input.message_bits) / input.qubits;
}

// Counts one session of the protocol: 2 message bits, the resource register
// size, and the transcript's transmitted classical bits (cluster: alice's 2
// + charlie's 1; brown: alice's broadcast counted once + the permitter's 1).
inline EfficiencyInput protocol_counts(Protocol p) {
  qsim::RandomSource rng(0);
  const auto transcript =
      p == Protocol::Cluster
          ? protocol::run_cluster(protocol::Message2{false, false}, rng)
          : protocol::run_brown(protocol::Message2{false, false},
                                protocol::PartyId::Charlie1,
                                protocol::PartyId::Charlie2, rng);
  return EfficiencyInput{protocol::Message2::kBits, transcript.resource_qubits,
                         transcript.transmitted_classical_bits()};
}

struct EfficiencyRow {
  std::string name;
  double eta1;
  double eta2;
  bool cited;  // true: stored constants; false: computed from a transcript
};

inline std::vector<EfficiencyRow> comparison_table() {
  std::vector<EfficiencyRow> rows;
  rows.push_back(EfficiencyRow{"Dong et al.", 0.125, 0.25, true});
  rows.push_back(EfficiencyRow{"Kao et al.", 0.125, 0.25, true});
  rows.push_back(EfficiencyRow{"Hassanpour et al.", 0.22, 0.33, true});
  for (const auto p : {Protocol::Cluster, Protocol::Brown}) {
    const auto counts = protocol_counts(p);
    rows.push_back(EfficiencyRow{
        std::string("Proposed (") + protocol::protocol_name(p) + ")",
        eta1(counts), eta2(counts), false});
  }
  return rows;
}

}  // namespace cqsdc::metrics
