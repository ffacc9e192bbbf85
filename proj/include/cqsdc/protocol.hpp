#pragma once

// Session execution, encoding rules, and decode tables for the two
// protocols:
//
//   cluster - Alice sends a 2-bit message to Bob; Bob needs Charlie's
//             measurement bit to decode.
//   brown   - Alice sends a 2-bit message to one of three controllers; any
//             coalition of two controllers decodes, a single one cannot.
//
// Decode tables are not transcribed from anywhere: they are derived by
// enumerating every nonzero measurement branch of the encoded resource
// state.  The published reference tables are kept as constants so the
// derived tables can be checked against them row by row.  For the cluster
// protocol the two agree exactly; for the brown protocol the published
// table's 01 and 11 message blocks are interchanged relative to what the
// state and encoding rules actually produce, and that diff is pinned in
// the test suite rather than silently adopted from either side.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqsdc/qsim.hpp"
#include "cqsdc/states.hpp"

namespace cqsdc::protocol {

enum class Protocol { Cluster, Brown };

inline const char* protocol_name(Protocol p) {
  return p == Protocol::Cluster ? "cluster" : "brown";
}

inline std::optional<Protocol> protocol_from_name(const std::string& name) {
  if (name == "cluster") return Protocol::Cluster;
  if (name == "brown") return Protocol::Brown;
  return std::nullopt;
}

// A 2-bit secret message; m1 is the first bit of the printed form "m1 m2".
struct Message2 {
  bool m1 = false;
  bool m2 = false;

  static constexpr int kBits = 2;

  int index() const { return (m1 ? 2 : 0) + (m2 ? 1 : 0); }

  static Message2 from_index(int index) {
    if (index < 0 || index > 3) {
      throw std::invalid_argument("message index must be in [0,3]");
    }
    return Message2{(index & 2) != 0, (index & 1) != 0};
  }

  static std::optional<Message2> parse(const std::string& s) {
    if (s.size() != 2 || (s[0] != '0' && s[0] != '1') ||
        (s[1] != '0' && s[1] != '1')) {
      return std::nullopt;
    }
    return Message2{s[0] == '1', s[1] == '1'};
  }

  std::string str() const {
    return std::string{m1 ? '1' : '0', m2 ? '1' : '0'};
  }

  friend bool operator==(const Message2&, const Message2&) = default;
  friend auto operator<=>(const Message2&, const Message2&) = default;
};

inline const std::array<Message2, 4> kAllMessages = {
    Message2{false, false}, Message2{false, true}, Message2{true, false},
    Message2{true, true}};

enum class PartyId { Alice, Bob, Charlie, Charlie1, Charlie2, Charlie3 };

inline const char* party_name(PartyId p) {
  switch (p) {
    case PartyId::Alice: return "alice";
    case PartyId::Bob: return "bob";
    case PartyId::Charlie: return "charlie";
    case PartyId::Charlie1: return "charlie1";
    case PartyId::Charlie2: return "charlie2";
    case PartyId::Charlie3: return "charlie3";
  }
  throw std::logic_error("unreachable party");
}

inline bool is_controller(PartyId p) {
  return p == PartyId::Charlie1 || p == PartyId::Charlie2 ||
         p == PartyId::Charlie3;
}

// Position of a controller's qubit in the Brown register (a=0, b=1, c=2).
inline int controller_position(PartyId p) {
  switch (p) {
    case PartyId::Charlie1: return 0;
    case PartyId::Charlie2: return 1;
    case PartyId::Charlie3: return 2;
    default: throw std::invalid_argument("party is not a controller");
  }
}

inline PartyId controller_at(int position) {
  switch (position) {
    case 0: return PartyId::Charlie1;
    case 1: return PartyId::Charlie2;
    case 2: return PartyId::Charlie3;
    default: throw std::invalid_argument("controller position must be 0..2");
  }
}

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Two messages mapped to the same observable tuple while deriving a decode
// table; the protocol description would be unsound.
struct CollisionError : ProtocolError {
  using ProtocolError::ProtocolError;
};
struct MissingEntryError : ProtocolError {
  using ProtocolError::ProtocolError;
};
struct InsufficientHelpersError : ProtocolError {
  using ProtocolError::ProtocolError;
};
struct SamePartyError : ProtocolError {
  using ProtocolError::ProtocolError;
};

// The pair of Pauli operations Alice applies to her two qubits.
struct EncodingRule {
  qsim::PauliOp op_first;
  qsim::PauliOp op_second;
  int target_first;
  int target_second;

  friend bool operator==(const EncodingRule&, const EncodingRule&) = default;
};

inline states::NamedState resource_state(Protocol p) {
  return p == Protocol::Cluster ? states::cluster4() : states::brown5();
}

// Encoding tables, message -> (op on Alice's first qubit, op on her second):
//   cluster: 00 -> (I,I)  01 -> (X,X)  10 -> (X,I)  11 -> (I,X)
//   brown:   00 -> (I,I)  01 -> (Z,X)  10 -> (Z,I)  11 -> (I,X)
// Targets are taken from the resource state's qubit roles, not hard-coded.
inline EncodingRule encoding_for(Protocol protocol, Message2 msg) {
  const auto alice = resource_state(protocol).positions_of("alice");
  using qsim::PauliOp;
  PauliOp first = PauliOp::I;
  PauliOp second = PauliOp::I;
  if (protocol == Protocol::Cluster) {
    switch (msg.index()) {
      case 0: break;
      case 1: first = PauliOp::X; second = PauliOp::X; break;
      case 2: first = PauliOp::X; break;
      case 3: second = PauliOp::X; break;
    }
  } else {
    switch (msg.index()) {
      case 0: break;
      case 1: first = PauliOp::Z; second = PauliOp::X; break;
      case 2: first = PauliOp::Z; break;
      case 3: second = PauliOp::X; break;
    }
  }
  return EncodingRule{first, second, alice[0], alice[1]};
}

inline qsim::StateVector apply_encoding(const qsim::StateVector& state,
                                        const EncodingRule& rule) {
  auto encoded = qsim::apply_pauli(state, rule.target_first, rule.op_first);
  return qsim::apply_pauli(encoded, rule.target_second, rule.op_second);
}

struct ClassicalMessage {
  enum class Purpose { OutcomeReport, Permission };

  PartyId sender;
  std::optional<PartyId> receiver;  // nullopt = broadcast
  Purpose purpose;
  // Transmitted bits; empty for permission messages (they cost nothing),
  // 1 or 2 bits for outcome reports.  A Bell outcome travels as its wire
  // encoding and `bell` keeps the symbolic value alongside.
  std::string payload_bits;
  std::optional<qsim::BellOutcome> bell;
};

struct MeasurementRecord {
  PartyId party;
  std::string bits;                       // computational outcome, if any
  std::optional<qsim::BellOutcome> bell;  // bell outcome, if any
  double probability;
};

// Ordered record of one protocol session: every measurement outcome and
// every classical message, in the order they happened.  Re-running the
// session with the recorded outcomes reproduces the same classical traffic.
struct Transcript {
  Protocol protocol;
  Message2 secret;
  int resource_qubits;
  std::vector<MeasurementRecord> records;
  std::vector<ClassicalMessage> classical;
  std::optional<Message2> decoded;

  // Only outcome-report payloads count as transmitted classical bits.
  int transmitted_classical_bits() const {
    int bits = 0;
    for (const auto& msg : classical) {
      if (msg.purpose == ClassicalMessage::Purpose::OutcomeReport) {
        bits += static_cast<int>(msg.payload_bits.size());
      }
    }
    return bits;
  }
};

// One nonzero measurement branch of an encoded resource state.
//   cluster: alice = her two bits, helpers = bob bit + charlie bit
//   brown:   alice = bell outcome label, helpers = controller bits abc
struct Branch {
  Message2 message;
  std::string alice;
  std::string helpers;
  double probability;  // branch probability given the message
};

inline std::vector<Branch> enumerate_branches(Protocol protocol) {
  const auto resource = resource_state(protocol);
  std::vector<Branch> branches;
  for (const auto& msg : kAllMessages) {
    const auto encoded =
        apply_encoding(resource.vector, encoding_for(protocol, msg));
    if (protocol == Protocol::Cluster) {
      const auto dist = qsim::outcome_distribution(encoded, {0, 1, 2, 3});
      for (const auto& [bits, p] : dist) {
        branches.push_back(
            Branch{msg, bits.substr(0, 2), bits.substr(2, 2), p});
      }
    } else {
      const auto alice = resource.positions_of("alice");
      const std::pair<int, int> pair{alice[0], alice[1]};
      const auto probs = qsim::bell_probabilities(encoded, pair);
      for (int k = 0; k < 4; ++k) {
        if (probs[k] < qsim::kProbEpsilon) continue;
        const auto proj =
            qsim::project_bell(encoded, pair, qsim::kBellOutcomes[k]);
        const auto controller_dist =
            qsim::outcome_distribution(proj.state, {0, 1, 2});
        if (controller_dist.size() != 1) {
          throw CollisionError(
              "controller outcome is not deterministic after bell collapse");
        }
        branches.push_back(Branch{msg,
                                  qsim::bell_label(qsim::kBellOutcomes[k]),
                                  controller_dist[0].first, probs[k]});
      }
    }
  }
  return branches;
}

struct DecodeRow {
  std::string alice;
  std::string helpers;
  Message2 message;

  friend bool operator==(const DecodeRow&, const DecodeRow&) = default;
};

// Total map from observable tuples to messages.  Rows are kept in message
// blocks: sorted by message, then by alice bits (cluster) or by controller
// bits (brown), matching how the reference tables are laid out.
struct DecodeTable {
  Protocol protocol;
  std::vector<DecodeRow> rows;

  std::optional<Message2> lookup(const std::string& alice,
                                 const std::string& helpers) const {
    for (const auto& row : rows) {
      if (row.alice == alice && row.helpers == helpers) return row.message;
    }
    return std::nullopt;
  }
};

inline void sort_rows(Protocol protocol, std::vector<DecodeRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [protocol](const DecodeRow& a, const DecodeRow& b) {
              if (a.message != b.message) return a.message < b.message;
              if (protocol == Protocol::Cluster) return a.alice < b.alice;
              return a.helpers < b.helpers;
            });
}

// Derives the decode table from first principles: encode each message on a
// fresh resource state, enumerate every nonzero measurement branch, and
// record tuple -> message.  Throws CollisionError if two messages ever share
// an observable tuple.
inline DecodeTable derive_decode_table(Protocol protocol) {
  DecodeTable table{protocol, {}};
  for (const auto& branch : enumerate_branches(protocol)) {
    if (const auto existing = table.lookup(branch.alice, branch.helpers)) {
      if (*existing != branch.message) {
        throw CollisionError("observable tuple (" + branch.alice + ", " +
                             branch.helpers + ") maps to two messages");
      }
      continue;
    }
    table.rows.push_back(
        DecodeRow{branch.alice, branch.helpers, branch.message});
  }
  sort_rows(protocol, table.rows);
  return table;
}

// Published reference decode tables, transcribed verbatim.
inline DecodeTable published_decode_table(Protocol protocol) {
  DecodeTable table{protocol, {}};
  if (protocol == Protocol::Cluster) {
    // columns: alice bits, bob bit + charlie bit, message
    const struct { const char* a; const char* h; int m; } rows[] = {
        {"00", "00", 0}, {"01", "10", 0}, {"10", "01", 0}, {"11", "11", 0},
        {"00", "11", 1}, {"01", "01", 1}, {"10", "10", 1}, {"11", "00", 1},
        {"00", "01", 2}, {"01", "11", 2}, {"10", "00", 2}, {"11", "10", 2},
        {"00", "10", 3}, {"01", "00", 3}, {"10", "11", 3}, {"11", "01", 3},
    };
    for (const auto& r : rows) {
      table.rows.push_back(DecodeRow{r.a, r.h, Message2::from_index(r.m)});
    }
  } else {
    // columns: alice bell outcome, controller bits abc, message
    const struct { const char* a; const char* h; int m; } rows[] = {
        {"phi-", "001", 0}, {"psi-", "010", 0}, {"phi+", "100", 0},
        {"psi+", "111", 0},
        {"psi-", "001", 1}, {"phi-", "010", 1}, {"psi+", "100", 1},
        {"phi+", "111", 1},
        {"phi+", "001", 2}, {"psi+", "010", 2}, {"phi-", "100", 2},
        {"psi-", "111", 2},
        {"psi+", "001", 3}, {"phi+", "010", 3}, {"psi-", "100", 3},
        {"phi-", "111", 3},
    };
    for (const auto& r : rows) {
      table.rows.push_back(DecodeRow{r.a, r.h, Message2::from_index(r.m)});
    }
  }
  sort_rows(protocol, table.rows);
  return table;
}

struct RowDiff {
  std::string alice;
  std::string helpers;
  Message2 derived;
  Message2 published;

  friend bool operator==(const RowDiff&, const RowDiff&) = default;
};

// Row-by-row comparison of two tables over the same key set, ordered by
// (alice, helpers).  Both tables must cover identical observable tuples.
inline std::vector<RowDiff> diff_decode_tables(const DecodeTable& derived,
                                               const DecodeTable& published) {
  if (derived.rows.size() != published.rows.size()) {
    throw std::invalid_argument("tables cover different numbers of tuples");
  }
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& row : derived.rows) keys.emplace_back(row.alice, row.helpers);
  std::sort(keys.begin(), keys.end());
  std::vector<RowDiff> diffs;
  for (const auto& [alice, helpers] : keys) {
    const auto lhs = derived.lookup(alice, helpers);
    const auto rhs = published.lookup(alice, helpers);
    if (!rhs.has_value()) {
      throw std::invalid_argument("tables cover different observable tuples");
    }
    if (*lhs != *rhs) diffs.push_back(RowDiff{alice, helpers, *lhs, *rhs});
  }
  return diffs;
}

// Returns the bit that completes two controller bits to odd parity
// (a xor b xor c = 1 on every reachable controller string).
inline bool third_bit_completion(int pos1, bool bit1, int pos2, bool bit2) {
  if (pos1 < 0 || pos1 > 2 || pos2 < 0 || pos2 > 2) {
    throw std::invalid_argument("controller positions must be 0..2");
  }
  if (pos1 == pos2) {
    throw std::invalid_argument("controller positions must be distinct");
  }
  return !(bit1 ^ bit2);
}

// Bob's decode step: Alice's two bits plus Bob's and Charlie's bits.
inline Message2 decode(const DecodeTable& table, const std::string& alice_bits,
                       const std::vector<std::pair<PartyId, bool>>& helpers) {
  if (table.protocol != Protocol::Cluster) {
    throw std::invalid_argument("bit-payload decode requires a cluster table");
  }
  if (helpers.size() != 2) {
    throw InsufficientHelpersError("cluster decode needs exactly 2 helper bits");
  }
  std::optional<bool> bob, charlie;
  for (const auto& [party, bit] : helpers) {
    if (party == PartyId::Bob) bob = bit;
    else if (party == PartyId::Charlie) charlie = bit;
  }
  if (!bob || !charlie) {
    throw InsufficientHelpersError(
        "cluster decode needs one bit from bob and one from charlie");
  }
  const std::string key{*bob ? '1' : '0', *charlie ? '1' : '0'};
  const auto msg = table.lookup(alice_bits, key);
  if (!msg) {
    throw MissingEntryError("no decode entry for (" + alice_bits + ", " + key +
                            ")");
  }
  return *msg;
}

// Controller-coalition decode: Alice's Bell outcome plus two distinct
// controller bits; the third bit is completed via the odd-parity law.
inline Message2 decode(const DecodeTable& table, qsim::BellOutcome alice,
                       const std::vector<std::pair<PartyId, bool>>& helpers) {
  if (table.protocol != Protocol::Brown) {
    throw std::invalid_argument("bell-payload decode requires a brown table");
  }
  if (helpers.size() != 2) {
    throw InsufficientHelpersError("brown decode needs exactly 2 controller bits");
  }
  for (const auto& [party, bit] : helpers) {
    if (!is_controller(party)) {
      throw InsufficientHelpersError("brown decode helpers must be controllers");
    }
  }
  const int pos1 = controller_position(helpers[0].first);
  const int pos2 = controller_position(helpers[1].first);
  if (pos1 == pos2) {
    throw InsufficientHelpersError(
        "brown decode needs bits from two distinct controllers");
  }
  std::string abc = "000";
  abc[static_cast<std::size_t>(pos1)] = helpers[0].second ? '1' : '0';
  abc[static_cast<std::size_t>(pos2)] = helpers[1].second ? '1' : '0';
  const int missing = 3 - pos1 - pos2;
  abc[static_cast<std::size_t>(missing)] =
      third_bit_completion(pos1, helpers[0].second, pos2, helpers[1].second)
          ? '1'
          : '0';
  const auto msg = table.lookup(qsim::bell_label(alice), abc);
  if (!msg) {
    throw MissingEntryError("no decode entry for (" +
                            std::string(qsim::bell_label(alice)) + ", " + abc +
                            ")");
  }
  return *msg;
}

// One full cluster session.  Preparation: Alice encodes her two qubits,
// everyone measures, Alice reports her two bits to Bob.  Retrieval: Bob asks
// Charlie's permission, Charlie reports his bit, Bob decodes.
inline Transcript run_cluster(Message2 msg, qsim::RandomSource& rng) {
  const auto resource = states::cluster4();
  Transcript t{Protocol::Cluster, msg, resource.vector.num_qubits(), {}, {},
               std::nullopt};

  auto state = apply_encoding(resource.vector,
                              encoding_for(Protocol::Cluster, msg));
  const auto alice =
      qsim::measure_computational(state, resource.positions_of("alice"), rng);
  t.records.push_back(MeasurementRecord{PartyId::Alice, alice.bits,
                                        std::nullopt, alice.probability});
  const auto bob = qsim::measure_computational(
      alice.state, resource.positions_of("bob"), rng);
  t.records.push_back(
      MeasurementRecord{PartyId::Bob, bob.bits, std::nullopt, bob.probability});
  const auto charlie = qsim::measure_computational(
      bob.state, resource.positions_of("charlie"), rng);
  t.records.push_back(MeasurementRecord{PartyId::Charlie, charlie.bits,
                                        std::nullopt, charlie.probability});

  t.classical.push_back(ClassicalMessage{
      PartyId::Alice, PartyId::Bob, ClassicalMessage::Purpose::OutcomeReport,
      alice.bits, std::nullopt});
  t.classical.push_back(ClassicalMessage{PartyId::Bob, PartyId::Charlie,
                                         ClassicalMessage::Purpose::Permission,
                                         "", std::nullopt});
  t.classical.push_back(ClassicalMessage{
      PartyId::Charlie, PartyId::Bob, ClassicalMessage::Purpose::OutcomeReport,
      charlie.bits, std::nullopt});

  t.decoded = decode(derive_decode_table(Protocol::Cluster), alice.bits,
                     {{PartyId::Bob, bob.bits[0] == '1'},
                      {PartyId::Charlie, charlie.bits[0] == '1'}});
  return t;
}

// One full brown session.  Alice encodes and Bell-measures her pair and
// reports the outcome; all controllers measure; the permitter reports one
// bit to the recipient, who completes the third bit by parity and decodes.
inline Transcript run_brown(Message2 msg, PartyId recipient, PartyId permitter,
                            qsim::RandomSource& rng) {
  if (!is_controller(recipient) || !is_controller(permitter)) {
    throw std::invalid_argument("recipient and permitter must be controllers");
  }
  if (recipient == permitter) {
    throw SamePartyError("recipient and permitter must be distinct");
  }
  const auto resource = states::brown5();
  Transcript t{Protocol::Brown, msg, resource.vector.num_qubits(), {}, {},
               std::nullopt};

  auto state =
      apply_encoding(resource.vector, encoding_for(Protocol::Brown, msg));
  const auto alice_positions = resource.positions_of("alice");
  const auto alice = qsim::measure_bell(
      state, {alice_positions[0], alice_positions[1]}, rng);
  t.records.push_back(MeasurementRecord{PartyId::Alice, "", alice.outcome,
                                        alice.probability});

  t.classical.push_back(ClassicalMessage{
      PartyId::Alice, recipient, ClassicalMessage::Purpose::OutcomeReport,
      qsim::bell_wire_bits(alice.outcome), alice.outcome});

  auto current = alice.state;
  std::array<bool, 3> controller_bits{};
  for (int pos = 0; pos < 3; ++pos) {
    const auto result = qsim::measure_computational(current, {pos}, rng);
    controller_bits[static_cast<std::size_t>(pos)] = result.bits[0] == '1';
    t.records.push_back(MeasurementRecord{controller_at(pos), result.bits,
                                          std::nullopt, result.probability});
    current = result.state;
  }

  t.classical.push_back(ClassicalMessage{recipient, permitter,
                                         ClassicalMessage::Purpose::Permission,
                                         "", std::nullopt});
  const bool permitter_bit =
      controller_bits[static_cast<std::size_t>(controller_position(permitter))];
  t.classical.push_back(ClassicalMessage{
      permitter, recipient, ClassicalMessage::Purpose::OutcomeReport,
      std::string{permitter_bit ? '1' : '0'}, std::nullopt});

  const bool own_bit =
      controller_bits[static_cast<std::size_t>(controller_position(recipient))];
  t.decoded = decode(derive_decode_table(Protocol::Brown), alice.outcome,
                     {{recipient, own_bit}, {permitter, permitter_bit}});
  return t;
}

}  // namespace cqsdc::protocol
