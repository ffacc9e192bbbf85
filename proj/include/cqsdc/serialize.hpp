#pragma once

// Structured-record (JSON) forms of the library's value types.  Field names
// are stable and documented in the README; insertion-ordered objects keep
// the output byte-deterministic.

#include <string>

#include <json.hpp>

#include "cqsdc/metrics.hpp"
#include "cqsdc/protocol.hpp"
#include "cqsdc/security.hpp"
#include "cqsdc/states.hpp"

namespace cqsdc::serialize {

using Json = nlohmann::ordered_json;

inline Json measurement_record_json(const protocol::MeasurementRecord& r) {
  Json j;
  j["party"] = protocol::party_name(r.party);
  if (r.bell.has_value()) {
    j["kind"] = "bell";
    j["value"] = qsim::bell_label(*r.bell);
  } else {
    j["kind"] = "bits";
    j["value"] = r.bits;
  }
  j["probability"] = r.probability;
  return j;
}

inline Json classical_message_json(const protocol::ClassicalMessage& m) {
  Json j;
  j["sender"] = protocol::party_name(m.sender);
  j["receiver"] = m.receiver ? protocol::party_name(*m.receiver) : "broadcast";
  j["purpose"] = m.purpose == protocol::ClassicalMessage::Purpose::OutcomeReport
                     ? "outcome_report"
                     : "permission";
  j["payload"] = m.payload_bits;
  j["bits"] = static_cast<int>(m.payload_bits.size());
  if (m.bell.has_value()) j["bell"] = qsim::bell_label(*m.bell);
  return j;
}

inline Json transcript_json(const protocol::Transcript& t) {
  Json j;
  j["protocol"] = protocol::protocol_name(t.protocol);
  j["secret"] = t.secret.str();
  j["resource_qubits"] = t.resource_qubits;
  j["records"] = Json::array();
  for (const auto& r : t.records) j["records"].push_back(measurement_record_json(r));
  j["classical"] = Json::array();
  for (const auto& m : t.classical) j["classical"].push_back(classical_message_json(m));
  j["transmitted_bits"] = t.transmitted_classical_bits();
  if (t.decoded.has_value()) {
    j["decoded"] = t.decoded->str();
  } else {
    j["decoded"] = nullptr;
  }
  return j;
}

inline Json decode_row_json(protocol::Protocol p, const protocol::DecodeRow& row) {
  Json j;
  j["alice"] = row.alice;
  if (p == protocol::Protocol::Cluster) {
    j["bob"] = row.helpers.substr(0, 1);
    j["charlie"] = row.helpers.substr(1, 1);
  } else {
    j["charlie1"] = row.helpers.substr(0, 1);
    j["charlie2"] = row.helpers.substr(1, 1);
    j["charlie3"] = row.helpers.substr(2, 1);
  }
  j["message"] = row.message.str();
  return j;
}

inline Json decode_table_json(const protocol::DecodeTable& table) {
  Json j;
  j["protocol"] = protocol::protocol_name(table.protocol);
  j["rows"] = Json::array();
  for (const auto& row : table.rows) {
    j["rows"].push_back(decode_row_json(table.protocol, row));
  }
  return j;
}

inline Json table_check_json(const protocol::DecodeTable& table,
                             const std::vector<protocol::RowDiff>& diffs) {
  Json j;
  j["matched_rows"] = static_cast<int>(table.rows.size() - diffs.size());
  j["total_rows"] = static_cast<int>(table.rows.size());
  j["diff"] = Json::array();
  for (const auto& d : diffs) {
    Json row;
    row["alice"] = d.alice;
    row["helpers"] = d.helpers;
    row["derived"] = d.derived.str();
    row["published"] = d.published.str();
    j["diff"].push_back(row);
  }
  return j;
}

inline Json security_report_json(const security::SecurityReport& report) {
  Json j;
  j["view"] = report.view;
  j["mutual_information_bits"] = report.mutual_information_bits;
  j["max_guess_probability"] = report.max_guess_probability;
  j["determined_bit"] = [&] {
    switch (report.determined_bit) {
      case security::DeterminedBit::None: return "none";
      case security::DeterminedBit::FirstBit: return "first_bit";
      case security::DeterminedBit::SecondBit: return "second_bit";
      case security::DeterminedBit::Parity: return "parity";
      case security::DeterminedBit::AllBits: return "all_bits";
    }
    return "none";
  }();
  j["conditionals"] = Json::array();
  for (const auto& [visible, messages] : report.conditionals) {
    Json entry;
    entry["visible"] = visible;
    entry["messages"] = Json::object();
    for (const auto& [msg, p] : messages) entry["messages"][msg] = p;
    j["conditionals"].push_back(entry);
  }
  return j;
}

inline Json named_state_json(const states::NamedState& state) {
  Json j;
  j["label"] = state.label;
  j["num_qubits"] = state.vector.num_qubits();
  j["qubit_roles"] = Json::array();
  for (const auto& role : state.qubit_roles) {
    Json r;
    r["qubit"] = role.qubit;
    r["party"] = role.party;
    j["qubit_roles"].push_back(r);
  }
  j["amplitudes"] = Json::array();
  const auto& amps = state.vector.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::norm(amps[i]) < qsim::kProbEpsilon) continue;
    Json a;
    a["index"] = i;
    a["bits"] = qsim::bitstring_of(i, state.vector.num_qubits());
    a["re"] = amps[i].real();
    a["im"] = amps[i].imag();
    j["amplitudes"].push_back(a);
  }
  return j;
}

inline Json efficiency_json(const std::vector<metrics::EfficiencyRow>& rows) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& row : rows) {
    Json r;
    r["protocol"] = row.name;
    r["eta1"] = row.eta1;
    r["eta2"] = row.eta2;
    r["source"] = row.cited ? "cited" : "computed";
    j["rows"].push_back(r);
  }
  return j;
}

}  // namespace cqsdc::serialize
