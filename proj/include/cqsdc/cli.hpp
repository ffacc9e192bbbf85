#pragma once

// Command-line front end.  Subcommands:
//
//   tables <protocol> [--check]          derived decode table (+ diff vs the
//                                        published reference; exit 3 on any
//                                        mismatch)
//   run <protocol> <message> [--seed N] [--recipient 1-3 --permitter 1-3]
//                                        one full session; exit 0 iff the
//                                        decoded message equals the secret
//   audit <view> [--recipient --permitter]
//                                        security report for one adversary
//                                        view
//   efficiency                           comparison table
//   state dump <label>                   amplitude table of a named state
//
// Global flags: --format text|json, --seed <u64>.  Exit codes: 0 success,
// 2 usage error, 3 table-check mismatch.  Identical invocations (seed
// included) produce byte-identical output.

#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqsdc/serialize.hpp"

namespace cqsdc::cli {

enum class OutputFormat { Text, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDiff = 3;

inline std::string fmt_real(double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

inline std::string fmt_fixed(double value, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

inline void emit_json(const serialize::Json& j, std::ostream& out) {
  out << j.dump(2) << '\n';
}

namespace detail {

inline std::optional<states::NamedState> state_by_label(
    const std::string& label) {
  if (label == "cluster") return states::cluster4();
  if (label == "brown") return states::brown5();
  for (const auto k : qsim::kBellOutcomes) {
    if (label == std::string("bell-") + qsim::bell_label(k)) {
      return states::bell(k);
    }
  }
  return std::nullopt;
}

inline void render_table_text(const protocol::DecodeTable& table,
                              std::ostream& out) {
  out << "protocol: " << protocol::protocol_name(table.protocol) << '\n';
  const bool cluster = table.protocol == protocol::Protocol::Cluster;
  if (cluster) {
    out << "alice  bob  charlie  message\n";
  } else {
    out << "alice  charlie1  charlie2  charlie3  message\n";
  }
  for (const auto& row : table.rows) {
    if (cluster) {
      out << std::left << std::setw(7) << row.alice << std::setw(5)
          << row.helpers.substr(0, 1) << std::setw(9) << row.helpers.substr(1, 1)
          << row.message.str() << '\n';
    } else {
      out << std::left << std::setw(7) << row.alice << std::setw(10)
          << row.helpers.substr(0, 1) << std::setw(10)
          << row.helpers.substr(1, 1) << std::setw(10)
          << row.helpers.substr(2, 1) << row.message.str() << '\n';
    }
  }
}

inline int cmd_tables(const std::string& protocol_name, bool check,
                      OutputFormat format, std::ostream& out,
                      std::ostream& err) {
  const auto protocol = protocol::protocol_from_name(protocol_name);
  if (!protocol) {
    err << "error: unknown protocol '" << protocol_name
        << "' (expected cluster or brown)\n";
    return kExitUsage;
  }
  const auto derived = protocol::derive_decode_table(*protocol);
  std::vector<protocol::RowDiff> diffs;
  if (check) {
    diffs = protocol::diff_decode_tables(
        derived, protocol::published_decode_table(*protocol));
  }

  if (format == OutputFormat::Json) {
    auto j = serialize::decode_table_json(derived);
    if (check) j["check"] = serialize::table_check_json(derived, diffs);
    emit_json(j, out);
  } else {
    render_table_text(derived, out);
    if (check) {
      const auto total = derived.rows.size();
      out << "check: " << (total - diffs.size()) << "/" << total
          << " rows match the published table\n";
      if (!diffs.empty()) {
        out << "diff (derived vs published):\n";
        for (const auto& d : diffs) {
          out << "  alice=" << d.alice << " helpers=" << d.helpers
              << ": derived=" << d.derived.str()
              << " published=" << d.published.str() << '\n';
        }
      }
    }
  }
  return (check && !diffs.empty()) ? kExitDiff : kExitOk;
}

inline void render_transcript_text(const protocol::Transcript& t,
                                   std::uint64_t seed, std::ostream& out) {
  out << "protocol: " << protocol::protocol_name(t.protocol) << '\n';
  out << "secret: " << t.secret.str() << '\n';
  out << "seed: " << seed << '\n';
  out << "measurements:\n";
  for (const auto& r : t.records) {
    out << "  " << protocol::party_name(r.party) << ": "
        << (r.bell ? qsim::bell_label(*r.bell) : r.bits)
        << " (p = " << fmt_real(r.probability) << ")\n";
  }
  out << "classical:\n";
  for (const auto& m : t.classical) {
    out << "  " << protocol::party_name(m.sender) << " -> "
        << (m.receiver ? protocol::party_name(*m.receiver) : "broadcast")
        << ": ";
    if (m.purpose == protocol::ClassicalMessage::Purpose::Permission) {
      out << "permission\n";
    } else {
      out << "outcome report [" << m.payload_bits << "] ("
          << m.payload_bits.size() << (m.payload_bits.size() == 1 ? " bit" : " bits")
          << ")\n";
    }
  }
  out << "decoded: " << (t.decoded ? t.decoded->str() : "-") << '\n';
}

inline int cmd_run(const std::string& protocol_name,
                   const std::string& message, std::optional<std::uint64_t> seed,
                   int recipient, int permitter, bool controllers_given,
                   OutputFormat format, std::ostream& out, std::ostream& err) {
  const auto protocol = protocol::protocol_from_name(protocol_name);
  if (!protocol) {
    err << "error: unknown protocol '" << protocol_name
        << "' (expected cluster or brown)\n";
    return kExitUsage;
  }
  const auto msg = protocol::Message2::parse(message);
  if (!msg) {
    err << "error: message must be one of 00, 01, 10, 11\n";
    return kExitUsage;
  }
  if (!seed) {
    if (format == OutputFormat::Json) {
      err << "error: run with --format json requires --seed\n";
      return kExitUsage;
    }
    seed = std::random_device{}();
  }
  if (*protocol == protocol::Protocol::Cluster && controllers_given) {
    err << "error: --recipient/--permitter apply only to the brown protocol\n";
    return kExitUsage;
  }
  if (*protocol == protocol::Protocol::Brown && recipient == permitter) {
    err << "error: recipient and permitter must be distinct controllers\n";
    return kExitUsage;
  }

  qsim::RandomSource rng(*seed);
  const auto transcript =
      *protocol == protocol::Protocol::Cluster
          ? protocol::run_cluster(*msg, rng)
          : protocol::run_brown(*msg, protocol::controller_at(recipient - 1),
                                protocol::controller_at(permitter - 1), rng);

  if (format == OutputFormat::Json) {
    serialize::Json j;
    j["seed"] = *seed;
    j.update(serialize::transcript_json(transcript));
    emit_json(j, out);
  } else {
    render_transcript_text(transcript, *seed, out);
  }
  return transcript.decoded == transcript.secret ? kExitOk : kExitDiff;
}

inline std::optional<security::AdversaryView> parse_view(
    const std::string& name, int recipient, int permitter) {
  if (name == "cluster-bob") return security::AdversaryView::cluster_bob();
  if (name == "cluster-eve") return security::AdversaryView::cluster_eve();
  if (name == "cluster-full") {
    return security::AdversaryView::full(protocol::Protocol::Cluster);
  }
  if (name == "brown-full") {
    return security::AdversaryView::full(protocol::Protocol::Brown);
  }
  if (name == "brown-eve") {
    return security::AdversaryView::brown_eve(recipient - 1, permitter - 1);
  }
  const std::string prefix = "brown-controller:";
  if (name.rfind(prefix, 0) == 0 && name.size() == prefix.size() + 1) {
    const char c = name[prefix.size()];
    if (c >= '1' && c <= '3') {
      return security::AdversaryView::brown_controller(c - '1');
    }
  }
  return std::nullopt;
}

inline void render_report_text(const security::SecurityReport& report,
                               std::ostream& out) {
  out << "view: " << report.view << '\n';
  std::ostringstream mi;
  mi << std::fixed << std::setprecision(3) << report.mutual_information_bits;
  out << "mutual information: " << mi.str() << " bits\n";
  out << "max guess probability: " << fmt_real(report.max_guess_probability)
      << '\n';
  out << "determined: " << security::determined_bit_name(report.determined_bit)
      << '\n';
  out << "conditionals:\n";
  for (const auto& [visible, messages] : report.conditionals) {
    out << "  " << visible << " ->";
    for (const auto& [msg, p] : messages) {
      out << "  " << msg << ":" << fmt_real(p);
    }
    out << '\n';
  }
}

inline int cmd_audit(const std::string& view_name, int recipient,
                     int permitter, OutputFormat format, std::ostream& out,
                     std::ostream& err) {
  if (recipient == permitter) {
    err << "error: recipient and permitter must be distinct controllers\n";
    return kExitUsage;
  }
  const auto view = parse_view(view_name, recipient, permitter);
  if (!view) {
    err << "error: unknown view '" << view_name
        << "' (expected cluster-bob, cluster-eve, cluster-full, "
           "brown-controller:1|2|3, brown-eve, brown-full)\n";
    return kExitUsage;
  }
  const auto report = security::audit(*view);
  if (format == OutputFormat::Json) {
    emit_json(serialize::security_report_json(report), out);
  } else {
    render_report_text(report, out);
  }
  return kExitOk;
}

inline int cmd_efficiency(OutputFormat format, std::ostream& out) {
  const auto rows = metrics::comparison_table();
  if (format == OutputFormat::Json) {
    emit_json(serialize::efficiency_json(rows), out);
  } else {
    out << std::left << std::setw(20) << "protocol" << std::setw(10) << "eta1"
        << std::setw(10) << "eta2" << "source\n";
    for (const auto& row : rows) {
      out << std::left << std::setw(20) << row.name << std::setw(10)
          << fmt_fixed(row.eta1, 4) << std::setw(10) << fmt_fixed(row.eta2, 4)
          << (row.cited ? "cited" : "computed") << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_state_dump(const std::string& label, OutputFormat format,
                          std::ostream& out, std::ostream& err) {
  const auto state = state_by_label(label);
  if (!state) {
    err << "error: unknown state label '" << label
        << "' (expected cluster, brown, or bell-{phi+,phi-,psi+,psi-})\n";
    return kExitUsage;
  }
  if (format == OutputFormat::Json) {
    emit_json(serialize::named_state_json(*state), out);
    return kExitOk;
  }
  out << "label: " << state->label << '\n';
  out << "qubits:";
  for (const auto& role : state->qubit_roles) {
    out << ' ' << role.qubit << '=' << role.party;
  }
  out << '\n';
  out << std::left << std::setw(7) << "index" << std::setw(8) << "bits"
      << std::setw(16) << "re" << "im\n";
  const auto& amps = state->vector.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::norm(amps[i]) < qsim::kProbEpsilon) continue;
    out << std::left << std::setw(7) << i << std::setw(8)
        << qsim::bitstring_of(i, state->vector.num_qubits()) << std::setw(16)
        << fmt_real(amps[i].real()) << fmt_real(amps[i].imag()) << '\n';
  }
  return kExitOk;
}

}  // namespace detail

// Parses and dispatches one invocation.  `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"simulator, verifier, and security auditor for two controlled "
               "quantum secure direct communication protocols"};
  app.name("cqsdc");
  app.require_subcommand(1);

  std::string format_name = "text";
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "seed for the measurement sampler");

  auto* tables = app.add_subcommand("tables", "derived decode table");
  tables->fallthrough();
  std::string tables_protocol;
  tables->add_option("protocol", tables_protocol, "cluster or brown")
      ->required();
  bool check = false;
  tables->add_flag("--check", check,
                   "compare against the published reference table");

  auto* run_cmd = app.add_subcommand("run", "execute one session");
  run_cmd->fallthrough();
  std::string run_protocol;
  std::string run_message;
  int recipient = 1;
  int permitter = 2;
  run_cmd->add_option("protocol", run_protocol, "cluster or brown")->required();
  run_cmd->add_option("message", run_message, "2-bit message")->required();
  run_cmd->add_option("--recipient", recipient, "receiving controller (brown)")
      ->check(CLI::Range(1, 3));
  run_cmd->add_option("--permitter", permitter, "permitting controller (brown)")
      ->check(CLI::Range(1, 3));

  auto* audit_cmd = app.add_subcommand("audit", "security report for a view");
  audit_cmd->fallthrough();
  std::string view_name;
  int audit_recipient = 1;
  int audit_permitter = 2;
  audit_cmd->add_option("view", view_name, "adversary view")->required();
  audit_cmd
      ->add_option("--recipient", audit_recipient,
                   "receiving controller (brown-eve)")
      ->check(CLI::Range(1, 3));
  audit_cmd
      ->add_option("--permitter", audit_permitter,
                   "permitting controller (brown-eve)")
      ->check(CLI::Range(1, 3));

  app.add_subcommand("efficiency", "efficiency comparison table")
      ->fallthrough();

  auto* state_cmd = app.add_subcommand("state", "named resource states");
  state_cmd->fallthrough();
  auto* dump_cmd = state_cmd->add_subcommand("dump", "amplitude table");
  dump_cmd->fallthrough();
  std::string state_label;
  dump_cmd->add_option("label", state_label, "state label")->required();
  state_cmd->require_subcommand(1);

  std::vector<std::string> argv_like = args;
  argv_like.insert(argv_like.begin(), "cqsdc");
  std::vector<const char*> argv;
  argv.reserve(argv_like.size());
  for (const auto& a : argv_like) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const OutputFormat format =
      format_name == "json" ? OutputFormat::Json : OutputFormat::Text;

  try {
    if (tables->parsed()) {
      return detail::cmd_tables(tables_protocol, check, format, out, err);
    }
    if (run_cmd->parsed()) {
      const bool controllers_given = run_cmd->count("--recipient") > 0 ||
                                     run_cmd->count("--permitter") > 0;
      return detail::cmd_run(run_protocol, run_message, seed, recipient,
                             permitter, controllers_given, format, out, err);
    }
    if (audit_cmd->parsed()) {
      return detail::cmd_audit(view_name, audit_recipient, audit_permitter,
                               format, out, err);
    }
    if (app.get_subcommand("efficiency")->parsed()) {
      return detail::cmd_efficiency(format, out);
    }
    if (state_cmd->parsed() && dump_cmd->parsed()) {
      return detail::cmd_state_dump(state_label, format, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace cqsdc::cli
