// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exits nonzero if any fails.

#include <array>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cqsdc/cli.hpp"
#include "cqsdc/metrics.hpp"
#include "cqsdc/protocol.hpp"
#include "cqsdc/security.hpp"

using namespace cqsdc;
using namespace cqsdc::protocol;

namespace {

int failures = 0;

void report(int criterion, const std::string& description, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << description << '\n';
  if (!ok) ++failures;
}

bool near(double a, double b, double eps) { return std::abs(a - b) <= eps; }

qsim::StateVector random_state(int num_qubits, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<qsim::Amplitude> amps(std::size_t{1} << num_qubits);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = {gauss(engine), gauss(engine)};
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return qsim::StateVector(num_qubits, std::move(amps));
}

// 1. derived cluster table equals the published reference on all 16 rows
void criterion_cluster_table() {
  const auto derived = derive_decode_table(Protocol::Cluster);
  const auto published = published_decode_table(Protocol::Cluster);
  const bool ok = derived.rows.size() == 16 &&
                  published.rows.size() == 16 &&
                  derived.rows == published.rows;
  report(1, "cluster decode table matches the published reference 16/16", ok);
}

// 2. cluster round-trip over 4 messages x 4 branches
void criterion_cluster_round_trip() {
  int correct = 0;
  bool deterministic_tail = true;
  for (const auto& m : kAllMessages) {
    for (int branch = 0; branch < 4; ++branch) {
      auto rng =
          qsim::RandomSource::from_values({(branch + 0.5) / 4.0, 0.5, 0.5});
      const auto t = run_cluster(m, rng);
      if (t.decoded == m) ++correct;
      for (std::size_t i = 1; i < t.records.size(); ++i) {
        deterministic_tail &= near(t.records[i].probability, 1.0, 1e-12);
      }
    }
  }
  report(2, "cluster round-trip decodes 16/16 probability-1 branches",
         correct == 16 && deterministic_tail);
}

// 3. brown round-trip over 4 messages x 4 bell branches x 3 coalitions
void criterion_brown_round_trip() {
  const std::array<std::pair<PartyId, PartyId>, 3> coalitions = {
      std::pair{PartyId::Charlie1, PartyId::Charlie2},
      std::pair{PartyId::Charlie1, PartyId::Charlie3},
      std::pair{PartyId::Charlie2, PartyId::Charlie3},
  };
  int correct = 0;
  for (const auto& m : kAllMessages) {
    for (int branch = 0; branch < 4; ++branch) {
      for (const auto& [recipient, permitter] : coalitions) {
        auto rng = qsim::RandomSource::from_values(
            {(branch + 0.5) / 4.0, 0.5, 0.5, 0.5});
        const auto t = run_brown(m, recipient, permitter, rng);
        if (t.decoded == m) ++correct;
      }
    }
  }
  report(3, "brown round-trip decodes 48/48 coalition cases", correct == 48);
}

// 4. brown derived vs published diff is exactly the 01/11 block interchange
void criterion_brown_diff() {
  const auto diffs = diff_decode_tables(derive_decode_table(Protocol::Brown),
                                        published_decode_table(Protocol::Brown));
  const auto m = [](const char* s) { return *Message2::parse(s); };
  const std::vector<RowDiff> expected = {
      {"phi+", "010", m("01"), m("11")}, {"phi+", "111", m("11"), m("01")},
      {"phi-", "010", m("11"), m("01")}, {"phi-", "111", m("01"), m("11")},
      {"psi+", "001", m("01"), m("11")}, {"psi+", "100", m("11"), m("01")},
      {"psi-", "001", m("11"), m("01")}, {"psi-", "100", m("01"), m("11")},
  };
  report(4, "brown table diff is exactly the documented 01/11 interchange",
         diffs == expected);
}

// 5. odd parity of the controller bits in every enumerated brown branch
void criterion_parity_law() {
  const auto branches = enumerate_branches(Protocol::Brown);
  bool ok = branches.size() == 16;
  for (const auto& b : branches) {
    const int parity =
        (b.helpers[0] - '0') ^ (b.helpers[1] - '0') ^ (b.helpers[2] - '0');
    ok &= parity == 1;
  }
  report(5, "controller parity a^b^c = 1 holds in 16/16 brown branches", ok);
}

// 6. the four adversary views leak exactly one known bit
void criterion_security_audits() {
  using security::AdversaryView;
  using security::DeterminedBit;
  bool ok = true;

  const auto bob = security::audit(AdversaryView::cluster_bob());
  ok &= near(bob.mutual_information_bits, 1.0, 1e-9);
  ok &= near(bob.max_guess_probability, 0.5, 1e-12);
  ok &= bob.determined_bit == DeterminedBit::SecondBit;

  const auto eve = security::audit(AdversaryView::cluster_eve());
  ok &= near(eve.mutual_information_bits, 1.0, 1e-9);
  ok &= near(eve.max_guess_probability, 0.5, 1e-12);
  ok &= eve.determined_bit == DeterminedBit::Parity;

  for (int controller = 0; controller < 3; ++controller) {
    const auto r = security::audit(AdversaryView::brown_controller(controller));
    ok &= near(r.mutual_information_bits, 1.0, 1e-9);
    ok &= near(r.max_guess_probability, 0.5, 1e-12);
  }

  const auto brown_eve = security::audit(AdversaryView::brown_eve(0, 1));
  ok &= near(brown_eve.mutual_information_bits, 1.0, 1e-9);
  ok &= near(brown_eve.max_guess_probability, 0.5, 1e-12);

  report(6,
         "audits: I = 1 bit, max guess 1/2; bob learns the 2nd bit, eve the "
         "parity",
         ok);
}

// 7. a single brown controller always faces two equiprobable messages
void criterion_single_controller() {
  bool ok = true;
  for (int controller = 0; controller < 3; ++controller) {
    const auto r = security::audit(
        security::AdversaryView::brown_controller(controller));
    ok &= r.conditionals.size() == 8;
    for (const auto& [visible, messages] : r.conditionals) {
      ok &= messages.size() == 2;
      for (const auto& [m, p] : messages) ok &= near(p, 0.5, 1e-12);
    }
  }
  report(7, "single-controller views leave 2 messages at 1/2 each", ok);
}

// 8. efficiency ratios from transcript-derived counts
void criterion_efficiency() {
  const auto cluster = metrics::protocol_counts(Protocol::Cluster);
  const auto brown = metrics::protocol_counts(Protocol::Brown);
  bool ok = true;
  ok &= near(metrics::eta1(cluster), 0.2857, 0.005);  // printed as 0.28
  ok &= near(metrics::eta2(cluster), 0.50, 1e-12);
  ok &= near(metrics::eta1(brown), 0.25, 1e-12);
  ok &= near(metrics::eta2(brown), 0.40, 1e-12);
  report(8, "efficiency: cluster 0.2857/0.50, brown 0.25/0.40", ok);
}

// 9. engine properties over >= 1000 random cases each
void criterion_engine_properties() {
  std::mt19937_64 engine(424242);
  std::uniform_int_distribution<int> qubit_count(1, 6);
  std::uniform_int_distribution<int> pauli_pick(0, 2);
  bool ok = true;

  for (int trial = 0; trial < 1000; ++trial) {
    const int n = qubit_count(engine);
    const auto state = random_state(n, engine);
    std::uniform_int_distribution<int> qubit_pick(0, n - 1);
    const int qubit = qubit_pick(engine);
    const auto op = static_cast<qsim::PauliOp>(pauli_pick(engine));

    const auto once = qsim::apply_pauli(state, qubit, op);
    ok &= std::abs(once.norm() - 1.0) < 1e-9;
    const auto twice = qsim::apply_pauli(once, qubit, op);
    for (std::size_t i = 0; i < state.amps().size(); ++i) {
      ok &= std::abs(twice.amp(i).real() - state.amp(i).real()) < 1e-12;
      ok &= std::abs(twice.amp(i).imag() - state.amp(i).imag()) < 1e-12;
    }

    std::vector<int> qubits(static_cast<std::size_t>(n));
    std::iota(qubits.begin(), qubits.end(), 0);
    double total = 0.0;
    for (const auto& [bits, p] : qsim::outcome_distribution(state, qubits)) {
      total += p;
    }
    ok &= std::abs(total - 1.0) < 1e-9;
  }

  std::uniform_int_distribution<int> position(0, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto state = random_state(5, engine);
    int q1 = position(engine);
    int q2 = position(engine);
    if (q1 == q2) q2 = (q2 + 1) % 5;
    const auto probs = qsim::bell_probabilities(state, {q1, q2});
    ok &= std::abs(probs[0] + probs[1] + probs[2] + probs[3] - 1.0) < 1e-9;
  }

  report(9, "engine properties hold over 1000 random cases per law", ok);
}

// 10. seeded json output is byte-identical across runs
void criterion_determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"tables", "cluster", "--check", "--format", "json"},
      {"tables", "brown", "--check", "--format", "json"},
      {"run", "cluster", "01", "--seed", "7", "--format", "json"},
      {"run", "brown", "10", "--seed", "7", "--recipient", "1", "--permitter",
       "2", "--format", "json"},
      {"audit", "cluster-bob", "--format", "json"},
      {"audit", "brown-eve", "--format", "json"},
      {"efficiency", "--format", "json"},
      {"state", "dump", "brown", "--format", "json"},
  };
  bool ok = true;
  for (const auto& command : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int code1 = cli::run(command, out1, err1);
    const int code2 = cli::run(command, out2, err2);
    ok &= code1 == code2;
    ok &= out1.str() == out2.str();
    ok &= !out1.str().empty();
  }
  report(10, "seeded json output is byte-identical across runs", ok);
}

}  // namespace

int main() {
  criterion_cluster_table();
  criterion_cluster_round_trip();
  criterion_brown_round_trip();
  criterion_brown_diff();
  criterion_parity_law();
  criterion_security_audits();
  criterion_single_controller();
  criterion_efficiency();
  criterion_engine_properties();
  criterion_determinism();

  if (failures != 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 acceptance criteria passed\n";
  return 0;
}
