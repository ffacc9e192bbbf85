#pragma once

// Exact information-theoretic audits of adversary views.  Everything is
// computed by exhaustive enumeration of the (message, measurement branch)
// space under a uniform message prior: conditional distributions, mutual
// information, the best guessing probability, and which bit of the message
// (if any) the view pins down.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqsdc/protocol.hpp"

namespace cqsdc::security {

using protocol::Message2;
using protocol::PartyId;
using protocol::Protocol;

// Joint distribution over (message, observable tuple) with a uniform prior
// over the four messages.
struct JointAtom {
  Message2 message;
  std::string alice;    // cluster: alice's bits; brown: bell outcome label
  std::string helpers;  // cluster: bob+charlie bits; brown: controller bits
  double probability;
};

struct JointDistribution {
  Protocol protocol;
  std::vector<JointAtom> atoms;
};

inline JointDistribution joint_distribution(Protocol protocol) {
  JointDistribution jd{protocol, {}};
  for (const auto& branch : protocol::enumerate_branches(protocol)) {
    jd.atoms.push_back(JointAtom{branch.message, branch.alice, branch.helpers,
                                 0.25 * branch.probability});
  }
  return jd;
}

// What an adversary sees of the transcript.
struct AdversaryView {
  enum class Kind {
    ClusterBobWithoutCharlie,  // alice's two bits + bob's own bit
    ClusterEveAllClassical,    // alice's two bits + charlie's reported bit
    BrownSingleController,     // alice's bell outcome + one controller's bit
    BrownEveAllClassical,      // alice's broadcast + the permitter's bit
    FullTranscript             // degenerate: every observable (decoder's view)
  };

  Kind kind;
  Protocol protocol;
  int controller = 0;  // BrownSingleController: position 0..2
  int recipient = 0;   // BrownEveAllClassical: recipient position 0..2
  int permitter = 1;   // BrownEveAllClassical: permitter position 0..2

  static AdversaryView cluster_bob() {
    return {Kind::ClusterBobWithoutCharlie, Protocol::Cluster};
  }
  static AdversaryView cluster_eve() {
    return {Kind::ClusterEveAllClassical, Protocol::Cluster};
  }
  static AdversaryView brown_controller(int position) {
    if (position < 0 || position > 2) {
      throw std::invalid_argument("controller position must be 0..2");
    }
    return {Kind::BrownSingleController, Protocol::Brown, position};
  }
  static AdversaryView brown_eve(int recipient, int permitter) {
    if (recipient < 0 || recipient > 2 || permitter < 0 || permitter > 2) {
      throw std::invalid_argument("controller positions must be 0..2");
    }
    if (recipient == permitter) {
      throw std::invalid_argument("recipient and permitter must be distinct");
    }
    return {Kind::BrownEveAllClassical, Protocol::Brown, 0, recipient,
            permitter};
  }
  static AdversaryView full(Protocol protocol) {
    return {Kind::FullTranscript, protocol};
  }

  std::string label() const {
    switch (kind) {
      case Kind::ClusterBobWithoutCharlie: return "cluster-bob";
      case Kind::ClusterEveAllClassical: return "cluster-eve";
      case Kind::BrownSingleController:
        return "brown-controller:" + std::to_string(controller + 1);
      case Kind::BrownEveAllClassical:
        return "brown-eve(recipient=" + std::to_string(recipient + 1) +
               ",permitter=" + std::to_string(permitter + 1) + ")";
      case Kind::FullTranscript:
        return std::string(protocol_name(protocol)) + "-full";
    }
    throw std::logic_error("unreachable view kind");
  }

  // Projects a full observable tuple onto what this view reveals.
  std::string project(const std::string& alice,
                      const std::string& helpers) const {
    switch (kind) {
      case Kind::ClusterBobWithoutCharlie:
        return alice + "|" + helpers[0];
      case Kind::ClusterEveAllClassical:
        return alice + "|" + helpers[1];
      case Kind::BrownSingleController:
        return alice + "|" + helpers[static_cast<std::size_t>(controller)];
      case Kind::BrownEveAllClassical:
        return alice + "|" + helpers[static_cast<std::size_t>(permitter)];
      case Kind::FullTranscript:
        return alice + "|" + helpers;
    }
    throw std::logic_error("unreachable view kind");
  }
};

// The message bit (or bit function) a view determines, if any.
enum class DeterminedBit { None, FirstBit, SecondBit, Parity, AllBits };

inline const char* determined_bit_name(DeterminedBit d) {
  switch (d) {
    case DeterminedBit::None: return "none";
    case DeterminedBit::FirstBit: return "first message bit";
    case DeterminedBit::SecondBit: return "second message bit";
    case DeterminedBit::Parity: return "parity";
    case DeterminedBit::AllBits: return "all bits";
  }
  throw std::logic_error("unreachable determined bit");
}

struct SecurityReport {
  std::string view;
  double mutual_information_bits;
  double max_guess_probability;
  DeterminedBit determined_bit;
  // visible tuple -> message -> P(message | visible tuple)
  std::map<std::string, std::map<std::string, double>> conditionals;
};

inline double log2_safe(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

inline SecurityReport audit(const AdversaryView& view) {
  const auto jd = joint_distribution(view.protocol);

  // p(v) and p(m, v) over visible tuples
  std::map<std::string, double> p_visible;
  std::map<std::string, std::map<int, double>> p_joint;
  std::array<double, 4> p_message{0.0, 0.0, 0.0, 0.0};
  for (const auto& atom : jd.atoms) {
    const auto visible = view.project(atom.alice, atom.helpers);
    p_visible[visible] += atom.probability;
    p_joint[visible][atom.message.index()] += atom.probability;
    p_message[static_cast<std::size_t>(atom.message.index())] +=
        atom.probability;
  }

  SecurityReport report{view.label(), 0.0, 0.0, DeterminedBit::None, {}};

  double mutual_information = 0.0;
  double max_guess = 0.0;
  // For each of the three nontrivial parity functions of (m1, m2), track
  // whether the function is constant on the support of every conditional.
  std::array<bool, 3> bit_determined{true, true, true};  // m1, m2, m1^m2

  for (const auto& [visible, messages] : p_joint) {
    const double pv = p_visible[visible];
    double best = 0.0;
    std::array<std::optional<bool>, 3> seen{};
    for (const auto& [mi, pmv] : messages) {
      if (pmv < qsim::kProbEpsilon) continue;
      const auto msg = Message2::from_index(mi);
      const double conditional = pmv / pv;
      report.conditionals[visible][msg.str()] = conditional;
      best = std::max(best, conditional);
      mutual_information +=
          pmv * log2_safe(pmv / (p_message[static_cast<std::size_t>(mi)] * pv));
      const std::array<bool, 3> value{msg.m1, msg.m2,
                                      static_cast<bool>(msg.m1 ^ msg.m2)};
      for (int f = 0; f < 3; ++f) {
        if (!seen[f].has_value()) {
          seen[f] = value[f];
        } else if (*seen[f] != value[f]) {
          bit_determined[f] = false;
        }
      }
    }
    max_guess += pv * best;
  }

  report.mutual_information_bits = mutual_information;
  report.max_guess_probability = max_guess;

  const int determined_count =
      bit_determined[0] + bit_determined[1] + bit_determined[2];
  if (determined_count == 3) {
    report.determined_bit = DeterminedBit::AllBits;
  } else if (bit_determined[0]) {
    report.determined_bit = DeterminedBit::FirstBit;
  } else if (bit_determined[1]) {
    report.determined_bit = DeterminedBit::SecondBit;
  } else if (bit_determined[2]) {
    report.determined_bit = DeterminedBit::Parity;
  }
  return report;
}

}  // namespace cqsdc::security
