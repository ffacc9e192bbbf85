#pragma once

// Minimal exact statevector engine for small qubit registers.
//
// Conventions used throughout:
//   - qubit 0 is the leftmost symbol of a ket; the basis index of a bit
//     string is its big-endian integer value (|1001> on 4 qubits = index 9)
//   - states are immutable values; measurement returns the collapsed state
//   - probabilities below kProbEpsilon are treated as exactly zero

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cqsdc::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kProbEpsilon = 1e-12;

enum class PauliOp { I, X, Z };

// The four Bell states of an ordered qubit pair:
//   PhiPlus  = (|00> + |11>)/sqrt(2)
//   PhiMinus = (|00> - |11>)/sqrt(2)
//   PsiPlus  = (|01> + |10>)/sqrt(2)
//   PsiMinus = (|01> - |10>)/sqrt(2)
enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus,
    BellOutcome::PsiMinus};

inline const char* bell_label(BellOutcome k) {
  switch (k) {
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
  }
  throw std::logic_error("unreachable bell outcome");
}

// Wire encoding of a Bell outcome as two classical bits:
// phi+ = 00, phi- = 01, psi- = 10, psi+ = 11.
inline const char* bell_wire_bits(BellOutcome k) {
  switch (k) {
    case BellOutcome::PhiPlus: return "00";
    case BellOutcome::PhiMinus: return "01";
    case BellOutcome::PsiMinus: return "10";
    case BellOutcome::PsiPlus: return "11";
  }
  throw std::logic_error("unreachable bell outcome");
}

// Coefficients of a Bell state over the pair basis (|00>, |01>, |10>, |11>).
inline std::array<Amplitude, 4> bell_coefficients(BellOutcome k) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case BellOutcome::PhiPlus: return {r, 0.0, 0.0, r};
    case BellOutcome::PhiMinus: return {r, 0.0, 0.0, -r};
    case BellOutcome::PsiPlus: return {0.0, r, r, 0.0};
    case BellOutcome::PsiMinus: return {0.0, r, -r, 0.0};
  }
  throw std::logic_error("unreachable bell outcome");
}

// Seedable deterministic stream of uniform reals in [0,1).  The same seed
// always reproduces the same sequence, independent of platform.  A replay
// source built with from_values() hands out the given values in order and
// throws once exhausted; protocol tests use it to force measurement branches.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  static RandomSource from_values(std::vector<double> values) {
    RandomSource src(0);
    src.replay_ = std::move(values);
    src.replaying_ = true;
    return src;
  }

  double next() {
    if (replaying_) {
      if (pos_ >= replay_.size()) {
        throw std::out_of_range("RandomSource replay values exhausted");
      }
      return replay_[pos_++];
    }
    // 53 high bits of the engine output give a uniform double in [0,1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
  std::vector<double> replay_;
  std::size_t pos_ = 0;
  bool replaying_ = false;
};

class StateVector {
 public:
  StateVector(int num_qubits, std::vector<Amplitude> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
      throw std::invalid_argument("num_qubits must be in [1," +
                                  std::to_string(kMaxQubits) + "]");
    }
    if (amps_.size() != (std::size_t{1} << num_qubits_)) {
      throw std::invalid_argument("amplitude count must be 2^num_qubits");
    }
    double norm2 = 0.0;
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("amplitudes must be finite");
      }
      norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
      throw std::invalid_argument("state vector is not normalized");
    }
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<Amplitude>& amps() const { return amps_; }
  const Amplitude& amp(std::size_t index) const { return amps_.at(index); }

  double norm() const {
    double norm2 = 0.0;
    for (const auto& a : amps_) norm2 += std::norm(a);
    return std::sqrt(norm2);
  }

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

// Bit of `qubit` inside basis index `index` (qubit 0 = most significant).
inline int bit_of(std::size_t index, int qubit, int num_qubits) {
  return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
}

inline std::size_t qubit_mask(int qubit, int num_qubits) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

inline std::string bitstring_of(std::size_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if (bit_of(index, q, num_qubits)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

inline std::size_t index_of(const std::string& bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may contain only 0 and 1");
    }
    index = (index << 1) | static_cast<std::size_t>(c == '1');
  }
  return index;
}

inline StateVector basis_state(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("num_qubits must be in [1," +
                                std::to_string(kMaxQubits) + "]");
  }
  if (index >= (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("basis index out of range");
  }
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits, Amplitude{0.0});
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

inline void check_qubit(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument("qubit index out of range");
  }
}

inline void check_qubits(const StateVector& state,
                         const std::vector<int>& qubits) {
  if (qubits.empty()) {
    throw std::invalid_argument("qubit list must not be empty");
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    check_qubit(state, qubits[i]);
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("duplicate qubit in list");
      }
    }
  }
}

inline StateVector apply_pauli(const StateVector& state, int qubit,
                               PauliOp op) {
  check_qubit(state, qubit);
  const auto& in = state.amps();
  if (op == PauliOp::I) return state;

  const std::size_t mask = qubit_mask(qubit, state.num_qubits());
  std::vector<Amplitude> out(in.size());
  if (op == PauliOp::X) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i ^ mask];
  } else {  // Z
    for (std::size_t i = 0; i < in.size(); ++i) {
      out[i] = (i & mask) ? -in[i] : in[i];
    }
  }
  return StateVector(state.num_qubits(), std::move(out));
}

// Born-rule distribution over computational outcomes of the listed qubits,
// in qubit-list order.  Entries below kProbEpsilon are pruned; the result is
// sorted by outcome bit string.
inline std::vector<std::pair<std::string, double>> outcome_distribution(
    const StateVector& state, const std::vector<int>& qubits) {
  check_qubits(state, qubits);
  std::map<std::string, double> acc;
  const auto& amps = state.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    std::string bits(qubits.size(), '0');
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      if (bit_of(i, qubits[j], state.num_qubits())) bits[j] = '1';
    }
    acc[bits] += p;
  }
  std::vector<std::pair<std::string, double>> dist;
  for (const auto& [bits, p] : acc) {
    if (p >= kProbEpsilon) dist.emplace_back(bits, p);
  }
  return dist;
}

struct Projection {
  double probability;
  StateVector state;
};

// Projects the listed qubits onto the given outcome bits and renormalizes.
inline Projection project_computational(const StateVector& state,
                                        const std::vector<int>& qubits,
                                        const std::string& bits) {
  check_qubits(state, qubits);
  if (bits.size() != qubits.size()) {
    throw std::invalid_argument("outcome length must match qubit count");
  }
  const auto& in = state.amps();
  std::vector<Amplitude> out(in.size(), Amplitude{0.0});
  double prob = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      if (bit_of(i, qubits[j], state.num_qubits()) != (bits[j] == '1')) {
        match = false;
        break;
      }
    }
    if (match) {
      out[i] = in[i];
      prob += std::norm(in[i]);
    }
  }
  if (prob < kProbEpsilon) {
    throw std::invalid_argument("cannot collapse onto zero-probability outcome");
  }
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : out) a *= scale;
  return Projection{prob, StateVector(state.num_qubits(), std::move(out))};
}

struct MeasurementResult {
  std::string bits;
  double probability;
  StateVector state;
};

inline MeasurementResult measure_computational(const StateVector& state,
                                               const std::vector<int>& qubits,
                                               RandomSource& rng) {
  const auto dist = outcome_distribution(state, qubits);
  const double u = rng.next();
  double cumulative = 0.0;
  std::size_t pick = dist.size() - 1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    cumulative += dist[i].second;
    if (u < cumulative) {
      pick = i;
      break;
    }
  }
  auto proj = project_computational(state, qubits, dist[pick].first);
  return MeasurementResult{dist[pick].first, proj.probability,
                           std::move(proj.state)};
}

inline void check_pair(const StateVector& state, std::pair<int, int> pair) {
  check_qubit(state, pair.first);
  check_qubit(state, pair.second);
  if (pair.first == pair.second) {
    throw std::invalid_argument("bell measurement needs two distinct qubits");
  }
}

// Projects the ordered qubit pair onto one Bell state and renormalizes.
inline Projection project_bell(const StateVector& state,
                               std::pair<int, int> pair, BellOutcome outcome) {
  check_pair(state, pair);
  const int n = state.num_qubits();
  const std::size_t m1 = qubit_mask(pair.first, n);
  const std::size_t m2 = qubit_mask(pair.second, n);
  const auto b = bell_coefficients(outcome);
  const auto& in = state.amps();
  std::vector<Amplitude> out(in.size(), Amplitude{0.0});
  double prob = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if ((i & m1) || (i & m2)) continue;  // i ranges over rest-configurations
    const std::array<std::size_t, 4> idx = {i, i | m2, i | m1, i | m1 | m2};
    Amplitude overlap{0.0};
    for (int k = 0; k < 4; ++k) overlap += std::conj(b[k]) * in[idx[k]];
    prob += std::norm(overlap);
    for (int k = 0; k < 4; ++k) out[idx[k]] = b[k] * overlap;
  }
  if (prob < kProbEpsilon) {
    throw std::invalid_argument("cannot collapse onto zero-probability outcome");
  }
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : out) a *= scale;
  return Projection{prob, StateVector(state.num_qubits(), std::move(out))};
}

// Probabilities of the four Bell outcomes on the ordered pair, indexed as
// kBellOutcomes (phi+, phi-, psi+, psi-).  They sum to 1: the Bell basis is
// complete on the pair.
inline std::array<double, 4> bell_probabilities(const StateVector& state,
                                                std::pair<int, int> pair) {
  check_pair(state, pair);
  const int n = state.num_qubits();
  const std::size_t m1 = qubit_mask(pair.first, n);
  const std::size_t m2 = qubit_mask(pair.second, n);
  const auto& in = state.amps();
  std::array<double, 4> probs{0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < in.size(); ++i) {
    if ((i & m1) || (i & m2)) continue;
    const std::array<std::size_t, 4> idx = {i, i | m2, i | m1, i | m1 | m2};
    for (int k = 0; k < 4; ++k) {
      const auto b = bell_coefficients(kBellOutcomes[k]);
      Amplitude overlap{0.0};
      for (int c = 0; c < 4; ++c) overlap += std::conj(b[c]) * in[idx[c]];
      probs[k] += std::norm(overlap);
    }
  }
  return probs;
}

struct BellMeasurementResult {
  BellOutcome outcome;
  double probability;
  StateVector state;
};

inline BellMeasurementResult measure_bell(const StateVector& state,
                                          std::pair<int, int> pair,
                                          RandomSource& rng) {
  const auto probs = bell_probabilities(state, pair);
  const double u = rng.next();
  double cumulative = 0.0;
  int pick = 3;
  for (int k = 0; k < 4; ++k) {
    cumulative += probs[k];
    if (u < cumulative && probs[k] >= kProbEpsilon) {
      pick = k;
      break;
    }
  }
  while (probs[pick] < kProbEpsilon) --pick;  // guard fp edge at u ~= 1
  auto proj = project_bell(state, pair, kBellOutcomes[pick]);
  return BellMeasurementResult{kBellOutcomes[pick], proj.probability,
                               std::move(proj.state)};
}

}  // namespace cqsdc::qsim
