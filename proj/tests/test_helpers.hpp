#pragma once

#include <complex>
#include <random>
#include <vector>

#include "cqsdc/qsim.hpp"

namespace test_helpers {

// Haar-ish random state: iid normal amplitudes, normalized.
inline cqsdc::qsim::StateVector random_state(int num_qubits,
                                             std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cqsdc::qsim::Amplitude> amps(std::size_t{1} << num_qubits);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = {gauss(engine), gauss(engine)};
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return cqsdc::qsim::StateVector(num_qubits, std::move(amps));
}

inline bool amp_near(cqsdc::qsim::Amplitude a, cqsdc::qsim::Amplitude b,
                     double eps = 1e-12) {
  return std::abs(a.real() - b.real()) <= eps &&
         std::abs(a.imag() - b.imag()) <= eps;
}

}  // namespace test_helpers
