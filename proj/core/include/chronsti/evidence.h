#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "chronsti/distributions.h"
#include "chronsti/model.h"

namespace chronsti {

inline constexpr int kCalibrationYears = 5;

// Yearly counts of high-risk people of both sexes in the four alive states.
// Year 1 is the start of follow-up (time 0).
struct CalibrationSeries {
  // [year - 1][sex][alive state]
  std::array<std::array<std::array<double, kNumAliveStates>, 2>, kCalibrationYears> counts{};

  double at(int year, Sex sex, HealthState state) const {
    return counts[static_cast<std::size_t>(year - 1)][static_cast<std::size_t>(sex)]
                 [static_cast<std::size_t>(state)];
  }
  double& at(int year, Sex sex, HealthState state) {
    return counts[static_cast<std::size_t>(year - 1)][static_cast<std::size_t>(sex)]
                 [static_cast<std::size_t>(state)];
  }
};

struct EvidenceData {
  // Yearly partner counts reported by registry members, per stratum.
  std::array<std::vector<std::int64_t>, kNumStrata> partner_counts;
  // Binomial evidence for beta, eta, sigma, alpha, gamma.
  std::map<ParamId, BinomialCount> binomial;
  CalibrationSeries calibration;

  void validate() const;  // throws InvalidParameters
};

/// Model output matching a calibration series: the high-risk rows of a
/// trajectory at time indices 0..4.
CalibrationSeries calibration_view(const Trajectory& trajectory);

}  // namespace chronsti
