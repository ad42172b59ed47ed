#pragma once

#include <array>
#include <string>
#include <vector>

#include "epsrel/error.hpp"

namespace epsrel {

enum class RiskColor { Green, Yellow, Red };

std::string_view to_string(RiskColor color);

struct RiskItem {
  std::string name;
  double probability = 0.0;  // in [0,1]
  int severity = 1;          // ordinal 1..5
};

/// Likelihood bin boundaries and the diagonal color rule.  An item is Red
/// when likelihood+severity >= red_min, Yellow when >= yellow_min, Green
/// otherwise; this keeps colors monotone along both axes for any accepted
/// configuration.
struct RiskThresholds {
  std::array<double, 4> likelihood_cuts{1e-6, 1e-4, 1e-2, 1e-1};
  int yellow_min = 5;
  int red_min = 8;
};

/// Throws BadThresholds unless the cuts ascend strictly within (0,1) and
/// yellow_min <= red_min.
void validate_thresholds(const RiskThresholds& thresholds);

struct RiskCell {
  int likelihood = 1;  // 1..5
  int severity = 1;    // 1..5
  RiskColor color = RiskColor::Green;
  std::size_t count = 0;
};

struct RiskMatrix {
  RiskThresholds thresholds;
  std::array<RiskCell, 25> cells{};  // row-major: (likelihood-1)*5+(severity-1)
  std::vector<RiskItem> items;

  const RiskCell& cell(int likelihood, int severity) const;
};

/// Bin 1..5 for a probability: bin k while p is below cut k, bin 5 past the
/// last cut.  Throws OutOfRange for p outside [0,1].
int likelihood_bin(double probability,
                   const RiskThresholds& thresholds = {});

RiskColor cell_color(int likelihood, int severity,
                     const RiskThresholds& thresholds = {});

/// Places every item in its (likelihood bin, severity) cell.
RiskMatrix classify(const std::vector<RiskItem>& items,
                    const RiskThresholds& thresholds = {});

/// 5x5 text grid with per-cell color letter and item count.
std::string render_risk_matrix(const RiskMatrix& matrix);

}  // namespace epsrel
