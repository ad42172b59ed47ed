#include "epsrel/risk_matrix.hpp"

#include <cmath>
#include <sstream>

namespace epsrel {

std::string_view to_string(RiskColor color) {
  switch (color) {
    case RiskColor::Green: return "green";
    case RiskColor::Yellow: return "yellow";
    case RiskColor::Red: return "red";
  }
  return "?";
}

void validate_thresholds(const RiskThresholds& t) {
  double previous = 0.0;
  for (double cut : t.likelihood_cuts) {
    if (!(cut > previous) || !(cut < 1.0)) {
      throw Error(ErrorCode::BadThresholds,
                  "likelihood cuts must ascend strictly within (0,1)");
    }
    previous = cut;
  }
  if (t.yellow_min > t.red_min) {
    throw Error(ErrorCode::BadThresholds,
                "yellow threshold above red would break color monotonicity");
  }
}

int likelihood_bin(double probability, const RiskThresholds& thresholds) {
  validate_thresholds(thresholds);
  if (!(probability >= 0.0) || probability > 1.0) {
    throw Error(ErrorCode::OutOfRange, "probability must be in [0,1]");
  }
  for (std::size_t i = 0; i < thresholds.likelihood_cuts.size(); ++i) {
    if (probability < thresholds.likelihood_cuts[i]) {
      return static_cast<int>(i) + 1;
    }
  }
  return 5;
}

RiskColor cell_color(int likelihood, int severity,
                     const RiskThresholds& thresholds) {
  const int sum = likelihood + severity;
  if (sum >= thresholds.red_min) return RiskColor::Red;
  if (sum >= thresholds.yellow_min) return RiskColor::Yellow;
  return RiskColor::Green;
}

const RiskCell& RiskMatrix::cell(int likelihood, int severity) const {
  if (likelihood < 1 || likelihood > 5 || severity < 1 || severity > 5) {
    throw Error(ErrorCode::OutOfRange, "matrix bins run 1..5");
  }
  return cells[static_cast<std::size_t>((likelihood - 1) * 5 + severity - 1)];
}

RiskMatrix classify(const std::vector<RiskItem>& items,
                    const RiskThresholds& thresholds) {
  validate_thresholds(thresholds);
  RiskMatrix matrix;
  matrix.thresholds = thresholds;
  for (int l = 1; l <= 5; ++l) {
    for (int s = 1; s <= 5; ++s) {
      RiskCell& cell =
          matrix.cells[static_cast<std::size_t>((l - 1) * 5 + s - 1)];
      cell.likelihood = l;
      cell.severity = s;
      cell.color = cell_color(l, s, thresholds);
    }
  }
  for (const RiskItem& item : items) {
    if (item.severity < 1 || item.severity > 5) {
      throw Error(ErrorCode::OutOfRange,
                  "severity of \"" + item.name + "\" must be 1..5");
    }
    const int l = likelihood_bin(item.probability, thresholds);
    matrix.cells[static_cast<std::size_t>((l - 1) * 5 + item.severity - 1)]
        .count++;
  }
  matrix.items = items;
  return matrix;
}

std::string render_risk_matrix(const RiskMatrix& matrix) {
  std::ostringstream out;
  out << "likelihood rows (5 = most likely), severity columns (5 = worst)\n";
  out << "      S1     S2     S3     S4     S5\n";
  for (int l = 5; l >= 1; --l) {
    out << "L" << l << "  ";
    for (int s = 1; s <= 5; ++s) {
      const RiskCell& cell = matrix.cell(l, s);
      char letter = 'G';
      if (cell.color == RiskColor::Yellow) letter = 'Y';
      if (cell.color == RiskColor::Red) letter = 'R';
      out << "  " << letter << ':' << cell.count;
      // pad to fixed width for alignment
      std::string count = std::to_string(cell.count);
      for (std::size_t pad = count.size(); pad < 3; ++pad) out << ' ';
    }
    out << '\n';
  }
  out << "items: " << matrix.items.size() << '\n';
  return out.str();
}

}  // namespace epsrel
