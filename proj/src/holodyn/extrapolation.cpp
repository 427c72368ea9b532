#include "holodyn/extrapolation.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace holodyn {

Extrapolation richardson(std::span<const Complex> values, double ratio, int levels) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "no samples to extrapolate");
  const std::size_t m = std::min<std::size_t>(values.size(), static_cast<std::size_t>(std::max(1, levels)));
  const auto tail = values.subspan(values.size() - m);
  if (m == 1) return {tail[0], std::numeric_limits<double>::infinity()};
  // table[i][j]: j-fold eliminated estimate ending at sample i.
  std::vector<std::vector<Complex>> table(m);
  for (std::size_t i = 0; i < m; ++i) {
    table[i].push_back(tail[i]);
    double p = 1.0;
    for (std::size_t j = 1; j <= i; ++j) {
      p *= ratio;
      table[i].push_back((p * table[i][j - 1] - table[i - 1][j - 1]) / (p - 1.0));
    }
  }
  const Complex last = table[m - 1][m - 1];
  const Complex prev = table[m - 2][m - 2];
  return {last, std::abs(last - prev)};
}

}  // namespace holodyn
