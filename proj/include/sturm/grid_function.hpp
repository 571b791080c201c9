#pragma once

#include <optional>
#include <vector>

namespace sturm {

// Discretized function on a strictly increasing grid, with optional first-
// and second-derivative tracks.
struct GridFunction {
  std::vector<double> grid;
  std::vector<double> values;
  std::optional<std::vector<double>> d1;
  std::optional<std::vector<double>> d2;

  std::size_t size() const { return grid.size(); }
};

// Throws std::invalid_argument unless grid/values (and present tracks) have
// matching lengths and the grid is strictly increasing.
void validate(const GridFunction& g);

// Uniform grid helper, n points inclusive of both ends.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace sturm
