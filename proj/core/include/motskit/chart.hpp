// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <string>

namespace motskit {

/// A point in a single coordinate chart.
struct ChartPoint {
  Eigen::VectorXd coords;
  std::string chart_id = "default";

  static ChartPoint of(std::initializer_list<double> c) {
    ChartPoint p;
    p.coords = Eigen::VectorXd(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (double v : c) p.coords[i++] = v;
    return p;
  }

  int dim() const { return static_cast<int>(coords.size()); }
};

}  // namespace motskit
