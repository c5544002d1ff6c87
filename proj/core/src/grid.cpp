#include "apchemo/grid.hpp"

#include <cmath>
#include <string>

#include "apchemo/errors.hpp"

namespace apchemo {

SpatialAxis SpatialAxis::from_count(double x_min, double x_max, std::size_t n) {
  if (!(x_max > x_min)) throw InvalidArgument("spatial axis: x_max must exceed x_min");
  if (n < 1) throw InvalidArgument("spatial axis: need at least one node");
  return SpatialAxis{x_min, x_max, (x_max - x_min) / static_cast<double>(n), n};
}

SpatialAxis SpatialAxis::from_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw InvalidArgument("spatial axis: dx must be > 0");
  const double cells = (x_max - x_min) / dx;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * rounded) {
    throw InvalidArgument("spatial axis: dx=" + std::to_string(dx) +
                          " does not divide the domain length");
  }
  return from_count(x_min, x_max, static_cast<std::size_t>(rounded));
}

VelocityAxis VelocityAxis::from_bounds(double v_min, double v_max, std::size_t n_intervals) {
  if (!(v_max > v_min)) throw InvalidArgument("velocity axis: v_max must exceed v_min");
  if (n_intervals < 1) throw InvalidArgument("velocity axis: need at least one interval");
  return VelocityAxis{v_min, v_max, (v_max - v_min) / static_cast<double>(n_intervals),
                      n_intervals};
}

VelocityAxis VelocityAxis::symmetric(double v_max, double dv) {
  if (!(v_max > 0.0) || !(dv > 0.0)) {
    throw InvalidArgument("velocity axis: v_max and dv must be > 0");
  }
  const double intervals = 2.0 * v_max / dv;
  const double rounded = std::round(intervals);
  if (rounded < 1.0 || std::abs(intervals - rounded) > 1e-9 * rounded) {
    throw InvalidArgument("velocity axis: dv does not divide [-v_max, v_max]");
  }
  return from_bounds(-v_max, v_max, static_cast<std::size_t>(rounded));
}

}  // namespace apchemo
