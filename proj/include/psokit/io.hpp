#ifndef PSOKIT_IO_HPP
#define PSOKIT_IO_HPP

#include <ostream>
#include <string>

#include "psokit/coeff_analysis.hpp"

namespace psokit {

/// Shortest text for `v` at the given significance; 17 digits round-trips
/// doubles exactly.
std::string format_real(double v, int significant_digits = 17);

// Trajectory emission: columns t, x, v with v reconstructed as
// x(t) - x(t-1); v is blank (null in JSON) at t = 0.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          int significant_digits = 17);
void write_trajectory_json(std::ostream& out, const Trajectory& trajectory,
                           int significant_digits = 17);

// Raster emission: rows ordered w-outer/phi-inner.
void write_raster_csv(std::ostream& out, const Raster& raster,
                      int significant_digits = 17);
void write_raster_json(std::ostream& out, const Raster& raster,
                       int significant_digits = 17);

}  // namespace psokit

#endif  // PSOKIT_IO_HPP
