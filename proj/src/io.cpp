#include "psokit/io.hpp"

#include <cstdio>

namespace psokit {

std::string format_real(double v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          int significant_digits) {
    out << "t,x,v\n";
    for (std::size_t t = 0; t < trajectory.x.size(); ++t) {
        out << t << ',' << format_real(trajectory.x[t], significant_digits) << ',';
        if (t > 0) {
            out << format_real(trajectory.x[t] - trajectory.x[t - 1], significant_digits);
        }
        out << '\n';
    }
}

void write_trajectory_json(std::ostream& out, const Trajectory& trajectory,
                           int significant_digits) {
    out << "[";
    for (std::size_t t = 0; t < trajectory.x.size(); ++t) {
        if (t > 0) out << ",";
        out << "\n  {\"t\": " << t << ", \"x\": "
            << format_real(trajectory.x[t], significant_digits) << ", \"v\": ";
        if (t > 0) {
            out << format_real(trajectory.x[t] - trajectory.x[t - 1], significant_digits);
        } else {
            out << "null";
        }
        out << "}";
    }
    out << "\n]\n";
}

void write_raster_csv(std::ostream& out, const Raster& raster,
                      int significant_digits) {
    out << "phi,w,class,spectral_radius\n";
    for (const RasterCell& cell : raster.cells) {
        out << format_real(cell.point.phi, significant_digits) << ','
            << format_real(cell.point.w, significant_digits) << ','
            << to_string(cell.behavior) << ','
            << format_real(cell.spectral_radius, significant_digits) << '\n';
    }
}

void write_raster_json(std::ostream& out, const Raster& raster,
                       int significant_digits) {
    out << "[";
    bool first = true;
    for (const RasterCell& cell : raster.cells) {
        if (!first) out << ",";
        first = false;
        out << "\n  {\"phi\": " << format_real(cell.point.phi, significant_digits)
            << ", \"w\": " << format_real(cell.point.w, significant_digits)
            << ", \"class\": \"" << to_string(cell.behavior)
            << "\", \"spectral_radius\": "
            << format_real(cell.spectral_radius, significant_digits) << "}";
    }
    out << "\n]\n";
}

}  // namespace psokit
