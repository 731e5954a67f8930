#include "psokit/coeff_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace psokit {

namespace {

constexpr double kOverflowGuard = 1e153;

void check_finite(CoefficientPoint c) {
    if (!std::isfinite(c.phi) || !std::isfinite(c.w)) {
        throw std::invalid_argument("coefficient point must be finite");
    }
}

void check_spec(const TrajectorySpec& spec) {
    check_finite(spec.coeffs);
    if (!std::isfinite(spec.p) || !std::isfinite(spec.x0) || !std::isfinite(spec.x1)) {
        throw std::invalid_argument("trajectory spec fields must be finite");
    }
    if (spec.steps < 1) {
        throw std::invalid_argument("trajectory steps must be >= 1");
    }
}

// Appends x(t); on overflow records the divergence point and stops the caller.
bool append_guarded(Trajectory& out, double value, int t) {
    if (!std::isfinite(value) || std::abs(value) > kOverflowGuard) {
        out.diverged_at = t;
        return false;
    }
    out.x.push_back(value);
    return true;
}

}  // namespace

double discriminant(CoefficientPoint c) {
    check_finite(c);
    const double wm1 = c.w - 1.0;
    return c.phi * c.phi - (2.0 * c.w + 2.0) * c.phi + wm1 * wm1;
}

double discriminant_tolerance(CoefficientPoint c) {
    const double wm1 = c.w - 1.0;
    return 1e-12 * std::max({1.0, c.phi * c.phi, wm1 * wm1});
}

RootKind classify_region(CoefficientPoint c) {
    const double g2 = discriminant(c);
    if (std::abs(g2) <= discriminant_tolerance(c)) return RootKind::RealRepeated;
    return g2 < 0.0 ? RootKind::ComplexConjugate : RootKind::RealDistinct;
}

RootAnalysis roots(CoefficientPoint c) {
    RootAnalysis out;
    out.gamma_sq = discriminant(c);
    out.kind = classify_region(c);
    const double half_sum = (1.0 + c.w - c.phi) / 2.0;  // (r1 + r2) / 2
    switch (out.kind) {
        case RootKind::RealRepeated:
            out.r1 = out.r2 = half_sum;
            out.spectral_radius = std::abs(half_sum);
            break;
        case RootKind::ComplexConjugate: {
            const double im = std::sqrt(-out.gamma_sq) / 2.0;
            out.r1 = {half_sum, im};
            out.r2 = {half_sum, -im};
            // |r1|^2 = r1 * conj(r1) = r1 * r2 = w, so the modulus is exact.
            out.spectral_radius = std::sqrt(c.w);
            break;
        }
        case RootKind::RealDistinct: {
            const double half_gamma = std::sqrt(out.gamma_sq) / 2.0;
            out.r1 = half_sum + half_gamma;
            out.r2 = half_sum - half_gamma;
            out.spectral_radius =
                std::max(std::abs(out.r1.real()), std::abs(out.r2.real()));
            break;
        }
    }
    return out;
}

ComplexRootForm complex_root_form(CoefficientPoint c) {
    const double g2 = discriminant(c);
    if (!(g2 < 0.0) || std::abs(g2) <= discriminant_tolerance(c)) {
        throw std::domain_error("complex root form requires the complex-conjugate regime");
    }
    const double re = (1.0 + c.w - c.phi) / 2.0;
    const double im = std::sqrt(-g2) / 2.0;
    return {std::sqrt(c.w), std::atan2(im, re)};
}

bool converges(CoefficientPoint c) {
    check_finite(c);
    // Strict inequalities: boundary points do not converge. Equivalent to
    // spectral radius < 1 (the complex regime needs w < 1, the real regime
    // needs both roots inside the open unit interval).
    return c.w > -1.0 && c.w < 1.0 && c.phi > 0.0 && c.phi < 2.0 * (c.w + 1.0);
}

double spectral_radius(CoefficientPoint c) { return roots(c).spectral_radius; }

BehaviorClass classify_behavior(CoefficientPoint c) {
    check_finite(c);
    if (c.phi == 0.0 && c.w == 0.0) return BehaviorClass::Stationary;
    if (converges(c)) return BehaviorClass::Convergent;

    const double g2 = discriminant(c);
    if (std::abs(g2) <= discriminant_tolerance(c)) {
        // Repeated root (1 + w - phi) / 2. Unit modulus happens exactly at
        // (phi, w) = (4, 1) and (0, 1); perturbation into the tolerance band
        // stays next to the unit circle, where growth is at most linear.
        const double m = std::abs(1.0 + c.w - c.phi) / 2.0;
        if (m == 1.0) return BehaviorClass::DivergentLinear;
        if (m > 1.0) return BehaviorClass::DivergentExponential;
        return BehaviorClass::CyclicOrPseudoCyclic;
    }
    if (g2 < 0.0) {
        // Complex pair of modulus sqrt(w). Non-convergent complex points
        // have w >= 1; the w = 1 edge oscillates without decay.
        return c.w <= 1.0 ? BehaviorClass::CyclicOrPseudoCyclic
                          : BehaviorClass::DivergentExponential;
    }
    // Real distinct. r = +1 is a root iff phi = 0; r = -1 iff phi = 2(w+1);
    // both tests are exact on the inputs, so raster boundary cells never
    // depend on rounded root values.
    if (c.phi == 0.0) {
        if (c.w == -1.0) return BehaviorClass::CyclicOrPseudoCyclic;
        if (std::abs(c.w) < 1.0) return BehaviorClass::DivergentAsymptotic;
        return BehaviorClass::DivergentExponential;
    }
    if (c.phi == 2.0 * (c.w + 1.0)) {
        // The other root is -w. At (2, 0) it vanishes and the trajectory is a
        // pure period-2 cycle rather than a growing one.
        if (c.phi == 2.0 && c.w == 0.0) return BehaviorClass::CyclicOrPseudoCyclic;
        if (std::abs(c.w) < 1.0) return BehaviorClass::DivergentAsymptotic;
        return BehaviorClass::DivergentExponential;
    }
    const RootAnalysis ra = roots(c);
    if (ra.spectral_radius > 1.0) return BehaviorClass::DivergentExponential;
    // Reachable only when rounding parks a mathematical boundary point off
    // the exact edge tests above.
    return BehaviorClass::DivergentAsymptotic;
}

Trajectory trajectory_closed_form(const TrajectorySpec& spec) {
    check_spec(spec);
    const double p = spec.p;
    Trajectory out;
    out.x.reserve(static_cast<std::size_t>(spec.steps) + 1);
    out.x.push_back(spec.x0);
    out.x.push_back(spec.x1);

    const RootAnalysis ra = roots(spec.coeffs);
    switch (ra.kind) {
        case RootKind::RealDistinct: {
            const double r1 = ra.r1.real();
            const double r2 = ra.r2.real();
            const double gamma = r1 - r2;
            const double a = (r2 * (p - spec.x0) - (p - spec.x1)) / gamma;
            const double b = (-r1 * (p - spec.x0) + (p - spec.x1)) / gamma;
            for (int t = 2; t <= spec.steps; ++t) {
                const double v = p + a * std::pow(r1, t) + b * std::pow(r2, t);
                if (!append_guarded(out, v, t)) return out;
            }
            break;
        }
        case RootKind::ComplexConjugate: {
            const auto [rho, theta] = complex_root_form(spec.coeffs);
            const double a = spec.x0 - p;
            const double b = ((spec.x1 - p) / rho - a * std::cos(theta)) / std::sin(theta);
            for (int t = 2; t <= spec.steps; ++t) {
                const double v =
                    p + std::pow(rho, t) *
                            (a * std::cos(t * theta) + b * std::sin(t * theta));
                if (!append_guarded(out, v, t)) return out;
            }
            break;
        }
        case RootKind::RealRepeated: {
            const double r = ra.r1.real();
            if (r == 0.0) {
                // Both roots zero: the transient is gone after t = 1.
                for (int t = 2; t <= spec.steps; ++t) {
                    if (!append_guarded(out, p, t)) return out;
                }
                break;
            }
            const double a = spec.x0 - p;
            const double b = (spec.x1 - p) / r - a;
            for (int t = 2; t <= spec.steps; ++t) {
                const double v = p + (a + b * t) * std::pow(r, t);
                if (!append_guarded(out, v, t)) return out;
            }
            break;
        }
    }
    return out;
}

Trajectory trajectory_recurrence(const TrajectorySpec& spec) {
    check_spec(spec);
    const double phi = spec.coeffs.phi;
    const double w = spec.coeffs.w;
    const double drive = phi * spec.p;
    Trajectory out;
    out.x.reserve(static_cast<std::size_t>(spec.steps) + 1);
    out.x.push_back(spec.x0);
    out.x.push_back(spec.x1);
    for (int t = 2; t <= spec.steps; ++t) {
        const double v =
            (1.0 + w - phi) * out.x[t - 1] - w * out.x[t - 2] + drive;
        if (!append_guarded(out, v, t)) break;
    }
    return out;
}

TrajectorySpec TrajectorySpec::from_positions(CoefficientPoint c, double p,
                                              double x0, double x1, int steps) {
    TrajectorySpec spec{c, p, x0, x1, steps};
    check_spec(spec);
    return spec;
}

TrajectorySpec TrajectorySpec::from_velocity(CoefficientPoint c, double p,
                                             double x0, double v0, int steps) {
    if (!std::isfinite(v0)) {
        throw std::invalid_argument("trajectory spec fields must be finite");
    }
    // One velocity/position update: x1 = x0 + (w v0 + phi (p - x0)).
    const double x1 = x0 + c.w * v0 + c.phi * (p - x0);
    return from_positions(c, p, x0, x1, steps);
}

namespace {

void for_each_row(int rows, const std::function<void(int)>& body) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (rows < 32 || hw < 2) {
        for (int r = 0; r < rows; ++r) body(r);
        return;
    }
    const int workers = static_cast<int>(std::min<unsigned>(hw, 8));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wk = 0; wk < workers; ++wk) {
        pool.emplace_back([&, wk] {
            for (int r = wk; r < rows; r += workers) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

Raster region_raster(double phi_lo, double phi_hi, int phi_count, double w_lo,
                     double w_hi, int w_count) {
    if (!std::isfinite(phi_lo) || !std::isfinite(phi_hi) || !std::isfinite(w_lo) ||
        !std::isfinite(w_hi)) {
        throw std::invalid_argument("raster ranges must be finite");
    }
    if (phi_hi < phi_lo || w_hi < w_lo) {
        throw std::invalid_argument("raster range is inverted");
    }
    if (phi_count < 2 || w_count < 2) {
        throw std::invalid_argument("raster resolution must be >= 2 per axis");
    }

    const auto linspace = [](double lo, double hi, int n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 1; i + 1 < n; ++i) {
            v[static_cast<std::size_t>(i)] = lo + i * (hi - lo) / (n - 1);
        }
        v.front() = lo;
        v.back() = hi;  // endpoints exact
        return v;
    };

    Raster raster;
    raster.phi_values = linspace(phi_lo, phi_hi, phi_count);
    raster.w_values = linspace(w_lo, w_hi, w_count);
    raster.cells.resize(static_cast<std::size_t>(phi_count) *
                        static_cast<std::size_t>(w_count));

    for_each_row(w_count, [&](int wi) {
        const double w = raster.w_values[static_cast<std::size_t>(wi)];
        RasterCell* row =
            raster.cells.data() + static_cast<std::size_t>(wi) * phi_count;
        for (int pi = 0; pi < phi_count; ++pi) {
            const CoefficientPoint c{raster.phi_values[static_cast<std::size_t>(pi)], w};
            row[pi] = {c, classify_behavior(c), roots(c).spectral_radius};
        }
    });
    return raster;
}

const char* to_string(RootKind kind) {
    switch (kind) {
        case RootKind::RealDistinct: return "real_distinct";
        case RootKind::ComplexConjugate: return "complex_conjugate";
        case RootKind::RealRepeated: return "real_repeated";
    }
    return "?";
}

const char* to_string(BehaviorClass behavior) {
    switch (behavior) {
        case BehaviorClass::Convergent: return "convergent";
        case BehaviorClass::CyclicOrPseudoCyclic: return "cyclic_or_pseudo_cyclic";
        case BehaviorClass::DivergentLinear: return "divergent_linear";
        case BehaviorClass::DivergentAsymptotic: return "divergent_asymptotic";
        case BehaviorClass::DivergentExponential: return "divergent_exponential";
        case BehaviorClass::Stationary: return "stationary";
    }
    return "?";
}

}  // namespace psokit
