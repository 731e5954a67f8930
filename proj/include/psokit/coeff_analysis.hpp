#ifndef PSOKIT_COEFF_ANALYSIS_HPP
#define PSOKIT_COEFF_ANALYSIS_HPP

#include <complex>
#include <optional>
#include <vector>

namespace psokit {

/// A point in the (phi, w) coefficient plane: phi is the total acceleration
/// coefficient, w the inertia weight. Both dimensionless.
struct CoefficientPoint {
    double phi = 0.0;
    double w = 0.0;
};

enum class RootKind { RealDistinct, ComplexConjugate, RealRepeated };

/// How the deterministic single-particle trajectory behaves for a given
/// coefficient point.
enum class BehaviorClass {
    Convergent,             ///< both characteristic roots strictly inside the unit disk
    CyclicOrPseudoCyclic,   ///< non-decaying oscillation (unit-modulus oscillatory roots)
    DivergentLinear,        ///< repeated unit-modulus root: amplitude grows linearly
    DivergentAsymptotic,    ///< one unit-modulus root, the other inside: bounded non-decaying growth
    DivergentExponential,   ///< a root outside the unit disk
    Stationary,             ///< phi = 0, w = 0: no movement at all
};

/// Roots of the characteristic polynomial r^2 + (phi - w - 1) r + w of the
/// second-order recurrence behind the velocity/position update.
struct RootAnalysis {
    double gamma_sq = 0.0;  ///< discriminant: phi^2 - (2w+2) phi + (w-1)^2
    RootKind kind = RootKind::RealDistinct;
    std::complex<double> r1;  ///< the "+" branch; conjugate with Im > 0 in the complex case
    std::complex<double> r2;
    double spectral_radius = 0.0;  ///< max(|r1|, |r2|); sqrt(w) in the complex case
};

/// Polar form of the complex-conjugate root pair: r = rho * exp(+-i theta).
struct ComplexRootForm {
    double rho = 0.0;    ///< modulus, equals sqrt(w)
    double theta = 0.0;  ///< argument in (0, pi)
};

/// Deterministic single-particle trajectory problem: fixed coefficients, a
/// stationary attractor p, and the first two positions. Construct via
/// from_positions or from_velocity (which applies one velocity/position
/// update to derive x1 = x0 + w*v0 + phi*(p - x0)).
struct TrajectorySpec {
    CoefficientPoint coeffs;
    double p = 0.0;
    double x0 = 0.0;
    double x1 = 0.0;
    int steps = 1;

    static TrajectorySpec from_positions(CoefficientPoint c, double p, double x0,
                                         double x1, int steps);
    static TrajectorySpec from_velocity(CoefficientPoint c, double p, double x0,
                                        double v0, int steps);
};

/// Positions x(0)..x(steps). If a value overflows the guard (|x| > 1e153)
/// the sequence is truncated and diverged_at records the first offending t,
/// so callers never see silent infinities.
struct Trajectory {
    std::vector<double> x;
    std::optional<int> diverged_at;
};

/// Discriminant gamma^2 = phi^2 - (2w+2) phi + (w-1)^2. Its sign selects the
/// root regime.
double discriminant(CoefficientPoint c);

/// Absolute tolerance under which a computed discriminant is treated as zero
/// (the repeated-root parabola is a measure-zero set that floating point
/// rarely hits exactly): 1e-12 * max(1, phi^2, (w-1)^2).
double discriminant_tolerance(CoefficientPoint c);

RootKind classify_region(CoefficientPoint c);

RootAnalysis roots(CoefficientPoint c);

/// Polar form of the roots; throws std::domain_error outside the
/// complex-conjugate regime.
ComplexRootForm complex_root_form(CoefficientPoint c);

/// True iff the point lies strictly inside the convergence region:
/// 0 < phi < 2(w+1) and |w| < 1, which is equivalent to spectral radius < 1.
/// Boundary points return false.
bool converges(CoefficientPoint c);

double spectral_radius(CoefficientPoint c);

BehaviorClass classify_behavior(CoefficientPoint c);

/// Exact solution of the recurrence, routed by root regime:
/// distinct-roots modal sum, damped-oscillation form for complex roots, and
/// the (a + b t) r^t form for a repeated root. x(0), x(1) are returned
/// exactly as specified.
Trajectory trajectory_closed_form(const TrajectorySpec& spec);

/// Numerically iterated x(t) = (1 + w - phi) x(t-1) - w x(t-2) + phi p.
/// Independent oracle for trajectory_closed_form.
Trajectory trajectory_recurrence(const TrajectorySpec& spec);

struct RasterCell {
    CoefficientPoint point;
    BehaviorClass behavior = BehaviorClass::Stationary;
    double spectral_radius = 0.0;
};

/// Row-major classification grid over a rectangle of the (phi, w) plane:
/// w is the outer (row) axis, phi the inner one. Endpoints inclusive.
struct Raster {
    std::vector<double> phi_values;
    std::vector<double> w_values;
    std::vector<RasterCell> cells;

    int phi_count() const { return static_cast<int>(phi_values.size()); }
    int w_count() const { return static_cast<int>(w_values.size()); }
    const RasterCell& at(int w_index, int phi_index) const {
        return cells[static_cast<std::size_t>(w_index) * phi_values.size() +
                     static_cast<std::size_t>(phi_index)];
    }
};

/// Classifies every node of an inclusive grid. Requires phi_hi >= phi_lo,
/// w_hi >= w_lo and at least 2 samples per axis. Rows are computed in
/// parallel for large grids; the output layout is deterministic either way.
Raster region_raster(double phi_lo, double phi_hi, int phi_count, double w_lo,
                     double w_hi, int w_count);

const char* to_string(RootKind kind);
const char* to_string(BehaviorClass behavior);

}  // namespace psokit

#endif  // PSOKIT_COEFF_ANALYSIS_HPP
