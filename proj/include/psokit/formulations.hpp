#ifndef PSOKIT_FORMULATIONS_HPP
#define PSOKIT_FORMULATIONS_HPP

#include <variant>

#include "psokit/random.hpp"

namespace psokit {

/// Classical coefficient scheme: phi_i ~ U(0, iw), phi_s ~ U(0, sw).
struct ClassicalParams {
    double w = 0.0;
    double iw = 0.0;  ///< individuality weight, >= 0
    double sw = 0.0;  ///< sociality weight, >= 0

    double phi_max() const { return iw + sw; }
};

/// General scheme with a controlled randomness range:
///   phi_i = ip * (phi_min + (phi_max - phi_min) * u1)
///   phi_s = sp * (phi_min + (phi_max - phi_min) * u2)
/// with sp = 1 - ip, so the total always lands in [phi_min, phi_max].
struct GeneralParams {
    double w = 0.0;
    double phi_min = 0.0;
    double phi_max = 0.0;
    double ip = 0.5;  ///< individuality proportion, in [0, 1)
    double sp = 0.5;  ///< 1 - ip, maintained by make_general

    double phi_mean() const { return 0.5 * (phi_max + phi_min); }
};

/// Constricted scheme: (aw, kappa) reparameterization that yields convergent
/// coefficients by construction when aw > 4.
struct ConstrictedParams {
    double aw = 4.1;      ///< raw total acceleration, > 0
    double kappa = 1.0;   ///< in (0, 1]
    double ip = 0.5;      ///< split used when expanding to the general scheme
};

/// One draw of the acceleration coefficients.
struct SampledAcceleration {
    double phi_i = 0.0;
    double phi_s = 0.0;

    double phi() const { return phi_i + phi_s; }
};

/// Validating constructors; throw std::invalid_argument on bad parameters.
ClassicalParams make_classical(double w, double iw, double sw);
GeneralParams make_general(double w, double phi_min, double phi_max, double ip);
ConstrictedParams make_constricted(double aw, double kappa, double ip = 0.5);

SampledAcceleration sample_classical(const ClassicalParams& p, SplitMix64& stream);
SampledAcceleration sample_general(const GeneralParams& p, SplitMix64& stream);

/// Exact translation to the classical scheme. Requires phi_min = 0; other
/// values cannot be expressed classically and raise std::invalid_argument.
ClassicalParams general_to_classical(const GeneralParams& p);

/// Expands (aw, kappa) into general-scheme parameters:
///   w = 2 kappa / (aw - 2 + sqrt(aw^2 - 4 aw))  when aw >= 4, else w = kappa
///   phi_min = 0, phi_max = w * aw.
GeneralParams constricted_to_general(const ConstrictedParams& p);

using FormulationConfig =
    std::variant<ClassicalParams, GeneralParams, ConstrictedParams>;

/// Inertia weight of the scheme (derived for the constricted one).
double inertia_weight(const FormulationConfig& f);

/// Largest total acceleration the scheme can draw.
double phi_upper_bound(const FormulationConfig& f);

/// Maps the constricted scheme to its general equivalent; identity otherwise.
/// The engine samples from the resolved form.
FormulationConfig resolve(const FormulationConfig& f);

/// Draws coefficients from a resolved scheme (classical or general).
SampledAcceleration sample(const FormulationConfig& f, SplitMix64& stream);

/// Re-runs the make_* validation on an arbitrary config.
void validate_params(const FormulationConfig& f);

}  // namespace psokit

#endif  // PSOKIT_FORMULATIONS_HPP
