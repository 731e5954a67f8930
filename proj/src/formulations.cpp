#include "psokit/formulations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace psokit {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

ClassicalParams make_classical(double w, double iw, double sw) {
    require_finite(w, "w");
    require_finite(iw, "iw");
    require_finite(sw, "sw");
    if (iw < 0.0 || sw < 0.0) {
        throw std::invalid_argument("individuality and sociality weights must be >= 0");
    }
    return {w, iw, sw};
}

GeneralParams make_general(double w, double phi_min, double phi_max, double ip) {
    require_finite(w, "w");
    require_finite(phi_min, "phi_min");
    require_finite(phi_max, "phi_max");
    require_finite(ip, "ip");
    if (phi_min < 0.0) throw std::invalid_argument("phi_min must be >= 0");
    if (phi_max < phi_min) throw std::invalid_argument("phi_max must be >= phi_min");
    if (ip < 0.0 || ip >= 1.0) {
        // The interval is half-open as defined: ip = 1 (pure individuality)
        // is excluded while sp = 1 (ip = 0) is allowed.
        throw std::invalid_argument("ip must lie in [0, 1)");
    }
    return {w, phi_min, phi_max, ip, 1.0 - ip};
}

ConstrictedParams make_constricted(double aw, double kappa, double ip) {
    require_finite(aw, "aw");
    require_finite(kappa, "kappa");
    require_finite(ip, "ip");
    if (aw <= 0.0) throw std::invalid_argument("aw must be > 0");
    if (kappa <= 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in (0, 1]");
    if (ip < 0.0 || ip >= 1.0) throw std::invalid_argument("ip must lie in [0, 1)");
    return {aw, kappa, ip};
}

SampledAcceleration sample_classical(const ClassicalParams& p, SplitMix64& stream) {
    // Each factor is resampled anew on every reference.
    return {p.iw * stream.uniform01(), p.sw * stream.uniform01()};
}

SampledAcceleration sample_general(const GeneralParams& p, SplitMix64& stream) {
    const double range = p.phi_max - p.phi_min;
    const double phi_i = p.ip * (p.phi_min + range * stream.uniform01());
    const double phi_s = p.sp * (p.phi_min + range * stream.uniform01());
    return {phi_i, phi_s};
}

ClassicalParams general_to_classical(const GeneralParams& p) {
    if (p.phi_min != 0.0) {
        throw std::invalid_argument(
            "conversion infeasible: the classical scheme requires phi_min = 0");
    }
    return make_classical(p.w, p.ip * p.phi_max, p.sp * p.phi_max);
}

GeneralParams constricted_to_general(const ConstrictedParams& p) {
    double w;
    if (p.aw >= 4.0) {
        w = 2.0 * p.kappa / (p.aw - 2.0 + std::sqrt(p.aw * p.aw - 4.0 * p.aw));
    } else {
        w = p.kappa;
    }
    return make_general(w, 0.0, w * p.aw, p.ip);
}

double inertia_weight(const FormulationConfig& f) {
    return std::visit(
        [](const auto& params) -> double {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, ConstrictedParams>) {
                return constricted_to_general(params).w;
            } else {
                return params.w;
            }
        },
        f);
}

double phi_upper_bound(const FormulationConfig& f) {
    return std::visit(
        [](const auto& params) -> double {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, ClassicalParams>) {
                return params.phi_max();
            } else if constexpr (std::is_same_v<T, GeneralParams>) {
                return params.phi_max;
            } else {
                return constricted_to_general(params).phi_max;
            }
        },
        f);
}

FormulationConfig resolve(const FormulationConfig& f) {
    if (const auto* constricted = std::get_if<ConstrictedParams>(&f)) {
        return constricted_to_general(*constricted);
    }
    return f;
}

SampledAcceleration sample(const FormulationConfig& f, SplitMix64& stream) {
    return std::visit(
        [&stream](const auto& params) -> SampledAcceleration {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, ClassicalParams>) {
                return sample_classical(params, stream);
            } else if constexpr (std::is_same_v<T, GeneralParams>) {
                return sample_general(params, stream);
            } else {
                return sample_general(constricted_to_general(params), stream);
            }
        },
        f);
}

void validate_params(const FormulationConfig& f) {
    std::visit(
        [](const auto& params) {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, ClassicalParams>) {
                make_classical(params.w, params.iw, params.sw);
            } else if constexpr (std::is_same_v<T, GeneralParams>) {
                const GeneralParams checked =
                    make_general(params.w, params.phi_min, params.phi_max, params.ip);
                if (checked.sp != params.sp) {
                    throw std::invalid_argument("sp must equal 1 - ip");
                }
            } else {
                make_constricted(params.aw, params.kappa, params.ip);
            }
        },
        f);
}

}  // namespace psokit
