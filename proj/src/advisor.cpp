#include "psokit/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "psokit/coeff_analysis.hpp"

namespace psokit {

bool GuidelineReport::has_fail() const {
    for (const auto& r : rules) {
        if (r.status == RuleStatus::Fail) return true;
    }
    return false;
}

bool GuidelineReport::has_warn() const {
    for (const auto& r : rules) {
        if (r.status == RuleStatus::Warn) return true;
    }
    return false;
}

const RuleResult* GuidelineReport::find(const std::string& rule) const {
    for (const auto& r : rules) {
        if (r.rule == rule) return &r;
    }
    return nullptr;
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

GuidelineReport validate(const GeneralParams& params) {
    validate_params(FormulationConfig{params});

    GuidelineReport report;
    report.phi_mean = params.phi_mean();
    report.mean_point_converges = converges({report.phi_mean, params.w});
    report.max_point_converges = converges({params.phi_max, params.w});
    const double ceiling = 2.0 * (params.w + 1.0);

    // Inertia weight range.
    {
        RuleResult r;
        r.rule = "inertia-range";
        r.citation = "prefer 0.50 <= w <= 0.90 (acceptable down to 0.30)";
        if (params.w >= 1.0) {
            r.status = RuleStatus::Fail;
            r.detail = "w = " + num(params.w) +
                       " >= 1: the deterministic particle cannot converge for any "
                       "acceleration";
        } else if (params.w >= 0.5 && params.w <= 0.9) {
            r.status = RuleStatus::Pass;
            r.detail = "w = " + num(params.w) + " is inside the preferred range";
        } else {
            r.status = RuleStatus::Warn;
            if (params.w < 0.0) {
                r.detail = "w = " + num(params.w) +
                           " < 0 reverses the previous displacement instead of "
                           "carrying momentum; of no practical interest";
            } else if (params.w < 0.3) {
                r.detail = "w = " + num(params.w) +
                           " is below 0.30: very fast, greedy convergence";
            } else {
                r.detail = "w = " + num(params.w) + " is outside the preferred range";
            }
        }
        report.rules.push_back(std::move(r));
    }

    // Acceleration ceiling.
    {
        RuleResult r;
        r.rule = "phi-max-range";
        r.citation = "2.00 <= phi_max <= 2*(w+1)";
        if (params.phi_max >= 2.0 && params.phi_max <= ceiling) {
            r.status = RuleStatus::Pass;
            r.detail = "phi_max = " + num(params.phi_max) + " within [2, " +
                       num(ceiling) + "]";
            if (params.phi_max == ceiling) {
                r.detail += "; exactly on the convergence boundary, where the "
                            "deterministic particle oscillates without decay";
            }
        } else {
            r.status = RuleStatus::Warn;
            r.detail = "phi_max = " + num(params.phi_max) + " outside [2, " +
                       num(ceiling) + "]";
        }
        report.rules.push_back(std::move(r));
    }

    // Acceleration floor.
    {
        RuleResult r;
        r.rule = "phi-min-range";
        r.citation = "0.00 <= phi_min <= 1.00";
        if (params.phi_min <= 1.0) {
            r.status = RuleStatus::Pass;
            r.detail = "phi_min = " + num(params.phi_min) + " within [0, 1]";
        } else {
            r.status = RuleStatus::Warn;
            r.detail = "phi_min = " + num(params.phi_min) + " above 1.00";
        }
        r.detail += "; this advisor reads larger phi_min as the "
                    "explosion-controlling direction (it keeps sampled "
                    "accelerations away from zero under high inertia); the "
                    "opposite reading of the floor's role is also in circulation";
        report.rules.push_back(std::move(r));
    }

    // Average acceleration.
    {
        RuleResult r;
        r.rule = "phi-mean-range";
        r.citation = "1.00 < phi_mean = 0.5*(phi_max + phi_min) < 2.00";
        if (report.phi_mean > 1.0 && report.phi_mean < 2.0) {
            r.status = RuleStatus::Pass;
            r.detail = "phi_mean = " + num(report.phi_mean) + " inside (1, 2)";
        } else {
            r.status = RuleStatus::Warn;
            r.detail = "phi_mean = " + num(report.phi_mean) + " outside (1, 2)";
        }
        report.rules.push_back(std::move(r));
    }

    // Individuality/sociality split.
    {
        RuleResult r;
        r.rule = "weight-split";
        r.citation = "ip = sp = 0.50";
        if (params.ip == 0.5) {
            r.status = RuleStatus::Pass;
            r.detail = "even split between individual and social attraction";
        } else {
            r.status = RuleStatus::Warn;
            r.detail = "ip = " + num(params.ip) + ", sp = " + num(params.sp) +
                       ": uneven split biases the overall attractor";
        }
        report.rules.push_back(std::move(r));
    }

    // Convergence of the average behaviour: a hard requirement.
    {
        RuleResult r;
        r.rule = "mean-convergence";
        r.citation = "(phi_mean, w) must lie strictly inside the convergence "
                     "region 0 < phi < 2*(w+1), |w| < 1";
        if (report.mean_point_converges) {
            r.status = RuleStatus::Pass;
            r.detail = "(phi_mean, w) = (" + num(report.phi_mean) + ", " +
                       num(params.w) + ") converges";
        } else {
            r.status = RuleStatus::Fail;
            r.detail = "(phi_mean, w) = (" + num(report.phi_mean) + ", " +
                       num(params.w) +
                       ") does not converge: the average behaviour diverges "
                       "without external damping";
        }
        report.rules.push_back(std::move(r));
    }

    // Convergence at the ceiling: advisory only.
    {
        RuleResult r;
        r.rule = "max-convergence";
        r.citation = "(phi_max, w) inside the convergence region keeps even the "
                     "largest draws convergent";
        if (report.max_point_converges) {
            r.status = RuleStatus::Pass;
            r.detail = "(phi_max, w) converges";
        } else {
            r.status = RuleStatus::Warn;
            const bool on_boundary =
                params.w < 1.0 && params.phi_max > 0.0 && params.phi_max == ceiling;
            r.detail = on_boundary
                           ? "(phi_max, w) sits exactly on the convergence boundary"
                           : "(phi_max, w) lies outside the convergence region; "
                             "large draws can trigger local explosions";
        }
        report.rules.push_back(std::move(r));
    }

    return report;
}

GeneralParams recommend(BehaviorProfile profile, std::optional<double> w_override) {
    double w = 0.0;
    double phi_min = 0.0;
    double phi_max_cap = 0.0;  // profile ceiling before the boundary margin

    switch (profile) {
        case BehaviorProfile::GeneralPurpose:
            w = 0.75;
            phi_min = 0.0;
            phi_max_cap = 1e9;  // track the boundary margin
            break;
        case BehaviorProfile::Explorative:
            w = 0.85;
            phi_min = 0.0;
            phi_max_cap = 1e9;
            break;
        case BehaviorProfile::Balanced:
            w = 0.70;
            phi_min = 0.5;
            phi_max_cap = 2.5;
            break;
        case BehaviorProfile::Exploitative:
            w = 0.55;
            phi_min = 1.0;
            phi_max_cap = 2.0;
            break;
    }
    if (w_override) {
        if (!(*w_override > 0.0 && *w_override < 1.0)) {
            throw std::invalid_argument("w override must lie in (0, 1)");
        }
        w = *w_override;
    }

    // "Close to the convergence boundary" pinned as the boundary minus 0.1.
    const double boundary_margin = 2.0 * (w + 1.0) - 0.1;
    const double phi_max = std::min(phi_max_cap, boundary_margin);
    return make_general(w, std::min(phi_min, phi_max / 2.0), phi_max, 0.5);
}

std::vector<double> default_vmax(std::span<const std::array<double, 2>> bounds) {
    std::vector<double> vmax(bounds.size());
    for (std::size_t j = 0; j < bounds.size(); ++j) {
        if (!(bounds[j][1] > bounds[j][0])) {
            throw std::invalid_argument("bounds must satisfy max > min per dimension");
        }
        vmax[j] = 0.5 * (bounds[j][1] - bounds[j][0]);
    }
    return vmax;
}

const char* to_string(RuleStatus status) {
    switch (status) {
        case RuleStatus::Pass: return "pass";
        case RuleStatus::Warn: return "warn";
        case RuleStatus::Fail: return "fail";
    }
    return "?";
}

const char* to_string(BehaviorProfile profile) {
    switch (profile) {
        case BehaviorProfile::Explorative: return "explorative";
        case BehaviorProfile::Balanced: return "balanced";
        case BehaviorProfile::Exploitative: return "exploitative";
        case BehaviorProfile::GeneralPurpose: return "general-purpose";
    }
    return "?";
}

}  // namespace psokit
