#ifndef PSOKIT_ADVISOR_HPP
#define PSOKIT_ADVISOR_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psokit/formulations.hpp"

namespace psokit {

enum class RuleStatus { Pass, Warn, Fail };

struct RuleResult {
    std::string rule;      // stable identifier, e.g. "inertia-range"
    RuleStatus status = RuleStatus::Pass;
    std::string citation;  // the criterion being checked, self-contained
    std::string detail;    // what was found and why it matters
};

/// Outcome of checking general-scheme parameters against the coefficient
/// guidelines. Advisory ranges warn; a non-convergent (phi_mean, w) point
/// fails, since that setting cannot settle without external help.
struct GuidelineReport {
    std::vector<RuleResult> rules;
    double phi_mean = 0.0;
    bool mean_point_converges = false;  // (phi_mean, w)
    bool max_point_converges = false;   // (phi_max, w)

    bool has_fail() const;
    bool has_warn() const;
    const RuleResult* find(const std::string& rule) const;
};

enum class BehaviorProfile { Explorative, Balanced, Exploitative, GeneralPurpose };

/// Checks every guideline independently; reports, never throws, on in-range
/// but inadvisable settings.
GuidelineReport validate(const GeneralParams& params);

/// Concrete settings for the requested search behavior. Every output passes
/// validate() with no failed rules. w_override must lie in (0, 1); the
/// acceleration ceiling is re-derived from it so (phi_max, w) stays strictly
/// inside the convergence region.
GeneralParams recommend(BehaviorProfile profile,
                        std::optional<double> w_override = std::nullopt);

/// Componentwise velocity cap: half of each dimension's box width.
/// Degenerate bounds (max <= min) are rejected.
std::vector<double> default_vmax(std::span<const std::array<double, 2>> bounds);

const char* to_string(RuleStatus status);
const char* to_string(BehaviorProfile profile);

}  // namespace psokit

#endif  // PSOKIT_ADVISOR_HPP
