#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "psokit/coeff_analysis.hpp"
#include "psokit/config.hpp"
#include "psokit/formulations.hpp"
#include "psokit/random.hpp"

using namespace psokit;
using nlohmann::json;

namespace {

// Two-sample Kolmogorov-Smirnov statistic: sup |F1 - F2| over the merged
// sample.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        const double fa = static_cast<double>(ia) / static_cast<double>(a.size());
        const double fb = static_cast<double>(ib) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("classical sampling: degenerate weights give zero acceleration") {
    SplitMix64 rng(1);
    const ClassicalParams p = make_classical(0.7, 0.0, 0.0);
    for (int i = 0; i < 100; ++i) {
        const SampledAcceleration s = sample_classical(p, rng);
        CHECK(s.phi_i == 0.0);
        CHECK(s.phi_s == 0.0);
        CHECK(s.phi() == 0.0);
    }
}

TEST_CASE("classical sampling: bounds and empirical mean") {
    SplitMix64 rng(substream_key(7, 0, 0));
    const ClassicalParams p = make_classical(0.7, 2.0, 2.0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const SampledAcceleration s = sample_classical(p, rng);
        REQUIRE(s.phi_i >= 0.0);
        REQUIRE(s.phi_s >= 0.0);
        REQUIRE(s.phi() >= 0.0);
        REQUIRE(s.phi() <= p.phi_max());
        sum += s.phi();
    }
    const double mean = sum / n;
    CHECK(mean >= 1.96);
    CHECK(mean <= 2.04);
}

TEST_CASE("general sampling: zero-width range is exact") {
    SplitMix64 rng(3);
    const GeneralParams p = make_general(0.75, 2.0, 2.0, 0.25);
    for (int i = 0; i < 100; ++i) {
        const SampledAcceleration s = sample_general(p, rng);
        CHECK(s.phi_i == 0.25 * 2.0);
        CHECK(s.phi_s == 0.75 * 2.0);
        CHECK(s.phi() == 2.0);
    }
}

TEST_CASE("general sampling: ip = 0 puts everything on the social side") {
    SplitMix64 rng(4);
    const GeneralParams p = make_general(0.75, 0.5, 3.0, 0.0);
    for (int i = 0; i < 100; ++i) {
        const SampledAcceleration s = sample_general(p, rng);
        CHECK(s.phi_i == 0.0);
        CHECK(s.phi_s > 0.0);
    }
}

TEST_CASE("general sampling: range containment and empirical mean") {
    SplitMix64 rng(substream_key(11, 0, 0));
    const GeneralParams p = make_general(0.75, 1.0, 3.0, 0.5);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const SampledAcceleration s = sample_general(p, rng);
        REQUIRE(s.phi() >= p.phi_min);
        REQUIRE(s.phi() <= p.phi_max);
        sum += s.phi();
    }
    const double mean = sum / n;
    CHECK(mean >= 1.98);
    CHECK(mean <= 2.02);
    CHECK(p.phi_mean() == 2.0);
}

TEST_CASE("identical seeds give identical streams") {
    SplitMix64 a(substream_key(99, 1, 5));
    SplitMix64 b(substream_key(99, 1, 5));
    const GeneralParams p = make_general(0.75, 0.0, 3.4, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const SampledAcceleration sa = sample_general(p, a);
        const SampledAcceleration sb = sample_general(p, b);
        CHECK(sa.phi_i == sb.phi_i);
        CHECK(sa.phi_s == sb.phi_s);
    }
    // A different particle index diverges immediately.
    SplitMix64 c(substream_key(99, 1, 6));
    CHECK(sample_general(p, c).phi_i != sample_general(p, a).phi_i);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_classical(0.7, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_general(0.7, -0.5, 3.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_general(0.7, 3.0, 2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_general(0.7, 0.0, 3.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_general(0.7, 0.0, 3.0, -0.1), std::invalid_argument);
    CHECK_NOTHROW(make_general(0.7, 0.0, 3.0, 0.0));
    CHECK_NOTHROW(make_general(0.7, 0.0, 3.0, 0.9999));
    CHECK_THROWS_AS(make_constricted(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_constricted(4.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_constricted(4.1, 1.1), std::invalid_argument);
    const GeneralParams p = make_general(0.7, 0.0, 3.0, 0.25);
    CHECK(p.sp == 0.75);
}

TEST_CASE("general to classical translation") {
    const ClassicalParams c = general_to_classical(make_general(0.7, 0.0, 4.0, 0.5));
    CHECK(c.w == 0.7);
    CHECK(c.iw == 2.0);
    CHECK(c.sw == 2.0);

    const ClassicalParams uneven = general_to_classical(make_general(0.7, 0.0, 4.0, 0.25));
    CHECK(uneven.iw == 1.0);
    CHECK(uneven.sw == 3.0);

    CHECK_THROWS_AS(general_to_classical(make_general(0.7, 0.5, 4.0, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("constricted expansion: reference values") {
    // Frozen from an extended-precision evaluation of the branch formula.
    const GeneralParams g = constricted_to_general(make_constricted(4.1, 1.0));
    CHECK(std::abs(g.w - 0.72984378812835757) <= 1e-13);
    CHECK(std::abs(g.phi_max - 2.9923595313262660) <= 1e-12);
    CHECK(g.phi_min == 0.0);
    CHECK(g.ip == 0.5);

    // Below-4 branch returns kappa directly.
    const GeneralParams low = constricted_to_general(make_constricted(3.0, 0.9));
    CHECK(low.w == 0.9);
    CHECK(low.phi_max == doctest::Approx(2.7).epsilon(1e-15));

    // Boundary lands on the convergence-region corner.
    const GeneralParams corner = constricted_to_general(make_constricted(4.0, 1.0));
    CHECK(corner.w == 1.0);
    CHECK(corner.phi_max == 4.0);
    CHECK_FALSE(converges({corner.phi_max, corner.w}));
}

TEST_CASE("constriction yields strictly convergent points for aw > 4") {
    SplitMix64 rng(substream_key(13, 0, 0));
    for (int i = 0; i < 500; ++i) {
        const double aw = 4.0 + rng.uniform(1e-6, 6.0);
        const double kappa = rng.uniform(1e-6, 1.0);
        const GeneralParams g = constricted_to_general(make_constricted(aw, kappa));
        CAPTURE(aw);
        CAPTURE(kappa);
        CHECK(converges({g.phi_max, g.w}));
        CHECK(converges({g.phi_mean(), g.w}));
    }
}

TEST_CASE("general with phi_min = 0 matches the translated classical distribution") {
    const GeneralParams g = make_general(0.7, 0.0, 3.4, 0.3);
    const ClassicalParams c = general_to_classical(g);
    const int n = 100000;
    std::vector<double> general_phi;
    std::vector<double> classical_phi;
    general_phi.reserve(n);
    classical_phi.reserve(n);
    SplitMix64 rng_g(substream_key(17, 0, 0));
    SplitMix64 rng_c(substream_key(17, 1, 0));
    for (int i = 0; i < n; ++i) {
        general_phi.push_back(sample_general(g, rng_g).phi());
        classical_phi.push_back(sample_classical(c, rng_c).phi());
    }
    const double d = ks_statistic(std::move(general_phi), std::move(classical_phi));
    // 1% critical value for n = m = 1e5: 1.6276 * sqrt(2/n).
    CHECK(d < 0.0072790);
}

TEST_CASE("formulation variant helpers") {
    const FormulationConfig classical = make_classical(0.6, 1.5, 1.5);
    const FormulationConfig general = make_general(0.75, 0.0, 3.4, 0.5);
    const FormulationConfig constricted = make_constricted(4.1, 1.0);

    CHECK(inertia_weight(classical) == 0.6);
    CHECK(inertia_weight(general) == 0.75);
    CHECK(std::abs(inertia_weight(constricted) - 0.72984378812835757) <= 1e-13);

    CHECK(phi_upper_bound(classical) == 3.0);
    CHECK(phi_upper_bound(general) == 3.4);

    const FormulationConfig resolved = resolve(constricted);
    CHECK(std::holds_alternative<GeneralParams>(resolved));
    CHECK(std::holds_alternative<ClassicalParams>(resolve(classical)));

    SplitMix64 rng(5);
    const SampledAcceleration s = sample(general, rng);
    CHECK(s.phi() >= 0.0);
    CHECK(s.phi() <= 3.4);
}

TEST_CASE("formulation JSON: the three shapes parse and round-trip") {
    const json jc = {{"formulation", "classical"}, {"w", 0.7}, {"iw", 2.0}, {"sw", 2.0}};
    const FormulationConfig fc = formulation_from_json(jc);
    CHECK(std::get<ClassicalParams>(fc).iw == 2.0);
    CHECK(formulation_to_json(fc) == jc);

    const json jg = {{"formulation", "general"},
                     {"w", 0.75},
                     {"phi_min", 0.0},
                     {"phi_max", 3.4},
                     {"ip", 0.5}};
    const FormulationConfig fg = formulation_from_json(jg);
    CHECK(std::get<GeneralParams>(fg).phi_max == 3.4);
    CHECK(formulation_to_json(fg) == jg);

    const json jk = {{"formulation", "constricted"}, {"aw", 4.1}, {"kappa", 1.0}};
    const FormulationConfig fk = formulation_from_json(jk);
    CHECK(std::get<ConstrictedParams>(fk).aw == 4.1);
}

TEST_CASE("formulation JSON: strictness") {
    CHECK_THROWS_AS(formulation_from_json(json{{"formulation", "general"},
                                               {"w", 0.75},
                                               {"phi_min", 0.0},
                                               {"phi_max", 3.4},
                                               {"ip", 0.5},
                                               {"bogus", 1}}),
                    std::invalid_argument);
    // sp is derived, not accepted.
    CHECK_THROWS_AS(formulation_from_json(json{{"formulation", "general"},
                                               {"w", 0.75},
                                               {"phi_min", 0.0},
                                               {"phi_max", 3.4},
                                               {"ip", 0.5},
                                               {"sp", 0.5}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(formulation_from_json(json{{"formulation", "smooth"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(formulation_from_json(json{{"formulation", "classical"},
                                               {"w", "high"},
                                               {"iw", 2.0},
                                               {"sw", 2.0}}),
                    std::invalid_argument);
    // seed is legal only where a standalone file is expected.
    const json with_seed = {{"formulation", "constricted"},
                            {"aw", 4.1},
                            {"kappa", 1.0},
                            {"seed", 42}};
    CHECK_THROWS_AS(formulation_from_json(with_seed, /*allow_seed=*/false),
                    std::invalid_argument);
    CHECK_NOTHROW(formulation_from_json(with_seed, /*allow_seed=*/true));
}

TEST_CASE("long-run range containment") {
    SplitMix64 rng(substream_key(23, 0, 0));
    const GeneralParams p = make_general(0.75, 0.5, 3.25, 0.25);
    for (int i = 0; i < 200000; ++i) {
        const SampledAcceleration s = sample_general(p, rng);
        REQUIRE(s.phi() >= p.phi_min);
        REQUIRE(s.phi() <= p.phi_max);
    }
}
