#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "psokit/random.hpp"
#include "psokit/topologies.hpp"

using namespace psokit;

namespace {

bool informs(const InformerGraph& g, int informer, int listener) {
    const auto& nb = g.informers[static_cast<std::size_t>(listener)];
    return std::find(nb.begin(), nb.end(), informer) != nb.end();
}

bool symmetric(const InformerGraph& g) {
    for (int i = 0; i < g.size(); ++i) {
        for (const int j : g.informers[static_cast<std::size_t>(i)]) {
            if (i != j && !informs(g, i, j)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("global topology is all-to-all") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Global;
    const InformerGraph g = build(spec, 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(g.informers[static_cast<std::size_t>(i)] == std::vector<int>{0, 1, 2, 3});
    }

    spec.include_self = false;
    const InformerGraph g2 = build(spec, 4);
    CHECK(g2.informers[1] == std::vector<int>{0, 2, 3});
}

TEST_CASE("ring with two neighbours wraps around") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Ring;
    spec.k = 2;
    const InformerGraph g = build(spec, 5);
    CHECK(g.informers[0] == std::vector<int>{0, 1, 4});
    CHECK(g.informers[2] == std::vector<int>{1, 2, 3});
}

TEST_CASE("ring regularity and symmetry") {
    for (const int k : {2, 4}) {
        TopologySpec spec;
        spec.kind = TopologySpec::Kind::Ring;
        spec.k = k;
        const InformerGraph g = build(spec, 30);
        for (int i = 0; i < 30; ++i) {
            CHECK(static_cast<int>(g.informers[static_cast<std::size_t>(i)].size()) == k + 1);
        }
        for (int i = 0; i < 30; ++i) {
            for (const int j : g.informers[static_cast<std::size_t>(i)]) {
                CHECK(informs(g, i, j));
            }
        }
    }
}

TEST_CASE("infeasible ring specs are rejected") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Ring;
    spec.k = 3;
    CHECK_THROWS_AS(build(spec, 10), std::invalid_argument);
    spec.k = 10;
    CHECK_THROWS_AS(build(spec, 10), std::invalid_argument);
    spec.k = 0;
    CHECK_THROWS_AS(build(spec, 10), std::invalid_argument);
}

TEST_CASE("wheel: one hub, spokes of degree one") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Wheel;
    const InformerGraph g = build(spec, 6);
    CHECK(g.informers[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
    for (int i = 1; i < 6; ++i) {
        CHECK(g.informers[static_cast<std::size_t>(i)] == std::vector<int>{0, i});
    }
    for (int i = 0; i < 6; ++i) {
        for (const int j : g.informers[static_cast<std::size_t>(i)]) {
            CHECK(informs(g, i, j));  // bidirectional links
        }
    }
}

TEST_CASE("von neumann lattice on a torus") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::VonNeumann;
    spec.rows = 2;
    spec.cols = 3;
    const InformerGraph g = build(spec, 6);
    // Four lattice neighbours plus self; on the 2-row torus the vertical
    // neighbours coincide, so the entry repeats.
    for (int i = 0; i < 6; ++i) {
        CHECK(g.informers[static_cast<std::size_t>(i)].size() == 5);
    }
    // Particle 0 = (0,0): right (0,1)=1, left (0,2)=2, up/down (1,0)=3, self.
    CHECK(g.informers[0] == std::vector<int>{0, 1, 2, 3, 3});

    spec.rows = 3;
    spec.cols = 3;
    const InformerGraph g9 = build(spec, 9);
    for (int i = 0; i < 9; ++i) {
        std::set<int> distinct(g9.informers[static_cast<std::size_t>(i)].begin(),
                               g9.informers[static_cast<std::size_t>(i)].end());
        CHECK(distinct.size() == 5);  // 4 distinct neighbours + self
    }
    for (int i = 0; i < 9; ++i) {
        for (const int j : g9.informers[static_cast<std::size_t>(i)]) {
            CHECK(informs(g9, i, j));
        }
    }

    spec.rows = 2;
    spec.cols = 4;
    CHECK_THROWS_AS(build(spec, 6), std::invalid_argument);
    spec.rows = 1;
    spec.cols = 6;
    CHECK_THROWS_AS(build(spec, 6), std::invalid_argument);
}

TEST_CASE("random topology draws distinct non-self informers, deterministically") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Random;
    spec.out_degree = 3;
    SplitMix64 rng_a(substream_key(41, 0, 0));
    const InformerGraph a = build(spec, 10, &rng_a);
    for (int i = 0; i < 10; ++i) {
        const auto& nb = a.informers[static_cast<std::size_t>(i)];
        CHECK(nb.size() == 4);  // 3 informers + self
        std::set<int> distinct(nb.begin(), nb.end());
        CHECK(distinct.size() == 4);
        CHECK(distinct.contains(i));
        for (const int j : nb) {
            CHECK(j >= 0);
            CHECK(j < 10);
        }
    }
    SplitMix64 rng_b(substream_key(41, 0, 0));
    const InformerGraph b = build(spec, 10, &rng_b);
    CHECK(a.informers == b.informers);

    CHECK_THROWS_AS(build(spec, 10, nullptr), std::invalid_argument);
    spec.out_degree = 10;
    CHECK_THROWS_AS(build(spec, 10, &rng_a), std::invalid_argument);
}

TEST_CASE("forward topology is directed") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Forward;
    spec.k = 2;
    const InformerGraph g = build(spec, 5);
    // i hears from the k particles behind it (and itself).
    CHECK(g.informers[0] == std::vector<int>{0, 3, 4});
    CHECK(g.informers[1] == std::vector<int>{0, 1, 4});
    CHECK(g.informers[4] == std::vector<int>{2, 3, 4});
    CHECK_FALSE(symmetric(g));

    spec.k = 5;
    CHECK_THROWS_AS(build(spec, 5), std::invalid_argument);
}

TEST_CASE("lbest picks the smallest pbest; ties go to the lowest index") {
    TopologySpec spec;
    spec.kind = TopologySpec::Kind::Global;
    const InformerGraph g = build(spec, 4);

    const std::vector<double> values = {3.0, 1.0, 2.0, 1.0};
    const LbestRef best = lbest_of(g, 0, values);
    CHECK(best.index == 1);
    CHECK(best.value == 1.0);

    const std::vector<double> equal = {5.0, 5.0, 5.0, 5.0};
    CHECK(lbest_of(g, 3, equal).index == 0);

    // Single informer: a spoke in the wheel without self.
    TopologySpec wheel;
    wheel.kind = TopologySpec::Kind::Wheel;
    wheel.include_self = false;
    const InformerGraph w = build(wheel, 4);
    CHECK(w.informers[2] == std::vector<int>{0});
    CHECK(lbest_of(w, 2, values).index == 0);
    CHECK(lbest_of(w, 2, values).value == 3.0);

    // Global topology resolves to the swarm-wide best for everyone.
    for (int i = 0; i < 4; ++i) CHECK(lbest_of(g, i, values).index == 1);

    std::vector<std::vector<double>> positions = {
        {0.0}, {1.0}, {2.0}, {3.0}};
    const LbestView view = lbest_of(g, 0, values, positions);
    CHECK(view.index == 1);
    CHECK(view.position[0] == 1.0);
}
