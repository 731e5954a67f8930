#include "psokit/topologies.hpp"

#include <algorithm>
#include <stdexcept>

namespace psokit {

namespace {

std::vector<int> with_self(std::vector<int> informers, int self, bool include_self) {
    if (include_self) informers.push_back(self);
    std::sort(informers.begin(), informers.end());
    return informers;
}

}  // namespace

InformerGraph build(const TopologySpec& spec, int swarm_size, SplitMix64* rng) {
    if (swarm_size < 1) throw std::invalid_argument("swarm size must be >= 1");
    const int n = swarm_size;
    InformerGraph graph;
    graph.informers.resize(static_cast<std::size_t>(n));

    switch (spec.kind) {
        case TopologySpec::Kind::Global:
            for (int i = 0; i < n; ++i) {
                std::vector<int> all;
                all.reserve(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j) {
                    if (j != i || spec.include_self) all.push_back(j);
                }
                graph.informers[static_cast<std::size_t>(i)] = std::move(all);
            }
            break;

        case TopologySpec::Kind::Ring: {
            if (spec.k <= 0 || spec.k % 2 != 0) {
                throw std::invalid_argument("ring neighbour count must be even and positive");
            }
            if (spec.k >= n) {
                throw std::invalid_argument("ring neighbour count must be below the swarm size");
            }
            const int half = spec.k / 2;
            for (int i = 0; i < n; ++i) {
                std::vector<int> nb;
                nb.reserve(static_cast<std::size_t>(spec.k));
                for (int d = 1; d <= half; ++d) {
                    nb.push_back((i + d) % n);
                    nb.push_back(((i - d) % n + n) % n);
                }
                graph.informers[static_cast<std::size_t>(i)] =
                    with_self(std::move(nb), i, spec.include_self);
            }
            break;
        }

        case TopologySpec::Kind::Wheel: {
            if (n < 2) throw std::invalid_argument("wheel topology needs at least 2 particles");
            // Hub is particle 0; spokes connect bidirectionally to it.
            std::vector<int> hub;
            for (int j = 1; j < n; ++j) hub.push_back(j);
            graph.informers[0] = with_self(std::move(hub), 0, spec.include_self);
            for (int i = 1; i < n; ++i) {
                graph.informers[static_cast<std::size_t>(i)] =
                    with_self({0}, i, spec.include_self);
            }
            break;
        }

        case TopologySpec::Kind::Random: {
            if (spec.out_degree < 1 || spec.out_degree > n - 1) {
                throw std::invalid_argument("random topology degree must lie in [1, swarm size - 1]");
            }
            if (rng == nullptr) {
                throw std::invalid_argument("random topology needs a seeded stream");
            }
            for (int i = 0; i < n; ++i) {
                // Draw out_degree distinct informers, self excluded, without
                // replacement.
                std::vector<int> pool;
                pool.reserve(static_cast<std::size_t>(n) - 1);
                for (int j = 0; j < n; ++j) {
                    if (j != i) pool.push_back(j);
                }
                std::vector<int> nb;
                nb.reserve(static_cast<std::size_t>(spec.out_degree));
                for (int d = 0; d < spec.out_degree; ++d) {
                    const auto pick = static_cast<std::size_t>(rng->below(pool.size()));
                    nb.push_back(pool[pick]);
                    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
                }
                graph.informers[static_cast<std::size_t>(i)] =
                    with_self(std::move(nb), i, spec.include_self);
            }
            break;
        }

        case TopologySpec::Kind::Forward: {
            if (spec.k < 1 || spec.k >= n) {
                throw std::invalid_argument("forward neighbour count must lie in [1, swarm size - 1]");
            }
            // Particle i informs i+1 .. i+k (mod n), so i hears from the k
            // particles behind it. Directed on purpose.
            for (int i = 0; i < n; ++i) {
                std::vector<int> nb;
                nb.reserve(static_cast<std::size_t>(spec.k));
                for (int d = 1; d <= spec.k; ++d) {
                    nb.push_back(((i - d) % n + n) % n);
                }
                graph.informers[static_cast<std::size_t>(i)] =
                    with_self(std::move(nb), i, spec.include_self);
            }
            break;
        }

        case TopologySpec::Kind::VonNeumann: {
            if (spec.rows < 2 || spec.cols < 2) {
                throw std::invalid_argument("von neumann lattice needs rows >= 2 and cols >= 2");
            }
            if (spec.rows * spec.cols != n) {
                throw std::invalid_argument("von neumann lattice shape must match the swarm size");
            }
            const int rows = spec.rows;
            const int cols = spec.cols;
            for (int i = 0; i < n; ++i) {
                const int r = i / cols;
                const int c = i % cols;
                // Four lattice neighbours on a torus. On a 2-wide axis the
                // up/down (or left/right) neighbours coincide; the duplicate
                // entry is harmless for the min-reduction.
                std::vector<int> nb = {
                    ((r + 1) % rows) * cols + c,
                    (((r - 1) % rows + rows) % rows) * cols + c,
                    r * cols + (c + 1) % cols,
                    r * cols + ((c - 1) % cols + cols) % cols,
                };
                graph.informers[static_cast<std::size_t>(i)] =
                    with_self(std::move(nb), i, spec.include_self);
            }
            break;
        }
    }

    for (const auto& informers : graph.informers) {
        if (informers.empty()) {
            throw std::invalid_argument("topology leaves a particle with no informers");
        }
    }
    return graph;
}

LbestRef lbest_of(const InformerGraph& graph, int i,
                  std::span<const double> pbest_values) {
    const auto& informers = graph.informers[static_cast<std::size_t>(i)];
    if (informers.empty()) throw std::invalid_argument("empty informer list");
    int best = informers.front();
    for (const int j : informers) {
        // Strict comparison keeps ties at the lowest index (informers are
        // stored sorted ascending).
        if (pbest_values[static_cast<std::size_t>(j)] <
            pbest_values[static_cast<std::size_t>(best)]) {
            best = j;
        }
    }
    return {best, pbest_values[static_cast<std::size_t>(best)]};
}

LbestView lbest_of(const InformerGraph& graph, int i,
                   std::span<const double> pbest_values,
                   std::span<const std::vector<double>> pbest_positions) {
    const LbestRef ref = lbest_of(graph, i, pbest_values);
    return {ref.index, ref.value,
            std::span<const double>(pbest_positions[static_cast<std::size_t>(ref.index)])};
}

const char* to_string(TopologySpec::Kind kind) {
    switch (kind) {
        case TopologySpec::Kind::Global: return "global";
        case TopologySpec::Kind::Ring: return "ring";
        case TopologySpec::Kind::Wheel: return "wheel";
        case TopologySpec::Kind::Random: return "random";
        case TopologySpec::Kind::Forward: return "forward";
        case TopologySpec::Kind::VonNeumann: return "von_neumann";
    }
    return "?";
}

}  // namespace psokit
