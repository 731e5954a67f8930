#ifndef PSOKIT_TOPOLOGIES_HPP
#define PSOKIT_TOPOLOGIES_HPP

#include <span>
#include <vector>

#include "psokit/random.hpp"

namespace psokit {

/// Static informer-graph shapes. Neighborhoods are index-based.
struct TopologySpec {
    enum class Kind { Global, Ring, Wheel, Random, Forward, VonNeumann };

    Kind kind = Kind::Global;
    int k = 2;           // ring: even neighbour count; forward: informer count
    int out_degree = 2;  // random: informers drawn per particle
    int rows = 0;        // von neumann lattice shape
    int cols = 0;
    bool include_self = true;
};

/// adjacency[i] lists the particles whose personal bests particle i observes.
struct InformerGraph {
    std::vector<std::vector<int>> informers;

    int size() const { return static_cast<int>(informers.size()); }
};

/// Builds the informer graph for a swarm of the given size. The graph is
/// fixed for the whole run; the Random kind draws once from `rng`.
/// Infeasible specs (ring k >= swarm size, lattice shape mismatch, ...)
/// raise std::invalid_argument.
InformerGraph build(const TopologySpec& spec, int swarm_size,
                    SplitMix64* rng = nullptr);

struct LbestRef {
    int index = 0;
    double value = 0.0;
};

struct LbestView {
    int index = 0;
    double value = 0.0;
    std::span<const double> position;
};

/// Informer of particle i with the lowest pbest value; ties break toward the
/// lowest index.
LbestRef lbest_of(const InformerGraph& graph, int i,
                  std::span<const double> pbest_values);

/// Same selection, with the winning informer's pbest position attached.
LbestView lbest_of(const InformerGraph& graph, int i,
                   std::span<const double> pbest_values,
                   std::span<const std::vector<double>> pbest_positions);

const char* to_string(TopologySpec::Kind kind);

}  // namespace psokit

#endif  // PSOKIT_TOPOLOGIES_HPP
