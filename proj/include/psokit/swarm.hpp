#ifndef PSOKIT_SWARM_HPP
#define PSOKIT_SWARM_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psokit/formulations.hpp"
#include "psokit/random.hpp"
#include "psokit/topologies.hpp"

namespace psokit {

using Objective = std::function<double(std::span<const double>)>;

struct ParticleState {
    std::vector<double> x;        // position
    std::vector<double> v;        // velocity
    std::vector<double> pbest_x;  // best position found so far
    double pbest_f = 0.0;         // objective value at pbest_x
    double f = 0.0;               // objective value at x (last evaluation)
};

struct SwarmConfig {
    int swarm_size = 0;
    int dimensions = 0;
    std::vector<std::array<double, 2>> bounds;  // per-dimension [min, max]
    FormulationConfig formulation;
    TopologySpec topology;
    std::optional<double> vmax_fraction;  // in (0, 1]; velocity clamp off when absent
    int max_iterations = 0;
    std::optional<double> target_tolerance;
    std::uint64_t seed = 0;
    bool feasible_pbest_only = false;   // restrict pbest updates to in-bounds points
    bool parallel_evaluation = false;   // evaluate particles on worker threads
};

struct IterationStats {
    int t = 0;
    double best_f = 0.0;
    std::vector<double> best_x;
    long long evals = 0;
};

struct RunRecord {
    SwarmConfig config;
    std::vector<double> best_trace;  // global best value per iteration, t = 0 included
    std::vector<double> best_x;
    double best_f = 0.0;
    long long evals = 0;
    double wall_seconds = 0.0;  // in-memory only; never serialized
    std::string terminated_by;  // "max_iterations" or "target_tolerance"
};

/// Raised when an objective evaluation throws or returns a non-finite value;
/// carries the iteration and particle where it happened.
struct EvaluationError : std::runtime_error {
    EvaluationError(int iteration, int particle, const std::string& cause);

    int iteration = 0;
    int particle = 0;
};

/// New velocity for one particle: w * v + phi_i (pbest - x) + phi_s (lbest - x)
/// per dimension, with coefficients sampled fresh for each dimension. No
/// clamping here.
std::vector<double> velocity_update(const ParticleState& p,
                                    std::span<const double> lbest_x,
                                    std::span<const SampledAcceleration> coeffs,
                                    double w);

/// Caps each component at +-vmax, preserving sign.
std::vector<double> clamp_velocity(std::span<const double> v,
                                   std::span<const double> vmax);

/// Randomly weighted average (phi_i pbest + phi_s lbest) / (phi_i + phi_s).
/// Undefined when both weights are zero (std::domain_error): such a step has
/// no attraction to skip toward.
double overall_attractor(double pbest_j, double lbest_j, double phi_i,
                         double phi_s);

/// The optimization loop state: initialize, then call step() until done.
/// Initial positions are uniform within bounds, velocities zero, and the
/// initial positions are evaluated before the first velocity update.
class Swarm {
public:
    Swarm(SwarmConfig config, Objective objective);

    /// One synchronous sweep: every particle samples per-dimension
    /// coefficients, updates velocity (clamped if configured) and position,
    /// and is re-evaluated; pbest then lbest views refresh afterwards.
    void step();

    int size() const { return static_cast<int>(particles_.size()); }
    int iteration() const { return iteration_; }
    long long evals() const { return evals_; }

    const ParticleState& particle(int i) const {
        return particles_[static_cast<std::size_t>(i)];
    }
    /// Mutable access (test rigs freeze attractors through this); call
    /// refresh_social() after editing pbest entries.
    ParticleState& particle(int i) { return particles_[static_cast<std::size_t>(i)]; }

    /// Recomputes every particle's lbest view and the global best.
    void refresh_social();

    int best_index() const { return best_; }
    double best_f() const;
    const std::vector<double>& best_x() const;
    int lbest_index(int i) const { return lbest_index_[static_cast<std::size_t>(i)]; }

    const SwarmConfig& config() const { return config_; }
    const InformerGraph& graph() const { return graph_; }

private:
    SwarmConfig config_;
    FormulationConfig sampling_;  // constricted resolved to general
    Objective objective_;
    std::vector<ParticleState> particles_;
    std::vector<SplitMix64> streams_;
    InformerGraph graph_;
    std::vector<int> lbest_index_;
    std::vector<double> pbest_values_;
    std::vector<double> vmax_;
    int best_ = 0;
    int iteration_ = 0;
    long long evals_ = 0;

    void evaluate_all();
    bool in_bounds(std::span<const double> x) const;
};

/// Full run: step() until max_iterations or the global best reaches
/// target_tolerance. on_iteration (when set) fires once per recorded
/// iteration, t = 0 included.
RunRecord run(const SwarmConfig& config, Objective objective,
              const std::function<void(const IterationStats&)>& on_iteration = {});

/// Rejects structurally invalid configurations before any evaluation.
void validate_config(const SwarmConfig& config);

}  // namespace psokit

#endif  // PSOKIT_SWARM_HPP
