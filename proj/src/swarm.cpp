#include "psokit/swarm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <utility>

namespace psokit {

namespace {

constexpr std::uint64_t kParticleStreamTag = 0x70617274ULL;  // particle streams
constexpr std::uint64_t kTopologyStreamTag = 0x746f706fULL;  // random-topology draw

}  // namespace

EvaluationError::EvaluationError(int iteration_in, int particle_in,
                                 const std::string& cause)
    : std::runtime_error("objective evaluation failed at iteration " +
                         std::to_string(iteration_in) + ", particle " +
                         std::to_string(particle_in) + ": " + cause),
      iteration(iteration_in),
      particle(particle_in) {}

std::vector<double> velocity_update(const ParticleState& p,
                                    std::span<const double> lbest_x,
                                    std::span<const SampledAcceleration> coeffs,
                                    double w) {
    const std::size_t d = p.x.size();
    if (p.v.size() != d || p.pbest_x.size() != d || lbest_x.size() != d ||
        coeffs.size() != d) {
        throw std::invalid_argument("velocity update: dimension mismatch");
    }
    std::vector<double> v(d);
    for (std::size_t j = 0; j < d; ++j) {
        v[j] = w * p.v[j] + coeffs[j].phi_i * (p.pbest_x[j] - p.x[j]) +
               coeffs[j].phi_s * (lbest_x[j] - p.x[j]);
    }
    return v;
}

std::vector<double> clamp_velocity(std::span<const double> v,
                                   std::span<const double> vmax) {
    if (v.size() != vmax.size()) {
        throw std::invalid_argument("velocity clamp: dimension mismatch");
    }
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!(vmax[j] > 0.0)) {
            throw std::invalid_argument("vmax components must be positive");
        }
        out[j] = v[j];
        if (std::abs(out[j]) > vmax[j]) {
            out[j] = std::copysign(vmax[j], out[j]);
        }
    }
    return out;
}

double overall_attractor(double pbest_j, double lbest_j, double phi_i,
                         double phi_s) {
    const double total = phi_i + phi_s;
    if (total <= 0.0) {
        throw std::domain_error(
            "overall attractor undefined: phi_i + phi_s must be positive");
    }
    return (phi_i * pbest_j + phi_s * lbest_j) / total;
}

void validate_config(const SwarmConfig& config) {
    if (config.swarm_size < 1) throw std::invalid_argument("swarm_size must be >= 1");
    if (config.dimensions < 1) throw std::invalid_argument("dimensions must be >= 1");
    if (static_cast<int>(config.bounds.size()) != config.dimensions) {
        throw std::invalid_argument("bounds must list one [min, max] pair per dimension");
    }
    for (const auto& b : config.bounds) {
        if (!std::isfinite(b[0]) || !std::isfinite(b[1]) || !(b[1] > b[0])) {
            throw std::invalid_argument("each bound must satisfy max > min");
        }
    }
    if (config.vmax_fraction &&
        !(*config.vmax_fraction > 0.0 && *config.vmax_fraction <= 1.0)) {
        throw std::invalid_argument("vmax_fraction must lie in (0, 1]");
    }
    if (config.max_iterations < 0) {
        throw std::invalid_argument("max_iterations must be >= 0");
    }
    if (config.target_tolerance && !std::isfinite(*config.target_tolerance)) {
        throw std::invalid_argument("target_tolerance must be finite");
    }
    validate_params(config.formulation);
}

Swarm::Swarm(SwarmConfig config, Objective objective)
    : config_(std::move(config)), objective_(std::move(objective)) {
    validate_config(config_);
    if (!objective_) throw std::invalid_argument("objective must be callable");
    sampling_ = resolve(config_.formulation);

    const int n = config_.swarm_size;
    const int d = config_.dimensions;
    particles_.resize(static_cast<std::size_t>(n));
    streams_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        streams_.push_back(
            substream(config_.seed, kParticleStreamTag, static_cast<std::uint64_t>(i)));
        ParticleState& p = particles_[static_cast<std::size_t>(i)];
        p.x.resize(static_cast<std::size_t>(d));
        p.v.assign(static_cast<std::size_t>(d), 0.0);
        for (int j = 0; j < d; ++j) {
            const auto& b = config_.bounds[static_cast<std::size_t>(j)];
            p.x[static_cast<std::size_t>(j)] = streams_.back().uniform(b[0], b[1]);
        }
        p.pbest_x = p.x;
    }
    if (config_.vmax_fraction) {
        vmax_.resize(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            const auto& b = config_.bounds[static_cast<std::size_t>(j)];
            vmax_[static_cast<std::size_t>(j)] = *config_.vmax_fraction * (b[1] - b[0]);
        }
    }

    SplitMix64 topo_stream = substream(config_.seed, kTopologyStreamTag, 0);
    graph_ = build(config_.topology, n, &topo_stream);
    lbest_index_.assign(static_cast<std::size_t>(n), 0);
    pbest_values_.assign(static_cast<std::size_t>(n), 0.0);

    // Initial positions are evaluated before any velocity update.
    evaluate_all();
    for (auto& p : particles_) p.pbest_f = p.f;
    refresh_social();
}

bool Swarm::in_bounds(std::span<const double> x) const {
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto& b = config_.bounds[j];
        if (x[j] < b[0] || x[j] > b[1]) return false;
    }
    return true;
}

void Swarm::evaluate_all() {
    const int n = size();
    auto eval_one = [this](int i) {
        ParticleState& p = particles_[static_cast<std::size_t>(i)];
        p.f = objective_(p.x);
        if (!std::isfinite(p.f)) {
            throw EvaluationError(iteration_, i, "objective returned a non-finite value");
        }
    };

    if (!config_.parallel_evaluation || n < 2) {
        for (int i = 0; i < n; ++i) {
            try {
                eval_one(i);
            } catch (const EvaluationError&) {
                throw;
            } catch (const std::exception& e) {
                throw EvaluationError(iteration_, i, e.what());
            }
        }
    } else {
        const int workers = static_cast<int>(
            std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                               static_cast<unsigned>(n)));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int wk = 0; wk < workers; ++wk) {
            pool.emplace_back([&, wk] {
                for (int i = wk; i < n; i += workers) {
                    try {
                        eval_one(i);
                    } catch (...) {
                        errors[static_cast<std::size_t>(i)] = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        // Report the lowest failing particle so the diagnostic is
        // deterministic no matter which worker hit it first.
        for (int i = 0; i < n; ++i) {
            if (errors[static_cast<std::size_t>(i)]) {
                try {
                    std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
                } catch (const EvaluationError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw EvaluationError(iteration_, i, e.what());
                }
            }
        }
    }
    evals_ += n;
}

void Swarm::refresh_social() {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        pbest_values_[static_cast<std::size_t>(i)] =
            particles_[static_cast<std::size_t>(i)].pbest_f;
    }
    for (int i = 0; i < n; ++i) {
        lbest_index_[static_cast<std::size_t>(i)] = lbest_of(graph_, i, pbest_values_).index;
    }
    best_ = 0;
    for (int i = 1; i < n; ++i) {
        if (pbest_values_[static_cast<std::size_t>(i)] <
            pbest_values_[static_cast<std::size_t>(best_)]) {
            best_ = i;
        }
    }
}

void Swarm::step() {
    const int n = size();
    const int d = config_.dimensions;
    const double w = inertia_weight(sampling_);
    std::vector<SampledAcceleration> coeffs(static_cast<std::size_t>(d));

    // Move phase. lbest views are the ones refreshed at the end of the
    // previous iteration, so the sweep is synchronous.
    for (int i = 0; i < n; ++i) {
        ParticleState& p = particles_[static_cast<std::size_t>(i)];
        const ParticleState& informer =
            particles_[static_cast<std::size_t>(lbest_index_[static_cast<std::size_t>(i)])];
        for (int j = 0; j < d; ++j) {
            coeffs[static_cast<std::size_t>(j)] =
                sample(sampling_, streams_[static_cast<std::size_t>(i)]);
        }
        p.v = velocity_update(p, informer.pbest_x, coeffs, w);
        if (!vmax_.empty()) p.v = clamp_velocity(p.v, vmax_);
        for (int j = 0; j < d; ++j) {
            p.x[static_cast<std::size_t>(j)] += p.v[static_cast<std::size_t>(j)];
        }
    }

    evaluate_all();

    // Memory phase: strict improvement only, so ties keep the incumbent.
    for (int i = 0; i < n; ++i) {
        ParticleState& p = particles_[static_cast<std::size_t>(i)];
        if (p.f < p.pbest_f && (!config_.feasible_pbest_only || in_bounds(p.x))) {
            p.pbest_f = p.f;
            p.pbest_x = p.x;
        }
    }
    refresh_social();
    ++iteration_;
}

double Swarm::best_f() const {
    return particles_[static_cast<std::size_t>(best_)].pbest_f;
}

const std::vector<double>& Swarm::best_x() const {
    return particles_[static_cast<std::size_t>(best_)].pbest_x;
}

RunRecord run(const SwarmConfig& config, Objective objective,
              const std::function<void(const IterationStats&)>& on_iteration) {
    const auto start = std::chrono::steady_clock::now();
    Swarm swarm(config, std::move(objective));

    RunRecord record;
    record.config = config;
    record.best_trace.reserve(static_cast<std::size_t>(config.max_iterations) + 1);

    const auto note = [&] {
        record.best_trace.push_back(swarm.best_f());
        if (on_iteration) {
            on_iteration({swarm.iteration(), swarm.best_f(), swarm.best_x(), swarm.evals()});
        }
    };
    const auto target_met = [&] {
        return config.target_tolerance && swarm.best_f() <= *config.target_tolerance;
    };

    note();  // t = 0
    while (swarm.iteration() < config.max_iterations && !target_met()) {
        swarm.step();
        note();
    }

    record.best_f = swarm.best_f();
    record.best_x = swarm.best_x();
    record.evals = swarm.evals();
    record.terminated_by = target_met() ? "target_tolerance" : "max_iterations";
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

}  // namespace psokit
