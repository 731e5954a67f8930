#ifndef PSOKIT_OBJECTIVES_HPP
#define PSOKIT_OBJECTIVES_HPP

#include <array>
#include <cstdio>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <sys/types.h>

namespace psokit {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct ObjectiveSpec {
    std::string name;
    int dimensions = 0;
    std::vector<std::array<double, 2>> bounds;  // per-dimension [min, max]
    std::optional<std::pair<std::vector<double>, double>> known_optimum;
    ObjectiveFn fn;
};

/// Evaluates the objective after a dimension check.
double evaluate(const ObjectiveSpec& spec, std::span<const double> x);

/// Instantiates a registered test objective (sphere, rosenbrock, rastrigin,
/// ackley, griewank) at the given dimensionality, with its conventional
/// bounds broadcast per dimension. Unknown names raise std::invalid_argument.
ObjectiveSpec make_objective(const std::string& name, int dimensions);

std::vector<std::string> objective_names();

/// Black-box objective evaluated by a child process. Protocol: one request
/// line of space-separated decimals on the child's stdin, one decimal reply
/// line on its stdout. A child that exits (or replies garbage) aborts the
/// run via std::runtime_error. Evaluations are serialized.
class SubprocessObjective {
public:
    explicit SubprocessObjective(std::string command);
    ~SubprocessObjective();

    SubprocessObjective(const SubprocessObjective&) = delete;
    SubprocessObjective& operator=(const SubprocessObjective&) = delete;

    double operator()(std::span<const double> x);

private:
    std::string command_;
    pid_t pid_ = -1;
    FILE* to_child_ = nullptr;
    FILE* from_child_ = nullptr;
    std::mutex mutex_;

    void shutdown();
};

}  // namespace psokit

#endif  // PSOKIT_OBJECTIVES_HPP
