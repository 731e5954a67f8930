#include "psokit/objectives.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

namespace psokit {

namespace {

double sphere(std::span<const double> x) {
    double sum = 0.0;
    for (const double v : x) sum += v * v;
    return sum;
}

double rosenbrock(std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (const double v : x) {
        sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    }
    return sum;
}

double ackley(std::span<const double> x) {
    const double d = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (const double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return 20.0 + std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(sq / d)) -
           std::exp(cs / d);
}

double griewank(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i] / 4000.0;
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum - prod;
}

struct Registered {
    const char* name;
    double (*fn)(std::span<const double>);
    double lo;
    double hi;
    bool optimum_at_ones;  // otherwise at the origin
    int min_dimensions;
};

constexpr Registered kRegistry[] = {
    {"sphere", sphere, -100.0, 100.0, false, 1},
    {"rosenbrock", rosenbrock, -30.0, 30.0, true, 2},
    {"rastrigin", rastrigin, -5.12, 5.12, false, 1},
    {"ackley", ackley, -32.0, 32.0, false, 1},
    {"griewank", griewank, -600.0, 600.0, false, 1},
};

}  // namespace

double evaluate(const ObjectiveSpec& spec, std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.dimensions) {
        throw std::invalid_argument("objective '" + spec.name + "' expects " +
                                    std::to_string(spec.dimensions) +
                                    " dimensions, got " + std::to_string(x.size()));
    }
    return spec.fn(x);
}

ObjectiveSpec make_objective(const std::string& name, int dimensions) {
    for (const Registered& reg : kRegistry) {
        if (name != reg.name) continue;
        if (dimensions < reg.min_dimensions) {
            throw std::invalid_argument("objective '" + name + "' needs at least " +
                                        std::to_string(reg.min_dimensions) +
                                        " dimensions");
        }
        ObjectiveSpec spec;
        spec.name = name;
        spec.dimensions = dimensions;
        spec.bounds.assign(static_cast<std::size_t>(dimensions), {reg.lo, reg.hi});
        std::vector<double> opt(static_cast<std::size_t>(dimensions),
                                reg.optimum_at_ones ? 1.0 : 0.0);
        spec.known_optimum = {std::move(opt), 0.0};
        spec.fn = reg.fn;
        return spec;
    }
    throw std::invalid_argument("unknown objective '" + name + "'");
}

std::vector<std::string> objective_names() {
    std::vector<std::string> names;
    for (const Registered& reg : kRegistry) names.emplace_back(reg.name);
    return names;
}

SubprocessObjective::SubprocessObjective(std::string command)
    : command_(std::move(command)) {
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
        throw std::runtime_error("failed to create objective pipes");
    }
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("failed to fork objective process");
    if (pid_ == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    to_child_ = fdopen(to_child[1], "w");
    from_child_ = fdopen(from_child[0], "r");
    if (to_child_ == nullptr || from_child_ == nullptr) {
        shutdown();
        throw std::runtime_error("failed to open objective process streams");
    }
}

SubprocessObjective::~SubprocessObjective() { shutdown(); }

void SubprocessObjective::shutdown() {
    if (to_child_ != nullptr) {
        fclose(to_child_);
        to_child_ = nullptr;
    }
    if (from_child_ != nullptr) {
        fclose(from_child_);
        from_child_ = nullptr;
    }
    if (pid_ > 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

double SubprocessObjective::operator()(std::span<const double> x) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (to_child_ == nullptr || from_child_ == nullptr) {
        throw std::runtime_error("objective process is not running");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (fprintf(to_child_, i == 0 ? "%.17g" : " %.17g", x[i]) < 0) {
            throw std::runtime_error("failed to write to objective process");
        }
    }
    if (fprintf(to_child_, "\n") < 0 || fflush(to_child_) != 0) {
        throw std::runtime_error("failed to write to objective process");
    }

    char line[512];
    if (fgets(line, sizeof line, from_child_) == nullptr) {
        // Child went away; report its exit status instead of a silent EOF.
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        throw std::runtime_error("objective process '" + command_ +
                                 "' terminated (exit status " +
                                 std::to_string(code) + ")");
    }
    errno = 0;
    char* end = nullptr;
    const double value = strtod(line, &end);
    if (end == line || errno != 0) {
        throw std::runtime_error("objective process replied with a non-numeric line");
    }
    return value;
}

}  // namespace psokit
