// psokit: coefficient analysis, guideline checks and swarm runs from the
// command line. See README.md for examples.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "psokit/advisor.hpp"
#include "psokit/coeff_analysis.hpp"
#include "psokit/config.hpp"
#include "psokit/formulations.hpp"
#include "psokit/io.hpp"
#include "psokit/objectives.hpp"
#include "psokit/swarm.hpp"

namespace {

using nlohmann::json;
using namespace psokit;

struct OutputTarget {
    std::string path;  // empty = stdout

    template <typename Fn>
    void write(Fn&& fn) const {
        if (path.empty()) {
            fn(std::cout);
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        fn(file);
    }
};

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

AxisRange parse_axis(const std::string& text) {
    AxisRange r;
    std::istringstream in(text);
    char c1 = 0;
    char c2 = 0;
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':' ||
        !in.eof()) {
        throw CLI::ValidationError("range must be written lo:hi:count, e.g. 0:4:401");
    }
    return r;
}

json root_to_json(const std::complex<double>& r) {
    return {{"re", r.real()}, {"im", r.imag()}};
}

void print_analysis(std::ostream& out, CoefficientPoint c, const std::string& format,
                    int digits) {
    const RootAnalysis ra = roots(c);
    const BehaviorClass behavior = classify_behavior(c);
    const bool conv = converges(c);
    std::vector<std::string> warnings;
    if (c.w < 0.0) {
        warnings.emplace_back(
            "w < 0: outside the practical-interest region (inertia reverses the "
            "previous displacement)");
    }

    const auto real_str = [&](double v) { return format_real(v, digits); };
    const auto root_str = [&](const std::complex<double>& r) {
        if (ra.kind != RootKind::ComplexConjugate) return real_str(r.real());
        return real_str(r.real()) + (r.imag() < 0 ? " - " : " + ") +
               real_str(std::abs(r.imag())) + "i";
    };

    if (format == "json") {
        json j{{"phi", c.phi},
               {"w", c.w},
               {"gamma_sq", ra.gamma_sq},
               {"root_kind", to_string(ra.kind)},
               {"r1", root_to_json(ra.r1)},
               {"r2", root_to_json(ra.r2)},
               {"spectral_radius", ra.spectral_radius},
               {"converges", conv},
               {"behavior", to_string(behavior)},
               {"warnings", warnings}};
        if (ra.kind == RootKind::ComplexConjugate) {
            const ComplexRootForm polar = complex_root_form(c);
            j["rho"] = polar.rho;
            j["theta"] = polar.theta;
        }
        out << j.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "phi,w,gamma_sq,root_kind,r1_re,r1_im,r2_re,r2_im,spectral_radius,"
               "converges,behavior\n";
        out << real_str(c.phi) << ',' << real_str(c.w) << ',' << real_str(ra.gamma_sq)
            << ',' << to_string(ra.kind) << ',' << real_str(ra.r1.real()) << ','
            << real_str(ra.r1.imag()) << ',' << real_str(ra.r2.real()) << ','
            << real_str(ra.r2.imag()) << ',' << real_str(ra.spectral_radius) << ','
            << (conv ? "true" : "false") << ',' << to_string(behavior) << '\n';
        return;
    }

    out << "point:            phi = " << real_str(c.phi) << ", w = " << real_str(c.w)
        << '\n';
    out << "discriminant:     " << real_str(ra.gamma_sq) << '\n';
    out << "root regime:      " << to_string(ra.kind) << '\n';
    out << "roots:            r1 = " << root_str(ra.r1) << ", r2 = " << root_str(ra.r2)
        << '\n';
    if (ra.kind == RootKind::ComplexConjugate) {
        const ComplexRootForm polar = complex_root_form(c);
        out << "polar form:       rho = " << real_str(polar.rho)
            << ", theta = " << real_str(polar.theta) << '\n';
    }
    out << "spectral radius:  " << real_str(ra.spectral_radius) << '\n';
    out << "converges:        " << (conv ? "yes" : "no")
        << "  (requires 0 < phi < 2*(w+1) and |w| < 1, strictly)\n";
    out << "behavior:         " << to_string(behavior) << '\n';
    for (const auto& warning : warnings) out << "warning:          " << warning << '\n';
}

json params_to_json(const GeneralParams& p) {
    return {{"formulation", "general"}, {"w", p.w},  {"phi_min", p.phi_min},
            {"phi_max", p.phi_max},     {"ip", p.ip}, {"sp", p.sp},
            {"phi_mean", p.phi_mean()}};
}

void print_general_params(std::ostream& out, const GeneralParams& p,
                          const std::string& format, int digits) {
    if (format == "json") {
        out << params_to_json(p).dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "w,phi_min,phi_max,ip,sp,phi_mean\n"
            << format_real(p.w, digits) << ',' << format_real(p.phi_min, digits) << ','
            << format_real(p.phi_max, digits) << ',' << format_real(p.ip, digits) << ','
            << format_real(p.sp, digits) << ',' << format_real(p.phi_mean(), digits)
            << '\n';
        return;
    }
    out << "w        = " << format_real(p.w, digits) << '\n'
        << "phi_min  = " << format_real(p.phi_min, digits) << '\n'
        << "phi_max  = " << format_real(p.phi_max, digits) << '\n'
        << "ip       = " << format_real(p.ip, digits) << '\n'
        << "sp       = " << format_real(p.sp, digits) << '\n'
        << "phi_mean = " << format_real(p.phi_mean(), digits) << '\n';
}

void print_report(std::ostream& out, const GuidelineReport& report,
                  const std::string& format, int digits) {
    if (format == "json") {
        json rules = json::array();
        for (const auto& r : report.rules) {
            rules.push_back({{"rule", r.rule},
                             {"status", to_string(r.status)},
                             {"citation", r.citation},
                             {"detail", r.detail}});
        }
        json j{{"phi_mean", report.phi_mean},
               {"mean_point_converges", report.mean_point_converges},
               {"max_point_converges", report.max_point_converges},
               {"rules", rules}};
        out << j.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        const auto quote = [](std::string s) {
            std::string q = "\"";
            for (const char ch : s) {
                if (ch == '"') q += '"';
                q += ch;
            }
            return q + "\"";
        };
        out << "rule,status,citation,detail\n";
        for (const auto& r : report.rules) {
            out << r.rule << ',' << to_string(r.status) << ',' << quote(r.citation)
                << ',' << quote(r.detail) << '\n';
        }
        return;
    }
    for (const auto& r : report.rules) {
        out << r.rule;
        for (std::size_t pad = r.rule.size(); pad < 18; ++pad) out << ' ';
        out << to_string(r.status) << "  " << r.detail << '\n';
    }
    out << "phi_mean = " << format_real(report.phi_mean, digits)
        << "; (phi_mean, w) converges: " << (report.mean_point_converges ? "yes" : "no")
        << "; (phi_max, w) converges: " << (report.max_point_converges ? "yes" : "no")
        << '\n';
    out << (report.has_fail() ? "result: FAIL" : report.has_warn() ? "result: warn"
                                                                   : "result: pass")
        << '\n';
}

GeneralParams general_params_for_validation(const FormulationConfig& f) {
    if (const auto* general = std::get_if<GeneralParams>(&f)) return *general;
    if (const auto* constricted = std::get_if<ConstrictedParams>(&f)) {
        return constricted_to_general(*constricted);
    }
    const auto& classical = std::get<ClassicalParams>(f);
    // Classical is the phi_min = 0 slice of the general scheme.
    const double phi_max = classical.phi_max();
    const double ip = phi_max > 0.0 ? classical.iw / phi_max : 0.5;
    return make_general(classical.w, 0.0, phi_max, std::min(ip, 0.999999999999));
}

int run_app(int argc, char** argv) {
    CLI::App app{"particle swarm optimization engine and coefficient analysis toolkit"};
    app.require_subcommand(1);

    bool brief = false;
    app.add_flag("--brief", brief, "print reals with 6 significant digits instead of 17");
    const auto digits = [&] { return brief ? 6 : 17; };

    // analyze
    auto* analyze = app.add_subcommand("analyze", "roots, regime and convergence of one (phi, w) point");
    double a_phi = 0.0;
    double a_w = 0.0;
    std::string a_format = "text";
    OutputTarget a_out;
    analyze->add_option("--phi", a_phi, "total acceleration coefficient")->required();
    analyze->add_option("--w", a_w, "inertia weight")->required();
    analyze->add_option("--format", a_format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    analyze->add_option("--out", a_out.path, "write to file instead of stdout");
    analyze->callback([&] {
        a_out.write([&](std::ostream& out) {
            print_analysis(out, {a_phi, a_w}, a_format, digits());
        });
    });

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "deterministic single-particle trajectory");
    double t_phi = 0.0;
    double t_w = 0.0;
    double t_p = 0.0;
    double t_x0 = 0.0;
    int t_steps = 100;
    std::optional<double> t_x1;
    std::optional<double> t_v0;
    std::string t_method = "closed";
    std::string t_format = "csv";
    OutputTarget t_out;
    traj->add_option("--phi", t_phi)->required();
    traj->add_option("--w", t_w)->required();
    traj->add_option("--p", t_p, "stationary attractor")->required();
    traj->add_option("--x0", t_x0, "position at t = 0")->required();
    auto* x1_opt = traj->add_option("--x1", t_x1, "position at t = 1");
    auto* v0_opt = traj->add_option("--v0", t_v0, "initial velocity (derives x1)");
    x1_opt->excludes(v0_opt);
    traj->add_option("--steps", t_steps, "number of updates")->required();
    traj->add_option("--method", t_method, "closed (closed form) or recurrence")
        ->check(CLI::IsMember({"closed", "recurrence"}));
    traj->add_option("--format", t_format)->check(CLI::IsMember({"csv", "json"}));
    traj->add_option("--out", t_out.path, "write to file instead of stdout");
    traj->callback([&] {
        if (!t_x1 && !t_v0) {
            throw CLI::ValidationError("trajectory needs --x1 or --v0");
        }
        const CoefficientPoint c{t_phi, t_w};
        const TrajectorySpec spec =
            t_x1 ? TrajectorySpec::from_positions(c, t_p, t_x0, *t_x1, t_steps)
                 : TrajectorySpec::from_velocity(c, t_p, t_x0, *t_v0, t_steps);
        const Trajectory result = t_method == "closed" ? trajectory_closed_form(spec)
                                                       : trajectory_recurrence(spec);
        if (result.diverged_at) {
            std::cerr << "note: trajectory overflowed at t = " << *result.diverged_at
                      << "; output truncated\n";
        }
        t_out.write([&](std::ostream& out) {
            if (t_format == "json") {
                write_trajectory_json(out, result, digits());
            } else {
                write_trajectory_csv(out, result, digits());
            }
        });
    });

    // region
    auto* region = app.add_subcommand("region", "classify a raster of the (phi, w) plane");
    std::string r_phi = "0:4:401";
    std::string r_w = "0:1:101";
    std::string r_format = "csv";
    OutputTarget r_out;
    region->add_option("--phi", r_phi, "phi axis as lo:hi:count")->required();
    region->add_option("--w", r_w, "w axis as lo:hi:count")->required();
    region->add_option("--format", r_format)->check(CLI::IsMember({"csv", "json"}));
    region->add_option("--out", r_out.path, "write to file instead of stdout");
    region->callback([&] {
        const AxisRange phi_axis = parse_axis(r_phi);
        const AxisRange w_axis = parse_axis(r_w);
        const Raster raster = region_raster(phi_axis.lo, phi_axis.hi, phi_axis.count,
                                            w_axis.lo, w_axis.hi, w_axis.count);
        r_out.write([&](std::ostream& out) {
            if (r_format == "json") {
                write_raster_json(out, raster, digits());
            } else {
                write_raster_csv(out, raster, digits());
            }
        });
    });

    // recommend
    auto* rec = app.add_subcommand("recommend", "coefficient settings for a behaviour profile");
    std::string rec_profile = "general-purpose";
    std::optional<double> rec_w;
    std::string rec_format = "text";
    OutputTarget rec_out;
    rec->add_option("--profile", rec_profile, "explorative, balanced, exploitative or general-purpose")
        ->check(CLI::IsMember({"explorative", "balanced", "exploitative", "general-purpose"}));
    rec->add_option("--w", rec_w, "override the profile's inertia weight (0 < w < 1)");
    rec->add_option("--format", rec_format)->check(CLI::IsMember({"text", "json", "csv"}));
    rec->add_option("--out", rec_out.path, "write to file instead of stdout");
    rec->callback([&] {
        BehaviorProfile profile = BehaviorProfile::GeneralPurpose;
        if (rec_profile == "explorative") profile = BehaviorProfile::Explorative;
        if (rec_profile == "balanced") profile = BehaviorProfile::Balanced;
        if (rec_profile == "exploitative") profile = BehaviorProfile::Exploitative;
        const GeneralParams params = recommend(profile, rec_w);
        rec_out.write([&](std::ostream& out) {
            print_general_params(out, params, rec_format, digits());
        });
    });

    // validate
    auto* val = app.add_subcommand("validate", "check a formulation config against the guidelines");
    std::string val_config;
    std::string val_format = "text";
    OutputTarget val_out;
    val->add_option("--config", val_config, "formulation JSON file")->required();
    val->add_option("--format", val_format)->check(CLI::IsMember({"text", "json", "csv"}));
    val->add_option("--out", val_out.path, "write to file instead of stdout");
    val->callback([&] {
        const FormulationConfig f =
            formulation_from_json(load_json_file(val_config), /*allow_seed=*/true);
        const GuidelineReport report = validate(general_params_for_validation(f));
        val_out.write([&](std::ostream& out) {
            print_report(out, report, val_format, digits());
        });
    });

    // convert
    auto* conv = app.add_subcommand("convert", "translate between coefficient formulations");
    std::string c_from;
    std::string c_to;
    double c_w = 0.0;
    double c_phi_min = 0.0;
    double c_phi_max = 0.0;
    double c_ip = 0.5;
    double c_aw = 0.0;
    double c_kappa = 1.0;
    std::string c_format = "text";
    OutputTarget c_out;
    conv->add_option("--from", c_from, "general or constricted")->required()
        ->check(CLI::IsMember({"general", "constricted"}));
    conv->add_option("--to", c_to, "classical or general")->required()
        ->check(CLI::IsMember({"classical", "general"}));
    conv->add_option("--w", c_w, "inertia weight (general source)");
    conv->add_option("--phi-min", c_phi_min, "acceleration floor (general source)");
    conv->add_option("--phi-max", c_phi_max, "acceleration ceiling (general source)");
    conv->add_option("--ip", c_ip, "individuality proportion");
    conv->add_option("--aw", c_aw, "raw total acceleration (constricted source)");
    conv->add_option("--kappa", c_kappa, "constriction kappa (constricted source)");
    conv->add_option("--format", c_format)->check(CLI::IsMember({"text", "json", "csv"}));
    conv->add_option("--out", c_out.path, "write to file instead of stdout");
    conv->callback([&] {
        GeneralParams general = [&] {
            if (c_from == "constricted") {
                return constricted_to_general(make_constricted(c_aw, c_kappa, c_ip));
            }
            return make_general(c_w, c_phi_min, c_phi_max, c_ip);
        }();
        c_out.write([&](std::ostream& out) {
            if (c_to == "general") {
                print_general_params(out, general, c_format, digits());
                return;
            }
            const ClassicalParams classical = general_to_classical(general);
            if (c_format == "json") {
                out << json{{"formulation", "classical"},
                            {"w", classical.w},
                            {"iw", classical.iw},
                            {"sw", classical.sw}}
                           .dump(2)
                    << '\n';
            } else if (c_format == "csv") {
                out << "w,iw,sw\n"
                    << format_real(classical.w, digits()) << ','
                    << format_real(classical.iw, digits()) << ','
                    << format_real(classical.sw, digits()) << '\n';
            } else {
                out << "w  = " << format_real(classical.w, digits()) << '\n'
                    << "iw = " << format_real(classical.iw, digits()) << '\n'
                    << "sw = " << format_real(classical.sw, digits()) << '\n';
            }
        });
    });

    // optimize
    auto* opt = app.add_subcommand("optimize", "run the swarm on an objective");
    std::string o_config;
    std::string o_objective;
    std::string o_command;
    std::optional<std::uint64_t> o_seed;
    bool o_parallel = false;
    OutputTarget o_out;
    opt->add_option("--config", o_config, "swarm config JSON file")->required();
    auto* obj_opt = opt->add_option("--objective", o_objective,
                                    "registered objective: sphere, rosenbrock, rastrigin, ackley, griewank");
    auto* cmd_opt = opt->add_option("--objective-cmd", o_command,
                                    "external objective command (line protocol on stdin/stdout; "
                                    "evaluations are serialized)");
    obj_opt->excludes(cmd_opt);
    opt->add_option("--seed", o_seed, "override the config seed");
    opt->add_flag("--parallel", o_parallel, "enable parallel objective evaluation");
    opt->add_option("--out", o_out.path, "run log path (JSON lines); default stdout");
    opt->callback([&] {
        SwarmConfig config = load_swarm_config(o_config);
        if (o_seed) config.seed = *o_seed;
        if (o_parallel) config.parallel_evaluation = true;

        std::shared_ptr<SubprocessObjective> child;
        Objective objective;
        if (!o_command.empty()) {
            child = std::make_shared<SubprocessObjective>(o_command);
            objective = [child](std::span<const double> x) { return (*child)(x); };
            config.parallel_evaluation = false;  // one worker, strictly serialized
        } else if (!o_objective.empty()) {
            const ObjectiveSpec spec = make_objective(o_objective, config.dimensions);
            objective = [spec](std::span<const double> x) { return evaluate(spec, x); };
        } else {
            throw CLI::ValidationError("optimize needs --objective or --objective-cmd");
        }

        o_out.write([&](std::ostream& out) {
            const RunRecord record = run(config, objective, [&](const IterationStats& it) {
                out << json{{"t", it.t},
                            {"best_f", it.best_f},
                            {"best_x", it.best_x},
                            {"evals", it.evals}}
                           .dump()
                    << '\n';
            });
            out << json{{"config", swarm_config_to_json(record.config)},
                        {"best_f", record.best_f},
                        {"best_x", record.best_x},
                        {"iterations", static_cast<long long>(record.best_trace.size()) - 1},
                        {"evals", record.evals},
                        {"terminated_by", record.terminated_by}}
                       .dump()
                << '\n';
            std::cerr << "best " << format_real(record.best_f, 6) << " after "
                      << record.best_trace.size() - 1 << " iterations, " << record.evals
                      << " evaluations, " << format_real(record.wall_seconds, 3)
                      << " s\n";
        });
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
