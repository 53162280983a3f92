#include "pidloop/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pidloop/numerics.hpp"

namespace pidloop::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Flat key=value config file; '#' starts a comment. Keys are the long flag
// names with dashes removed.
std::string normalize_key(const std::string& raw) {
    std::string key;
    for (char c : raw) {
        if (c == '-' || c == '_') {
            continue;
        }
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return key;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config file: expected key=value, got '" + line + "'");
        }
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        if (key.empty()) {
            throw std::runtime_error("config file: empty key");
        }
        entries[key] = trim(line.substr(eq + 1));
    }
    return entries;
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config file: bad number for '" + key + "': " + text);
    }
    if (pos != text.size()) {
        throw std::runtime_error("config file: bad number for '" + key + "': " + text);
    }
    return v;
}

// Raw flag storage shared by run and sweep.
struct BaseFlags {
    double kp = 0.0, ki = 0.0, kd = 0.0;
    double h = 0.01, t_end = 10.0, x0 = 0.0, ref = 1.0;
    double wheel_radius = 0.1;
    double vmax = kUnset;
    std::string integral_mode = "full-recompute";
    std::string out;
    std::string config_path;
};

struct BaseOptions {
    CLI::Option* kp = nullptr;
    CLI::Option* ki = nullptr;
    CLI::Option* kd = nullptr;
    CLI::Option* h = nullptr;
    CLI::Option* t_end = nullptr;
    CLI::Option* x0 = nullptr;
    CLI::Option* ref = nullptr;
    CLI::Option* wheel_radius = nullptr;
    CLI::Option* vmax = nullptr;
    CLI::Option* integral_mode = nullptr;
    CLI::Option* out = nullptr;
};

BaseOptions add_base_flags(CLI::App* cmd, BaseFlags& f) {
    BaseOptions o;
    o.kp = cmd->add_option("--kp", f.kp, "proportional gain");
    o.ki = cmd->add_option("--ki", f.ki, "integral gain");
    o.kd = cmd->add_option("--kd", f.kd, "derivative gain");
    o.h = cmd->add_option("--h", f.h, "step size (s)");
    o.t_end = cmd->add_option("--t-end", f.t_end, "horizon (s)");
    o.x0 = cmd->add_option("--x0", f.x0, "initial position (m)");
    o.ref = cmd->add_option("--ref", f.ref, "constant reference (m)");
    o.wheel_radius = cmd->add_option("--wheel-radius", f.wheel_radius, "wheel radius (m)");
    o.vmax = cmd->add_option("--vmax", f.vmax, "symmetric speed clamp (m/s)");
    o.integral_mode = cmd->add_option("--integral-mode", f.integral_mode, "integral term mode")
                          ->check(CLI::IsMember({"full-recompute", "incremental-trapezoid"}));
    o.out = cmd->add_option("--out", f.out, "output CSV path")->required();
    cmd->add_option("--config", f.config_path, "key=value config file (flags override it)");
    return o;
}

// Applies file entries wherever the matching flag was not given; returns the
// entries so callers can tell flag-or-file presence apart from defaults.
std::map<std::string, std::string> apply_config_file(const BaseFlags& f, const BaseOptions& o,
                                                     BaseFlags& into) {
    if (f.config_path.empty()) {
        return {};
    }
    auto entries = read_config_file(f.config_path);
    struct Slot {
        CLI::Option* opt;
        std::function<void(const std::string&, const std::string&)> apply;
    };
    const std::map<std::string, Slot> slots = {
        {"kp", {o.kp, [&](const std::string& k, const std::string& v) { into.kp = parse_double(k, v); }}},
        {"ki", {o.ki, [&](const std::string& k, const std::string& v) { into.ki = parse_double(k, v); }}},
        {"kd", {o.kd, [&](const std::string& k, const std::string& v) { into.kd = parse_double(k, v); }}},
        {"h", {o.h, [&](const std::string& k, const std::string& v) { into.h = parse_double(k, v); }}},
        {"tend", {o.t_end, [&](const std::string& k, const std::string& v) { into.t_end = parse_double(k, v); }}},
        {"x0", {o.x0, [&](const std::string& k, const std::string& v) { into.x0 = parse_double(k, v); }}},
        {"ref", {o.ref, [&](const std::string& k, const std::string& v) { into.ref = parse_double(k, v); }}},
        {"wheelradius",
         {o.wheel_radius, [&](const std::string& k, const std::string& v) { into.wheel_radius = parse_double(k, v); }}},
        {"vmax", {o.vmax, [&](const std::string& k, const std::string& v) { into.vmax = parse_double(k, v); }}},
        {"integralmode", {o.integral_mode, [&](const std::string&, const std::string& v) { into.integral_mode = v; }}},
        {"out", {o.out, [&](const std::string&, const std::string& v) { into.out = v; }}},
    };
    for (const auto& [key, value] : entries) {
        const auto it = slots.find(key);
        if (it == slots.end()) {
            throw std::runtime_error("config file: unknown key '" + key + "'");
        }
        if (it->second.opt->count() == 0) {
            it->second.apply(key, value);
        }
    }
    return entries;
}

void require_finite(const char* name, double v) {
    if (!std::isfinite(v)) {
        throw std::runtime_error(std::string("flag ") + name + " must be finite");
    }
}

sim::SimConfig build_config(const BaseFlags& f) {
    require_finite("--kp", f.kp);
    require_finite("--ki", f.ki);
    require_finite("--kd", f.kd);
    require_finite("--h", f.h);
    require_finite("--t-end", f.t_end);
    require_finite("--x0", f.x0);
    require_finite("--ref", f.ref);
    require_finite("--wheel-radius", f.wheel_radius);
    if (!(f.h > 0.0) || !(f.t_end > 0.0)) {
        throw std::runtime_error("flags --h and --t-end must be positive");
    }
    sim::SimConfig config;
    config.h = f.h;
    config.t_end = f.t_end;
    config.x0 = f.x0;
    config.reference = control::ReferenceSignal::constant(f.ref);
    config.gains = control::Gains{f.kp, f.ki, f.kd};
    config.wheel_radius = f.wheel_radius;
    if (!std::isnan(f.vmax)) {
        require_finite("--vmax", f.vmax);
        config.v_max = f.vmax;
    }
    config.integral_mode = f.integral_mode == "incremental-trapezoid"
                               ? sim::IntegralMode::incremental_trapezoid
                               : sim::IntegralMode::full_recompute;
    return config;
}

struct ValidateCheck {
    std::string label;
    std::string detail;
    bool pass = false;
};

ValidateCheck check_sin_integral(double grid_step, double tol) {
    auto m = static_cast<long long>(std::llround(kPi / grid_step));
    m = std::max<long long>(m, 2);
    if (m % 2 != 0) {
        ++m;
    }
    const double h = kPi / static_cast<double>(m);
    std::vector<double> samples(static_cast<std::size_t>(m) + 1);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        samples[k] = std::sin(static_cast<double>(k) * h);
    }
    const double integral = numerics::integrate_history(SampledSignal(0.0, h, std::move(samples)));
    const double err = std::abs(integral - 2.0);
    ValidateCheck c;
    c.label = "sin integral [0,pi]";
    c.detail = "n=" + std::to_string(m + 1) + " error=" + fmt17(err) + " tol=" + fmt17(tol);
    c.pass = err <= tol;
    return c;
}

ValidateCheck check_sin_derivative(double h, double tol) {
    const std::size_t evals = 100;
    std::vector<double> samples;
    samples.reserve(evals + 2);
    for (std::size_t k = 0; k < evals + 2; ++k) {
        samples.push_back(std::sin(static_cast<double>(k) * h));
    }
    double max_err = 0.0;
    for (std::size_t k = 2; k < evals + 2; ++k) {
        SampledSignal prefix(0.0, h, std::vector<double>(samples.begin(), samples.begin() + k + 1));
        const double d = numerics::differentiate_latest(prefix);
        max_err = std::max(max_err, std::abs(d - std::cos(static_cast<double>(k) * h)));
    }
    ValidateCheck c;
    c.label = "sin derivative vs cos";
    c.detail = "h=" + fmt17(h) + " max_error=" + fmt17(max_err) + " tol=" + fmt17(tol);
    c.pass = max_err <= tol;
    return c;
}

std::vector<double> simpson_errors_for_halvings(double h0, int count) {
    const double a = 0.0;
    const double b = 2.0;
    const double exact = std::cos(a) - std::cos(b);
    std::vector<double> errs;
    for (int i = 0; i < count; ++i) {
        const double target = h0 / static_cast<double>(1 << i);
        auto m = static_cast<long long>(std::llround((b - a) / target));
        if (m % 2 != 0) {
            ++m;
        }
        const double h = (b - a) / static_cast<double>(m);
        std::vector<double> samples(static_cast<std::size_t>(m) + 1);
        for (std::size_t k = 0; k < samples.size(); ++k) {
            samples[k] = std::sin(a + static_cast<double>(k) * h);
        }
        const double integral = numerics::simpson_composite(SampledSignal(a, h, std::move(samples)));
        errs.push_back(std::abs(integral - exact));
    }
    return errs;
}

std::vector<double> diff3_errors_for_halvings(double h0, int count) {
    const double t = 1.0;
    std::vector<double> errs;
    for (int i = 0; i < count; ++i) {
        const double h = h0 / static_cast<double>(1 << i);
        SampledSignal window(t - 2.0 * h, h,
                             {std::sin(t - 2.0 * h), std::sin(t - h), std::sin(t)});
        errs.push_back(std::abs(numerics::backward_diff_3pt(window) - std::cos(t)));
    }
    return errs;
}

ValidateCheck check_ratios(const char* label, const std::vector<double>& errs, double lo, double hi) {
    ValidateCheck c;
    c.label = label;
    std::string ratios;
    bool pass = true;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double r = errs[i] / errs[i + 1];
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", r);
        if (!ratios.empty()) {
            ratios += ",";
        }
        ratios += buf;
        pass = pass && r >= lo && r <= hi;
    }
    c.detail = "ratios=" + ratios + " expected=[" + fmt17(lo) + "," + fmt17(hi) + "]";
    c.pass = pass;
    return c;
}

void print_metrics(std::ostream& out, const sim::ResponseMetrics& m) {
    out << "overshoot_pct: " << fmt17(m.overshoot_pct) << "\n"
        << "settling_time: " << fmt17(m.settling_time) << "\n"
        << "steady_state_error: " << fmt17(m.steady_state_error) << "\n"
        << "rise_time: " << fmt17(m.rise_time) << "\n"
        << "classification: " << sim::to_string(m.classification) << "\n";
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const sim::Trajectory& traj) {
    os << "t,x,e,v\n";
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        os << fmt17(traj.t[k]) << ',' << fmt17(traj.x[k]) << ',' << fmt17(traj.e[k]) << ','
           << fmt17(traj.v[k]) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<sim::SweepRow>& rows) {
    os << "value,overshoot_pct,settling_time,steady_state_error,rise_time,classification\n";
    for (const auto& row : rows) {
        const auto& m = row.metrics;
        os << fmt17(row.value) << ',' << fmt17(m.overshoot_pct) << ',' << fmt17(m.settling_time)
           << ',' << fmt17(m.steady_state_error) << ',' << fmt17(m.rise_time) << ','
           << sim::to_string(m.classification) << '\n';
    }
}

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    sim::Trajectory traj;
    sim::ResponseMetrics metrics;
    try {
        traj = sim::simulate(spec.config);
        metrics = sim::compute_metrics(traj, spec.config.reference);
    } catch (const std::exception& e) {
        err << "pidloop run: " << e.what() << "\n";
        return 1;
    }
    std::ofstream file(spec.out_path, std::ios::binary);
    if (!file) {
        err << "pidloop run: cannot open output file: " << spec.out_path << "\n";
        return 1;
    }
    write_trajectory_csv(file, traj);
    file.flush();
    if (!file) {
        err << "pidloop run: failed writing: " << spec.out_path << "\n";
        return 1;
    }
    print_metrics(out, metrics);
    return metrics.classification == sim::Classification::diverged ? 2 : 0;
}

int cmd_sweep(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    std::vector<sim::SweepRow> rows;
    try {
        rows = sim::gain_sweep(spec.config, spec.axis, spec.values);
    } catch (const std::exception& e) {
        err << "pidloop sweep: " << e.what() << "\n";
        return 1;
    }
    std::ofstream file(spec.out_path, std::ios::binary);
    if (!file) {
        err << "pidloop sweep: cannot open output file: " << spec.out_path << "\n";
        return 1;
    }
    write_sweep_csv(file, rows);
    file.flush();
    if (!file) {
        err << "pidloop sweep: failed writing: " << spec.out_path << "\n";
        return 1;
    }
    out << "wrote " << rows.size() << " rows to " << spec.out_path << "\n";
    return 0;
}

int cmd_validate(const RunSpec& spec, std::ostream& out) {
    const double integral_step = spec.grid_step > 0.0 ? spec.grid_step : kPi / 100.0;
    const double derivative_step = spec.grid_step > 0.0 ? spec.grid_step : 0.01;

    std::vector<ValidateCheck> checks;
    checks.push_back(check_sin_integral(integral_step, spec.tol_integral));
    checks.push_back(check_sin_derivative(derivative_step, spec.tol_derivative));
    checks.push_back(check_ratios("simpson convergence", simpson_errors_for_halvings(0.02, 4), 12.0, 20.0));
    checks.push_back(check_ratios("3pt-diff convergence", diff3_errors_for_halvings(0.02, 4), 3.5, 4.5));

    bool all = true;
    for (const auto& c : checks) {
        out << c.label << "  " << c.detail << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
        all = all && c.pass;
    }
    out << "validate: " << (all ? "PASS" : "FAIL") << "\n";
    return all ? 0 : 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("pidloop");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& s : argv_storage) {
        argv.push_back(s.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"PID control-loop simulator with Simpson-rule integral and "
                 "backward-difference derivative terms"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print usage");  // --h is a step-size flag below

    BaseFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "simulate one closed-loop step response");
    run->set_help_flag("--help", "print usage");
    BaseOptions run_opts = add_base_flags(run, run_flags);

    BaseFlags sweep_flags;
    std::string axis_name;
    std::vector<double> sweep_values;
    CLI::App* sweep = app.add_subcommand("sweep", "metrics table over one gain axis");
    sweep->set_help_flag("--help", "print usage");
    BaseOptions sweep_opts = add_base_flags(sweep, sweep_flags);
    sweep->add_option("--axis", axis_name, "gain axis to vary")
        ->required()
        ->check(CLI::IsMember({"kp", "ki", "kd"}));
    sweep->add_option("--values", sweep_values, "comma-separated gain values")
        ->required()
        ->delimiter(',');

    double validate_h = 0.0;
    double validate_tol = kUnset;
    CLI::App* validate = app.add_subcommand("validate", "numerics self-checks against sin/cos");
    validate->set_help_flag("--help", "print usage");
    validate->add_option("--h", validate_h, "grid step for the sin checks");
    validate->add_option("--tol", validate_tol, "tolerance for the sin checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);  // --help and friends
    } catch (const CLI::ParseError& e) {
        err << "pidloop: " << e.what() << "\n";
        return 1;
    }

    try {
        if (run->parsed()) {
            const auto entries = apply_config_file(run_flags, run_opts, run_flags);
            const auto provided = [&](const CLI::Option* o, const char* key) {
                return o->count() > 0 || entries.count(key) > 0;
            };
            if (!provided(run_opts.kp, "kp") || !provided(run_opts.ki, "ki") ||
                !provided(run_opts.kd, "kd")) {
                throw std::runtime_error("run needs --kp, --ki and --kd (flags or config file)");
            }
            RunSpec spec;
            spec.config = build_config(run_flags);
            spec.out_path = run_flags.out;
            return cmd_run(spec, out, err);
        }
        if (sweep->parsed()) {
            apply_config_file(sweep_flags, sweep_opts, sweep_flags);
            RunSpec spec;
            spec.config = build_config(sweep_flags);
            spec.out_path = sweep_flags.out;
            spec.axis = axis_name == "ki"   ? sim::GainAxis::ki
                        : axis_name == "kd" ? sim::GainAxis::kd
                                            : sim::GainAxis::kp;
            spec.values = sweep_values;
            return cmd_sweep(spec, out, err);
        }
        RunSpec spec;
        if (validate->count("--h") > 0) {
            if (!std::isfinite(validate_h) || !(validate_h > 0.0)) {
                throw std::runtime_error("flag --h must be positive and finite");
            }
            spec.grid_step = validate_h;
        }
        if (validate->count("--tol") > 0) {
            if (!std::isfinite(validate_tol) || validate_tol < 0.0) {
                throw std::runtime_error("flag --tol must be non-negative and finite");
            }
            spec.tol_integral = validate_tol;
            spec.tol_derivative = validate_tol;
        }
        return cmd_validate(spec, out);
    } catch (const std::exception& e) {
        err << "pidloop: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pidloop::cli
