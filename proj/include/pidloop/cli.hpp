#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pidloop/simloop.hpp"

namespace pidloop::cli {

/// Parsed command line. Numeric fields mirror the SimConfig flags; sweep
/// runs also carry the axis and value list.
struct RunSpec {
    sim::SimConfig config;
    std::string out_path;
    // sweep
    sim::GainAxis axis = sim::GainAxis::kp;
    std::vector<double> values;
    // validate
    double grid_step = 0.0;  // 0 means per-check defaults
    double tol_integral = 1e-6;
    double tol_derivative = 1e-4;
};

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_validate(const RunSpec& spec, std::ostream& out);

void write_trajectory_csv(std::ostream& os, const sim::Trajectory& traj);
void write_sweep_csv(std::ostream& os, const std::vector<sim::SweepRow>& rows);

/// Full front end: parses argv (and an optional key=value config file),
/// dispatches to the subcommand, and maps every outcome to the exit-code
/// contract: 0 success, 1 usage or I/O error, 2 diverged run or failed
/// validation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pidloop::cli
