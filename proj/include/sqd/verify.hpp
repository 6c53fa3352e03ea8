#pragma once

/**
 * @file
 * Property and regression checks comparing every closed form against its
 * independent route. Shared by `sqd verify` and the acceptance test binary.
 */

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqd/discord.hpp"

namespace sqd::verify {

struct Options {
    /// Base sample count; per-criterion counts scale with samples / 500.
    int samples = 500;
    std::uint64_t seed = 42;
    /// Tolerance for oracle-vs-closed-form agreement.
    double tol = 1e-6;
    unsigned workers = 1;
    OptimizerConfig cfg;
    /// Scratch directory for the determinism check; defaults to the system temp dir.
    std::filesystem::path scratch;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Report-only criteria never fail the run.
    bool hard = true;
    std::vector<std::string> details;
};

using Progress = std::function<void(const CriterionResult &)>;

std::vector<CriterionResult> run_all(const Options &opts, const Progress &progress = {});

/// One line per criterion: id, name, measured worst case, tolerance, verdict.
std::string format_line(const CriterionResult &r);

bool all_hard_passed(const std::vector<CriterionResult> &results);

/// Prints the table and details; returns 0 when all hard criteria pass, 3 otherwise.
int cmd_verify(const Options &opts, std::ostream &out, std::ostream &err);

} // namespace sqd::verify
