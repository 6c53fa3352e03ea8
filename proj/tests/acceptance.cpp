// Acceptance suite: runs every verification criterion at the default sample
// sizes and tolerances and prints one PASS/FAIL line per criterion.
// Exit status is non-zero when any hard criterion fails.

#include <chrono>
#include <iostream>

#include "sqd/verify.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    sqd::verify::Options opts;
    const auto results = sqd::verify::run_all(opts, [](const sqd::verify::CriterionResult &r) {
        std::cout << sqd::verify::format_line(r) << std::endl;
        for (const auto &d : r.details) {
            std::cout << "    " << d << '\n';
        }
    });

    const double seconds = std::chrono::duration<double>(clock::now() - start).count();
    int failed = 0;
    for (const auto &r : results) {
        failed += (r.hard && !r.passed) ? 1 : 0;
    }
    std::cout << results.size() << " criteria, " << failed << " hard failures, " << seconds << " s\n";
    return sqd::verify::all_hard_passed(results) ? 0 : 1;
}
