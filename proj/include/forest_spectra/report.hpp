#pragma once

#include "forest_spectra/io.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace forest_spectra {

enum class Task {
    charpoly,
    det,
    minor,
    cofactor,
    eigenvector,
    kirchhoff_charpoly,
    tropical_spectrum,
    validate,
    selftest,
};

Task parse_task(const std::string& text);
std::string task_name(Task task);

struct TaskRequest {
    Task task = Task::selftest;
    std::optional<Mode> mode;       // defaults per task when unset
    std::string input_path;         // unused by selftest
    std::string output_path;        // empty = stdout (caller's concern)
    std::vector<int> roots;         // 1-based, for minor
    std::optional<int> n, m;        // 1-based indices
    std::optional<std::string> lambda_text;
    std::vector<double> eps;
    bool transpose = false;
    // accepted for interface parity; zero-arc forests contribute nothing to
    // any weighted sum, so no task result depends on it
    bool include_zero_arcs = false;
    int max_n = 12;                 // refusal guard for forest-enumeration tasks
    int threads = 0;                // 0 = FOREST_SPECTRA_THREADS or 1
};

struct RunResult {
    nlohmann::json report;
    int exit_code = 0;  // 0 ok, 1 input error, 2 computation error
};

// Executes the request and assembles the machine-readable report. Never
// throws: failures come back as {"error": {...}} with the matching exit code.
RunResult run_task(const TaskRequest& request);

// Oracle-equivalence sweep over built-in pseudorandom matrices (fixed seed):
// the forest route must match the cycle-cover and permutation routes exactly,
// minors and the Laplace expansion included.
nlohmann::json run_selftest();

}  // namespace forest_spectra
