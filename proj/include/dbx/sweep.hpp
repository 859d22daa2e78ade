#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dbx/seedrng.hpp"
#include "dbx/singular.hpp"

namespace dbx {

enum class ExecPolicy { serial, parallel };

struct SweepConfig {
    uint64_t master_seed = 0;
    int count = 1;
    int D = 4;
    std::vector<int> signature;  // empty = all-plus of length D
    double tol = 1e-9;
    int m = 3, b = 1, n = 3;
};

struct SweepSummary {
    int count = 0;
    int overall_passes = 0;
    double pass_rate = 0.0;
    std::map<int, int> s_count_histogram;             // distinct points -> seeds
    std::map<std::string, int> diagnostic_passes;      // name -> passing seeds
    std::vector<std::string> diagnostic_order;         // first-seen order
};

struct SweepResult {
    std::vector<GenericityReport> reports;  // index i = instance i
    SweepSummary summary;
};

// Runs count independent genericity reports. The parallel policy distributes
// instances over OpenMP threads; results are identical to the serial policy
// because each instance's randomness comes only from its derived stream seed
// and the reports are assembled in index order after all workers finish.
SweepResult run_sweep(const SweepConfig& cfg, ExecPolicy policy);

}  // namespace dbx
