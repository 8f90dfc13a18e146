#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "powspec/report.hpp"

namespace powspec {

struct SweepOptions {
    std::vector<uint32_t> primes;
    uint32_t m_max = 1;
    std::vector<uint64_t> k_list;  // empty: every k in [1, q+1) coprime to q+1
    std::string out_path;          // empty: keep records in memory only
    unsigned workers = 0;          // 0: POWSPEC_WORKERS, then hardware count
};

struct SweepResult {
    uint64_t tuples = 0;
    uint64_t passed = 0;
    uint64_t failed = 0;
    std::vector<std::string> failures;  // one line per failing tuple
};

/// Verifies every (p, m <= m_max, k) tuple on a worker pool; one worker
/// task covers one (p, m) field, and a single collector thread appends one
/// JSON record per tuple to out_path (JSON-lines). Record content does not
/// depend on the worker count. Throws before starting any work if a field
/// in the grid would exceed the table cap.
SweepResult run_sweep(const SweepOptions& options, std::ostream* progress = nullptr);

/// Worker-count resolution used by run_sweep (exposed for the CLI).
unsigned resolve_worker_count(unsigned requested);

}  // namespace powspec
