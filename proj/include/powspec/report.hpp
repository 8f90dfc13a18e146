#pragma once

#include <string>
#include <vector>

#include "powspec/spectra.hpp"
#include "powspec/theory.hpp"

namespace powspec {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // empty when passing
};

/// Everything one parameter tuple produces: brute-force spectra, the
/// closed-form predictions, and the verdict of comparing the two.
struct AnalysisReport {
    uint32_t p = 0;
    uint32_t m = 0;
    uint64_t k = 0;
    uint64_t q = 0;
    uint32_t n = 0;  // extension degree 2m
    uint64_t d = 0;
    std::vector<uint32_t> modulus;

    SpectrumTable differential;
    SpectrumTable boomerang;
    uint64_t diff_uniformity = 0;
    uint64_t boom_uniformity = 0;
    bool is_locally_apn = false;

    PredictedSpectra predicted;

    std::vector<CheckResult> verdicts;
    double timing_ms = 0.0;
    bool degenerate = false;  // p = 2, m = 1: the q-2 label carries no content

    bool pass() const;
};

/// Expected classification used by the verdicts: the closed forms give
/// locally-APN exactly for q > 3, and boomerang uniformity 4 for p = 2
/// with m odd, 0 for q = 3 (all counts vanish), 2 otherwise.
bool expected_locally_apn(uint64_t q);
uint64_t expected_boomerang_uniformity(uint32_t p, uint32_t m, uint64_t q);

/// Brute-vs-predicted multiset comparison; on mismatch the detail names
/// the first differing multiplicity with both counts.
CheckResult spectra_match_check(const SpectrumTable& brute, const SpectrumTable& predicted);

/// Builds the field, computes spectra and predictions, and attaches the
/// report-level verdicts.
AnalysisReport analyze(uint32_t p, uint32_t m, uint64_t k);
AnalysisReport analyze_with_ctx(const FieldCtx& ctx, const PowerMapSpec& map);

/// The deeper battery behind verify/sweep: the report verdicts plus row
/// symmetry, oracle agreement, random DDT cells, and the unit-circle
/// quadratic counts. Deterministic for fixed (p, m, k).
std::vector<CheckResult> run_verification(const FieldCtx& ctx, const PowerMapSpec& map);

/// Canonical JSON form: keys params / differential / boomerang / predicted
/// / verdicts / timing_ms / degenerate; spectra as [multiplicity, count]
/// pairs sorted by multiplicity. Identical runs differ only in timing_ms.
std::string report_to_json(const AnalysisReport& report, int indent = 2);

/// Parses report JSON and re-validates the spectrum totals against the
/// field size; throws std::invalid_argument on any inconsistency.
AnalysisReport report_from_json(const std::string& text);

void write_report_json(const AnalysisReport& report, const std::string& path);

/// Spectra of one report as CSV lines `table,multiplicity,count`.
void write_report_csv(const AnalysisReport& report, const std::string& path);

/// Compact display form, e.g. {0:35, 2:27, 4:1, 6:1}.
std::string spectrum_to_string(const SpectrumTable& table);

}  // namespace powspec
