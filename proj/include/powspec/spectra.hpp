#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "powspec/gf.hpp"

namespace powspec {

enum class SpectrumKind { differential, boomerang };

/// Parameters of the power map F(x) = x^{k(q-1)} on F_{q^2}, q = p^m.
/// k is stored reduced mod q+1; construction rejects gcd(k, q+1) != 1.
struct PowerMapSpec {
    uint32_t p = 0;
    uint32_t m = 0;
    uint64_t k = 0;
    uint64_t q = 0;
    uint64_t d = 0;  // k(q-1) mod (q^2-1), the actual exponent

    PowerMapSpec(uint32_t p, uint32_t m, uint64_t k);
};

/// Sparse histogram {multiplicity -> count}; zero counts are never stored.
struct SpectrumTable {
    SpectrumKind kind = SpectrumKind::differential;
    std::map<uint64_t, uint64_t> entries;

    uint64_t total() const;           // sum of counts
    uint64_t weighted_total() const;  // sum of multiplicity * count
    bool empty() const { return entries.empty(); }

    friend bool operator==(const SpectrumTable& a, const SpectrumTable& b) {
        return a.kind == b.kind && a.entries == b.entries;
    }
};

/// F(x) for every x, indexed by canonical element index.
std::vector<FieldElem> power_value_table(const FieldCtx& ctx, const PowerMapSpec& map);

/// delta_F(1,b) for every b (index order): fiber sizes of x -> F(x+1) - F(x).
std::vector<uint32_t> derivative_histogram(const FieldCtx& ctx, const PowerMapSpec& map);

/// delta_F(a,b) via the power-map row reduction delta_F(a,b) = delta_F(1, b/a^d).
uint64_t ddt_entry(const FieldCtx& ctx, const PowerMapSpec& map, FieldElem a, FieldElem b);

/// beta_F(1,b) for every b != 0 (index order; entry 0 is unused and stays 0):
/// ordered pairs (x,y) with F(x) - F(y) = b and F(x+1) - F(y+1) = b, counted
/// by grouping x on the derivative value F(x+1) - F(x).
std::vector<uint32_t> boomerang_histogram(const FieldCtx& ctx, const PowerMapSpec& map);

/// Reference count of the same ordered pairs for an arbitrary value table,
/// by the quadratic double loop. Capped at p^n <= 2^12.
uint64_t bct_oracle_entry(const FieldCtx& ctx, const std::vector<FieldElem>& f_table, FieldElem a,
                          FieldElem b);

/// The same double loop accumulating every b at once: one full reference
/// row (entry 0 unused). Same cap; agrees with bct_oracle_entry pointwise.
std::vector<uint32_t> bct_oracle_row(const FieldCtx& ctx, const std::vector<FieldElem>& f_table,
                                     FieldElem a);

SpectrumTable differential_spectrum_from_row(const std::vector<uint32_t>& row);
SpectrumTable differential_spectrum(const FieldCtx& ctx, const PowerMapSpec& map);
SpectrumTable boomerang_spectrum_from_row(const std::vector<uint32_t>& row);
SpectrumTable boomerang_spectrum(const FieldCtx& ctx, const PowerMapSpec& map);

/// Largest multiplicity with positive count; the table kind must match.
uint64_t differential_uniformity(const SpectrumTable& spectrum);
uint64_t boomerang_uniformity(const SpectrumTable& spectrum);

/// True iff max{delta_F(1,b) : b outside the prime field F_p} equals 2.
bool locally_apn(const FieldCtx& ctx, const PowerMapSpec& map);
bool locally_apn_from_row(const FieldCtx& ctx, const std::vector<uint32_t>& row);

/// CSV export: header `b_index,count`, one line per b >= first_b.
void write_row_csv(std::ostream& os, const std::vector<uint32_t>& row, uint32_t first_b = 0);

}  // namespace powspec
