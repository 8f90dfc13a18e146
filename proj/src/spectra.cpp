#include "powspec/spectra.hpp"

#include <numeric>
#include <ostream>
#include <string>

namespace powspec {
namespace {

void require_same_field(const FieldCtx& ctx, const PowerMapSpec& map) {
    if (ctx.p() != map.p || ctx.m() != map.m)
        throw std::invalid_argument("field context and power map disagree on (p, m)");
}

SpectrumTable histogram_of(const std::vector<uint32_t>& row, size_t first, SpectrumKind kind) {
    SpectrumTable t;
    t.kind = kind;
    for (size_t i = first; i < row.size(); ++i) ++t.entries[row[i]];
    return t;
}

}  // namespace

PowerMapSpec::PowerMapSpec(uint32_t p_in, uint32_t m_in, uint64_t k_in) : p(p_in), m(m_in) {
    if (!is_prime(p)) throw std::invalid_argument("power map: p must be prime");
    if (m < 1) throw std::invalid_argument("power map: m must be >= 1");
    if (k_in < 1) throw std::invalid_argument("power map: k must be >= 1");
    q = 1;
    for (uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > (uint64_t(1) << 31)) throw resource_cap_error("power map: q out of supported range");
    }
    const uint64_t g = std::gcd(k_in, q + 1);
    if (g != 1)
        throw std::invalid_argument("power map: k = " + std::to_string(k_in) +
                                    " must be coprime to q+1 = " + std::to_string(q + 1) +
                                    " (gcd = " + std::to_string(g) + ")");
    k = k_in % (q + 1);
    d = k * (q - 1) % (q * q - 1);
}

uint64_t SpectrumTable::total() const {
    uint64_t s = 0;
    for (auto [mult, count] : entries) s += count;
    return s;
}

uint64_t SpectrumTable::weighted_total() const {
    uint64_t s = 0;
    for (auto [mult, count] : entries) s += mult * count;
    return s;
}

std::vector<FieldElem> power_value_table(const FieldCtx& ctx, const PowerMapSpec& map) {
    require_same_field(ctx, map);
    std::vector<FieldElem> f(ctx.order());
    for (uint64_t x = 0; x < ctx.order(); ++x) f[x] = ctx.pow(FieldElem(uint32_t(x)), int64_t(map.d));
    return f;
}

std::vector<uint32_t> derivative_histogram(const FieldCtx& ctx, const PowerMapSpec& map) {
    const auto f = power_value_table(ctx, map);
    std::vector<uint32_t> row(ctx.order(), 0);
    for (uint64_t x = 0; x < ctx.order(); ++x) {
        FieldElem xe{uint32_t(x)};
        ++row[ctx.sub(f[ctx.add(xe, ctx.one()).idx], f[x]).idx];
    }
    return row;
}

uint64_t ddt_entry(const FieldCtx& ctx, const PowerMapSpec& map, FieldElem a, FieldElem b) {
    require_same_field(ctx, map);
    if (a == ctx.zero()) throw std::invalid_argument("ddt_entry: a must be nonzero");
    const FieldElem target = ctx.mul(b, ctx.inv(ctx.pow(a, int64_t(map.d))));
    const auto f = power_value_table(ctx, map);
    uint64_t count = 0;
    for (uint64_t x = 0; x < ctx.order(); ++x) {
        FieldElem xe{uint32_t(x)};
        count += ctx.sub(f[ctx.add(xe, ctx.one()).idx], f[x]) == target;
    }
    return count;
}

std::vector<uint32_t> boomerang_histogram(const FieldCtx& ctx, const PowerMapSpec& map) {
    const uint64_t n = ctx.order();
    const auto f = power_value_table(ctx, map);

    std::vector<uint32_t> dval(n);
    for (uint64_t x = 0; x < n; ++x) {
        FieldElem xe{uint32_t(x)};
        dval[x] = ctx.sub(f[ctx.add(xe, ctx.one()).idx], f[x]).idx;
    }

    // bucket the F values by derivative value (counting sort)
    std::vector<uint32_t> cnt(n, 0);
    for (uint64_t x = 0; x < n; ++x) ++cnt[dval[x]];
    std::vector<uint64_t> start(n + 1, 0);
    for (uint64_t c = 0; c < n; ++c) start[c + 1] = start[c] + cnt[c];
    std::vector<uint32_t> bucket(n);
    {
        std::vector<uint64_t> pos(start.begin(), start.end() - 1);
        for (uint64_t x = 0; x < n; ++x) bucket[pos[dval[x]]++] = f[x].idx;
    }

    // pairs (x,y), x != y, in a common bucket solve the system with b = F(x)-F(y)
    std::vector<uint32_t> row(n, 0);
    for (uint64_t c = 0; c < n; ++c) {
        if (cnt[c] < 2) continue;
        for (uint64_t i = start[c]; i < start[c + 1]; ++i)
            for (uint64_t j = start[c]; j < start[c + 1]; ++j) {
                if (i == j) continue;
                uint32_t b = ctx.sub(FieldElem(bucket[i]), FieldElem(bucket[j])).idx;
                if (b) ++row[b];
            }
    }
    return row;
}

uint64_t bct_oracle_entry(const FieldCtx& ctx, const std::vector<FieldElem>& f_table, FieldElem a,
                          FieldElem b) {
    const uint64_t n = ctx.order();
    if (f_table.size() != n) throw std::invalid_argument("bct_oracle_entry: value table size mismatch");
    if (n > (uint64_t(1) << 12))
        throw resource_cap_error("bct_oracle_entry: naive oracle capped at p^n <= 2^12");
    if (a == ctx.zero() || b == ctx.zero())
        throw std::invalid_argument("bct_oracle_entry: a and b must be nonzero");

    std::vector<uint32_t> shifted(n);
    for (uint64_t x = 0; x < n; ++x) shifted[x] = f_table[ctx.add(FieldElem(uint32_t(x)), a).idx].idx;

    uint64_t count = 0;
    for (uint64_t x = 0; x < n; ++x)
        for (uint64_t y = 0; y < n; ++y)
            count += ctx.sub(f_table[x], f_table[y]) == b &&
                     ctx.sub(FieldElem(shifted[x]), FieldElem(shifted[y])) == b;
    return count;
}

std::vector<uint32_t> bct_oracle_row(const FieldCtx& ctx, const std::vector<FieldElem>& f_table,
                                     FieldElem a) {
    const uint64_t n = ctx.order();
    if (f_table.size() != n) throw std::invalid_argument("bct_oracle_row: value table size mismatch");
    if (n > (uint64_t(1) << 12))
        throw resource_cap_error("bct_oracle_row: naive oracle capped at p^n <= 2^12");
    if (a == ctx.zero()) throw std::invalid_argument("bct_oracle_row: a must be nonzero");

    std::vector<uint32_t> shifted(n);
    for (uint64_t x = 0; x < n; ++x) shifted[x] = f_table[ctx.add(FieldElem(uint32_t(x)), a).idx].idx;

    std::vector<uint32_t> row(n, 0);
    for (uint64_t x = 0; x < n; ++x)
        for (uint64_t y = 0; y < n; ++y) {
            uint32_t b = ctx.sub(f_table[x], f_table[y]).idx;
            if (b && ctx.sub(FieldElem(shifted[x]), FieldElem(shifted[y])).idx == b) ++row[b];
        }
    return row;
}

SpectrumTable differential_spectrum_from_row(const std::vector<uint32_t>& row) {
    return histogram_of(row, 0, SpectrumKind::differential);
}

SpectrumTable differential_spectrum(const FieldCtx& ctx, const PowerMapSpec& map) {
    return differential_spectrum_from_row(derivative_histogram(ctx, map));
}

SpectrumTable boomerang_spectrum_from_row(const std::vector<uint32_t>& row) {
    return histogram_of(row, 1, SpectrumKind::boomerang);
}

SpectrumTable boomerang_spectrum(const FieldCtx& ctx, const PowerMapSpec& map) {
    return boomerang_spectrum_from_row(boomerang_histogram(ctx, map));
}

namespace {

uint64_t uniformity_of(const SpectrumTable& spectrum, SpectrumKind want, const char* who) {
    if (spectrum.kind != want)
        throw std::invalid_argument(std::string(who) + ": spectrum kind mismatch");
    if (spectrum.entries.empty()) throw std::invalid_argument(std::string(who) + ": empty spectrum");
    return spectrum.entries.rbegin()->first;
}

}  // namespace

uint64_t differential_uniformity(const SpectrumTable& spectrum) {
    return uniformity_of(spectrum, SpectrumKind::differential, "differential_uniformity");
}

uint64_t boomerang_uniformity(const SpectrumTable& spectrum) {
    return uniformity_of(spectrum, SpectrumKind::boomerang, "boomerang_uniformity");
}

bool locally_apn_from_row(const FieldCtx& ctx, const std::vector<uint32_t>& row) {
    uint32_t worst = 0;
    for (uint64_t b = 0; b < ctx.order(); ++b)
        if (!ctx.in_prime_field(FieldElem(uint32_t(b)))) worst = std::max(worst, row[b]);
    return worst == 2;
}

bool locally_apn(const FieldCtx& ctx, const PowerMapSpec& map) {
    return locally_apn_from_row(ctx, derivative_histogram(ctx, map));
}

void write_row_csv(std::ostream& os, const std::vector<uint32_t>& row, uint32_t first_b) {
    os << "b_index,count\n";
    for (uint64_t b = first_b; b < row.size(); ++b) os << b << ',' << row[b] << '\n';
}

}  // namespace powspec
