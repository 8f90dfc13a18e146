#include "powspec/report.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace powspec {
namespace {

using nlohmann::json;

json spectrum_json(const SpectrumTable& t) {
    json arr = json::array();
    for (auto [mult, count] : t.entries) arr.push_back(json::array({mult, count}));
    return arr;
}

SpectrumTable spectrum_from_json(const json& arr, SpectrumKind kind) {
    SpectrumTable t;
    t.kind = kind;
    if (!arr.is_array()) throw std::invalid_argument("report JSON: spectrum is not an array");
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("report JSON: spectrum entry is not a pair");
        uint64_t mult = pair[0].get<uint64_t>(), count = pair[1].get<uint64_t>();
        if (count == 0) throw std::invalid_argument("report JSON: zero count stored");
        if (!t.entries.emplace(mult, count).second)
            throw std::invalid_argument("report JSON: duplicate multiplicity");
    }
    return t;
}

uint64_t seed_of(const PowerMapSpec& map) {
    return uint64_t(map.p) * 1000003 + uint64_t(map.m) * 1009 + map.k;
}

std::vector<CheckResult> core_verdicts(const FieldCtx& ctx, const PowerMapSpec& map,
                                       const std::vector<uint32_t>& drow,
                                       const SpectrumTable& ds, const SpectrumTable& bs,
                                       const PredictedSpectra& predicted, bool is_lapn,
                                       uint64_t boom_uni) {
    std::vector<CheckResult> out;

    CheckResult match{"spectra_match", true, ""};
    if (CheckResult d = spectra_match_check(ds, predicted.differential); !d.pass)
        match = {"spectra_match", false, "differential " + d.detail};
    else if (CheckResult b = spectra_match_check(bs, predicted.boomerang); !b.pass)
        match = {"spectra_match", false, "boomerang " + b.detail};
    out.push_back(match);

    out.push_back({"moment_identity", moment_identity_check(ds, ctx.p(), ctx.n()), ""});

    const bool lapn_want = expected_locally_apn(map.q);
    out.push_back({"locally_apn", is_lapn == lapn_want,
                   is_lapn == lapn_want ? ""
                                        : "got " + std::to_string(is_lapn) + ", expected " +
                                              std::to_string(lapn_want)});

    const uint64_t uni_want = expected_boomerang_uniformity(ctx.p(), ctx.m(), map.q);
    out.push_back({"uniformity_branch", boom_uni == uni_want,
                   boom_uni == uni_want ? ""
                                        : "got " + std::to_string(boom_uni) + ", expected " +
                                              std::to_string(uni_want)});

    if (ctx.p() == 2) {
        const FieldElem w = ctx.primitive_cube_root();
        const FieldElem w2 = ctx.mul(w, w);
        const uint32_t want = ctx.m() % 4 == 2 ? 2 : 0;
        const bool ok = drow[w.idx] == want && drow[w2.idx] == want;
        out.push_back({"cube_root_values", ok,
                       ok ? ""
                          : "row value at a primitive cube root is " +
                                std::to_string(drow[w.idx] == want ? drow[w2.idx] : drow[w.idx]) +
                                ", expected " + std::to_string(want)});
    }

    if (ctx.p() != 2 && map.q % 3 == 2) {
        CheckResult rule{"cube_discriminant_rule", true, ""};
        for (uint64_t b = 1; b < ctx.order(); ++b) {
            if (discriminant_is_primitive_cube_root(ctx, ctx.element(b)) && drow[b] == 2) {
                rule = {"cube_discriminant_rule", false,
                        "row value 2 at b index " + std::to_string(b)};
                break;
            }
        }
        out.push_back(rule);
    }
    return out;
}

}  // namespace

std::string spectrum_to_string(const SpectrumTable& t) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto [mult, count] : t.entries) {
        if (!first) os << ", ";
        os << mult << ':' << count;
        first = false;
    }
    os << '}';
    return os.str();
}

bool AnalysisReport::pass() const {
    if (verdicts.empty()) return false;
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

bool expected_locally_apn(uint64_t q) { return q > 3; }

uint64_t expected_boomerang_uniformity(uint32_t p, uint32_t m, uint64_t q) {
    if (p == 2 && m % 2 == 1) return 4;
    return q == 3 ? 0 : 2;
}

CheckResult spectra_match_check(const SpectrumTable& brute, const SpectrumTable& predicted) {
    if (brute.kind != predicted.kind) return {"spectra_match", false, "kind mismatch"};
    if (brute.entries == predicted.entries) return {"spectra_match", true, ""};
    auto keys = brute.entries;
    for (auto [mult, count] : predicted.entries) keys.emplace(mult, 0);
    for (auto [mult, unused] : keys) {
        auto bi = brute.entries.find(mult);
        auto pi = predicted.entries.find(mult);
        const uint64_t bc = bi == brute.entries.end() ? 0 : bi->second;
        const uint64_t pc = pi == predicted.entries.end() ? 0 : pi->second;
        if (bc != pc)
            return {"spectra_match", false,
                    "multiplicity " + std::to_string(mult) + ": brute " + std::to_string(bc) +
                        ", predicted " + std::to_string(pc)};
    }
    return {"spectra_match", false, "tables differ"};
}

AnalysisReport analyze_with_ctx(const FieldCtx& ctx, const PowerMapSpec& map) {
    const auto t0 = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.p = ctx.p();
    rep.m = ctx.m();
    rep.k = map.k;
    rep.q = map.q;
    rep.n = ctx.n();
    rep.d = map.d;
    rep.modulus = ctx.modulus();
    rep.degenerate = ctx.p() == 2 && ctx.m() == 1;

    const auto drow = derivative_histogram(ctx, map);
    const auto brow = boomerang_histogram(ctx, map);
    rep.differential = differential_spectrum_from_row(drow);
    rep.boomerang = boomerang_spectrum_from_row(brow);
    rep.diff_uniformity = differential_uniformity(rep.differential);
    rep.boom_uniformity = boomerang_uniformity(rep.boomerang);
    rep.is_locally_apn = locally_apn_from_row(ctx, drow);
    rep.predicted = predict_spectra(rep.p, rep.m, map.k);

    rep.verdicts = core_verdicts(ctx, map, drow, rep.differential, rep.boomerang, rep.predicted,
                                 rep.is_locally_apn, rep.boom_uniformity);

    rep.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

AnalysisReport analyze(uint32_t p, uint32_t m, uint64_t k) {
    const PowerMapSpec map(p, m, k);  // input validation before any table work
    const FieldCtx ctx = build_field(p, m);
    return analyze_with_ctx(ctx, map);
}

std::vector<CheckResult> run_verification(const FieldCtx& ctx, const PowerMapSpec& map) {
    const auto drow = derivative_histogram(ctx, map);
    const auto brow = boomerang_histogram(ctx, map);
    const auto ds = differential_spectrum_from_row(drow);
    const auto bs = boomerang_spectrum_from_row(brow);
    const auto predicted = predict_spectra(ctx.p(), ctx.m(), map.k);

    std::vector<CheckResult> checks =
        core_verdicts(ctx, map, drow, ds, bs, predicted, locally_apn_from_row(ctx, drow),
                      boomerang_uniformity(bs));

    const uint64_t order = ctx.order();

    if (ctx.p() == 2) {
        CheckResult parity{"row_parity", true, ""};
        for (uint64_t b = 0; b < order; ++b)
            if (drow[b] % 2) {
                parity = {"row_parity", false, "odd row value at b index " + std::to_string(b)};
                break;
            }
        checks.push_back(parity);

        CheckResult dom{"boomerang_dominates", true, ""};
        for (uint64_t b = 1; b < order; ++b)
            if (brow[b] < drow[b]) {
                dom = {"boomerang_dominates", false,
                       "boomerang below differential at b index " + std::to_string(b)};
                break;
            }
        checks.push_back(dom);
    } else {
        CheckResult sym{"row_negation_symmetry", true, ""};
        for (uint64_t b = 1; b < order; ++b)
            if (drow[b] != drow[ctx.neg(ctx.element(b)).idx]) {
                sym = {"row_negation_symmetry", false, "asymmetry at b index " + std::to_string(b)};
                break;
            }
        checks.push_back(sym);

        // off the prime values 0, +-1 the row is supported exactly where the
        // norm condition or the nonsquare-theta condition holds, with value <= 2
        CheckResult support{"row_support_criterion", true, ""};
        const FieldElem one = ctx.one(), minus_one = ctx.neg(one);
        const FieldElem two = ctx.element(2 % ctx.p()), minus_two = ctx.neg(two);
        const FieldElem four = ctx.element(4 % ctx.p());
        for (uint64_t b = 1; b < order; ++b) {
            const FieldElem be = ctx.element(b);
            if (be == one || be == minus_one) continue;
            const FieldElem norm = ctx.pow(be, int64_t(map.q) + 1);
            const FieldElem top = ctx.sub(norm, four);
            bool want_positive;
            if (top == ctx.zero())
                want_positive = be != two && be != minus_two;
            else
                want_positive = !ctx.is_square_subfield(ctx.mul(top, ctx.inv(norm)));
            if (drow[b] > 2 || (drow[b] > 0) != want_positive) {
                support = {"row_support_criterion", false,
                           "row value " + std::to_string(drow[b]) + " at b index " +
                               std::to_string(b) + " contradicts the criterion"};
                break;
            }
        }
        checks.push_back(support);
    }

    if (order <= (uint64_t(1) << 12)) {
        const auto f = power_value_table(ctx, map);
        const bool ok = bct_oracle_row(ctx, f, ctx.one()) == brow;
        checks.push_back(
            {"boomerang_oracle_agreement", ok, ok ? "" : "grouped row differs from naive row"});
    }

    {
        const auto f = power_value_table(ctx, map);
        std::mt19937_64 rng(seed_of(map));
        CheckResult cells{"ddt_random_cells", true, ""};
        for (int i = 0; i < 8; ++i) {
            const FieldElem a = ctx.element(1 + rng() % (order - 1));
            const FieldElem b = ctx.element(rng() % order);
            uint64_t direct = 0;
            for (uint64_t x = 0; x < order; ++x)
                direct += ctx.sub(f[ctx.add(ctx.element(x), a).idx], f[x]) == b;
            if (ddt_entry(ctx, map, a, b) != direct) {
                cells = {"ddt_random_cells", false,
                         "reduced entry differs from direct count at a index " +
                             std::to_string(a.idx) + ", b index " + std::to_string(b.idx)};
                break;
            }
        }
        checks.push_back(cells);
    }

    {
        std::mt19937_64 rng(seed_of(map) ^ 0x9e3779b97f4a7c15ull);
        CheckResult quad{"unit_quadratic_counts", true, ""};
        auto probe = [&](uint64_t b) {
            const auto rep = unit_quadratic_solve(ctx, ctx.element(b));
            return rep.predicted_count == rep.enumerated_count;
        };
        bool ok = true;
        if (order <= 4096) {
            for (uint64_t b = 1; ok && b < order; ++b) ok = probe(b);
        } else {
            for (int i = 0; ok && i < 128; ++i) ok = probe(1 + rng() % (order - 1));
        }
        if (!ok) quad = {"unit_quadratic_counts", false, "criterion count differs from enumeration"};
        checks.push_back(quad);
    }

    return checks;
}

std::string report_to_json(const AnalysisReport& report, int indent) {
    json j;
    j["params"] = {{"p", report.p}, {"m", report.m}, {"k", report.k},       {"q", report.q},
                   {"n", report.n}, {"d", report.d}, {"modulus", report.modulus}};
    j["differential"] = {{"spectrum", spectrum_json(report.differential)},
                         {"uniformity", report.diff_uniformity},
                         {"locally_apn", report.is_locally_apn}};
    j["boomerang"] = {{"spectrum", spectrum_json(report.boomerang)},
                      {"uniformity", report.boom_uniformity}};
    j["predicted"] = {{"branch", branch_name(report.predicted.branch)},
                      {"differential", spectrum_json(report.predicted.differential)},
                      {"boomerang", spectrum_json(report.predicted.boomerang)}};
    json verdicts = json::object();
    for (const auto& v : report.verdicts) verdicts[v.name] = v.pass;
    j["verdicts"] = verdicts;
    j["timing_ms"] = report.timing_ms;
    j["degenerate"] = report.degenerate;
    return j.dump(indent);
}

AnalysisReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report JSON: ") + e.what());
    }
    try {
        AnalysisReport rep;
        const auto& params = j.at("params");
        rep.p = params.at("p").get<uint32_t>();
        rep.m = params.at("m").get<uint32_t>();
        rep.k = params.at("k").get<uint64_t>();
        rep.q = params.at("q").get<uint64_t>();
        rep.n = params.at("n").get<uint32_t>();
        rep.d = params.at("d").get<uint64_t>();
        rep.modulus = params.at("modulus").get<std::vector<uint32_t>>();

        rep.differential =
            spectrum_from_json(j.at("differential").at("spectrum"), SpectrumKind::differential);
        rep.diff_uniformity = j.at("differential").at("uniformity").get<uint64_t>();
        rep.is_locally_apn = j.at("differential").at("locally_apn").get<bool>();
        rep.boomerang = spectrum_from_json(j.at("boomerang").at("spectrum"), SpectrumKind::boomerang);
        rep.boom_uniformity = j.at("boomerang").at("uniformity").get<uint64_t>();

        const std::string branch = j.at("predicted").at("branch").get<std::string>();
        bool found = false;
        for (auto b : {ClosedFormBranch::char2_even_m, ClosedFormBranch::char2_odd_m,
                       ClosedFormBranch::odd_q_2_mod_3, ClosedFormBranch::odd_otherwise})
            if (branch == branch_name(b)) {
                rep.predicted.branch = b;
                found = true;
            }
        if (!found) throw std::invalid_argument("report JSON: unknown branch label " + branch);
        rep.predicted.differential =
            spectrum_from_json(j.at("predicted").at("differential"), SpectrumKind::differential);
        rep.predicted.boomerang =
            spectrum_from_json(j.at("predicted").at("boomerang"), SpectrumKind::boomerang);

        for (const auto& [name, pass] : j.at("verdicts").items())
            rep.verdicts.push_back({name, pass.get<bool>(), ""});
        rep.timing_ms = j.at("timing_ms").get<double>();
        rep.degenerate = j.at("degenerate").get<bool>();

        // cross-field validation
        if (!is_prime(rep.p) || rep.m < 1) throw std::invalid_argument("report JSON: bad p or m");
        uint64_t q = 1, order = 1;
        for (uint32_t i = 0; i < rep.m; ++i) q *= rep.p;
        for (uint32_t i = 0; i < 2 * rep.m; ++i) order *= rep.p;
        if (q != rep.q || rep.n != 2 * rep.m)
            throw std::invalid_argument("report JSON: inconsistent q or n");
        for (const SpectrumTable* t : {&rep.differential, &rep.predicted.differential}) {
            if (t->total() != order || t->weighted_total() != order)
                throw std::invalid_argument("report JSON: differential totals violate p^n");
        }
        for (const SpectrumTable* t : {&rep.boomerang, &rep.predicted.boomerang}) {
            if (t->total() != order - 1)
                throw std::invalid_argument("report JSON: boomerang total violates p^n - 1");
        }
        return rep;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report JSON missing or mistyped field: ") + e.what());
    }
}

void write_report_json(const AnalysisReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << report_to_json(report) << '\n';
}

void write_report_csv(const AnalysisReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << "table,multiplicity,count\n";
    const std::pair<const char*, const SpectrumTable*> tables[] = {
        {"differential", &report.differential},
        {"boomerang", &report.boomerang},
        {"predicted_differential", &report.predicted.differential},
        {"predicted_boomerang", &report.predicted.boomerang},
    };
    for (const auto& [name, table] : tables)
        for (auto [mult, count] : table->entries) out << name << ',' << mult << ',' << count << '\n';
}

}  // namespace powspec
