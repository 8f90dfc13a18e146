#include "powspec/theory.hpp"

#include <initializer_list>
#include <utility>

namespace powspec {
namespace {

uint64_t pow_u64(uint64_t base, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

SpectrumTable merge_table(SpectrumKind kind,
                          std::initializer_list<std::pair<uint64_t, uint64_t>> raw) {
    SpectrumTable t;
    t.kind = kind;
    for (auto [mult, count] : raw) t.entries[mult] += count;
    for (auto it = t.entries.begin(); it != t.entries.end();)
        it = it->second == 0 ? t.entries.erase(it) : std::next(it);
    return t;
}

FieldElem small_const(const FieldCtx& ctx, uint32_t c) { return ctx.element(c % ctx.p()); }

}  // namespace

ClosedFormBranch closed_form_branch(uint32_t p, uint32_t m) {
    if (!is_prime(p)) throw std::invalid_argument("closed_form_branch: p must be prime");
    if (m < 1) throw std::invalid_argument("closed_form_branch: m must be >= 1");
    if (p == 2) return m % 2 == 0 ? ClosedFormBranch::char2_even_m : ClosedFormBranch::char2_odd_m;
    return pow_u64(p, m) % 3 == 2 ? ClosedFormBranch::odd_q_2_mod_3 : ClosedFormBranch::odd_otherwise;
}

const char* branch_name(ClosedFormBranch branch) {
    switch (branch) {
        case ClosedFormBranch::char2_even_m: return "p=2 m even";
        case ClosedFormBranch::char2_odd_m: return "p=2 m odd";
        case ClosedFormBranch::odd_q_2_mod_3: return "p odd q=2 mod 3";
        case ClosedFormBranch::odd_otherwise: return "p odd otherwise";
    }
    throw std::logic_error("branch_name: unknown branch");
}

QuadClass minus_three_class(uint32_t p, uint32_t m) {
    if (p == 2) throw std::invalid_argument("minus_three_class: undefined in characteristic 2");
    if (!is_prime(p)) throw std::invalid_argument("minus_three_class: p must be prime");
    if (m < 1) throw std::invalid_argument("minus_three_class: m must be >= 1");
    if (p == 3) return QuadClass::zero;
    return pow_u64(p, m) % 3 == 2 ? QuadClass::nonsquare : QuadClass::square;
}

bool minus_three_is_square(uint32_t p, uint32_t m) {
    return minus_three_class(p, m) != QuadClass::nonsquare;
}

QuadUnitCircleReport unit_quadratic_solve(const FieldCtx& ctx, FieldElem b) {
    if (b == ctx.zero()) throw std::invalid_argument("unit_quadratic_solve: b must be nonzero");
    const int64_t q = ctx.q();

    QuadUnitCircleReport rep;
    rep.b = b;

    const FieldElem constant = ctx.pow(b, 1 - q);  // b^{1-q}
    for (FieldElem y : ctx.unit_circle()) {
        FieldElem lhs = ctx.add(ctx.add(ctx.mul(y, y), ctx.mul(b, y)), constant);
        if (lhs != ctx.zero()) continue;
        if (rep.enumerated_count >= 2)
            throw std::logic_error("unit_quadratic_solve: quadratic with more than two roots");
        rep.solutions[rep.enumerated_count++] = y;
    }

    const FieldElem norm = ctx.pow(b, q + 1);  // in F_q*
    if (ctx.p() == 2) {
        FieldElem tr = ctx.subfield_trace(ctx.inv(norm));
        rep.trace_bit = tr.idx;
        rep.predicted_count = tr == ctx.one() ? 2 : 0;
    } else {
        const FieldElem four = small_const(ctx, 4);
        const FieldElem top = ctx.sub(norm, four);  // b^{q+1} - 4
        rep.discriminant = ctx.mul(top, ctx.pow(b, 1 - q));
        rep.theta = ctx.mul(top, ctx.inv(norm));
        if (top == ctx.zero()) {
            rep.theta_class = QuadClass::zero;
            rep.predicted_count = 1;  // the double root y = -b/2
        } else {
            bool nonsq = !ctx.is_square_subfield(*rep.theta);
            rep.theta_class = nonsq ? QuadClass::nonsquare : QuadClass::square;
            rep.predicted_count = nonsq ? 2 : 0;
        }
    }
    return rep;
}

SpectrumTable predict_differential_spectrum(uint32_t p, uint32_t m, uint64_t k) {
    const PowerMapSpec map(p, m, k);  // validates p, m, gcd(k, q+1)
    const uint64_t q = map.q;
    switch (closed_form_branch(p, m)) {
        case ClosedFormBranch::char2_even_m:
            return merge_table(SpectrumKind::differential, {{0, q * q / 2 + q / 2 - 2},
                                                            {2, q * q / 2 - q / 2 + 1},
                                                            {q - 2, 1}});
        case ClosedFormBranch::char2_odd_m:
            return merge_table(SpectrumKind::differential, {{0, q * q / 2 + q / 2 - 1},
                                                            {2, q * q / 2 - q / 2 - 1},
                                                            {4, 1},
                                                            {q - 2, 1}});
        case ClosedFormBranch::odd_q_2_mod_3:
            return merge_table(SpectrumKind::differential, {{0, (q * q - 1) / 2 - (q - 1)},
                                                            {1, 3 * (q - 1)},
                                                            {2, (q * q - 1) / 2 - 2 * q},
                                                            {3, 2},
                                                            {q - 2, 1}});
        case ClosedFormBranch::odd_otherwise:
            return merge_table(SpectrumKind::differential, {{0, (q * q - 1) / 2 - (q + 1)},
                                                            {1, 3 * q - 1},
                                                            {2, (q * q - 1) / 2 - 2 * (q - 1)},
                                                            {q - 2, 1}});
    }
    throw std::logic_error("predict_differential_spectrum: unknown branch");
}

SpectrumTable predict_boomerang_spectrum(uint32_t p, uint32_t m, uint64_t k) {
    const PowerMapSpec map(p, m, k);
    const uint64_t q = map.q;
    switch (closed_form_branch(p, m)) {
        case ClosedFormBranch::char2_even_m:
            return merge_table(SpectrumKind::boomerang,
                               {{0, q * q / 2 + q / 2 - 2}, {2, q * q / 2 - q / 2 + 1}});
        case ClosedFormBranch::char2_odd_m:
            return merge_table(SpectrumKind::boomerang,
                               {{0, q * q / 2 + q / 2 - 3}, {2, q * q / 2 - q / 2 - 1}, {4, 3}});
        case ClosedFormBranch::odd_q_2_mod_3:
            return merge_table(SpectrumKind::boomerang, {{0, (q * q - 1) / 2 + 2 * q - 6},
                                                         {2, (q * q - 1) / 2 - 2 * q + 6}});
        case ClosedFormBranch::odd_otherwise:
            return merge_table(SpectrumKind::boomerang, {{0, (q * q - 1) / 2 + 2 * (q - 1)},
                                                         {2, (q * q - 1) / 2 - 2 * (q - 1)}});
    }
    throw std::logic_error("predict_boomerang_spectrum: unknown branch");
}

PredictedSpectra predict_spectra(uint32_t p, uint32_t m, uint64_t k) {
    PredictedSpectra out;
    out.branch = closed_form_branch(p, m);
    out.differential = predict_differential_spectrum(p, m, k);
    out.boomerang = predict_boomerang_spectrum(p, m, k);
    return out;
}

bool discriminant_is_primitive_cube_root(const FieldCtx& ctx, FieldElem b) {
    if (ctx.p() == 2 || ctx.q() % 3 != 2)
        throw std::invalid_argument(
            "discriminant_is_primitive_cube_root: requires p odd with q = 2 (mod 3)");
    if (b == ctx.zero())
        throw std::invalid_argument("discriminant_is_primitive_cube_root: b must be nonzero");
    const int64_t q = ctx.q();
    const FieldElem top = ctx.sub(ctx.pow(b, q + 1), small_const(ctx, 4));
    const FieldElem disc = ctx.mul(top, ctx.pow(b, 1 - q));
    const FieldElem w = ctx.primitive_cube_root();
    return disc == w || disc == ctx.mul(w, w);
}

bool moment_identity_check(const SpectrumTable& spectrum, uint32_t p, uint32_t n) {
    if (spectrum.kind != SpectrumKind::differential)
        throw std::invalid_argument("moment_identity_check: differential spectrum required");
    const uint64_t pn = pow_u64(p, n);
    return spectrum.total() == pn && spectrum.weighted_total() == pn;
}

}  // namespace powspec
