#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "powspec/gf.hpp"
#include "powspec/spectra.hpp"

namespace powspec {

/// Which closed-form case applies to (p, m).
enum class ClosedFormBranch { char2_even_m, char2_odd_m, odd_q_2_mod_3, odd_otherwise };

ClosedFormBranch closed_form_branch(uint32_t p, uint32_t m);
const char* branch_name(ClosedFormBranch branch);

enum class QuadClass { square, nonsquare, zero };

/// Quadratic class of -3 in F_q. Closed form: nonsquare iff q = 2 (mod 3);
/// zero only in characteristic 3. Errors on p = 2.
QuadClass minus_three_class(uint32_t p, uint32_t m);

/// Boolean view of the above; the p = 3 "zero" case reports true.
bool minus_three_is_square(uint32_t p, uint32_t m);

/// Solutions of y^2 + b*y + b^{1-q} = 0 lying on the unit circle U_{q+1},
/// found by substitution over the q+1 circle elements, together with the
/// count the closed-form criterion predicts: for p = 2 the trace bit of
/// 1/b^{q+1} (2 solutions iff the bit is 1), for p odd the quadratic class
/// of theta = (b^{q+1}-4)/b^{q+1} (2 iff nonsquare; 1 iff the discriminant
/// vanishes, with the single root y = -b/2).
struct QuadUnitCircleReport {
    FieldElem b;
    uint32_t predicted_count = 0;
    uint32_t enumerated_count = 0;
    std::array<FieldElem, 2> solutions{};  // first enumerated_count slots valid

    std::optional<FieldElem> discriminant;  // p odd: (b^{q+1} - 4) / b^{q-1}
    std::optional<FieldElem> theta;         // p odd: (b^{q+1} - 4) / b^{q+1}
    std::optional<QuadClass> theta_class;   // p odd, theta != 0
    std::optional<uint32_t> trace_bit;      // p = 2: Tr_1^m(1 / b^{q+1})
};

QuadUnitCircleReport unit_quadratic_solve(const FieldCtx& ctx, FieldElem b);

/// Closed-form spectra for x^{k(q-1)}. Labels that collide after the small-q
/// arithmetic (e.g. q-2 meeting 2) are merged by summing; zero counts are
/// dropped. The result depends on k only through the gcd(k, q+1) = 1 check.
SpectrumTable predict_differential_spectrum(uint32_t p, uint32_t m, uint64_t k);
SpectrumTable predict_boomerang_spectrum(uint32_t p, uint32_t m, uint64_t k);

struct PredictedSpectra {
    ClosedFormBranch branch = ClosedFormBranch::odd_otherwise;
    SpectrumTable differential;
    SpectrumTable boomerang;
};

PredictedSpectra predict_spectra(uint32_t p, uint32_t m, uint64_t k);

/// True iff (b^{q+1} - 4) / b^{q-1} is a primitive cube root of unity
/// (either of the two). Defined for p odd with q = 2 (mod 3), b != 0;
/// whenever it holds, the DDT row value at b must differ from 2.
bool discriminant_is_primitive_cube_root(const FieldCtx& ctx, FieldElem b);

/// Both counting identities for a differential spectrum over F_{p^n}:
/// sum of counts = p^n and sum of multiplicity-weighted counts = p^n.
bool moment_identity_check(const SpectrumTable& spectrum, uint32_t p, uint32_t n);

}  // namespace powspec
