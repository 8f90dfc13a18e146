#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace powspec {

/// Thrown when a requested field would exceed the desk-scale table cap.
struct resource_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One element of F_{p^n}, identified by its canonical index: digit i of
/// idx in base p is the coefficient of x^i in the polynomial basis.
/// idx 0 is the zero element.
struct FieldElem {
    uint32_t idx = 0;

    FieldElem() = default;
    explicit constexpr FieldElem(uint32_t i) : idx(i) {}

    friend constexpr bool operator==(FieldElem a, FieldElem b) { return a.idx == b.idx; }
    friend constexpr bool operator!=(FieldElem a, FieldElem b) { return a.idx != b.idx; }
    friend constexpr bool operator<(FieldElem a, FieldElem b) { return a.idx < b.idx; }
};

/// Arithmetic context for F_{p^n} with n = 2m, built once and immutable
/// afterwards. Multiplication, inversion and exponentiation run on
/// discrete-log tables; addition works digit-wise on canonical indices.
/// All members are read-only after construction, so a context can be
/// shared freely across threads.
class FieldCtx {
  public:
    static constexpr uint64_t kOrderCap = uint64_t(1) << 24;

    /// Builds F_{p^{2m}} over the canonical modulus (lexicographically
    /// smallest monic irreducible, coefficients compared low-to-high
    /// degree) with the canonical generator (smallest element index of
    /// full multiplicative order). Deterministic: repeated builds are
    /// bit-identical.
    static FieldCtx build(uint32_t p, uint32_t m);

    /// Same construction but over a caller-supplied monic irreducible
    /// modulus of degree 2m (low-to-high coefficients, length 2m+1).
    static FieldCtx build_with_modulus(uint32_t p, uint32_t m, const std::vector<uint32_t>& modulus);

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t n() const { return n_; }
    uint32_t q() const { return q_; }
    uint64_t order() const { return order_; }

    /// Modulus polynomial, low-to-high degree, length n+1, monic.
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    FieldElem generator() const { return generator_; }

    FieldElem zero() const { return FieldElem(0); }
    FieldElem one() const { return FieldElem(1); }

    /// Element from a canonical index; throws if idx >= order.
    FieldElem element(uint64_t idx) const;
    FieldElem from_coeffs(const std::vector<uint32_t>& coeffs) const;
    std::vector<uint32_t> coeffs(FieldElem x) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    /// x^e via discrete-log reduction. pow(x,0) = 1 for any x, including
    /// pow(0,0) = 1 by convention; pow(0,e) = 0 for e > 0; 0 raised to a
    /// negative power throws.
    FieldElem pow(FieldElem x, int64_t e) const;

    /// The order-2 automorphism x -> x^q; fixes exactly the subfield F_q.
    FieldElem frobenius_q(FieldElem x) const;

    /// Relative trace Tr_1^m : F_q -> F_p, x -> x + x^p + ... + x^{p^{m-1}}.
    /// Requires x in the subfield F_q.
    FieldElem subfield_trace(FieldElem x) const;

    /// Quadratic character on F_q*: true iff x^{(q-1)/2} = 1. Requires p
    /// odd and x a nonzero subfield element.
    bool is_square_subfield(FieldElem x) const;

    /// w = g^{(order-1)/3}: the canonical primitive cube root of unity.
    /// Requires p != 3.
    FieldElem primitive_cube_root() const;

    bool in_subfield(FieldElem x) const { return subfield_mask_[x.idx] != 0; }
    bool in_prime_field(FieldElem x) const { return x.idx < p_; }
    bool on_unit_circle(FieldElem x) const;

    /// The q+1 solutions of x^{q+1} = 1, ordered as powers of g^{q-1}.
    const std::vector<FieldElem>& unit_circle() const { return unit_circle_; }

    /// Discrete log of a nonzero element with respect to the generator.
    uint32_t log(FieldElem x) const;
    /// generator^e for e in [0, order-1).
    FieldElem exp(uint64_t e) const { return FieldElem(exp_table_[e]); }

  private:
    FieldCtx() = default;
    static FieldCtx make_shell(uint32_t p, uint32_t m);
    void build_tables();

    uint32_t p_ = 0, m_ = 0, n_ = 0, q_ = 0;
    uint64_t order_ = 0;
    std::vector<uint32_t> modulus_;
    FieldElem generator_;
    std::vector<uint32_t> log_table_;   // size order; [0] is a sentinel
    std::vector<uint32_t> exp_table_;   // size order-1
    std::vector<uint8_t> subfield_mask_;
    std::vector<FieldElem> unit_circle_;
};

/// Convenience free-function form of FieldCtx::build.
inline FieldCtx build_field(uint32_t p, uint32_t m) { return FieldCtx::build(p, m); }

bool is_prime(uint64_t v);

/// Irreducibility over F_p of a monic polynomial given low-to-high.
bool is_irreducible(uint32_t p, const std::vector<uint32_t>& coeffs);

/// The index-th monic irreducible of the given degree in lexicographic
/// order (coefficients compared low-to-high). index 0 is the canonical
/// modulus choice.
std::vector<uint32_t> lex_irreducible(uint32_t p, uint32_t degree, uint32_t index = 0);

}  // namespace powspec
