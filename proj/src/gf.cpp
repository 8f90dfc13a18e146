#include "powspec/gf.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace powspec {
namespace {

// ---- small prime-field helpers ------------------------------------------

uint32_t mod_pow_u32(uint32_t base, uint64_t e, uint32_t mod) {
    uint64_t r = 1, b = base % mod;
    while (e) {
        if (e & 1) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return uint32_t(r);
}

uint32_t mod_inv_prime(uint32_t a, uint32_t p) { return mod_pow_u32(a, p - 2, p); }

std::vector<uint64_t> distinct_prime_factors(uint64_t v) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

// ---- dense polynomials over F_p, low-to-high coefficients ----------------

using Poly = std::vector<uint32_t>;

int poly_degree(const Poly& a) {
    for (int i = int(a.size()) - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

void poly_trim(Poly& a) { a.resize(size_t(poly_degree(a) + 1)); }

// a mod f, f monic
Poly poly_mod(Poly a, const Poly& f, uint32_t p) {
    const int df = poly_degree(f);
    for (int i = poly_degree(a); i >= df; --i) {
        uint32_t c = a[size_t(i)];
        if (!c) continue;
        for (int j = 0; j <= df; ++j) {
            uint64_t t = a[size_t(i - df + j)] + uint64_t(c) * (p - f[size_t(j)] % p);
            a[size_t(i - df + j)] = uint32_t(t % p);
        }
    }
    poly_trim(a);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = uint32_t((prod[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint32_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // make b monic, then a mod b
        uint32_t lead = b.back();
        if (lead != 1) {
            uint32_t li = mod_inv_prime(lead, p);
            for (auto& c : b) c = uint32_t(uint64_t(c) * li % p);
        }
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

Poly poly_sub(Poly a, const Poly& b, uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    poly_trim(a);
    return a;
}

// Rabin test: f (monic, degree n) is irreducible over F_p iff
// x^{p^n} = x (mod f) and gcd(x^{p^{n/r}} - x, f) = 1 for each prime r | n.
bool rabin_irreducible(const Poly& f, uint32_t p) {
    const int n = poly_degree(f);
    if (n < 1) return false;
    const Poly x{0, 1};
    uint64_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    if (poly_powmod(x, pn, f, p) != poly_mod(x, f, p)) return false;
    for (uint64_t r : distinct_prime_factors(uint64_t(n))) {
        uint64_t pe = 1;
        for (uint64_t i = 0; i < uint64_t(n) / r; ++i) pe *= p;
        Poly h = poly_sub(poly_powmod(x, pe, f, p), poly_mod(x, f, p), p);
        Poly g = poly_gcd(f, std::move(h), p);
        if (poly_degree(g) != 0) return false;
    }
    return true;
}

// ---- element arithmetic on digit arrays (used only while building) -------

constexpr int kMaxDeg = 24;

struct BuildOps {
    uint32_t p;
    int n;
    const uint32_t* f;  // modulus, length n+1, monic

    using Digits = std::array<uint16_t, kMaxDeg>;

    Digits decode(uint64_t idx) const {
        Digits d{};
        for (int i = 0; i < n; ++i) {
            d[size_t(i)] = uint16_t(idx % p);
            idx /= p;
        }
        return d;
    }

    uint64_t encode(const Digits& d) const {
        uint64_t r = 0;
        for (int i = n - 1; i >= 0; --i) r = r * p + d[size_t(i)];
        return r;
    }

    void mul(const Digits& a, const Digits& b, Digits& out) const {
        uint64_t acc[2 * kMaxDeg - 1] = {0};
        for (int i = 0; i < n; ++i) {
            if (!a[size_t(i)]) continue;
            for (int j = 0; j < n; ++j) acc[i + j] += uint64_t(a[size_t(i)]) * b[size_t(j)];
        }
        for (int i = 2 * n - 2; i >= n; --i) {
            uint64_t c = acc[i] % p;
            if (!c) continue;
            for (int j = 0; j < n; ++j) acc[i - n + j] += c * (p - f[j] % p);
        }
        for (int i = 0; i < n; ++i) out[size_t(i)] = uint16_t(acc[i] % p);
    }

    uint64_t pow_idx(uint64_t base_idx, uint64_t e) const {
        Digits r = decode(1), b = decode(base_idx), t;
        while (e) {
            if (e & 1) {
                mul(r, b, t);
                r = t;
            }
            mul(b, b, t);
            b = t;
            e >>= 1;
        }
        return encode(r);
    }
};

// GF(2^n) on bitmask indices: modulus mask carries bit n.
inline uint32_t mul_gf2(uint32_t a, uint32_t b, uint32_t mask, int n) {
    uint32_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> n & 1) a ^= mask;
    }
    return r;
}

}  // namespace

bool is_prime(uint64_t v) {
    if (v < 2) return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

bool is_irreducible(uint32_t p, const std::vector<uint32_t>& coeffs) {
    if (!is_prime(p)) throw std::invalid_argument("is_irreducible: p must be prime");
    Poly f = coeffs;
    for (auto& c : f) c %= p;
    poly_trim(f);
    if (f.empty() || f.back() != 1) return false;  // monic only
    return rabin_irreducible(f, p);
}

std::vector<uint32_t> lex_irreducible(uint32_t p, uint32_t degree, uint32_t index) {
    if (!is_prime(p)) throw std::invalid_argument("lex_irreducible: p must be prime");
    if (degree < 1) throw std::invalid_argument("lex_irreducible: degree must be positive");
    uint64_t total = 1;
    for (uint32_t i = 0; i < degree; ++i) total *= p;
    uint32_t found = 0;
    for (uint64_t t = 0; t < total; ++t) {
        // digit k of t (most significant first) is the degree-k coefficient,
        // so ascending t enumerates coefficient sequences in lex order
        Poly f(degree + 1, 0);
        f[degree] = 1;
        uint64_t tt = t;
        for (uint32_t i = degree; i-- > 0;) {
            f[degree - 1 - i] = uint32_t(tt / (total / p));
            tt = tt % (total / p) * p;
        }
        if (degree >= 2 && f[0] == 0) continue;  // divisible by x
        if (rabin_irreducible(f, p)) {
            if (found == index) return f;
            ++found;
        }
    }
    throw std::logic_error("lex_irreducible: exhausted search space");
}

FieldCtx FieldCtx::make_shell(uint32_t p, uint32_t m) {
    if (!is_prime(p)) throw std::invalid_argument("build_field: p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("build_field: m must be >= 1");
    uint64_t order = 1;
    for (uint32_t i = 0; i < 2 * m; ++i) {
        order *= p;
        if (order > kOrderCap)
            throw resource_cap_error("build_field: p^(2m) exceeds the 2^24 table cap");
    }
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.m_ = m;
    ctx.n_ = 2 * m;
    ctx.order_ = order;
    uint64_t q = 1;
    for (uint32_t i = 0; i < m; ++i) q *= p;
    ctx.q_ = uint32_t(q);
    return ctx;
}

FieldCtx FieldCtx::build(uint32_t p, uint32_t m) {
    FieldCtx ctx = make_shell(p, m);
    ctx.modulus_ = lex_irreducible(p, ctx.n_, 0);
    ctx.build_tables();
    return ctx;
}

FieldCtx FieldCtx::build_with_modulus(uint32_t p, uint32_t m, const std::vector<uint32_t>& modulus) {
    FieldCtx ctx = make_shell(p, m);
    if (modulus.size() != size_t(ctx.n_) + 1)
        throw std::invalid_argument("build_with_modulus: modulus must have degree 2m");
    for (uint32_t c : modulus)
        if (c >= p) throw std::invalid_argument("build_with_modulus: coefficients must lie in [0,p)");
    if (modulus.back() != 1) throw std::invalid_argument("build_with_modulus: modulus must be monic");
    if (!is_irreducible(p, modulus))
        throw std::invalid_argument("build_with_modulus: modulus is reducible over F_p");
    ctx.modulus_ = modulus;
    ctx.build_tables();
    return ctx;
}

void FieldCtx::build_tables() {
    const uint64_t L = order_ - 1;
    const auto factors = distinct_prime_factors(L);
    BuildOps ops{p_, int(n_), modulus_.data()};

    uint32_t mask2 = 0;
    if (p_ == 2)
        for (uint32_t i = 0; i <= n_; ++i) mask2 |= (modulus_[i] & 1u) << i;

    // canonical generator: smallest index of full multiplicative order
    auto order_is_full = [&](uint64_t idx) {
        for (uint64_t r : factors)
            if (ops.pow_idx(idx, L / r) == 1) return false;
        return true;
    };
    uint64_t gen = 0;
    for (uint64_t idx = 2; idx < order_; ++idx) {
        if (order_is_full(idx)) {
            gen = idx;
            break;
        }
    }
    if (gen == 0) throw std::logic_error("field build fault: no generator found");
    generator_ = FieldElem(uint32_t(gen));

    exp_table_.assign(L, 0);
    exp_table_[0] = 1;
    if (p_ == 2) {
        uint32_t cur = 1, g = uint32_t(gen);
        for (uint64_t i = 1; i < L; ++i) {
            cur = mul_gf2(cur, g, mask2, int(n_));
            exp_table_[i] = cur;
        }
        if (mul_gf2(cur, g, mask2, int(n_)) != 1)
            throw std::logic_error("field build fault: generator period != order-1");
    } else {
        BuildOps::Digits cur = ops.decode(1), g = ops.decode(gen), t;
        for (uint64_t i = 1; i < L; ++i) {
            ops.mul(cur, g, t);
            cur = t;
            exp_table_[i] = uint32_t(ops.encode(cur));
        }
        ops.mul(cur, g, t);
        if (ops.encode(t) != 1) throw std::logic_error("field build fault: generator period != order-1");
    }

    log_table_.assign(order_, UINT32_MAX);
    for (uint64_t i = 0; i < L; ++i) {
        if (log_table_[exp_table_[i]] != UINT32_MAX)
            throw std::logic_error("field build fault: exp table is not a bijection");
        log_table_[exp_table_[i]] = uint32_t(i);
    }
    for (uint64_t v = 1; v < order_; ++v)
        if (log_table_[v] == UINT32_MAX)
            throw std::logic_error("field build fault: log table has a hole");

    // F_q = {0} u {g^(j(q+1))}; U_{q+1} = {g^(j(q-1))}
    subfield_mask_.assign(order_, 0);
    subfield_mask_[0] = 1;
    uint64_t count = 1;
    for (uint64_t j = 0; j + 1 < q_; ++j) {
        subfield_mask_[exp_table_[j * (q_ + 1)]] = 1;
        ++count;
    }
    if (count != q_) throw std::logic_error("field build fault: subfield size != q");

    unit_circle_.clear();
    unit_circle_.reserve(q_ + 1);
    for (uint64_t j = 0; j <= q_; ++j) unit_circle_.push_back(FieldElem(exp_table_[j * (q_ - 1)]));

    uint32_t both = 0;
    for (FieldElem u : unit_circle_)
        if (subfield_mask_[u.idx]) ++both;
    if (both != (p_ == 2 ? 1u : 2u))
        throw std::logic_error("field build fault: F_q and U_{q+1} overlap incorrectly");
}

FieldElem FieldCtx::element(uint64_t idx) const {
    if (idx >= order_) throw std::invalid_argument("element: index out of range");
    return FieldElem(uint32_t(idx));
}

FieldElem FieldCtx::from_coeffs(const std::vector<uint32_t>& coeffs) const {
    if (coeffs.size() > n_) throw std::invalid_argument("from_coeffs: too many coefficients");
    uint64_t idx = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw std::invalid_argument("from_coeffs: coefficient out of range");
        idx = idx * p_ + coeffs[i];
    }
    return FieldElem(uint32_t(idx));
}

std::vector<uint32_t> FieldCtx::coeffs(FieldElem x) const {
    std::vector<uint32_t> out(n_);
    uint32_t v = x.idx;
    for (uint32_t i = 0; i < n_; ++i) {
        out[i] = v % p_;
        v /= p_;
    }
    return out;
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
    if (p_ == 2) return FieldElem(a.idx ^ b.idx);
    uint32_t x = a.idx, y = b.idx, out = 0, shift = 1;
    while (x | y) {
        uint32_t s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        out += s * shift;
        x /= p_;
        y /= p_;
        shift *= p_;
    }
    return FieldElem(out);
}

FieldElem FieldCtx::neg(FieldElem a) const {
    if (p_ == 2) return a;
    uint32_t x = a.idx, out = 0, shift = 1;
    while (x) {
        uint32_t d = x % p_;
        out += (d ? p_ - d : 0) * shift;
        x /= p_;
        shift *= p_;
    }
    return FieldElem(out);
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const {
    if (p_ == 2) return FieldElem(a.idx ^ b.idx);
    return add(a, neg(b));
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
    if (a.idx == 0 || b.idx == 0) return FieldElem(0);
    uint64_t l = uint64_t(log_table_[a.idx]) + log_table_[b.idx];
    const uint64_t L = order_ - 1;
    if (l >= L) l -= L;
    return FieldElem(exp_table_[l]);
}

FieldElem FieldCtx::inv(FieldElem a) const {
    if (a.idx == 0) throw std::domain_error("inv: zero has no inverse");
    uint32_t l = log_table_[a.idx];
    return FieldElem(exp_table_[l == 0 ? 0 : order_ - 1 - l]);
}

FieldElem FieldCtx::pow(FieldElem x, int64_t e) const {
    const int64_t L = int64_t(order_) - 1;
    if (x.idx == 0) {
        if (e > 0) return FieldElem(0);
        if (e == 0) return one();  // 0^0 = 1 by convention
        throw std::domain_error("pow: zero raised to a negative power");
    }
    int64_t r = e % L;
    if (r < 0) r += L;
    uint64_t l = uint64_t(r) * log_table_[x.idx] % uint64_t(L);
    return FieldElem(exp_table_[l]);
}

FieldElem FieldCtx::frobenius_q(FieldElem x) const { return pow(x, q_); }

FieldElem FieldCtx::subfield_trace(FieldElem x) const {
    if (!in_subfield(x)) throw std::domain_error("subfield_trace: element is not in F_q");
    FieldElem acc = x, t = x;
    for (uint32_t i = 1; i < m_; ++i) {
        t = pow(t, p_);
        acc = add(acc, t);
    }
    if (acc.idx >= p_) throw std::logic_error("subfield_trace: result escaped F_p");
    return acc;
}

bool FieldCtx::is_square_subfield(FieldElem x) const {
    if (p_ == 2) throw std::domain_error("is_square_subfield: undefined in characteristic 2");
    if (x.idx == 0) throw std::domain_error("is_square_subfield: x must be nonzero");
    if (!in_subfield(x)) throw std::domain_error("is_square_subfield: x must lie in F_q");
    return pow(x, (q_ - 1) / 2) == one();
}

FieldElem FieldCtx::primitive_cube_root() const {
    if (p_ == 3) throw std::domain_error("primitive_cube_root: none exists in characteristic 3");
    return FieldElem(exp_table_[(order_ - 1) / 3]);
}

bool FieldCtx::on_unit_circle(FieldElem x) const {
    return x.idx != 0 && log_table_[x.idx] % (q_ - 1) == 0;
}

uint32_t FieldCtx::log(FieldElem x) const {
    if (x.idx == 0) throw std::domain_error("log: zero has no discrete log");
    return log_table_[x.idx];
}

}  // namespace powspec
