#pragma once

// Exact arithmetic in F_q = GF(p^r) with a designated primitive element
// alpha.  Elements carry a dual representation: a discrete log index for
// multiplication and a packed polynomial vector (base-p digits) for
// addition.  Tables are built once per field and shared read-only.

#include <cstdint>
#include <optional>
#include <vector>

#include "torgeo/common.hpp"

namespace torgeo {

/// Element of F_q: either zero or alpha^log with log in [0, q-2].
struct FieldElement {
    int32_t log = -1;  // -1 encodes zero

    static constexpr FieldElement zero() { return FieldElement{-1}; }
    static constexpr FieldElement one() { return FieldElement{0}; }
    static constexpr FieldElement pow_of(int32_t i) { return FieldElement{i}; }

    constexpr bool is_zero() const { return log < 0; }
    friend constexpr bool operator==(FieldElement, FieldElement) = default;
};

/// Immutable description of F_q plus precomputed exp/log tables.
class FieldSpec {
public:
    // modulus: monic degree-r polynomial over Z_p, coefficients c0..cr.
    // Throws not_prime / not_primitive_polynomial / no_default_modulus.
    static FieldSpec make(int p, int r, std::optional<std::vector<int>> modulus = std::nullopt);

    int p() const { return p_; }
    int r() const { return r_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    /// Packed base-p encoding of alpha^i (i in [0, q-2]); codes lie in [1, q-1].
    uint32_t exp_code(int i) const { return exp_table_[i]; }
    /// Discrete log of a nonzero packed code.
    int log_of_code(uint32_t code) const { return log_table_[code]; }

    FieldElement from_code(uint32_t code) const {
        return code == 0 ? FieldElement::zero() : FieldElement::pow_of(log_table_[code]);
    }
    uint32_t to_code(FieldElement a) const { return a.is_zero() ? 0u : exp_table_[a.log]; }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.is_zero() || b.is_zero()) return FieldElement::zero();
        return FieldElement::pow_of((a.log + b.log) % (q_ - 1));
    }

    /// Sum of two packed codes (the additive hot path).
    uint32_t add_code(uint32_t a, uint32_t b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * q_ + b];
        // digit-wise fallback for large odd-characteristic fields
        uint32_t out = 0, mul = 1;
        for (int i = 0; i < r_; ++i) {
            out += mul * ((a % p_ + b % p_) % p_);
            a /= p_;
            b /= p_;
            mul *= p_;
        }
        return out;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        return from_code(add_code(to_code(a), to_code(b)));
    }

    FieldElement neg(FieldElement a) const {
        if (a.is_zero() || p_ == 2) return a;
        return FieldElement::pow_of((a.log + (q_ - 1) / 2) % (q_ - 1));
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    /// pow with the convention zero^0 = 1.
    FieldElement pow(FieldElement a, long long n) const {
        if (a.is_zero()) return n == 0 ? FieldElement::one() : FieldElement::zero();
        long long e = ((a.log * (n % (q_ - 1))) % (q_ - 1) + (q_ - 1)) % (q_ - 1);
        return FieldElement::pow_of(static_cast<int32_t>(e));
    }

    FieldElement inv(FieldElement a) const {
        if (a.is_zero()) fail(errc::bad_input, "inverse of zero");
        return FieldElement::pow_of((q_ - 1 - a.log) % (q_ - 1));
    }

    /// Coefficient vector (c0..c_{r-1}) of an element's polynomial form.
    std::vector<int> unpack(uint32_t code) const {
        std::vector<int> out(r_);
        for (int i = 0; i < r_; ++i) {
            out[i] = static_cast<int>(code % p_);
            code /= p_;
        }
        return out;
    }

private:
    FieldSpec() = default;

    int p_ = 0, r_ = 0, q_ = 0;
    std::vector<int> modulus_;
    std::vector<uint32_t> exp_table_;  // log -> packed code, size q-1
    std::vector<int32_t> log_table_;   // packed code -> log, size q (entry 0 unused)
    std::vector<uint32_t> add_table_;  // q*q packed-code addition, odd p only
};

namespace detail {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest primitive root mod prime p.
inline int primitive_root(int p) {
    if (p == 2) return 1;
    int phi = p - 1;
    std::vector<int> primes;
    int t = phi;
    for (int d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            primes.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) primes.push_back(t);
    for (int g = 2; g < p; ++g) {
        bool ok = true;
        for (int s : primes) {
            long long e = phi / s, acc = 1, base = g;
            while (e) {
                if (e & 1) acc = acc * base % p;
                base = base * base % p;
                e >>= 1;
            }
            if (acc == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    fail(errc::not_prime, "no primitive root: modulus not prime");
}

// Primitive polynomials over Z_p, coefficients c0..cr, for the supported
// default fields (all prime powers q <= 32 plus 64, 81, 128; primes are
// handled via primitive roots).  Each entry is re-verified at build time.
inline std::optional<std::vector<int>> default_modulus(int p, int r) {
    struct Entry { int p, r; std::vector<int> c; };
    static const Entry table[] = {
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {3, 2, {2, 1, 1}},  // u^2 + u + 2, the modulus fixed for F_9
        {2, 4, {1, 1, 0, 0, 1}},
        {5, 2, {2, 1, 1}},
        {3, 3, {1, 2, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 0, 0, 0, 1}},
        {3, 4, {2, 1, 0, 0, 1}},
        {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    };
    for (const auto& e : table)
        if (e.p == p && e.r == r) return e.c;
    return std::nullopt;
}

}  // namespace detail

inline FieldSpec FieldSpec::make(int p, int r, std::optional<std::vector<int>> modulus) {
    if (!detail::is_prime(p)) fail(errc::not_prime, "p = " + std::to_string(p) + " is not prime");
    if (r < 1) fail(errc::bad_input, "extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > 65536) fail(errc::bad_input, "q = p^r exceeds 2^16");
    }

    FieldSpec F;
    F.p_ = p;
    F.r_ = r;
    F.q_ = static_cast<int>(q);

    if (!modulus) {
        if (r == 1) {
            int g = detail::primitive_root(p);
            modulus = std::vector<int>{(p - g) % p, 1};  // u - g
        } else {
            modulus = detail::default_modulus(p, r);
            if (!modulus)
                fail(errc::no_default_modulus,
                     "no built-in primitive polynomial for p=" + std::to_string(p) +
                         ", r=" + std::to_string(r));
        }
    }
    if (static_cast<int>(modulus->size()) != r + 1 || modulus->back() % p != 1)
        fail(errc::bad_input, "modulus must be monic of degree r");
    for (int& c : *modulus) c = ((c % p) + p) % p;
    F.modulus_ = *modulus;

    // Generate powers of alpha (the class of u; for r = 1, the root g of
    // u - g) and require multiplicative order exactly q - 1.
    const int qi = F.q_;
    F.exp_table_.assign(qi - 1, 0);
    F.log_table_.assign(qi, -1);
    std::vector<int> cur(r, 0);
    cur[0] = 1;  // alpha^0

    auto pack = [&](const std::vector<int>& v) {
        uint32_t code = 0;
        for (int i = r - 1; i >= 0; --i) code = code * p + v[i];
        return code;
    };
    auto mul_by_alpha = [&](std::vector<int>& v) {
        if (r == 1) {
            int alpha = (p - F.modulus_[0]) % p;
            v[0] = v[0] * alpha % p;
            return;
        }
        int lead = v[r - 1];
        for (int i = r - 1; i > 0; --i) v[i] = v[i - 1];
        v[0] = 0;
        if (lead)
            for (int i = 0; i < r; ++i) v[i] = ((v[i] - lead * F.modulus_[i]) % p + p) % p;
    };

    for (int i = 0; i < qi - 1; ++i) {
        uint32_t code = pack(cur);
        if (code == 0 || F.log_table_[code] != -1)
            fail(errc::not_primitive_polynomial, "root has multiplicative order < q-1");
        F.exp_table_[i] = code;
        F.log_table_[code] = i;
        mul_by_alpha(cur);
    }
    if (pack(cur) != F.exp_table_[0])
        fail(errc::not_primitive_polynomial, "alpha^(q-1) != 1: modulus not primitive");

    if (p != 2 && qi <= 2048) {
        F.add_table_.assign(static_cast<size_t>(qi) * qi, 0);
        for (uint32_t a = 0; a < static_cast<uint32_t>(qi); ++a) {
            auto va = F.unpack(a);
            for (uint32_t b = 0; b < static_cast<uint32_t>(qi); ++b) {
                auto vb = F.unpack(b);
                std::vector<int> s(r);
                for (int i = 0; i < r; ++i) s[i] = (va[i] + vb[i]) % p;
                F.add_table_[a * qi + b] = pack(s);
            }
        }
    }
    return F;
}

}  // namespace torgeo
