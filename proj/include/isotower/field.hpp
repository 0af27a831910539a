#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isotower/util.hpp"

namespace isotower {

// F_{q^k} with the canonical modulus: the lexicographically smallest monic
// irreducible polynomial of degree k over F_q, coefficients compared
// low-degree-first as integers in [0, q).
//
// Elements are stored as codes in [0, q^k): base-q digits give the
// coefficient vector, low degree first. The whole field is enumerated once
// into exp/log tables (the enumeration cap bounds q^k), so multiplication
// and square tests are table lookups while addition is digit arithmetic.
class Ext {
public:
    static constexpr int64_t kDefaultCap = 10000000; // 10^7

    Ext(int64_t q, int k, int64_t cap = kDefaultCap);

    int64_t q() const { return q_; }
    int k() const { return k_; }
    int64_t order() const { return size_; } // q^k
    const std::vector<int64_t>& modulus() const { return modulus_; }

    int32_t zero() const { return 0; }
    int32_t one() const { return one_; }
    int32_t generator() const { return gen_; }

    int32_t add(int32_t a, int32_t b) const;
    int32_t sub(int32_t a, int32_t b) const;
    int32_t neg(int32_t a) const;
    int32_t mul(int32_t a, int32_t b) const {
        if (a == 0 || b == 0) return 0;
        int64_t e = (int64_t)log_[a] + log_[b];
        if (e >= size_ - 1) e -= size_ - 1;
        return exp_[e];
    }
    int32_t inv(int32_t a) const {
        if (a == 0) throw ParamError("division by zero");
        int64_t e = log_[a] == 0 ? 0 : size_ - 1 - log_[a];
        return exp_[e];
    }
    int32_t div(int32_t a, int32_t b) const { return mul(a, inv(b)); }
    int32_t pow(int32_t a, int64_t e) const;
    int32_t from_int(int64_t c) const; // constant embedding of Z
    int32_t scale(int64_t c, int32_t a) const { return mul(from_int(c), a); }

    int64_t dlog(int32_t a) const {
        if (a == 0) throw ParamError("dlog of zero");
        return log_[a];
    }
    bool is_square(int32_t a) const {
        if (a == 0) return true;
        if (q_ == 2) return true;
        return (log_[a] & 1) == 0;
    }
    // Deterministic square root: the root with the smaller canonical
    // encoding, or nullopt for non-squares. Exhaustive scan below the
    // threshold, Tonelli-Shanks above it; both canonicalize identically.
    std::optional<int32_t> sqrt(int32_t a, int64_t exhaustive_threshold = 100000) const;
    std::optional<int32_t> sqrt_exhaustive(int32_t a) const;
    std::optional<int32_t> sqrt_tonelli(int32_t a) const;

    int64_t multiplicative_order(int32_t a) const;
    int32_t frobenius(int32_t a) const { return pow(a, q_); }

    // Canonical total order on elements: coefficient vectors compared
    // low-degree-first. ord_key is monotone for that order.
    int64_t ord_key(int32_t a) const { return ordkey_[a]; }

    std::string encode(int32_t a) const;               // "c0,c1,...,c_{k-1}"
    int32_t decode(const std::string& s) const;
    std::string modulus_string() const;

    // digit access (coefficient of x^i)
    int64_t coeff(int32_t a, int i) const;
    int32_t from_coeffs(const std::vector<int64_t>& c) const;

private:
    int64_t q_;
    int k_;
    int64_t size_;
    int32_t one_, gen_;
    std::vector<int64_t> modulus_;
    std::vector<int32_t> log_, exp_;
    std::vector<int64_t> ordkey_;

    void build_tables();
};

using ExtPtr = std::shared_ptr<const Ext>;

ExtPtr make_extension(int64_t q, int k, int64_t cap = Ext::kDefaultCap);

// Value-style element for the public API; arithmetic checks parents.
struct FieldElement {
    ExtPtr F;
    int32_t code = 0;

    FieldElement() = default;
    FieldElement(ExtPtr f, int32_t c) : F(std::move(f)), code(c) {}

    FieldElement operator+(const FieldElement& o) const { return {same(o), F->add(code, o.code)}; }
    FieldElement operator-(const FieldElement& o) const { return {same(o), F->sub(code, o.code)}; }
    FieldElement operator*(const FieldElement& o) const { return {same(o), F->mul(code, o.code)}; }
    FieldElement operator/(const FieldElement& o) const { return {same(o), F->div(code, o.code)}; }
    bool operator==(const FieldElement& o) const { return F == o.F && code == o.code; }
    std::string str() const { return F->encode(code); }

private:
    ExtPtr same(const FieldElement& o) const {
        if (F != o.F) throw ParamError("field elements with mismatched parents");
        return F;
    }
};

} // namespace isotower
