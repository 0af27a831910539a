#include "isotower/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace isotower {

namespace {

using Poly = std::vector<int64_t>; // low degree first, no trailing zeros required

int deg(const Poly& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, int64_t q) {
    int da = deg(a), db = deg(b);
    if (da < 0 || db < 0) return {};
    Poly r(da + db + 1, 0);
    for (int i = 0; i <= da; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j <= db; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
    }
    // reduce by monic mod
    int dm = deg(mod);
    for (int i = (int)r.size() - 1; i >= dm; --i) {
        if (!r[i]) continue;
        int64_t c = r[i];
        for (int j = 0; j <= dm; ++j) {
            r[i - dm + j] = ((r[i - dm + j] - c * mod[j]) % q + q) % q;
        }
    }
    r.resize(dm);
    return r;
}

Poly poly_powmod(Poly base, int64_t e, const Poly& mod, int64_t q) {
    Poly r = {1};
    r.resize(deg(mod), 0);
    base.resize(deg(mod), 0);
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, mod, q), r.resize(deg(mod), 0);
        base = poly_mul_mod(base, base, mod, q);
        base.resize(deg(mod), 0);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int64_t q) {
    auto inv_mod_q = [&](int64_t x) {
        return pow_mod(x, q - 2, q);
    };
    while (deg(b) >= 0) {
        // a mod b
        int db = deg(b);
        int64_t lead_inv = inv_mod_q(b[db]);
        Poly r = a;
        for (int i = deg(r); i >= db; i = deg(r)) {
            int64_t c = r[i] * lead_inv % q;
            for (int j = 0; j <= db; ++j)
                r[i - db + j] = ((r[i - db + j] - c * b[j]) % q + q) % q;
        }
        a = b;
        b = r;
    }
    return a;
}

// irreducibility over F_q: x^{q^k} == x mod f, and gcd(x^{q^{k/r}} - x, f) = 1
// for every prime r | k.
bool is_irreducible(const Poly& f, int64_t q) {
    int k = deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    Poly x = {0, 1};
    // x^{q^k} mod f by iterated q-th powers
    Poly t = x;
    t.resize(k, 0);
    for (int i = 0; i < k; ++i) t = poly_powmod(t, q, f, q);
    Poly diff = t;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % q + q) % q;
    if (deg(diff) >= 0) return false;
    for (auto [r, e] : factorize(k)) {
        (void)e;
        Poly s = x;
        s.resize(k, 0);
        for (int i = 0; i < k / r; ++i) s = poly_powmod(s, q, f, q);
        Poly d = s;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % q + q) % q;
        Poly g = poly_gcd(f, d, q);
        if (deg(g) != 0) return false;
    }
    return true;
}

} // namespace

Ext::Ext(int64_t q, int k, int64_t cap) : q_(q), k_(k) {
    if (!is_prime_i64(q)) throw ParamError("field characteristic must be prime, got " + std::to_string(q));
    if (q < 5) throw ParamError("characteristic < 5 not supported (short Weierstrass models)");
    if (k < 1) throw ParamError("extension degree must be >= 1");
    size_ = 1;
    for (int i = 0; i < k; ++i) {
        size_ *= q;
        if (size_ > cap) throw CapError("field size q^k exceeds cap " + std::to_string(cap));
    }
    // canonical modulus: smallest (c0,...,c_{k-1}) low-degree-first with
    // x^k + c_{k-1}x^{k-1} + ... + c0 irreducible.
    if (k == 1) {
        modulus_ = {0, 1}; // x
    } else {
        std::vector<int64_t> tail(k, 0);
        bool found = false;
        // lexicographic counter over (c0,...,c_{k-1}), c0 most significant
        std::vector<int64_t> c(k, 0);
        auto bump = [&]() {
            for (int i = k - 1; i >= 0; --i) {
                if (++c[i] < q) return true;
                c[i] = 0;
            }
            return false;
        };
        do {
            Poly f(k + 1, 0);
            for (int i = 0; i < k; ++i) f[i] = c[i];
            f[k] = 1;
            if (is_irreducible(f, q)) {
                modulus_ = f;
                found = true;
                break;
            }
        } while (bump());
        if (!found) throw CheckError("no irreducible polynomial found (impossible)");
        (void)tail;
    }
    build_tables();
}

void Ext::build_tables() {
    one_ = 1; // code of the constant 1
    log_.assign(size_, -1);
    exp_.assign(size_, 0);
    ordkey_.assign(size_, 0);
    // ord_key: digits reversed so low-degree-first lexicographic order
    // becomes numeric order.
    for (int64_t code = 0; code < size_; ++code) {
        int64_t c = code, key = 0;
        for (int i = 0; i < k_; ++i) {
            key = key * q_ + (c % q_);
            c /= q_;
        }
        ordkey_[code] = key;
    }
    // find a generator by walking candidate powers; candidates scanned in
    // canonical element order.
    std::vector<int32_t> order_by_key(size_);
    for (int64_t i = 0; i < size_; ++i) order_by_key[i] = (int32_t)i;
    std::sort(order_by_key.begin(), order_by_key.end(),
              [&](int32_t a, int32_t b) { return ordkey_[a] < ordkey_[b]; });

    auto code_to_poly = [&](int32_t code) {
        Poly p(k_, 0);
        int64_t c = code;
        for (int i = 0; i < k_; ++i) { p[i] = c % q_; c /= q_; }
        return p;
    };
    auto poly_to_code = [&](const Poly& p) {
        int64_t code = 0;
        for (int i = k_ - 1; i >= 0; --i) code = code * q_ + (i < (int)p.size() ? p[i] : 0);
        return (int32_t)code;
    };

    for (int32_t cand : order_by_key) {
        if (cand == 0 || cand == one_) continue;
        Poly g = code_to_poly(cand);
        Poly acc = {1};
        acc.resize(k_, 0);
        int64_t steps = 0;
        std::fill(log_.begin(), log_.end(), -1);
        bool full = true;
        for (;;) {
            int32_t code = poly_to_code(acc);
            if (steps > 0 && code == one_) break;
            if (log_[code] != -1) { full = false; break; }
            log_[code] = (int32_t)steps;
            exp_[steps] = code;
            acc = poly_mul_mod(acc, g, modulus_, q_);
            acc.resize(k_, 0);
            ++steps;
            if (steps > size_) { full = false; break; }
        }
        if (full && steps == size_ - 1) {
            gen_ = cand;
            return;
        }
    }
    throw CheckError("no multiplicative generator found (impossible)");
}

int32_t Ext::add(int32_t a, int32_t b) const {
    int64_t r = 0, mul = 1, aa = a, bb = b;
    for (int i = 0; i < k_; ++i) {
        int64_t d = (aa % q_ + bb % q_) % q_;
        r += d * mul;
        mul *= q_;
        aa /= q_;
        bb /= q_;
    }
    return (int32_t)r;
}

int32_t Ext::sub(int32_t a, int32_t b) const { return add(a, neg(b)); }

int32_t Ext::neg(int32_t a) const {
    int64_t r = 0, mul = 1, aa = a;
    for (int i = 0; i < k_; ++i) {
        int64_t d = (q_ - aa % q_) % q_;
        r += d * mul;
        mul *= q_;
        aa /= q_;
    }
    return (int32_t)r;
}

int32_t Ext::pow(int32_t a, int64_t e) const {
    if (a == 0) {
        if (e == 0) return one_;
        if (e < 0) throw ParamError("division by zero");
        return 0;
    }
    int64_t n = size_ - 1;
    int64_t le = (int64_t)log_[a] % n * (e % n) % n;
    le = ((le % n) + n) % n;
    return exp_[le];
}

int32_t Ext::from_int(int64_t c) const {
    c %= q_;
    if (c < 0) c += q_;
    return (int32_t)c;
}

std::optional<int32_t> Ext::sqrt_exhaustive(int32_t a) const {
    if (a == 0) return 0;
    // scan in canonical order; the first hit is the canonical root
    std::vector<int32_t> order_by_key(size_);
    for (int64_t i = 0; i < size_; ++i) order_by_key[i] = (int32_t)i;
    std::sort(order_by_key.begin(), order_by_key.end(),
              [&](int32_t x, int32_t y) { return ordkey_[x] < ordkey_[y]; });
    for (int32_t r : order_by_key)
        if (r != 0 && mul(r, r) == a) return r;
    return std::nullopt;
}

std::optional<int32_t> Ext::sqrt_tonelli(int32_t a) const {
    if (a == 0) return 0;
    if (!is_square(a)) return std::nullopt;
    int64_t n = size_ - 1;
    // write n = 2^s * t
    int64_t t = n, s = 0;
    while ((t & 1) == 0) { t >>= 1; ++s; }
    int32_t r;
    if (s == 1) {
        r = pow(a, (n + 2) / 4); // field order ≡ 3 mod 4
    } else {
        // find a non-square z (smallest canonical)
        int32_t z = 0;
        for (int64_t e = 1; e < n; ++e)
            if (log_[exp_[e]] & 1) { z = exp_[e]; break; }
        int32_t c = pow(z, t);
        r = pow(a, (t + 1) / 2);
        int32_t u = pow(a, t);
        int64_t m = s;
        while (u != one_) {
            int64_t i = 0;
            int32_t v = u;
            while (v != one_) { v = mul(v, v); ++i; }
            int32_t b = c;
            for (int64_t j = 0; j < m - i - 1; ++j) b = mul(b, b);
            r = mul(r, b);
            c = mul(b, b);
            u = mul(u, c);
            m = i;
        }
    }
    int32_t r2 = neg(r);
    return ordkey_[r] <= ordkey_[r2] ? r : r2;
}

std::optional<int32_t> Ext::sqrt(int32_t a, int64_t threshold) const {
    if (size_ <= threshold) {
        // fast equivalent of the exhaustive scan: both roots via the log
        // table, canonical pick; the literal scan lives in tests as oracle.
        if (a == 0) return 0;
        if (!is_square(a)) return std::nullopt;
        int32_t r = exp_[log_[a] / 2];
        int32_t r2 = neg(r);
        return ordkey_[r] <= ordkey_[r2] ? r : r2;
    }
    return sqrt_tonelli(a);
}

int64_t Ext::multiplicative_order(int32_t a) const {
    if (a == 0) throw ParamError("multiplicative order of zero");
    int64_t n = size_ - 1;
    int64_t d = gcd64(log_[a], n);
    return n / d;
}

std::string Ext::encode(int32_t a) const {
    std::ostringstream os;
    int64_t c = a;
    for (int i = 0; i < k_; ++i) {
        if (i) os << ',';
        os << c % q_;
        c /= q_;
    }
    return os.str();
}

int32_t Ext::decode(const std::string& s) const {
    std::vector<int64_t> c;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) c.push_back(std::stoll(tok));
    if ((int)c.size() != k_) throw ParamError("element encoding has wrong coefficient count: " + s);
    return from_coeffs(c);
}

std::string Ext::modulus_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < modulus_.size(); ++i) {
        if (i) os << ',';
        os << modulus_[i];
    }
    return os.str();
}

int64_t Ext::coeff(int32_t a, int i) const {
    int64_t c = a;
    for (int j = 0; j < i; ++j) c /= q_;
    return c % q_;
}

int32_t Ext::from_coeffs(const std::vector<int64_t>& c) const {
    int64_t code = 0;
    for (int i = k_ - 1; i >= 0; --i) {
        int64_t d = i < (int)c.size() ? ((c[i] % q_) + q_) % q_ : 0;
        code = code * q_ + d;
    }
    return (int32_t)code;
}

ExtPtr make_extension(int64_t q, int k, int64_t cap) {
    // process-wide cache: fields are canonical, so share them
    static std::map<std::pair<int64_t, int>, std::weak_ptr<const Ext>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(q, k);
    if (auto it = cache.find(key); it != cache.end())
        if (auto p = it->second.lock()) return p;
    auto p = std::make_shared<const Ext>(q, k, cap);
    cache[key] = p;
    return p;
}

} // namespace isotower
