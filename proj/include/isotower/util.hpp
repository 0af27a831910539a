#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace isotower {

// Error taxonomy mirrored by the CLI exit codes.
struct ParamError : std::runtime_error {
    explicit ParamError(const std::string& m) : std::runtime_error(m) {}
};
struct CapError : std::runtime_error {
    explicit CapError(const std::string& m) : std::runtime_error(m) {}
};
struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& m) : std::runtime_error(m) {}
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw CheckError(msg);
}

inline int thread_budget() {
    if (const char* s = std::getenv("ISOTOWER_THREADS")) {
        int n = std::atoi(s);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Index-sliced parallel loop. Results must be written to disjoint,
// index-addressed slots so the outcome is schedule-independent.
inline void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& body) {
    int nt = thread_budget();
    if (nt <= 1 || n < 4096) {
        body(0, n);
        return;
    }
    if (nt > 16) nt = 16;
    std::vector<std::thread> pool;
    int64_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        int64_t lo = t * chunk, hi = std::min<int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

inline int64_t gcd64(int64_t a, int64_t b) {
    while (b) { int64_t t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

inline int64_t pow_mod(int64_t b, int64_t e, int64_t m) {
    int64_t r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

inline bool is_prime_i64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime factorization by trial division; desk scale only.
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

// Multiplicative order of a modulo m, gcd(a,m)=1.
inline int64_t order_mod(int64_t a, int64_t m) {
    if (m == 1) return 1;
    a %= m;
    if (a < 0) a += m;
    if (gcd64(a, m) != 1) throw ParamError("order_mod: gcd(a,m) != 1");
    int64_t phi = 1;
    for (auto [p, e] : factorize(m)) {
        int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        phi *= pe / p * (p - 1);
    }
    int64_t ord = phi;
    for (auto [p, e] : factorize(phi)) {
        (void)e;
        while (ord % p == 0 && pow_mod(a, ord / p, m) == 1) ord /= p;
    }
    return ord;
}

inline int64_t euler_phi(int64_t n) {
    int64_t r = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        r = r / p * (p - 1);
    }
    return r;
}

// Kronecker symbol (a|n).
inline int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    if (v & 1) {
        int64_t am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // n odd and positive from here on
    for (;;) {
        a %= n;
        if (a < 0) a += n;
        if (a == 0) return n == 1 ? k : 0;
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        if (a % 4 == 3 && n % 4 == 3) k = -k;
        std::swap(a, n);
    }
}

} // namespace isotower
