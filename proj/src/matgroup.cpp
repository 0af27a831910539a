#include "isotower/matgroup.hpp"

#include <sstream>

namespace isotower {

GL2Mod::GL2Mod(int64_t mod, int64_t a, int64_t b, int64_t c, int64_t d) : m(mod) {
    if (mod < 2) throw ParamError("matrix modulus must be >= 2");
    auto red = [mod](int64_t x) { return ((x % mod) + mod) % mod; };
    e = {red(a), red(b), red(c), red(d)};
}

GL2Mod GL2Mod::mul(const GL2Mod& o) const {
    if (m != o.m) throw ParamError("matrix moduli differ");
    return GL2Mod(m, e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
                  e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]);
}

int64_t GL2Mod::det() const { return ((e[0] * e[3] - e[1] * e[2]) % m + m) % m; }

GL2Mod GL2Mod::inv() const {
    int64_t d = det();
    if (gcd64(d, m) != 1) throw ParamError("matrix not invertible mod " + std::to_string(m));
    // d^-1 mod m via order trick is wasteful; extended Euclid:
    int64_t t0 = 0, t1 = 1, r0 = m, r1 = d;
    while (r1 != 0) {
        int64_t qq = r0 / r1;
        t0 -= qq * t1;
        std::swap(t0, t1);
        r0 -= qq * r1;
        std::swap(r0, r1);
    }
    int64_t dinv = ((t0 % m) + m) % m;
    return GL2Mod(m, e[3] * dinv, -e[1] * dinv, -e[2] * dinv, e[0] * dinv);
}

GL2Mod GL2Mod::reduce_mod(int64_t m2) const {
    if (m % m2 != 0) throw ParamError("reduction target must divide the modulus");
    return GL2Mod(m2, e[0], e[1], e[2], e[3]);
}

std::string GL2Mod::str() const {
    std::ostringstream os;
    os << e[0] << ',' << e[1] << ';' << e[2] << ',' << e[3] << '@' << m;
    return os.str();
}

GL2Mod GL2Mod::parse(const std::string& s) {
    int64_t a, b, c, d, m;
    char c1, c2, c3, c4;
    std::istringstream is(s);
    if (!(is >> a >> c1 >> b >> c2 >> c >> c3 >> d >> c4 >> m) || c1 != ',' || c2 != ';' ||
        c3 != ',' || c4 != '@')
        throw ParamError("bad matrix encoding: " + s);
    return GL2Mod(m, a, b, c, d);
}

int64_t gl2_order(int64_t p, int n) {
    if (!is_prime_i64(p)) throw ParamError("gl2_order needs a prime p");
    if (n < 1) throw ParamError("gl2_order needs level n >= 1");
    int64_t r = (p * p - 1) * (p * p - p);
    int64_t pn = 1;
    for (int i = 0; i < n - 1; ++i) pn *= p * p * p * p;
    r *= pn;
    // the formula is brute-checked for small moduli
    int64_t mod = 1;
    for (int i = 0; i < n; ++i) mod *= p;
    if (mod <= 27) require(gl2_brute_count(mod) == r, "gl2_order formula disagrees with brute count");
    return r;
}

int64_t gl2_brute_count(int64_t m) {
    int64_t count = 0;
    for (int64_t a = 0; a < m; ++a)
        for (int64_t b = 0; b < m; ++b)
            for (int64_t c = 0; c < m; ++c)
                for (int64_t d = 0; d < m; ++d)
                    if (gcd64(((a * d - b * c) % m + m) % m, m) == 1) ++count;
    return count;
}

int64_t unit_index(int64_t m, int64_t l) {
    if (gcd64(l, m) != 1) throw ParamError("unit_index: gcd(l, m) != 1");
    if (m == 1) return 1;
    return euler_phi(m) / order_mod(l, m);
}

std::vector<int64_t> primes_up_to(int64_t bound) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<int64_t> out;
    for (int64_t i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (int64_t j = i * i; j <= bound; j += i) comp[j] = true;
        }
    }
    return out;
}

std::pair<int64_t, int64_t> generator_density(int64_t p, int64_t N, int64_t bound) {
    if (!(N == 1 || N == 2)) throw ParamError("generator_density requires N in {1,2}");
    if (p <= 2 || !is_prime_i64(p)) throw ParamError("generator_density requires an odd prime p");
    if (bound < 1000) throw ParamError("generator_density bound must be >= 1000");
    int64_t m = N * p * p;
    int64_t group = euler_phi(m);
    int64_t gen = 0, total = 0;
    for (int64_t l : primes_up_to(bound)) {
        if (p % l == 0 || N % l == 0 || l == p) continue;
        if (gcd64(l, m) != 1) continue;
        ++total;
        if (order_mod(l, m) == group) ++gen;
    }
    return {gen, total};
}

std::vector<GL2Mod> congruence_subgroup_matrices(int64_t p, int n, int m) {
    if (!(n > m && m >= 0)) throw ParamError("congruence subgroup needs n > m >= 0");
    int64_t pn = 1, pm = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    for (int i = 0; i < m; ++i) pm *= p;
    int64_t r = pn / pm; // residues per entry
    std::vector<GL2Mod> out;
    out.reserve(r * r * r * r);
    for (int64_t a = 0; a < r; ++a)
        for (int64_t b = 0; b < r; ++b)
            for (int64_t c = 0; c < r; ++c)
                for (int64_t d = 0; d < r; ++d) {
                    GL2Mod g(pn, 1 + a * pm, b * pm, c * pm, 1 + d * pm);
                    if (g.is_invertible()) out.push_back(g);
                }
    int64_t expect;
    if (m == 0) {
        expect = gl2_order(p, n);
    } else {
        expect = 1;
        for (int i = 0; i < 4 * (n - m); ++i) expect *= p;
    }
    require((int64_t)out.size() == expect, "congruence subgroup (matrix kind) has unexpected order");
    return out;
}

std::vector<int64_t> congruence_subgroup_units(int64_t p, int n, int m) {
    if (!(n > m && m >= 0)) throw ParamError("congruence subgroup needs n > m >= 0");
    int64_t pn = 1, pm = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    for (int i = 0; i < m; ++i) pm *= p;
    std::vector<int64_t> out;
    for (int64_t x = 1; x < pn; x += (m == 0 ? 1 : pm)) {
        if (m == 0) {
            if (gcd64(x, p) == 1) out.push_back(x);
        } else if (x % pm == 1) {
            out.push_back(x);
        }
    }
    if (m > 0)
        require((int64_t)out.size() == pn / pm, "congruence subgroup (unit kind) has unexpected order");
    return out;
}

} // namespace isotower
