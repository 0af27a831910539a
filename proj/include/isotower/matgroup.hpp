#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isotower/util.hpp"

namespace isotower {

// 2x2 matrix over Z/mZ with invertible determinant.
struct GL2Mod {
    int64_t m = 1;
    std::array<int64_t, 4> e{1, 0, 0, 1}; // row major: a b / c d

    GL2Mod() = default;
    GL2Mod(int64_t mod, int64_t a, int64_t b, int64_t c, int64_t d);

    static GL2Mod identity(int64_t m) { return GL2Mod(m, 1, 0, 0, 1); }
    GL2Mod mul(const GL2Mod& o) const;
    GL2Mod inv() const;
    int64_t det() const;
    GL2Mod reduce_mod(int64_t m2) const;
    bool operator==(const GL2Mod& o) const { return m == o.m && e == o.e; }
    bool operator<(const GL2Mod& o) const { return e < o.e; }
    std::string str() const; // "a,b;c,d@m"
    static GL2Mod parse(const std::string& s);

    bool is_invertible() const { return gcd64(det(), m) == 1; }
};

// |GL2(Z/p^n)| by the kernel-tower formula; brute-counted below small caps.
int64_t gl2_order(int64_t p, int n);
int64_t gl2_brute_count(int64_t m); // counts invertible 2x2 over Z/mZ

// index [(Z/m)^x : <l>]
int64_t unit_index(int64_t m, int64_t l);

// Fraction of primes l <= bound (l coprime to p*N) that generate (Z/Np^2)^x.
// Returns {#generators, #primes considered}.
std::pair<int64_t, int64_t> generator_density(int64_t p, int64_t N, int64_t bound);

// Sieve of Eratosthenes.
std::vector<int64_t> primes_up_to(int64_t bound);

enum class SubgroupKind { Matrix, Unit };

// Elements of the congruence subgroup: matrices (resp. units) congruent to
// the identity mod p^m inside GL2(Z/p^n) (resp. (Z/p^n)^x).
std::vector<GL2Mod> congruence_subgroup_matrices(int64_t p, int n, int m);
std::vector<int64_t> congruence_subgroup_units(int64_t p, int n, int m);

} // namespace isotower
