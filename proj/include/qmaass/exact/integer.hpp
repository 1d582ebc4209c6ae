#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qmaass {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(long num, long den = 1)
{
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

// Floor-mod into [0, m).
inline int64_t mod_floor(int64_t a, int64_t m)
{
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline int64_t mod_floor(const BigInt& a, int64_t m)
{
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
}

inline int64_t to_int64(const BigInt& a)
{
    if (!a.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits");
    }
    return a.get_si();
}

inline bool is_prime(int64_t n)
{
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<int64_t> primes_in(int64_t lo, int64_t hi)
{
    std::vector<int64_t> out;
    for (int64_t n = std::max<int64_t>(lo, 2); n <= hi; ++n) {
        if (is_prime(n)) {
            out.push_back(n);
        }
    }
    return out;
}

// Trial division of |n|; (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("factorize(0)");
    }
    uint64_t m = n < 0 ? static_cast<uint64_t>(-(n + 1)) + 1 : static_cast<uint64_t>(n);
    std::vector<std::pair<int64_t, int>> out;
    for (uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            int e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            out.emplace_back(static_cast<int64_t>(d), e);
        }
    }
    if (m > 1) {
        out.emplace_back(static_cast<int64_t>(m), 1);
    }
    return out;
}

inline int64_t euler_phi(int64_t n)
{
    int64_t r = n;
    for (auto [p, e] : factorize(n)) {
        r = r / p * (p - 1);
    }
    return r;
}

inline int64_t radical(int64_t n)
{
    int64_t r = 1;
    for (auto [p, e] : factorize(n)) {
        r *= p;
    }
    return r;
}

inline std::vector<int64_t> divisors(int64_t n)
{
    std::vector<int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                out.push_back(out[j] * pk);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int64_t lcm64(int64_t a, int64_t b)
{
    return a / std::gcd(a, b) * b;
}

// Number of positive divisors.
inline int64_t divisor_count(int64_t n)
{
    int64_t d = 1;
    for (auto [p, e] : factorize(n)) {
        d *= e + 1;
    }
    return d;
}

inline bool is_perfect_square(const BigInt& n, BigInt& root)
{
    if (n < 0) {
        return false;
    }
    return mpz_root(root.get_mpz_t(), n.get_mpz_t(), 2) != 0;
}

} // namespace qmaass
