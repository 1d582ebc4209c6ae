#pragma once

#include <map>
#include <vector>

#include "qmaass/coefficients/oracles.hpp"

namespace qmaass {

struct FormulaValue {
    long value = 0;
    // Set when a base value T(p) for the "+-2" case came out 0 and the
    // prime-power value was read from the oracle instead.
    bool oracle_fallback = false;
};

struct SignedPrimePower {
    long p; // signed prime
    int e;
};

// |n| factored into signed primes: q -> q if q = 1 mod `modulus`, else -q.
// The product of the signed powers equals n whenever n = 1 mod `modulus`.
inline std::vector<SignedPrimePower> signed_factorization(long n, long modulus)
{
    std::vector<SignedPrimePower> out;
    for (auto [q, e] : factorize(n)) {
        const long p = mod_floor(q, modulus) == 1 ? q : -q;
        out.push_back({p, e});
    }
    return out;
}

inline long signed_product(const std::vector<SignedPrimePower>& f)
{
    long r = 1;
    for (const auto& [p, e] : f) {
        for (int i = 0; i < e; ++i) {
            r *= p;
        }
    }
    return r;
}

namespace detail {

inline long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

// (-1)^e (e + 1) or e + 1 depending on the base value +-2.
inline long split_prime_power(long base, int e) { return base > 0 ? e + 1 : ((e % 2 == 0) ? 1 : -1) * (e + 1); }

} // namespace detail

inline FormulaValue tc_formula_detail(long n)
{
    FormulaValue out;
    if (n == 0 || mod_floor(n, 24) != 1) {
        return out;
    }
    const auto fac = signed_factorization(n, 6);
    if (signed_product(fac) != n) {
        throw std::logic_error("tc_formula: signed factorization does not reproduce n");
    }
    long value = 1;
    for (const auto& [p, e] : fac) {
        const long r = mod_floor(p, 24);
        long t = 0;
        if (r == 1) {
            const long base = tc_oracle(p);
            if (base == 2 || base == -2) {
                t = detail::split_prime_power(base, e);
            } else {
                out.oracle_fallback = true;
                t = tc_oracle(detail::ipow(p, e));
            }
        } else if (e % 2 == 1) {
            t = 0;
        } else if (r == 13 || r == 19) {
            t = 1;
        } else if (r == 7) {
            t = ((e / 2) % 2 == 0) ? 1 : -1;
        } else {
            throw std::logic_error("tc_formula: signed prime in an impossible class");
        }
        value *= t;
    }
    out.value = value;
    return out;
}

inline long tc_formula(long n) { return tc_formula_detail(n).value; }

inline FormulaValue tl_formula_detail(long n)
{
    FormulaValue out;
    if (n == 0 || mod_floor(n, 8) != 1) {
        return out;
    }
    const auto fac = signed_factorization(n, 4);
    if (signed_product(fac) != n) {
        throw std::logic_error("tl_formula: signed factorization does not reproduce n");
    }
    long value = 1;
    for (const auto& [p, e] : fac) {
        const long r = mod_floor(p, 8);
        long t = 0;
        if (r == 1) {
            const long base = tl_oracle(p);
            if (base == 2 || base == -2) {
                t = detail::split_prime_power(base, e);
            } else {
                out.oracle_fallback = true;
                t = tl_oracle(detail::ipow(p, e));
            }
        } else if (r == 5) {
            t = (e % 2 == 1) ? 0 : (((e / 2) % 2 == 0) ? 1 : -1);
        } else {
            throw std::logic_error("tl_formula: signed prime in an impossible class");
        }
        value *= t;
    }
    out.value = value;
    return out;
}

inline long tl_formula(long n)
{
    if (n % 2 == 0) {
        return 0;
    }
    return tl_formula_detail(n).value;
}

enum class CoeffKind { TC, TL };
enum class Provenance { Formula, Oracle };

struct CoeffTable {
    CoeffKind kind = CoeffKind::TC;
    Provenance provenance = Provenance::Formula;
    std::map<long, long> values; // only nonzero-residue indices are stored

    long at(long n) const
    {
        auto it = values.find(n);
        return it == values.end() ? 0 : it->second;
    }

    // Table over all admissible n with |n| <= bound.
    static CoeffTable build(CoeffKind kind, long bound, Provenance prov = Provenance::Formula)
    {
        CoeffTable t;
        t.kind = kind;
        t.provenance = prov;
        const long step = kind == CoeffKind::TC ? 24 : 8;
        for (long n = 1 - step * (bound / step + 1); n <= bound; n += step) {
            if (n == 0 || std::labs(n) > bound) {
                continue;
            }
            long v = 0;
            if (kind == CoeffKind::TC) {
                v = prov == Provenance::Formula ? tc_formula(n) : tc_oracle(n);
            } else {
                v = prov == Provenance::Formula ? tl_formula(n) : tl_oracle(n);
            }
            t.values[n] = v;
        }
        return t;
    }
};

} // namespace qmaass
