#pragma once

#include <cmath>

#include "qmaass/errors.hpp"
#include "qmaass/exact/integer.hpp"

namespace qmaass {

// Exact comparisons for a + b sqrt(D) with D a positive non-square.
struct QuadSurd {
    BigInt a;
    BigInt b;
    long D;

    QuadSurd operator*(const QuadSurd& o) const { return {a * o.a + D * b * o.b, a * o.b + b * o.a, D}; }

    int sign() const
    {
        const int sa = sgn(a);
        const int sb = sgn(b);
        if (sa >= 0 && sb >= 0) {
            return (sa > 0 || sb > 0) ? 1 : 0;
        }
        if (sa <= 0 && sb <= 0) {
            return -1;
        }
        const int cmp = sgn(BigInt(a * a - D * b * b));
        return sa > 0 ? cmp : -cmp;
    }

    // this >= sqrt(M) for M > 0.
    bool at_least_sqrt(const BigInt& M) const
    {
        if (sign() <= 0) {
            return false;
        }
        const QuadSurd sq{a * a + D * b * b - M, 2 * a * b, D};
        return sq.sign() >= 0;
    }
};

namespace detail {

// Elements xi = u + v sqrt(D) with u^2 - D v^2 in `norms`, lying in the window
// eps^r sqrt|m| <= xi < eps^{r+1} sqrt|m|, where eps = e1 + e2 sqrt(D) > 1 is a
// unit and einv its inverse. Calls visit(u, v) once per element.
template <class Visit>
void enumerate_window(long D, const BigInt& m_abs, const std::vector<int>& norm_signs, const QuadSurd& eps,
                      const QuadSurd& einv, int shift, Visit&& visit)
{
    // |v| <= (eps^{r+1} + eps^{-r}) sqrt|m| / (2 sqrt D); padded in floating point.
    const double e = eps.a.get_d() + eps.b.get_d() * std::sqrt(static_cast<double>(D));
    const double scale = (std::pow(e, shift + 1) + std::pow(e, -shift)) / (2.0 * std::sqrt(static_cast<double>(D)));
    const long vmax = static_cast<long>(std::ceil(scale * std::sqrt(m_abs.get_d()))) + 2;
    QuadSurd lo_mul{1, 0, D};
    for (int i = 0; i < shift; ++i) {
        lo_mul = lo_mul * einv;
    }
    const QuadSurd hi_mul = lo_mul * einv;
    for (long v = -vmax; v <= vmax; ++v) {
        for (int s : norm_signs) {
            const BigInt u2 = BigInt(s) * m_abs + BigInt(D) * v * v;
            BigInt u;
            if (!is_perfect_square(u2, u)) {
                continue;
            }
            for (int us : {1, -1}) {
                if (us < 0 && u == 0) {
                    continue;
                }
                const QuadSurd xi{us * u, v, D};
                if ((xi * lo_mul).at_least_sqrt(m_abs) && !(xi * hi_mul).at_least_sqrt(m_abs)) {
                    visit(BigInt(us * u), BigInt(v));
                }
            }
        }
    }
}

} // namespace detail

// Excess of classes of u^2 - 6 v^2 = m with u + 3v = +-1 (mod 12) over those with
// u + 3v = +-5 (mod 12); classes are orbits of +-(5 + 2 sqrt 6)^Z.
// `window_shift` selects an alternative fundamental domain (same answer).
inline long tc_oracle(long m, int window_shift = 0)
{
    if (m == 0 || mod_floor(m, 24) != 1) {
        throw BadResidue("tc_oracle: m must be 1 mod 24");
    }
    const QuadSurd eps{5, 2, 6};
    const QuadSurd einv{5, -2, 6};
    const int s = m > 0 ? 1 : -1;
    long total = 0;
    detail::enumerate_window(6, BigInt(std::labs(m)), {s}, eps, einv, window_shift,
                             [&](const BigInt& u, const BigInt& v) {
                                 const int64_t r = mod_floor(BigInt(u + 3 * v), 12);
                                 if (r == 1 || r == 11) {
                                     ++total;
                                 } else if (r == 5 || r == 7) {
                                     --total;
                                 } else {
                                     throw std::logic_error("tc_oracle: unexpected residue of u + 3v");
                                 }
                             });
    return total;
}

inline int chi_l_of_norm(long norm_abs)
{
    switch (mod_floor(norm_abs, 16)) {
    case 1:
    case 15:
        return 1;
    case 7:
    case 9:
        return -1;
    default:
        return 0;
    }
}

// Number of ideals of Z[sqrt 2] of norm |n| (elements of norm +-|n| modulo
// +-(1 + sqrt 2)^Z), times chi_L of that norm.
inline long tl_oracle(long n, int window_shift = 0)
{
    if (n == 0 || mod_floor(n, 8) != 1) {
        throw BadResidue("tl_oracle: n must be 1 mod 8");
    }
    const QuadSurd eps{1, 1, 2};
    const QuadSurd einv{-1, 1, 2};
    long count = 0;
    detail::enumerate_window(2, BigInt(std::labs(n)), {1, -1}, eps, einv, window_shift,
                             [&](const BigInt&, const BigInt&) { ++count; });
    return count * chi_l_of_norm(std::labs(n));
}

} // namespace qmaass
