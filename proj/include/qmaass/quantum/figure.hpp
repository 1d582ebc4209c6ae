#pragma once

#include <set>
#include <vector>

#include "qmaass/quantum/forms.hpp"

namespace qmaass {

// Reduced fractions a/c in (-1, 1) with c in the listed denominators, minus
// the pole -1/4. Every denominator is odd or divisible by 4, so each point is
// in the domain of f_L. The list yields exactly 200 points.
inline std::vector<BigRat> figure1_grid()
{
    static const long dens[] = {1, 3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19};
    std::set<BigRat> pts;
    for (long c : dens) {
        for (long a = -c + 1; a < c; ++a) {
            if (std::gcd(a, c) != 1) {
                continue;
            }
            BigRat x(a, c);
            x.canonicalize();
            if (x != BigRat(-1, 4)) {
                pts.insert(x);
            }
        }
    }
    return {pts.begin(), pts.end()};
}

// lo + k (hi - lo) / count for k = 0..count-1, exact.
inline std::vector<BigRat> uniform_grid(const BigRat& lo, const BigRat& hi, long count)
{
    std::vector<BigRat> out;
    for (long k = 0; k < count; ++k) {
        BigRat x = lo + (hi - lo) * BigRat(k, count);
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

struct FigureRow {
    BigRat x;
    bool defined = false;
    CycNumber h;
    CycNumber H;
};

// h = cocycle of f at gamma; H = cocycle of T_p f. Points outside the domain
// or at the pole come back with defined = false.
inline FigureRow figure_row(QForm f, const Mat2& gamma, const BigRat& x, int64_t hecke_p, unsigned workers = 1)
{
    FigureRow row;
    row.x = x;
    try {
        row.h = cocycle(f, gamma, QPoint(x)).exact;
        if (hecke_p > 0) {
            row.H = hecke_cocycle(f, hecke_p, gamma, QPoint(x), workers).exact;
        }
        row.defined = true;
    } catch (const DomainError&) {
    } catch (const PoleError&) {
    }
    return row;
}

} // namespace qmaass
