#pragma once

#include <ostream>
#include <vector>

#include "qmaass/errors.hpp"
#include "qmaass/modular/mat2.hpp"

namespace qmaass {

enum class Gen : char { T = 'T', R = 'R' };

struct Letter {
    Gen gen;
    long exp;
    friend bool operator==(const Letter&, const Letter&) = default;
};

// Word in T = (1 1; 0 1) and R = (1 0; level 1), times sign * I.
struct GenWord {
    int level = 2;
    std::vector<Letter> letters;
    int sign = 1;

    long exponent_sum() const
    {
        long s = 0;
        for (const auto& l : letters) {
            s += l.exp;
        }
        return s;
    }

    // Appends a letter, merging with the tail and dropping zero exponents.
    void push(Gen g, long e)
    {
        if (e == 0) {
            return;
        }
        if (!letters.empty() && letters.back().gen == g) {
            letters.back().exp += e;
            if (letters.back().exp == 0) {
                letters.pop_back();
            }
            return;
        }
        letters.push_back({g, e});
    }

    friend std::ostream& operator<<(std::ostream& os, const GenWord& w)
    {
        if (w.sign < 0) {
            os << "-";
        }
        if (w.letters.empty()) {
            return os << "I";
        }
        for (const auto& l : w.letters) {
            os << static_cast<char>(l.gen) << '^' << l.exp << ' ';
        }
        return os;
    }
};

inline Mat2 generator_matrix(Gen g, int level, long e = 1)
{
    if (g == Gen::T) {
        return Mat2::T(e);
    }
    return {1, 0, level * e, 1};
}

inline Mat2 reconstruct(const GenWord& w)
{
    Mat2 m;
    for (const auto& l : w.letters) {
        m = m * generator_matrix(l.gen, w.level, l.exp);
    }
    return w.sign < 0 ? -m : m;
}

namespace detail {

// Nearest integer to x / y, halves rounded toward zero.
inline BigInt round_half_to_zero(const BigInt& x, const BigInt& y)
{
    BigRat q(x, y);
    q.canonicalize();
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    const BigRat frac = q - BigRat(fl);
    if (frac < BigRat(1, 2)) {
        return fl;
    }
    if (frac > BigRat(1, 2)) {
        return fl + 1;
    }
    return q > 0 ? fl : BigInt(fl + 1);
}

} // namespace detail

// Euclidean descent on the first column of g in Gamma_0(level), level 2 or 4.
inline GenWord decompose_word(const Mat2& g, int level)
{
    if (level != 2 && level != 4) {
        throw std::invalid_argument("decompose_word: level must be 2 or 4");
    }
    if (!gamma0_member(g, level)) {
        throw NotInGroup("decompose_word: matrix not in Gamma_0(level)");
    }
    BigInt a = g.a.get_num(), b = g.b.get_num(), c = g.c.get_num(), d = g.d.get_num();
    GenWord w;
    w.level = level;
    const BigInt k = level;
    while (c != 0) {
        // T^{-n} on the left.
        const BigInt n = detail::round_half_to_zero(a, c);
        a -= n * c;
        b -= n * d;
        w.push(Gen::T, to_int64(n));
        if (c == 0) {
            break;
        }
        // R^{-m} on the left.
        const BigInt m = detail::round_half_to_zero(c, k * a);
        c -= k * m * a;
        d -= k * m * b;
        w.push(Gen::R, to_int64(m));
    }
    // Remainder is sigma * T^{sigma b} with sigma = a = d = +-1.
    const int sigma = a > 0 ? 1 : -1;
    w.push(Gen::T, to_int64(sigma * b));
    if (sigma < 0 && level == 2) {
        // -I = (R T^{-1})^2.
        w.push(Gen::R, 1);
        w.push(Gen::T, -1);
        w.push(Gen::R, 1);
        w.push(Gen::T, -1);
    } else {
        w.sign = sigma;
    }
    return w;
}

} // namespace qmaass
