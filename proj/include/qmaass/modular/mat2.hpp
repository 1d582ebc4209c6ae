#pragma once

#include <complex>
#include <ostream>
#include <stdexcept>

#include "qmaass/errors.hpp"
#include "qmaass/exact/integer.hpp"

namespace qmaass {

struct Mat2 {
    BigRat a{1}, b{0}, c{0}, d{1};

    Mat2() = default;
    Mat2(BigRat a_, BigRat b_, BigRat c_, BigRat d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_))
    {
    }
    Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return {}; }
    static Mat2 T(long n = 1) { return {1, n, 0, 1}; }
    static Mat2 S() { return {0, -1, 1, 0}; }

    BigRat det() const { return a * d - b * c; }

    bool is_integral() const
    {
        return a.get_den() == 1 && b.get_den() == 1 && c.get_den() == 1 && d.get_den() == 1;
    }

    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    friend Mat2 operator*(const Mat2& g, const Mat2& h)
    {
        return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
                g.c * h.b + g.d * h.d};
    }

    friend bool operator==(const Mat2& g, const Mat2& h)
    {
        return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
    }

    friend std::ostream& operator<<(std::ostream& os, const Mat2& g)
    {
        return os << '(' << g.a << ' ' << g.b << "; " << g.c << ' ' << g.d << ')';
    }
};

inline Mat2 mat_mul(const Mat2& g, const Mat2& h) { return g * h; }

inline Mat2 mat_inv(const Mat2& g)
{
    const BigRat D = g.det();
    if (D == 0) {
        throw std::domain_error("mat_inv: singular matrix");
    }
    return {g.d / D, -g.b / D, -g.c / D, g.a / D};
}

inline Mat2 mat_pow(Mat2 g, long e)
{
    if (e < 0) {
        g = mat_inv(g);
        e = -e;
    }
    Mat2 r;
    while (e > 0) {
        if (e & 1) {
            r = r * g;
        }
        g = g * g;
        e >>= 1;
    }
    return r;
}

// Point of P^1(Q) as a coprime pair (num : den) with den >= 0; infinity is (1 : 0).
struct P1Point {
    BigInt num{1};
    BigInt den{0};

    P1Point() = default;
    P1Point(BigInt n, BigInt dn) : num(std::move(n)), den(std::move(dn)) { normalize(); }

    static P1Point infinity() { return {}; }
    static P1Point from_rat(const BigRat& x) { return {x.get_num(), x.get_den()}; }

    bool is_infinity() const { return den == 0; }
    BigRat to_rat() const
    {
        if (is_infinity()) {
            throw std::domain_error("P1Point: infinity has no rational value");
        }
        BigRat r(num, den);
        r.canonicalize();
        return r;
    }

    friend bool operator==(const P1Point& x, const P1Point& y) { return x.num == y.num && x.den == y.den; }

    friend std::ostream& operator<<(std::ostream& os, const P1Point& x)
    {
        if (x.is_infinity()) {
            return os << "inf";
        }
        return os << x.num << '/' << x.den;
    }

  private:
    void normalize()
    {
        if (num == 0 && den == 0) {
            throw std::invalid_argument("P1Point: (0 : 0)");
        }
        BigInt g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        num /= g;
        den /= g;
        if (den < 0 || (den == 0 && num < 0)) {
            num = -num;
            den = -den;
        }
    }
};

// Moebius action on P^1(Q); cx + d = 0 yields infinity.
inline P1Point mat_act(const Mat2& g, const P1Point& x)
{
    if (x.is_infinity()) {
        if (g.c == 0) {
            return P1Point::infinity();
        }
        return P1Point::from_rat(g.a / g.c);
    }
    const BigRat r = x.to_rat();
    const BigRat den = g.c * r + g.d;
    if (den == 0) {
        return P1Point::infinity();
    }
    return P1Point::from_rat((g.a * r + g.b) / den);
}

inline BigRat mat_act(const Mat2& g, const BigRat& x)
{
    const BigRat den = g.c * x + g.d;
    if (den == 0) {
        throw PoleError("mat_act: cx + d = 0");
    }
    return (g.a * x + g.b) / den;
}

// Action on the upper half plane in floating point.
template <class Real>
std::complex<Real> mat_act(const Mat2& g, const std::complex<Real>& z)
{
    const auto cv = [](const BigRat& q) { return static_cast<Real>(q.get_d()); };
    return (cv(g.a) * z + cv(g.b)) / (cv(g.c) * z + cv(g.d));
}

inline bool gamma0_member(const Mat2& g, int64_t N)
{
    if (!g.is_integral() || g.det() != 1) {
        return false;
    }
    return mod_floor(g.c.get_num(), N) == 0;
}

} // namespace qmaass
