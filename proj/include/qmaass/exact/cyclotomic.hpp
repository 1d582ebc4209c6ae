#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmaass/exact/approx.hpp"
#include "qmaass/exact/integer.hpp"

namespace qmaass {

// Phi_M stored sparsely: the monic leading term X^degree is implicit, `lower`
// lists the nonzero (exponent, coefficient) pairs below it.
struct CyclotomicModulus {
    int64_t order = 1;
    int64_t degree = 1;
    std::vector<std::pair<int64_t, int64_t>> lower;
};

namespace detail {

using DensePoly = std::vector<int64_t>;

// Exact division by a monic integer polynomial; throws if a remainder is left.
inline DensePoly divide_exact_monic(DensePoly num, const DensePoly& den)
{
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) {
        throw std::logic_error("divide_exact_monic: degree underflow");
    }
    DensePoly quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const int64_t c = num[i];
        if (c == 0) {
            continue;
        }
        quot[i - dn] = c;
        for (std::size_t k = 0; k <= dn; ++k) {
            num[i - dn + k] -= c * den[k];
        }
    }
    for (std::size_t i = 0; i < dn; ++i) {
        if (num[i] != 0) {
            throw std::logic_error("divide_exact_monic: nonzero remainder");
        }
    }
    return quot;
}

// Phi_n for squarefree n: X^n - 1 divided by Phi_d over proper divisors d | n.
inline DensePoly squarefree_cyclotomic(int64_t n, std::map<int64_t, DensePoly>& memo)
{
    if (auto it = memo.find(n); it != memo.end()) {
        return it->second;
    }
    DensePoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int64_t d : divisors(n)) {
        if (d != n) {
            p = divide_exact_monic(std::move(p), squarefree_cyclotomic(d, memo));
        }
    }
    memo.emplace(n, p);
    return p;
}

} // namespace detail

// Dense integer coefficients of Phi_M, constant term first. Uses
// Phi_M(X) = Phi_rad(M)(X^{M / rad(M)}) so only squarefree orders are divided out.
inline std::vector<int64_t> cyclotomic_polynomial(int64_t order)
{
    if (order < 1) {
        throw std::invalid_argument("cyclotomic order must be positive");
    }
    static std::mutex mu;
    static std::map<int64_t, detail::DensePoly> memo;
    const int64_t rad = radical(order);
    detail::DensePoly base;
    {
        std::lock_guard<std::mutex> lock(mu);
        base = detail::squarefree_cyclotomic(rad, memo);
    }
    const int64_t stretch = order / rad;
    std::vector<int64_t> out((base.size() - 1) * static_cast<std::size_t>(stretch) + 1, 0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        out[i * static_cast<std::size_t>(stretch)] = base[i];
    }
    return out;
}

inline const CyclotomicModulus& cyclotomic_modulus(int64_t order)
{
    static std::mutex mu;
    static std::map<int64_t, std::unique_ptr<CyclotomicModulus>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[order];
    if (!slot) {
        auto poly = cyclotomic_polynomial(order);
        auto m = std::make_unique<CyclotomicModulus>();
        m->order = order;
        m->degree = static_cast<int64_t>(poly.size()) - 1;
        for (int64_t e = 0; e < m->degree; ++e) {
            if (poly[static_cast<std::size_t>(e)] != 0) {
                m->lower.emplace_back(e, poly[static_cast<std::size_t>(e)]);
            }
        }
        slot = std::move(m);
    }
    return *slot;
}

// In-place remainder modulo Phi_M; on return a.size() == degree.
template <class T>
void reduce_mod_cyclotomic(std::vector<T>& a, const CyclotomicModulus& phi)
{
    const auto deg = static_cast<std::size_t>(phi.degree);
    for (std::size_t i = a.size(); i-- > deg;) {
        if (a[i] == 0) {
            continue;
        }
        T c = a[i];
        a[i] = 0;
        const std::size_t base = i - deg;
        for (const auto& [e, k] : phi.lower) {
            a[base + static_cast<std::size_t>(e)] -= c * static_cast<long>(k);
        }
    }
    a.resize(deg, T(0));
}

// Exact element of Q(zeta_M), stored as its remainder modulo Phi_M in the
// power basis 1, zeta_M, ..., zeta_M^{phi(M)-1}. Values are immutable.
class CycNumber {
  public:
    CycNumber() : order_(1), coeffs_(1, BigRat(0)) {}

    explicit CycNumber(const BigRat& r, int64_t order = 1) : order_(order)
    {
        check_order(order);
        coeffs_.assign(static_cast<std::size_t>(cyclotomic_modulus(order).degree), BigRat(0));
        coeffs_[0] = r;
    }

    CycNumber(long n) : CycNumber(BigRat(n)) {} // NOLINT: integers embed implicitly

    // zeta_order^exponent.
    static CycNumber root(int64_t order, int64_t exponent)
    {
        check_order(order);
        std::vector<BigRat> poly(static_cast<std::size_t>(order), BigRat(0));
        poly[static_cast<std::size_t>(mod_floor(exponent, order))] = 1;
        return from_poly(order, std::move(poly));
    }

    // Reduces an arbitrary polynomial in zeta_order.
    static CycNumber from_poly(int64_t order, std::vector<BigRat> poly)
    {
        check_order(order);
        CycNumber out;
        out.order_ = order;
        const auto& phi = cyclotomic_modulus(order);
        if (poly.size() < static_cast<std::size_t>(phi.degree)) {
            poly.resize(static_cast<std::size_t>(phi.degree), BigRat(0));
        }
        reduce_mod_cyclotomic(poly, phi);
        out.coeffs_ = std::move(poly);
        return out;
    }

    int64_t order() const { return order_; }
    const std::vector<BigRat>& coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        for (const auto& c : coeffs_) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }

    // Re-expresses the value in Q(zeta_target); order() must divide target.
    CycNumber lift(int64_t target) const
    {
        if (target == order_) {
            return *this;
        }
        if (target % order_ != 0) {
            throw std::invalid_argument("lift: order does not divide target");
        }
        const int64_t stretch = target / order_;
        std::vector<BigRat> poly(static_cast<std::size_t>(target), BigRat(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            poly[i * static_cast<std::size_t>(stretch)] = coeffs_[i];
        }
        return from_poly(target, std::move(poly));
    }

    std::optional<BigRat> as_rational() const
    {
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) {
                return std::nullopt;
            }
        }
        return coeffs_[0];
    }

    CycNumber operator-() const
    {
        CycNumber r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) { return combine(a, b, +1); }
    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return combine(a, b, -1); }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b)
    {
        const int64_t m = lcm64(a.order_, b.order_);
        const CycNumber x = a.lift(m);
        const CycNumber y = b.lift(m);
        std::vector<BigRat> prod(x.coeffs_.size() + y.coeffs_.size() - 1, BigRat(0));
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
                if (y.coeffs_[j] != 0) {
                    prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
                }
            }
        }
        return from_poly(m, std::move(prod));
    }

    friend CycNumber operator*(const CycNumber& a, const BigRat& s)
    {
        CycNumber r = a;
        for (auto& c : r.coeffs_) {
            c *= s;
        }
        return r;
    }
    friend CycNumber operator*(const BigRat& s, const CycNumber& a) { return a * s; }

    CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
    CycNumber& operator-=(const CycNumber& o) { return *this = *this - o; }
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

    // Multiplication by zeta_order^k without a full product.
    CycNumber times_root(int64_t order, int64_t k) const
    {
        const int64_t m = lcm64(order_, order);
        const CycNumber x = lift(m);
        const auto shift = static_cast<std::size_t>(mod_floor(k * (m / order), m));
        std::vector<BigRat> poly(static_cast<std::size_t>(m), BigRat(0));
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            poly[(i + shift) % static_cast<std::size_t>(m)] = x.coeffs_[i];
        }
        return from_poly(m, std::move(poly));
    }

    CycNumber pow(int64_t e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        CycNumber result(BigRat(1), order_);
        CycNumber base = *this;
        while (e > 0) {
            if (e & 1) {
                result *= base;
            }
            base *= base;
            e >>= 1;
        }
        return result;
    }

    // Multiplicative inverse via the extended Euclidean algorithm in Q[X]
    // against Phi_M. Throws std::domain_error on zero.
    CycNumber inverse() const;

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

    friend bool operator==(const CycNumber& a, const CycNumber& b)
    {
        if (a.order_ == b.order_) {
            return a.coeffs_ == b.coeffs_;
        }
        const int64_t m = lcm64(a.order_, b.order_);
        return a.lift(m).coeffs_ == b.lift(m).coeffs_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    // Numerical value under zeta_M -> e^{2 pi i / M}.
    ApproxComplex embed(unsigned digits = kDefaultDigits) const
    {
        const mpfr_prec_t bits = digits_to_bits(digits + 5);
        ApproxComplex acc{ApproxReal::with_bits(bits), ApproxReal::with_bits(bits)};
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) {
                continue;
            }
            ApproxComplex z = approx_root_of_unity(order_, static_cast<int64_t>(k), bits);
            ApproxReal c = ApproxReal::with_bits(bits);
            mpfr_set_q(c.raw(), coeffs_[k].get_mpq_t(), MPFR_RNDN);
            acc.re = acc.re + c * z.re;
            acc.im = acc.im + c * z.im;
        }
        return acc;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycNumber& a)
    {
        bool first = true;
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
            if (a.coeffs_[k] == 0) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            os << '(' << a.coeffs_[k] << ')';
            if (k > 0) {
                os << "*z" << a.order_ << '^' << k;
            }
        }
        if (first) {
            os << '0';
        }
        return os;
    }

  private:
    static void check_order(int64_t order)
    {
        if (order < 1) {
            throw std::invalid_argument("cyclotomic order must be positive");
        }
    }

    static CycNumber combine(const CycNumber& a, const CycNumber& b, int sign)
    {
        const int64_t m = lcm64(a.order_, b.order_);
        CycNumber x = a.lift(m);
        const CycNumber y = b.lift(m);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (sign > 0) {
                x.coeffs_[i] += y.coeffs_[i];
            } else {
                x.coeffs_[i] -= y.coeffs_[i];
            }
        }
        return x;
    }

    int64_t order_;
    std::vector<BigRat> coeffs_;
};

namespace detail {

using RatPoly = std::vector<BigRat>;

inline void trim(RatPoly& p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    RatPoly r(a.size() + b.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

inline RatPoly poly_sub(RatPoly a, const RatPoly& b)
{
    if (a.size() < b.size()) {
        a.resize(b.size(), BigRat(0));
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] -= b[i];
    }
    trim(a);
    return a;
}

// Quotient and remainder; b must be nonzero after trimming.
inline std::pair<RatPoly, RatPoly> poly_divmod(RatPoly a, const RatPoly& b)
{
    trim(a);
    if (a.size() < b.size()) {
        return {{}, a};
    }
    RatPoly q(a.size() - b.size() + 1, BigRat(0));
    const BigRat lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0) {
            if (i == 0) {
                break;
            }
            continue;
        }
        BigRat c = a[i] / lead;
        q[i - (b.size() - 1)] = c;
        for (std::size_t k = 0; k < b.size(); ++k) {
            a[i - (b.size() - 1) + k] -= c * b[k];
        }
        if (i == 0) {
            break;
        }
    }
    trim(q);
    trim(a);
    return {q, a};
}

} // namespace detail

inline CycNumber CycNumber::inverse() const
{
    if (is_zero()) {
        throw std::domain_error("CycNumber::inverse of zero");
    }
    using detail::RatPoly;
    const auto phi_dense = cyclotomic_polynomial(order_);
    RatPoly r0(phi_dense.begin(), phi_dense.end());
    RatPoly r1 = coeffs_;
    detail::trim(r1);
    // Invariant: r_i = s_i * self (mod Phi); track s only.
    RatPoly s0;
    RatPoly s1{BigRat(1)};
    while (r1.size() > 1) {
        auto [q, rem] = detail::poly_divmod(r0, r1);
        RatPoly s2 = detail::poly_sub(s0, detail::poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant because Phi_M is irreducible.
    const BigRat c = r1.at(0);
    for (auto& v : s1) {
        v /= c;
    }
    return from_poly(order_, std::move(s1));
}

} // namespace qmaass
