#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace qmaass {

// Decimal digits used when a caller does not ask for anything else.
inline constexpr unsigned kDefaultDigits = 30;

inline mpfr_prec_t digits_to_bits(unsigned digits)
{
    // log2(10) ~ 3.3219; a few guard bits on top.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

// Owning MPFR scalar whose precision is fixed at construction. Binary
// operations produce a result at the larger of the two operand precisions.
class ApproxReal {
  public:
    explicit ApproxReal(unsigned digits = kDefaultDigits)
    {
        mpfr_init2(v_, digits_to_bits(digits));
        mpfr_set_zero(v_, 1);
    }

    ApproxReal(double x, unsigned digits) : ApproxReal(digits) { mpfr_set_d(v_, x, MPFR_RNDN); }

    ApproxReal(const mpq_class& q, unsigned digits) : ApproxReal(digits)
    {
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }

    ApproxReal(const ApproxReal& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    ApproxReal(ApproxReal&& o) noexcept
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    ApproxReal& operator=(const ApproxReal& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    ApproxReal& operator=(ApproxReal&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~ApproxReal() { mpfr_clear(v_); }

    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Scientific notation with the requested number of significant digits.
    std::string str(int digits = 17) const
    {
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
        char* buf = nullptr;
        mpfr_asprintf(&buf, fmt, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    static ApproxReal pi(mpfr_prec_t bits)
    {
        ApproxReal r = with_bits(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    static ApproxReal with_bits(mpfr_prec_t bits)
    {
        ApproxReal r(1u);
        mpfr_set_prec(r.v_, bits);
        mpfr_set_zero(r.v_, 1);
        return r;
    }

    friend ApproxReal operator+(const ApproxReal& a, const ApproxReal& b)
    {
        ApproxReal r = with_bits(std::max(a.bits(), b.bits()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ApproxReal operator-(const ApproxReal& a, const ApproxReal& b)
    {
        ApproxReal r = with_bits(std::max(a.bits(), b.bits()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ApproxReal operator*(const ApproxReal& a, const ApproxReal& b)
    {
        ApproxReal r = with_bits(std::max(a.bits(), b.bits()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ApproxReal operator/(const ApproxReal& a, const ApproxReal& b)
    {
        ApproxReal r = with_bits(std::max(a.bits(), b.bits()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    ApproxReal operator-() const
    {
        ApproxReal r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const ApproxReal& a, const ApproxReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

    friend ApproxReal sqrt(const ApproxReal& a)
    {
        ApproxReal r = with_bits(a.bits());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend ApproxReal abs(const ApproxReal& a)
    {
        ApproxReal r = with_bits(a.bits());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

// Complex value at a fixed working precision; the embedding target for exact
// cyclotomic numbers.
struct ApproxComplex {
    ApproxReal re;
    ApproxReal im;

    explicit ApproxComplex(unsigned digits = kDefaultDigits) : re(digits), im(digits) {}
    ApproxComplex(ApproxReal r, ApproxReal i) : re(std::move(r)), im(std::move(i)) {}

    friend ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    ApproxReal abs() const { return sqrt(re * re + im * im); }
};

// Unit root e^{2 pi i k / m} at the given precision.
inline ApproxComplex approx_root_of_unity(int64_t m, int64_t k, mpfr_prec_t bits)
{
    ApproxReal angle = ApproxReal::pi(bits);
    ApproxReal two_k = ApproxReal::with_bits(bits);
    mpfr_set_si(two_k.raw(), 2 * (k % m), MPFR_RNDN);
    angle = angle * two_k;
    mpfr_div_si(angle.raw(), angle.raw(), static_cast<long>(m), MPFR_RNDN);
    ApproxComplex out{ApproxReal::with_bits(bits), ApproxReal::with_bits(bits)};
    mpfr_sin_cos(out.im.raw(), out.re.raw(), angle.raw(), MPFR_RNDN);
    return out;
}

} // namespace qmaass
