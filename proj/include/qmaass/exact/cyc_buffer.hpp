#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmaass/exact/cyclotomic.hpp"
#include "qmaass/exact/integer.hpp"

namespace qmaass {

// Working buffer for long products and sums in Q[x]/(x^n - s), s = +1 or -1.
// Reading x as zeta_n (s = +1) or zeta_{2n} (s = -1) is a ring homomorphism,
// so all intermediate work stays in cheap integer vectors and the cyclotomic
// reduction happens once at the end. Values are coeffs / 2^shift: the only
// divisions performed are by binomials 1 +- x^m, which cost a factor 1/2.
class CycBuffer {
  public:
    CycBuffer(int64_t n, int s) : n_(n), s_(s), c_(static_cast<std::size_t>(n), BigInt(0))
    {
        if (n < 1 || (s != 1 && s != -1)) {
            throw std::invalid_argument("CycBuffer: need n >= 1 and s = +-1");
        }
    }

    static CycBuffer one(int64_t n, int s)
    {
        CycBuffer b(n, s);
        b.c_[0] = 1;
        return b;
    }

    static CycBuffer monomial(int64_t n, int s, int64_t k, const BigInt& coeff = 1)
    {
        CycBuffer b(n, s);
        b.add_monomial(k, coeff);
        return b;
    }

    int64_t size() const { return n_; }
    int sign() const { return s_; }
    int shift() const { return shift_; }
    const std::vector<BigInt>& raw() const { return c_; }

    // Order M of the root of unity that x maps to.
    int64_t field_order() const { return s_ == 1 ? n_ : 2 * n_; }

    // Adds coeff * x^k / 2^shift (k any integer).
    void add_monomial(int64_t k, const BigInt& coeff)
    {
        auto [idx, sg] = locate(k);
        if (sg > 0) {
            c_[idx] += coeff;
        } else {
            c_[idx] -= coeff;
        }
    }

    void add(const CycBuffer& o)
    {
        check_compatible(o);
        align_shift(o.shift_);
        const int extra = shift_ - o.shift_;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (o.c_[i] == 0) {
                continue;
            }
            if (extra == 0) {
                c_[i] += o.c_[i];
            } else {
                c_[i] += BigInt(o.c_[i] << extra);
            }
        }
    }

    void scale(const BigInt& f)
    {
        for (auto& v : c_) {
            v *= f;
        }
    }

    void negate()
    {
        for (auto& v : c_) {
            v = -v;
        }
    }

    void mul_monomial(int64_t k)
    {
        std::vector<BigInt> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) {
                continue;
            }
            auto [idx, sg] = locate(static_cast<int64_t>(i) + k);
            out[idx] = sg > 0 ? c_[i] : BigInt(-c_[i]);
        }
        c_ = std::move(out);
    }

    // this *= (1 + eps x^m), in place: each orbit of k -> k + m is walked once,
    // carrying the overwritten predecessor.
    void mul_binomial(int eps, int64_t m)
    {
        const int64_t mr = mod_floor(m, n_);
        const int64_t wraps = (m - mr) / n_;
        const int e = (s_ < 0 && (wraps % 2 != 0)) ? -eps : eps;
        if (mr == 0) {
            if (e < 0) {
                for (auto& v : c_) {
                    v = 0;
                }
            } else {
                scale(2);
            }
            return;
        }
        const int64_t g = std::gcd(n_, mr);
        BigInt prev, cur;
        for (int64_t k0 = 0; k0 < g; ++k0) {
            // predecessor of k0 on its orbit is k0 - mr (mod n)
            prev = c_[static_cast<std::size_t>(mod_floor(k0 - mr, n_))];
            int64_t k = k0;
            do {
                auto& slot = c_[static_cast<std::size_t>(k)];
                cur = slot;
                const int cf = (k >= mr ? e : e * s_);
                if (cf > 0) {
                    slot += prev;
                } else {
                    slot -= prev;
                }
                std::swap(prev, cur);
                k += mr;
                if (k >= n_) {
                    k -= n_;
                }
            } while (k != k0);
        }
    }

    // this += sign * x^k * o, without temporaries.
    void add_shifted(const CycBuffer& o, int64_t k, int sign)
    {
        check_compatible(o);
        align_shift(o.shift_);
        const int extra = shift_ - o.shift_;
        BigInt tmp;
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            if (o.c_[i] == 0) {
                continue;
            }
            auto [idx, sg] = locate(static_cast<int64_t>(i) + k);
            const BigInt* v = &o.c_[i];
            if (extra != 0) {
                tmp = o.c_[i] << extra;
                v = &tmp;
            }
            if (sg * sign > 0) {
                c_[idx] += *v;
            } else {
                c_[idx] -= *v;
            }
        }
    }

    // this /= (1 + eps x^m). Solves Q + eps x^m Q = P along the cycles of
    // k -> k + m (mod n) in O(n). Throws std::domain_error when the binomial is
    // a zero divisor of the ring.
    void div_binomial(int eps, int64_t m)
    {
        int64_t mr = mod_floor(m, n_);
        const int64_t wraps = (m - mr) / n_;
        int e = eps;
        if (s_ < 0 && (wraps % 2 != 0)) {
            e = -e;
        }
        if (mr == 0) {
            if (e < 0) {
                throw std::domain_error("CycBuffer: division by zero binomial");
            }
            ++shift_;
            return;
        }
        // Q_k = P_k + coef(k) * Q_{k - mr}, coef(k) = -e * (k >= mr ? 1 : s).
        auto coef = [&](int64_t k) { return (k >= mr ? -e : -e * s_); };
        const int64_t g = std::gcd(n_, mr);
        const int64_t len = n_ / g;
        std::vector<BigInt> out(c_.size());
        std::vector<BigInt> a(static_cast<std::size_t>(len));
        std::vector<int> b(static_cast<std::size_t>(len));
        for (int64_t k0 = 0; k0 < g; ++k0) {
            // Q at the i-th orbit element is a[i] + b[i] * X with X = Q_{k0}.
            a[0] = 0;
            b[0] = 1;
            int64_t k = k0;
            for (int64_t i = 1; i < len; ++i) {
                k += mr;
                if (k >= n_) {
                    k -= n_;
                }
                const int cf = coef(k);
                const auto ui = static_cast<std::size_t>(i);
                a[ui] = c_[static_cast<std::size_t>(k)];
                if (cf > 0) {
                    a[ui] += a[ui - 1];
                } else {
                    a[ui] -= a[ui - 1];
                }
                b[ui] = cf * b[ui - 1];
            }
            const int c0 = coef(k0);
            const int t = c0 * b[static_cast<std::size_t>(len - 1)];
            if (t == 1) {
                throw std::domain_error("CycBuffer: binomial is a zero divisor");
            }
            // X (1 - t) = P_{k0} + c0 a_{len-1}, and 1 - t = 2: keep 2X.
            BigInt two_x = c_[static_cast<std::size_t>(k0)];
            if (c0 > 0) {
                two_x += a[static_cast<std::size_t>(len - 1)];
            } else {
                two_x -= a[static_cast<std::size_t>(len - 1)];
            }
            k = k0;
            for (int64_t i = 0; i < len; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                BigInt v = a[ui] * 2;
                if (b[ui] > 0) {
                    v += two_x;
                } else {
                    v -= two_x;
                }
                out[static_cast<std::size_t>(k)] = std::move(v);
                k += mr;
                if (k >= n_) {
                    k -= n_;
                }
            }
        }
        c_ = std::move(out);
        ++shift_;
        normalize();
    }

    // Generic product, O(n^2).
    void mul(const CycBuffer& o)
    {
        check_compatible(o);
        std::vector<BigInt> out(c_.size(), BigInt(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == 0) {
                    continue;
                }
                auto [idx, sg] = locate(static_cast<int64_t>(i + j));
                if (sg > 0) {
                    out[idx] += c_[i] * o.c_[j];
                } else {
                    out[idx] -= c_[i] * o.c_[j];
                }
            }
        }
        c_ = std::move(out);
        shift_ += o.shift_;
        normalize();
    }

    // Same value in a buffer of size n * factor (x = y^factor), same sign s.
    CycBuffer stretch(int64_t factor) const
    {
        CycBuffer out(n_ * factor, s_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            out.c_[i * static_cast<std::size_t>(factor)] = c_[i];
        }
        out.shift_ = shift_;
        return out;
    }

    // Drops common powers of two from the dyadic representation.
    void normalize()
    {
        if (shift_ == 0) {
            return;
        }
        mp_bitcnt_t common = ~mp_bitcnt_t(0);
        for (const auto& v : c_) {
            if (v != 0) {
                common = std::min(common, mpz_scan1(v.get_mpz_t(), 0));
            }
        }
        if (common == ~mp_bitcnt_t(0)) {
            shift_ = 0;
            return;
        }
        const auto drop = static_cast<int>(std::min<mp_bitcnt_t>(common, static_cast<mp_bitcnt_t>(shift_)));
        if (drop == 0) {
            return;
        }
        for (auto& v : c_) {
            mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
        }
        shift_ -= drop;
    }

    CycNumber to_cyc() const
    {
        const int64_t m = field_order();
        // Reduce over Z first: the rational pass afterwards touches phi(m) entries only.
        std::vector<BigInt> ints = c_;
        reduce_mod_cyclotomic(ints, cyclotomic_modulus(m));
        std::vector<BigRat> poly(ints.size());
        BigInt den = 1;
        den <<= shift_;
        for (std::size_t i = 0; i < ints.size(); ++i) {
            poly[i] = BigRat(ints[i], den);
            poly[i].canonicalize();
        }
        return CycNumber::from_poly(m, std::move(poly));
    }

  private:
    std::pair<std::size_t, int> locate(int64_t k) const
    {
        const int64_t r = mod_floor(k, n_);
        const int64_t q = (k - r) / n_;
        const int sg = (s_ < 0 && (q % 2 != 0)) ? -1 : 1;
        return {static_cast<std::size_t>(r), sg};
    }

    void check_compatible(const CycBuffer& o) const
    {
        if (o.n_ != n_ || o.s_ != s_) {
            throw std::invalid_argument("CycBuffer: mismatched rings");
        }
    }

    void align_shift(int target)
    {
        if (target > shift_) {
            for (auto& v : c_) {
                v <<= (target - shift_);
            }
            shift_ = target;
        }
    }

    int64_t n_;
    int s_;
    int shift_ = 0;
    std::vector<BigInt> c_;
};

} // namespace qmaass
