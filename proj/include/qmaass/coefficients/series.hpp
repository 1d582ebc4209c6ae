#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "qmaass/exact/integer.hpp"

namespace qmaass {

// q^{lead} * sum_{k=0}^{order} coeffs[k] q^k, exact through q^{lead + order}.
struct TruncSeries {
    BigRat lead{0};
    long order = 0;
    std::vector<BigRat> coeffs;

    TruncSeries() = default;
    explicit TruncSeries(long order_, BigRat lead_ = 0)
        : lead(std::move(lead_)), order(order_), coeffs(static_cast<std::size_t>(order_ + 1), BigRat(0))
    {
    }

    const BigRat& operator[](long k) const { return coeffs.at(static_cast<std::size_t>(k)); }
    BigRat& operator[](long k) { return coeffs.at(static_cast<std::size_t>(k)); }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
    {
        if (a.lead != b.lead) {
            throw std::invalid_argument("TruncSeries: leading exponents differ");
        }
        TruncSeries r(std::min(a.order, b.order), a.lead);
        for (long k = 0; k <= r.order; ++k) {
            r[k] = a[k] + b[k];
        }
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        TruncSeries r(std::min(a.order, b.order), a.lead + b.lead);
        for (long i = 0; i <= r.order; ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (long j = 0; i + j <= r.order; ++j) {
                r[i + j] += a[i] * b[j];
            }
        }
        return r;
    }

    // this *= (1 + c q^k), k >= 1.
    void mul_binomial(const BigRat& c, long k)
    {
        for (long i = order; i >= k; --i) {
            coeffs[static_cast<std::size_t>(i)] += c * coeffs[static_cast<std::size_t>(i - k)];
        }
    }

    // this /= (1 + c q^k), k >= 1: a unit in the power series ring.
    void div_binomial(const BigRat& c, long k)
    {
        for (long i = k; i <= order; ++i) {
            coeffs[static_cast<std::size_t>(i)] -= c * coeffs[static_cast<std::size_t>(i - k)];
        }
    }

    // Pochhammer product (a q^s; q^t)_n = prod_{i<n} (1 - a q^{s + i t}), with
    // s + i t >= 1 for every factor.
    static TruncSeries pochhammer(const BigRat& a, long s, long t, long n, long order)
    {
        TruncSeries r(order);
        r[0] = 1;
        for (long i = 0; i < n; ++i) {
            r.mul_binomial(-a, s + i * t);
        }
        return r;
    }
};

namespace detail {

// Integer kernels: all series here have integer coefficients, and BigInt
// arithmetic is much cheaper than BigRat for the long running products.
using IntSeries = std::vector<BigInt>;

inline void mul_binomial(IntSeries& s, long c, long k)
{
    for (long i = static_cast<long>(s.size()) - 1; i >= k; --i) {
        s[static_cast<std::size_t>(i)] += c * s[static_cast<std::size_t>(i - k)];
    }
}

inline void div_binomial(IntSeries& s, long c, long k)
{
    for (long i = k; i < static_cast<long>(s.size()); ++i) {
        s[static_cast<std::size_t>(i)] -= c * s[static_cast<std::size_t>(i - k)];
    }
}

inline void add_shifted(IntSeries& acc, const IntSeries& term, long shift, long sign)
{
    for (long i = 0; i + shift < static_cast<long>(acc.size()); ++i) {
        if (term[static_cast<std::size_t>(i)] != 0) {
            acc[static_cast<std::size_t>(i + shift)] += sign * term[static_cast<std::size_t>(i)];
        }
    }
}

inline TruncSeries to_series(const IntSeries& s, BigRat lead = 0)
{
    TruncSeries r(static_cast<long>(s.size()) - 1, std::move(lead));
    for (std::size_t i = 0; i < s.size(); ++i) {
        r.coeffs[i] = s[i];
    }
    return r;
}

inline void check_order(long N)
{
    if (N < 1) {
        throw std::invalid_argument("series order must be at least 1");
    }
}

} // namespace detail

// sigma(q) = sum_{n>=0} q^{n(n+1)/2} / (-q; q)_n.
inline TruncSeries series_sigma(long N)
{
    detail::check_order(N);
    detail::IntSeries acc(static_cast<std::size_t>(N + 1)), ratio(static_cast<std::size_t>(N + 1));
    ratio[0] = 1;
    for (long n = 0; n * (n + 1) / 2 <= N; ++n) {
        if (n > 0) {
            detail::div_binomial(ratio, 1, n);
        }
        detail::add_shifted(acc, ratio, n * (n + 1) / 2, 1);
    }
    return detail::to_series(acc);
}

// sigma*(q) = 2 sum_{n>=1} (-1)^n q^{n^2} / (q; q^2)_n.
inline TruncSeries series_sigma_star(long N)
{
    detail::check_order(N);
    detail::IntSeries acc(static_cast<std::size_t>(N + 1)), ratio(static_cast<std::size_t>(N + 1));
    ratio[0] = 2;
    for (long n = 1; n * n <= N; ++n) {
        detail::div_binomial(ratio, -1, 2 * n - 1);
        detail::add_shifted(acc, ratio, n * n, (n % 2 == 0) ? 1 : -1);
    }
    return detail::to_series(acc);
}

// Indefinite theta form: sum_{n>=0, |j|<=n} (-1)^{n+j} q^{n(3n+1)/2 - j^2} (1 - q^{2n+1}).
inline TruncSeries series_sigma_adh(long N)
{
    detail::check_order(N);
    detail::IntSeries acc(static_cast<std::size_t>(N + 1));
    for (long n = 0; n * (n + 1) / 2 <= N; ++n) {
        for (long j = -n; j <= n; ++j) {
            const long e = n * (3 * n + 1) / 2 - j * j;
            const long sg = ((n + j) % 2 == 0) ? 1 : -1;
            if (e <= N) {
                acc[static_cast<std::size_t>(e)] += sg;
            }
            if (e + 2 * n + 1 <= N) {
                acc[static_cast<std::size_t>(e + 2 * n + 1)] -= sg;
            }
        }
    }
    return detail::to_series(acc);
}

enum class WSeries { W1, W2, W1alt };

inline TruncSeries series_w(WSeries which, long N)
{
    detail::check_order(N);
    detail::IntSeries acc(static_cast<std::size_t>(N + 1)), ratio(static_cast<std::size_t>(N + 1));
    ratio[0] = 1;
    switch (which) {
    case WSeries::W1:
        // sum (q)_n (-1)^n q^{n(n+1)/2} / (-q)_n
        for (long n = 0; n * (n + 1) / 2 <= N; ++n) {
            if (n > 0) {
                detail::mul_binomial(ratio, -1, n);
                detail::div_binomial(ratio, 1, n);
            }
            detail::add_shifted(acc, ratio, n * (n + 1) / 2, (n % 2 == 0) ? 1 : -1);
        }
        break;
    case WSeries::W2:
        // sum_{n>=1} (-1; q^2)_n (-q)^n / (q; q^2)_n
        for (long n = 1; n <= N; ++n) {
            if (n == 1) {
                ratio[0] = 2; // factor (1 + q^0)
            } else {
                detail::mul_binomial(ratio, 1, 2 * (n - 1));
            }
            detail::div_binomial(ratio, -1, 2 * n - 1);
            detail::add_shifted(acc, ratio, n, (n % 2 == 0) ? 1 : -1);
        }
        break;
    case WSeries::W1alt:
        // sum (q; q^2)_n (-q)^n / (-q^2; q^2)_n
        for (long n = 0; n <= N; ++n) {
            if (n > 0) {
                detail::mul_binomial(ratio, -1, 2 * n - 1);
                detail::div_binomial(ratio, 1, 2 * n);
            }
            detail::add_shifted(acc, ratio, n, (n % 2 == 0) ? 1 : -1);
        }
        break;
    }
    return detail::to_series(acc);
}

// T_C(n) for |n| <= N read off phi(q) = q^{1/24} sigma(q) + q^{-1/24} sigma*(q).
inline std::map<long, BigInt> combine_phi(long N)
{
    detail::check_order(N);
    std::map<long, BigInt> out;
    const long kmax_pos = (N - 1) / 24;
    const long kmax_neg = (N + 1) / 24;
    const TruncSeries s = series_sigma(std::max(1L, kmax_pos));
    const TruncSeries ss = series_sigma_star(std::max(1L, kmax_neg));
    for (long k = 0; k <= kmax_pos; ++k) {
        out[24 * k + 1] = s[k].get_num();
    }
    for (long k = 1; k <= kmax_neg; ++k) {
        out[1 - 24 * k] = ss[k].get_num();
    }
    return out;
}

// T_L(n) for |n| <= N read off q W1(q^8) + q^{-1} W2(q^8).
inline std::map<long, BigInt> combine_w(long N)
{
    detail::check_order(N);
    std::map<long, BigInt> out;
    const long kmax_pos = (N - 1) / 8;
    const long kmax_neg = (N + 1) / 8;
    const TruncSeries w1 = series_w(WSeries::W1, std::max(1L, kmax_pos));
    const TruncSeries w2 = series_w(WSeries::W2, std::max(1L, kmax_neg));
    for (long k = 0; k <= kmax_pos; ++k) {
        out[8 * k + 1] = w1[k].get_num();
    }
    for (long k = 1; k <= kmax_neg; ++k) {
        out[1 - 8 * k] = w2[k].get_num();
    }
    return out;
}

} // namespace qmaass
