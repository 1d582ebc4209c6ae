#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "qmaass/errors.hpp"
#include "qmaass/exact/approx.hpp"
#include "qmaass/exact/cyc_buffer.hpp"
#include "qmaass/modular/congruence.hpp"
#include "qmaass/multipliers.hpp"

namespace qmaass {

enum class QForm { FC, FL };

inline const char* to_string(QForm f) { return f == QForm::FC ? "fc" : "fl"; }

inline int form_level(QForm f) { return f == QForm::FC ? 2 : 4; }
inline int form_root(QForm f) { return f == QForm::FC ? 24 : 8; }
inline MultiplierSystem form_multiplier(QForm f) { return f == QForm::FC ? MultiplierSystem::cohen() : MultiplierSystem::lnr(); }

struct QPoint {
    BigRat x;

    QPoint(BigRat v) : x(std::move(v)) { x.canonicalize(); } // NOLINT: rationals convert implicitly
    QPoint(long a, long c = 1) : x(a, c) { x.canonicalize(); } // NOLINT

    int64_t num() const { return to_int64(x.get_num()); }
    int64_t den() const { return to_int64(x.get_den()); }
};

struct QValue {
    CycNumber exact;

    ApproxComplex approx(unsigned digits = kDefaultDigits) const { return exact.embed(digits); }
    bool operator==(const QValue& o) const { return exact == o.exact; }
};

namespace detail {

// Runs body(j) for j in [0, n) on up to `workers` threads; results are
// combined by the caller in index order, so the outcome is deterministic.
template <class T>
std::vector<T> parallel_collect(int64_t n, unsigned workers, const std::function<T(int64_t)>& body)
{
    std::vector<std::optional<T>> slots(static_cast<std::size_t>(n));
    auto finish = [&] {
        std::vector<T> out;
        out.reserve(slots.size());
        for (auto& s : slots) {
            out.push_back(std::move(*s));
        }
        return out;
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<int64_t>(n, 1))));
    if (workers == 1) {
        for (int64_t j = 0; j < n; ++j) {
            slots[static_cast<std::size_t>(j)].emplace(body(j));
        }
        return finish();
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int64_t j = w; j < n; j += workers) {
                    slots[static_cast<std::size_t>(j)].emplace(body(j));
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return finish();
}

// acc += sign * x^k * term
inline void add_scaled(CycBuffer& acc, const CycBuffer& term, int64_t k, int sign) { acc.add_shifted(term, k, sign); }

// sigma(q) at q = zeta_c^a through the terminating Eulerian sum, then the
// prefactor zeta_{24c}^a. Ring: Q[x]/(x^{24c} - 1).
inline CycBuffer fc_buffer(int64_t a, int64_t c)
{
    CycBuffer acc = CycBuffer::one(c, 1);
    CycBuffer prod = CycBuffer::one(c, 1);
    for (int64_t n = 0; n < c; ++n) {
        if (n > 0) {
            prod.mul_binomial(-1, n * a);
        }
        add_scaled(acc, prod, (n + 1) * a, n % 2 == 0 ? 1 : -1);
    }
    CycBuffer out = acc.stretch(24);
    out.mul_monomial(a);
    return out;
}

// Same value from sigma*(q^{-1}) = -2 sum_{n>=0} q^{-(n+1)} (q^{-2}; q^{-2})_n.
inline CycBuffer fc_dual_buffer(int64_t a, int64_t c)
{
    CycBuffer acc(c, 1);
    CycBuffer prod = CycBuffer::one(c, 1);
    for (int64_t n = 0; n < c; ++n) {
        if (n > 0) {
            prod.mul_binomial(-1, -2 * n * a);
        }
        add_scaled(acc, prod, -(n + 1) * a, 1);
    }
    acc.scale(2);
    CycBuffer out = acc.stretch(24);
    out.mul_monomial(a);
    return out;
}

// Odd c: Q[x]/(x^{8c} - 1). 4 | c: Q[x]/(x^{4c} + 1). Both read x as zeta_{8c}.
inline CycBuffer fl_buffer(int64_t a, int64_t c)
{
    if (c % 2 == 1) {
        CycBuffer acc(c, 1);
        CycBuffer ratio = CycBuffer::one(c, 1);
        for (int64_t n = 0; n <= (c - 1) / 2; ++n) {
            if (n > 0) {
                ratio.mul_binomial(-1, (2 * n - 1) * a);
                ratio.div_binomial(1, 2 * n * a);
            }
            add_scaled(acc, ratio, n * a, n % 2 == 0 ? 1 : -1);
        }
        CycBuffer out = acc.stretch(8);
        out.mul_monomial(a);
        return out;
    }
    if (c % 4 != 0) {
        throw DomainError("f_L is not defined on the orbit of the cusp 1/2");
    }
    // W2 at r = q^{-1}; the factor 1 + r^{2k} vanishes first at k = c/4.
    const int64_t half = c / 2;
    CycBuffer acc(half, -1);
    CycBuffer ratio = CycBuffer::one(half, -1);
    ratio.scale(2);
    for (int64_t n = 1; n <= c / 4; ++n) {
        if (n > 1) {
            ratio.mul_binomial(1, -2 * (n - 1) * a);
        }
        ratio.div_binomial(-1, -(2 * n - 1) * a);
        add_scaled(acc, ratio, -n * a, n % 2 == 0 ? 1 : -1);
    }
    CycBuffer out = acc.stretch(8);
    out.mul_monomial(a);
    return out;
}

inline CycBuffer form_buffer(QForm f, const QPoint& x)
{
    return f == QForm::FC ? fc_buffer(x.num(), x.den()) : fl_buffer(x.num(), x.den());
}

struct HeckeBranch {
    int reflect;  // +1: f(pz), f((z+j)/p); -1: f(-pz), f((-z+j)/p)
    int sign;     // factor on the f(+-pz) term
};

inline HeckeBranch hecke_branch(QForm f, int64_t p)
{
    if (f == QForm::FC) {
        if (p < 5 || !is_prime(p)) {
            throw BadPrime("hecke_qmf: f_C needs a prime p >= 5");
        }
        const int64_t k = (p * p - 1) / 24;
        return {mod_floor(p, 6) == 1 ? 1 : -1, k % 2 == 0 ? 1 : -1};
    }
    if (p < 3 || !is_prime(p)) {
        throw BadPrime("hecke_qmf: f_L needs an odd prime p");
    }
    return {mod_floor(p, 4) == 1 ? 1 : -1, 1};
}

// p * T_p f(x) as a buffer whose ring covers every term.
inline CycBuffer hecke_times_p(QForm f, int64_t p, const QPoint& x, unsigned workers)
{
    const HeckeBranch br = hecke_branch(f, p);
    const int64_t c = x.den();
    const int64_t root = form_root(f);
    int64_t size = 0;
    int ring = 1;
    if (f == QForm::FC) {
        size = 24 * c * p;
    } else if (c % 2 == 1) {
        size = 8 * c * p;
    } else if (c % 4 == 0) {
        size = 4 * c * p;
        ring = -1;
    } else {
        throw DomainError("f_L is not defined on the orbit of the cusp 1/2");
    }
    auto lifted = [&](const QPoint& y) {
        CycBuffer b = form_buffer(f, y);
        if (b.sign() != ring || size % b.size() != 0) {
            throw std::logic_error("hecke_qmf: transformed point left the ring of x");
        }
        return b.stretch(size / b.size());
    };
    const int64_t order = ring == 1 ? size : 2 * size;
    const BigRat sx = br.reflect * x.x;

    auto terms = parallel_collect<CycBuffer>(p, workers, [&](int64_t j) {
        CycBuffer t = lifted(QPoint(BigRat((sx + j) / p)));
        t.mul_monomial(-p * j * (order / root));
        return t;
    });
    CycBuffer acc = lifted(QPoint(BigRat(sx * p)));
    acc.scale(br.sign * p);
    for (const auto& t : terms) {
        acc.add(t);
    }
    return acc;
}

inline void require_domain(QForm f, const QPoint& x)
{
    if (f == QForm::FL && x.den() % 4 == 2) {
        throw DomainError("f_L is not defined on the orbit of the cusp 1/2");
    }
}

} // namespace detail

inline QValue eval_fc(const QPoint& x) { return {detail::fc_buffer(x.num(), x.den()).to_cyc()}; }

// Independent evaluation through sigma*(q^{-1}); must agree with eval_fc.
inline QValue eval_fc_dual(const QPoint& x) { return {detail::fc_dual_buffer(x.num(), x.den()).to_cyc()}; }

inline QValue eval_fl(const QPoint& x) { return {detail::fl_buffer(x.num(), x.den()).to_cyc()}; }

inline QValue eval_form(QForm f, const QPoint& x) { return f == QForm::FC ? eval_fc(x) : eval_fl(x); }

inline QValue hecke_qmf(QForm f, int64_t p, const QPoint& x, unsigned workers = 1)
{
    detail::require_domain(f, x);
    return {detail::hecke_times_p(f, p, x, workers).to_cyc() * BigRat(1, p)};
}

// T_p f(x) - lambda f(x), formed in a single ring before reduction.
inline QValue hecke_residual(QForm f, int64_t p, const QPoint& x, long lambda, unsigned workers = 1)
{
    detail::require_domain(f, x);
    CycBuffer acc = detail::hecke_times_p(f, p, x, workers);
    CycBuffer fx = detail::form_buffer(f, x);
    fx = fx.stretch(acc.size() / fx.size());
    fx.scale(-lambda * p);
    acc.add(fx);
    return {acc.to_cyc() * BigRat(1, p)};
}

// Multiplier of T_p f: nu^{p} on the plain branch, nu^{-p} on the reflected one.
inline MultiplierSystem hecke_multiplier(QForm f, int64_t p)
{
    return form_multiplier(f).pow(detail::hecke_branch(f, p).reflect * p);
}

// g(x) - nu(gamma)^{-1} |cx + d|^{-1} g(gamma x) for a weight-one function g
// with multiplier nu, given as a callable on rationals.
inline QValue cocycle_of(const std::function<CycNumber(const QPoint&)>& g, const MultiplierSystem& nu,
                         const Mat2& gamma, const QPoint& x)
{
    if (!gamma0_member(gamma, nu.level)) {
        throw NotInGroup("cocycle: gamma is not in Gamma_0(level)");
    }
    const BigRat j = gamma.c * x.x + gamma.d;
    if (j == 0) {
        throw PoleError("cocycle: cx + d = 0");
    }
    const BigRat gx = (gamma.a * x.x + gamma.b) / j;
    const CycNumber gv = g(QPoint(gx)).times_root(nu.root_order, -nu_exponent(nu, gamma));
    return {g(x) - gv * BigRat(1 / abs(j))};
}

inline QValue cocycle(QForm f, const Mat2& gamma, const QPoint& x)
{
    detail::require_domain(f, x);
    return cocycle_of([f](const QPoint& y) { return eval_form(f, y).exact; }, form_multiplier(f), gamma, x);
}

// Cocycle of T_p f, the function whose graph is compared against 2 h in the figure.
inline QValue hecke_cocycle(QForm f, int64_t p, const Mat2& gamma, const QPoint& x, unsigned workers = 1)
{
    detail::require_domain(f, x);
    return cocycle_of([&](const QPoint& y) { return hecke_qmf(f, p, y, workers).exact; }, hecke_multiplier(f, p),
                      gamma, x);
}

namespace detail {

inline long integer_or_throw(const CycNumber& v, const char* what)
{
    auto r = v.as_rational();
    if (!r || r->get_den() != 1) {
        throw NonIntegerResult(what);
    }
    return to_int64(r->get_num());
}

} // namespace detail

// (-1)^k + (1/2p) sum_j sum_{n<p} (-1)^n zeta_p^{(n+1-k)j} (1 - zeta_p^j)...(1 - zeta_p^{nj}), k = (p^2-1)/24.
inline long identity_tc(int64_t p, unsigned workers = 1)
{
    if (p < 5 || !is_prime(p)) {
        throw BadPrime("identity_tc: p must be a prime >= 5");
    }
    const int64_t k = (p * p - 1) / 24;
    auto rows = detail::parallel_collect<CycBuffer>(p, workers, [&](int64_t j) {
        CycBuffer acc(p, 1);
        CycBuffer prod = CycBuffer::one(p, 1);
        for (int64_t n = 0; n < p; ++n) {
            if (n > 0) {
                prod.mul_binomial(-1, n * j);
            }
            detail::add_scaled(acc, prod, (n + 1 - k) * j, n % 2 == 0 ? 1 : -1);
        }
        return acc;
    });
    CycBuffer total(p, 1);
    for (const auto& r : rows) {
        total.add(r);
    }
    const CycNumber v = total.to_cyc() * BigRat(1, 2 * p) + CycNumber(k % 2 == 0 ? 1 : -1);
    return detail::integer_or_throw(v, "identity_tc: value is not a rational integer");
}

// 1 + (1/p) sum_j zeta_p^{-kj} sum_{n<=(p-1)/2} prod (1 - zeta^{(2i-1)j}) (-zeta^j)^n / prod (1 + zeta^{2ij}),
// k = (p^2-1)/8.
inline long identity_tl(int64_t p, unsigned workers = 1)
{
    if (p < 3 || !is_prime(p)) {
        throw BadPrime("identity_tl: p must be an odd prime");
    }
    const int64_t k = (p * p - 1) / 8;
    auto rows = detail::parallel_collect<CycBuffer>(p, workers, [&](int64_t j) {
        CycBuffer acc(p, 1);
        CycBuffer ratio = CycBuffer::one(p, 1);
        for (int64_t n = 0; n <= (p - 1) / 2; ++n) {
            if (n > 0) {
                ratio.mul_binomial(-1, (2 * n - 1) * j);
                ratio.div_binomial(1, 2 * n * j);
            }
            detail::add_scaled(acc, ratio, (n - k) * j, n % 2 == 0 ? 1 : -1);
        }
        return acc;
    });
    CycBuffer total(p, 1);
    for (const auto& r : rows) {
        total.add(r);
    }
    const CycNumber v = total.to_cyc() * BigRat(1, p) + CycNumber(1);
    return detail::integer_or_throw(v, "identity_tl: value is not a rational integer");
}

} // namespace qmaass
