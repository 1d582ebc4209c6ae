#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qmaass/coefficients/formulas.hpp"
#include "qmaass/errors.hpp"
#include "qmaass/maass/bessel.hpp"
#include "qmaass/modular/mat2.hpp"
#include "qmaass/multipliers.hpp"

namespace qmaass {

// Smallest imaginary part accepted for a series evaluation.
inline constexpr double kMaassYFloor = 0.02;

struct MaassSpec {
    int level = 2;
    int scale = 24;         // divisor in the Bessel argument 2 pi |n| y / scale
    int phase_divisor = 24; // divisor in the phase e^{2 pi i n x / phase_divisor}
    CoeffKind kind = CoeffKind::TC;
    MultiplierSystem nu = MultiplierSystem::cohen();

    static MaassSpec uc() { return {2, 24, 24, CoeffKind::TC, MultiplierSystem::cohen()}; }
    static MaassSpec ul() { return {4, 8, 8, CoeffKind::TL, MultiplierSystem::lnr()}; }
};

template <class Real = double>
struct HPoint {
    Real x = 0;
    Real y = 1;

    std::complex<Real> z() const { return {x, y}; }
};

template <class Real = double>
struct MaassValue {
    std::complex<Real> value;
    Real error_bound = 0; // truncation tail bound
    long terms = 0;       // largest |n| used
};

template <class Real = double>
class MaassForm {
  public:
    // The coefficient table is built here, once, large enough for every
    // evaluation with y >= y_min and eps >= eps_min. Evaluation is read-only
    // afterwards and may be shared between threads.
    explicit MaassForm(MaassSpec spec, Real y_min = Real(kMaassYFloor), Real eps_min = Real(1e-15))
        : spec_(spec)
    {
        if (y_min < Real(kMaassYFloor)) {
            throw ConvergenceError("MaassForm: y_min below the convergence floor");
        }
        bound_ = truncation(y_min, eps_min);
        const CoeffTable t = CoeffTable::build(spec_.kind, bound_);
        for (const auto& [n, v] : t.values) {
            if (v != 0) {
                coeffs_.push_back({n, static_cast<Real>(v)});
            }
        }
    }

    const MaassSpec& spec() const { return spec_; }
    long table_bound() const { return bound_; }

    // Rigorous tail bound for |n| > N using |T(n)| <= d(|n|) <= 2 sqrt|n| and
    // K0(a (n+1)) <= e^{-a} K0(a n).
    Real tail_bound(long N, Real y) const
    {
        const Real a = 2 * std::numbers::pi_v<Real> * y / Real(spec_.scale);
        const Real m = Real(N + 1);
        const Real rho = std::sqrt(1 + 1 / m) * std::exp(-a);
        if (rho >= 1) {
            return std::numeric_limits<Real>::infinity();
        }
        return 4 * std::sqrt(y) * std::sqrt(m) * bessel_k0(a * m) / (1 - rho);
    }

    // Smallest N (doubling, then bisection) with tail_bound(N, y) < eps.
    long truncation(Real y, Real eps) const
    {
        if (y < Real(kMaassYFloor)) {
            throw ConvergenceError("eval_maass: y below the convergence floor");
        }
        if (!(eps > 0)) {
            throw std::invalid_argument("eval_maass: eps must be positive");
        }
        long hi = spec_.scale;
        while (tail_bound(hi, y) >= eps) {
            hi *= 2;
            if (hi > (1L << 26)) {
                throw ConvergenceError("eval_maass: truncation order out of range");
            }
        }
        long lo = hi / 2;
        while (hi - lo > 1) {
            const long mid = (lo + hi) / 2;
            (tail_bound(mid, y) < eps ? hi : lo) = mid;
        }
        return hi;
    }

    MaassValue<Real> eval(const HPoint<Real>& z, Real eps) const
    {
        const long N = truncation(z.y, eps);
        if (N > bound_) {
            throw ConvergenceError("eval_maass: truncation order exceeds the coefficient table");
        }
        const Real two_pi = 2 * std::numbers::pi_v<Real>;
        std::complex<Real> sum = 0;
        for (const auto& [n, t] : coeffs_) {
            if (std::abs(n) > N) {
                continue;
            }
            const Real k = bessel_k0(two_pi * Real(std::abs(n)) * z.y / Real(spec_.scale));
            sum += t * k * std::polar(Real(1), two_pi * Real(n) * z.x / Real(spec_.phase_divisor));
        }
        return {std::sqrt(z.y) * sum, tail_bound(N, z.y), N};
    }

    std::complex<Real> multiplier(const Mat2& g) const
    {
        const long k = nu_exponent(spec_.nu, g);
        return std::polar(Real(1), 2 * std::numbers::pi_v<Real> * Real(k) / Real(spec_.nu.root_order));
    }

  private:
    struct Term {
        long n;
        Real t;
    };

    MaassSpec spec_;
    long bound_ = 0;
    std::vector<Term> coeffs_;
};

template <class Real>
MaassValue<Real> eval_maass(const MaassForm<Real>& u, const HPoint<Real>& z, Real eps)
{
    return u.eval(z, eps);
}

// T(+-p): the eigenvalue of T_p on u, with the sign chosen by the branch.
inline long maass_hecke_eigenvalue(const MaassSpec& spec, int64_t p)
{
    if (spec.kind == CoeffKind::TC) {
        return mod_floor(p, 6) == 1 ? tc_formula(p) : tc_formula(-p);
    }
    return mod_floor(p, 4) == 1 ? tl_formula(p) : tl_formula(-p);
}

// (1/sqrt p) (s u(pz) + sum_j zeta^{-pj} u((z+j)/p)) on the plain branch, and
// the same with u(-p conj z), u((-conj z + j)/p) on the reflected one. s is
// (-1)^{(p^2-1)/24} at level 2 and 1 at level 4.
template <class Real>
MaassValue<Real> hecke_maass(const MaassForm<Real>& u, int64_t p, const HPoint<Real>& z, Real eps)
{
    const MaassSpec& spec = u.spec();
    if (!is_prime(p) || p < (spec.level == 2 ? 5 : 3)) {
        throw BadPrime("hecke_maass: p must be a prime coprime to 6 (level 2) or odd (level 4)");
    }
    const bool plain = spec.level == 2 ? mod_floor(p, 6) == 1 : mod_floor(p, 4) == 1;
    const Real sign = spec.level == 2 && ((p * p - 1) / 24) % 2 != 0 ? Real(-1) : Real(1);
    const Real x = plain ? z.x : -z.x;
    const Real each = eps / Real(p + 2);
    const Real pr = Real(p);

    MaassValue<Real> head = u.eval({pr * x, pr * z.y}, each);
    std::complex<Real> sum = sign * head.value;
    Real err = head.error_bound;
    long terms = head.terms;
    for (int64_t j = 0; j < p; ++j) {
        MaassValue<Real> v = u.eval({(x + Real(j)) / pr, z.y / pr}, each);
        const Real angle = -2 * std::numbers::pi_v<Real> * Real(mod_floor(p * j, spec.nu.root_order)) /
                           Real(spec.nu.root_order);
        sum += std::polar(Real(1), angle) * v.value;
        err += v.error_bound;
        terms = std::max(terms, v.terms);
    }
    const Real norm = 1 / std::sqrt(pr);
    return {norm * sum, norm * err, terms};
}

template <class Real>
struct ModularityReport {
    Real residual = 0;
    Real error_bound = 0;
};

// |u(gamma z) - nu(gamma) u(z)|.
template <class Real>
ModularityReport<Real> modularity_residual(const MaassForm<Real>& u, const Mat2& gamma, const HPoint<Real>& z,
                                           Real eps)
{
    if (!gamma0_member(gamma, u.spec().level)) {
        throw NotInGroup("modularity_residual: gamma is not in Gamma_0(level)");
    }
    const std::complex<Real> gz = mat_act(gamma, z.z());
    const MaassValue<Real> a = u.eval({gz.real(), gz.imag()}, eps / 2);
    const MaassValue<Real> b = u.eval(z, eps / 2);
    return {std::abs(a.value - u.multiplier(gamma) * b.value), a.error_bound + b.error_bound};
}

} // namespace qmaass
