#pragma once

#include <random>
#include <vector>

#include "qmaass/errors.hpp"
#include "qmaass/exact/cyclotomic.hpp"
#include "qmaass/modular/congruence.hpp"
#include "qmaass/modular/words.hpp"

namespace qmaass {

// nu^power for the base system of a level: nu(T) = nu(R) = zeta_24 on
// Gamma_0(2), zeta_8 on Gamma_0(4), with nu(-I) = 1 in both cases.
struct MultiplierSystem {
    int level = 2;
    int root_order = 24;
    long power = 1;

    static MultiplierSystem cohen(long power = 1) { return {2, 24, mod_floor(power, 24)}; }
    static MultiplierSystem lnr(long power = 1) { return {4, 8, mod_floor(power, 8)}; }

    MultiplierSystem pow(long e) const { return {level, root_order, mod_floor(power * e, root_order)}; }
};

// Exponent k with nu(g) = zeta_root^k, reduced into [0, root).
inline long nu_exponent(const MultiplierSystem& nu, const Mat2& g)
{
    const GenWord w = decompose_word(g, nu.level);
    return mod_floor(nu.power * w.exponent_sum(), nu.root_order);
}

inline CycNumber nu_eval(const MultiplierSystem& nu, const Mat2& g)
{
    return CycNumber::root(nu.root_order, nu_exponent(nu, g));
}

inline Mat2 alpha(int64_t p) { return {1, 0, 0, p}; }

struct DoubleCosetSplit {
    Mat2 gamma1;
    Mat2 gamma2;
};

// beta_inf = gamma1 alpha_p gamma2 with the explicit factors for each level.
inline DoubleCosetSplit beta_infinity_split(int level, int64_t p)
{
    const Mat2 T = Mat2::T();
    const Mat2 R = generator_matrix(Gen::R, level);
    const Mat2 Rinv = mat_inv(R);
    DoubleCosetSplit s;
    if (level == 2) {
        // T^k R^{-1} alpha T^k R^{-1} = -beta_inf, k = (p + 1)/2; -I is absorbed in gamma1.
        const long k = static_cast<long>((p + 1) / 2);
        s.gamma1 = -(mat_pow(T, k) * Rinv);
        s.gamma2 = mat_pow(T, k) * Rinv;
    } else if (mod_floor(p, 4) == 1) {
        const long k = static_cast<long>((p - 1) / 4);
        s.gamma1 = mat_pow(T, k) * R;
        s.gamma2 = mat_pow(T, -k) * Rinv;
    } else {
        const long k = static_cast<long>((p + 1) / 4);
        s.gamma1 = -(mat_pow(T, k) * Rinv);
        s.gamma2 = mat_pow(T, k) * Rinv;
    }
    if (!(s.gamma1 * alpha(p) * s.gamma2 == Mat2(p, 0, 0, 1))) {
        throw std::logic_error("beta_infinity_split: identity does not hold");
    }
    return s;
}

inline CycNumber c_from_split(const MultiplierSystem& nu, const MultiplierSystem& nu2, const DoubleCosetSplit& s)
{
    return nu_eval(nu, s.gamma1) * nu_eval(nu2, s.gamma2);
}

// c_{nu, nu2}(beta) for beta in Gamma alpha_p Gamma, Gamma = Gamma_0(level).
// beta is first matched to a representative beta_i with beta beta_i^{-1} in Gamma.
inline CycNumber c_value(const MultiplierSystem& nu, const MultiplierSystem& nu2, const Mat2& beta, int64_t p)
{
    if (!is_prime(p)) {
        throw BadPrime("c_value: p must be prime");
    }
    if (nu.level != nu2.level || nu2.power != nu.pow(p).power) {
        throw std::invalid_argument("c_value: nu2 must equal nu^p");
    }
    if (!beta.is_integral() || beta.det() != p || mod_floor(beta.c.get_num(), nu.level) != 0) {
        throw NotInDoubleCoset("c_value: matrix not in the double coset");
    }
    const auto reps = hecke_cosets(p);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const Mat2 delta = beta * mat_inv(reps[i]);
        if (!gamma0_member(delta, nu.level)) {
            continue;
        }
        DoubleCosetSplit s;
        if (i + 1 == reps.size()) {
            s = beta_infinity_split(nu.level, p);
        } else {
            s.gamma1 = Mat2::identity();
            s.gamma2 = Mat2::T(static_cast<long>(i));
        }
        return nu_eval(nu, delta) * c_from_split(nu, nu2, s);
    }
    throw NotInDoubleCoset("c_value: no coset representative matched");
}

struct CompatReport {
    int level = 2;
    int64_t p = 0;
    bool compatible = true;
    std::size_t generators_checked = 0;
    std::size_t random_checked = 0;
    std::vector<Mat2> witnesses;
};

// nu(gamma) = nu^p(alpha^{-1} gamma alpha) on generators of Gamma_0(level p),
// plus a seeded sample of random generator products.
inline CompatReport compat_check(int level, int64_t p, std::size_t random_products = 100)
{
    if (!is_prime(p) || std::gcd<int64_t>(p, level) != 1) {
        throw BadPrime("compat_check: p must be a prime coprime to the level");
    }
    const MultiplierSystem nu = level == 2 ? MultiplierSystem::cohen() : MultiplierSystem::lnr();
    const MultiplierSystem nup = nu.pow(p);
    const Mat2 a = alpha(p);
    const Mat2 ainv = mat_inv(a);
    CompatReport rep;
    rep.level = level;
    rep.p = p;
    auto check = [&](const Mat2& g) {
        const Mat2 conj = ainv * g * a;
        if (nu_eval(nu, g) != nu_eval(nup, conj)) {
            rep.compatible = false;
            rep.witnesses.push_back(g);
        }
    };
    const auto gens = gamma0_generators(level * p);
    for (const auto& g : gens) {
        check(g);
        ++rep.generators_checked;
    }
    std::mt19937_64 rng(static_cast<uint64_t>(p * 1000 + level));
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < random_products; ++i) {
        Mat2 g;
        for (int k = 0; k < 4; ++k) {
            const Mat2& h = gens[pick(rng)];
            g = g * (coin(rng) ? h : mat_inv(h));
        }
        check(g);
        ++rep.random_checked;
    }
    return rep;
}

} // namespace qmaass
