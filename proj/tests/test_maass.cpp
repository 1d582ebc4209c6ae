#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <random>

#include "qmaass/maass/maass.hpp"

using namespace qmaass;

namespace {

long double k0_oracle(long double y)
{
    boost::math::quadrature::exp_sinh<long double> q;
    return q.integrate([y](long double t) { return std::exp(-y * std::cosh(t)); }, 1e-18L);
}

const MaassForm<double>& uc()
{
    static const MaassForm<double> f(MaassSpec::uc());
    return f;
}

const MaassForm<double>& ul()
{
    static const MaassForm<double> f(MaassSpec::ul());
    return f;
}

// sqrt(y) K0(2 pi |n| y / s) e^{2 pi i n x / s}
std::complex<double> fourier_term(long n, int s, double x, double y)
{
    return std::sqrt(y) * bessel_k0(2 * M_PI * std::abs(n) * y / s) * std::polar(1.0, 2 * M_PI * n * x / s);
}

template <class F>
std::complex<double> hyperbolic_laplacian(F f, double x, double y, double h)
{
    const auto c = f(x, y);
    const auto fxx = (f(x + h, y) - 2.0 * c + f(x - h, y)) / (h * h);
    const auto fyy = (f(x, y + h) - 2.0 * c + f(x, y - h)) / (h * h);
    return -y * y * (fxx + fyy);
}

Mat2 random_gamma0(std::mt19937_64& rng, int level)
{
    std::uniform_int_distribution<long> ex(-2, 2);
    Mat2 g;
    for (int i = 0; i < 2; ++i) {
        g = g * Mat2::T(ex(rng)) * generator_matrix(Gen::R, level, ex(rng));
    }
    return g;
}

} // namespace

TEST(Bessel, Examples)
{
    EXPECT_NEAR(bessel_k0(1.0), 0.42102443824070833, 1e-15);
    const double y = 50;
    EXPECT_NEAR(bessel_k0(y) * std::exp(y) * std::sqrt(2 * y / M_PI), 1.0, 0.01);
    EXPECT_LT(bessel_k0(10.0), bessel_k0(5.0));
    EXPECT_THROW(bessel_k0(0.0), std::domain_error);
    for (double y = 2.5; y < 1e6; y *= 1.3) {
        EXPECT_NO_THROW(bessel_k0(y)) << y;
    }
}

TEST(Bessel, MatchesQuadratureOracle)
{
    for (double y = 0.05; y <= 50.0; y *= 1.07) {
        EXPECT_NEAR(bessel_k0(y), static_cast<double>(k0_oracle(y)), 1e-12) << y;
    }
    // Both sides of the series/quadrature crossover.
    for (double y : {1.999, 2.0, 2.001}) {
        EXPECT_NEAR(bessel_k0(y), static_cast<double>(k0_oracle(y)), 1e-14) << y;
    }
}

TEST(Maass, PeriodicityAndReflection)
{
    const auto a = uc().eval({0.0, 1.0}, 1e-13).value;
    const auto b = uc().eval({1.0, 1.0}, 1e-13).value;
    EXPECT_LT(std::abs(b - std::polar(1.0, 2 * M_PI / 24) * a), 1e-12);
    const auto c = uc().eval({0.37, 1.1}, 1e-13).value;
    const auto d = uc().eval({-0.37, 1.1}, 1e-13).value;
    EXPECT_LT(std::abs(std::conj(c) - d), 1e-12);
}

TEST(Maass, ModularityExamples)
{
    const HPoint<double> i{0.0, 1.0};
    EXPECT_LT(modularity_residual(uc(), Mat2::T(), i, 1e-13).residual, 1e-12);
    EXPECT_LT(modularity_residual(uc(), generator_matrix(Gen::R, 2), i, 1e-12).residual, 1e-8);
    EXPECT_LT(modularity_residual(ul(), Mat2(1, 0, 4, 1), {0.1, 1.2}, 1e-12).residual, 1e-8);
    EXPECT_THROW(modularity_residual(ul(), generator_matrix(Gen::R, 2), i, 1e-12), NotInGroup);
}

TEST(MaassProperty, ModularityRandomElements)
{
    std::mt19937_64 rng(23);
    const std::vector<HPoint<double>> pts = {{0.1, 1.0}, {-0.3, 1.2}, {0.45, 0.9}, {0.0, 1.5}, {0.25, 2.0}};
    for (int level : {2, 4}) {
        const auto& u = level == 2 ? uc() : ul();
        int checked = 0;
        while (checked < 10) {
            const Mat2 g = random_gamma0(rng, level);
            bool ok = true;
            for (const auto& z : pts) {
                if (mat_act(g, z.z()).imag() < kMaassYFloor) {
                    ok = false;
                }
            }
            if (!ok) {
                continue;
            }
            for (const auto& z : pts) {
                EXPECT_LT(modularity_residual(u, g, z, 1e-12).residual, 1e-8) << g;
            }
            ++checked;
        }
    }
}

TEST(Maass, PhaseDivisorDiscriminates)
{
    // With the /24 phase the level-4 series loses its translation law.
    MaassSpec s = MaassSpec::ul();
    s.phase_divisor = 24;
    const MaassForm<double> wrong(s);
    const HPoint<double> z{0.1, 1.2};
    EXPECT_GT(modularity_residual(wrong, Mat2::T(), z, 1e-12).residual, 1e-3);
    EXPECT_GT(modularity_residual(wrong, Mat2(1, 0, 4, 1), z, 1e-12).residual, 1e-3);
    EXPECT_LT(modularity_residual(ul(), Mat2::T(), z, 1e-12).residual, 1e-12);
}

TEST(Maass, HeckeExamples)
{
    EXPECT_LT(std::abs(hecke_maass(uc(), 5, {0.3, 1.5}, 1e-12).value), 1e-6);
    const auto h23 = hecke_maass(uc(), 23, {0.2, 2.0}, 1e-12).value;
    const auto u23 = uc().eval({0.2, 2.0}, 1e-12).value;
    EXPECT_EQ(maass_hecke_eigenvalue(uc().spec(), 23), -2);
    EXPECT_LT(std::abs(h23 + 2.0 * u23), 1e-6);
    // The reflected branch at p = 7 scales u_L by T_L(-7) = -2.
    const auto h7 = hecke_maass(ul(), 7, {0.1, 2.0}, 1e-12).value;
    const auto u7 = ul().eval({0.1, 2.0}, 1e-12).value;
    EXPECT_EQ(maass_hecke_eigenvalue(ul().spec(), 7), -2);
    EXPECT_LT(std::abs(h7 + 2.0 * u7), 1e-6);
    EXPECT_GT(std::abs(h7 - 2.0 * u7), 0.1);
    EXPECT_THROW(hecke_maass(uc(), 3, {0.3, 1.5}, 1e-12), BadPrime);
}

TEST(MaassProperty, HeckeEigenvaluesAcrossPrimes)
{
    const HPoint<double> z{0.17, 1.6};
    for (int64_t p : primes_in(5, 30)) {
        const double lambda = static_cast<double>(maass_hecke_eigenvalue(uc().spec(), p));
        EXPECT_LT(std::abs(hecke_maass(uc(), p, z, 1e-12).value - lambda * uc().eval(z, 1e-12).value), 1e-8) << p;
    }
    for (int64_t p : primes_in(3, 30)) {
        const double lambda = static_cast<double>(maass_hecke_eigenvalue(ul().spec(), p));
        EXPECT_LT(std::abs(hecke_maass(ul(), p, z, 1e-12).value - lambda * ul().eval(z, 1e-12).value), 1e-8) << p;
    }
}

TEST(Maass, LaplacianEigenvaluePerTerm)
{
    const double x = 0.3, y = 1.1, h = 1e-3;
    for (auto [n, s] : std::vector<std::pair<long, int>>{{1, 24}, {-23, 24}, {25, 24}, {1, 8}, {-7, 8}, {9, 8}}) {
        auto term = [n = n, s = s](double a, double b) { return fourier_term(n, s, a, b); };
        const auto lap = hyperbolic_laplacian(term, x, y, h);
        EXPECT_LT(std::abs(lap - 0.25 * term(x, y)), 1e-6) << n << " " << s;
    }
}

TEST(MaassProperty, TruncationHonesty)
{
    const HPoint<double> z{0.2, 0.6};
    double eps = 1e-3;
    auto prev = uc().eval(z, eps).value;
    for (int i = 0; i < 25; ++i) {
        const auto next = uc().eval(z, eps / 2).value;
        EXPECT_LE(std::abs(next - prev), eps) << eps;
        prev = next;
        eps /= 2;
    }
}

TEST(Maass, FloorAndTable)
{
    EXPECT_THROW(uc().eval({0.0, 0.01}, 1e-10), ConvergenceError);
    EXPECT_NO_THROW(uc().eval({0.0, 0.048}, 1e-12));
    const MaassForm<double> small(MaassSpec::uc(), 1.0, 1e-10);
    EXPECT_THROW(small.eval({0.0, 0.1}, 1e-14), ConvergenceError);
    EXPECT_GT(uc().table_bound(), 1000);
}
