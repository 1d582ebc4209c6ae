#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qmaass/exact/cyc_buffer.hpp"
#include "qmaass/exact/cyclotomic.hpp"

using namespace qmaass;

namespace {

// Oracle for products of (1 - zeta^k): expand in Z[X] without any reduction,
// then evaluate at zeta numerically. Independent of the Phi_M machinery.
std::vector<BigInt> expand_product_dense(int64_t m, const std::vector<int64_t>& ks)
{
    std::vector<BigInt> poly{BigInt(1)};
    for (int64_t k : ks) {
        std::vector<BigInt> next(poly.size() + static_cast<std::size_t>(k), BigInt(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + static_cast<std::size_t>(k)] -= poly[i];
        }
        poly = std::move(next);
    }
    (void)m;
    return poly;
}

std::complex<double> eval_dense(const std::vector<BigInt>& poly, int64_t m)
{
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double t = 2 * M_PI * static_cast<double>(i % static_cast<std::size_t>(m)) / static_cast<double>(m);
        acc += poly[i].get_d() * std::complex<double>(std::cos(t), std::sin(t));
    }
    return acc;
}

CycNumber random_cyc(std::mt19937_64& rng, int64_t order)
{
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<BigRat> poly(static_cast<std::size_t>(order));
    for (auto& c : poly) {
        c = make_rat(coef(rng), den(rng));
    }
    return CycNumber::from_poly(order, poly);
}

} // namespace

TEST(Cyclotomic, PolynomialsOfSmallOrder)
{
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<int64_t>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<int64_t>{1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<int64_t>{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<int64_t>{1, 0, -1, 0, 1}));
    // Phi_105 is the first with a coefficient of absolute value 2.
    auto p105 = cyclotomic_polynomial(105);
    EXPECT_EQ(static_cast<int64_t>(p105.size()) - 1, euler_phi(105));
    EXPECT_EQ(p105[7], -2);
    for (int64_t m : {1, 2, 8, 9, 24, 30, 48, 72, 100, 168}) {
        EXPECT_EQ(cyclotomic_modulus(m).degree, euler_phi(m)) << m;
    }
}

TEST(Cyclotomic, MakeExamples)
{
    EXPECT_EQ(CycNumber::root(1, 0), CycNumber(1));
    EXPECT_EQ(CycNumber::root(4, 2), CycNumber(-1));
    EXPECT_EQ(CycNumber::root(24, 12), CycNumber(-1));
    EXPECT_EQ(CycNumber::root(5, -1), CycNumber::root(5, 4));
}

TEST(Cyclotomic, ArithExamples)
{
    EXPECT_EQ(CycNumber::root(3, 1) + CycNumber::root(3, 2), CycNumber(-1));
    EXPECT_EQ(CycNumber::root(8, 1) * CycNumber::root(8, 1), CycNumber::root(4, 1));
    EXPECT_EQ(CycNumber::root(8, 1) * CycNumber::root(8, 1) - CycNumber::root(4, 1), CycNumber(0));
}

TEST(Cyclotomic, NormOfOneMinusZetaMatchesOracle)
{
    for (int64_t p : {5, 7, 11, 13}) {
        CycNumber prod(1);
        std::vector<int64_t> ks;
        for (int64_t k = 1; k < p; ++k) {
            prod *= CycNumber(1) - CycNumber::root(p, k);
            ks.push_back(k);
        }
        const auto r = prod.as_rational();
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(*r, BigRat(p));
        const auto oracle = eval_dense(expand_product_dense(p, ks), p);
        EXPECT_NEAR(oracle.real(), static_cast<double>(p), 1e-6);
        EXPECT_NEAR(oracle.imag(), 0.0, 1e-6);
    }
}

TEST(Cyclotomic, IsRational)
{
    EXPECT_EQ((CycNumber::root(3, 1) + CycNumber::root(3, 2)).as_rational(), BigRat(-1));
    EXPECT_FALSE(CycNumber::root(5, 1).as_rational().has_value());
}

TEST(Cyclotomic, EmbedExamples)
{
    auto z4 = CycNumber::root(4, 1).embed(30);
    EXPECT_NEAR(z4.re.to_double(), 0.0, 1e-28);
    EXPECT_NEAR(z4.im.to_double(), 1.0, 1e-28);
    auto z6 = CycNumber::root(6, 1).embed(30);
    EXPECT_NEAR(z6.re.to_double(), 0.5, 1e-15);
    EXPECT_NEAR(z6.im.to_double(), std::sqrt(3.0) / 2, 1e-15);
    // Full-precision check of sin(pi/3).
    ApproxReal three(3.0, 40);
    ApproxReal err = abs(z6.im - sqrt(three) / ApproxReal(2.0, 40));
    EXPECT_LT(err.to_double(), 1e-29);
    auto m1 = CycNumber(-1).embed(30);
    EXPECT_EQ(m1.re.to_double(), -1.0);
    EXPECT_EQ(m1.im.to_double(), 0.0);
}

TEST(CyclotomicProperty, RingAxioms)
{
    std::mt19937_64 rng(7);
    const int64_t orders[] = {3, 4, 8, 12, 15, 24};
    for (int trial = 0; trial < 60; ++trial) {
        const int64_t ma = orders[trial % 6];
        const int64_t mb = orders[(trial / 6) % 6];
        const int64_t mc = orders[(trial + 2) % 6];
        CycNumber a = random_cyc(rng, ma);
        CycNumber b = random_cyc(rng, mb);
        CycNumber c = random_cyc(rng, mc);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a - a, CycNumber(0));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), CycNumber(1));
        }
    }
}

TEST(CyclotomicProperty, RootToTheOrderIsOne)
{
    for (int64_t m = 1; m <= 40; ++m) {
        for (int64_t k = -3; k <= m; k += 5) {
            EXPECT_EQ(CycNumber::root(m, k).pow(m), CycNumber(1)) << m << " " << k;
        }
    }
}

TEST(CyclotomicProperty, EmbedRespectsProducts)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        CycNumber a = random_cyc(rng, 12);
        CycNumber b = random_cyc(rng, 20);
        const unsigned prec = 30;
        ApproxComplex lhs = (a * b).embed(prec);
        ApproxComplex rhs = a.embed(prec) * b.embed(prec);
        ApproxReal d = (lhs - rhs).abs();
        EXPECT_LT(d.to_double(), 1e-27);
    }
}

TEST(CyclotomicProperty, ReductionIsIdempotent)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        CycNumber a = random_cyc(rng, 36);
        CycNumber again = CycNumber::from_poly(36, a.coeffs());
        EXPECT_EQ(again.coeffs(), a.coeffs());
    }
}

TEST(CycBuffer, MatchesCycNumberArithmetic)
{
    // (1 + x^2)(1 - x^3)/(1 + x^5) in the 9-cycle, read at zeta_9.
    CycBuffer b = CycBuffer::one(9, 1);
    b.mul_binomial(1, 2);
    b.mul_binomial(-1, 3);
    b.div_binomial(1, 5);
    auto z = [](int64_t k) { return CycNumber::root(9, k); };
    CycNumber expect = (CycNumber(1) + z(2)) * (CycNumber(1) - z(3)) / (CycNumber(1) + z(5));
    EXPECT_EQ(b.to_cyc(), expect);
}

TEST(CycBuffer, NegacyclicDivision)
{
    // x^6 = -1 ring, x -> zeta_12.
    CycBuffer b = CycBuffer::monomial(6, -1, 7, 3);
    b.div_binomial(-1, 3);
    b.div_binomial(-1, 1);
    auto z = [](int64_t k) { return CycNumber::root(12, k); };
    CycNumber expect = CycNumber(3) * z(7) / ((CycNumber(1) - z(3)) * (CycNumber(1) - z(1)));
    EXPECT_EQ(b.to_cyc(), expect);
}

TEST(CycBuffer, ZeroDivisorThrows)
{
    CycBuffer b = CycBuffer::one(8, 1);
    EXPECT_THROW(b.div_binomial(-1, 4), std::domain_error);
}

TEST(CycBuffer, RandomDivisionsRoundTrip)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        const int64_t n = 5 + trial % 11;
        const int s = (trial % 2 == 0) ? 1 : -1;
        CycBuffer b(n, s);
        for (int64_t k = 0; k < n; ++k) {
            b.add_monomial(k, coef(rng));
        }
        const CycNumber before = b.to_cyc();
        const int64_t m = 1 + trial % 7;
        const int eps = 1;
        CycBuffer q = b;
        try {
            q.div_binomial(eps, m);
        } catch (const std::domain_error&) {
            continue;
        }
        q.mul_binomial(eps, m);
        EXPECT_EQ(q.to_cyc(), before) << n << " " << s << " " << m;
    }
}

TEST(CycBuffer, StretchKeepsValue)
{
    CycBuffer b = CycBuffer::one(5, 1);
    b.mul_binomial(1, 2);
    b.div_binomial(1, 1);
    EXPECT_EQ(b.stretch(24).to_cyc(), b.to_cyc());
    CycBuffer c = CycBuffer::monomial(4, -1, 3, 2);
    EXPECT_EQ(c.stretch(3).to_cyc(), c.to_cyc());
}
