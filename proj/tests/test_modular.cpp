#include <gtest/gtest.h>

#include <random>

#include "qmaass/modular/congruence.hpp"
#include "qmaass/modular/words.hpp"

using namespace qmaass;

namespace {

Mat2 R(int level, long e = 1) { return generator_matrix(Gen::R, level, e); }

GenWord random_word(std::mt19937_64& rng, int level)
{
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<long> ex(-4, 4);
    std::bernoulli_distribution coin(0.5);
    GenWord w;
    w.level = level;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        w.letters.push_back({coin(rng) ? Gen::T : Gen::R, ex(rng)});
    }
    w.sign = coin(rng) ? 1 : -1;
    return w;
}

// Random element of Gamma_0(N) built from T, (1 0; N 1) and -I.
Mat2 random_gamma0(std::mt19937_64& rng, int64_t N, int len = 6)
{
    std::uniform_int_distribution<long> ex(-3, 3);
    Mat2 g;
    for (int i = 0; i < len; ++i) {
        g = g * Mat2::T(ex(rng)) * Mat2(1, 0, N * ex(rng), 1);
    }
    if (ex(rng) > 0) {
        g = -g;
    }
    return g;
}

// Brute-force orbit oracle. Every gamma in SL_2(Z) with gamma x = y has the form
// +-M_y T^k M_x^{-1}, where M_x sends infinity to x; scan k for membership.
Mat2 completion(const P1Point& x)
{
    BigInt s, t, g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.num.get_mpz_t(), x.den.get_mpz_t());
    // num * s + den * t = 1, so (num -t; den s) has determinant 1.
    return {BigRat(x.num), BigRat(-t), BigRat(x.den), BigRat(s)};
}

bool orbit_search(const P1Point& x, const P1Point& y, int64_t N, long bound)
{
    const Mat2 mx_inv = mat_inv(completion(x));
    const Mat2 my = completion(y);
    for (long k = -bound; k <= bound; ++k) {
        const Mat2 g = my * Mat2::T(k) * mx_inv;
        if (gamma0_member(g, N)) {
            EXPECT_EQ(mat_act(g, x), y);
            return true;
        }
    }
    return false;
}

int64_t expected_cusp_count(int64_t N)
{
    int64_t total = 0;
    for (int64_t d : divisors(N)) {
        total += euler_phi(std::gcd(d, N / d));
    }
    return total;
}

} // namespace

TEST(Mat2, ActionExamples)
{
    EXPECT_EQ(mat_act(Mat2::T(), P1Point(0, 1)), P1Point(1, 1));
    EXPECT_EQ(mat_act(R(2), P1Point::infinity()), P1Point(1, 2));
    const Mat2 rt = R(2) * Mat2::T(-1);
    EXPECT_EQ(rt * rt, -Mat2::identity());
    EXPECT_EQ(mat_act(Mat2(1, 0, 2, 1), P1Point(-1, 2)), P1Point::infinity());
    EXPECT_EQ(mat_inv(Mat2(3, 1, 2, 1)) * Mat2(3, 1, 2, 1), Mat2::identity());
}

TEST(Mat2, Gamma0Membership)
{
    EXPECT_TRUE(gamma0_member(Mat2::T(), 2));
    EXPECT_FALSE(gamma0_member(R(2), 4));
    EXPECT_TRUE(gamma0_member(Mat2(3, 1, 2, 1), 2));
    EXPECT_FALSE(gamma0_member(Mat2(2, 0, 0, 1), 1));
    EXPECT_FALSE(gamma0_member(Mat2(BigRat(1, 2), 0, 0, 2), 1));
}

TEST(Words, Examples)
{
    GenWord id = decompose_word(Mat2::identity(), 2);
    EXPECT_TRUE(id.letters.empty());
    EXPECT_EQ(id.sign, 1);
    GenWord t5 = decompose_word(Mat2::T(5), 2);
    ASSERT_EQ(t5.letters.size(), 1u);
    EXPECT_EQ(t5.letters[0], (Letter{Gen::T, 5}));
    EXPECT_EQ(t5.sign, 1);
    GenWord mi = decompose_word(-Mat2::identity(), 2);
    EXPECT_EQ(reconstruct(mi), -Mat2::identity());
    EXPECT_EQ(mi.exponent_sum() % 24, 0);
    GenWord mi4 = decompose_word(-Mat2::identity(), 4);
    EXPECT_EQ(mi4.sign, -1);
    EXPECT_EQ(reconstruct(mi4), -Mat2::identity());
    EXPECT_THROW(decompose_word(R(2), 4), NotInGroup);
}

TEST(WordsProperty, RoundTripRandomWords)
{
    std::mt19937_64 rng(2024);
    for (int level : {2, 4}) {
        for (int i = 0; i < 1000; ++i) {
            const Mat2 g = reconstruct(random_word(rng, level));
            const GenWord w = decompose_word(g, level);
            ASSERT_EQ(reconstruct(w), g) << g;
        }
    }
}

TEST(WordsProperty, LengthIsLogarithmic)
{
    std::mt19937_64 rng(99);
    for (int level : {2, 4}) {
        for (int i = 0; i < 200; ++i) {
            GenWord src = random_word(rng, level);
            const Mat2 g = reconstruct(src);
            const GenWord w = decompose_word(g, level);
            BigInt big = 1;
            for (const BigRat* e : {&g.a, &g.b, &g.c, &g.d}) {
                big = std::max(big, BigInt(abs(e->get_num())));
            }
            const double bits = static_cast<double>(mpz_sizeinbase(big.get_mpz_t(), 2));
            EXPECT_LE(static_cast<double>(w.letters.size()), 2.0 * bits + 8.0) << g;
        }
    }
}

TEST(Generators, Level1ContainsSAndT)
{
    auto gens = gamma0_generators(1);
    auto has = [&](const Mat2& m) {
        for (const auto& g : gens) {
            if (g == m || g == -m) {
                return true;
            }
        }
        return false;
    };
    EXPECT_TRUE(has(Mat2::S()));
    EXPECT_TRUE(has(Mat2::T()));
}

TEST(Generators, IndexAndMembership)
{
    for (int64_t N : {1, 2, 3, 4, 6, 10, 12, 14, 22, 46, 202}) {
        Gamma0Cosets cos(N);
        int64_t expect = N;
        for (auto [p, e] : factorize(N)) {
            expect = expect / p * (p + 1);
        }
        EXPECT_EQ(static_cast<int64_t>(cos.index()), expect) << N;
        for (const auto& g : cos.generators()) {
            ASSERT_TRUE(gamma0_member(g, N)) << g;
        }
    }
}

TEST(Generators, Level2And4GenerateTheNamedElements)
{
    Gamma0Cosets c2(2);
    for (const Mat2& m : {Mat2::T(), R(2)}) {
        auto r = c2.rewrite(m);
        EXPECT_EQ(c2.evaluate(r), m);
        EXPECT_NO_THROW(decompose_word(m, 2));
    }
    Gamma0Cosets c4(4);
    for (const Mat2& m : {Mat2::T(), R(4), -Mat2::identity()}) {
        auto r = c4.rewrite(m);
        EXPECT_EQ(c4.evaluate(r), m);
    }
}

TEST(GeneratorsProperty, RewriteRandomElements)
{
    std::mt19937_64 rng(17);
    for (int64_t N : {2, 4, 6, 10, 22}) {
        Gamma0Cosets cos(N);
        for (int i = 0; i < 40; ++i) {
            const Mat2 g = random_gamma0(rng, N, 3);
            auto r = cos.rewrite(g);
            ASSERT_EQ(cos.evaluate(r), g) << N << " " << g;
        }
    }
}

TEST(GeneratorsProperty, RandomProductsStayInGroup)
{
    std::mt19937_64 rng(23);
    for (int64_t N : {2, 4, 14, 26}) {
        auto gens = gamma0_generators(N);
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        std::bernoulli_distribution coin(0.5);
        for (int i = 0; i < 50; ++i) {
            Mat2 g;
            for (int k = 0; k < 6; ++k) {
                const Mat2& h = gens[pick(rng)];
                g = g * (coin(rng) ? h : mat_inv(h));
            }
            ASSERT_TRUE(gamma0_member(g, N));
        }
    }
}

TEST(Cusps, Level4Examples)
{
    const auto& reps = cusp_representatives(4);
    ASSERT_EQ(reps.size(), 3u);
    EXPECT_EQ(cusp_classify(BigRat(1, 2), 4).representative, P1Point(1, 2));
    EXPECT_EQ(cusp_classify(BigRat(3, 4), 4).representative, P1Point::infinity());
    EXPECT_EQ(cusp_classify(BigRat(1, 3), 4).representative, P1Point(0, 1));
    EXPECT_EQ(cusp_classify(P1Point::infinity(), 4).representative, P1Point::infinity());
    // Explicit gammas for the derived examples.
    EXPECT_TRUE(orbit_search(P1Point(3, 4), P1Point::infinity(), 4, 5));
    EXPECT_TRUE(orbit_search(P1Point(1, 3), P1Point(0, 1), 4, 5));
}

TEST(Cusps, CountsMatchFormula)
{
    for (int64_t N = 1; N <= 60; ++N) {
        EXPECT_EQ(static_cast<int64_t>(cusp_representatives(N).size()), expected_cusp_count(N)) << N;
    }
}

TEST(Cusps, AgreesWithBruteForceOrbitSearch)
{
    for (int64_t N : {4, 6, 8, 9, 12}) {
        const auto& reps = cusp_representatives(N);
        for (long c = 1; c <= 12; ++c) {
            for (long a = -c; a <= c; ++a) {
                if (std::gcd(a, c) != 1) {
                    continue;
                }
                const P1Point x(a, c);
                const P1Point r = cusp_classify(x, N).representative;
                EXPECT_TRUE(orbit_search(x, r, N, 4 * N)) << N << " " << x << " -> " << r;
                for (const auto& other : reps) {
                    if (!(other == r)) {
                        EXPECT_FALSE(cusps_equivalent(x, other, N));
                    }
                }
            }
        }
    }
}

TEST(CuspsProperty, OrbitInvariance)
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 40);
    const int64_t levels[] = {2, 4, 6, 12};
    for (int i = 0; i < 200; ++i) {
        const int64_t N = levels[i % 4];
        const Mat2 g = random_gamma0(rng, N, 3);
        const P1Point x(num(rng), den(rng));
        EXPECT_EQ(cusp_classify(mat_act(g, x), N), cusp_classify(x, N)) << g << " " << x;
    }
}

TEST(HeckeCosets, Shape)
{
    auto b5 = hecke_cosets(5);
    ASSERT_EQ(b5.size(), 6u);
    EXPECT_EQ(b5[3], Mat2(1, 3, 0, 5));
    EXPECT_EQ(b5.back(), Mat2(5, 0, 0, 1));
    EXPECT_EQ(hecke_cosets(2).size(), 3u);
    for (const auto& m : hecke_cosets(13)) {
        EXPECT_EQ(m.det(), 13);
    }
    EXPECT_THROW(hecke_cosets(9), BadPrime);
}
