#pragma once

#include <array>
#include <map>
#include <numeric>
#include <memory>
#include <mutex>
#include <queue>
#include <unordered_map>
#include <vector>

#include "qmaass/errors.hpp"
#include "qmaass/modular/mat2.hpp"

namespace qmaass {

// Right cosets of Gamma_0(N) in SL_2(Z), labelled by bottom rows in P^1(Z/N),
// together with the Schreier generators they induce.
class Gamma0Cosets {
  public:
    explicit Gamma0Cosets(int64_t N) : N_(N)
    {
        if (N < 1) {
            throw std::invalid_argument("Gamma0Cosets: N must be positive");
        }
        for (int64_t u = 1; u <= N; ++u) {
            if (std::gcd(u, N) == 1) {
                units_.push_back(u % N);
            }
        }
        enumerate();
    }

    int64_t level() const { return N_; }
    std::size_t index() const { return reps_.size(); }
    const std::vector<Mat2>& reps() const { return reps_; }
    const std::vector<Mat2>& generators() const { return gens_; }

    // Coset id of an integral matrix with det 1.
    std::size_t coset_of(const Mat2& g) const
    {
        return id_of(mod_floor(g.c.get_num(), N_), mod_floor(g.d.get_num(), N_));
    }

    struct Rewritten {
        std::vector<std::pair<std::size_t, int>> factors; // (generator index, +-1)
        int sign = 1;
    };

    // Writes g in Gamma_0(N) as +- a product of generators().
    Rewritten rewrite(const Mat2& g) const
    {
        if (!gamma0_member(g, N_)) {
            throw NotInGroup("rewrite: matrix not in Gamma_0(N)");
        }
        Rewritten out;
        std::size_t x = coset_of(Mat2::identity());
        for (const auto& [letter, inv] : st_word(g, out.sign)) {
            if (!inv) {
                const auto& h = schreier_[x][letter];
                if (h.gen >= 0) {
                    out.factors.emplace_back(static_cast<std::size_t>(h.gen), 1);
                }
                out.sign *= h.sign;
                x = step_[x][letter];
            } else {
                // Only T^{-1} occurs: rep(x) T^{-1} rep(y)^{-1} = h(y, T)^{-1}.
                const std::size_t y = step_inv_t_[x];
                const auto& h = schreier_[y][1];
                if (h.gen >= 0) {
                    out.factors.emplace_back(static_cast<std::size_t>(h.gen), -1);
                }
                out.sign *= h.sign;
                x = y;
            }
        }
        return out;
    }

    Mat2 evaluate(const Rewritten& r) const
    {
        Mat2 m;
        for (const auto& [i, e] : r.factors) {
            m = m * (e > 0 ? gens_[i] : mat_inv(gens_[i]));
        }
        return r.sign < 0 ? -m : m;
    }

  private:
    struct SchreierEntry {
        long gen = -1; // -1 when the Schreier element is +-I
        int sign = 1;  // Schreier element = sign * gens_[gen] (or sign * I)
    };

    std::pair<int64_t, int64_t> canonical(int64_t c, int64_t d) const
    {
        std::pair<int64_t, int64_t> best{N_, N_};
        for (int64_t u : units_) {
            std::pair<int64_t, int64_t> cand{(u * c) % N_, (u * d) % N_};
            if (cand < best) {
                best = cand;
            }
        }
        return best;
    }

    std::size_t id_of(int64_t c, int64_t d) const
    {
        auto key = canonical(c, d);
        return ids_.at(key.first * N_ + key.second);
    }

    void enumerate()
    {
        const Mat2 S = Mat2::S();
        const Mat2 T = Mat2::T();
        auto key_of = [&](const Mat2& g) {
            auto k = canonical(mod_floor(g.c.get_num(), N_), mod_floor(g.d.get_num(), N_));
            return k.first * N_ + k.second;
        };
        ids_[key_of(Mat2::identity())] = 0;
        reps_.push_back(Mat2::identity());
        std::queue<std::size_t> todo;
        todo.push(0);
        while (!todo.empty()) {
            const std::size_t x = todo.front();
            todo.pop();
            for (const Mat2* s : {&S, &T}) {
                const Mat2 g = reps_[x] * *s;
                const int64_t key = key_of(g);
                if (ids_.find(key) == ids_.end()) {
                    ids_[key] = reps_.size();
                    reps_.push_back(g);
                    todo.push(reps_.size() - 1);
                }
            }
        }
        const std::size_t n = reps_.size();
        step_.assign(n, {0, 0});
        step_inv_t_.assign(n, 0);
        schreier_.assign(n, {});
        const Mat2 minus_i = -Mat2::identity();
        for (std::size_t x = 0; x < n; ++x) {
            int li = 0;
            for (const Mat2* s : {&S, &T}) {
                const Mat2 g = reps_[x] * *s;
                const std::size_t y = ids_.at(key_of(g));
                step_[x][static_cast<std::size_t>(li)] = y;
                if (li == 1) {
                    step_inv_t_[y] = x;
                }
                const Mat2 h = g * mat_inv(reps_[y]);
                SchreierEntry e;
                if (h == Mat2::identity()) {
                    e.sign = 1;
                } else if (h == minus_i) {
                    e.sign = -1;
                } else {
                    e = register_generator(h);
                }
                schreier_[x][static_cast<std::size_t>(li)] = e;
                ++li;
            }
        }
    }

    SchreierEntry register_generator(const Mat2& h)
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i] == h) {
                return {static_cast<long>(i), 1};
            }
            if (gens_[i] == -h) {
                return {static_cast<long>(i), -1};
            }
        }
        gens_.push_back(h);
        return {static_cast<long>(gens_.size() - 1), 1};
    }

    // Word in S (letter 0) and T^{+-1} (letter 1) equal to sign * g.
    static std::vector<std::pair<std::size_t, bool>> st_word(const Mat2& g, int& sign)
    {
        BigInt a = g.a.get_num(), b = g.b.get_num(), c = g.c.get_num(), d = g.d.get_num();
        std::vector<std::pair<std::size_t, bool>> word;
        auto push_t = [&](const BigInt& n) {
            const int64_t k = to_int64(n);
            for (int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
                word.emplace_back(1, k < 0);
            }
        };
        while (c != 0) {
            BigInt n;
            mpz_fdiv_q(n.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
            a -= n * c;
            b -= n * d;
            push_t(n);
            // S^{-1} on the left: (a b; c d) -> (c d; -a -b).
            std::swap(a, c);
            std::swap(b, d);
            c = -c;
            d = -d;
            word.emplace_back(0, false);
        }
        if (a < 0) {
            sign = -sign;
            b = -b;
        }
        push_t(b);
        return word;
    }

    int64_t N_;
    std::vector<int64_t> units_;
    std::unordered_map<int64_t, std::size_t> ids_;
    std::vector<Mat2> reps_;
    std::vector<Mat2> gens_;
    std::vector<std::array<std::size_t, 2>> step_;
    std::vector<std::size_t> step_inv_t_;
    std::vector<std::array<SchreierEntry, 2>> schreier_;
};

inline std::vector<Mat2> gamma0_generators(int64_t N) { return Gamma0Cosets(N).generators(); }

// Cusp equivalence for Gamma_0(N): a1/c1 ~ a2/c2 iff s1 c2 = s2 c1 modulo
// gcd(c1 c2, N), where a_i s_i = 1 mod c_i.
inline bool cusps_equivalent(const P1Point& x, const P1Point& y, int64_t N)
{
    auto inv_mod = [](const BigInt& a, const BigInt& c) {
        if (c == 0) {
            return BigInt(a); // a = +-1
        }
        BigInt s;
        mpz_invert(s.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (c == 1) {
            s = 0;
        }
        return s;
    };
    const BigInt s1 = inv_mod(x.num, x.den);
    const BigInt s2 = inv_mod(y.num, y.den);
    BigInt m;
    const BigInt prod = x.den * y.den;
    mpz_gcd_ui(m.get_mpz_t(), prod.get_mpz_t(), static_cast<unsigned long>(N));
    if (prod == 0) {
        m = N;
    }
    const BigInt diff = s1 * y.den - s2 * x.den;
    return mod_floor(diff, to_int64(m)) == 0;
}

struct CuspClass {
    int64_t level = 1;
    P1Point representative;
    friend bool operator==(const CuspClass& a, const CuspClass& b)
    {
        return a.level == b.level && a.representative == b.representative;
    }
};

// Canonical representatives: infinity for gcd(c, N) = N, otherwise a/d with d | N
// a proper divisor and a >= 0 minimal in its class.
inline const std::vector<P1Point>& cusp_representatives(int64_t N)
{
    static std::mutex mu;
    static std::map<int64_t, std::vector<P1Point>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) {
        return it->second;
    }
    std::vector<P1Point> reps;
    for (int64_t d : divisors(N)) {
        if (d == N) {
            reps.push_back(P1Point::infinity());
            continue;
        }
        const int64_t g = std::gcd(d, N / d);
        const int64_t want = euler_phi(g);
        int64_t found = 0;
        for (int64_t a = 0; found < want; ++a) {
            if (std::gcd(a, d) != 1) {
                continue;
            }
            P1Point cand(a, d);
            bool fresh = true;
            for (const auto& r : reps) {
                if (cusps_equivalent(cand, r, N)) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) {
                reps.push_back(cand);
                ++found;
            }
        }
    }
    return cache.emplace(N, std::move(reps)).first->second;
}

inline CuspClass cusp_classify(const P1Point& x, int64_t N)
{
    for (const auto& r : cusp_representatives(N)) {
        if (cusps_equivalent(x, r, N)) {
            return {N, r};
        }
    }
    throw std::logic_error("cusp_classify: no representative matched");
}

inline CuspClass cusp_classify(const BigRat& x, int64_t N) { return cusp_classify(P1Point::from_rat(x), N); }

// beta_0, ..., beta_{p-1} followed by beta_inf.
inline std::vector<Mat2> hecke_cosets(int64_t p)
{
    if (!is_prime(p)) {
        throw BadPrime("hecke_cosets: p must be prime");
    }
    std::vector<Mat2> out;
    for (int64_t j = 0; j < p; ++j) {
        out.emplace_back(1, j, 0, p);
    }
    out.emplace_back(p, 0, 0, 1);
    return out;
}

} // namespace qmaass
