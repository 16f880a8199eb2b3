#include "ainf/errors.hpp"
#include "ainf/graded.hpp"
#include "ainf/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace ainf;

namespace {

// Rank by brute force over F_p: the number of distinct vectors in the span
// is p^rank.
std::size_t brute_rank(int p, const std::vector<std::vector<int>>& rows, int n)
{
    std::set<std::vector<int>> span;
    std::size_t k = rows.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i)
        total *= static_cast<std::size_t>(p);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        std::size_t c = code;
        for (std::size_t i = 0; i < k; ++i) {
            int a = static_cast<int>(c % static_cast<std::size_t>(p));
            c /= static_cast<std::size_t>(p);
            for (int j = 0; j < n; ++j)
                v[static_cast<std::size_t>(j)] = (v[static_cast<std::size_t>(j)] + a * rows[i][static_cast<std::size_t>(j)]) % p;
        }
        span.insert(v);
    }
    std::size_t r = 0, s = span.size();
    while (s > 1) {
        s /= static_cast<std::size_t>(p);
        ++r;
    }
    return r;
}

Vec to_vec(const Ring& r, const std::vector<int>& v)
{
    Vec out(r);
    for (std::size_t j = 0; j < v.size(); ++j)
        out.add(static_cast<int>(j), Scalar(v[j]));
    return out;
}

} // namespace

TEST_CASE("prime field arithmetic agrees with integer arithmetic mod p")
{
    for (int p : {2, 3, 5, 7}) {
        Ring r = Ring::prime_field(p);
        for (int a = -10; a <= 10; ++a)
            for (int b = -10; b <= 10; ++b) {
                auto mod = [p](int v) { return ((v % p) + p) % p; };
                CHECK(r.add(a, b) == mod(a + b));
                CHECK(r.mul(a, b) == mod(a * b));
                if (mod(b) != 0)
                    CHECK(r.mul(r.div(a, b), b) == mod(a));
            }
        if (p == 2)
            CHECK_THROWS(r.normalize(Scalar(1) / 2));
        else
            CHECK(r.normalize(Scalar(1) / 2) == r.inv(2));
    }
}

TEST_CASE("non-prime characteristic is refused")
{
    CHECK_THROWS(Ring::prime_field(4));
    CHECK_THROWS(Ring::prime_field(1));
}

TEST_CASE("rationals and integers")
{
    Ring q = Ring::rationals();
    CHECK(q.mul(q.inv(3), 3) == 1);
    Ring z = Ring::integers();
    CHECK_FALSE(z.is_field());
    CHECK_THROWS_AS(z.inv(2), NotAField);
    CHECK(z.inv(-1) == -1);
    CHECK_THROWS(require_field(z, "kernel"));
}

TEST_CASE("sign helper")
{
    Ring r = Ring::prime_field(7);
    CHECK(r.sign(0) == 1);
    CHECK(r.sign(3) == 6);
    CHECK(r.sign(-3) == 6);
}

TEST_CASE("Lin drops zero coefficients")
{
    Ring r = Ring::prime_field(3);
    Lin<int> a(r, 1, 2);
    a.add(1, 1);
    CHECK(a.is_zero());
    Lin<int> b(r, 0, 5);
    CHECK(b.coeff(0) == 2);
    CHECK((b - b).is_zero());
}

TEST_CASE("Echelon rank matches brute force over small fields")
{
    std::mt19937_64 rng(7);
    for (int p : {2, 3}) {
        Ring r = Ring::prime_field(p);
        for (int trial = 0; trial < 60; ++trial) {
            int n = 1 + static_cast<int>(rng() % 4);
            int k = 1 + static_cast<int>(rng() % 4);
            std::vector<std::vector<int>> rows;
            std::vector<Vec> vs;
            for (int i = 0; i < k; ++i) {
                std::vector<int> row;
                for (int j = 0; j < n; ++j)
                    row.push_back(static_cast<int>(rng() % static_cast<unsigned>(p)));
                rows.push_back(row);
                vs.push_back(to_vec(r, row));
            }
            CHECK(rank_of(r, vs) == brute_rank(p, rows, n));
            auto ker = kernel(r, vs);
            CHECK(ker.size() + rank_of(r, vs) == vs.size());
            for (const auto& z : ker) {
                Vec sum(r);
                for (const auto& [i, c] : z)
                    sum.add(vs[static_cast<std::size_t>(i)], c);
                CHECK(sum.is_zero());
            }
        }
    }
}

TEST_CASE("preimage solves or refuses")
{
    Ring r = Ring::prime_field(5);
    std::vector<Vec> cols{to_vec(r, {1, 0, 1}), to_vec(r, {0, 1, 1})};
    auto x = preimage(r, cols, to_vec(r, {2, 3, 0}));
    REQUIRE(x);
    Vec back(r);
    for (const auto& [i, c] : *x)
        back.add(cols[static_cast<std::size_t>(i)], c);
    CHECK(back == to_vec(r, {2, 3, 0}));
    CHECK_FALSE(preimage(r, cols, to_vec(r, {1, 0, 0})));
}

TEST_CASE("Echelon insert reports dependency tags")
{
    Ring r = Ring::prime_field(7);
    Echelon e(r);
    CHECK_FALSE(e.insert(to_vec(r, {1, 2}), Vec(r, 0)).has_value());
    CHECK_FALSE(e.insert(to_vec(r, {0, 1}), Vec(r, 1)).has_value());
    auto dep = e.insert(to_vec(r, {2, 5}), Vec(r, 2));
    REQUIRE(dep);
    // {2,5} = 2*{1,2} + 1*{0,1}: the relation t2 - 2 t0 - t1
    CHECK(dep->coeff(0) == r.neg(2));
    CHECK(dep->coeff(1) == r.neg(1));
    CHECK(dep->coeff(2) == 1);
}

TEST_CASE("homology of a small complex")
{
    // 0 -> k{a} -> k{b, c} -> k{e} -> 0 with d a = b + c, d b = e, d c = -e
    Ring r = Ring::prime_field(7);
    GradedModule m(r, -1, 2);
    int a = m.add("a", -1), b = m.add("b", 0), c = m.add("c", 0), e = m.add("e", 1);
    Vec da(r, b);
    da.add(c, 1);
    Vec db(r, e), dc(r, e, -1);
    std::vector<Vec> images(4, Vec(r));
    images[static_cast<std::size_t>(a)] = da;
    images[static_cast<std::size_t>(b)] = db;
    images[static_cast<std::size_t>(c)] = dc;
    ChainMap d(m, m, 1, images);
    Homology h = homology(m, d, -1, 1);
    CHECK(h.rank(-1) == 0);
    CHECK(h.rank(0) == 0);
    CHECK(h.rank(1) == 0);
    CHECK(h.is_boundary(0, da));
}

TEST_CASE("coefficient vectors enumerate the nonzero part of F_p^n up to a cap")
{
    Ring r = Ring::prime_field(3);
    CHECK(coefficient_vectors(r, 2, 1000).size() == 8);
    CHECK(coefficient_vectors(r, 4, 10).size() <= 10);
}
