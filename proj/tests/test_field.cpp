#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfa/field.hpp"

#include <map>
#include <set>

using namespace lfa;

namespace {

std::shared_ptr<FieldParams> laurent(std::uint32_t p, std::uint32_t c = 1) {
    return std::make_shared<FieldParams>(Characteristic::positive, p, c);
}
std::shared_ptr<FieldParams> padic(std::uint32_t p) {
    return std::make_shared<FieldParams>(Characteristic::zero, p);
}

// independent oracle: multiply polynomials over F_p and reduce mod the modulus
std::uint32_t fq_mul_oracle(const FieldParams& f, std::uint32_t a, std::uint32_t b) {
    std::uint32_t p = f.p(), c = f.c();
    std::vector<std::uint32_t> da(c), db(c), prod(2 * c, 0);
    for (std::uint32_t i = 0; i < c; ++i, a /= p, b /= p) {
        da[i] = a % p;
        db[i] = b % p;
    }
    for (std::uint32_t i = 0; i < c; ++i)
        for (std::uint32_t j = 0; j < c; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (std::size_t d = prod.size(); d-- > c;) {
        std::uint32_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (std::uint32_t i = 0; i < c; ++i)
            prod[d - c + i] = (prod[d - c + i] + (p - 1) * lead * f.modulus()[i] % p * 1u) % p;
    }
    std::uint32_t v = 0;
    for (std::uint32_t i = c; i-- > 0;) v = v * p + prod[i];
    return v;
}

// exhaustive element window: all sums over digit positions [lo, lo+len)
std::vector<LocalElement> element_window(const FieldParams& f, int lo, int len) {
    std::vector<LocalElement> out;
    std::uint64_t total = ipow64(f.q(), static_cast<std::uint32_t>(len));
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<FqElem> digits(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) {
            digits[static_cast<std::size_t>(i)] = FqElem{static_cast<std::uint32_t>(c % f.q())};
            c /= f.q();
        }
        out.push_back(LocalElement::make(lo, std::move(digits)));
    }
    return out;
}

} // namespace

TEST_CASE("field parameter validation") {
    CHECK_THROWS_AS(FieldParams(Characteristic::zero, 4), parameter_error);  // not prime
    CHECK_THROWS_AS(FieldParams(Characteristic::zero, 2, 2), parameter_error); // Q_p needs c=1
    // t^2 + 1 = (t+1)^2 over F_2
    CHECK_THROWS_AS(FieldParams(Characteristic::positive, 2, 2, {1, 0, 1}), parameter_error);
    CHECK_NOTHROW(FieldParams(Characteristic::positive, 2, 2, {1, 1, 1}));
    for (auto [p, c] : {std::pair{2u, 2u}, {2u, 3u}, {2u, 4u}, {3u, 2u}, {3u, 3u}})
        CHECK_NOTHROW(FieldParams(Characteristic::positive, p, c));
}

TEST_CASE("residue field arithmetic") {
    auto f2 = laurent(2);
    CHECK(fq_add(*f2, FqElem{1}, FqElem{1}).v == 0); // characteristic 2

    auto f4 = laurent(2, 2);
    // t * t -> t + 1, frozen from the polynomial reduction oracle
    CHECK(fq_mul_oracle(*f4, 2, 2) == 3);
    CHECK(fq_mul(*f4, FqElem{2}, FqElem{2}).v == 3);

    for (auto fp : {laurent(2, 2), laurent(2, 3), laurent(3, 2)}) {
        const std::uint32_t q = fp->q();
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(fq_mul(*fp, FqElem{a}, FqElem{1}).v == a); // identity
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(fq_mul(*fp, FqElem{a}, FqElem{b}).v == fq_mul_oracle(*fp, a, b));
                // commutativity and distributivity spot checks
                CHECK(fq_mul(*fp, FqElem{a}, FqElem{b}).v == fq_mul(*fp, FqElem{b}, FqElem{a}).v);
                for (std::uint32_t cc : {0u, 1u, q - 1}) {
                    auto lhs = fq_mul(*fp, FqElem{a}, fq_add(*fp, FqElem{b}, FqElem{cc}));
                    auto rhs = fq_add(*fp, fq_mul(*fp, FqElem{a}, FqElem{b}),
                                      fq_mul(*fp, FqElem{a}, FqElem{cc}));
                    CHECK(lhs.v == rhs.v);
                }
            }
        }
        // associativity, exhaustive for q <= 9
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                for (std::uint32_t cc = 0; cc < q; ++cc) {
                    auto l = fq_mul(*fp, fq_mul(*fp, FqElem{a}, FqElem{b}), FqElem{cc});
                    auto r = fq_mul(*fp, FqElem{a}, fq_mul(*fp, FqElem{b}, FqElem{cc}));
                    CHECK(l.v == r.v);
                }
    }

    CHECK_THROWS_AS(fq_add(*f2, FqElem{5}, FqElem{0}), parameter_error);
}

TEST_CASE("element addition") {
    auto f2 = laurent(2);
    // char 2: X^{-1} + X^{-1} = 0
    LocalElement xinv = LocalElement::prime_power(-1);
    CHECK(elem_add(*f2, xinv, xinv).is_zero());

    // Q_2: 1 + 1 = 2, digits (0,1), |2| = 1/2
    auto q2 = padic(2);
    LocalElement one = LocalElement::one();
    LocalElement two = elem_add(*q2, one, one);
    CHECK(two == LocalElement::prime_power(1));
    CHECK(two.abs_value(*q2) == Rational(1, 2));

    // |x| = q, |y| = 1 -> |x+y| = q
    for (auto fp : {laurent(3), padic(3)}) {
        LocalElement x = LocalElement::prime_power(-1);
        LocalElement y = LocalElement::one();
        CHECK(elem_add(*fp, x, y).abs_value(*fp) == Rational(3));
    }
}

TEST_CASE("element multiplication") {
    for (auto fp : {laurent(2), padic(5), laurent(3, 2)}) {
        LocalElement p1 = LocalElement::prime_power(1);
        LocalElement pm1 = LocalElement::prime_power(-1);
        CHECK(elem_mul(*fp, p1, pm1) == LocalElement::one());
        // |p^{-k} x| = q^k |x|
        LocalElement x = elem_add(*fp, LocalElement::one(), LocalElement::prime_power(2));
        LocalElement scaled = elem_mul(*fp, LocalElement::prime_power(-3), x);
        CHECK(scaled.abs_value(*fp) == x.abs_value(*fp) * rat_pow(fp->q(), 3));
    }
    // Q_3: 2 * 2 = 4 = digits (1,1), |4| = 1
    auto q3 = padic(3);
    LocalElement two = LocalElement::make(0, {FqElem{2}});
    LocalElement four = elem_mul(*q3, two, two);
    CHECK(four == LocalElement::make(0, {FqElem{1}, FqElem{1}}));
    CHECK(four.abs_value(*q3) == Rational(1));
}

TEST_CASE("ultrametric and multiplicativity on an exhaustive window") {
    for (auto fp : {laurent(2), padic(2), laurent(3), padic(3)}) {
        int len = fp->q() == 2 ? 6 : 4;
        auto elems = element_window(*fp, -3, len);
        for (const auto& x : elems) {
            for (const auto& y : elems) {
                Rational ax = x.abs_value(*fp), ay = y.abs_value(*fp);
                Rational as = elem_add(*fp, x, y).abs_value(*fp);
                CHECK(as <= std::max(ax, ay));
                if (ax != ay) CHECK(as == std::max(ax, ay));
                CHECK(elem_mul(*fp, x, y).abs_value(*fp) == ax * ay);
            }
        }
    }
}

TEST_CASE("precision cap raises hard errors") {
    auto f2 = laurent(2);
    auto narrow = std::make_shared<FieldParams>(*f2);
    narrow->set_max_digits(8);
    LocalElement wide = LocalElement::make(0, std::vector<FqElem>(6, FqElem{1}));
    CHECK_THROWS_AS(elem_mul(*narrow, wide, wide), precision_error);
    LocalElement far = LocalElement::prime_power(-10);
    CHECK_THROWS_AS(elem_add(*narrow, far, LocalElement::prime_power(10)), precision_error);
}

TEST_CASE("u(n) digit construction") {
    for (auto fp : {laurent(2), padic(2)}) {
        CHECK(u_of(*fp, 0).is_zero()); // u(0) = 0
        // q=2: u(3) = p^{-1} + p^{-2}
        CHECK(u_of(*fp, 3) == LocalElement::make(-2, {FqElem{1}, FqElem{1}}));
        // q=2: |u(5)| = 8
        CHECK(u_of(*fp, 5).abs_value(*fp) == Rational(8));
    }
}

TEST_CASE("u(n) norm law |u(n)| = q^k iff q^{k-1} <= n < q^k") {
    for (auto fp : {laurent(2), padic(2), laurent(3), padic(3), laurent(2, 2)}) {
        std::uint64_t limit = ipow64(fp->q(), fp->q() <= 3 ? 6 : 4);
        Rational expected(1);
        std::uint64_t next = 1;
        for (std::uint64_t n = 0; n < limit; ++n) {
            if (n == 0) {
                CHECK(u_of(*fp, 0).abs_value(*fp) == Rational(0));
                continue;
            }
            if (n == next) {
                expected *= fp->q();
                next *= fp->q();
            }
            CHECK(u_of(*fp, n).abs_value(*fp) == expected);
        }
    }
}

TEST_CASE("u composition law u(r q^k + s) = u(r) p^{-k} + u(s)") {
    for (auto fp : {laurent(2), padic(2), laurent(3), padic(3), laurent(2, 2)}) {
        const std::uint64_t q = fp->q();
        for (std::uint64_t r = 0; r < q * q; ++r) {
            for (int k = 0; k <= 3; ++k) {
                std::uint64_t qk = ipow64(q, static_cast<std::uint32_t>(k));
                for (std::uint64_t s = 0; s < qk; ++s) {
                    LocalElement lhs = u_of(*fp, r * qk + s);
                    LocalElement rhs = elem_add(
                        *fp, elem_mul(*fp, u_of(*fp, r), LocalElement::prime_power(-k)),
                        u_of(*fp, s));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("positive characteristic: u-image is a group window-wise") {
    for (auto fp : {laurent(2), laurent(3), laurent(2, 2)}) {
        const std::uint64_t q = fp->q();
        for (int m = 1; m <= 3; ++m) {
            std::uint64_t qm = ipow64(q, static_cast<std::uint32_t>(m));
            std::set<std::uint64_t> neg_indices;
            for (std::uint64_t n = 0; n < qm; ++n) {
                auto idx = u_index_of(*fp, elem_neg(*fp, u_of(*fp, n)));
                REQUIRE(idx.has_value());
                neg_indices.insert(*idx);
            }
            std::set<std::uint64_t> all;
            for (std::uint64_t n = 0; n < qm; ++n) all.insert(n);
            CHECK(neg_indices == all); // {u(k)} = {-u(k)}

            for (std::uint64_t l : {std::uint64_t(1), qm - 1}) {
                std::set<std::uint64_t> mapped;
                for (std::uint64_t n = 0; n < qm; ++n) {
                    auto idx = u_index_of(*fp, elem_add(*fp, u_of(*fp, l), u_of(*fp, n)));
                    REQUIRE(idx.has_value());
                    mapped.insert(*idx);
                }
                CHECK(mapped == all); // translation permutes the window
            }
        }
    }
}

TEST_CASE("haar measure of balls") {
    auto f2 = laurent(2);
    auto f3 = padic(3);
    CHECK(haar_measure(*f2, Ball{0, 0, 0}) == Rational(1));
    CHECK(haar_measure(*f3, Ball{0, 2, 5}) == Rational(1, 9));
    CHECK(haar_measure(*f2, Ball{-1, -1, 0}) == Rational(2));
}

TEST_CASE("ball relations are nested or disjoint") {
    auto f2 = laurent(2);
    Ball D{0, 0, 0};
    Ball P1{0, 1, 0};
    Ball P1_other{0, 1, 1};
    CHECK(ball_relation(*f2, D, D) == BallRelation::equal);
    CHECK(ball_relation(*f2, D, P1) == BallRelation::a_contains_b);
    CHECK(ball_relation(*f2, P1, D) == BallRelation::b_contains_a);
    CHECK(ball_relation(*f2, P1, P1_other) == BallRelation::disjoint);
    CHECK_THROWS_AS(ball_relation(*f2, Ball{0, 1, 0}, Ball{-1, 1, 0}), parameter_error);

    // exhaustive pairwise: no partial overlap is ever reported, and the
    // relation matches brute-force membership of representatives
    auto f3 = laurent(3);
    std::vector<Ball> balls;
    for (int lvl = 0; lvl <= 3; ++lvl)
        for (std::uint64_t c = 0; c < cell_count(*f3, 0, lvl); ++c)
            balls.push_back(Ball{0, lvl, c});
    for (const auto& a : balls)
        for (const auto& b : balls) {
            auto rel = ball_relation(*f3, a, b);
            // membership oracle at level 3
            std::set<std::uint64_t> ca, cb;
            for (std::uint64_t j = 0; j < cell_count(*f3, 0, 3); ++j) {
                if (j % cell_count(*f3, 0, a.level) == a.center) ca.insert(j);
                if (j % cell_count(*f3, 0, b.level) == b.center) cb.insert(j);
            }
            std::set<std::uint64_t> inter;
            for (auto x : ca)
                if (cb.count(x)) inter.insert(x);
            if (inter.empty())
                CHECK(rel == BallRelation::disjoint);
            else if (ca == cb)
                CHECK(rel == BallRelation::equal);
            else if (inter == cb)
                CHECK(rel == BallRelation::a_contains_b);
            else
                CHECK(rel == BallRelation::b_contains_a);
        }
}

TEST_CASE("cell indexing round trip and group laws") {
    for (auto fp : {laurent(2), padic(2), laurent(3, 2)}) {
        int lo = -2, k = 2;
        std::uint64_t n = cell_count(*fp, lo, k);
        for (std::uint64_t j = 0; j < n; ++j) {
            LocalElement rep = cell_representative(*fp, lo, k, j);
            CHECK(cell_of(*fp, lo, k, rep) == j);
        }
        // group law consistency with element addition
        for (std::uint64_t a = 0; a < n; a += 3)
            for (std::uint64_t b = 0; b < n; b += 5) {
                LocalElement sum = elem_add(*fp, cell_representative(*fp, lo, k, a),
                                            cell_representative(*fp, lo, k, b));
                CHECK(cell_add(*fp, n, a, b) == cell_of(*fp, lo, k, sum));
            }
    }
}

TEST_CASE("mismatched field parameters are rejected") {
    auto f2 = laurent(2);
    auto f4 = laurent(2, 2);
    CHECK_THROWS_AS(fq_mul(*f2, FqElem{1}, FqElem{3}), parameter_error);
    CHECK(!f2->same_as(*f4));
}
