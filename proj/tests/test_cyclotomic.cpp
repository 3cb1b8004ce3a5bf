#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cusp/cyclotomic.hpp"

using namespace cusp;

namespace {

CycNum zeta(std::uint64_t n, std::int64_t k) { return CycNum::root_of_unity(n, k); }

CycNum random_cyc(std::mt19937_64& rng, std::uint64_t order) {
    std::vector<mpq_class> nums;
    CycNum acc(0L);
    for (std::uint64_t j = 0; j < euler_phi(order); ++j) {
        long num = static_cast<long>(rng() % 11) - 5;
        long den = static_cast<long>(rng() % 4) + 1;
        acc = acc + CycNum(mpq_class(num, den)) * zeta(order, static_cast<std::int64_t>(j));
    }
    return acc;
}

} // namespace

TEST_CASE("cyclotomic polynomial table") {
    CHECK(cyclotomic_polynomial(1) == std::vector<mpz_class>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<mpz_class>{1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<mpz_class>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<mpz_class>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});
    // phi(105) = 48; first cyclotomic with a coefficient of magnitude 2
    CHECK(cyclotomic_polynomial(105).size() == 49);
    CHECK(cyclotomic_polynomial(105)[7] == -2);
}

TEST_CASE("basic root-of-unity arithmetic") {
    CHECK(zeta(4, 1) * zeta(4, 1) == CycNum(-1L));            // i^2 = -1
    CHECK(zeta(3, 2) + zeta(3, 1) + CycNum(1L) == CycNum(0L)); // 1 + z + z^2 = 0
    CHECK(zeta(5, 1).conj() * zeta(5, 1) == CycNum(1L));
}

TEST_CASE("RootOfUnity stores exponent mod order and converts losslessly") {
    RootOfUnity r(6, 3);
    CHECK(r.order == 6);
    CHECK(r.exp == 3);
    CHECK(r.to_cyc() == CycNum(-1L));
    CHECK(RootOfUnity(5, 7).exp == 2);
    CHECK(RootOfUnity(1, 0).to_cyc() == CycNum(1L));
    CHECK_THROWS(RootOfUnity(0, 0));

    // product adds exponents in the lcm order
    CHECK(RootOfUnity(4, 1) * RootOfUnity(6, 1) == RootOfUnity(12, 5));
    CHECK((RootOfUnity(8, 2) == RootOfUnity(4, 1)));
}

TEST_CASE("ring axioms hold exactly on random elements") {
    std::mt19937_64 rng(17);
    for (std::uint64_t order : {4ull, 6ull, 12ull, 15ull}) {
        for (int it = 0; it < 20; ++it) {
            CycNum x = random_cyc(rng, order);
            CycNum y = random_cyc(rng, order);
            CycNum z = random_cyc(rng, order);
            CHECK((x + y) + z == x + (y + z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
        }
    }
}

TEST_CASE("conjugation is a ring automorphism") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        CycNum x = random_cyc(rng, 12);
        CycNum y = random_cyc(rng, 12);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
    }
    for (std::int64_t k = 0; k < 10; ++k) {
        RootOfUnity r(10, k);
        CHECK(r.to_cyc().conj() * r.to_cyc() == CycNum(1L));
    }
}

TEST_CASE("inverse and integer powers") {
    CycNum x = zeta(12, 5) + CycNum(2L);
    CHECK(x * x.inverse() == CycNum(1L));
    CHECK(x.pow(-3) == x.inverse().pow(3));
    CHECK(x.pow(0) == CycNum(1L));
    CHECK_THROWS_WITH(CycNum(0L).inverse(), doctest::Contains("not invertible"));
}

TEST_CASE("embedding into a larger order is injective and round-trips") {
    std::mt19937_64 rng(23);
    std::vector<CycNum> sample;
    for (int it = 0; it < 15; ++it) sample.push_back(random_cyc(rng, 6));
    for (std::size_t i = 0; i < sample.size(); ++i) {
        CHECK(sample[i].embed(24) == sample[i]); // equality embeds back
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            if (sample[i] != sample[j]) CHECK(sample[i].embed(24) != sample[j].embed(24));
        }
    }
    // zeta_2 embedded into order 4 equals -1 there
    CHECK(zeta(2, 1).embed(4) == CycNum(-1L));
}

TEST_CASE("formal sqrt(q) relation") {
    QHalfExt sq(3, CycNum(0L), CycNum(1L)); // sqrt(3)
    CHECK(sq * sq == QHalfExt(3, CycNum(3L)));
    QHalfExt one_plus(3, CycNum(1L), CycNum(1L));
    QHalfExt one_minus(3, CycNum(1L), CycNum(-1L));
    CHECK(one_plus * one_minus == QHalfExt(3, CycNum(1L - 3L)));
    CHECK(QHalfExt(3, CycNum(1L)) == QHalfExt(3, CycNum(1L), CycNum(0L)));
}

TEST_CASE("half powers of q") {
    CHECK(QHalfExt::q_power(3, 2) == QHalfExt(3, CycNum(3L)));
    CHECK(QHalfExt::q_power(3, 1) == QHalfExt(3, CycNum(0L), CycNum(1L)));
    CHECK(QHalfExt::q_power(3, -2) == QHalfExt(3, CycNum(mpq_class(1, 3))));
    // q^(-3/2) = (1/q^2) sqrt(q)
    CHECK(QHalfExt::q_power(3, -3) == QHalfExt(3, CycNum(0L), CycNum(mpq_class(1, 9))));
    CHECK(QHalfExt::q_power(3, 1) * QHalfExt::q_power(3, -3) == QHalfExt::q_power(3, -2));
    CHECK(QHalfExt::q_power(5, 7).pow(2) == QHalfExt::q_power(5, 14));
}

TEST_CASE("exponent-count assembly matches naive summation") {
    std::vector<mpz_class> counts(12, mpz_class(0));
    counts[1] = 3;
    counts[5] = 1;
    counts[11] = 2;
    CycNum direct = zeta(12, 1) * CycNum(3L) + zeta(12, 5) + zeta(12, 11) * CycNum(2L);
    CHECK(cyc_from_exponent_counts(12, counts) == direct);
}
