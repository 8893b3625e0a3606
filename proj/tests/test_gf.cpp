#include <random>

#include <gtest/gtest.h>

#include "fano/gf.hpp"
#include "fano/mpoly.hpp"
#include "oracles/brute.hpp"

using namespace fano;

namespace {

struct Size {
    int p, e;
};

std::vector<Size> small_fields() {
    std::vector<Size> out;
    for (int p = 2; p <= 81; ++p) {
        if (!is_prime(p)) continue;
        long q = p;
        for (int e = 1; q <= 81; ++e, q *= p) out.push_back({p, e});
    }
    return out;
}

} // namespace

TEST(Field, ModulusChoice) {
    EXPECT_EQ(field(2, 1).size(), 2u);
    EXPECT_EQ(field(2, 2).modulus(), (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(field(3, 2).modulus(), (std::vector<int>{1, 0, 1}));
    // exhaustive irreducibility over the monic quadratics
    int irr2 = 0, irr3 = 0;
    for (long c = 0; c < 4; ++c) irr2 += oracle::irreducible_by_trial(oracle::monic_from_code(c, 2, 2), 2);
    for (long c = 0; c < 9; ++c) irr3 += oracle::irreducible_by_trial(oracle::monic_from_code(c, 2, 3), 3);
    EXPECT_EQ(irr2, 1);
    EXPECT_EQ(irr3, 3);
    EXPECT_EQ(oracle::smallest_irreducible(2, 2), field(2, 2).modulus());
    EXPECT_EQ(oracle::smallest_irreducible(3, 2), field(3, 2).modulus());
}

TEST(Field, Errors) {
    EXPECT_THROW(Field(4, 1), NotPrime);
    EXPECT_THROW(field(6, 2), NotPrime);
    EXPECT_THROW(Field(2, 0), OutOfRange);
    EXPECT_THROW(Field(2, 40), OutOfRange);
    EXPECT_THROW(field(3, 1).inv(0), DivisionByZero);
}

TEST(Field, ExhaustiveArithmeticAgainstPolynomialOracle) {
    for (auto [p, e] : small_fields()) {
        const Field& F = field(p, e);
        oracle::GF O(p, e, F.modulus());
        Elem q = F.size();
        for (Elem a = 0; a < q; ++a) {
            for (Elem b = 0; b < q; ++b) {
                ASSERT_EQ(F.mul(a, b), static_cast<Elem>(O.mul_slow(static_cast<int>(a), static_cast<int>(b))))
                    << F.name() << " " << a << "*" << b;
                ASSERT_EQ(F.add(a, b), static_cast<Elem>(O.add(static_cast<int>(a), static_cast<int>(b))));
                ASSERT_EQ(F.sub(a, b), static_cast<Elem>(O.sub(static_cast<int>(a), static_cast<int>(b))));
            }
            if (a) ASSERT_EQ(F.mul(a, F.inv(a)), 1u);
            ASSERT_EQ(F.pow(a, q), a);
            ASSERT_EQ(F.frob(a), F.pow(a, p));
            ASSERT_EQ(F.frob(a, e), a);
        }
    }
}

TEST(Field, FrobeniusIsAdditive) {
    const Field& F = field(3, 3);
    for (Elem a = 0; a < F.size(); ++a)
        for (Elem b = 0; b < F.size(); ++b) ASSERT_EQ(F.frob(F.add(a, b)), F.add(F.frob(a), F.frob(b)));
}

TEST(Field, GeneratorOrbit) {
    const Field& F = field(2, 4);
    Elem g = F.generator(), x = g;
    int size = 0;
    do {
        x = F.frob(x);
        ++size;
    } while (x != g);
    EXPECT_EQ(size, 4);
    // the generator has full multiplicative order
    std::set<Elem> powers;
    for (long k = 0; k < 15; ++k) powers.insert(F.gen_pow(k));
    EXPECT_EQ(powers.size(), 15u);
}

TEST(Field, SquareRoots) {
    for (auto [p, e] : small_fields()) {
        const Field& F = field(p, e);
        std::set<Elem> squares;
        for (Elem a = 0; a < F.size(); ++a) squares.insert(F.mul(a, a));
        for (Elem a = 0; a < F.size(); ++a) {
            ASSERT_EQ(F.is_square(a), squares.count(a) == 1) << F.name() << " " << a;
            if (F.is_square(a)) ASSERT_EQ(F.mul(F.sqrt(a), F.sqrt(a)), a);
        }
    }
}

TEST(Field, ArtinSchreier) {
    for (int e = 1; e <= 6; ++e) {
        const Field& F = field(2, e);
        std::set<Elem> image;
        for (Elem y = 0; y < F.size(); ++y) image.insert(F.add(F.mul(y, y), y));
        for (Elem a = 0; a < F.size(); ++a) {
            Elem y = F.artin_schreier(a);
            if (image.count(a)) {
                ASSERT_NE(y, Field::kNone);
                ASSERT_EQ(F.add(F.mul(y, y), y), a);
            } else {
                ASSERT_EQ(y, Field::kNone);
            }
        }
        EXPECT_EQ(image.size(), F.size() / 2);
    }
    EXPECT_EQ(field(3, 1).artin_schreier(1), Field::kNone);
}

TEST(Embedding, HomomorphismAndTower) {
    const Field &F2 = field(2, 1), &F4 = field(2, 2), &F16 = field(2, 4);
    EXPECT_EQ(embed(0, F4, F16), 0u);
    EXPECT_EQ(embed(1, F4, F16), 1u);
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
            EXPECT_EQ(embed(F4.add(a, b), F4, F16), F16.add(embed(a, F4, F16), embed(b, F4, F16)));
            EXPECT_EQ(embed(F4.mul(a, b), F4, F16), F16.mul(embed(a, F4, F16), embed(b, F4, F16)));
        }
    for (Elem a = 0; a < 2; ++a) EXPECT_EQ(embed(embed(a, F2, F4), F4, F16), embed(a, F2, F16));
    // images are exactly the fixed points of x -> x^4
    std::set<Elem> img;
    for (Elem a = 0; a < 4; ++a) img.insert(embed(a, F4, F16));
    for (Elem x = 0; x < 16; ++x) EXPECT_EQ(img.count(x) == 1, F16.frob(x, 2) == x);
    EXPECT_THROW(embedding(F4, field(2, 3)), NoEmbedding);
    EXPECT_THROW(embedding(field(3, 1), F4), NoEmbedding);
}

TEST(Embedding, OddCharacteristicTower) {
    const Field &F3 = field(3, 1), &F9 = field(3, 2), &F81 = field(3, 4);
    for (Elem a = 0; a < 9; ++a)
        for (Elem b = 0; b < 9; ++b)
            ASSERT_EQ(embed(F9.mul(a, b), F9, F81), F81.mul(embed(a, F9, F81), embed(b, F9, F81)));
    for (Elem a = 0; a < 3; ++a) EXPECT_EQ(embed(embed(a, F3, F9), F9, F81), embed(a, F3, F81));
}

TEST(UPoly, RootsOfRandomProducts) {
    std::mt19937 rng(23);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}, {7, 2}, {2, 6}}) {
        const Field& F = field(p, e);
        std::uniform_int_distribution<Elem> el(0, F.size() - 1);
        for (int trial = 0; trial < 30; ++trial) {
            UPoly f{el(rng) | 1u};
            int factors = 1 + trial % 5;
            for (int i = 0; i < factors; ++i) f = upoly::mul(F, f, UPoly{el(rng), el(rng)});
            upoly::trim(f);
            if (f.empty()) continue;
            std::vector<Elem> brute;
            for (Elem x = 0; x < F.size(); ++x)
                if (upoly::eval(F, f, x) == 0) brute.push_back(x);
            EXPECT_EQ(upoly::roots(F, f), brute) << F.name();
        }
    }
    EXPECT_THROW(upoly::roots(field(2, 1), UPoly{}), ZeroPolynomial);
}

TEST(MPoly, SubstituteExamples) {
    const Field& F2 = field(2, 1);
    // x0*x1 on the line x0 = s, x1 = 0
    MPoly f = MPoly::parse("x0*x1", F2, 4);
    EXPECT_TRUE(f.substitute({{1, 0, 0, 0}}).is_zero());
    // x0^2 + x0*x1 on x0 = x1 = s: 2s^2 = 0 in characteristic 2
    MPoly g = MPoly::parse("x0^2 + x0*x1", F2, 2);
    EXPECT_TRUE(g.substitute({{1, 1}}).is_zero());
    const Field& F4 = field(2, 2);
    for (Elem s = 0; s < 4; ++s) EXPECT_EQ(g.eval(F4, {s, s}, embedding(F2, F4)), 0u);
    EXPECT_THROW(g.substitute({{1, 1, 1}}), DimensionMismatch);
}

TEST(MPoly, SubstituteAgreesWithEvaluation) {
    const Field& F = field(3, 1);
    const Field& K = field(3, 2);
    MPoly f = MPoly::parse("x0^3 + 2*x1*x2^2 + x0*x1*x2 + x3^3", F, 4);
    std::vector<std::vector<Elem>> rows{{1, 0, 2, 1}, {0, 1, 1, 2}, {2, 2, 0, 1}};
    MPoly g = f.substitute(rows);
    const auto& emb = embedding(F, K);
    for (Elem a = 0; a < 9; ++a)
        for (Elem b = 0; b < 9; ++b)
            for (Elem c = 0; c < 9; c += 4) {
                std::vector<Elem> t{a, b, c}, x(4, 0);
                for (int j = 0; j < 4; ++j)
                    for (int i = 0; i < 3; ++i) x[j] = K.add(x[j], K.mul(t[i], emb[rows[i][j]]));
                ASSERT_EQ(g.eval(K, t, emb), f.eval(K, x, emb));
            }
}

TEST(MPoly, EvalParseDerivative) {
    const Field& F = field(5, 1);
    MPoly f = MPoly::parse("3*x0^2*x1 + 4*x1^3 + x2^3", F, 3);
    EXPECT_EQ(f.eval({0, 0, 0}), 0u);
    EXPECT_EQ(MPoly::parse("x0 + 2", F, 1).eval({0}), 2u);
    EXPECT_EQ(MPoly::parse(f.str(), F, 3).str(), f.str());
    EXPECT_EQ(f.derivative(0).str(), MPoly::parse("x0*x1", F, 3).str());  // 6 = 1 mod 5
    EXPECT_TRUE(f.homogeneous());
    EXPECT_FALSE(MPoly::parse("x0 + 1", F, 1).homogeneous());
    EXPECT_THROW(MPoly::parse("x3", F, 3), ParseError);
    EXPECT_THROW(MPoly::parse("x0 +* x1", F, 3), ParseError);
}
