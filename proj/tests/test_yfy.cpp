#include <gtest/gtest.h>

#include "fano/yfy.hpp"
#include "oracles/brute.hpp"

using namespace fano;

namespace {

std::string fixture(const std::string& name) { return std::string(FANO_TEST_DATA) + "/" + name; }

const ParamSet kCI{5, 3, 4, 0};
const ParamSet kCubicSurface{3, 2, 3, 1};

void expect_matches_oracle(const StratumCounts& c, const oracle::PlaneStrata& b) {
    EXPECT_EQ(c.planes, static_cast<std::uint64_t>(b.planes));
    EXPECT_EQ(c.transversal, static_cast<std::uint64_t>(b.transversal));
    EXPECT_EQ(c.tangent, static_cast<std::uint64_t>(b.tangent));
    EXPECT_EQ(c.contained, static_cast<std::uint64_t>(b.contained));
    EXPECT_EQ(c.positive_dim, static_cast<std::uint64_t>(b.positive_dim));
    EXPECT_EQ(c.W, b.W);
    EXPECT_EQ(c.V, b.V);
    EXPECT_EQ(c.A, b.A);
    EXPECT_EQ(c.R, b.R);
    EXPECT_EQ(c.B1, b.B1);
    EXPECT_EQ(c.B2, b.B2);
    EXPECT_EQ(c.T1, b.T1);
    EXPECT_EQ(c.T2, b.T2);
    EXPECT_EQ(c.P, b.P);
    EXPECT_EQ(c.Q, b.Q);
    EXPECT_EQ(c.bijection_failures, static_cast<std::uint64_t>(b.bijection_failures));
}

} // namespace

TEST(Classic, FermatCubicOverF2) {
    auto rep = verify_classic(load_variety(fixture("fermat3.var")), {1});
    ASSERT_EQ(rep.rows.size(), 1u);
    const auto& r = rep.rows[0];
    EXPECT_TRUE(rep.smooth);
    EXPECT_EQ(r.N1, 7);
    EXPECT_EQ(r.N2, 45);
    EXPECT_EQ(r.lines, 3);
    EXPECT_EQ(r.sym2, 47);
    EXPECT_EQ(r.sym_rhs, 47);
    EXPECT_EQ(*r.hilb2, 61);
    EXPECT_EQ(r.hilb_rhs, 61);
    EXPECT_TRUE(rep.ok());
}

TEST(Classic, RejectsNonCubics) {
    EXPECT_THROW(verify_classic(load_variety(fixture("ci22_p5.var")), {1}), ParameterViolation);
    EXPECT_THROW(verify_classic(load_variety(fixture("fermat3.var")), {0}), OutOfRange);
}

TEST(Classic, SingularCubicFailsSymmetricRelation) {
    auto rep = verify_classic(load_variety(fixture("cone_cubic.var")), {1});
    EXPECT_FALSE(rep.smooth);
    EXPECT_FALSE(rep.rows[0].hilb2.has_value());
    EXPECT_FALSE(rep.ok());
}

TEST(Extended, IntersectionOfQuadricsMatchesOracle) {
    auto Y = load_variety(fixture("ci22_p5.var"));
    auto rep = verify_extended(Y, kCI, {1});
    ASSERT_EQ(rep.rows.size(), 1u);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.rows[0].lhs, rep.rows[0].rhs);
    auto brute = oracle::plane_strata(oracle::read_var(fixture("ci22_p5.var")), 2, 4, 3, 1);
    expect_matches_oracle(rep.rows[0].counts, brute);
    EXPECT_EQ(brute.W, brute.V);  // no contained planes: W = V plane by plane
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(Extended, CubicSurfaceMatchesOracle) {
    auto Y = load_variety(fixture("fermat3.var"));
    auto rep = verify_extended(Y, kCubicSurface, {1, 2});
    EXPECT_TRUE(rep.ok());
    auto brute = oracle::plane_strata(oracle::read_var(fixture("fermat3.var")), 1, 3, 1, 2);
    expect_matches_oracle(rep.rows[0].counts, brute);
    EXPECT_EQ(rep.rows[0].counts.contained, 3u);
    EXPECT_EQ(rep.rows[1].counts.contained, 27u);
}

TEST(Extended, ParameterChecks) {
    auto Y = load_variety(fixture("ci22_p5.var"));
    EXPECT_THROW(verify_extended(Y, ParamSet{5, 2, 4, 0}, {1}), ParameterViolation);  // m mismatch
    EXPECT_THROW(verify_extended(Y, ParamSet{5, 3, 4, 3}, {1}), ParameterViolation);  // d < k+2
}

TEST(Extended, WorkerInvariance) {
    auto Y = load_variety(fixture("ci22_p5.var"));
    StratumOptions one, three;
    one.want_M = three.want_M = true;
    three.workers = 3;
    auto a = stratum_counts(Y, kCI, 1, one), b = stratum_counts(Y, kCI, 1, three);
    EXPECT_EQ(a.W, b.W);
    EXPECT_EQ(a.V, b.V);
    EXPECT_EQ(a.P, b.P);
    EXPECT_EQ(a.Q, b.Q);
    EXPECT_EQ(a.J, b.J);
    EXPECT_EQ(a.M, b.M);
    EXPECT_EQ(a.excluded, b.excluded);
}

TEST(Partition, LowRegimeIdentities) {
    auto conic = load_variety(fixture("conic_p3.var"));
    for (int e = 1; e <= 2; ++e) {
        auto rep = verify_partition(conic, ParamSet{3, 1, 2, 0}, e);
        EXPECT_TRUE(rep.ok()) << "conic e=" << e << " " << rep.w_lhs << " " << rep.w_rhs << " " << rep.v_lhs << " "
                              << rep.v_rhs;
    }
    auto curve = load_variety(fixture("quartic_curve_p3.var"));
    for (int e = 1; e <= 2; ++e) {
        auto rep = verify_partition(curve, ParamSet{3, 1, 4, 2}, e);
        EXPECT_TRUE(rep.ok()) << "curve e=" << e;
        // a point of the curve is a stable 1-set
        EXPECT_EQ(rep.symW, count_points(curve, e));
    }
    EXPECT_THROW(verify_partition(curve, ParamSet{3, 1, 4, 1}, 1), RegimeMismatch);
}

TEST(LangWeil, IntersectionOfQuadrics) {
    auto diag = langweil_check(load_variety(fixture("ci22_p5.var")), kCI, {1, 2, 3, 4});
    EXPECT_TRUE(diag.ok());
    EXPECT_EQ(diag.alpha_max, 4);
    EXPECT_FALSE(diag.planes.empty());
    for (const auto& pl : diag.planes) EXPECT_EQ(pl.direct, pl.predicted) << pl.id;
    EXPECT_THROW(langweil_check(load_variety(fixture("ci22_p5.var")), kCI, {0}), OutOfRange);
}

TEST(Probe, Examples) {
    std::vector<std::pair<long, Rational>> g, zero;
    for (long q : {2L, 3L, 4L, 5L}) {
        g.emplace_back(q, specialize(grassmannian_class(2, 5).value, Rational(q)));
        zero.emplace_back(q, Rational(0));
    }
    EXPECT_EQ(dimension_probe(g, kExactProbeOrder).rounded, 9);
    EXPECT_TRUE(dimension_probe(zero).bottom);
    EXPECT_EQ(dimension_probe(zero).str(), "BOTTOM");
    EXPECT_THROW(dimension_probe({{2, Rational(3)}}), InsufficientSamples);

    auto Y = load_variety(fixture("ci22_p5.var"));
    std::vector<std::pair<long, Rational>> pts;
    for (long q : {2L, 3L, 4L, 5L, 7L}) {
        auto [p, e] = prime_power(q);
        pts.emplace_back(q, Rational(count_points(Y.rebase(p, e), 1)));
    }
    EXPECT_EQ(dimension_probe(pts).rounded, 3);
    EXPECT_THROW(prime_power(6), NotPrime);
    EXPECT_EQ(prime_power(9), (std::pair<int, int>{3, 2}));
}

TEST(Averaged, EmptySequence) {
    auto tab = averaged_table({}, 2);
    EXPECT_TRUE(tab.entries.empty());
    EXPECT_TRUE(tab.residual_trend.empty());
    EXPECT_THROW(averaged_table({}, 6), NotPrime);
}

TEST(Averaged, RejectsLowRegimeEntry) {
    auto tab = averaged_table({{load_variety(fixture("conic_p3.var")), ParamSet{3, 1, 2, 0}}}, 2);
    ASSERT_EQ(tab.entries.size(), 1u);
    EXPECT_FALSE(tab.entries[0].error.empty());
}
