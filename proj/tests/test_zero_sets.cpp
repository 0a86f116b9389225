#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ballmaps/herm_form.hpp"
#include "ballmaps/poly_map.hpp"
#include "ballmaps/pullback.hpp"
#include "ballmaps/zero_sets.hpp"

using namespace ballmaps;

namespace {

CPoly pairing_sum(int n) {
    CPoly br(2 * n);
    for (int j = 0; j < n; ++j) {
        MultiIndex m(2 * n);
        m[j] = 1;
        m[n + j] = 1;
        br.add_term(m, CRat(1));
    }
    return br;
}

// q = 1 - z1/2 in two variables.
CPoly half_linear() {
    CPoly q(2);
    q.add_term({0, 0}, CRat(1));
    q.add_term({1, 0}, CRat(rat(-1, 2)));
    return q;
}

// q = (1 - z/2)(1 - z/3) = 1 - 5z/6 + z^2/6 in one variable.
CPoly two_factor_line() {
    CPoly q(1);
    q.add_term({0}, CRat(1));
    q.add_term({1}, CRat(rat(-5, 6)));
    q.add_term({2}, CRat(rat(1, 6)));
    return q;
}

// q = (1 - z1/2)(1 - z2/2) in two variables.
CPoly two_factor_plane() {
    CPoly q(2);
    q.add_term({0, 0}, CRat(1));
    q.add_term({1, 0}, CRat(rat(-1, 2)));
    q.add_term({0, 1}, CRat(rat(-1, 2)));
    q.add_term({1, 1}, CRat(rat(1, 4)));
    return q;
}

// (z1, z1 z2, z2^2): proper, lowest part of degree one.
PolyMap mixed_degree_map() {
    PolyMap f(2, 3);
    f.add_term({1, 0}, 0, CRat(1));
    f.add_term({1, 1}, 1, CRat(1));
    f.add_term({0, 2}, 2, CRat(1));
    return f;
}

PolyMap identity_map(int n) {
    PolyMap f(n, n);
    for (int j = 0; j < n; ++j) f.add_term(unit_index(n, j), j, CRat(1));
    return f;
}

// Proper with nonzero value at the origin:
// ((2/5)(1 + z^2), (2/5)(1 - z^2), (3/5) z).
PolyMap offset_map() {
    PolyMap f(1, 3);
    f.add_term({0}, 0, CRat(rat(2, 5)));
    f.add_term({2}, 0, CRat(rat(2, 5)));
    f.add_term({0}, 1, CRat(rat(2, 5)));
    f.add_term({2}, 1, CRat(rat(-2, 5)));
    f.add_term({1}, 2, CRat(rat(3, 5)));
    return f;
}

std::vector<CRat> point1(const Rational& a) { return {CRat(a)}; }

std::vector<CRat> point2(const Rational& a, const Rational& b) { return {CRat(a), CRat(b)}; }

bool holds_point(const std::vector<std::vector<CRat>>& pts, const std::vector<CRat>& a) {
    return std::find(pts.begin(), pts.end(), a) != pts.end();
}

bool holds_root(const std::vector<CRat>& roots, const CRat& r) {
    return std::find(roots.begin(), roots.end(), r) != roots.end();
}

}  // namespace

TEST(Homogenize, ConstantDenominatorGivesPairingPower) {
    EXPECT_EQ(homogenize_denominator(poly_one<CRat>(2), 1), pairing_sum(2));

    CPoly two(1);
    two.add_term({0}, CRat(2));
    CPoly cube = pairing_sum(1) * pairing_sum(1) * pairing_sum(1);
    EXPECT_EQ(homogenize_denominator(two, 3), poly_monomial(MultiIndex(2), CRat(2)) * cube);
}

TEST(Homogenize, HalfLinearDenominator) {
    CPoly br = pairing_sum(2);
    CPoly w1 = poly_monomial({1, 0, 0, 0}, CRat(rat(-1, 2)));
    EXPECT_EQ(homogenize_denominator(half_linear(), 2), br * br + w1 * br);
}

TEST(Homogenize, RejectsBadInputs) {
    EXPECT_THROW(homogenize_denominator(half_linear(), 1), std::domain_error);
    CPoly vanishing(1);
    vanishing.add_term({1}, CRat(1));
    EXPECT_THROW(homogenize_denominator(vanishing, 2), std::invalid_argument);
    EXPECT_THROW(homogenize_denominator(CPoly(2), 1), std::invalid_argument);
}

TEST(CandidateCheck, KnownMemberships) {
    EXPECT_TRUE(candidate_check(poly_one<CRat>(2), 1, point2(rat(0), rat(0))));
    EXPECT_FALSE(candidate_check(poly_one<CRat>(2), 1, point2(rat(1, 3), rat(0))));

    CPoly q = half_linear();
    EXPECT_TRUE(candidate_check(q, 2, point2(rat(1, 2), rat(0))));
    EXPECT_TRUE(candidate_check(q, 2, point2(rat(0), rat(0))));
    EXPECT_FALSE(candidate_check(q, 2, point2(rat(1, 2), rat(1, 4))));
    EXPECT_FALSE(candidate_check(q, 2, {CRat(rat(0), rat(1, 2)), CRat(0)}));
}

TEST(CoordinateReflection, PurePowerCoefficients) {
    CPoly q = half_linear();
    CPoly u0(1), u1(1);
    u0.add_term({2}, CRat(1));
    u0.add_term({1}, CRat(rat(-1, 2)));
    u1.add_term({2}, CRat(1));
    EXPECT_EQ(coordinate_reflection_poly(q, 2, 0), u0);
    EXPECT_EQ(coordinate_reflection_poly(q, 2, 1), u1);

    // mixed monomials contribute to no coordinate
    CPoly mixed(2);
    mixed.add_term({0, 0}, CRat(1));
    mixed.add_term({1, 1}, CRat(1));
    CPoly cube(1);
    cube.add_term({3}, CRat(1));
    EXPECT_EQ(coordinate_reflection_poly(mixed, 3, 0), cube);
    EXPECT_THROW(coordinate_reflection_poly(q, 2, 2), std::invalid_argument);
}

TEST(UnivariateRoots, SplitsRationalRootsCompletely) {
    CPoly u(1);
    u.add_term({3}, CRat(1));
    u.add_term({2}, CRat(rat(-5, 6)));
    u.add_term({1}, CRat(rat(1, 6)));
    UnivariateRoots r = univariate_exact_roots(u);
    EXPECT_TRUE(r.complete);
    ASSERT_EQ(r.roots.size(), 3u);
    EXPECT_TRUE(holds_root(r.roots, CRat(0)));
    EXPECT_TRUE(holds_root(r.roots, CRat(rat(1, 2))));
    EXPECT_TRUE(holds_root(r.roots, CRat(rat(1, 3))));
    EXPECT_EQ(r.remainder.degree(), 0);
}

TEST(UnivariateRoots, RepeatedRootReportedOnce) {
    // (t - 1)^3
    CPoly u(1);
    u.add_term({3}, CRat(1));
    u.add_term({2}, CRat(-3));
    u.add_term({1}, CRat(3));
    u.add_term({0}, CRat(-1));
    UnivariateRoots r = univariate_exact_roots(u);
    EXPECT_TRUE(r.complete);
    ASSERT_EQ(r.roots.size(), 1u);
    EXPECT_EQ(r.roots[0], CRat(1));
}

TEST(UnivariateRoots, IrrationalFactorLeftAsRemainder) {
    CPoly u(1);
    u.add_term({2}, CRat(1));
    u.add_term({0}, CRat(-2));
    UnivariateRoots r = univariate_exact_roots(u);
    EXPECT_FALSE(r.complete);
    EXPECT_TRUE(r.roots.empty());
    EXPECT_EQ(r.remainder, u);

    CPoly v(1);
    v.add_term({3}, CRat(1));
    v.add_term({1}, CRat(-2));
    r = univariate_exact_roots(v);
    EXPECT_FALSE(r.complete);
    ASSERT_EQ(r.roots.size(), 1u);
    EXPECT_EQ(r.roots[0], CRat(0));
    EXPECT_EQ(r.remainder, u);
}

TEST(UnivariateRoots, ComplexCoefficientsStopExtraction) {
    CPoly u(1);
    u.add_term({1}, CRat(1));
    u.add_term({0}, CRat(rat(0), rat(-1)));
    UnivariateRoots r = univariate_exact_roots(u);
    EXPECT_FALSE(r.complete);
    EXPECT_TRUE(r.roots.empty());
}

TEST(UnivariateRoots, RejectsBadInputs) {
    EXPECT_THROW(univariate_exact_roots(CPoly(1)), std::invalid_argument);
    EXPECT_THROW(univariate_exact_roots(poly_one<CRat>(2)), std::invalid_argument);
}

TEST(SOfQ, ConstantDenominatorGivesOriginOnly) {
    for (int d : {1, 3}) {
        CandidateSet s = s_of_q(poly_one<CRat>(2), d);
        EXPECT_EQ(s.status, CandidateStatus::EXACT);
        ASSERT_EQ(s.points.size(), 1u);
        EXPECT_EQ(s.points[0], point2(rat(0), rat(0)));
        EXPECT_TRUE(s.system.empty());
        EXPECT_TRUE(s.unresolved.empty());
    }
}

TEST(SOfQ, HalfLinearDenominator) {
    CandidateSet s = s_of_q(half_linear(), 2);
    EXPECT_EQ(s.status, CandidateStatus::EXACT);
    ASSERT_EQ(s.points.size(), 2u);
    EXPECT_TRUE(holds_point(s.points, point2(rat(0), rat(0))));
    EXPECT_TRUE(holds_point(s.points, point2(rat(1, 2), rat(0))));
}

TEST(SOfQ, TwoFactorLineDenominator) {
    CandidateSet s = s_of_q(two_factor_line(), 3);
    EXPECT_EQ(s.status, CandidateStatus::EXACT);
    ASSERT_EQ(s.points.size(), 3u);
    EXPECT_TRUE(holds_point(s.points, point1(rat(0))));
    EXPECT_TRUE(holds_point(s.points, point1(rat(1, 2))));
    EXPECT_TRUE(holds_point(s.points, point1(rat(1, 3))));
}

TEST(SOfQ, GridPointsAreFilteredByVerification) {
    // the full grid {0, 1/2}^2 contains (1/2, 1/2), which fails the check
    CandidateSet s = s_of_q(two_factor_plane(), 3);
    EXPECT_EQ(s.status, CandidateStatus::EXACT);
    ASSERT_EQ(s.points.size(), 3u);
    EXPECT_TRUE(holds_point(s.points, point2(rat(0), rat(0))));
    EXPECT_TRUE(holds_point(s.points, point2(rat(1, 2), rat(0))));
    EXPECT_TRUE(holds_point(s.points, point2(rat(0), rat(1, 2))));
    EXPECT_FALSE(holds_point(s.points, point2(rat(1, 2), rat(1, 2))));
}

TEST(SOfQ, EveryReportedPointPassesTheCheck) {
    for (const CPoly& q : {half_linear(), two_factor_plane()}) {
        for (int d = q.degree() + 1; d <= q.degree() + 2; ++d) {
            CandidateSet s = s_of_q(q, d);
            for (const auto& a : s.points) EXPECT_TRUE(candidate_check(q, d, a));
        }
    }
}

TEST(SOfQ, IrrationalAxisRootsGiveVerifiedSubset) {
    // q = 1 - z^2/2 reflects to t^2 - 1/2, irrational roots
    CPoly q(1);
    q.add_term({0}, CRat(1));
    q.add_term({2}, CRat(rat(-1, 2)));
    CandidateSet s = s_of_q(q, 3);
    EXPECT_EQ(s.status, CandidateStatus::VERIFIED_SUBSET);
    ASSERT_EQ(s.points.size(), 1u);
    EXPECT_EQ(s.points[0], point1(rat(0)));
    ASSERT_EQ(s.unresolved.size(), 1u);
    EXPECT_EQ(s.unresolved[0].degree(), 2);
    EXPECT_FALSE(s.system.empty());
}

TEST(SOfQ, ProposedCandidatesAreVerifiedAndMerged) {
    // q = 1 - (i/2) z: the reflected root -i/2 is complex, so extraction
    // stops, but the proposed point verifies exactly
    CPoly q(1);
    q.add_term({0}, CRat(1));
    q.add_term({1}, CRat(rat(0), rat(-1, 2)));
    CandidateSet bare = s_of_q(q, 2);
    EXPECT_EQ(bare.status, CandidateStatus::VERIFIED_SUBSET);
    EXPECT_EQ(bare.points.size(), 1u);

    std::vector<CRat> good = {CRat(rat(0), rat(-1, 2))};
    std::vector<CRat> bad = {CRat(rat(1, 3))};
    CandidateSet merged = s_of_q(q, 2, {good, bad});
    EXPECT_EQ(merged.status, CandidateStatus::VERIFIED_SUBSET);
    ASSERT_EQ(merged.points.size(), 2u);
    EXPECT_TRUE(holds_point(merged.points, good));
    EXPECT_FALSE(holds_point(merged.points, bad));
}

TEST(SOfQ, ProposingAKnownPointDoesNotDuplicate) {
    CandidateSet s = s_of_q(poly_one<CRat>(2), 1, {point2(rat(0), rat(0))});
    EXPECT_EQ(s.points.size(), 1u);
}

TEST(SOfQ, OversizedGridReportsGeneratorsOnly) {
    CandidateSet s = s_of_q(two_factor_plane(), 3, {point2(rat(1, 2), rat(0)), point2(rat(1, 2), rat(1, 2))}, 3);
    EXPECT_EQ(s.status, CandidateStatus::GENERATORS_ONLY);
    ASSERT_EQ(s.points.size(), 2u);
    EXPECT_TRUE(holds_point(s.points, point2(rat(0), rat(0))));
    EXPECT_TRUE(holds_point(s.points, point2(rat(1, 2), rat(0))));
    EXPECT_FALSE(s.system.empty());
}

TEST(SOfQ, StatusNames) {
    EXPECT_EQ(candidate_status_name(CandidateStatus::EXACT), "exact");
    EXPECT_EQ(candidate_status_name(CandidateStatus::VERIFIED_SUBSET), "verified-subset");
    EXPECT_EQ(candidate_status_name(CandidateStatus::GENERATORS_ONLY), "generators-only");
}

TEST(SplitLowest, SeparatesTheLinearPart) {
    MapSplit s = split_lowest(mixed_degree_map());
    PolyMap lower(2, 1), upper(2, 2);
    lower.add_term({1, 0}, 0, CRat(1));
    upper.add_term({1, 1}, 0, CRat(1));
    upper.add_term({0, 2}, 1, CRat(1));
    EXPECT_EQ(s.lower, lower);
    EXPECT_EQ(s.upper, upper);
}

TEST(SplitLowest, TwoDimensionalLowestSpan) {
    PolyMap f(3, 5);
    f.add_term({1, 0, 0}, 0, CRat(1));
    f.add_term({0, 1, 0}, 1, CRat(1));
    f.add_term({1, 0, 1}, 2, CRat(1));
    f.add_term({0, 1, 1}, 3, CRat(1));
    f.add_term({0, 0, 2}, 4, CRat(1));
    MapSplit s = split_lowest(f);
    EXPECT_EQ(s.lower.N, 2);
    EXPECT_EQ(s.upper.N, 3);
    EXPECT_EQ(map_degree(s.lower), 1);
    EXPECT_EQ(vanishing_order(s.upper), 2);
}

TEST(SplitLowest, TargetRotationLeavesTheSplitNormsAlone) {
    PolyMap f = mixed_degree_map();
    RatMat u = rational_orthogonal(3, 0);
    PolyMap g(f.n, f.N);
    for (const auto& [m, vec] : f.terms)
        for (int i = 0; i < f.N; ++i) {
            CRat c(0);
            for (int j = 0; j < f.N; ++j) c += CRat(u[i][j]) * vec[j];
            g.add_term(m, i, c);
        }
    ASSERT_TRUE(map_is_proper(g));
    MapSplit s = split_lowest(g);
    PolyMap z1(2, 1);
    z1.add_term({1, 0}, 0, CRat(1));
    EXPECT_TRUE(squared_norm_form(s.lower) == squared_norm_form(z1));
    MapSplit plain = split_lowest(f);
    EXPECT_TRUE(squared_norm_form(s.upper) == squared_norm_form(plain.upper));
}

TEST(SplitLowest, RejectsHomogeneousAndImproperMaps) {
    EXPECT_THROW(split_lowest(tensor(identity_map(2), identity_map(2))), std::domain_error);
    PolyMap bad(2, 2);
    bad.add_term({1, 0}, 0, CRat(1));
    bad.add_term({1, 0}, 1, CRat(1));
    EXPECT_THROW(split_lowest(bad), std::invalid_argument);
}

TEST(TensorStep, KnownExpansion) {
    PolyMap e = e_op(mixed_degree_map());
    PolyMap expected(2, 4);
    expected.add_term({2, 0}, 0, CRat(1));
    expected.add_term({1, 1}, 1, CRat(1));
    expected.add_term({1, 1}, 2, CRat(1));
    expected.add_term({0, 2}, 3, CRat(1));
    EXPECT_EQ(e, expected);
    EXPECT_TRUE(squared_norm_form(e) == norm_power_form(2, 2));
    EXPECT_THROW(e_op(e), std::domain_error);
}

TEST(HomogenizeByTensor, MixedMapNeedsOneStep) {
    Homogenization h = homogenize_by_tensor(mixed_degree_map());
    EXPECT_EQ(h.steps, 1);
    EXPECT_EQ(vanishing_order(h.h), 2);
    EXPECT_TRUE(squared_norm_form(h.h) == norm_power_form(2, 2));
}

TEST(HomogenizeByTensor, HomogeneousMapIsFixed) {
    PolyMap f(1, 1);
    f.add_term({3}, 0, CRat(1));
    Homogenization h = homogenize_by_tensor(f);
    EXPECT_EQ(h.steps, 0);
    EXPECT_EQ(h.h, f);
}

TEST(HomogenizeByTensor, JuxtapositionNeedsFullBudget) {
    PolyMap id = identity_map(2);
    PolyMap cube = tensor(tensor(id, id), id);
    PolyMap f = direct_sum(id, cube, rat(1, 4), rat(3, 4));
    ASSERT_TRUE(map_is_proper(f));
    ASSERT_EQ(vanishing_order(f), 1);
    ASSERT_EQ(map_degree(f), 3);
    Homogenization h = homogenize_by_tensor(f);
    EXPECT_EQ(h.steps, 2);
    EXPECT_TRUE(squared_norm_form(h.h) == norm_power_form(2, 3));
}

TEST(HomogenizeByTensor, WorksFromVanishingOrderZero) {
    PolyMap f = offset_map();
    ASSERT_TRUE(map_is_proper(f));
    ASSERT_EQ(vanishing_order(f), 0);
    Homogenization h = homogenize_by_tensor(f);
    EXPECT_EQ(h.steps, 2);
    EXPECT_TRUE(squared_norm_form(h.h) == norm_power_form(1, 2));
}

TEST(ZeroSetReport, OriginPreservingBranch) {
    ZeroSetReport r = zero_set_theorem_check(mixed_degree_map());
    EXPECT_TRUE(r.origin_maps_to_zero);
    EXPECT_FALSE(r.zero_set_empty);
    EXPECT_EQ(r.degree, 2);
    EXPECT_EQ(r.steps, 1);
}

TEST(ZeroSetReport, EmptyZeroSetBranch) {
    ZeroSetReport r = zero_set_theorem_check(offset_map());
    EXPECT_FALSE(r.origin_maps_to_zero);
    EXPECT_TRUE(r.zero_set_empty);
    EXPECT_EQ(r.degree, 2);
    EXPECT_EQ(r.steps, 2);
}

TEST(ZeroSet, MembershipAndPreimageCounts) {
    PolyMap f = mixed_degree_map();
    EXPECT_TRUE(zero_set_contains(f, point2(rat(0), rat(0))));
    EXPECT_FALSE(zero_set_contains(f, point2(rat(1, 2), rat(1, 3))));

    // (0, 0, 1/4) has the two preimages (0, +-1/2); (1/2, 0, 0) only (1/2, 0)
    std::vector<CRat> v = {CRat(0), CRat(0), CRat(rat(1, 4))};
    EXPECT_EQ(map_eval(f, point2(rat(0), rat(1, 2))), v);
    EXPECT_EQ(map_eval(f, point2(rat(0), rat(-1, 2))), v);
    std::vector<CRat> w = {CRat(rat(1, 2)), CRat(0), CRat(0)};
    EXPECT_EQ(map_eval(f, point2(rat(1, 2), rat(0))), w);
}

TEST(RationalMaps, ProperQuotientIsRecognized) {
    RationalMap f = mobius_exact(point1(rat(1, 2)));
    EXPECT_TRUE(rational_map_is_proper(f));
    RationalMap bad{identity_map(1), f.q};
    EXPECT_FALSE(rational_map_is_proper(bad));
}

TEST(Mobius, OneVariableCenter) {
    RationalMap f = mobius_exact(point1(rat(1, 2)));
    CPoly q(1), p0(1);
    q.add_term({0}, CRat(1));
    q.add_term({1}, CRat(rat(-1, 2)));
    p0.add_term({0}, CRat(rat(1, 2)));
    p0.add_term({1}, CRat(-1));
    EXPECT_EQ(f.q, q);
    EXPECT_EQ(component_poly(f.p, 0), p0);
    EXPECT_TRUE(map_eval(f.p, point1(rat(1, 2)))[0].is_zero());
}

TEST(Mobius, ComplexCenterInOneVariable) {
    RationalMap f = mobius_exact({CRat(rat(0), rat(2, 3))});
    EXPECT_TRUE(rational_map_is_proper(f));
    EXPECT_TRUE(map_eval(f.p, {CRat(rat(0), rat(2, 3))})[0].is_zero());
}

TEST(Mobius, ZeroCenterIsTheIdentity) {
    RationalMap f = mobius_exact(point2(rat(0), rat(0)));
    EXPECT_EQ(f.p, identity_map(2));
    EXPECT_EQ(f.q, poly_one<CRat>(2));
}

TEST(Mobius, PerfectSquareComplementInTwoVariables) {
    RationalMap f = mobius_exact(point2(rat(3, 5), rat(0)));
    PolyMap p(2, 2);
    p.add_term({0, 0}, 0, CRat(rat(3, 5)));
    p.add_term({1, 0}, 0, CRat(-1));
    p.add_term({0, 1}, 1, CRat(rat(-4, 5)));
    CPoly q(2);
    q.add_term({0, 0}, CRat(1));
    q.add_term({1, 0}, CRat(rat(-3, 5)));
    EXPECT_EQ(f.p, p);
    EXPECT_EQ(f.q, q);
    EXPECT_TRUE(rational_map_is_proper(f));
}

TEST(Mobius, RejectsBadCenters) {
    EXPECT_THROW(mobius_exact(point2(rat(1, 2), rat(1, 2))), std::domain_error);
    EXPECT_THROW(mobius_exact(point2(rat(1), rat(0))), std::domain_error);
    EXPECT_THROW(mobius_exact({}), std::invalid_argument);
}

TEST(PrescribedZeros, OneVariablePair) {
    RationalMap f = map_with_prescribed_zeros({point1(rat(1, 2)), point1(rat(1, 3))});
    EXPECT_EQ(f.q, two_factor_line());
    EXPECT_EQ(f.p.N, 1);
    EXPECT_TRUE(map_eval(f.p, point1(rat(1, 2)))[0].is_zero());
    EXPECT_TRUE(map_eval(f.p, point1(rat(1, 3)))[0].is_zero());
}

TEST(PrescribedZeros, ZerosLieInTheDenominatorCandidateSet) {
    RationalMap f = map_with_prescribed_zeros({point1(rat(1, 2)), point1(rat(1, 3))});
    int d = default_homogenization_degree(f.q);
    EXPECT_TRUE(candidate_check(f.q, d, point1(rat(1, 2))));
    EXPECT_TRUE(candidate_check(f.q, d, point1(rat(1, 3))));
    CandidateSet s = s_of_q(f.q, d);
    EXPECT_EQ(s.status, CandidateStatus::EXACT);
    EXPECT_TRUE(holds_point(s.points, point1(rat(1, 2))));
    EXPECT_TRUE(holds_point(s.points, point1(rat(1, 3))));
}

TEST(PrescribedZeros, TargetDimensionIsAPower) {
    RationalMap f = map_with_prescribed_zeros({point2(rat(3, 5), rat(0)), point2(rat(0), rat(0))});
    EXPECT_EQ(f.p.N, 4);
    EXPECT_TRUE(rational_map_is_proper(f));
    for (const auto& a : {point2(rat(3, 5), rat(0)), point2(rat(0), rat(0))}) {
        for (const CRat& c : map_eval(f.p, a)) EXPECT_TRUE(c.is_zero());
    }
}

TEST(PrescribedZeros, RepeatedPointsAreAllowed) {
    RationalMap f = map_with_prescribed_zeros({point1(rat(1, 2)), point1(rat(1, 2))});
    CPoly q(1);
    q.add_term({0}, CRat(1));
    q.add_term({1}, CRat(-1));
    q.add_term({2}, CRat(rat(1, 4)));
    EXPECT_EQ(f.q, q);
    EXPECT_THROW(map_with_prescribed_zeros({}), std::invalid_argument);
}
