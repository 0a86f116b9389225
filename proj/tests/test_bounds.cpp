#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "ballmaps/poly_map.hpp"
#include "ballmaps/pullback.hpp"

namespace ballmaps {
namespace {

PolyMap identity_map(int n) {
    PolyMap f(n, n);
    for (int j = 0; j < n; ++j) f.add_term(unit_index(n, j), j, CRat(1));
    return f;
}

// Replaces one component by its products with every coordinate, which keeps
// a proper monomial map proper and monomial and raises its degree by one.
// Applied to the last component of the identity this yields the classical
// Whitney map.
PolyMap tensor_component(const PolyMap& f, int comp) {
    PolyMap out(f.n, f.N + f.n - 1);
    for (const auto& [m, vec] : f.terms)
        for (int i = 0; i < f.N; ++i) {
            if (vec[i].is_zero()) continue;
            if (i < comp) {
                out.add_term(m, i, vec[i]);
            } else if (i > comp) {
                out.add_term(m, i + f.n - 1, vec[i]);
            } else {
                for (int j = 0; j < f.n; ++j)
                    out.add_term(m + unit_index(f.n, j), comp + j, vec[i]);
            }
        }
    return out;
}

std::vector<PolyMap> monomial_corpus(int n) {
    PolyMap id = identity_map(n);
    PolyMap last1 = tensor_component(id, n - 1);
    PolyMap last2 = tensor_component(last1, last1.N - 1);
    PolyMap last3 = tensor_component(last2, last2.N - 1);
    PolyMap first1 = tensor_component(id, 0);
    PolyMap first2 = tensor_component(first1, 0);
    PolyMap square = tensor(id, id);
    PolyMap cube = tensor(square, id);
    PolyMap square_last = tensor_component(square, square.N - 1);
    PolyMap square_first = tensor_component(square, 0);
    return {id, last1, last2, last3, first1, first2, square, cube, square_last, square_first};
}

TEST(Bounds, SpotValues) {
    EXPECT_EQ(bound_eval(BoundKind::MonomialSharpN2, 2, 2), rat(1));
    EXPECT_EQ(bound_eval(BoundKind::MonomialSharpN2, 2, 3), rat(3));
    EXPECT_EQ(bound_eval(BoundKind::MonomialSharpN2, 2, 4), rat(5));
    EXPECT_EQ(bound_eval(BoundKind::MonomialGeneral, 2, 3), rat(4));
    EXPECT_EQ(bound_eval(BoundKind::MonomialGeneral, 3, 6), rat(4));
    EXPECT_EQ(bound_eval(BoundKind::MonomialGeneral, 2, 10), rat(4 * 17, 3));
    EXPECT_EQ(bound_eval(BoundKind::MonomialLargeN, 3, 5), rat(2));
    EXPECT_EQ(bound_eval(BoundKind::MonomialLargeN, 3, 3), rat(1));
    EXPECT_EQ(bound_eval(BoundKind::MonomialLargeN, 4, 7), rat(2));
    EXPECT_EQ(bound_eval(BoundKind::MonomialLargeN, 3, 6), rat(2));
    EXPECT_EQ(bound_eval(BoundKind::RationalGeneral, 3, 4), rat(2));
    EXPECT_EQ(bound_eval(BoundKind::RationalGeneral, 2, 2), rat(1));
    for (int N = 2; N <= 9; ++N)
        EXPECT_EQ(bound_eval(BoundKind::RationalGeneral, 2, N), rat(N * (N - 1), 2));
}

TEST(Bounds, ValidityDomains) {
    EXPECT_THROW(bound_eval(BoundKind::MonomialSharpN2, 3, 6), std::domain_error);
    EXPECT_THROW(bound_eval(BoundKind::MonomialSharpN2, 2, 1), std::domain_error);
    EXPECT_THROW(bound_eval(BoundKind::MonomialGeneral, 1, 4), std::domain_error);
    EXPECT_THROW(bound_eval(BoundKind::MonomialLargeN, 2, 10), std::domain_error);
    EXPECT_THROW(bound_eval(BoundKind::RationalGeneral, 2, 1), std::domain_error);
    EXPECT_THROW(bound_eval(BoundKind::RationalGeneral, 1, 5), std::domain_error);
}

TEST(Bounds, FormulaDescriptors) {
    EXPECT_EQ(bound_formula(BoundKind::MonomialSharpN2).sharpness, Sharpness::SHARP);
    EXPECT_EQ(bound_formula(BoundKind::MonomialGeneral).sharpness, Sharpness::NOT_SHARP);
    EXPECT_EQ(bound_formula(BoundKind::MonomialLargeN).sharpness, Sharpness::SHARP);
    EXPECT_EQ(bound_formula(BoundKind::RationalGeneral).sharpness, Sharpness::NOT_SHARP);
    for (BoundKind kind : all_bound_kinds())
        EXPECT_EQ(bound_kind_from_name(bound_name(kind)), kind);
    EXPECT_THROW(bound_kind_from_name("no-such-formula"), std::invalid_argument);
    EXPECT_EQ(sharpness_name(Sharpness::CONJECTURAL), "conjectural");
}

TEST(Bounds, NondecreasingInTargetDimension) {
    struct Row {
        BoundKind kind;
        std::vector<int> ns;
    };
    const std::vector<Row> rows = {
        {BoundKind::MonomialSharpN2, {2}},
        {BoundKind::MonomialGeneral, {2, 3, 5}},
        {BoundKind::MonomialLargeN, {3, 4, 7}},
        {BoundKind::RationalGeneral, {2, 3, 5}},
    };
    for (const Row& row : rows)
        for (int n : row.ns)
            for (int N = 2; N < 50; ++N)
                EXPECT_LE(bound_eval(row.kind, n, N), bound_eval(row.kind, n, N + 1))
                    << bound_name(row.kind) << " n=" << n << " N=" << N;
}

TEST(Bounds, ConsistencyChainAtN2) {
    for (int N = 2; N <= 50; ++N)
        EXPECT_LE(bound_eval(BoundKind::MonomialSharpN2, 2, N),
                  bound_eval(BoundKind::MonomialGeneral, 2, N));
    // The sharp values at N = 3 and N = 4 are attained by the invariant
    // maps with three and four components.
    InvariantMapData v3 = build_invariant_map(3);
    EXPECT_EQ(rat(v3.degree), bound_eval(BoundKind::MonomialSharpN2, 2, 3));
    EXPECT_EQ(static_cast<int>(v3.real_form.terms.size()), 3);
    InvariantMapData v4 = build_invariant_map(4);
    EXPECT_EQ(rat(v4.degree), bound_eval(BoundKind::MonomialSharpN2, 2, 4));
    EXPECT_EQ(static_cast<int>(v4.real_form.terms.size()), 4);
}

TEST(SqrtField, SquarefreeSplit) {
    auto check = [](long m, long k, long r) {
        auto [kk, rr] = squarefree_split(Integer(m));
        EXPECT_EQ(kk, Integer(k)) << m;
        EXPECT_EQ(rr, Integer(r)) << m;
    };
    check(1, 1, 1);
    check(4, 2, 1);
    check(12, 2, 3);
    check(360, 6, 10);
    check(1000000, 1000, 1);
    check(9973, 1, 9973);
    EXPECT_THROW(squarefree_split(Integer(0)), std::domain_error);
    EXPECT_THROW(squarefree_split(Integer(-5)), std::domain_error);
    EXPECT_THROW(squarefree_split(Integer("10000000000000")), std::domain_error);
}

TEST(SqrtField, ElementArithmetic) {
    SqrtElem r2 = sqrt_of(rat(2));
    SqrtElem r3 = sqrt_of(rat(3));
    EXPECT_EQ(r2 * r2, SqrtElem(2));
    EXPECT_EQ(r2 * r3, sqrt_of(rat(6)));
    EXPECT_EQ(sqrt_of(rat(6)) * sqrt_of(rat(10)), SqrtElem(rat(2)) * sqrt_of(rat(15)));
    EXPECT_EQ((SqrtElem(1) + r2) * (SqrtElem(1) - r2), SqrtElem(-1));
    EXPECT_EQ(sqrt_of(rat(4, 9)), SqrtElem(rat(2, 3)));
    EXPECT_EQ(sqrt_of(rat(5, 4)), SqrtElem(rat(1, 2)) * sqrt_of(rat(5)));
    EXPECT_TRUE((r2 + r3 - r3 - r2).is_zero());
    EXPECT_FALSE(r2 == r3);
    EXPECT_FALSE((SqrtElem(rat(2)) * r2 + SqrtElem(rat(3)) * r3).is_zero());
    EXPECT_TRUE(sqrt_of(rat(9)).is_rational());
    EXPECT_EQ(sqrt_of(rat(9)).rational_value(), rat(3));
    EXPECT_FALSE(r2.is_rational());
    EXPECT_THROW(r2.rational_value(), std::domain_error);
    EXPECT_THROW(sqrt_of(rat(-1)), std::domain_error);
    EXPECT_EQ(sqrt_elem_str(SqrtElem(1) + r2), "1 + 1*sqrt(2)");
    EXPECT_NEAR(sqrt_elem_double(r2), 1.41421356, 1e-8);
}

TEST(SqrtField, ComplexArithmetic) {
    CSqrt a(SqrtElem(1), sqrt_of(rat(2)));
    CSqrt prod = a * a.conj();
    EXPECT_EQ(prod, CSqrt(3));
    CSqrt b = a / CSqrt(rat(1, 2));
    EXPECT_EQ(b, a * CSqrt(2));
    CSqrt irrational(sqrt_of(rat(2)));
    EXPECT_THROW(a / irrational, std::domain_error);
    EXPECT_THROW(a / CSqrt(0), std::domain_error);
}

TEST(Pullback, RationalOrthogonalMatrices) {
    for (int n = 2; n <= 6; ++n)
        for (int variant = 0; variant < 4; ++variant) {
            RatMat u = rational_orthogonal(n, variant);
            EXPECT_TRUE(rational_matrix_is_orthogonal(u)) << n << " " << variant;
            for (int j = 0; j < n; ++j) EXPECT_NE(u[j][0], rat(0)) << n << " " << variant;
        }
    RatMat u = rational_orthogonal(3, 0);
    EXPECT_EQ(u[0][0], rat(3, 5));
    EXPECT_EQ(u[1][0], rat(4, 13));
    EXPECT_EQ(u[2][0], rat(48, 65));
}

TEST(Pullback, InvariantSqrtMapIsProper) {
    for (int n = 2; n <= 8; ++n) {
        SqrtMap v = invariant_sqrt_map(n);
        EXPECT_EQ(v.N, n);
        EXPECT_EQ(static_cast<int>(v.components.size()), n);
        EXPECT_EQ(sqrt_map_degree(v), 2 * n - 3);
        EXPECT_TRUE(sqrt_map_is_proper(v)) << n;
    }
    SqrtMap v3 = invariant_sqrt_map(3);
    EXPECT_EQ(v3.components[1].coeff({1, 1}), CSqrt(sqrt_of(rat(3))));
    SqrtMap v4 = invariant_sqrt_map(4);
    EXPECT_EQ(v4.components[1].coeff({3, 1}), CSqrt(sqrt_of(rat(5))));
    EXPECT_EQ(v4.components[2].coeff({1, 2}), CSqrt(sqrt_of(rat(5))));
    SPoly pair = sqrt_map_pair_form(v3);
    EXPECT_EQ(static_cast<int>(pair.terms.size()), 3);
    EXPECT_EQ(pair.coeff({3, 0, 3, 0}), CSqrt(1));
    EXPECT_EQ(pair.coeff({1, 1, 1, 1}), CSqrt(3));
    EXPECT_EQ(pair.coeff({0, 3, 0, 3}), CSqrt(1));
}

TEST(Pullback, IdentityGivesTheInvariantMapForm) {
    for (int n = 2; n <= 5; ++n) {
        PullbackResult out = pullback(identity_map(n));
        EXPECT_EQ(out.g_degree, 1);
        EXPECT_EQ(out.composed_degree, 2 * n - 3);
        EXPECT_EQ(out.attempts, 1);
        EXPECT_TRUE(out.proper);
        // A real orthogonal change of target coordinates leaves the squared
        // norm unchanged as a polynomial identity.
        EXPECT_EQ(sqrt_map_pair_form(out.composed), sqrt_map_pair_form(invariant_sqrt_map(n)));
    }
    PullbackResult out = pullback(identity_map(3));
    EXPECT_EQ(out.composed.components[0].coeff({3, 0}), CSqrt(rat(3, 5)));
    EXPECT_EQ(out.composed.components[0].coeff({1, 1}),
              CSqrt(rat(-4, 5)) * CSqrt(sqrt_of(rat(3))));
}

TEST(Pullback, TensorSquareOnTheTwoBall) {
    PolyMap g = tensor(identity_map(2), identity_map(2));
    PullbackResult out = pullback(g);
    EXPECT_EQ(out.g_degree, 2);
    EXPECT_EQ(out.expected_degree, 2);
    EXPECT_EQ(out.composed_degree, 2);
    EXPECT_TRUE(out.proper);
}

TEST(Pullback, WhitneyTypeOnTheThreeBall) {
    PolyMap g = tensor_component(identity_map(3), 2);
    EXPECT_TRUE(is_monomial_map(g));
    PullbackResult out = pullback(g);
    EXPECT_EQ(out.g_degree, 2);
    EXPECT_EQ(out.composed_degree, 6);
    EXPECT_TRUE(out.proper);
    // Component 2 is z1 z3; its top coefficient is the product of the first
    // column entries of the rotation.
    EXPECT_EQ(out.composed.components[2].coeff({6, 0}), CSqrt(rat(144, 325)));
}

TEST(Pullback, MultiplicativityCorpus) {
    for (int n : {3, 4}) {
        std::vector<PolyMap> corpus = monomial_corpus(n);
        ASSERT_EQ(corpus.size(), 10u);
        std::vector<int> seen_degrees;
        for (const PolyMap& g : corpus) {
            EXPECT_TRUE(is_monomial_map(g));
            PullbackResult out = pullback(g);
            EXPECT_EQ(out.composed_degree, (2 * n - 3) * out.g_degree) << "n=" << n;
            EXPECT_TRUE(out.proper);
            seen_degrees.push_back(out.g_degree);
        }
        for (int d : {1, 2, 3})
            EXPECT_NE(std::count(seen_degrees.begin(), seen_degrees.end(), d), 0);
    }
}

TEST(Pullback, DiagonalFormEntryPoint) {
    PullbackResult out = pullback(norm_power_form(2, 2));
    EXPECT_EQ(out.g_degree, 2);
    EXPECT_EQ(out.composed_degree, 2);
    EXPECT_TRUE(out.proper);
    HermForm off(2);
    off.add(unit_index(2, 0), unit_index(2, 1), CRat(rat(1, 2)));
    off.add(unit_index(2, 0), unit_index(2, 0), CRat(1));
    off.add(unit_index(2, 1), unit_index(2, 1), CRat(1));
    EXPECT_THROW(pullback(off), std::invalid_argument);
}

TEST(Pullback, RejectsBadInputs) {
    PolyMap doubled(2, 2);
    doubled.add_term(unit_index(2, 0), 0, CRat(1));
    doubled.add_term(unit_index(2, 0), 1, CRat(1));
    EXPECT_THROW(pullback(doubled), std::invalid_argument);
    PolyMap one_ball(1, 1);
    one_ball.add_term(unit_index(1, 0), 0, CRat(1));
    EXPECT_THROW(pullback(one_ball), std::domain_error);
    PolyMap constant(2, 1);
    constant.add_term(MultiIndex(2), 0, CRat(1));
    EXPECT_THROW(pullback(constant), std::invalid_argument);
}

TEST(Pullback, CancellationIsDetectedByDegree) {
    SqrtMap w;
    w.n = 2;
    w.N = 2;
    SPoly a(2), b(2);
    a.add_term({2, 0}, CSqrt(1));
    a.add_term({0, 1}, CSqrt(1));
    b.add_term({2, 0}, CSqrt(1));
    w.components = {a, b};
    PolyMap g(2, 1);
    g.add_term(unit_index(2, 0), 0, CRat(1));
    g.add_term(unit_index(2, 1), 0, CRat(-1));
    SqrtMap composed = compose_with_sqrt_map(g, w);
    EXPECT_EQ(sqrt_map_degree(composed), 1);
}

}  // namespace
}  // namespace ballmaps
