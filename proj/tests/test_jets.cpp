#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "ballmaps/herm_form.hpp"
#include "ballmaps/jets.hpp"
#include "ballmaps/multi_index.hpp"
#include "ballmaps/poly_map.hpp"

using namespace ballmaps;

namespace {

// Independent completion oracle. On the complexified sphere u = 1, so each
// prescribed entry c z^a y^b can be compensated by subtracting
// c z^a y^b u^{d - max(|a|, |b|)}, which only touches slots of order d, and
// the base normalization is u^d. Uniqueness of the completion makes
// agreement with this expansion a full check of the solver route.
HermForm oracle_completion(const JetForm& J) {
    int n = J.n, d = J.d;
    CPoly u(2 * n);
    for (int j = 0; j < n; ++j) {
        MultiIndex m(2 * n);
        m[j] = 1;
        m[n + j] = 1;
        u.add_term(m, CRat(1));
    }
    std::vector<CPoly> upow;
    CPoly one(2 * n);
    one.add_term(MultiIndex(2 * n), CRat(1));
    upow.push_back(one);
    for (int k = 1; k <= d; ++k) upow.push_back(upow.back() * u);
    CPoly total = upow[d];
    for (const auto& [k, c] : J.A.entries) {
        MultiIndex m(2 * n);
        for (int j = 0; j < n; ++j) {
            m[j] = k.first[j];
            m[n + j] = k.second[j];
        }
        CPoly mono(2 * n);
        mono.add_term(m, c);
        int gap = d - std::max(k.first.degree(), k.second.degree());
        total = total + mono - mono * upow[gap];
    }
    return form_from_pair_poly(total, n);
}

JetForm jet(int n, int d, const HermForm& A) { return JetForm{n, d, A}; }

HermForm spectrahedron_jet_entries(const Rational& x, const Rational& y, const CRat& zeta) {
    HermForm A(2);
    A.add(unit_index(2, 0), unit_index(2, 0), CRat(x));
    A.add(unit_index(2, 1), unit_index(2, 1), CRat(y));
    A.add(unit_index(2, 0), unit_index(2, 1), zeta);
    return A;
}

HermForm diagonal_form(int n, const std::vector<std::pair<MultiIndex, Rational>>& slots) {
    HermForm F(n);
    for (const auto& [m, c] : slots) F.add(m, m, CRat(c));
    return F;
}

}  // namespace

TEST(JetSpaceDimension, CountsMonomialsWithoutConstant) {
    EXPECT_EQ(jet_space_dimension(2, 1), 2);
    EXPECT_EQ(jet_space_dimension(2, 2), 5);
    EXPECT_EQ(jet_space_dimension(2, 3), 9);
    EXPECT_EQ(jet_space_dimension(3, 2), 9);
    EXPECT_EQ(jet_space_dimension(1, 5), 5);
    EXPECT_THROW(jet_space_dimension(0, 1), std::domain_error);
    EXPECT_THROW(jet_space_dimension(2, 0), std::domain_error);
}

TEST(JetCompletion, ZeroJetGivesTheNormPower) {
    CompletedForm out = jet_complete(jet(2, 2, HermForm(2)));
    EXPECT_EQ(out.C, norm_power_form(2, 2));
    EXPECT_EQ(out.unknowns, 21);
    EXPECT_EQ(out.rank, 21);
    EXPECT_GT(out.equations, out.rank);
}

TEST(JetCompletion, RankOneJetGivesTheProductMapForm) {
    HermForm A(2);
    A.add(unit_index(2, 0), unit_index(2, 0), CRat(1));
    CompletedForm out = jet_complete(jet(2, 2, A));
    PolyMap f(2, 3);
    f.add_term({1, 0}, 0, CRat(1));
    f.add_term({1, 1}, 1, CRat(1));
    f.add_term({0, 2}, 2, CRat(1));
    EXPECT_EQ(out.C, squared_norm_form(f));
}

TEST(JetCompletion, FullDiagonalJetDegenerates) {
    HermForm A(2);
    A.add(unit_index(2, 0), unit_index(2, 0), CRat(1));
    A.add(unit_index(2, 1), unit_index(2, 1), CRat(1));
    CompletedForm out = jet_complete(jet(2, 2, A));
    EXPECT_EQ(out.C, norm_power_form(2, 1));
}

TEST(JetCompletion, MatchesTheMultiplicativeOracle) {
    std::mt19937 rng(20240817u);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int n : {2, 3}) {
        std::vector<MultiIndex> basis = indices_up_to_degree(n, 1);
        for (int trial = 0; trial < 15; ++trial) {
            HermForm A(n);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = i; j < basis.size(); ++j) {
                    if (i == j)
                        A.add(basis[i], basis[j], CRat(rat(num(rng), 10)));
                    else
                        A.add(basis[i], basis[j], CRat(rat(num(rng), 10), rat(num(rng), 10)));
                }
            JetForm J = jet(n, 2, A);
            CompletedForm out = jet_complete(J);
            EXPECT_EQ(out.C, oracle_completion(J));
            EXPECT_TRUE(form_vanishes_on_sphere(form_sub(out.C, form_constant(n, rat(1)))));
        }
    }
    std::vector<MultiIndex> basis = indices_up_to_degree(2, 2);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
    for (int trial = 0; trial < 20; ++trial) {
        HermForm A(2);
        for (int e = 0; e < 4; ++e) {
            int i = pick(rng), j = pick(rng);
            if (i > j) std::swap(i, j);
            if (i == j)
                A.add(basis[i], basis[j], CRat(rat(num(rng), 10)));
            else
                A.add(basis[i], basis[j], CRat(rat(num(rng), 10), rat(num(rng), 10)));
        }
        JetForm J = jet(2, 3, A);
        CompletedForm out = jet_complete(J);
        EXPECT_EQ(out.C, oracle_completion(J));
        EXPECT_TRUE(form_vanishes_on_sphere(form_sub(out.C, form_constant(2, rat(1)))));
    }
}

TEST(JetCompletion, CompletionIsAffineInTheJet) {
    HermForm A1 = spectrahedron_jet_entries(rat(1, 3), rat(1, 7), CRat(rat(1, 5), rat(1, 9)));
    HermForm A2(2);
    A2.add(unit_index(2, 0), unit_index(2, 1), CRat(rat(-1, 2), rat(1, 4)));
    A2.add(unit_index(2, 1), unit_index(2, 1), CRat(rat(2, 3)));
    HermForm mix = form_add(form_scale(A1, rat(1, 3)), form_scale(A2, rat(2, 3)));
    HermForm C1 = jet_complete(jet(2, 2, A1)).C;
    HermForm C2 = jet_complete(jet(2, 2, A2)).C;
    HermForm Cmix = jet_complete(jet(2, 2, mix)).C;
    EXPECT_EQ(Cmix, form_add(form_scale(C1, rat(1, 3)), form_scale(C2, rat(2, 3))));
}

TEST(JetCompletion, RejectsOutOfRangeJets) {
    HermForm A(2);
    A.add(MultiIndex{2, 0}, MultiIndex{2, 0}, CRat(1));
    EXPECT_THROW(jet_complete(jet(2, 2, A)), std::invalid_argument);
    HermForm B(3);
    B.add(unit_index(3, 0), unit_index(3, 0), CRat(1));
    EXPECT_THROW(jet_complete(jet(2, 2, B)), std::invalid_argument);
    EXPECT_THROW(jet_complete(jet(0, 1, HermForm())), std::invalid_argument);
}

TEST(JetCompletion, SolutionSpaceDimensionIsTheSquaredLowerCount) {
    EXPECT_EQ(jet_solution_dimension(2, 2), 4);
    EXPECT_EQ(jet_solution_dimension(3, 2), 9);
    EXPECT_EQ(jet_solution_dimension(1, 3), 4);
    EXPECT_EQ(jet_solution_dimension(2, 3), 25);
    EXPECT_EQ(jet_solution_dimension(2, 2),
              jet_space_dimension(2, 1) * jet_space_dimension(2, 1));
}

TEST(SpectrahedronCompletion, KnownFiveByFiveEntries) {
    Rational x = rat(1, 3), y = rat(1, 7);
    CRat zeta(rat(2, 9), rat(5, 9));
    HermForm C = jet_complete(jet(2, 2, spectrahedron_jet_entries(x, y, zeta))).C;
    MultiIndex z1 = unit_index(2, 0), z2 = unit_index(2, 1);
    MultiIndex z11{2, 0}, z12{1, 1}, z22{0, 2};
    EXPECT_EQ(C.entry(z1, z1), CRat(x));
    EXPECT_EQ(C.entry(z1, z2), zeta);
    EXPECT_EQ(C.entry(z2, z2), CRat(y));
    for (const MultiIndex& lo : {z1, z2})
        for (const MultiIndex& hi : {z11, z12, z22}) EXPECT_EQ(C.entry(lo, hi), CRat(0));
    EXPECT_EQ(C.entry(z11, z11), CRat(Rational(1 - x)));
    EXPECT_EQ(C.entry(z11, z12), -zeta);
    EXPECT_EQ(C.entry(z11, z22), CRat(0));
    EXPECT_EQ(C.entry(z12, z12), CRat(Rational(2 - x - y)));
    EXPECT_EQ(C.entry(z12, z22), -zeta);
    EXPECT_EQ(C.entry(z22, z22), CRat(Rational(1 - y)));
}

TEST(PsdRegion, SmallDiagonalJetIsPositiveDefinite) {
    HermForm A(2);
    A.add(unit_index(2, 0), unit_index(2, 0), CRat(rat(1, 10)));
    A.add(unit_index(2, 1), unit_index(2, 1), CRat(rat(1, 10)));
    PsdCertificate cert = psd_region_membership(jet(2, 2, A));
    EXPECT_EQ(cert.verdict, Definiteness::PD);
    EXPECT_EQ(cert.rank, 5);
}

TEST(PsdRegion, ZeroJetIsOnlySemidefinite) {
    PsdCertificate cert = psd_region_membership(jet(2, 2, HermForm(2)));
    EXPECT_EQ(cert.verdict, Definiteness::PSD);
    EXPECT_EQ(cert.rank, 3);
}

TEST(PsdRegion, CornerJetFailsWithAWitness) {
    PsdCertificate cert =
        psd_region_membership(jet(2, 2, spectrahedron_jet_entries(rat(1), rat(1), CRat(1))));
    EXPECT_EQ(cert.verdict, Definiteness::NOT_PSD);
    EXPECT_FALSE(cert.witness.empty());
    EXPECT_LT(cert.witness_value, 0);
}

TEST(SpectrahedronDemo, KnownMemberships) {
    EXPECT_TRUE(spectrahedron_demo(rat(1, 2), rat(1, 2), CRat(rat(1, 2))));
    EXPECT_TRUE(spectrahedron_demo(rat(1), rat(1), CRat(0)));
    EXPECT_FALSE(spectrahedron_demo(rat(1), rat(1), CRat(rat(1, 10))));
    EXPECT_TRUE(spectrahedron_demo(rat(0), rat(0), CRat(0)));
    EXPECT_FALSE(spectrahedron_demo(rat(-1, 10), rat(1, 2), CRat(0)));
    EXPECT_FALSE(spectrahedron_demo(rat(1, 2), rat(1, 2), CRat(rat(3, 4))));
}

TEST(SpectrahedronDemo, ClosedFormAgreesWithTheSolverOnAGrid) {
    // spectrahedron_demo cross-checks the two routes internally and throws
    // on any disagreement, so the loop only needs to run
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j)
            for (int k = 0; k <= 4; ++k)
                spectrahedron_demo(rat(i, 10), rat(j, 10), CRat(rat(k, 4)));
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            for (int k = 0; k <= 2; ++k) {
                CRat zeta(rat(3 * k, 10), rat(4 * k, 10));
                spectrahedron_demo(rat(i, 2), rat(j, 2), zeta);
            }
    SUCCEED();
}

TEST(Stabilize, SignChangingDiagonalNeedsOneStep) {
    HermForm R = diagonal_form(
        2, {{MultiIndex{2, 0}, rat(1)}, {MultiIndex{1, 1}, rat(-1)}, {MultiIndex{0, 2}, rat(1)}});
    Stabilization st = stabilize(R, StabilizeMode::PSD);
    EXPECT_EQ(st.m, 1);
    HermForm cubes =
        diagonal_form(2, {{MultiIndex{3, 0}, rat(1)}, {MultiIndex{0, 3}, rat(1)}});
    EXPECT_EQ(st.F, cubes);
}

TEST(Stabilize, StrictPositivityNeedsThreeSteps) {
    HermForm R = diagonal_form(
        2, {{MultiIndex{2, 0}, rat(1)}, {MultiIndex{1, 1}, rat(-1)}, {MultiIndex{0, 2}, rat(1)}});
    Stabilization st = stabilize(R, StabilizeMode::PD);
    EXPECT_EQ(st.m, 3);
    HermForm quintic = diagonal_form(2, {{MultiIndex{5, 0}, rat(1)},
                                         {MultiIndex{4, 1}, rat(2)},
                                         {MultiIndex{3, 2}, rat(1)},
                                         {MultiIndex{2, 3}, rat(1)},
                                         {MultiIndex{1, 4}, rat(2)},
                                         {MultiIndex{0, 5}, rat(1)}});
    EXPECT_EQ(st.F, quintic);
}

TEST(Stabilize, PositiveDiagonalNeedsNothing) {
    Stabilization psd = stabilize(norm_power_form(2, 2), StabilizeMode::PSD);
    EXPECT_EQ(psd.m, 0);
    Stabilization pd = stabilize(norm_power_form(2, 2), StabilizeMode::PD);
    EXPECT_EQ(pd.m, 0);
    EXPECT_EQ(pd.F, norm_power_form(2, 2));
}

TEST(Stabilize, StaysMetAfterFurtherMultiplication) {
    HermForm R = diagonal_form(
        2, {{MultiIndex{2, 0}, rat(1)}, {MultiIndex{1, 1}, rat(-1)}, {MultiIndex{0, 2}, rat(1)}});
    Stabilization st = stabilize(R, StabilizeMode::PSD);
    HermForm further = multiply_by_squared_norm(st.F);
    EXPECT_TRUE(form_definiteness(further, indices_of_degree(2, 2 + st.m + 1)).is_psd());
}

TEST(Stabilize, IndefiniteFormExhaustsTheCap) {
    HermForm R = diagonal_form(2, {{MultiIndex{1, 0}, rat(1)}, {MultiIndex{0, 1}, rat(-1)}});
    EXPECT_THROW(stabilize(R, StabilizeMode::PSD), std::runtime_error);
}

TEST(Stabilize, RejectsNonBihomogeneousAndZeroForms) {
    PolyMap f(2, 3);
    f.add_term({1, 0}, 0, CRat(1));
    f.add_term({1, 1}, 1, CRat(1));
    f.add_term({0, 2}, 2, CRat(1));
    EXPECT_THROW(stabilize(squared_norm_form(f), StabilizeMode::PSD), std::invalid_argument);
    EXPECT_THROW(stabilize(HermForm(2), StabilizeMode::PSD), std::invalid_argument);
}

TEST(CompleteToProper, HalfCoordinateIsDirect) {
    PolyMap g(1, 1);
    g.add_term({1}, 0, CRat(rat(1, 2)));
    CompletionReport rep = complete_to_proper(g, 2);
    EXPECT_TRUE(rep.direct_psd);
    EXPECT_EQ(rep.m, 0);
    HermForm expected(1);
    expected.add(MultiIndex{1}, MultiIndex{1}, CRat(rat(3, 4)));
    EXPECT_EQ(rep.F, expected);
    EXPECT_EQ(rep.total, norm_power_form(1, 1));
}

TEST(CompleteToProper, ZeroMapGetsTheFullNormPower) {
    PolyMap g(2, 1);
    CompletionReport rep = complete_to_proper(g, 3);
    EXPECT_TRUE(rep.direct_psd);
    EXPECT_EQ(rep.F, norm_power_form(2, 2));
}

TEST(CompleteToProper, ProductMapIsDirect) {
    PolyMap g(2, 1);
    g.add_term({1, 1}, 0, CRat(1));
    CompletionReport rep = complete_to_proper(g, 3);
    EXPECT_TRUE(rep.direct_psd);
    HermForm expected = diagonal_form(
        2, {{MultiIndex{2, 0}, rat(1)}, {MultiIndex{1, 1}, rat(1)}, {MultiIndex{0, 2}, rat(1)}});
    EXPECT_EQ(rep.F, expected);
    EXPECT_TRUE(form_vanishes_on_sphere(form_sub(rep.total, form_constant(2, rat(1)))));
}

TEST(CompleteToProper, QuadraticTailNeedsTheSlackPath) {
    PolyMap g(1, 1);
    g.add_term({1}, 0, CRat(rat(2, 5)));
    g.add_term({2}, 0, CRat(rat(2, 5)));
    HermForm R = form_sub(norm_power_form(1, 2), squared_norm_form(g));
    EXPECT_FALSE(form_definiteness(R).is_psd());
    CompletionReport rep = complete_to_proper(g, 3);
    EXPECT_FALSE(rep.direct_psd);
    EXPECT_EQ(rep.m, 13);
    EXPECT_EQ(rep.slack, 1);
    EXPECT_TRUE(form_definiteness(rep.F).is_psd());
    EXPECT_TRUE(form_vanishes_on_sphere(form_sub(rep.total, form_constant(1, rat(1)))));
    EXPECT_EQ(form_value(rep.total, {CRat(1)}), 1);
    EXPECT_EQ(form_value(rep.total, {CRat(rat(0), rat(1))}), 1);
}

TEST(CompleteToProper, RejectsBadInputs) {
    PolyMap quadratic(1, 1);
    quadratic.add_term({2}, 0, CRat(1));
    EXPECT_THROW(complete_to_proper(quadratic, 2), std::invalid_argument);
    PolyMap offset(1, 1);
    offset.add_term({0}, 0, CRat(rat(1, 2)));
    EXPECT_THROW(complete_to_proper(offset, 2), std::invalid_argument);
    PolyMap g(1, 1);
    g.add_term({1}, 0, CRat(rat(1, 2)));
    EXPECT_THROW(complete_to_proper(g, 1), std::invalid_argument);
}
