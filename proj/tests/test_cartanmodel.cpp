#include "eqcartan/eulercocycle.hpp"

#include <gtest/gtest.h>

using namespace eqcartan;

namespace {

std::vector<TangentRep> tangents(Rng& rng, const GroupPoint& h, int n) {
    std::vector<TangentRep> out;
    for (int i = 0; i < n; ++i) out.push_back(random_tangent(rng, h));
    return out;
}

CocycleSample random_sample(Rng& rng) {
    CocycleSample s;
    s.h1 = random_point(rng, 1);
    for (auto& v : s.v1) v = random_tangent(rng, s.h1);
    s.h2 = random_point(rng, 2);
    for (auto& v : s.v2) v = random_tangent(rng, s.h2);
    return s;
}

CocycleSample identity_sample(Rng& rng) {
    CocycleSample s;
    s.h1 = GroupPoint::identity(1);
    for (auto& v : s.v1) v = random_tangent(rng, s.h1);
    s.h2 = GroupPoint::identity(2);
    for (auto& v : s.v2) v = random_tangent(rng, s.h2);
    return s;
}

/// tr(X h) for level 1: an invariant polynomial-degree-1 function.
EquivariantForm trace_probe() {
    return EquivariantForm{1, 0, 1, [](const SkewMatrix& x) {
                               return FormEval(0, 1, [x](const GroupPoint& h, std::span<const TangentRep>) {
                                   return (x.matrix() * h.factor(1)).trace();
                               });
                           }};
}

}  // namespace

TEST(FundamentalField, VanishesAtIdentityAndForZeroX) {
    Rng rng(1);
    const SkewMatrix x = random_algebra_element(rng);
    for (const auto& m : fundamental_field(x, 3)(GroupPoint::identity(3))) EXPECT_LE(m.cwiseAbs().maxCoeff(), 1e-14);
    for (const auto& m : fundamental_field(SkewMatrix{}, 2)(random_point(rng, 2))) EXPECT_EQ(m.cwiseAbs().maxCoeff(), 0.0);
}

TEST(FundamentalField, VanishesOnCommutingPoints) {
    // exp(t E12) commutes with exp(s E12) and with exp(s E34).
    const auto b = basis_so4();
    const GroupPoint h{exp_skew(0.7 * b[0]), exp_skew(1.3 * b[5])};
    for (const auto& m : fundamental_field(b[0], 2)(h)) EXPECT_LE(m.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(FundamentalField, IsTangentAndEquivariant) {
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const GroupPoint h = random_point(rng, 2);
        const SkewMatrix x = random_algebra_element(rng);
        const Mat4 g = random_so4(rng);
        EXPECT_TRUE((Tangent{h, fundamental_field(x, 2)(h)}.is_valid()));
        const TangentRep moved = fundamental_field(adjoint(g, x), 2)(act(Action::Conjugation, g, h));
        const TangentRep orig = fundamental_field(x, 2)(h);
        for (std::size_t k = 0; k < 2; ++k) {
            EXPECT_LE(max_abs_diff(moved[k], g * orig[k] * g.transpose()), 1e-12);
        }
    }
    EXPECT_THROW(fundamental_field(SkewMatrix{}, 2)(GroupPoint::identity(1)), UsageError);
}

TEST(FundamentalField, ContractionWithLeftMaurerCartan) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const GroupPoint h = random_point(rng, 1);
        const SkewMatrix x = random_algebra_element(rng);
        const Mat4 expected = x.matrix() - h.factor(1).transpose() * x.matrix() * h.factor(1);
        const Mat4 got = mc_left(1, 1).evaluate(h, {fundamental_field(x, 1)(h)});
        EXPECT_LE(max_abs_diff(got, expected), 1e-13);
    }
}

TEST(EquivariantForm, TotalDegreeAndTypeCheck) {
    EXPECT_EQ(mu_form().total_degree(), 4);
    EXPECT_EQ(constant_in_x(e13_form()).total_degree(), 4);
    EXPECT_EQ(constant_in_x(e22_form()).total_degree(), 4);
    const EquivariantForm lying{1, 2, 0, [](const SkewMatrix&) { return zero_form(1, 1); }};
    EXPECT_THROW(lying(SkewMatrix{}), UsageError);
}

TEST(CartanD, ConstantFunctionGivesZero) {
    Rng rng(4);
    const auto cd = cartan_d(constant_in_x(constant_function(1.5, 1)), random_algebra_element(rng));
    EXPECT_FALSE(cd.lowered.has_value());
    const GroupPoint h = random_point(rng, 1);
    EXPECT_EQ(cd.raised.evaluate(h, tangents(rng, h, 1)), 0.0);
}

TEST(CartanD, SquareVanishesOnInvariantForms) {
    // d_G^2 = -(d i + i d) = -L_{X_M}, zero on invariant forms.
    Rng rng(5);
    for (const EquivariantForm& alpha : {trace_probe(), mu_form()}) {
        for (int i = 0; i < 10; ++i) {
            const SkewMatrix x = random_algebra_element(rng);
            const FormEval a = alpha(x);
            const VectorField field = fundamental_field(x, 1).as_field();
            const GroupPoint h = random_point(rng, 1);
            const auto vs = tangents(rng, h, a.degree());
            // the degree-r part of d_G^2 alpha is -(d i + i d) alpha
            const double di = a.degree() >= 1 ? exterior_d(contract(a, field)).evaluate(h, vs) : 0.0;
            const double id = contract(exterior_d(a), field).evaluate(h, vs);
            EXPECT_NEAR(di + id, 0.0, 1e-4);
        }
    }
}

TEST(CartanD, OfMuMatchesContractedE13) {
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        const SkewMatrix x = random_algebra_element(rng);
        const GroupPoint h = random_point(rng, 1);
        const auto vs = tangents(rng, h, 2);
        const auto cd = cartan_d(mu_form(), x);
        const double i_e13 = contract(e13_form(), fundamental_field(x, 1).as_field()).evaluate(h, vs);
        EXPECT_NEAR(cd.raised.evaluate(h, vs), i_e13, 1e-6);
        ASSERT_TRUE(cd.lowered.has_value());
        EXPECT_NEAR(cd.lowered->evaluate(h, {}), 0.0, 1e-12);
    }
}

TEST(EquivariantTotalCheck, RandomSamplesPassWithPositiveSigns) {
    Rng rng(7);
    std::vector<CocycleSample> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(random_sample(rng));
    const auto r = equivariant_total_check(e13_form(), e22_form(), mu_form(), random_algebra_element(rng), samples);
    EXPECT_LE(r.closed_e13, 1e-6);
    EXPECT_LE(r.lemma_left, 1e-6);
    EXPECT_LE(r.lemma_contraction, 1e-12);
    EXPECT_EQ(unique_sign(r.d_plus, r.d_minus, 1e-6), std::optional<int>(1));
    EXPECT_EQ(unique_sign(r.e_plus, r.e_minus, 1e-10), std::optional<int>(1));
}

TEST(EquivariantTotalCheck, IdentityTupleKillsFieldTerms) {
    Rng rng(8);
    std::vector<CocycleSample> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(identity_sample(rng));
    const auto r = equivariant_total_check(e13_form(), e22_form(), mu_form(), random_algebra_element(rng), samples);
    EXPECT_EQ(r.lemma_contraction, 0.0);
    // i E13 vanishes exactly; d mu is zero up to finite-difference error
    EXPECT_LE(r.lemma_left, 1e-9);
    EXPECT_LE(r.e_plus, 1e-15);
    EXPECT_LE(r.e_minus, 1e-15);
}

TEST(EquivariantTotalCheck, HomogeneityOfResiduals) {
    // (b) is linear in X, (c) quadratic: use the signed values rather than residuals.
    Rng rng(9);
    const SkewMatrix x = random_algebra_element(rng);
    const GroupPoint h = random_point(rng, 1);
    const auto vs = tangents(rng, h, 2);
    auto lemma_b = [&](const SkewMatrix& y) {
        return contract(e13_form(), fundamental_field(y, 1).as_field()).evaluate(h, vs) -
               exterior_d(mu_form()(y)).evaluate(h, vs);
    };
    // perturb mu to make (c) nonzero and observe its scaling
    const EquivariantForm skewed{1, 1, 1, [](const SkewMatrix& y) {
                                     return FormEval(1, 1, [y](const GroupPoint& g, std::span<const TangentRep> v) {
                                         return entry(Mat4(g.factor(1).transpose() * v[0][0]), 1, 2) * y(1, 2);
                                     });
                                 }};
    auto lemma_c = [&](const SkewMatrix& y) {
        return contract(skewed(y), fundamental_field(y, 1).as_field()).evaluate(h, {});
    };
    EXPECT_NEAR(lemma_b(2.0 * x), 2.0 * lemma_b(x), 1e-9);
    const double c1 = lemma_c(x);
    EXPECT_GT(std::abs(c1), 1e-6);
    EXPECT_NEAR(lemma_c(2.0 * x), 4.0 * c1, 1e-12);
}

TEST(EquivariantTotalCheck, RejectsWrongDegrees) {
    std::vector<CocycleSample> none;
    EXPECT_THROW(equivariant_total_check(e22_form(), e22_form(), mu_form(), SkewMatrix{}, none), UsageError);
    EXPECT_THROW(equivariant_total_check(e13_form(), e13_form(), mu_form(), SkewMatrix{}, none), UsageError);
    EXPECT_THROW(equivariant_total_check(e13_form(), e22_form(), constant_in_x(e13_form()), SkewMatrix{}, none),
                 UsageError);
}

TEST(UniqueSign, Cases) {
    EXPECT_EQ(unique_sign(0.0, 1.0, 0.5), std::optional<int>(1));
    EXPECT_EQ(unique_sign(1.0, 0.0, 0.5), std::optional<int>(-1));
    EXPECT_EQ(unique_sign(0.0, 0.0, 0.5), std::nullopt);
    EXPECT_EQ(unique_sign(1.0, 1.0, 0.5), std::nullopt);
}
