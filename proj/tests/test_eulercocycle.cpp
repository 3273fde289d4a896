#include "eqcartan/eulercocycle.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace eqcartan;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

const SkewMatrix& E(int a, int b) {
    static const auto basis = basis_so4();
    static const int index[5][5] = {{}, {0, 0, 0, 1, 2}, {0, 0, 0, 3, 4}, {0, 0, 0, 0, 5}, {}};
    return basis[static_cast<std::size_t>(index[a][b])];
}

oracle::M4 to_array(const Mat4& m) {
    oracle::M4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = m(i, j);
    return out;
}

std::vector<TangentRep> tangents(Rng& rng, const GroupPoint& h, int n) {
    std::vector<TangentRep> out;
    for (int i = 0; i < n; ++i) out.push_back(random_tangent(rng, h));
    return out;
}

Tangent at(const GroupPoint& h, TangentRep rep) { return Tangent{h, std::move(rep)}; }

}  // namespace

TEST(GoldenValues, Mu) {
    const GroupPoint id = GroupPoint::identity(1);
    const double v = eval_mu(E(1, 2), id, at(id, {E(3, 4).matrix()}));
    EXPECT_NEAR(v, -1.0 / (4.0 * kPi2), 1e-12);
    EXPECT_NEAR(v, oracle::mu_at_identity(oracle::basis(1, 2), oracle::basis(3, 4)), 1e-14);
}

TEST(GoldenValues, E22) {
    const GroupPoint id = GroupPoint::identity(2);
    const Tangent t1 = at(id, {E(1, 2).matrix(), Mat4::Zero()});
    const Tangent t2 = at(id, {Mat4::Zero(), E(3, 4).matrix()});
    const double v = eval_E22(id, t1, t2);
    EXPECT_NEAR(v, -1.0 / (8.0 * kPi2), 1e-12);
    EXPECT_NEAR(v, oracle::e22_at_identity(oracle::basis(1, 2), oracle::zero(), oracle::zero(), oracle::basis(3, 4)),
                1e-14);
    EXPECT_NEAR(eval_E22(id, t2, t1), 1.0 / (8.0 * kPi2), 1e-12);
}

TEST(GoldenValues, E13) {
    const GroupPoint id = GroupPoint::identity(1);
    const double v = eval_E13(id, at(id, {E(1, 2).matrix()}), at(id, {E(1, 3).matrix()}), at(id, {E(2, 3).matrix()}));
    EXPECT_NEAR(v, 0.0, 1e-14);
    EXPECT_NEAR(v, oracle::e13_at_identity(oracle::basis(1, 2), oracle::basis(1, 3), oracle::basis(2, 3)), 1e-14);

    // A self-dual triple gives a nonzero value.
    const Mat4 a = E(1, 2).matrix() + E(3, 4).matrix();
    const Mat4 b = E(1, 3).matrix() - E(2, 4).matrix();
    const Mat4 c = E(1, 4).matrix() + E(2, 3).matrix();
    const double w = eval_E13(id, at(id, {a}), at(id, {b}), at(id, {c}));
    EXPECT_NEAR(w, -1.0 / (2.0 * kPi2), 1e-12);
    EXPECT_NEAR(w, oracle::e13_at_identity(to_array(a), to_array(b), to_array(c)), 1e-14);
}

TEST(GoldenValues, Alpha) {
    const AlgebraPath xi1 = polynomial_path({SkewMatrix{}, E(1, 2)});
    const AlgebraPath xi2 = polynomial_path({E(3, 4)});
    EXPECT_NEAR(eval_alpha(xi1, xi2), -1.0 / (8.0 * kPi2), 1e-12);
    // integrand is the constant pairing of E12 with E34
    EXPECT_NEAR(eval_alpha(xi1, xi2), -oracle::inv_pi2 / 64.0 * oracle::pairing(oracle::basis(1, 2), oracle::basis(3, 4)),
                1e-14);
}

TEST(E13, MatchesOracleAtIdentityForRandomTangents) {
    Rng rng(1);
    const GroupPoint id = GroupPoint::identity(1);
    for (int i = 0; i < 50; ++i) {
        const Mat4 a = random_algebra_element(rng).matrix(), b = random_algebra_element(rng).matrix(),
                   c = random_algebra_element(rng).matrix();
        EXPECT_NEAR(e13_value(id, {a}, {b}, {c}), oracle::e13_at_identity(to_array(a), to_array(b), to_array(c)), 1e-14);
    }
}

TEST(E13, LeftInvariant) {
    // E13 is built from h^{-1}dh only, so E13(h; h v_i) = E13(I; v_i).
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const GroupPoint h = random_point(rng, 1);
        const Mat4 a = random_algebra_element(rng).matrix(), b = random_algebra_element(rng).matrix(),
                   c = random_algebra_element(rng).matrix();
        const Mat4& g = h.factor(1);
        EXPECT_NEAR(e13_value(h, {g * a}, {g * b}, {g * c}),
                    oracle::e13_at_identity(to_array(a), to_array(b), to_array(c)), 1e-13);
    }
}

TEST(E13, DegenerateTangents) {
    Rng rng(3);
    const GroupPoint h = random_point(rng, 1);
    const auto vs = tangents(rng, h, 2);
    EXPECT_EQ(e13_value(h, vs[0], vs[0], vs[1]), 0.0);
    EXPECT_NEAR(e13_value(h, vs[0], vs[1], vs[1]), 0.0, 1e-16);
    EXPECT_EQ(e13_value(h, vs[0], vs[1], zero_rep(1)), 0.0);
}

TEST(Cochains, MultilinearAndAlternating) {
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const GroupPoint h1 = random_point(rng, 1);
        auto v = tangents(rng, h1, 4);
        const double c = uniform(rng, -2.0, 2.0);
        const double base = e13_value(h1, v[0], v[1], v[2]);
        EXPECT_NEAR(e13_value(h1, v[1], v[0], v[2]), -base, 1e-12);
        EXPECT_NEAR(e13_value(h1, v[0], v[2], v[1]), -base, 1e-12);
        EXPECT_NEAR(e13_value(h1, v[0] + c * v[3], v[1], v[2]), base + c * e13_value(h1, v[3], v[1], v[2]), 1e-12);

        const GroupPoint h2 = random_point(rng, 2);
        const auto t = tangents(rng, h2, 3);
        const double e = e22_value(h2, t[0], t[1]);
        EXPECT_NEAR(e22_value(h2, t[1], t[0]), -e, 1e-13);
        EXPECT_EQ(e22_value(h2, t[0], t[0]), 0.0);
        EXPECT_NEAR(e22_value(h2, t[0] + c * t[2], t[1]), e + c * e22_value(h2, t[2], t[1]), 1e-12);
    }
}

TEST(Mu, LinearInXAndV) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const GroupPoint h = random_point(rng, 1);
        const auto v = tangents(rng, h, 2);
        const SkewMatrix x = random_algebra_element(rng), y = random_algebra_element(rng);
        EXPECT_EQ(mu_value(SkewMatrix{}, h, v[0]), 0.0);
        EXPECT_NEAR(mu_value(x + 3.0 * y, h, v[0]), mu_value(x, h, v[0]) + 3.0 * mu_value(y, h, v[0]), 1e-13);
        EXPECT_NEAR(mu_value(x, h, v[0] + -2.0 * v[1]), mu_value(x, h, v[0]) - 2.0 * mu_value(x, h, v[1]), 1e-13);
    }
}

TEST(Cochains, ConjugationEquivariance) {
    Rng rng(6);
    auto conj = [](const Mat4& g, const TangentRep& v) {
        TangentRep out;
        for (const auto& m : v) out.push_back(g * m * g.transpose());
        return out;
    };
    for (int i = 0; i < 100; ++i) {
        const Mat4 g = random_so4(rng);
        const GroupPoint h1 = random_point(rng, 1);
        const GroupPoint gh1 = act(Action::Conjugation, g, h1);
        const auto v = tangents(rng, h1, 3);
        EXPECT_NEAR(e13_value(gh1, conj(g, v[0]), conj(g, v[1]), conj(g, v[2])), e13_value(h1, v[0], v[1], v[2]), 1e-10);

        const SkewMatrix x = random_algebra_element(rng);
        EXPECT_NEAR(mu_value(adjoint(g, x), gh1, conj(g, v[0])), mu_value(x, h1, v[0]), 1e-10);

        const GroupPoint h2 = random_point(rng, 2);
        const auto t = tangents(rng, h2, 2);
        EXPECT_NEAR(e22_value(act(Action::Conjugation, g, h2), conj(g, t[0]), conj(g, t[1])), e22_value(h2, t[0], t[1]),
                    1e-10);
    }
}

TEST(Cochains, CheckedEvaluatorsRejectForeignTangents) {
    Rng rng(7);
    const GroupPoint h = random_point(rng, 1), other = random_point(rng, 1);
    const Tangent good = at(h, random_tangent(rng, h));
    const Tangent bad = at(other, random_tangent(rng, other));
    EXPECT_THROW(eval_E13(h, good, good, bad), UsageError);
    EXPECT_THROW(eval_mu(SkewMatrix{}, h, bad), UsageError);
    EXPECT_THROW(eval_E22(random_point(rng, 2), good, good), UsageError);
    EXPECT_THROW(e13_value(GroupPoint::identity(2), zero_rep(2), zero_rep(2), zero_rep(2)), UsageError);
}

TEST(Alpha, SelfPairingAndConstantPathsVanish) {
    Rng rng(8);
    const AlgebraPath xi = polynomial_path({random_algebra_element(rng), random_algebra_element(rng), random_algebra_element(rng)});
    EXPECT_EQ(eval_alpha(xi, xi), 0.0);
    const AlgebraPath c1 = polynomial_path({random_algebra_element(rng)});
    const AlgebraPath c2 = polynomial_path({random_algebra_element(rng)});
    EXPECT_EQ(eval_alpha(c1, c2), 0.0);
}

TEST(Alpha, Antisymmetric) {
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        auto path = [&] {
            return polynomial_path({random_algebra_element(rng), random_algebra_element(rng), random_algebra_element(rng)});
        };
        const AlgebraPath a = path(), b = path();
        EXPECT_EQ(eval_alpha(a, b), -eval_alpha(b, a));
    }
}

TEST(Alpha, QuadratureIsExactForLowDegree) {
    Rng rng(10);
    const AlgebraPath a = polynomial_path({random_algebra_element(rng), random_algebra_element(rng)});
    const AlgebraPath b = polynomial_path({random_algebra_element(rng), random_algebra_element(rng)});
    EXPECT_NEAR(eval_alpha(a, b, 8), eval_alpha(a, b, 512), 1e-15);
}

TEST(Alpha, RejectsBadQuadrature) {
    const AlgebraPath a = polynomial_path({SkewMatrix{}});
    EXPECT_THROW(eval_alpha(a, a, 9), UsageError);
    EXPECT_THROW(eval_alpha(a, a, 6), UsageError);
    EXPECT_NO_THROW(eval_alpha(a, a, 8));
}

TEST(AlgebraPath, ValuesAreSkew) {
    Rng rng(11);
    const AlgebraPath a = polynomial_path({random_algebra_element(rng), random_algebra_element(rng)});
    for (double t : {0.0, 0.3, 1.0}) {
        const Mat4 m = a.value(t).matrix();
        EXPECT_LE((m + m.transpose()).cwiseAbs().maxCoeff(), 1e-13);
    }
}
