#pragma once

// The explicit cochains of the SO(4) Euler cocycle and its equivariant
// extension:
//
//   E13 = 1/(192 pi^2) sum_tau sgn(tau) ( θ_{t1t2} (θ^2)_{t3t4} + θ_{t3t4} (θ^2)_{t1t2} )
//   E22 = -1/(64 pi^2) sum_tau sgn(tau) ( θ1_{t1t2} θ̄2_{t3t4} + θ1_{t3t4} θ̄2_{t1t2} )
//   mu(X) = -1/(64 pi^2) sum_tau sgn(tau) ( X_{t1t2} θ_{t3t4} + X_{t3t4} θ_{t1t2} )
//           -1/(64 pi^2) sum_tau sgn(tau) ( X_{t1t2} θ̄_{t3t4} + X_{t3t4} θ̄_{t1t2} )
//
// with θ = h^{-1}dh, θ̄ = dh h^{-1}, θ^2 the matrix wedge square and
// products read as shuffle wedges. These are hand-expanded here; the formdsl
// interpreter evaluates the same formulas through formcalc.

#include "eqcartan/cartanmodel.hpp"

#include <functional>
#include <numbers>
#include <span>

namespace eqcartan {

inline constexpr double kInvPi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
inline constexpr double kE13Coefficient = kInvPi2 / 192.0;
inline constexpr double kE22Coefficient = -kInvPi2 / 64.0;
inline constexpr double kMuCoefficient = -kInvPi2 / 64.0;
inline constexpr double kAlphaCoefficient = -kInvPi2 / 64.0;

namespace detail {

inline void check_level(const GroupPoint& h, int level, const char* what) {
    if (h.level() != level) {
        throw UsageError(std::string(what) + ": expected a point of level " + std::to_string(level));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Raw evaluators on tangent representatives

inline double e13_value(const GroupPoint& h, const TangentRep& v1, const TangentRep& v2,
                        const TangentRep& v3) {
    detail::check_level(h, 1, "E13");
    const Mat4 hinv = h.factors()[0].transpose();
    const Mat4 a1 = hinv * v1.at(0), a2 = hinv * v2.at(0), a3 = hinv * v3.at(0);
    // (θ ∧ θ^2)(v1,v2,v3) = θ(v1)θ²(v2,v3) - θ(v2)θ²(v1,v3) + θ(v3)θ²(v1,v2)
    const double s = pfaffian_pairing(a1, commutator(a2, a3)) - pfaffian_pairing(a2, commutator(a1, a3)) +
                     pfaffian_pairing(a3, commutator(a1, a2));
    return kE13Coefficient * s;
}

inline double e22_value(const GroupPoint& h, const TangentRep& t1, const TangentRep& t2) {
    detail::check_level(h, 2, "E22");
    const Mat4& h1 = h.factors()[0];
    const Mat4& h2 = h.factors()[1];
    const Mat4 left1 = h1.transpose() * t1.at(0), left2 = h1.transpose() * t2.at(0);
    const Mat4 right1 = t1.at(1) * h2.transpose(), right2 = t2.at(1) * h2.transpose();
    return kE22Coefficient * (pfaffian_pairing(left1, right2) - pfaffian_pairing(left2, right1));
}

inline double mu_value(const SkewMatrix& x, const GroupPoint& h, const TangentRep& v) {
    detail::check_level(h, 1, "mu");
    const Mat4& g = h.factors()[0];
    const Mat4 left = g.transpose() * v.at(0);
    const Mat4 right = v.at(0) * g.transpose();
    return kMuCoefficient * (pfaffian_pairing(x.matrix(), left) + pfaffian_pairing(x.matrix(), right));
}

// ---------------------------------------------------------------------------
// Checked evaluators

inline double eval_E13(const GroupPoint& h, const Tangent& v1, const Tangent& v2, const Tangent& v3) {
    const Tangent vs[] = {v1, v2, v3};
    const auto reps = detail::reps_at(h, vs);
    return e13_value(h, reps[0], reps[1], reps[2]);
}

inline double eval_E22(const GroupPoint& pt, const Tangent& t1, const Tangent& t2) {
    const Tangent vs[] = {t1, t2};
    const auto reps = detail::reps_at(pt, vs);
    return e22_value(pt, reps[0], reps[1]);
}

inline double eval_mu(const SkewMatrix& x, const GroupPoint& h, const Tangent& v) {
    const Tangent vs[] = {v};
    const auto reps = detail::reps_at(h, vs);
    return mu_value(x, h, reps[0]);
}

// ---------------------------------------------------------------------------
// As forms

inline FormEval e13_form() {
    return FormEval(3, 1, [](const GroupPoint& h, std::span<const TangentRep> vs) {
        return e13_value(h, vs[0], vs[1], vs[2]);
    });
}

inline FormEval e22_form() {
    return FormEval(2, 2, [](const GroupPoint& h, std::span<const TangentRep> vs) {
        return e22_value(h, vs[0], vs[1]);
    });
}

inline EquivariantForm mu_form() {
    return EquivariantForm{1, 1, 1, [](const SkewMatrix& x) {
                               return FormEval(1, 1, [x](const GroupPoint& h, std::span<const TangentRep> vs) {
                                   return mu_value(x, h, vs[0]);
                               });
                           }};
}

// ---------------------------------------------------------------------------
// Path functional

/// A path θ -> ξ(θ) in so(4) on [0, 1] together with its derivative.
struct AlgebraPath {
    std::function<SkewMatrix(double)> value;
    std::function<SkewMatrix(double)> derivative;
};

/// ξ(θ) = c0 + c1 θ + c2 θ^2 + ...
inline AlgebraPath polynomial_path(std::vector<SkewMatrix> coefficients) {
    auto value = [coefficients](double t) {
        SkewMatrix out;
        double power = 1.0;
        for (const auto& c : coefficients) {
            out = out + power * c;
            power *= t;
        }
        return out;
    };
    auto derivative = [coefficients](double t) {
        SkewMatrix out;
        double power = 1.0;
        for (std::size_t k = 1; k < coefficients.size(); ++k) {
            out = out + (static_cast<double>(k) * power) * coefficients[k];
            power *= t;
        }
        return out;
    };
    return AlgebraPath{value, derivative};
}

/// alpha(ξ1, ξ2) by composite Simpson's rule on `n_quad` subintervals.
inline double eval_alpha(const AlgebraPath& xi1, const AlgebraPath& xi2, int n_quad = 64) {
    if (n_quad < 8) throw UsageError("eval_alpha: n_quad must be at least 8");
    if (n_quad % 2 != 0) throw UsageError("eval_alpha: n_quad must be even");

    auto integrand = [&](double t) {
        const Mat4 x1 = xi1.value(t).matrix(), dx1 = xi1.derivative(t).matrix();
        const Mat4 x2 = xi2.value(t).matrix(), dx2 = xi2.derivative(t).matrix();
        double total = 0.0;
        for (const auto& tau : s4_table()) {
            const int i = tau.images[0] - 1, j = tau.images[1] - 1, k = tau.images[2] - 1,
                      l = tau.images[3] - 1;
            const double forward = dx1(i, j) * x2(k, l) + dx1(k, l) * x2(i, j);
            const double backward = dx2(i, j) * x1(k, l) + dx2(k, l) * x1(i, j);
            total += tau.sign * (forward - backward);
        }
        return total;
    };

    const double step = 1.0 / n_quad;
    double sum = integrand(0.0) + integrand(1.0);
    for (int m = 1; m < n_quad; ++m) {
        sum += (m % 2 == 1 ? 4.0 : 2.0) * integrand(m * step);
    }
    return kAlphaCoefficient * sum * step / 3.0;
}

}  // namespace eqcartan
