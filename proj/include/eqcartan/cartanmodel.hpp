#pragma once

// Cartan model for the conjugation action of SO(4) on NG(p): equivariant
// forms as X-dependent forms, fundamental vector fields, d_G = d - i_{X_M},
// and the component identities that make a total-degree-4 element a cocycle
// of the equivariant double complex.

#include "eqcartan/nerve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace eqcartan {

/// Element of (Omega^r(NG(p)) ⊗ S^k(g^*))^G, represented by its value at each X.
struct EquivariantForm {
    int level;
    int form_degree;
    int poly_degree;
    std::function<FormEval(const SkewMatrix&)> at;

    int total_degree() const { return level + form_degree + 2 * poly_degree; }

    FormEval operator()(const SkewMatrix& x) const {
        FormEval f = at(x);
        if (f.level() != level || f.degree() != form_degree) {
            throw UsageError("EquivariantForm: evaluator returned a form of the wrong type");
        }
        return f;
    }
};

/// Wraps an X-independent form as a polynomial-degree-0 equivariant form.
inline EquivariantForm constant_in_x(const FormEval& f) {
    return EquivariantForm{f.level(), f.degree(), 0, [f](const SkewMatrix&) { return f; }};
}

/// Vector field generated by X under conjugation: h_k X - X h_k on every factor.
struct FundamentalField {
    SkewMatrix x;
    int level;

    TangentRep operator()(const GroupPoint& h) const {
        if (h.level() != level) throw UsageError("FundamentalField: level mismatch");
        TangentRep out;
        out.reserve(static_cast<std::size_t>(level));
        for (const auto& m : h.factors()) out.push_back(m * x.matrix() - x.matrix() * m);
        return out;
    }

    VectorField as_field() const {
        return [self = *this](const GroupPoint& h) { return self(h); };
    }
};

inline FundamentalField fundamental_field(const SkewMatrix& x, int level) {
    return FundamentalField{x, level};
}

/// d_G applied to a form of degree r: a degree r+1 part and, when r >= 1,
/// a degree r-1 part.
struct CartanDifferential {
    FormEval raised;                 // d alpha(X)
    std::optional<FormEval> lowered;  // -i_{X_M} alpha(X)
};

inline CartanDifferential cartan_d(const FormEval& value, const SkewMatrix& x,
                                   double fd_step = kDefaultFdStep) {
    CartanDifferential out{exterior_d(value, fd_step), std::nullopt};
    if (value.degree() >= 1) {
        out.lowered = scale(-1.0, contract(value, fundamental_field(x, value.level()).as_field()));
    }
    return out;
}

/// (d_G alpha)(X) = (d - i_{X_M})(alpha(X)).
inline CartanDifferential cartan_d(const EquivariantForm& alpha, const SkewMatrix& x,
                                   double fd_step = kDefaultFdStep) {
    return cartan_d(alpha(x), x, fd_step);
}

// ---------------------------------------------------------------------------
// Total cocycle condition for E13 + E22 + mu

/// Inputs for one evaluation of the five component identities.
struct CocycleSample {
    GroupPoint h1;                  // level 1
    std::array<TangentRep, 4> v1;   // tangents at h1
    GroupPoint h2;                  // level 2
    std::array<TangentRep, 3> v2;   // tangents at h2
};

/// Max-abs residuals of the component identities. The pairs (d_plus,
/// d_minus) and (e_plus, e_minus) hold both candidate signs:
///   d_sigma = |d'E13 + sigma dE22|,  e_sigma = |d'mu(X) - sigma i_{X_M} E22|.
struct CocycleResiduals {
    double closed_e13 = 0.0;         // (a) |dE13|
    double lemma_left = 0.0;         // (b) |i_{X_M}E13 - d mu(X)|
    double lemma_contraction = 0.0;  // (c) |i_{X_M} mu(X)|
    double d_plus = 0.0;             // (d), sigma1 = +1
    double d_minus = 0.0;            // (d), sigma1 = -1
    double e_plus = 0.0;             // (e), sigma2 = +1
    double e_minus = 0.0;            // (e), sigma2 = -1

    void merge(const CocycleResiduals& o) {
        closed_e13 = std::max(closed_e13, o.closed_e13);
        lemma_left = std::max(lemma_left, o.lemma_left);
        lemma_contraction = std::max(lemma_contraction, o.lemma_contraction);
        d_plus = std::max(d_plus, o.d_plus);
        d_minus = std::max(d_minus, o.d_minus);
        e_plus = std::max(e_plus, o.e_plus);
        e_minus = std::max(e_minus, o.e_minus);
    }
};

/// The sign that makes a +/- residual pair pass, if exactly one does.
inline std::optional<int> unique_sign(double plus, double minus, double tol) {
    const bool p = plus <= tol;
    const bool m = minus <= tol;
    if (p == m) return std::nullopt;
    return p ? 1 : -1;
}

inline CocycleResiduals equivariant_total_check(const FormEval& e13, const FormEval& e22,
                                                const EquivariantForm& mu, const SkewMatrix& x,
                                                std::span<const CocycleSample> samples,
                                                double fd_step = kDefaultFdStep) {
    if (e13.level() != 1 || e13.degree() != 3) throw UsageError("E13 must be a 3-form on NG(1)");
    if (e22.level() != 2 || e22.degree() != 2) throw UsageError("E22 must be a 2-form on NG(2)");
    if (mu.level != 1 || mu.form_degree != 1 || mu.poly_degree != 1) {
        throw UsageError("mu must be a 1-form on NG(1) of polynomial degree 1");
    }

    const FormEval mu_x = mu(x);
    const FormEval d_e13 = exterior_d(e13, fd_step);
    const FormEval d_mu = exterior_d(mu_x, fd_step);
    const FormEval i_e13 = contract(e13, fundamental_field(x, 1).as_field());
    const FormEval i_mu = contract(mu_x, fundamental_field(x, 1).as_field());
    const FormEval dp_e13 = d_prime(e13);
    const FormEval d_e22 = exterior_d(e22, fd_step);
    const FormEval dp_mu = d_prime(mu_x);
    const FormEval i_e22 = contract(e22, fundamental_field(x, 2).as_field());

    CocycleResiduals out;
    for (const auto& s : samples) {
        const auto& v1 = s.v1;
        const auto& v2 = s.v2;
        CocycleResiduals r;
        r.closed_e13 = std::abs(d_e13.evaluate(s.h1, {v1[0], v1[1], v1[2], v1[3]}));
        r.lemma_left = std::abs(i_e13.evaluate(s.h1, {v1[0], v1[1]}) - d_mu.evaluate(s.h1, {v1[0], v1[1]}));
        r.lemma_contraction = std::abs(i_mu.evaluate(s.h1, {}));
        const double dp = dp_e13.evaluate(s.h2, {v2[0], v2[1], v2[2]});
        const double de = d_e22.evaluate(s.h2, {v2[0], v2[1], v2[2]});
        r.d_plus = std::abs(dp + de);
        r.d_minus = std::abs(dp - de);
        const double dm = dp_mu.evaluate(s.h2, {v2[0]});
        const double ie = i_e22.evaluate(s.h2, {v2[0]});
        r.e_plus = std::abs(dm - ie);
        r.e_minus = std::abs(dm + ie);
        out.merge(r);
    }
    return out;
}

}  // namespace eqcartan
