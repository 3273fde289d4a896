#pragma once

// Evaluation-based exterior calculus on products of SO(4).
//
// A differential r-form is represented by what it does: given a base point
// and r tangent vectors it returns a number (or a 4x4 matrix for the
// Maurer-Cartan forms). Tangent vectors are ambient 4x4 matrices, one per
// factor of the base point.

#include "eqcartan/matrixgroup.hpp"

#include <bit>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqcartan {

/// Default central-difference step for exterior derivatives.
inline constexpr double kDefaultFdStep = 1e-5;

/// Per-factor ambient representatives of one tangent vector.
using TangentRep = std::vector<Mat4>;

struct Tangent {
    GroupPoint base;
    TangentRep rep;

    /// h^T V skew for every factor h with representative V.
    bool is_valid(double tol = 1e-12) const {
        if (static_cast<int>(rep.size()) != base.level()) return false;
        for (int k = 1; k <= base.level(); ++k) {
            const Mat4 y = base.factor(k).transpose() * rep[static_cast<std::size_t>(k - 1)];
            if ((y + y.transpose()).cwiseAbs().maxCoeff() > tol) return false;
        }
        return true;
    }
};

inline TangentRep zero_rep(int level) {
    return TangentRep(static_cast<std::size_t>(level), Mat4::Zero());
}

/// Left translation of algebra elements: factor k gets h_k y_k.
inline TangentRep left_translate(const GroupPoint& base, std::span<const SkewMatrix> ys) {
    if (static_cast<int>(ys.size()) != base.level()) {
        throw UsageError("left_translate: need one algebra element per factor");
    }
    TangentRep rep;
    rep.reserve(ys.size());
    for (int k = 1; k <= base.level(); ++k) {
        rep.push_back(base.factor(k) * ys[static_cast<std::size_t>(k - 1)].matrix());
    }
    return rep;
}

/// Right translation: factor k gets y_k h_k.
inline TangentRep right_translate(const GroupPoint& base, std::span<const SkewMatrix> ys) {
    if (static_cast<int>(ys.size()) != base.level()) {
        throw UsageError("right_translate: need one algebra element per factor");
    }
    TangentRep rep;
    rep.reserve(ys.size());
    for (int k = 1; k <= base.level(); ++k) {
        rep.push_back(ys[static_cast<std::size_t>(k - 1)].matrix() * base.factor(k));
    }
    return rep;
}

/// Random tangent at `base`: per factor h_k * Y_k with Y_k a basis
/// combination with coefficients uniform in [-1, 1].
inline TangentRep random_tangent(Rng& rng, const GroupPoint& base) {
    std::vector<SkewMatrix> ys;
    for (int k = 0; k < base.level(); ++k) ys.push_back(random_algebra_element(rng));
    return left_translate(base, ys);
}

inline TangentRep operator+(const TangentRep& x, const TangentRep& y) {
    TangentRep out(x);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += y.at(k);
    return out;
}

inline TangentRep operator*(double c, const TangentRep& x) {
    TangentRep out(x);
    for (auto& m : out) m *= c;
    return out;
}

namespace detail {

inline void check_arguments(const char* what, int degree, int level, const GroupPoint& point,
                            std::span<const TangentRep> vs) {
    if (point.level() != level) {
        throw UsageError(std::string(what) + ": point of level " + std::to_string(point.level()) +
                         " given to a form of level " + std::to_string(level));
    }
    if (static_cast<int>(vs.size()) != degree) {
        throw UsageError(std::string(what) + ": expected " + std::to_string(degree) +
                         " tangents, got " + std::to_string(vs.size()));
    }
    for (const auto& v : vs) {
        if (static_cast<int>(v.size()) != level) {
            throw UsageError(std::string(what) + ": tangent has wrong number of factors");
        }
    }
}

inline std::vector<TangentRep> reps_at(const GroupPoint& point, std::span<const Tangent> vs) {
    std::vector<TangentRep> reps;
    reps.reserve(vs.size());
    for (const auto& v : vs) {
        if (v.base.level() != point.level() || max_abs_diff(v.base, point) != 0.0) {
            throw UsageError("tangent is not based at the evaluation point");
        }
        reps.push_back(v.rep);
    }
    return reps;
}

}  // namespace detail

/// Scalar r-form on G^p.
class FormEval {
public:
    using Fn = std::function<double(const GroupPoint&, std::span<const TangentRep>)>;

    FormEval(int degree, int level, Fn fn)
        : degree_(degree), level_(level), fn_(std::make_shared<const Fn>(std::move(fn))) {
        if (degree < 0 || level < 0) throw UsageError("form degree and level must be nonnegative");
    }

    int degree() const { return degree_; }
    int level() const { return level_; }

    double evaluate(const GroupPoint& point, std::span<const TangentRep> vs) const {
        detail::check_arguments("FormEval", degree_, level_, point, vs);
        return (*fn_)(point, vs);
    }

    double evaluate(const GroupPoint& point, std::initializer_list<TangentRep> vs) const {
        return evaluate(point, std::span<const TangentRep>(vs.begin(), vs.size()));
    }

    /// Checked evaluation: every tangent must be based at `point`.
    double operator()(const GroupPoint& point, std::span<const Tangent> vs) const {
        const auto reps = detail::reps_at(point, vs);
        return evaluate(point, reps);
    }

private:
    int degree_;
    int level_;
    std::shared_ptr<const Fn> fn_;
};

/// Matrix-valued r-form on G^p.
class MatrixFormEval {
public:
    using Fn = std::function<Mat4(const GroupPoint&, std::span<const TangentRep>)>;

    MatrixFormEval(int degree, int level, Fn fn)
        : degree_(degree), level_(level), fn_(std::make_shared<const Fn>(std::move(fn))) {
        if (degree < 0 || level < 0) throw UsageError("form degree and level must be nonnegative");
    }

    int degree() const { return degree_; }
    int level() const { return level_; }

    Mat4 evaluate(const GroupPoint& point, std::span<const TangentRep> vs) const {
        detail::check_arguments("MatrixFormEval", degree_, level_, point, vs);
        return (*fn_)(point, vs);
    }

    Mat4 evaluate(const GroupPoint& point, std::initializer_list<TangentRep> vs) const {
        return evaluate(point, std::span<const TangentRep>(vs.begin(), vs.size()));
    }

    Mat4 operator()(const GroupPoint& point, std::span<const Tangent> vs) const {
        const auto reps = detail::reps_at(point, vs);
        return evaluate(point, reps);
    }

private:
    int degree_;
    int level_;
    std::shared_ptr<const Fn> fn_;
};

// ---------------------------------------------------------------------------
// Shuffles

/// One (r,s)-shuffle: `first` holds the r slots fed to the left factor,
/// `second` the s slots fed to the right factor, both increasing.
struct Shuffle {
    std::vector<int> first;
    std::vector<int> second;
    int sign;
};

inline std::vector<Shuffle> shuffles(int r, int s) {
    const int n = r + s;
    std::vector<Shuffle> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != r) continue;
        Shuffle sh;
        for (int i = 0; i < n; ++i) {
            ((mask >> i) & 1u ? sh.first : sh.second).push_back(i);
        }
        int inversions = 0;
        for (int i : sh.first) {
            for (int j : sh.second) {
                if (i > j) ++inversions;
            }
        }
        sh.sign = inversions % 2 == 0 ? 1 : -1;
        out.push_back(std::move(sh));
    }
    return out;
}

namespace detail {

inline std::vector<TangentRep> pick(std::span<const TangentRep> vs, const std::vector<int>& slots) {
    std::vector<TangentRep> out;
    out.reserve(slots.size());
    for (int i : slots) out.push_back(vs[static_cast<std::size_t>(i)]);
    return out;
}

inline void check_factor_index(int factor_index, int level) {
    if (factor_index < 1 || factor_index > level) {
        throw UsageError("factor index " + std::to_string(factor_index) +
                         " out of range for level " + std::to_string(level));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Maurer-Cartan forms

/// h_k^{-1} dh_k on factor k of G^level.
inline MatrixFormEval mc_left(int factor_index, int level) {
    detail::check_factor_index(factor_index, level);
    const auto k = static_cast<std::size_t>(factor_index - 1);
    return MatrixFormEval(1, level, [k](const GroupPoint& h, std::span<const TangentRep> vs) -> Mat4 {
        return h.factors()[k].transpose() * vs[0][k];
    });
}

/// dh_k h_k^{-1} on factor k of G^level.
inline MatrixFormEval mc_right(int factor_index, int level) {
    detail::check_factor_index(factor_index, level);
    const auto k = static_cast<std::size_t>(factor_index - 1);
    return MatrixFormEval(1, level, [k](const GroupPoint& h, std::span<const TangentRep> vs) -> Mat4 {
        return vs[0][k] * h.factors()[k].transpose();
    });
}

/// Constant matrix as a matrix-valued 0-form.
inline MatrixFormEval constant_matrix(const Mat4& m, int level) {
    return MatrixFormEval(0, level, [m](const GroupPoint&, std::span<const TangentRep>) { return m; });
}

/// Scalar form picking entry (a, b), 1-based.
inline FormEval entry(const MatrixFormEval& m, int a, int b) {
    if (a < 1 || a > 4 || b < 1 || b > 4) {
        throw UsageError("entry index out of range");
    }
    return FormEval(m.degree(), m.level(),
                    [m, i = a - 1, j = b - 1](const GroupPoint& h, std::span<const TangentRep> vs) {
                        return m.evaluate(h, vs)(i, j);
                    });
}

/// Matrix wedge product: sum over shuffles of sgn * M(...) N(...), no
/// factorial normalisation.
inline MatrixFormEval matrix_wedge(const MatrixFormEval& m, const MatrixFormEval& n) {
    if (m.level() != n.level()) throw UsageError("matrix_wedge: level mismatch");
    auto terms = shuffles(m.degree(), n.degree());
    return MatrixFormEval(
        m.degree() + n.degree(), m.level(),
        [m, n, terms = std::move(terms)](const GroupPoint& h, std::span<const TangentRep> vs) -> Mat4 {
            Mat4 total = Mat4::Zero();
            for (const auto& sh : terms) {
                const auto left = detail::pick(vs, sh.first);
                const auto right = detail::pick(vs, sh.second);
                total += sh.sign * (m.evaluate(h, left) * n.evaluate(h, right));
            }
            return total;
        });
}

/// (m^2)_{ab}(v,w) = sum_k m_ak(v) m_kb(w) - m_ak(w) m_kb(v).
inline MatrixFormEval matrix_wedge_square(const MatrixFormEval& m) {
    if (m.degree() != 1) throw UsageError("matrix_wedge_square expects a 1-form");
    return MatrixFormEval(2, m.level(), [m](const GroupPoint& h, std::span<const TangentRep> vs) -> Mat4 {
        const Mat4 a = m.evaluate(h, {vs[0]});
        const Mat4 b = m.evaluate(h, {vs[1]});
        return a * b - b * a;
    });
}

// ---------------------------------------------------------------------------
// Algebra of scalar forms

inline FormEval zero_form(int degree, int level) {
    return FormEval(degree, level, [](const GroupPoint&, std::span<const TangentRep>) { return 0.0; });
}

inline FormEval constant_function(double c, int level) {
    return FormEval(0, level, [c](const GroupPoint&, std::span<const TangentRep>) { return c; });
}

inline FormEval scale(double c, const FormEval& f) {
    return FormEval(f.degree(), f.level(), [c, f](const GroupPoint& h, std::span<const TangentRep> vs) {
        return c * f.evaluate(h, vs);
    });
}

inline FormEval add(const FormEval& f, const FormEval& g) {
    if (f.degree() != g.degree() || f.level() != g.level()) {
        throw UsageError("add: degree or level mismatch");
    }
    return FormEval(f.degree(), f.level(), [f, g](const GroupPoint& h, std::span<const TangentRep> vs) {
        return f.evaluate(h, vs) + g.evaluate(h, vs);
    });
}

inline FormEval subtract(const FormEval& f, const FormEval& g) { return add(f, scale(-1.0, g)); }

/// Shuffle wedge product (determinant convention).
inline FormEval wedge(const FormEval& f, const FormEval& g) {
    if (f.level() != g.level()) throw UsageError("wedge: level mismatch");
    auto terms = shuffles(f.degree(), g.degree());
    return FormEval(f.degree() + g.degree(), f.level(),
                    [f, g, terms = std::move(terms)](const GroupPoint& h, std::span<const TangentRep> vs) {
                        double total = 0.0;
                        for (const auto& sh : terms) {
                            total += sh.sign * f.evaluate(h, detail::pick(vs, sh.first)) *
                                     g.evaluate(h, detail::pick(vs, sh.second));
                        }
                        return total;
                    });
}

// ---------------------------------------------------------------------------
// Contraction, pullback, exterior derivative

/// A tangent vector field on G^p, given by its value at each point.
using VectorField = std::function<TangentRep(const GroupPoint&)>;

/// Interior product: inserts field(h) into the first slot.
inline FormEval contract(const FormEval& f, VectorField field) {
    if (f.degree() < 1) throw UsageError("contract: cannot contract a 0-form");
    return FormEval(f.degree() - 1, f.level(),
                    [f, field = std::move(field)](const GroupPoint& h, std::span<const TangentRep> vs) {
                        std::vector<TangentRep> all;
                        all.reserve(vs.size() + 1);
                        all.push_back(field(h));
                        all.insert(all.end(), vs.begin(), vs.end());
                        return f.evaluate(h, all);
                    });
}

/// Smooth map G^source -> G^target together with its differential.
struct SmoothMap {
    int source_level;
    int target_level;
    std::function<GroupPoint(const GroupPoint&)> map;
    std::function<TangentRep(const GroupPoint&, const TangentRep&)> differential;
};

inline SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
    if (inner.target_level != outer.source_level) throw UsageError("compose: level mismatch");
    return SmoothMap{
        inner.source_level, outer.target_level,
        [outer, inner](const GroupPoint& h) { return outer.map(inner.map(h)); },
        [outer, inner](const GroupPoint& h, const TangentRep& v) {
            return outer.differential(inner.map(h), inner.differential(h, v));
        }};
}

inline SmoothMap identity_map(int level) {
    return SmoothMap{level, level, [](const GroupPoint& h) { return h; },
                     [](const GroupPoint&, const TangentRep& v) { return v; }};
}

/// (F^* f)(h; v...) = f(F(h); dF(v)...).
inline FormEval pullback(const FormEval& f, const SmoothMap& map) {
    if (map.target_level != f.level()) {
        throw UsageError("pullback: map target level " + std::to_string(map.target_level) +
                         " does not match form level " + std::to_string(f.level()));
    }
    return FormEval(f.degree(), map.source_level,
                    [f, map](const GroupPoint& h, std::span<const TangentRep> vs) {
                        const GroupPoint image = map.map(h);
                        std::vector<TangentRep> pushed;
                        pushed.reserve(vs.size());
                        for (const auto& v : vs) pushed.push_back(map.differential(h, v));
                        return f.evaluate(image, pushed);
                    });
}

namespace detail {

/// Right trivialisation: per factor v_k h_k^{-1}.
inline TangentRep right_algebra(const GroupPoint& h, const TangentRep& v) {
    TangentRep out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * h.factors()[k].transpose();
    return out;
}

/// Value at g of the right-invariant field with per-factor generators `a`.
inline TangentRep right_invariant_value(const TangentRep& a, const GroupPoint& g) {
    TangentRep out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * g.factors()[k];
    return out;
}

/// exp(t a_k) g_k per factor: the flow of the right-invariant field.
inline GroupPoint flow(const TangentRep& a, const GroupPoint& g, double t) {
    std::vector<Mat4> factors(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) factors[k] = expm(t * a[k]) * g.factors()[k];
    return GroupPoint(std::move(factors));
}

}  // namespace detail

/// Exterior derivative by the invariant-extension formula.
///
/// Each tangent v_i at h is extended to the right-invariant field with
/// generator A_i = v_i h^{-1} (per factor). Brackets of such fields are exact:
/// [Z_A, Z_B] = Z_{[B,A]}. Only the directional derivatives Z_i[f(...)] are
/// approximated, by central differences along t -> exp(t A_i) h.
inline FormEval exterior_d(const FormEval& f, double fd_step = kDefaultFdStep) {
    if (!(fd_step > 0.0)) throw UsageError("exterior_d: fd_step must be positive");
    const int r = f.degree();
    return FormEval(r + 1, f.level(), [f, r, fd_step](const GroupPoint& h, std::span<const TangentRep> vs) {
        std::vector<TangentRep> gens;
        gens.reserve(vs.size());
        for (const auto& v : vs) gens.push_back(detail::right_algebra(h, v));

        auto others_at = [&](const GroupPoint& g, std::size_t skip_i, std::size_t skip_j) {
            std::vector<TangentRep> out;
            for (std::size_t m = 0; m < gens.size(); ++m) {
                if (m == skip_i || m == skip_j) continue;
                out.push_back(detail::right_invariant_value(gens[m], g));
            }
            return out;
        };

        const std::size_t none = gens.size();
        double total = 0.0;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i) {
            const GroupPoint forward = detail::flow(gens[i], h, fd_step);
            const GroupPoint backward = detail::flow(gens[i], h, -fd_step);
            const double derivative =
                (f.evaluate(forward, others_at(forward, i, none)) -
                 f.evaluate(backward, others_at(backward, i, none))) /
                (2.0 * fd_step);
            total += (i % 2 == 0 ? 1.0 : -1.0) * derivative;
        }
        for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i) {
            for (std::size_t j = i + 1; j <= static_cast<std::size_t>(r); ++j) {
                TangentRep bracket(gens[i].size());
                for (std::size_t k = 0; k < bracket.size(); ++k) {
                    bracket[k] = commutator(gens[j][k], gens[i][k]);
                }
                std::vector<TangentRep> args;
                args.push_back(detail::right_invariant_value(bracket, h));
                auto rest = others_at(h, i, j);
                args.insert(args.end(), rest.begin(), rest.end());
                total += ((i + j) % 2 == 0 ? 1.0 : -1.0) * f.evaluate(h, args);
            }
        }
        return total;
    });
}

}  // namespace eqcartan
