#pragma once

// Simplicial structure of the nerve NG, the bundle PG -> NG, the
// bisimplicial manifold X ⋊ NG for X = NG under a pluggable action, and the
// differentials of the associated double and triple complexes.

#include "eqcartan/formcalc.hpp"

#include <string>
#include <utility>
#include <vector>

namespace eqcartan {

namespace detail {

inline void check_face_index(int i, int top, const char* what) {
    if (i < 0 || i > top) {
        throw UsageError(std::string(what) + ": index " + std::to_string(i) + " not in [0, " +
                         std::to_string(top) + "]");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// NG

/// eps_i on NG(q): drop the first factor (i = 0), multiply factors i and i+1,
/// or drop the last factor (i = q).
inline GroupPoint face_ng(int i, const GroupPoint& pt) {
    const int q = pt.level();
    if (q < 1) throw UsageError("face_ng: level 0 has no faces");
    detail::check_face_index(i, q, "face_ng");
    const auto& g = pt.factors();
    std::vector<Mat4> out;
    out.reserve(static_cast<std::size_t>(q - 1));
    for (int k = 0; k < q; ++k) {
        if (i == 0 && k == 0) continue;
        if (i == q && k == q - 1) continue;
        if (0 < i && i < q && k == i - 1) {
            out.push_back(g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k + 1)]);
            ++k;
            continue;
        }
        out.push_back(g[static_cast<std::size_t>(k)]);
    }
    return GroupPoint(std::move(out));
}

/// Differential of face_ng; the product slot follows the product rule.
inline TangentRep face_ng_diff(int i, const GroupPoint& pt, const TangentRep& v) {
    const int q = pt.level();
    if (q < 1) throw UsageError("face_ng_diff: level 0 has no faces");
    detail::check_face_index(i, q, "face_ng_diff");
    if (static_cast<int>(v.size()) != q) throw UsageError("face_ng_diff: tangent level mismatch");
    const auto& g = pt.factors();
    TangentRep out;
    out.reserve(static_cast<std::size_t>(q - 1));
    for (int k = 0; k < q; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (i == 0 && k == 0) continue;
        if (i == q && k == q - 1) continue;
        if (0 < i && i < q && k == i - 1) {
            out.push_back(v[ku] * g[ku + 1] + g[ku] * v[ku + 1]);
            ++k;
            continue;
        }
        out.push_back(v[ku]);
    }
    return out;
}

/// eps_i : NG(q) -> NG(q-1) as a smooth map with analytic differential.
inline SmoothMap ng_face_map(int i, int q) {
    if (q < 1) throw UsageError("ng_face_map: level 0 has no faces");
    detail::check_face_index(i, q, "ng_face_map");
    return SmoothMap{q, q - 1, [i](const GroupPoint& h) { return face_ng(i, h); },
                     [i](const GroupPoint& h, const TangentRep& v) { return face_ng_diff(i, h, v); }};
}

/// eta_i on NG(q): inserts the identity so that it becomes factor i+1.
inline GroupPoint degeneracy_ng(int i, const GroupPoint& pt) {
    detail::check_face_index(i, pt.level(), "degeneracy_ng");
    std::vector<Mat4> out = pt.factors();
    out.insert(out.begin() + i, Mat4::Identity());
    return GroupPoint(std::move(out));
}

// ---------------------------------------------------------------------------
// PG and gamma

/// Face of PG(q) (q+1 factors): deletes factor i+1.
inline GroupPoint face_pg(int i, const GroupPoint& pt) {
    const int q = pt.level() - 1;
    if (q < 1) throw UsageError("face_pg: level 0 has no faces");
    detail::check_face_index(i, q, "face_pg");
    std::vector<Mat4> out = pt.factors();
    out.erase(out.begin() + i);
    return GroupPoint(std::move(out));
}

/// gamma(g_1..g_{q+1}) = (g_1 g_2^{-1}, ..., g_q g_{q+1}^{-1}).
inline GroupPoint gamma(const GroupPoint& pt) {
    if (pt.level() < 1) throw UsageError("gamma: PG(q) points have at least one factor");
    const auto& g = pt.factors();
    std::vector<Mat4> out;
    for (std::size_t k = 0; k + 1 < g.size(); ++k) out.push_back(g[k] * g[k + 1].transpose());
    return GroupPoint(std::move(out));
}

// ---------------------------------------------------------------------------
// Group actions on X_p = NG(p)

enum class Action {
    Conjugation,  // h.(x_1..x_p) = (h x_1 h^-1, ..., h x_p h^-1)
    Trivial,
};

inline GroupPoint act(Action action, const Mat4& h, const GroupPoint& x) {
    if (action == Action::Trivial) return x;
    std::vector<Mat4> out;
    out.reserve(x.factors().size());
    for (const auto& m : x.factors()) out.push_back(h * m * h.transpose());
    return GroupPoint(std::move(out));
}

/// Differential of (h, x) -> h.x in the direction (dh, dx).
inline TangentRep act_diff(Action action, const Mat4& h, const GroupPoint& x, const Mat4& dh,
                           const TangentRep& dx) {
    if (action == Action::Trivial) return dx;
    const Mat4 hinv = h.transpose();
    const Mat4 dhinv = -hinv * dh * hinv;
    TangentRep out;
    out.reserve(dx.size());
    for (std::size_t k = 0; k < dx.size(); ++k) {
        const Mat4& m = x.factors()[k];
        out.push_back(dh * m * hinv + h * dx[k] * hinv + h * m * dhinv);
    }
    return out;
}

// ---------------------------------------------------------------------------
// X ⋊ NG

/// Point of X_p ⋊ NG_p(q) = NG(p) x G^q.
struct BisimplicialPoint {
    GroupPoint x;
    GroupPoint gs;

    int p() const { return x.level(); }
    int q() const { return gs.level(); }

    /// x factors first, then the g's.
    GroupPoint flatten() const {
        std::vector<Mat4> all = x.factors();
        all.insert(all.end(), gs.factors().begin(), gs.factors().end());
        return GroupPoint(std::move(all));
    }

    static BisimplicialPoint split(const GroupPoint& flat, int p) {
        if (p < 0 || p > flat.level()) throw UsageError("split: bad horizontal level");
        const auto& f = flat.factors();
        return {GroupPoint(std::vector<Mat4>(f.begin(), f.begin() + p)),
                GroupPoint(std::vector<Mat4>(f.begin() + p, f.end()))};
    }
};

/// Vertical face eps_i^Ve : (p, q) -> (p, q-1). The top face acts by g_q on x.
inline BisimplicialPoint vertical_face(int i, const BisimplicialPoint& pt,
                                       Action action = Action::Conjugation) {
    const int q = pt.q();
    if (q < 1) throw UsageError("vertical_face: q = 0 has no vertical faces");
    detail::check_face_index(i, q, "vertical_face");
    if (i == q) {
        return {act(action, pt.gs.factors().back(), pt.x), face_ng(q, pt.gs)};
    }
    return {pt.x, face_ng(i, pt.gs)};
}

/// Horizontal face eps_i^Ho : (p, q) -> (p-1, q). G_p is the constant
/// simplicial group, so only x moves.
inline BisimplicialPoint horizontal_face(int i, const BisimplicialPoint& pt) {
    return {face_ng(i, pt.x), pt.gs};
}

inline SmoothMap horizontal_face_map(int i, int p, int q) {
    if (p < 1) throw UsageError("horizontal_face_map: p = 0 has no horizontal faces");
    detail::check_face_index(i, p, "horizontal_face_map");
    return SmoothMap{
        p + q, p - 1 + q,
        [i, p](const GroupPoint& flat) {
            return horizontal_face(i, BisimplicialPoint::split(flat, p)).flatten();
        },
        [i, p](const GroupPoint& flat, const TangentRep& v) {
            const auto pt = BisimplicialPoint::split(flat, p);
            TangentRep vx(v.begin(), v.begin() + p);
            TangentRep out = face_ng_diff(i, pt.x, vx);
            out.insert(out.end(), v.begin() + p, v.end());
            return out;
        }};
}

inline SmoothMap vertical_face_map(int i, int p, int q, Action action = Action::Conjugation) {
    if (q < 1) throw UsageError("vertical_face_map: q = 0 has no vertical faces");
    detail::check_face_index(i, q, "vertical_face_map");
    return SmoothMap{
        p + q, p + q - 1,
        [i, p, action](const GroupPoint& flat) {
            return vertical_face(i, BisimplicialPoint::split(flat, p), action).flatten();
        },
        [i, p, q, action](const GroupPoint& flat, const TangentRep& v) {
            const auto pt = BisimplicialPoint::split(flat, p);
            TangentRep vx(v.begin(), v.begin() + p);
            TangentRep vg(v.begin() + p, v.end());
            TangentRep out;
            if (i == q) {
                out = act_diff(action, pt.gs.factors().back(), pt.x, vg.back(), vx);
            } else {
                out = vx;
            }
            TangentRep dg = face_ng_diff(i, pt.gs, vg);
            out.insert(out.end(), dg.begin(), dg.end());
            return out;
        }};
}

// ---------------------------------------------------------------------------
// Double complex on NG: Omega^{p,r} = Omega^r(NG(p))

/// d' f = sum_{i=0}^{p+1} (-1)^i eps_i^* f, a form on NG(p+1).
inline FormEval d_prime(const FormEval& f) {
    const int p = f.level();
    FormEval total = zero_form(f.degree(), p + 1);
    for (int i = 0; i <= p + 1; ++i) {
        total = add(total, scale(i % 2 == 0 ? 1.0 : -1.0, pullback(f, ng_face_map(i, p + 1))));
    }
    return total;
}

/// d'' f = (-1)^p d f.
inline FormEval d_double_prime(const FormEval& f, double fd_step = kDefaultFdStep) {
    return scale(f.level() % 2 == 0 ? 1.0 : -1.0, exterior_d(f, fd_step));
}

// ---------------------------------------------------------------------------
// Triple complex on X ⋊ NG: Omega^{p,q,r} = Omega^r(X_p ⋊ NG_p(q))

struct BisimplicialForm {
    int p;
    int q;
    FormEval form;  // on G^{p+q}, x factors first
};

enum class TripleDifferential { Horizontal, Vertical, Exterior };

/// d' (horizontal), d'' (vertical, times (-1)^p) or d''' ((-1)^{p+q} d).
inline BisimplicialForm d_triple_complex(const BisimplicialForm& f, TripleDifferential which,
                                         double fd_step = kDefaultFdStep,
                                         Action action = Action::Conjugation) {
    if (f.form.level() != f.p + f.q) throw UsageError("d_triple_complex: form level != p + q");
    const int deg = f.form.degree();
    switch (which) {
        case TripleDifferential::Horizontal: {
            FormEval total = zero_form(deg, f.p + 1 + f.q);
            for (int i = 0; i <= f.p + 1; ++i) {
                total = add(total, scale(i % 2 == 0 ? 1.0 : -1.0,
                                         pullback(f.form, horizontal_face_map(i, f.p + 1, f.q))));
            }
            return {f.p + 1, f.q, total};
        }
        case TripleDifferential::Vertical: {
            FormEval total = zero_form(deg, f.p + f.q + 1);
            for (int i = 0; i <= f.q + 1; ++i) {
                total = add(total, scale(i % 2 == 0 ? 1.0 : -1.0,
                                         pullback(f.form, vertical_face_map(i, f.p, f.q + 1, action))));
            }
            return {f.p, f.q + 1, scale(f.p % 2 == 0 ? 1.0 : -1.0, total)};
        }
        case TripleDifferential::Exterior:
            return {f.p, f.q, scale((f.p + f.q) % 2 == 0 ? 1.0 : -1.0, exterior_d(f.form, fd_step))};
    }
    throw UsageError("d_triple_complex: unknown differential");
}

}  // namespace eqcartan
