#pragma once

// Seeded randomized verification runs over the simplicial, Cartan-model and
// cocycle identities, with structured reports.

#include "eqcartan/eulercocycle.hpp"
#include "eqcartan/formdsl.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace eqcartan::harness {

struct CheckConfig {
    std::string check_id;
    int trials = 200;
    std::uint64_t seed = 42;
    double fd_step = kDefaultFdStep;
    double tol = 0.0;  // 0 selects the check's default tolerance
    unsigned threads = 0;  // 0 selects hardware concurrency

    void validate() const {
        if (trials < 1) throw UsageError("trials must be at least 1");
        if (!(fd_step >= 1e-7 && fd_step <= 1e-3)) throw UsageError("fd_step must lie in [1e-7, 1e-3]");
        if (tol < 0.0 || std::isnan(tol)) throw UsageError("tol must be positive");
    }
};

/// Worst residual of one component of a check, in absolute units.
struct ComponentResult {
    std::string name;
    double max_abs_err = 0.0;
    double tol = 0.0;
    int sign = 0;  // resolved sign for sign-ambiguous components, else 0
};

struct CheckReport {
    std::string check_id;
    int trials = 0;
    std::uint64_t seed = 0;
    double fd_step = 0.0;
    double tol = 0.0;
    double max_abs_err = 0.0;
    bool pass = false;
    std::int64_t elapsed_ms = 0;
    int worst_trial = 0;
    std::vector<ComponentResult> components;
};

inline const std::vector<std::string>& list_checks() {
    static const std::vector<std::string> ids = {
        "mc-structure",        "simplicial-identities", "gamma-simplicial", "lemma-4.1",
        "lemma-4.2",           "lemma-4.3",             "euler-cocycle",    "equivariant-cocycle",
        "ad-invariance",       "dsl-oracle",            "alpha-antisymmetry", "d-squared",
        "golden-values",
    };
    return ids;
}

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
inline std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Independent generator for one trial of one check.
inline Rng trial_rng(std::uint64_t seed, std::string_view check_id, int trial) {
    const std::uint64_t h = stable_hash(check_id);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(trial)};
    return Rng(seq);
}

namespace detail {

/// One component of a check. A signed component evaluates both candidate
/// signs per trial (two slots) and keeps the one that passes.
struct Component {
    std::string name;
    double tol;
    bool signed_pair = false;
};

struct CheckDefinition {
    std::vector<Component> components;
    /// Fills one value per slot (two per signed component).
    std::function<std::vector<double>(Rng&, double fd_step)> trial;
};

inline std::vector<TangentRep> random_tangents(Rng& rng, const GroupPoint& h, int count) {
    std::vector<TangentRep> out;
    for (int i = 0; i < count; ++i) out.push_back(random_tangent(rng, h));
    return out;
}

inline TangentRep conjugate_rep(const Mat4& g, const TangentRep& v) {
    TangentRep out;
    for (const auto& m : v) out.push_back(g * m * g.transpose());
    return out;
}

inline GroupPoint conjugate_point(const Mat4& g, const GroupPoint& h) {
    return act(Action::Conjugation, g, h);
}

/// Scalar function on G^n built from random linear functionals of each factor
/// and of the product of the first and last factor. Not invariant under any
/// translation, so it exercises every term of the differentials.
inline FormEval probe_function(Rng& rng, int level) {
    std::vector<Mat4> weights;
    for (int k = 0; k <= level; ++k) {
        Mat4 c;
        for (int i = 0; i < 16; ++i) c.data()[i] = uniform(rng, -1.0, 1.0);
        weights.push_back(c);
    }
    return FormEval(0, level, [weights](const GroupPoint& h, std::span<const TangentRep>) {
        double total = 0.0;
        const auto& f = h.factors();
        for (std::size_t k = 0; k < f.size(); ++k) total += (weights[k] * f[k]).trace();
        if (!f.empty()) total += (weights.back() * f.front() * f.back()).trace();
        return total;
    });
}

/// Generic probe form of degree 0 or 1 on G^level.
inline FormEval probe_form(Rng& rng, int level, int degree) {
    FormEval phi = probe_function(rng, level);
    if (degree == 0) return phi;
    return add(wedge(phi, entry(mc_left(1, level), 1, 2)), entry(mc_right(level, level), 3, 4));
}

inline double eval_random(const FormEval& f, Rng& rng) {
    const GroupPoint h = random_point(rng, f.level());
    const auto vs = random_tangents(rng, h, f.degree());
    return f.evaluate(h, vs);
}

// ---------------------------------------------------------------------------
// Individual checks

inline double mc_structure_residual(Rng& rng, double fd_step) {
    const GroupPoint h = random_point(rng, 1);
    const auto vs = random_tangents(rng, h, 2);
    const Mat4 square = matrix_wedge_square(mc_left(1, 1)).evaluate(h, vs);
    double worst = 0.0;
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            const double d = exterior_d(entry(mc_left(1, 1), a, b), fd_step).evaluate(h, vs);
            worst = std::max(worst, std::abs(d + square(a - 1, b - 1)));
        }
    }
    return worst;
}

inline double simplicial_residual(Rng& rng) {
    double worst = 0.0;
    auto track = [&](const GroupPoint& x, const GroupPoint& y) { worst = std::max(worst, max_abs_diff(x, y)); };

    for (int q = 2; q <= 4; ++q) {
        const GroupPoint pt = random_point(rng, q);
        for (int j = 1; j <= q; ++j) {
            for (int i = 0; i < j; ++i) track(face_ng(i, face_ng(j, pt)), face_ng(j - 1, face_ng(i, pt)));
        }
    }
    for (int q = 0; q <= 2; ++q) {
        const GroupPoint pt = random_point(rng, q);
        for (int j = 0; j <= q; ++j) {
            for (int i = 0; i <= j; ++i) {
                track(degeneracy_ng(i, degeneracy_ng(j, pt)), degeneracy_ng(j + 1, degeneracy_ng(i, pt)));
            }
        }
    }
    for (int q = 0; q <= 3; ++q) {
        const GroupPoint pt = random_point(rng, q);
        for (int j = 0; j <= q; ++j) {
            const GroupPoint up = degeneracy_ng(j, pt);
            for (int i = 0; i <= q + 1; ++i) {
                const GroupPoint lhs = face_ng(i, up);
                if (i < j) {
                    track(lhs, degeneracy_ng(j - 1, face_ng(i, pt)));
                } else if (i == j || i == j + 1) {
                    track(lhs, pt);
                } else {
                    track(lhs, degeneracy_ng(j, face_ng(i - 1, pt)));
                }
            }
        }
    }
    // Faces commute with the conjugation action.
    for (int q = 1; q <= 4; ++q) {
        const GroupPoint pt = random_point(rng, q);
        const Mat4 g = random_so4(rng);
        for (int i = 0; i <= q; ++i) {
            track(face_ng(i, conjugate_point(g, pt)), conjugate_point(g, face_ng(i, pt)));
        }
    }
    return worst;
}

inline double gamma_residual(Rng& rng) {
    double worst = 0.0;
    for (int q = 1; q <= 3; ++q) {
        const GroupPoint pt = random_point(rng, q + 1);
        for (int i = 0; i <= q; ++i) {
            worst = std::max(worst, max_abs_diff(gamma(face_pg(i, pt)), face_ng(i, gamma(pt))));
        }
        if (q >= 2) {
            for (int j = 1; j <= q; ++j) {
                for (int i = 0; i < j; ++i) {
                    worst = std::max(worst, max_abs_diff(face_pg(i, face_pg(j, pt)), face_pg(j - 1, face_pg(i, pt))));
                }
            }
        }
    }
    return worst;
}

inline double lemma_left_residual(Rng& rng, double fd_step) {
    const GroupPoint h = random_point(rng, 1);
    const SkewMatrix x = random_algebra_element(rng);
    const auto vs = random_tangents(rng, h, 2);
    const FormEval lhs = contract(e13_form(), fundamental_field(x, 1).as_field());
    const FormEval rhs = exterior_d(mu_form()(x), fd_step);
    return std::abs(lhs.evaluate(h, vs) - rhs.evaluate(h, vs));
}

inline double lemma_faces_residual(Rng& rng) {
    const GroupPoint h = random_point(rng, 2);
    const SkewMatrix x = random_algebra_element(rng);
    const auto vs = random_tangents(rng, h, 1);
    const FormEval lhs = contract(e22_form(), fundamental_field(x, 2).as_field());
    const FormEval rhs = d_prime(mu_form()(x));
    return std::abs(lhs.evaluate(h, vs) - rhs.evaluate(h, vs));
}

inline double lemma_contraction_residual(Rng& rng) {
    const GroupPoint h = random_point(rng, 1);
    const SkewMatrix x = random_algebra_element(rng);
    return std::abs(mu_value(x, h, fundamental_field(x, 1)(h)));
}

inline std::vector<double> euler_cocycle_trial(Rng& rng, double fd_step) {
    const GroupPoint h1 = random_point(rng, 1);
    const auto v1 = random_tangents(rng, h1, 4);
    const double closed = exterior_d(e13_form(), fd_step).evaluate(h1, v1);

    const GroupPoint h2 = random_point(rng, 2);
    const auto v2 = random_tangents(rng, h2, 3);
    const double dp = d_prime(e13_form()).evaluate(h2, v2);
    const double de = exterior_d(e22_form(), fd_step).evaluate(h2, v2);

    const GroupPoint h3 = random_point(rng, 3);
    const auto v3 = random_tangents(rng, h3, 2);
    const double dpp = d_prime(e22_form()).evaluate(h3, v3);
    return {std::abs(closed), std::abs(dp + de), std::abs(dp - de), std::abs(dpp)};
}

inline std::vector<double> equivariant_trial(Rng& rng, double fd_step) {
    CocycleSample s;
    s.h1 = random_point(rng, 1);
    for (auto& v : s.v1) v = random_tangent(rng, s.h1);
    s.h2 = random_point(rng, 2);
    for (auto& v : s.v2) v = random_tangent(rng, s.h2);
    const SkewMatrix x = random_algebra_element(rng);
    const CocycleSample samples[] = {s};
    const auto r = equivariant_total_check(e13_form(), e22_form(), mu_form(), x, samples, fd_step);
    return {r.closed_e13, r.lemma_left, r.lemma_contraction, r.d_plus, r.d_minus, r.e_plus, r.e_minus};
}

inline std::vector<double> ad_invariance_trial(Rng& rng) {
    const Mat4 g = random_so4(rng);
    const GroupPoint h1 = random_point(rng, 1);
    const GroupPoint h2 = random_point(rng, 2);
    const auto v1 = random_tangents(rng, h1, 3);
    const auto v2 = random_tangents(rng, h2, 2);
    const SkewMatrix x = random_algebra_element(rng);

    const GroupPoint gh1 = conjugate_point(g, h1);
    const GroupPoint gh2 = conjugate_point(g, h2);
    const double e13 = e13_value(h1, v1[0], v1[1], v1[2]) -
                       e13_value(gh1, conjugate_rep(g, v1[0]), conjugate_rep(g, v1[1]), conjugate_rep(g, v1[2]));
    const double e22 = e22_value(h2, v2[0], v2[1]) - e22_value(gh2, conjugate_rep(g, v2[0]), conjugate_rep(g, v2[1]));
    const double mu = mu_value(x, h1, v1[0]) - mu_value(adjoint(g, x), gh1, conjugate_rep(g, v1[0]));
    return {std::abs(e13), std::abs(e22), std::abs(mu)};
}

inline std::vector<double> dsl_oracle_trial(Rng& rng) {
    static const formdsl::FormExpr e13 = formdsl::parse(formdsl::corpus::kE13);
    static const formdsl::FormExpr e22 = formdsl::parse(formdsl::corpus::kE22);
    static const formdsl::FormExpr mu = formdsl::parse(formdsl::corpus::kMu);

    const SkewMatrix x = random_algebra_element(rng);
    const GroupPoint h1 = random_point(rng, 1);
    const GroupPoint h2 = random_point(rng, 2);
    const auto v1 = random_tangents(rng, h1, 3);
    const auto v2 = random_tangents(rng, h2, 2);

    const double d13 = formdsl::interpret(e13, 1)(x).evaluate(h1, v1) - e13_value(h1, v1[0], v1[1], v1[2]);
    const double d22 = formdsl::interpret(e22, 2)(x).evaluate(h2, v2) - e22_value(h2, v2[0], v2[1]);
    const double dmu =
        formdsl::interpret(mu, 1)(x).evaluate(h1, {v1[0]}) - mu_value(x, h1, v1[0]);
    return {std::abs(d13), std::abs(d22), std::abs(dmu)};
}

inline double alpha_antisymmetry_residual(Rng& rng) {
    auto path = [&] {
        return polynomial_path({random_algebra_element(rng), random_algebra_element(rng), random_algebra_element(rng)});
    };
    const AlgebraPath xi1 = path();
    const AlgebraPath xi2 = path();
    return std::abs(eval_alpha(xi1, xi2) + eval_alpha(xi2, xi1));
}

/// Returns {d'd', (d'+d'')^2, dd, triple anticommutators, triple squares}.
inline std::vector<double> d_squared_trial(Rng& rng, double fd_step) {
    // d' d' on the double complex of NG.
    const FormEval mc12 = entry(mc_left(1, 1), 1, 2);
    const FormEval probe = probe_form(rng, 1, 1);
    const double dprime_sq =
        std::max(std::abs(eval_random(d_prime(d_prime(mc12)), rng)), std::abs(eval_random(d_prime(d_prime(probe)), rng)));

    // (d' + d'')^2 = d'd' + (d'd'' + d''d') + d''d'', one tri-degree each.
    const double mixed = eval_random(add(d_prime(d_double_prime(probe, fd_step)), d_double_prime(d_prime(probe), fd_step)), rng);
    const double dpp_sq = eval_random(d_double_prime(d_double_prime(probe, fd_step), fd_step), rng);
    const double total_double = std::max({dprime_sq, std::abs(mixed), std::abs(dpp_sq)});

    const double ext_sq = std::max(std::abs(eval_random(exterior_d(exterior_d(mc12, fd_step), fd_step), rng)),
                                   std::abs(eval_random(exterior_d(exterior_d(probe_function(rng, 2), fd_step), fd_step), rng)));

    using TD = TripleDifferential;
    auto apply = [&](const BisimplicialForm& f, TD which) { return d_triple_complex(f, which, fd_step); };
    auto anticommutator = [&](const BisimplicialForm& f, TD a, TD b) {
        const BisimplicialForm ab = apply(apply(f, b), a);
        const BisimplicialForm ba = apply(apply(f, a), b);
        return std::abs(eval_random(add(ab.form, ba.form), rng));
    };

    double anti = 0.0;
    for (int p = 0; p <= 2; ++p) {
        for (int q = 0; q <= 2; ++q) {
            for (int degree = 0; degree <= (p + q == 0 ? 0 : 1); ++degree) {
                const BisimplicialForm f{p, q, probe_form(rng, p + q, degree)};
                anti = std::max({anti, anticommutator(f, TD::Horizontal, TD::Vertical),
                                 anticommutator(f, TD::Horizontal, TD::Exterior),
                                 anticommutator(f, TD::Vertical, TD::Exterior)});
            }
        }
    }

    double squares = 0.0;
    for (int degree = 0; degree <= 1; ++degree) {
        const BisimplicialForm f{1, 1, probe_form(rng, 2, degree)};
        for (TD which : {TD::Horizontal, TD::Vertical, TD::Exterior}) {
            squares = std::max(squares, std::abs(eval_random(apply(apply(f, which), which).form, rng)));
        }
    }
    return {dprime_sq, total_double, ext_sq, anti, squares};
}

inline std::vector<double> golden_values_trial() {
    const auto basis = basis_so4();
    const SkewMatrix& e12 = basis[0];
    const SkewMatrix& e34 = basis[5];
    const double inv_pi2 = kInvPi2;

    const GroupPoint id1 = GroupPoint::identity(1);
    const double mu = mu_value(e12, id1, {e34.matrix()});

    const GroupPoint id2 = GroupPoint::identity(2);
    const double e22 = e22_value(id2, {e12.matrix(), Mat4::Zero()}, {Mat4::Zero(), e34.matrix()});

    const AlgebraPath xi1{[e12](double t) { return t * e12; }, [e12](double) { return e12; }};
    const AlgebraPath xi2{[e34](double) { return e34; }, [](double) { return SkewMatrix(); }};
    const double alpha = eval_alpha(xi1, xi2);

    return {std::abs(mu + inv_pi2 / 4.0), std::abs(e22 + inv_pi2 / 8.0), std::abs(alpha + inv_pi2 / 8.0)};
}

inline const CheckDefinition& definition(std::string_view id) {
    using V = std::vector<double>;
    static const std::vector<std::pair<std::string, CheckDefinition>> table = {
        {"mc-structure",
         {{{"structure-equation", 1e-6}}, [](Rng& r, double h) { return V{mc_structure_residual(r, h)}; }}},
        {"simplicial-identities",
         {{{"face-degeneracy", 1e-13}}, [](Rng& r, double) { return V{simplicial_residual(r)}; }}},
        {"gamma-simplicial", {{{"gamma-faces", 1e-13}}, [](Rng& r, double) { return V{gamma_residual(r)}; }}},
        {"lemma-4.1", {{{"contraction-e13-vs-dmu", 1e-6}}, [](Rng& r, double h) { return V{lemma_left_residual(r, h)}; }}},
        {"lemma-4.2", {{{"contraction-e22-vs-dprime-mu", 1e-10}}, [](Rng& r, double) { return V{lemma_faces_residual(r)}; }}},
        {"lemma-4.3", {{{"contraction-mu", 1e-12}}, [](Rng& r, double) { return V{lemma_contraction_residual(r)}; }}},
        {"euler-cocycle",
         {{{"d-e13", 1e-6}, {"dprime-e13+sigma1*d-e22", 1e-6, true}, {"dprime-e22", 1e-10}},
          [](Rng& r, double h) { return euler_cocycle_trial(r, h); }}},
        {"equivariant-cocycle",
         {{{"d-e13", 1e-6},
           {"contraction-e13-vs-dmu", 1e-6},
           {"contraction-mu", 1e-12},
           {"dprime-e13+sigma1*d-e22", 1e-6, true},
           {"dprime-mu-sigma2*contraction-e22", 1e-10, true}},
          [](Rng& r, double h) { return equivariant_trial(r, h); }}},
        {"ad-invariance",
         {{{"e13", 1e-10}, {"e22", 1e-10}, {"mu", 1e-10}}, [](Rng& r, double) { return ad_invariance_trial(r); }}},
        {"dsl-oracle", {{{"e13", 1e-12}, {"e22", 1e-12}, {"mu", 1e-12}}, [](Rng& r, double) { return dsl_oracle_trial(r); }}},
        {"alpha-antisymmetry",
         {{{"alpha+alpha-swapped", 1e-14}}, [](Rng& r, double) { return V{alpha_antisymmetry_residual(r)}; }}},
        {"d-squared",
         {{{"dprime-squared", 1e-12},
           {"double-complex-total-squared", 1e-4},
           {"exterior-d-squared", 1e-4},
           {"triple-anticommutators", 1e-4},
           {"triple-squares", 1e-4}},
          [](Rng& r, double h) { return d_squared_trial(r, h); }}},
        {"golden-values",
         {{{"mu(E12)(I;E34)", 1e-12}, {"E22((I,I);(E12,0),(0,E34))", 1e-12}, {"alpha(tE12,E34)", 1e-12}},
          [](Rng&, double) { return golden_values_trial(); }}},
    };
    for (const auto& [name, def] : table) {
        if (name == id) return def;
    }
    throw UsageError("unknown check id: " + std::string(id));
}

}  // namespace detail

/// Default tolerance of a check: the loosest of its component tolerances.
inline double default_tolerance(std::string_view check_id) {
    double tol = 0.0;
    for (const auto& c : detail::definition(check_id).components) tol = std::max(tol, c.tol);
    return tol;
}

/// Runs `cfg.trials` independent trials and reports the worst residual.
///
/// For checks with several components, each component is held to its own
/// tolerance scaled by cfg.tol / default_tolerance(id). max_abs_err is the
/// worst component residual rescaled by default_tolerance(id) / component
/// tolerance, so `pass` is exactly `max_abs_err <= tol`. For single-component
/// checks it is the raw residual.
inline CheckReport run_check(const CheckConfig& cfg) {
    const auto& def = detail::definition(cfg.check_id);
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const double base_tol = default_tolerance(cfg.check_id);
    const double tol = cfg.tol > 0.0 ? cfg.tol : base_tol;
    const double factor = tol / base_tol;

    std::vector<std::vector<double>> results(static_cast<std::size_t>(cfg.trials));
    auto run_range = [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
            Rng rng = trial_rng(cfg.seed, cfg.check_id, t);
            results[static_cast<std::size_t>(t)] = def.trial(rng, cfg.fd_step);
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials));
    if (threads <= 1) {
        run_range(0, cfg.trials);
    } else {
        std::vector<std::future<void>> jobs;
        const int chunk = (cfg.trials + static_cast<int>(threads) - 1) / static_cast<int>(threads);
        for (int begin = 0; begin < cfg.trials; begin += chunk) {
            jobs.push_back(std::async(std::launch::async, run_range, begin, std::min(cfg.trials, begin + chunk)));
        }
        for (auto& j : jobs) j.get();
    }

    CheckReport report;
    report.check_id = cfg.check_id;
    report.trials = cfg.trials;
    report.seed = cfg.seed;
    report.fd_step = cfg.fd_step;
    report.tol = tol;

    // Resolve component maxima and signs; slots map to trial result columns.
    std::vector<std::size_t> slot_of;
    std::size_t slot = 0;
    bool sign_resolved = true;
    for (const auto& c : def.components) {
        ComponentResult out{c.name, 0.0, c.tol * factor, 0};
        if (!c.signed_pair) {
            for (const auto& r : results) out.max_abs_err = std::max(out.max_abs_err, r.at(slot));
            slot_of.push_back(slot);
            slot += 1;
        } else {
            double plus = 0.0, minus = 0.0;
            for (const auto& r : results) {
                plus = std::max(plus, r.at(slot));
                minus = std::max(minus, r.at(slot + 1));
            }
            const auto sign = unique_sign(plus, minus, out.tol);
            // Without a unique passing sign, report the better candidate as the error.
            const bool use_plus = sign ? *sign == 1 : plus <= minus;
            out.sign = sign.value_or(0);
            out.max_abs_err = use_plus ? plus : minus;
            sign_resolved = sign_resolved && sign.has_value();
            slot_of.push_back(use_plus ? slot : slot + 1);
            slot += 2;
        }
        report.components.push_back(out);
    }

    double worst = -1.0;
    for (std::size_t t = 0; t < results.size(); ++t) {
        double normalized = 0.0;
        for (std::size_t c = 0; c < def.components.size(); ++c) {
            normalized = std::max(normalized, results[t][slot_of[c]] * base_tol / def.components[c].tol);
        }
        if (normalized > worst) {
            worst = normalized;
            report.worst_trial = static_cast<int>(t);
        }
    }
    report.max_abs_err = worst;
    if (std::isnan(report.max_abs_err)) report.max_abs_err = std::numeric_limits<double>::infinity();
    // A sign pair where both or neither candidate passes is a failure even if
    // the better candidate is small.
    if (!sign_resolved) report.max_abs_err = std::max(report.max_abs_err, std::nextafter(tol, std::numeric_limits<double>::infinity()));
    report.pass = report.max_abs_err <= tol;
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline nlohmann::json to_json(const CheckReport& r) {
    return nlohmann::json{{"check", r.check_id},   {"trials", r.trials},           {"seed", r.seed},
                          {"fd_step", r.fd_step},  {"tol", r.tol},                 {"max_abs_err", r.max_abs_err},
                          {"pass", r.pass},        {"elapsed_ms", r.elapsed_ms},   {"worst_trial", r.worst_trial}};
}

/// "<id> PASS max_err=<e> tol=<t>"
inline std::string to_text(const CheckReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s max_err=%.3e tol=%.3e", r.check_id.c_str(), r.pass ? "PASS" : "FAIL",
                  r.max_abs_err, r.tol);
    return buf;
}

}  // namespace eqcartan::harness
