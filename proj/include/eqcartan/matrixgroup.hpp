#pragma once

// Dense 4x4 arithmetic, the group SO(4), its Lie algebra so(4) and the
// signed permutation table of S4.
//
// Entry accessors that take (a, b) are 1-based so that index pairs read the
// same as the subscripts in the cocycle formulas.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqcartan {

using Mat4 = Eigen::Matrix<double, 4, 4, Eigen::RowMajor>;

/// Thrown for contract violations by callers (bad index, level mismatch, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// 1-based entry access.
inline double entry(const Mat4& m, int a, int b) {
    if (a < 1 || a > 4 || b < 1 || b > 4) {
        throw UsageError("matrix index out of range: (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
    }
    return m(a - 1, b - 1);
}

inline Mat4 commutator(const Mat4& x, const Mat4& y) { return x * y - y * x; }

/// Max-abs entrywise distance.
inline double max_abs_diff(const Mat4& x, const Mat4& y) { return (x - y).cwiseAbs().maxCoeff(); }

/// Element of so(4).
class SkewMatrix {
public:
    SkewMatrix() : m_(Mat4::Zero()) {}

    /// Throws UsageError when `m` is not skew within `tol`.
    explicit SkewMatrix(const Mat4& m, double tol = 1e-14) : m_(m) {
        if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol) {
            throw UsageError("matrix is not skew-symmetric");
        }
    }

    /// Takes the skew part of `m` without validation.
    static SkewMatrix skew_part(const Mat4& m) {
        SkewMatrix s;
        s.m_ = 0.5 * (m - m.transpose());
        return s;
    }

    const Mat4& matrix() const { return m_; }
    double operator()(int a, int b) const { return eqcartan::entry(m_, a, b); }

    friend SkewMatrix operator+(const SkewMatrix& x, const SkewMatrix& y) {
        return from_trusted(x.m_ + y.m_);
    }
    friend SkewMatrix operator-(const SkewMatrix& x, const SkewMatrix& y) {
        return from_trusted(x.m_ - y.m_);
    }
    friend SkewMatrix operator*(double c, const SkewMatrix& x) { return from_trusted(c * x.m_); }

private:
    static SkewMatrix from_trusted(const Mat4& m) {
        SkewMatrix s;
        s.m_ = m;
        return s;
    }

    Mat4 m_;
};

/// A point of G^p for G = SO(4): an ordered tuple of rotation matrices.
/// Level 0 is the empty tuple.
class GroupPoint {
public:
    GroupPoint() = default;
    explicit GroupPoint(std::vector<Mat4> factors) : factors_(std::move(factors)) {}
    GroupPoint(std::initializer_list<Mat4> factors) : factors_(factors) {}

    static GroupPoint identity(int level) {
        return GroupPoint(std::vector<Mat4>(static_cast<std::size_t>(level), Mat4::Identity()));
    }

    int level() const { return static_cast<int>(factors_.size()); }

    /// 1-based factor access.
    const Mat4& factor(int k) const {
        if (k < 1 || k > level()) {
            throw UsageError("factor index " + std::to_string(k) + " out of range for level " +
                             std::to_string(level()));
        }
        return factors_[static_cast<std::size_t>(k - 1)];
    }

    const std::vector<Mat4>& factors() const { return factors_; }
    std::vector<Mat4>& factors() { return factors_; }

    /// Orthogonality and det = 1 for every factor.
    bool is_valid(double tol = 1e-12) const {
        return std::all_of(factors_.begin(), factors_.end(), [tol](const Mat4& m) {
            return (m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff() <= tol &&
                   std::abs(m.determinant() - 1.0) <= tol;
        });
    }

    friend bool operator==(const GroupPoint&, const GroupPoint&) = default;

private:
    std::vector<Mat4> factors_;
};

/// Largest entrywise deviation between two points of the same level.
inline double max_abs_diff(const GroupPoint& x, const GroupPoint& y) {
    if (x.level() != y.level()) {
        throw UsageError("level mismatch comparing group points");
    }
    double worst = 0.0;
    for (int k = 1; k <= x.level(); ++k) {
        worst = std::max(worst, max_abs_diff(x.factor(k), y.factor(k)));
    }
    return worst;
}

/// E_ab for 1 <= a < b <= 4 in the order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
inline std::array<SkewMatrix, 6> basis_so4() {
    std::array<SkewMatrix, 6> basis;
    std::size_t n = 0;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            Mat4 m = Mat4::Zero();
            m(a, b) = 1.0;
            m(b, a) = -1.0;
            basis[n++] = SkewMatrix(m);
        }
    }
    return basis;
}

/// Matrix exponential by scaling and squaring with a 24-term Taylor series.
inline Mat4 expm(const Mat4& x) {
    const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.25) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    }
    const Mat4 scaled = x / std::ldexp(1.0, squarings);

    // Horner form of sum_{k<=24} A^k / k!
    constexpr int kTerms = 24;
    Mat4 result = Mat4::Identity();
    for (int k = kTerms; k >= 1; --k) {
        result = Mat4::Identity() + (scaled * result) / static_cast<double>(k);
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

inline Mat4 exp_skew(const SkewMatrix& x) { return expm(x.matrix()); }

/// Adjoint action g x g^{-1}, using g^{-1} = g^T.
inline SkewMatrix adjoint(const Mat4& g, const SkewMatrix& x) {
    return SkewMatrix::skew_part(g * x.matrix() * g.transpose());
}

// ---------------------------------------------------------------------------
// Randomness

using Rng = std::mt19937_64;

/// Uniform double in [lo, hi) with a fixed bit recipe, so sampled values do
/// not depend on the standard library's distribution implementation.
inline double uniform(Rng& rng, double lo, double hi) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

/// Skew matrix with independent upper-triangle entries uniform in [-bound, bound].
inline SkewMatrix random_skew(Rng& rng, double bound) {
    Mat4 m = Mat4::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            m(a, b) = uniform(rng, -bound, bound);
            m(b, a) = -m(a, b);
        }
    }
    return SkewMatrix(m);
}

/// Random combination of the so(4) basis with coefficients uniform in [-1, 1].
inline SkewMatrix random_algebra_element(Rng& rng) {
    SkewMatrix x;
    for (const auto& e : basis_so4()) {
        x = x + uniform(rng, -1.0, 1.0) * e;
    }
    return x;
}

inline Mat4 random_so4(Rng& rng) { return exp_skew(random_skew(rng, 2.0)); }

/// Deterministic SO(4) sample: exp of a skew matrix with entries uniform in [-2, 2].
inline Mat4 sample_so4(std::uint64_t seed) {
    Rng rng(seed);
    return random_so4(rng);
}

inline GroupPoint random_point(Rng& rng, int level) {
    std::vector<Mat4> factors;
    factors.reserve(static_cast<std::size_t>(level));
    for (int k = 0; k < level; ++k) {
        factors.push_back(random_so4(rng));
    }
    return GroupPoint(std::move(factors));
}

// ---------------------------------------------------------------------------
// S4

struct SignedPermutation {
    std::array<int, 4> images;  // images[i-1] = tau(i), values in 1..4
    int sign;

    int operator()(int i) const { return images.at(static_cast<std::size_t>(i - 1)); }
};

/// All 24 permutations of {1,2,3,4} in lexicographic order, with parity signs.
inline const std::array<SignedPermutation, 24>& s4_table() {
    static const std::array<SignedPermutation, 24> table = [] {
        std::array<SignedPermutation, 24> t{};
        std::array<int, 4> p{1, 2, 3, 4};
        std::size_t n = 0;
        do {
            // Parity by cycle decomposition: sign = (-1)^(4 - #cycles).
            std::array<bool, 4> seen{};
            int cycles = 0;
            for (int i = 0; i < 4; ++i) {
                if (seen[static_cast<std::size_t>(i)]) continue;
                ++cycles;
                for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p[static_cast<std::size_t>(j)] - 1) {
                    seen[static_cast<std::size_t>(j)] = true;
                }
            }
            t[n++] = SignedPermutation{p, (4 - cycles) % 2 == 0 ? 1 : -1};
        } while (std::next_permutation(p.begin(), p.end()));
        return t;
    }();
    return table;
}

/// sum_tau sgn(tau) (A_{t1 t2} B_{t3 t4} + A_{t3 t4} B_{t1 t2}).
///
/// Symmetric bilinear and Ad-invariant under SO(4); every cocycle formula is
/// built from this pairing.
inline double pfaffian_pairing(const Mat4& a, const Mat4& b) {
    double total = 0.0;
    for (const auto& t : s4_table()) {
        const int i = t.images[0] - 1, j = t.images[1] - 1, k = t.images[2] - 1, l = t.images[3] - 1;
        total += t.sign * (a(i, j) * b(k, l) + a(k, l) * b(i, j));
    }
    return total;
}

}  // namespace eqcartan
