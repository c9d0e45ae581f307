#pragma once

// Affine geometry over R = Z/<r>: points of R^m, the set B of direction
// vectors (rows of invertible matrices), lines base + R*dir, line counts
// through point pairs, and the affine group AGL(m, Z/<r>).
//
// Lines and line counting are m = 2 only; B-membership, element orders
// and affine maps work for any m >= 1.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torgeo/common.hpp"

namespace torgeo {

/// Point of (Z/<r>)^m, coordinates always reduced to [0, r-1].
struct RingPoint {
    std::vector<int> c;
    int r = 0;

    RingPoint() = default;
    RingPoint(std::vector<int> coords, int modulus) : c(std::move(coords)), r(modulus) {
        if (r < 2) fail(errc::bad_input, "ring modulus must be >= 2");
        for (int& x : c) x = ((x % r) + r) % r;
    }
    static RingPoint of(int a, int b, int r) { return RingPoint({a, b}, r); }

    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
    }

    friend bool operator==(const RingPoint&, const RingPoint&) = default;
    friend auto operator<=>(const RingPoint&, const RingPoint&) = default;

    friend RingPoint operator+(const RingPoint& a, const RingPoint& b) {
        check_compat(a, b);
        std::vector<int> out(a.c.size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = (a.c[i] + b.c[i]) % a.r;
        return RingPoint(std::move(out), a.r);
    }
    friend RingPoint operator-(const RingPoint& a, const RingPoint& b) {
        check_compat(a, b);
        std::vector<int> out(a.c.size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = ((a.c[i] - b.c[i]) % a.r + a.r) % a.r;
        return RingPoint(std::move(out), a.r);
    }
    friend RingPoint operator*(int s, const RingPoint& a) {
        std::vector<int> out(a.c.size());
        s = ((s % a.r) + a.r) % a.r;
        for (size_t i = 0; i < out.size(); ++i) out[i] = s * a.c[i] % a.r;
        return RingPoint(std::move(out), a.r);
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + ")";
    }

private:
    static void check_compat(const RingPoint& a, const RingPoint& b) {
        if (a.r != b.r || a.c.size() != b.c.size())
            fail(errc::dimension_mismatch, "incompatible ring points");
    }
};

/// v in B iff gcd of the coordinates together with r is 1; over Z/<r>
/// this is exactly the condition for v to be a row of an invertible
/// matrix (the entries generate the unit ideal).
inline bool in_B(const RingPoint& v) {
    int g = v.r;
    for (int x : v.c) g = std::gcd(g, x);
    return g == 1;
}

/// A RingPoint certified to lie in B.
struct Direction {
    RingPoint v;

    explicit Direction(RingPoint p) : v(std::move(p)) {
        if (!in_B(v)) fail(errc::bad_input, "direction " + v.str() + " is not in B");
    }
    friend bool operator==(const Direction&, const Direction&) = default;
};

/// Neighbor relation: P and Q are neighbors iff P - Q is outside B.
inline bool is_neighbor(const RingPoint& P, const RingPoint& Q) {
    if (P == Q) fail(errc::equal_points, "neighbor relation needs distinct points");
    return !in_B(P - Q);
}

/// Order of v in the additive group (Z/<r>)^m: r / gcd(coords, r).
inline int element_order(const RingPoint& v) {
    if (v.is_zero()) fail(errc::zero_vector, "order of the zero vector");
    int g = v.r;
    for (int x : v.c) g = std::gcd(g, x);
    return v.r / g;
}

/// Line base + R*dir.  Identity is extensional: two lines are equal iff
/// their point sets coincide, so `key()` sorts the points.
struct Line {
    RingPoint base;
    Direction dir;
    std::vector<RingPoint> points;  // parametric order, exactly r points

    Line(RingPoint b, Direction d) : base(std::move(b)), dir(std::move(d)) {
        points.reserve(base.r);
        for (int l = 0; l < base.r; ++l) points.push_back(base + l * dir.v);
    }

    std::vector<RingPoint> key() const {
        auto k = points;
        std::sort(k.begin(), k.end());
        return k;
    }
    bool contains(const RingPoint& P) const {
        return std::find(points.begin(), points.end(), P) != points.end();
    }
    friend bool operator==(const Line& a, const Line& b) { return a.key() == b.key(); }
};

inline Line line_points(const RingPoint& base, const Direction& dir) { return Line(base, dir); }

/// All distinct lines (as point sets) through two distinct points, m = 2.
/// Scans every direction in B; scanning only unit-coordinate
/// representatives would miss classes like (4,3) mod 6 where neither
/// coordinate is a unit.
inline std::vector<Line> lines_through(const RingPoint& P, const RingPoint& Q) {
    if (P == Q) fail(errc::equal_points, "lines_through needs distinct points");
    if (P.dim() != 2) fail(errc::bad_input, "lines_through is m = 2 only");
    const int r = P.r;
    std::vector<Line> out;
    std::set<std::vector<RingPoint>> seen;
    for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v) {
            RingPoint d = RingPoint::of(u, v, r);
            if (!in_B(d)) continue;
            Line line(P, Direction(d));
            if (!line.contains(Q)) continue;
            if (seen.insert(line.key()).second) out.push_back(std::move(line));
        }
    return out;
}

inline bool is_prime_power(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            while (n % d == 0) n /= d;
            return n == 1;
        }
    return true;
}

/// Line-count formula r / o(P - Q); valid for prime-power r only (over
/// Z/6 the true count can exceed it).
inline int count_lines_prime_power(const RingPoint& P, const RingPoint& Q) {
    if (P == Q) fail(errc::equal_points, "count_lines needs distinct points");
    if (!is_prime_power(P.r))
        fail(errc::not_prime_power,
             "line-count formula requires prime-power r; use lines_through");
    return P.r / element_order(P - Q);
}

/// Affine map w -> M w + v over Z/<r> with unit determinant.
struct AGLMap {
    std::vector<std::vector<int>> M;  // m x m
    RingPoint v;

    AGLMap(std::vector<std::vector<int>> mat, RingPoint trans) : M(std::move(mat)), v(std::move(trans)) {
        const int m = v.dim(), r = v.r;
        if (static_cast<int>(M.size()) != m)
            fail(errc::dimension_mismatch, "matrix/translation size mismatch");
        for (auto& row : M) {
            if (static_cast<int>(row.size()) != m)
                fail(errc::dimension_mismatch, "matrix is not square");
            for (int& x : row) x = ((x % r) + r) % r;
        }
        if (std::gcd(det(), r) != 1) fail(errc::bad_input, "determinant is not a unit mod r");
    }

    static AGLMap identity(int m, int r) {
        std::vector<std::vector<int>> M(m, std::vector<int>(m, 0));
        for (int i = 0; i < m; ++i) M[i][i] = 1;
        return AGLMap(std::move(M), RingPoint(std::vector<int>(m, 0), r));
    }

    int det() const {
        const int m = v.dim(), r = v.r;
        if (m == 1) return M[0][0] % r;
        if (m == 2) return ((M[0][0] * M[1][1] - M[0][1] * M[1][0]) % r + r) % r;
        // cofactor expansion; m stays tiny in practice
        return minor_det(M, r);
    }

    RingPoint apply(const RingPoint& p) const {
        if (p.r != v.r || p.dim() != v.dim())
            fail(errc::dimension_mismatch, "point incompatible with map");
        const int m = v.dim(), r = v.r;
        std::vector<int> out(m, 0);
        for (int i = 0; i < m; ++i) {
            long long acc = v.c[i];
            for (int j = 0; j < m; ++j) acc += static_cast<long long>(M[i][j]) * p.c[j];
            out[i] = static_cast<int>(acc % r);
        }
        return RingPoint(std::move(out), r);
    }

private:
    static int minor_det(const std::vector<std::vector<int>>& A, int r) {
        const int m = static_cast<int>(A.size());
        if (m == 1) return ((A[0][0] % r) + r) % r;
        int d = 0, sign = 1;
        for (int j = 0; j < m; ++j) {
            std::vector<std::vector<int>> sub;
            for (int i = 1; i < m; ++i) {
                std::vector<int> row;
                for (int jj = 0; jj < m; ++jj)
                    if (jj != j) row.push_back(A[i][jj]);
                sub.push_back(std::move(row));
            }
            d = ((d + sign * A[0][j] * minor_det(sub, r)) % r + r) % r;
            sign = -sign;
        }
        return d;
    }
};

using PointSet = std::vector<RingPoint>;

inline PointSet apply_agl(const AGLMap& T, const PointSet& S) {
    PointSet out;
    out.reserve(S.size());
    for (const auto& p : S) out.push_back(T.apply(p));
    return out;
}

namespace detail {

inline std::vector<int> sorted_difference_orders(const PointSet& S) {
    std::vector<int> orders;
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = 0; j < S.size(); ++j)
            if (i != j) orders.push_back(element_order(S[i] - S[j]));
    std::sort(orders.begin(), orders.end());
    return orders;
}

}  // namespace detail

/// Exhaustive AGL(2, Z/<r>) equivalence test, r <= 16.  Returns a
/// witness map with T(S1) = S2 or nullopt.  Invariant prefilter: the
/// multiset of pairwise-difference orders must match.
inline std::optional<AGLMap> are_agl_equivalent(const PointSet& S1, const PointSet& S2) {
    if (S1.size() != S2.size() || S1.empty()) return std::nullopt;
    const int r = S1[0].r;
    if (S1[0].dim() != 2) fail(errc::bad_input, "are_agl_equivalent is m = 2 only");
    if (r > 16) fail(errc::modulus_too_large, "exhaustive AGL scan limited to r <= 16");

    if (detail::sorted_difference_orders(S1) != detail::sorted_difference_orders(S2))
        return std::nullopt;

    std::set<RingPoint> target(S2.begin(), S2.end());
    auto matches = [&](const AGLMap& T) {
        std::set<RingPoint> image;
        for (const auto& p : S1) image.insert(T.apply(p));
        return image == target;
    };

    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c)
                for (int d = 0; d < r; ++d) {
                    if (std::gcd(((a * d - b * c) % r + r) % r, r) != 1) continue;
                    // translation determined by where S1[0] lands
                    for (const auto& t : S2) {
                        RingPoint ms = RingPoint::of(
                            a * S1[0].c[0] + b * S1[0].c[1], c * S1[0].c[0] + d * S1[0].c[1], r);
                        AGLMap T({{a, b}, {c, d}}, t - ms);
                        if (matches(T)) return T;
                    }
                }
    return std::nullopt;
}

}  // namespace torgeo
