#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "torgeo/bounds.hpp"
#include "torgeo/search.hpp"
#include "torgeo/torcode.hpp"

using namespace torgeo;

namespace {

ExponentSet raw_set(int m, int q, std::vector<std::vector<int>> pts) {
    return ExponentSet::from_raw(m, q, pts);
}

const PointSet& f9success_points() {
    static const PointSet S = [] {
        PointSet s;
        for (auto [a, b] : {std::pair{0, 4}, {1, 1}, {2, 0}, {2, 3}, {2, 5}, {3, 7}, {5, 2}, {7, 4}})
            s.push_back(RingPoint::of(a, b, 8));
        return s;
    }();
    return S;
}

}  // namespace

TEST_CASE("decompose_difference examples") {
    auto d1 = decompose_difference(RingPoint::of(4, 0, 8));
    REQUIRE(d1.has_value());
    REQUIRE(d1->N == 4);
    REQUIRE(4 * d1->w == RingPoint::of(4, 0, 8));
    REQUIRE(in_B(d1->w));

    auto d2 = decompose_difference(RingPoint::of(2, 4, 8));
    REQUIRE(d2->N == 2);
    REQUIRE(2 * d2->w == RingPoint::of(2, 4, 8));

    auto d3 = decompose_difference(RingPoint::of(1, 4, 8));
    REQUIRE(d3->N == 1);
    REQUIRE(d3->w == RingPoint::of(1, 4, 8));

    REQUIRE_THROWS_AS(decompose_difference(RingPoint::of(0, 0, 8)), error);
}

TEST_CASE("decompose_difference maximizes N over every nonzero vector, r <= 9") {
    // oracle: try every (N, w) pair directly
    for (int r : {4, 6, 8, 9})
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                if (a == 0 && b == 0) continue;
                RingPoint e = RingPoint::of(a, b, r);
                int best = 0;
                for (int N = 1; N <= r; ++N) {
                    if (r % N) continue;
                    for (int u = 0; u < r; ++u)
                        for (int v = 0; v < r; ++v)
                            if (RingPoint w = RingPoint::of(u, v, r);
                                in_B(w) && N * w == e)
                                best = std::max(best, N);
                }
                auto dec = decompose_difference(e);
                if (best == 0) {
                    REQUIRE_FALSE(dec.has_value());
                } else {
                    REQUIRE(dec.has_value());
                    REQUIRE(dec->N == best);
                }
            }
}

TEST_CASE("neighbor_bound examples over F_9") {
    auto b1 = neighbor_bound(raw_set(2, 9, {{0, 0}, {4, 0}, {1, 1}}));
    REQUIRE(b1.has_value());
    REQUIRE(b1->bound == 32);  // 64 - 4*8

    auto b2 = neighbor_bound(raw_set(2, 9, {{0, 0}, {2, 4}}));
    REQUIRE(b2->bound == 48);  // 64 - 2*8

    auto b3 = neighbor_bound(raw_set(2, 9, {{0, 0}, {1, 0}}));
    REQUIRE(b3->bound == 56);  // N = 1
}

TEST_CASE("neighbor_bound is AGL-invariant") {
    auto S = raw_set(2, 9, {{0, 0}, {4, 0}, {1, 1}, {2, 5}});
    AGLMap T({{5, 2}, {2, 1}}, RingPoint::of(3, 3, 8));  // det 1
    auto S2 = ExponentSet(2, 9, apply_agl(T, S.points));
    REQUIRE(neighbor_bound(S)->bound == neighbor_bound(S2)->bound);
}

TEST_CASE("parallelogram_bound: unit square") {
    for (int q : {5, 7, 8, 9}) {
        long long r = q - 1;
        auto b = parallelogram_bound(raw_set(2, q, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
        REQUIRE(b.has_value());
        REQUIRE(b->bound == r * r - 2 * r + 1);
    }
}

TEST_CASE("parallelogram_bound: F9success set gives 49") {
    auto b = parallelogram_bound(ExponentSet(2, 9, f9success_points()));
    REQUIRE(b.has_value());
    REQUIRE(b->bound == 49);  // (9-1)^2 - 2(9-1) + 1, N1 = N2 = 1
    REQUIRE(b->decomposition[0].N == 1);
    REQUIRE(b->decomposition[1].N == 1);
}

TEST_CASE("parallelogram_bound: trapezoid passes via the level-set check") {
    // {(0,0),(3,0),(1,4),(2,4)} mod 8 is a parallelogram with e = (1,4),
    // f = (2,4) = 2*(1,2).  No decomposition passes the unit-determinant
    // test, but disjoint level sets exist, so the N1=1, N2=2 formula bound
    // 64 - 3*8 + 2 = 42 is still witnessed (the true distance is 40).
    auto b = parallelogram_bound(raw_set(2, 9, {{0, 0}, {3, 0}, {1, 4}, {2, 4}}));
    REQUIRE(b.has_value());
    REQUIRE(b->bound == 42);
}

TEST_CASE("parallelogram_bound: no parallelogram means no bound") {
    auto b = parallelogram_bound(raw_set(2, 9, {{0, 0}, {1, 0}, {0, 1}, {5, 5}}));
    REQUIRE_FALSE(b.has_value());
}

TEST_CASE("verify_binomfact: paper instances") {
    auto F9 = FieldSpec::make(3, 2);
    // x^4 - 1 = prod over even j of (x - alpha^j), 32 torus zeros
    REQUIRE(verify_binomfact(4, 0, 4, Direction(RingPoint::of(1, 0, 8)), F9));
    REQUIRE(verify_binomfact(2, 4, 2, Direction(RingPoint::of(1, 2, 8)), F9));
    REQUIRE(verify_binomfact(1, 4, 1, Direction(RingPoint::of(1, 4, 8)), F9));

    // bad decompositions are rejected
    REQUIRE_THROWS_AS(verify_binomfact(4, 0, 3, Direction(RingPoint::of(1, 0, 8)), F9), error);
    REQUIRE_THROWS_AS(verify_binomfact(4, 0, 2, Direction(RingPoint::of(1, 0, 8)), F9), error);
}

TEST_CASE("verify_binomfact holds for every valid decomposition, q in {4,5,7,8,9}") {
    for (auto [p, r] : {std::pair{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        auto F = FieldSpec::make(p, r);
        const int rr = F.q() - 1;
        for (int a = 0; a < rr; ++a)
            for (int b = 0; b < rr; ++b) {
                if (a == 0 && b == 0) continue;
                for (const auto& dec : all_decompositions(RingPoint::of(a, b, rr)))
                    REQUIRE(verify_binomfact(a, b, dec.N, Direction(dec.w), F));
            }
    }
}

TEST_CASE("Z/6 counterexample vectors still factor the binomial") {
    // three lines through (0,0),(2,0) mod 6 yet each direction works in
    // F_7[x,y]/<x^6-1, y^6-1>
    auto F7 = FieldSpec::make(7, 1);
    for (auto [u, v] : {std::pair{1, 0}, {1, 3}, {4, 3}})
        REQUIRE(verify_binomfact(2, 0, 2, Direction(RingPoint::of(u, v, 6)), F7));
}

TEST_CASE("bad_configuration_scan: collinear triple flagged") {
    auto F9 = FieldSpec::make(3, 2);
    auto scan = bad_configuration_scan(raw_set(2, 9, {{0, 0}, {3, 1}, {1, 3}}), F9);
    REQUIRE(scan.collinear.size() >= 1);
    bool found = false;
    for (const auto& flag : scan.collinear)
        if (flag.subset.size() == 3 && flag.frobenius_power == 0) found = true;
    REQUIRE(found);
}

TEST_CASE("bad_configuration_scan: Frobenius set is collinear in the ring plane") {
    // {(1,0),(0,1),(3,6)} mod 8 lies on (1,0) + R(7,1): (3,6) = (1,0) + 6*(7,1).
    // (3,6) - (1,0) = (2,6) = 2*(1,3) is not in B, so the pair is a neighbor
    // pair with N = 2 and the bound 64 - 2*8 = 48.
    auto F9 = FieldSpec::make(3, 2);
    auto S = raw_set(2, 9, {{1, 0}, {0, 1}, {3, 6}});
    REQUIRE(is_neighbor(S.points[0], S.points[2]));
    auto scan = bad_configuration_scan(S, F9, true);
    REQUIRE(scan.neighbor.has_value());
    REQUIRE(scan.neighbor->decomposition[0].N == 2);
    REQUIRE(scan.neighbor->bound == 48);
    REQUIRE_FALSE(scan.collinear.empty());
    bool direct = false;
    for (const auto& flag : scan.collinear)
        if (flag.frobenius_power == 0 && flag.subset.size() == 3) direct = true;
    REQUIRE(direct);
    // exact distance matches the Frobenius factorization's 24 zeros
    auto G = build_generator(S, F9);
    REQUIRE(min_distance(G, F9).d == 40);
}

TEST_CASE("bad_configuration_scan: two points differing by a B-vector") {
    auto F9 = FieldSpec::make(3, 2);
    auto scan = bad_configuration_scan(raw_set(2, 9, {{0, 0}, {1, 4}}), F9);
    REQUIRE(scan.neighbor.has_value());
    REQUIRE(scan.neighbor->decomposition[0].N == 1);
    REQUIRE(scan.neighbor->bound == 56);
    REQUIRE(scan.collinear.empty());
    REQUIRE_FALSE(scan.parallelogram.has_value());
}

TEST_CASE("exact d never exceeds an emitted bound (randomized suite)") {
    Xorshift64 rng(20240817);
    int checked = 0;
    for (auto [p, r] : {std::pair{5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        auto F = FieldSpec::make(p, r);
        const int rr = F.q() - 1;
        for (int trial = 0; trial < 12; ++trial) {
            int k = 2 + static_cast<int>(rng.below(3));
            std::set<RingPoint> pts;
            while (static_cast<int>(pts.size()) < k)
                pts.insert(RingPoint::of(static_cast<int>(rng.below(rr)),
                                         static_cast<int>(rng.below(rr)), rr));
            ExponentSet S(2, F.q(), PointSet(pts.begin(), pts.end()));
            auto scan = bad_configuration_scan(S, F);
            auto G = build_generator(S, F);
            long long d = min_distance(G, F).d;
            if (scan.neighbor) REQUIRE(d <= scan.neighbor->bound);
            if (scan.parallelogram) REQUIRE(d <= scan.parallelogram->bound);
            ++checked;
        }
    }
    REQUIRE(checked == 48);
}
