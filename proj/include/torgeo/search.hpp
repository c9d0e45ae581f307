#pragma once

// Seeded heuristic search for exponent sets S maximizing d(C_S(F_q)).
// Two strategies: pure random sampling and single-swap hill climbing,
// both deterministic given the seed.  bound-first evaluation runs the
// geometric scan and skips the exact enumeration when the derived upper
// bound cannot beat the incumbent.
//
// The candidate stream is driven by xorshift64:
//   x ^= x << 13;  x ^= x >> 7;  x ^= x << 17;
// so any implementation of that recurrence reproduces the same search.

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torgeo/bounds.hpp"
#include "torgeo/common.hpp"
#include "torgeo/gf.hpp"
#include "torgeo/ringgeo.hpp"
#include "torgeo/torcode.hpp"

namespace torgeo {

/// Deterministic 64-bit xorshift generator.
class Xorshift64 {
public:
    explicit Xorshift64(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    uint64_t next() {
        uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return state_ = x;
    }

    /// Uniform value in [0, bound) by rejection (bound > 0).
    uint64_t below(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    uint64_t state_;
};

enum class SearchStrategy { random, local_swap };
enum class EvalMode { exact, bound_first };

struct SearchConfig {
    int q = 0, m = 2, k = 0;
    uint64_t seed = 0;
    long long iterations = 0;
    SearchStrategy strategy = SearchStrategy::random;
    EvalMode eval_mode = EvalMode::bound_first;
    int threads = 0;
    std::optional<long long> budget;
};

/// One exact evaluation, appended to the ledger in evaluation order.
struct LedgerRecord {
    PointSet S;  // canonical (sorted)
    int q = 0, m = 0;
    long long d = 0;
    std::optional<long long> bound;
    uint64_t seed = 0;
    long long iteration = 0;
    std::string timestamp;  // informational; excluded from determinism comparisons
};

struct SearchResult {
    ExponentSet best;
    CodeReport report;
    std::vector<LedgerRecord> ledger;
};

namespace detail {

inline PointSet canonical(PointSet S) {
    std::sort(S.begin(), S.end());
    return S;
}

inline std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Shared candidate evaluation: geometric prune, exact enumeration,
// ledger append, incumbent update.  Returns the exact d when evaluated.
class Evaluator {
public:
    Evaluator(const SearchConfig& cfg, const FieldSpec& F) : cfg_(cfg), F_(F) {}

    std::optional<long long> evaluate(const PointSet& candidate, long long iteration) {
        auto key = canonical(candidate);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        ExponentSet S(cfg_.m, cfg_.q, candidate);
        std::optional<long long> bound;
        if (cfg_.m == 2) {
            auto scan = bad_configuration_scan(S, F_);
            bound = scan.best_bound();
        }
        if (cfg_.eval_mode == EvalMode::bound_first && bound && best_d_ >= 0 &&
            *bound <= best_d_) {
            cache_.emplace(std::move(key), std::nullopt);
            return std::nullopt;  // pruned: cannot beat the incumbent
        }

        auto G = build_generator(S, F_);
        auto rep = min_distance(G, F_, Strategy::scalar_class, cfg_.budget, cfg_.threads);

        LedgerRecord rec;
        rec.S = key;
        rec.q = cfg_.q;
        rec.m = cfg_.m;
        rec.d = rep.d;
        rec.bound = bound;
        rec.seed = cfg_.seed;
        rec.iteration = iteration;
        rec.timestamp = now_iso8601();
        ledger_.push_back(std::move(rec));

        if (rep.d > best_d_ || (rep.d == best_d_ && better_tie(key))) {
            best_d_ = rep.d;
            best_set_ = key;
            best_report_ = rep;
        }
        cache_.emplace(std::move(key), rep.d);
        return rep.d;
    }

    long long best_d() const { return best_d_; }
    const PointSet& best_set() const { return best_set_; }
    const CodeReport& best_report() const { return best_report_; }
    std::vector<LedgerRecord> take_ledger() { return std::move(ledger_); }
    bool has_best() const { return best_d_ >= 0; }

private:
    bool better_tie(const PointSet& key) const { return key < best_set_; }

    const SearchConfig& cfg_;
    const FieldSpec& F_;
    std::map<PointSet, std::optional<long long>> cache_;
    std::vector<LedgerRecord> ledger_;
    long long best_d_ = -1;
    PointSet best_set_;
    CodeReport best_report_;
};

inline PointSet random_subset(Xorshift64& rng, int m, int r, int k) {
    std::set<RingPoint> chosen;
    while (static_cast<int>(chosen.size()) < k) {
        std::vector<int> c(m);
        for (int i = 0; i < m; ++i) c[i] = static_cast<int>(rng.below(r));
        chosen.insert(RingPoint(std::move(c), r));
    }
    return PointSet(chosen.begin(), chosen.end());
}

}  // namespace detail

/// Random sampling: `iterations` fresh k-subsets of [0, q-2]^m, best
/// exact d wins.  Deterministic given cfg.seed.
inline SearchResult random_search(const SearchConfig& cfg, const FieldSpec& F,
                                  std::optional<PointSet> seed_candidate = std::nullopt) {
    if (cfg.q != F.q()) fail(errc::dimension_mismatch, "config and field disagree on q");
    const int r = cfg.q - 1;
    Xorshift64 rng(cfg.seed);
    detail::Evaluator eval(cfg, F);

    long long iteration = 0;
    if (seed_candidate) eval.evaluate(*seed_candidate, iteration++);
    for (; iteration <= cfg.iterations; ++iteration)
        eval.evaluate(detail::random_subset(rng, cfg.m, r, cfg.k), iteration);

    if (!eval.has_best()) fail(errc::bad_input, "no candidate was exactly evaluated");
    SearchResult res{ExponentSet(cfg.m, cfg.q, eval.best_set()), eval.best_report(),
                     eval.take_ledger()};
    return res;
}

/// Single-swap hill climb from `start`: each step replaces one random
/// member with a random non-member, accepting when exact d does not
/// decrease (ties broken toward fewer geometric flags handled upstream
/// by the bound, then lexicographically smallest canonical S).
inline SearchResult local_swap_search(const SearchConfig& cfg, const FieldSpec& F,
                                      const PointSet& start) {
    if (cfg.q != F.q()) fail(errc::dimension_mismatch, "config and field disagree on q");
    if (static_cast<int>(start.size()) != cfg.k)
        fail(errc::bad_input, "start set size must equal k");
    const int r = cfg.q - 1;
    Xorshift64 rng(cfg.seed);
    detail::Evaluator eval(cfg, F);

    PointSet current = detail::canonical(start);
    auto current_d = eval.evaluate(current, 0);

    for (long long iteration = 1; iteration <= cfg.iterations; ++iteration) {
        size_t out_idx = static_cast<size_t>(rng.below(current.size()));
        std::vector<int> c(cfg.m);
        for (int i = 0; i < cfg.m; ++i) c[i] = static_cast<int>(rng.below(r));
        RingPoint incoming(std::move(c), r);
        if (std::find(current.begin(), current.end(), incoming) != current.end()) continue;

        PointSet candidate = current;
        candidate[out_idx] = incoming;
        candidate = detail::canonical(candidate);
        auto d = eval.evaluate(candidate, iteration);
        if (!d) continue;  // pruned
        if (!current_d || *d > *current_d ||
            (*d == *current_d && candidate < current)) {
            current = std::move(candidate);
            current_d = d;
        }
    }

    if (!eval.has_best()) fail(errc::bad_input, "no candidate was exactly evaluated");
    SearchResult res{ExponentSet(cfg.m, cfg.q, eval.best_set()), eval.best_report(),
                     eval.take_ledger()};
    return res;
}

}  // namespace torgeo
