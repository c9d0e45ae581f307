#pragma once

// Generalized toric codes C_S(F_q): generator matrices by monomial
// evaluation over the torus (F_q*)^m, exact minimum distance and weight
// distributions by codeword enumeration.
//
// The enumeration walks messages in a reflected mixed-radix Gray order
// so each step updates the cached codeword by adding one scaled
// generator row.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "torgeo/common.hpp"
#include "torgeo/gf.hpp"
#include "torgeo/ringgeo.hpp"

namespace torgeo {

/// Exponent vectors defining C_S; points live in [0, q-2]^m and must be
/// pairwise distinct after reduction mod q-1 (otherwise the monomials
/// coincide as functions on the torus).
struct ExponentSet {
    int m = 0;
    int q = 0;
    PointSet points;  // RingPoints mod q-1, in input order

    ExponentSet(int m_, int q_, PointSet pts) : m(m_), q(q_), points(std::move(pts)) {
        const int r = q - 1;
        if (r < 2) fail(errc::bad_input, "q must be >= 3");
        for (auto& p : points) {
            if (p.dim() != m || p.r != r)
                fail(errc::dimension_mismatch, "exponent point has wrong dimension or modulus");
        }
        auto sorted = points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(errc::bad_input, "duplicate exponent vectors mod q-1");
    }

    static ExponentSet from_raw(int m, int q, const std::vector<std::vector<int>>& raw) {
        PointSet pts;
        pts.reserve(raw.size());
        for (const auto& v : raw) pts.emplace_back(v, q - 1);
        return ExponentSet(m, q, std::move(pts));
    }
};

/// k x n matrix with entry alpha^<f,e>; stored as discrete logs since no
/// entry is ever zero.  Columns are lexicographic in f, index
/// sum_i f_i (q-1)^(m-i).
struct GeneratorMatrix {
    int q = 0, m = 0, k = 0;
    long long n = 0;
    std::vector<std::vector<uint16_t>> rows;  // rows[i][col] = log of entry

    uint16_t entry_log(int row, long long col) const { return rows[row][col]; }
};

inline GeneratorMatrix build_generator(const ExponentSet& S, const FieldSpec& F) {
    if (S.q != F.q()) fail(errc::dimension_mismatch, "exponent set and field disagree on q");
    GeneratorMatrix G;
    G.q = F.q();
    G.m = S.m;
    G.k = static_cast<int>(S.points.size());
    const int r = G.q - 1;
    long long n = 1;
    for (int i = 0; i < S.m; ++i) n *= r;
    G.n = n;
    G.rows.assign(G.k, std::vector<uint16_t>(n));

    std::vector<int> f(S.m, 0);
    for (long long col = 0; col < n; ++col) {
        for (int i = 0; i < G.k; ++i) {
            long long dot = 0;
            for (int j = 0; j < S.m; ++j) dot += static_cast<long long>(f[j]) * S.points[i].c[j];
            G.rows[i][col] = static_cast<uint16_t>(dot % r);
        }
        // odometer: last coordinate varies fastest (lexicographic order)
        for (int j = S.m - 1; j >= 0; --j) {
            if (++f[j] < r) break;
            f[j] = 0;
        }
    }
    return G;
}

enum class Strategy { full, scalar_class, parallel };

inline std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::full: return "full";
        case Strategy::scalar_class: return "scalar-class";
        case Strategy::parallel: return "parallel";
    }
    return "?";
}

inline std::optional<Strategy> parse_strategy(const std::string& s) {
    if (s == "full") return Strategy::full;
    if (s == "scalar-class") return Strategy::scalar_class;
    if (s == "parallel") return Strategy::parallel;
    return std::nullopt;
}

/// Computed code parameters.  weight_distribution present only when the
/// full enumeration was asked for; witness is one minimum-weight message.
struct CodeReport {
    long long n = 0;
    int k = 0;
    long long d = 0;
    std::optional<std::vector<long long>> weight_distribution;  // A_0..A_n
    std::string method;
    std::optional<std::vector<int>> witness;  // message digits, 0 = zero, v = alpha^(v-1)
    double elapsed_seconds = 0.0;
};

namespace detail {

inline long long symbol_budget() {
    if (const char* env = std::getenv("TORGEO_BUDGET")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 10'000'000'000LL;  // default cap on symbol operations
}

// Reflected mixed-radix Gray walk over radix-q tuples of length t.
// Visits all q^t tuples; after the initial (all-zero) state, step()
// reports the single digit that changed and its old/new values.
class GrayWalker {
public:
    GrayWalker(int t, int q) : q_(q), digits_(t, 0), focus_(t + 1), dir_(t, 1) {
        for (int i = 0; i <= t; ++i) focus_[i] = i;
    }

    const std::vector<int>& digits() const { return digits_; }

    // Returns false when the walk is exhausted.
    bool step(int& pos, int& old_val, int& new_val) {
        int j = focus_[0];
        focus_[0] = 0;
        if (j == static_cast<int>(digits_.size())) return false;
        old_val = digits_[j];
        digits_[j] += dir_[j];
        new_val = digits_[j];
        pos = j;
        if (digits_[j] == 0 || digits_[j] == q_ - 1) {
            dir_[j] = -dir_[j];
            focus_[j] = focus_[j + 1];
            focus_[j + 1] = j + 1;
        }
        return true;
    }

private:
    int q_;
    std::vector<int> digits_;
    std::vector<int> focus_;
    std::vector<int> dir_;
};

// Message digit -> field element: 0 is zero, v>0 is alpha^(v-1).
inline FieldElement digit_to_elem(int v) {
    return v == 0 ? FieldElement::zero() : FieldElement::pow_of(v - 1);
}

struct EnumAccumulator {
    std::vector<long long> hist;  // weights of visited messages
    long long best = -1;
    std::vector<int> witness;
};

// Enumerate one block: messages with digits[0..lead-1] = 0, digit[lead]
// fixed to lead_digit >= 1, free suffix of length k-1-lead walked in
// Gray order.  lead_digit = 1 gives one scalar-class representative per
// message.  If fixed_first >= 0 the first free digit is pinned to that
// value and only the remaining suffix is walked (parallel jobs).  When
// want_distribution is false, per-codeword weight counting aborts once
// the weight reaches the incumbent best.
inline void enumerate_block(const GeneratorMatrix& G, const FieldSpec& F, int lead, int lead_digit,
                            int fixed_first, bool want_distribution, EnumAccumulator& acc) {
    const int k = G.k;
    const long long n = G.n;
    const int qm1 = F.q() - 1;

    std::vector<uint32_t> code(n);
    const int lead_log = lead_digit - 1;
    for (long long j = 0; j < n; ++j)
        code[j] = F.exp_code((lead_log + G.rows[lead][j]) % qm1);

    std::vector<int> message(k, 0);
    message[lead] = lead_digit;

    auto add_scaled_row = [&](int row, FieldElement delta) {
        if (delta.is_zero()) return;
        const auto& R = G.rows[row];
        const int dl = delta.log;
        for (long long j = 0; j < n; ++j)
            code[j] = F.add_code(code[j], F.exp_code((dl + R[j]) % qm1));
    };

    auto record = [&]() {
        long long w = 0;
        if (want_distribution || acc.best < 0) {
            for (long long j = 0; j < n; ++j) w += (code[j] != 0);
        } else {
            for (long long j = 0; j < n; ++j) {
                w += (code[j] != 0);
                if (w >= acc.best) {
                    // cannot improve; skip the rest of the row
                    w = acc.best;  // sentinel: not better
                    break;
                }
            }
        }
        if (want_distribution) acc.hist[w] += 1;
        if (acc.best < 0 || w < acc.best) {
            acc.best = w;
            acc.witness = message;
        }
    };

    int first_free = lead + 1;
    if (fixed_first >= 0) {
        message[first_free] = fixed_first;
        add_scaled_row(first_free, digit_to_elem(fixed_first));
        ++first_free;
    }

    record();
    const int t = k - first_free;
    if (t == 0) return;

    GrayWalker walk(t, F.q());
    int pos, old_val, new_val;
    while (walk.step(pos, old_val, new_val)) {
        const int row = first_free + pos;
        FieldElement delta = F.sub(digit_to_elem(new_val), digit_to_elem(old_val));
        add_scaled_row(row, delta);
        message[row] = new_val;
        record();
    }
}

}  // namespace detail

struct EnumOptions {
    Strategy strategy = Strategy::scalar_class;
    bool want_distribution = false;
    int threads = 0;  // 0 = hardware default (parallel strategy only)
    std::optional<long long> budget_override;
};

/// Exact minimum distance / weight distribution by enumeration.  All
/// strategies return identical results; they differ only in how the
/// message space is traversed.
inline CodeReport enumerate_code(const GeneratorMatrix& G, const FieldSpec& F,
                                 const EnumOptions& opt) {
    const int k = G.k, q = F.q();
    const long long n = G.n;

    long long classes = 0;  // (q^k - 1) / (q - 1), guarded against overflow
    {
        long long acc = 0, pw = 1;
        for (int i = 0; i < k; ++i) {
            acc += pw;
            if (pw > (long long)4e18 / q) { acc = -1; break; }
            pw *= q;
        }
        classes = acc;
    }
    long long messages = (opt.strategy == Strategy::full && classes > 0)
                             ? classes * (q - 1)
                             : classes;
    long long budget = opt.budget_override.value_or(detail::symbol_budget());
    if (classes < 0 || messages > budget / n)
        fail(errc::budget_exceeded, "enumeration needs more than the configured budget of " +
                                        std::to_string(budget) + " symbol operations");

    auto t0 = std::chrono::steady_clock::now();
    detail::EnumAccumulator total;
    if (opt.want_distribution) total.hist.assign(n + 1, 0);

    if (opt.strategy == Strategy::parallel) {
        // jobs: lead 0 split by the value of its first free digit, other
        // leads whole.  Deterministic merge (sum of histograms, min of d).
        struct Job { int lead, fixed_first; };
        std::vector<Job> jobs;
        if (k >= 2)
            for (int v = 0; v < q; ++v) jobs.push_back({0, v});
        else
            jobs.push_back({0, -1});
        for (int lead = 1; lead < k; ++lead) jobs.push_back({lead, -1});

        unsigned nthreads = opt.threads > 0 ? opt.threads : std::thread::hardware_concurrency();
        if (nthreads == 0) nthreads = 1;
        nthreads = std::min<unsigned>(nthreads, jobs.size());

        std::vector<detail::EnumAccumulator> results(jobs.size());
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            size_t i;
            while ((i = next.fetch_add(1)) < jobs.size()) {
                auto& acc = results[i];
                if (opt.want_distribution) acc.hist.assign(n + 1, 0);
                detail::enumerate_block(G, F, jobs[i].lead, 1, jobs[i].fixed_first,
                                        opt.want_distribution, acc);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        total.best = -1;
        for (const auto& accum : results) {
            if (opt.want_distribution)
                for (long long w = 0; w <= n; ++w) total.hist[w] += accum.hist[w];
            if (accum.best >= 0 && (total.best < 0 || accum.best < total.best)) {
                total.best = accum.best;
                total.witness = accum.witness;
            }
        }
    } else if (opt.strategy == Strategy::scalar_class) {
        for (int lead = 0; lead < k; ++lead)
            detail::enumerate_block(G, F, lead, 1, -1, opt.want_distribution, total);
    } else {
        // full: every nonzero message, enumerated as each scalar-class
        // block once per nonzero value of its leading digit.
        for (int lead = 0; lead < k; ++lead)
            for (int s = 1; s <= q - 1; ++s)
                detail::enumerate_block(G, F, lead, s, -1, opt.want_distribution, total);
    }

    CodeReport rep;
    rep.n = n;
    rep.k = k;
    rep.d = total.best;
    rep.method = strategy_name(opt.strategy);
    rep.witness = total.witness;
    if (opt.want_distribution) {
        auto dist = total.hist;
        if (opt.strategy != Strategy::full)
            for (auto& a : dist) a *= (q - 1);  // each class stands for q-1 codewords
        dist[0] += 1;  // the zero codeword
        rep.weight_distribution = std::move(dist);
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline CodeReport min_distance(const GeneratorMatrix& G, const FieldSpec& F,
                               Strategy strategy = Strategy::scalar_class,
                               std::optional<long long> budget = std::nullopt, int threads = 0) {
    EnumOptions opt;
    opt.strategy = strategy;
    opt.want_distribution = false;
    opt.budget_override = budget;
    opt.threads = threads;
    return enumerate_code(G, F, opt);
}

inline CodeReport weight_distribution(const GeneratorMatrix& G, const FieldSpec& F,
                                      Strategy strategy = Strategy::scalar_class,
                                      std::optional<long long> budget = std::nullopt,
                                      int threads = 0) {
    EnumOptions opt;
    opt.strategy = strategy;
    opt.want_distribution = true;
    opt.budget_override = budget;
    opt.threads = threads;
    return enumerate_code(G, F, opt);
}

/// Evaluate sum_e c_e x^e at every torus point, in column order.
inline std::vector<FieldElement> evaluate_combination(
    const std::vector<std::pair<RingPoint, FieldElement>>& coeffs, int m, const FieldSpec& F) {
    const int r = F.q() - 1;
    long long n = 1;
    for (int i = 0; i < m; ++i) n *= r;
    std::vector<FieldElement> out(n, FieldElement::zero());
    std::vector<int> f(m, 0);
    for (long long col = 0; col < n; ++col) {
        uint32_t acc = 0;
        for (const auto& [e, c] : coeffs) {
            if (c.is_zero()) continue;
            if (e.dim() != m || e.r != r) fail(errc::dimension_mismatch, "bad exponent point");
            long long dot = 0;
            for (int j = 0; j < m; ++j) dot += static_cast<long long>(f[j]) * e.c[j];
            int lg = static_cast<int>((dot + c.log) % r);
            acc = F.add_code(acc, F.exp_code(lg));
        }
        out[col] = F.from_code(acc);
        for (int j = m - 1; j >= 0; --j) {
            if (++f[j] < r) break;
            f[j] = 0;
        }
    }
    return out;
}

}  // namespace torgeo
