#pragma once

#include "chipfire/dhar.hpp"
#include "chipfire/trace.hpp"

#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace chipfire {

/// Steps a strategy may hand to the runner.
struct StepFire {
    FiringSpec spec; // must be legal with maximal epsilon
};
struct StepDeclareLimit {
    unsigned level = 1;   // nesting depth; the clock jumps to the next w^level
    Divisor limit;        // exact limit divisor, same degree as the current one
    QF2 tail_length;      // total length of the skipped infinite tail
    QF2 ratio;            // self-similarity ratio justifying the closed form
    std::string note;
};
struct StepDone {};
/// Announces detected non-termination without passing to the limit; used when
/// a scripted run recognizes exact self-similarity but is configured to stop.
struct StepDetectNonTerminating {
    std::string reason;
    QF2 predicted_total_length;
    bool total_known = false;
};

using StrategyStep =
    std::variant<StepFire, StepDeclareLimit, StepDone, StepDetectNonTerminating>;

/// A reduction strategy: asked repeatedly for the next move given the current
/// divisor and the trace so far. Fire steps must be maximal legal firings.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual StrategyStep next(const MetricGraph& g, const Divisor& d, const Trace& so_far) = 0;
    virtual std::string name() const = 0;
};

struct RunBudget {
    long long max_fires = 100000;
    int max_limits = 64;
};

/// Raised when a strategy breaks its contract (illegal or non-maximal firing,
/// malformed limit declaration). Distinct from budget exhaustion.
class strategy_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void charge_lengths(Trace& t, const MetricGraph& g, const FiringSpec& spec) {
    t.cumulative_length += spec.epsilon;
    std::set<VertexId> touched;
    for (const auto& [c, src] : spec.sources) {
        touched.insert(g.edge(c.edge).u);
        touched.insert(g.edge(c.edge).v);
    }
    for (VertexId w : touched) t.per_vertex_length[w] += spec.epsilon;
}

} // namespace detail

/// Install a declared limit: verifies degree conservation and effectiveness,
/// advances the clock to the next w^level, and records the marker with its
/// divisor snapshot.
inline void pass_to_limit(const MetricGraph& g, Divisor& d, Ordinal& clock, Trace& t,
                          const StepDeclareLimit& decl) {
    if (decl.level < 1)
        throw strategy_violation("limit level must be >= 1");
    if (decl.limit.degree() != d.degree())
        throw strategy_violation("limit divisor changes the degree");
    if (!decl.limit.is_effective_away_from(g.basepoint()))
        throw strategy_violation("limit divisor is negative away from q");
    if (decl.tail_length.sign() < 0)
        throw strategy_violation("limit tail length is negative");
    if (decl.ratio.sign() < 0 || decl.ratio >= QF2(1))
        throw strategy_violation("self-similarity ratio must lie in [0,1)");
    d = decl.limit;
    clock = clock.next_limit(decl.level);
    t.cumulative_length += decl.tail_length;
    TraceStep step{clock,
                   LimitRecord{decl.level, decl.limit, decl.tail_length, decl.ratio, decl.note},
                   t.cumulative_length,
                   decl.limit};
    t.steps.push_back(std::move(step));
}

/// The transfinite runner: interleaves validated fire steps (clock +1) and
/// limit passages (clock jumps to the next limit ordinal) until the strategy
/// finishes, the budget runs out, or non-termination is detected.
inline Trace run(const MetricGraph& g, const Divisor& d0, Strategy& strategy,
                 RunBudget budget = {}, int snapshot_every = 50) {
    if (!d0.is_effective_away_from(g.basepoint()))
        throw std::invalid_argument("run requires a divisor effective away from q");
    Trace t;
    t.initial = d0;
    t.strategy_name = strategy.name();
    Divisor d = d0;
    Ordinal clock;
    long long fires = 0;
    int limits = 0;
    long long deg = d0.degree();
    while (true) {
        if (fires >= budget.max_fires || limits >= budget.max_limits) {
            t.outcome = Outcome::BudgetExhausted;
            break;
        }
        StrategyStep step = strategy.next(g, d, t);
        if (std::holds_alternative<StepDone>(step)) {
            if (!is_q_reduced(g, d))
                throw strategy_violation("strategy declared Done on an unreduced divisor");
            t.outcome = Outcome::Reduced;
            break;
        }
        if (const auto* det = std::get_if<StepDetectNonTerminating>(&step)) {
            t.outcome = Outcome::NonTerminatingDetected;
            t.detect_reason = det->reason;
            if (det->total_known) {
                t.predicted_total_length = det->predicted_total_length;
                t.predicted_total_known = true;
            }
            break;
        }
        if (const auto* lim = std::get_if<StepDeclareLimit>(&step)) {
            pass_to_limit(g, d, clock, t, *lim);
            ++limits;
            continue;
        }
        const FiringSpec& spec = std::get<StepFire>(step).spec;
        if (!is_legal(g, d, spec))
            throw strategy_violation("strategy emitted an illegal firing");
        QF2 max_eps;
        try {
            max_eps = max_legal_epsilon(g, d, spec.region, spec.sources);
        } catch (const std::exception& ex) {
            throw strategy_violation(std::string("firing rejected: ") + ex.what());
        }
        if (spec.epsilon != max_eps)
            throw strategy_violation("strategy emitted a non-maximal firing");
        d = apply_firing(g, d, spec);
        if (d.degree() != deg)
            throw std::logic_error("degree not conserved by a firing");
        clock = clock.successor();
        ++fires;
        detail::charge_lengths(t, g, spec);
        TraceStep ts{clock, FireRecord{spec}, t.cumulative_length, {}};
        if (snapshot_every > 0 && fires % snapshot_every == 0) ts.snapshot = d;
        t.steps.push_back(std::move(ts));
    }
    t.final_divisor = d;
    t.final_ordinal = clock;
    return t;
}

/// Dhar's algorithm as a strategy: always fire the canonical unburnt region.
class DharStrategy : public Strategy {
public:
    StrategyStep next(const MetricGraph& g, const Divisor& d, const Trace&) override {
        BurnResult b = burn(g, d);
        if (b.fully_burnt()) return StepDone{};
        return StepFire{detail::dhar_spec_from(g, d, b)};
    }
    std::string name() const override { return "dhar"; }
};

/// Seeded random greedy reduction: tries random vertex-set regions with
/// randomly assigned chip sources; falls back to the Dhar firing when no
/// sampled subset admits a legal maximal firing. Every emitted firing is
/// maximal legal, so any run is a greedy reduction.
class RandomLegalStrategy : public Strategy {
public:
    explicit RandomLegalStrategy(std::uint64_t seed) : rng_(seed), seed_(seed) {}

    StrategyStep next(const MetricGraph& g, const Divisor& d, const Trace&) override {
        BurnResult b = burn(g, d);
        if (b.fully_burnt()) return StepDone{};
        int non_q = g.vertex_count() - 1;
        int attempts = std::min(24, 2 * non_q + 4);
        for (int k = 0; k < attempts; ++k) {
            if (auto spec = try_random_subset(g, d, non_q)) return StepFire{*spec};
        }
        return StepFire{detail::dhar_spec_from(g, d, b)};
    }

    std::string name() const override { return "random:" + std::to_string(seed_); }

private:
    std::optional<FiringSpec> try_random_subset(const MetricGraph& g, const Divisor& d,
                                                int non_q) {
        FiringSpec spec;
        std::uniform_int_distribution<int> coin(0, 1);
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
            if (w == g.basepoint()) continue;
            if (coin(rng_)) spec.region.vertices.insert(w);
        }
        if (spec.region.vertices.empty()) {
            std::uniform_int_distribution<int> pick(0, non_q - 1);
            int idx = pick(rng_);
            for (VertexId w = 0, seen = 0; w < g.vertex_count(); ++w) {
                if (w == g.basepoint()) continue;
                if (seen++ == idx) {
                    spec.region.vertices.insert(w);
                    break;
                }
            }
        }
        auto crossings = cut_boundary(g, spec.region);
        if (crossings.empty()) return std::nullopt;
        std::map<Point, long long> capacity;
        for (const Crossing& c : crossings) {
            auto src = pick_source(g, d, c, capacity);
            if (!src) return std::nullopt;
            spec.sources[c] = *src;
        }
        try {
            spec.epsilon = max_legal_epsilon(g, d, spec.region, spec.sources);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return spec;
    }

    // A chip-bearing point on the crossing's edge, at or outward of the
    // crossing, with spare capacity and positive headroom.
    std::optional<Point> pick_source(const MetricGraph& g, const Divisor& d,
                                     const Crossing& c, std::map<Point, long long>& used) {
        std::vector<Point> candidates;
        const Edge& ed = g.edge(c.edge);
        auto consider = [&](const Point& p, const QF2& off) {
            bool outward_ok = c.outward == Crossing::Dir::TowardV ? off >= c.position
                                                                  : off <= c.position;
            if (!outward_ok) return;
            QF2 headroom = c.outward == Crossing::Dir::TowardV ? ed.length - off : off;
            if (headroom.sign() <= 0) return;
            long long free = d.at(p) - used[p];
            if (free > 0) candidates.push_back(p);
        };
        for (const auto& [p, n] : d.chips()) {
            if (n <= 0) continue;
            if (p.is_vertex()) {
                if (p.vertex == ed.u) consider(p, QF2(0));
                else if (p.vertex == ed.v) consider(p, ed.length);
            } else if (p.edge == c.edge) {
                consider(p, p.offset);
            }
        }
        if (candidates.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        Point chosen = candidates[pick(rng_)];
        ++used[chosen];
        return chosen;
    }

    std::mt19937_64 rng_;
    std::uint64_t seed_;
};

} // namespace chipfire
