#pragma once

#include "chipfire/firing.hpp"
#include "chipfire/ordinal.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chipfire {

enum class Outcome { Reduced, BudgetExhausted, NonTerminatingDetected };

inline const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Reduced: return "reduced";
    case Outcome::BudgetExhausted: return "budget-exhausted";
    case Outcome::NonTerminatingDetected: return "non-terminating-detected";
    }
    return "?";
}

struct FireRecord {
    FiringSpec spec;
};

/// A limit passage: the exact limit divisor installed at a level-k limit
/// ordinal, with the total length of the skipped tail and the self-similarity
/// ratio justifying the closed form.
struct LimitRecord {
    unsigned level = 1;
    Divisor limit;
    QF2 tail_length;
    QF2 ratio;
    std::string note;
};

struct TraceStep {
    Ordinal ordinal;
    std::variant<FireRecord, LimitRecord> event;
    QF2 cumulative_after;
    std::optional<Divisor> snapshot;
};

/// Full record of a (possibly transfinite) reduction run. cumulative_length
/// sums epsilon over fire steps plus the declared tails of limit passages;
/// per_vertex_length charges each firing's epsilon to the endpoints of its
/// crossing edges (executed firings only).
struct Trace {
    Divisor initial;
    std::vector<TraceStep> steps;
    QF2 cumulative_length;
    std::map<VertexId, QF2> per_vertex_length;
    Outcome outcome = Outcome::BudgetExhausted;
    Divisor final_divisor;
    Ordinal final_ordinal;
    std::string strategy_name;
    std::uint64_t seed = 0;
    // set when the strategy announced detected non-termination
    std::string detect_reason;
    QF2 predicted_total_length;
    bool predicted_total_known = false;

    std::size_t fire_count() const {
        std::size_t n = 0;
        for (const auto& s : steps)
            if (std::holds_alternative<FireRecord>(s.event)) ++n;
        return n;
    }
    std::size_t limit_count() const { return steps.size() - fire_count(); }
};

struct TraceStats {
    QF2 cumulative_length;
    std::map<VertexId, QF2> per_vertex_length;
    std::vector<QF2> epsilons;
    /// For each limit marker, chips sitting at combinatorial vertices at that
    /// instant (from the limit divisor snapshot), paired with the level.
    std::vector<std::pair<unsigned, long long>> limit_combinatorial_chips;
};

inline TraceStats trace_stats(const MetricGraph& g, const Trace& t) {
    TraceStats s;
    s.cumulative_length = t.cumulative_length;
    s.per_vertex_length = t.per_vertex_length;
    for (const auto& step : t.steps) {
        if (const auto* f = std::get_if<FireRecord>(&step.event)) {
            s.epsilons.push_back(f->spec.epsilon);
        } else {
            const auto& l = std::get<LimitRecord>(step.event);
            s.limit_combinatorial_chips.push_back(
                {l.level, l.limit.chips_at_combinatorial_vertices(g)});
        }
    }
    return s;
}

} // namespace chipfire
