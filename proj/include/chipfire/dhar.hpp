#pragma once

#include "chipfire/firing.hpp"
#include "chipfire/trace.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chipfire {

struct Blocker {
    Crossing crossing;
    Point chip;
};

/// Outcome of burning from q: the closed burnt set, the unburnt region (which
/// may have several components or degenerate single-point segments), and the
/// blocking chips sitting on the unburnt boundary.
struct BurnResult {
    std::set<VertexId> burnt_vertices;
    std::map<EdgeId, std::vector<Segment>> burnt_segments;
    Region unburnt;
    std::vector<Blocker> blockers;

    bool fully_burnt() const { return region_empty(unburnt); }
};

/// Fire spreads from q along edges; a point passes the fire iff it is reached
/// from strictly more tangent directions than it has chips. The propagation
/// is a monotone fixed point over the finite event set of vertices and chip
/// positions, so everything stays in exact arithmetic.
inline BurnResult burn(const MetricGraph& g, const Divisor& d) {
    if (!d.is_effective_away_from(g.basepoint()))
        throw std::invalid_argument("burn requires a divisor effective away from q");

    struct ChipPoint {
        QF2 pos;
        long long count;
    };
    std::map<EdgeId, std::vector<ChipPoint>> chips;
    for (const auto& [p, n] : d.chips())
        if (!p.is_vertex()) chips[p.edge].push_back({p.offset, n});
    for (auto& [e, v] : chips)
        std::sort(v.begin(), v.end(),
                  [](const ChipPoint& a, const ChipPoint& b) { return a.pos < b.pos; });

    std::vector<char> vburn(g.vertex_count(), 0);
    vburn[g.basepoint()] = 1;
    std::map<EdgeId, std::vector<char>> cburn;
    for (const auto& [e, v] : chips) cburn[e].assign(v.size(), 0);

    // Flag of the critical point adjacent to the given edge end.
    auto end_neighbor_burnt = [&](EdgeId e, int end) -> bool {
        auto it = chips.find(e);
        const Edge& ed = g.edge(e);
        if (it == chips.end() || it->second.empty())
            return vburn[end == 0 ? ed.v : ed.u];
        const auto& flags = cburn[e];
        return end == 0 ? flags.front() : flags.back();
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [e, pts] : chips) {
            const Edge& ed = g.edge(e);
            auto& flags = cburn[e];
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (flags[j]) continue;
                int dirs = 0;
                if (j == 0 ? vburn[ed.u] : flags[j - 1]) ++dirs;
                if (j + 1 == pts.size() ? vburn[ed.v] : flags[j + 1]) ++dirs;
                if (dirs > pts[j].count) {
                    flags[j] = 1;
                    changed = true;
                }
            }
        }
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
            if (vburn[w]) continue;
            long long arrivals = 0;
            for (auto [e, end] : g.incident(w))
                if (end_neighbor_burnt(e, end)) ++arrivals;
            if (arrivals > d.at(Point::at_vertex(w))) {
                vburn[w] = 1;
                changed = true;
            }
        }
    }

    BurnResult out;
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
        if (vburn[w])
            out.burnt_vertices.insert(w);
        else
            out.unburnt.vertices.insert(w);
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        auto cit = chips.find(e);
        std::vector<QF2> pos{QF2(0)};
        std::vector<char> flag{vburn[ed.u]};
        if (cit != chips.end()) {
            const auto& flags = cburn[e];
            for (std::size_t j = 0; j < cit->second.size(); ++j) {
                pos.push_back(cit->second[j].pos);
                flag.push_back(flags[j]);
            }
        }
        pos.push_back(ed.length);
        flag.push_back(vburn[ed.v]);
        std::size_t n = pos.size();

        // unburnt runs of consecutive unburnt criticals
        for (std::size_t i = 0; i < n;) {
            if (flag[i]) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < n && !flag[j + 1]) ++j;
            bool whole_edge = (i == 0 && j == n - 1);
            bool lone_endpoint = (i == j && (i == 0 || i == n - 1));
            if (!whole_edge && !lone_endpoint)
                out.unburnt.segments[e].push_back(Segment{pos[i], pos[j]});
            i = j + 1;
        }
        // burnt coverage: sub-intervals with a burnt side, merged
        QF2 run_lo;
        bool in_run = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            bool burning = flag[i] || flag[i + 1];
            if (burning && !in_run) {
                run_lo = pos[i];
                in_run = true;
            }
            if (!burning && in_run) {
                out.burnt_segments[e].push_back(Segment{run_lo, pos[i]});
                in_run = false;
            }
        }
        if (in_run) out.burnt_segments[e].push_back(Segment{run_lo, pos[n - 1]});

        // blockers at unburnt chip points facing fire
        if (cit != chips.end()) {
            const auto& flags = cburn[e];
            for (std::size_t j = 0; j < cit->second.size(); ++j) {
                if (flags[j]) continue;
                Point chip = point_on_edge(g, e, cit->second[j].pos);
                bool left = j == 0 ? static_cast<bool>(vburn[ed.u]) : static_cast<bool>(flags[j - 1]);
                bool right = j + 1 == cit->second.size() ? static_cast<bool>(vburn[ed.v])
                                                         : static_cast<bool>(flags[j + 1]);
                if (left)
                    out.blockers.push_back(
                        {Crossing{e, cit->second[j].pos, Crossing::Dir::TowardU}, chip});
                if (right)
                    out.blockers.push_back(
                        {Crossing{e, cit->second[j].pos, Crossing::Dir::TowardV}, chip});
            }
        }
    }
    // blockers at unburnt vertices facing a burnt edge end
    for (VertexId w : out.unburnt.vertices) {
        for (auto [e, end] : g.incident(w)) {
            if (!end_neighbor_burnt(e, end)) continue;
            const Edge& ed = g.edge(e);
            Crossing c = end == 0 ? Crossing{e, QF2(0), Crossing::Dir::TowardV}
                                  : Crossing{e, ed.length, Crossing::Dir::TowardU};
            out.blockers.push_back({c, Point::at_vertex(w)});
        }
    }
    return out;
}

/// q-reduced iff the fire burns through the entirety of the graph.
inline bool is_q_reduced(const MetricGraph& g, const Divisor& d) {
    return burn(g, d).fully_burnt();
}

namespace detail {

inline FiringSpec dhar_spec_from(const MetricGraph& g, const Divisor& d,
                                 const BurnResult& b) {
    FiringSpec spec;
    spec.region = b.unburnt;
    for (const Blocker& bl : b.blockers) spec.sources[bl.crossing] = bl.chip;
    spec.epsilon = max_legal_epsilon(g, d, spec.region, spec.sources);
    return spec;
}

} // namespace detail

/// The canonical maximal legal firing toward q defined by the fire's blockers.
inline FiringSpec dhar_firing(const MetricGraph& g, const Divisor& d) {
    BurnResult b = burn(g, d);
    if (b.fully_burnt())
        throw std::logic_error("dhar_firing called on a q-reduced divisor");
    return detail::dhar_spec_from(g, d, b);
}

/// Repeat Dhar firings until the divisor is q-reduced. Terminates in finitely
/// many iterations; the step cap is a safety net whose violation indicates an
/// engine bug, not a property of the input.
inline std::pair<Divisor, Trace> reduce(const MetricGraph& g, const Divisor& d0,
                                        long long step_cap = 100000,
                                        int snapshot_every = 50) {
    Trace t;
    t.initial = d0;
    t.strategy_name = "dhar";
    Divisor d = d0;
    Ordinal clock;
    long long steps = 0;
    long long deg = d.degree();
    while (true) {
        BurnResult b = burn(g, d);
        if (b.fully_burnt()) break;
        if (steps >= step_cap)
            throw std::runtime_error("dhar reduce exceeded its step cap");
        FiringSpec spec = detail::dhar_spec_from(g, d, b);
        d = apply_firing(g, d, spec);
        if (d.degree() != deg)
            throw std::logic_error("degree not conserved by a firing");
        clock = clock.successor();
        t.cumulative_length += spec.epsilon;
        std::set<VertexId> touched;
        for (const auto& [c, src] : spec.sources) {
            touched.insert(g.edge(c.edge).u);
            touched.insert(g.edge(c.edge).v);
        }
        for (VertexId w : touched) t.per_vertex_length[w] += spec.epsilon;
        TraceStep step{clock, FireRecord{std::move(spec)}, t.cumulative_length, {}};
        ++steps;
        if (snapshot_every > 0 && steps % snapshot_every == 0) step.snapshot = d;
        t.steps.push_back(std::move(step));
    }
    t.outcome = Outcome::Reduced;
    t.final_divisor = d;
    t.final_ordinal = clock;
    return {d, t};
}

} // namespace chipfire
