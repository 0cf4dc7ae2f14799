#pragma once

#include "chipfire/divisor.hpp"

#include <map>
#include <stdexcept>

namespace chipfire {

/// A basic chip-firing move: a fired region, one source chip per boundary
/// crossing, and a push length epsilon. Each source lies on its crossing's
/// edge at the crossing or beyond it on the outward side (the moved interval
/// sits in the complement, like the paper's cut-edge intervals), and pushing
/// it by epsilon must not pass the far endpoint of the edge.
struct FiringSpec {
    Region region;
    std::map<Crossing, Point> sources;
    QF2 epsilon;
};

struct FiringDelta {
    Divisor delta; // -1 at each source, +1 at each destination; degree 0
};

/// Offset of p along edge e (vertices fold to 0 / length). Throws when p does
/// not lie on e.
inline QF2 offset_on_edge(const MetricGraph& g, EdgeId e, const Point& p) {
    const Edge& ed = g.edge(e);
    if (p.is_vertex()) {
        if (p.vertex == ed.u) return QF2(0);
        if (p.vertex == ed.v) return ed.length;
        throw std::invalid_argument("source vertex not on edge " + ed.name);
    }
    if (p.edge != e)
        throw std::invalid_argument("source point not on edge " + ed.name);
    return p.offset;
}

namespace detail {

struct Push {
    Point source;
    Point destination;
};

// Validate one crossing/source pair and compute the landing point.
inline Push resolve_push(const MetricGraph& g, const Crossing& c, const Point& src,
                         const QF2& epsilon) {
    const Edge& ed = g.edge(c.edge);
    QF2 off = offset_on_edge(g, c.edge, src);
    if (c.outward == Crossing::Dir::TowardV) {
        if (off < c.position)
            throw std::invalid_argument("source lies behind the crossing on edge " +
                                        ed.name);
        QF2 headroom = ed.length - off;
        if (epsilon > headroom)
            throw std::invalid_argument("epsilon exceeds edge headroom on " + ed.name);
        return Push{src, point_on_edge(g, c.edge, off + epsilon)};
    }
    if (off > c.position)
        throw std::invalid_argument("source lies behind the crossing on edge " + ed.name);
    if (epsilon > off)
        throw std::invalid_argument("epsilon exceeds edge headroom on " + ed.name);
    return Push{src, point_on_edge(g, c.edge, off - epsilon)};
}

inline void check_sources_match(const std::vector<Crossing>& crossings,
                                const std::map<Crossing, Point>& sources) {
    if (crossings.size() != sources.size())
        throw std::invalid_argument("firing needs exactly one source per crossing");
    for (const Crossing& c : crossings)
        if (!sources.count(c))
            throw std::invalid_argument("missing source for a boundary crossing");
}

} // namespace detail

/// The divisor change Q(f): each crossing's source chip slides epsilon along
/// the outward direction. Total degree is zero by construction.
inline FiringDelta laplacian_divisor(const MetricGraph& g, const FiringSpec& spec) {
    if (spec.epsilon.sign() <= 0)
        throw std::invalid_argument("firing length must be positive");
    std::vector<Crossing> crossings = cut_boundary(g, spec.region);
    detail::check_sources_match(crossings, spec.sources);
    FiringDelta out;
    for (const Crossing& c : crossings) {
        detail::Push push = detail::resolve_push(g, c, spec.sources.at(c), spec.epsilon);
        out.delta.add(push.source, -1);
        out.delta.add(push.destination, +1);
    }
    return out;
}

/// Legal iff applying the move leaves every point other than q non-negative
/// (equivalently, each source point owns as many chips as crossings it feeds).
inline bool is_legal(const MetricGraph& g, const Divisor& d, const FiringSpec& spec) {
    FiringDelta fd;
    try {
        fd = laplacian_divisor(g, spec);
    } catch (const std::exception&) {
        return false;
    }
    return d.apply_delta(fd.delta).is_effective_away_from(g.basepoint());
}

/// Largest legal epsilon for the given region and sources: the minimum over
/// crossings of the exact distance from the source to the far endpoint of its
/// edge along the outward direction. At this length some pushed chip lands
/// exactly on a vertex.
inline QF2 max_legal_epsilon(const MetricGraph& g, const Divisor& d, const Region& region,
                             const std::map<Crossing, Point>& sources) {
    std::vector<Crossing> crossings = cut_boundary(g, region);
    detail::check_sources_match(crossings, sources);
    if (crossings.empty())
        throw std::invalid_argument("region has no boundary to fire across");
    // capacity: decrements per source point must not exceed its chips
    std::map<Point, long long> uses;
    for (const Crossing& c : crossings) ++uses[sources.at(c)];
    for (const auto& [p, n] : uses) {
        bool at_q = p.is_vertex() && p.vertex == g.basepoint();
        if (!at_q && d.at(p) < n)
            throw std::invalid_argument("not enough chips at a source point");
    }
    bool have = false;
    QF2 best;
    for (const Crossing& c : crossings) {
        const Edge& ed = g.edge(c.edge);
        QF2 off = offset_on_edge(g, c.edge, sources.at(c));
        if (c.outward == Crossing::Dir::TowardV) {
            if (off < c.position)
                throw std::invalid_argument("source lies behind the crossing");
        } else {
            if (off > c.position)
                throw std::invalid_argument("source lies behind the crossing");
        }
        QF2 headroom = c.outward == Crossing::Dir::TowardV ? ed.length - off : off;
        if (!have || headroom < best) {
            best = headroom;
            have = true;
        }
    }
    if (best.sign() <= 0)
        throw std::invalid_argument("no legal epsilon > 0 for these sources");
    return best;
}

/// Apply a legal firing; throws naming the violated point otherwise.
inline Divisor apply_firing(const MetricGraph& g, const Divisor& d, const FiringSpec& spec) {
    FiringDelta fd = laplacian_divisor(g, spec);
    Divisor out = d.apply_delta(fd.delta);
    for (const auto& [p, n] : out.chips()) {
        if (n < 0 && !(p.is_vertex() && p.vertex == g.basepoint())) {
            std::string where = p.is_vertex()
                                    ? "vertex " + g.vertex_name(p.vertex)
                                    : "edge " + g.edge(p.edge).name + " at " + p.offset.str();
            throw std::invalid_argument("illegal firing: negative chips at " + where);
        }
    }
    return out;
}

} // namespace chipfire
