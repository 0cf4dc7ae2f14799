#pragma once

#include "chipfire/qsqrt2.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chipfire {

using VertexId = int;
using EdgeId = int;

struct Edge {
    std::string name;
    VertexId u = -1;
    VertexId v = -1;
    QF2 length;
};

/// Weighted multigraph with a designated basepoint vertex q. Edge lengths are
/// exact Q(sqrt 2) values. Immutable once built; all operations are const.
class MetricGraph {
public:
    VertexId add_vertex(const std::string& name) {
        if (vertex_index_.count(name))
            throw std::invalid_argument("duplicate vertex name: " + name);
        VertexId id = static_cast<VertexId>(vertex_names_.size());
        vertex_names_.push_back(name);
        vertex_index_[name] = id;
        incidence_.emplace_back();
        return id;
    }

    EdgeId add_edge(const std::string& name, VertexId u, VertexId v, QF2 length) {
        if (edge_index_.count(name))
            throw std::invalid_argument("duplicate edge name: " + name);
        if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
            throw std::invalid_argument("edge endpoint out of range");
        EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.push_back(Edge{name, u, v, std::move(length)});
        edge_index_[name] = id;
        incidence_[u].push_back({id, 0});
        incidence_[v].push_back({id, 1});
        return id;
    }

    void set_basepoint(VertexId q) {
        if (q < 0 || q >= vertex_count())
            throw std::invalid_argument("basepoint out of range");
        basepoint_ = q;
    }

    VertexId basepoint() const { return basepoint_; }
    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }

    VertexId vertex(const std::string& name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end())
            throw std::invalid_argument("unknown vertex: " + name);
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return vertex_index_.count(name) > 0; }

    EdgeId edge_id(const std::string& name) const {
        auto it = edge_index_.find(name);
        if (it == edge_index_.end())
            throw std::invalid_argument("unknown edge: " + name);
        return it->second;
    }

    /// Incident (edge, end) pairs; end 0 means this vertex is the edge's u.
    const std::vector<std::pair<EdgeId, int>>& incident(VertexId v) const {
        return incidence_.at(v);
    }

    int vertex_degree(VertexId w) const {
        return static_cast<int>(incidence_.at(w).size());
    }

    /// Degree != 2, or the basepoint itself.
    bool is_combinatorial_vertex(VertexId w) const {
        return w == basepoint_ || vertex_degree(w) != 2;
    }

    /// Structural checks; returns human-readable violations, empty when ok.
    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        if (vertex_count() == 0) {
            bad.push_back("graph has no vertices");
            return bad;
        }
        if (basepoint_ < 0 || basepoint_ >= vertex_count())
            bad.push_back("basepoint is not a vertex");
        for (const Edge& e : edges_) {
            if (e.length.sign() <= 0)
                bad.push_back("non-positive length on edge " + e.name);
            if (e.u == e.v)
                bad.push_back("self-loop on edge " + e.name);
        }
        // connectivity
        std::vector<char> seen(vertex_count(), 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            VertexId w = stack.back();
            stack.pop_back();
            for (auto [e, end] : incidence_[w]) {
                VertexId o = end == 0 ? edges_[e].v : edges_[e].u;
                if (!seen[o]) {
                    seen[o] = 1;
                    stack.push_back(o);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            bad.push_back("not connected");
        return bad;
    }

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::map<std::string, VertexId> vertex_index_;
    std::map<std::string, EdgeId> edge_index_;
    std::vector<std::vector<std::pair<EdgeId, int>>> incidence_;
    VertexId basepoint_ = 0;
};

/// A point of the metric space: a vertex, or an interior position on an edge
/// (offset measured from the edge's stored endpoint u, 0 < offset < length).
/// Offsets equal to 0 or the length normalize to the Vertex form.
struct Point {
    enum class Kind { Vertex, Interior };
    Kind kind = Kind::Vertex;
    VertexId vertex = -1;
    EdgeId edge = -1;
    QF2 offset;

    static Point at_vertex(VertexId v) {
        Point p;
        p.kind = Kind::Vertex;
        p.vertex = v;
        return p;
    }

    bool is_vertex() const { return kind == Kind::Vertex; }

    bool operator==(const Point& o) const {
        if (kind != o.kind) return false;
        if (kind == Kind::Vertex) return vertex == o.vertex;
        return edge == o.edge && offset == o.offset;
    }

    std::strong_ordering operator<=>(const Point& o) const {
        if (kind != o.kind)
            return kind == Kind::Vertex ? std::strong_ordering::less
                                        : std::strong_ordering::greater;
        if (kind == Kind::Vertex) return vertex <=> o.vertex;
        if (edge != o.edge) return edge <=> o.edge;
        return offset <=> o.offset;
    }
};

/// Canonicalizing factory: endpoints fold to vertices.
inline Point point_on_edge(const MetricGraph& g, EdgeId e, const QF2& offset) {
    const Edge& ed = g.edge(e);
    if (offset.sign() < 0 || offset > ed.length)
        throw std::invalid_argument("offset outside edge " + ed.name);
    if (offset.is_zero()) return Point::at_vertex(ed.u);
    if (offset == ed.length) return Point::at_vertex(ed.v);
    Point p;
    p.kind = Point::Kind::Interior;
    p.edge = e;
    p.offset = offset;
    return p;
}

/// Number of tangent directions at p.
inline int point_degree(const MetricGraph& g, const Point& p) {
    if (p.kind == Point::Kind::Interior) {
        if (p.edge < 0 || p.edge >= g.edge_count())
            throw std::invalid_argument("point not on graph");
        return 2;
    }
    if (p.vertex < 0 || p.vertex >= g.vertex_count())
        throw std::invalid_argument("point not on graph");
    return g.vertex_degree(p.vertex);
}

/// Closed sub-segment of an edge; lo == hi is a single point. Degenerate
/// segments arise as Dhar blocker points that are approached from both sides.
struct Segment {
    QF2 lo;
    QF2 hi;
};

/// A fired region: a closed subset of the graph avoiding q, given by inner
/// vertices plus per-edge partial segments. Edges with both endpoints inner
/// belong to the region entirely and carry no explicit segments.
struct Region {
    std::set<VertexId> vertices;
    std::map<EdgeId, std::vector<Segment>> segments;
};

/// One point where the region's boundary meets an edge, with the outward
/// direction (from the region toward the q-side component).
struct Crossing {
    EdgeId edge = -1;
    QF2 position;
    enum class Dir { TowardU, TowardV } outward = Dir::TowardU;

    bool operator==(const Crossing& o) const {
        return edge == o.edge && position == o.position && outward == o.outward;
    }
    std::strong_ordering operator<=>(const Crossing& o) const {
        if (edge != o.edge) return edge <=> o.edge;
        if (auto c = position <=> o.position; c != 0) return c;
        return static_cast<int>(outward) <=> static_cast<int>(o.outward);
    }
};

/// Canonicalize and structurally validate a region: segments sorted, merged,
/// within bounds, attached only to inner vertices, q never inside.
/// Throws on structural violations. Connectivity is not checked here; see
/// region_is_valid for the full cut-formalism contract.
inline Region make_region(const MetricGraph& g, std::set<VertexId> vertices,
                          std::map<EdgeId, std::vector<Segment>> segments) {
    Region r;
    for (VertexId w : vertices) {
        if (w < 0 || w >= g.vertex_count())
            throw std::invalid_argument("region vertex out of range");
        if (w == g.basepoint())
            throw std::invalid_argument("region contains the basepoint");
    }
    r.vertices = std::move(vertices);
    for (auto& [e, segs] : segments) {
        if (e < 0 || e >= g.edge_count())
            throw std::invalid_argument("region segment on unknown edge");
        const Edge& ed = g.edge(e);
        if (r.vertices.count(ed.u) && r.vertices.count(ed.v))
            continue; // full edge, implied
        std::vector<Segment> ss = segs;
        std::sort(ss.begin(), ss.end(),
                  [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
        std::vector<Segment> merged;
        for (const Segment& s : ss) {
            if (s.lo.sign() < 0 || s.hi > ed.length || s.lo > s.hi)
                throw std::invalid_argument("segment outside edge " + ed.name);
            if (!merged.empty() && s.lo <= merged.back().hi) {
                if (merged.back().hi < s.hi) merged.back().hi = s.hi;
            } else {
                merged.push_back(s);
            }
        }
        if (merged.empty()) continue;
        if (merged.front().lo.is_zero() && !r.vertices.count(ed.u))
            throw std::invalid_argument("segment touches non-inner vertex " +
                                        g.vertex_name(ed.u));
        if (merged.back().hi == ed.length && !r.vertices.count(ed.v))
            throw std::invalid_argument("segment touches non-inner vertex " +
                                        g.vertex_name(ed.v));
        r.segments[e] = std::move(merged);
    }
    return r;
}

inline bool region_empty(const Region& r) {
    return r.vertices.empty() && r.segments.empty();
}

/// Boundary crossings of a structurally valid region, sorted.
inline std::vector<Crossing> cut_boundary(const MetricGraph& g, const Region& r) {
    std::vector<Crossing> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        bool iu = r.vertices.count(ed.u) > 0;
        bool iv = r.vertices.count(ed.v) > 0;
        if (iu && iv) continue; // interior edge of the region
        auto it = r.segments.find(e);
        const std::vector<Segment>* segs = it == r.segments.end() ? nullptr : &it->second;
        bool seg_at_u = segs && !segs->empty() && segs->front().lo.is_zero();
        bool seg_at_v = segs && !segs->empty() && segs->back().hi == ed.length;
        if (iu && !seg_at_u)
            out.push_back(Crossing{e, QF2(0), Crossing::Dir::TowardV});
        if (iv && !seg_at_v)
            out.push_back(Crossing{e, ed.length, Crossing::Dir::TowardU});
        if (segs) {
            for (const Segment& s : *segs) {
                if (!s.lo.is_zero())
                    out.push_back(Crossing{e, s.lo, Crossing::Dir::TowardU});
                if (s.hi != ed.length)
                    out.push_back(Crossing{e, s.hi, Crossing::Dir::TowardV});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Component count of the region's closed point set.
inline int region_component_count(const MetricGraph& g, const Region& r) {
    // Union-find over nodes: inner vertices and segments.
    std::map<VertexId, int> vnode;
    std::vector<int> parent;
    auto fresh = [&]() {
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    };
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (VertexId w : r.vertices) vnode[w] = fresh();
    // full inner edges join endpoints
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (r.vertices.count(ed.u) && r.vertices.count(ed.v))
            unite(vnode[ed.u], vnode[ed.v]);
    }
    for (const auto& [e, segs] : r.segments) {
        const Edge& ed = g.edge(e);
        for (const Segment& s : segs) {
            int n = fresh();
            if (s.lo.is_zero()) unite(n, vnode[ed.u]);
            if (s.hi == ed.length) unite(n, vnode[ed.v]);
        }
    }
    std::set<int> roots;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

// Component count of the complement (points of the graph not in the region).
// Complement pieces never connect through region points, so a gap adjacent
// to an inner vertex stays separate from gaps on other edges.
inline int complement_component_count(const MetricGraph& g, const Region& r) {
    std::map<VertexId, int> vnode;
    std::vector<int> parent;
    auto fresh = [&]() {
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    };
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (VertexId w = 0; w < g.vertex_count(); ++w)
        if (!r.vertices.count(w)) vnode[w] = fresh();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        bool iu = r.vertices.count(ed.u) > 0;
        bool iv = r.vertices.count(ed.v) > 0;
        if (iu && iv) continue; // whole edge inside region
        auto it = r.segments.find(e);
        static const std::vector<Segment> none;
        const std::vector<Segment>& segs =
            it == r.segments.end() ? none : it->second;
        // gaps = complement intervals of the region segments along this edge
        std::vector<Segment> gaps;
        QF2 cursor(0);
        for (const Segment& s : segs) {
            if (cursor < s.lo) gaps.push_back(Segment{cursor, s.lo});
            cursor = s.hi;
        }
        if (cursor < ed.length) gaps.push_back(Segment{cursor, ed.length});
        for (const Segment& gap : gaps) {
            int node = fresh();
            if (gap.lo.is_zero() && !iu) unite(node, vnode[ed.u]);
            if (gap.hi == ed.length && !iv) unite(node, vnode[ed.v]);
        }
    }
    std::set<int> roots;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

} // namespace detail

struct RegionValidity {
    bool ok = false;
    std::string reason;
};

/// Full cut-formalism contract: structurally sound, connected, q-free, and
/// the complement of the region is connected.
inline RegionValidity region_is_valid(const MetricGraph& g, const Region& raw) {
    Region r;
    try {
        r = make_region(g, raw.vertices, raw.segments);
    } catch (const std::exception& ex) {
        return {false, ex.what()};
    }
    if (region_empty(r)) return {false, "region is empty"};
    if (detail::region_component_count(g, r) != 1)
        return {false, "region is not connected"};
    if (detail::complement_component_count(g, r) != 1)
        return {false, "complement is not connected"};
    return {true, ""};
}

} // namespace chipfire
