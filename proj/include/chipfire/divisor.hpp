#pragma once

#include "chipfire/metric_graph.hpp"

#include <map>

namespace chipfire {

/// Finite integer chip configuration over points of the graph. Canonical:
/// zero entries are absent, so equality is configuration equality.
class Divisor {
public:
    Divisor() = default;

    long long at(const Point& p) const {
        auto it = chips_.find(p);
        return it == chips_.end() ? 0 : it->second;
    }

    void add(const Point& p, long long n) {
        if (n == 0) return;
        auto [it, fresh] = chips_.try_emplace(p, 0);
        it->second += n;
        if (it->second == 0) chips_.erase(it);
    }

    const std::map<Point, long long>& chips() const { return chips_; }
    bool empty() const { return chips_.empty(); }

    long long degree() const {
        long long d = 0;
        for (const auto& [p, n] : chips_) d += n;
        return d;
    }

    /// Degree of the part supported away from q (only positive entries count
    /// at q's exclusion; negative chips are only ever allowed at q).
    long long degree_away_from(VertexId q) const {
        long long d = 0;
        for (const auto& [p, n] : chips_)
            if (!(p.is_vertex() && p.vertex == q)) d += n;
        return d;
    }

    bool is_effective_away_from(VertexId q) const {
        for (const auto& [p, n] : chips_)
            if (n < 0 && !(p.is_vertex() && p.vertex == q)) return false;
        return true;
    }

    /// Pointwise sum with re-canonicalization; degree is additive.
    Divisor apply_delta(const Divisor& delta) const {
        Divisor out = *this;
        for (const auto& [p, n] : delta.chips_) out.add(p, n);
        return out;
    }

    bool operator==(const Divisor& o) const { return chips_ == o.chips_; }

    /// Total chips sitting at combinatorial vertices (degree != 2 or q).
    long long chips_at_combinatorial_vertices(const MetricGraph& g) const {
        long long c = 0;
        for (const auto& [p, n] : chips_)
            if (p.is_vertex() && n > 0 && g.is_combinatorial_vertex(p.vertex)) c += n;
        return c;
    }

private:
    std::map<Point, long long> chips_;
};

} // namespace chipfire
