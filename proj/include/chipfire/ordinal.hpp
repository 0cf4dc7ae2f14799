#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chipfire {

/// Ordinal below omega^omega in Cantor normal form: a descending list of
/// (exponent, coefficient) terms representing sum of w^e * c. The empty list
/// is 0. Only the operations the transfinite runner needs exist: successor
/// and the jump to the next multiple of w^k.
class Ordinal {
public:
    using Term = std::pair<unsigned, std::uint64_t>; // (exponent, coefficient >= 1)

    Ordinal() = default;

    static Ordinal finite(std::uint64_t n) {
        Ordinal o;
        if (n > 0) o.terms_.push_back({0, n});
        return o;
    }

    static Ordinal omega_power(unsigned exp, std::uint64_t coeff = 1) {
        Ordinal o;
        if (coeff > 0) o.terms_.push_back({exp, coeff});
        return o;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    unsigned max_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }

    /// o + 1: bump the w^0 coefficient.
    Ordinal successor() const {
        Ordinal o = *this;
        if (!o.terms_.empty() && o.terms_.back().first == 0)
            ++o.terms_.back().second;
        else
            o.terms_.push_back({0, 1});
        return o;
    }

    /// Least multiple of w^k strictly greater than this ordinal: keep the
    /// terms with exponent >= k and add one more w^k.
    Ordinal next_limit(unsigned k) const {
        if (k == 0)
            throw std::invalid_argument("next_limit level must be >= 1");
        Ordinal o;
        for (const Term& t : terms_)
            if (t.first >= k) o.terms_.push_back(t);
        if (!o.terms_.empty() && o.terms_.back().first == k)
            ++o.terms_.back().second;
        else
            o.terms_.push_back({k, 1});
        return o;
    }

    bool operator==(const Ordinal& o) const { return terms_ == o.terms_; }

    std::strong_ordering operator<=>(const Ordinal& o) const {
        std::size_t n = std::min(terms_.size(), o.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (terms_[i].first != o.terms_[i].first)
                return terms_[i].first <=> o.terms_[i].first;
            if (terms_[i].second != o.terms_[i].second)
                return terms_[i].second <=> o.terms_[i].second;
        }
        return terms_.size() <=> o.terms_.size();
    }

    /// Text form: terms joined by '+', descending; "w^E*C" with "*C" omitted
    /// when C is 1 and "w^E" collapsed to the plain coefficient at E = 0.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += "+";
            auto [e, c] = terms_[i];
            if (e == 0) {
                s += std::to_string(c);
            } else {
                s += "w^" + std::to_string(e);
                if (c != 1) s += "*" + std::to_string(c);
            }
        }
        return s;
    }

    static Ordinal parse(const std::string& s) {
        if (s == "0") return Ordinal();
        if (s.empty()) throw std::invalid_argument("empty ordinal");
        Ordinal o;
        std::size_t i = 0;
        auto digits = [&]() {
            std::size_t start = i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            if (i == start) throw std::invalid_argument("bad ordinal: " + s);
            return std::stoull(s.substr(start, i - start));
        };
        while (i < s.size()) {
            unsigned exp = 0;
            std::uint64_t coeff = 1;
            if (s[i] == 'w') {
                ++i;
                if (i >= s.size() || s[i] != '^')
                    throw std::invalid_argument("bad ordinal: " + s);
                ++i;
                exp = static_cast<unsigned>(digits());
                if (i < s.size() && s[i] == '*') {
                    ++i;
                    coeff = digits();
                }
            } else {
                coeff = digits();
            }
            if (!o.terms_.empty() && o.terms_.back().first <= exp)
                throw std::invalid_argument("ordinal terms not descending: " + s);
            if (coeff == 0) throw std::invalid_argument("zero coefficient: " + s);
            o.terms_.push_back({exp, coeff});
            if (i < s.size()) {
                if (s[i] != '+') throw std::invalid_argument("bad ordinal: " + s);
                ++i;
                if (i == s.size()) throw std::invalid_argument("bad ordinal: " + s);
            }
        }
        return o;
    }

private:
    std::vector<Term> terms_;
};

struct OrdinalSuccessor {};
struct OrdinalNextLimit {
    unsigned level;
};

/// Spec-shaped advance: successor or jump to the next limit of a given level.
inline Ordinal ordinal_advance(const Ordinal& o, OrdinalSuccessor) { return o.successor(); }
inline Ordinal ordinal_advance(const Ordinal& o, OrdinalNextLimit m) {
    return o.next_limit(m.level);
}

} // namespace chipfire
