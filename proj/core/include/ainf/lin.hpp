#pragma once

#include "ainf/ring.hpp"

#include <functional>
#include <map>
#include <utility>

namespace ainf {

// Finitely supported linear combination over a ring, keyed by basis K.
// Zero coefficients are never stored, so equality is structural.
template <class K>
class Lin {
public:
    using map_type = std::map<K, Scalar>;

    Lin() = default;
    explicit Lin(Ring r) : ring_(r) {}
    Lin(Ring r, const K& k, const Scalar& c = Scalar(1)) : ring_(r) { add(k, c); }

    const Ring& ring() const { return ring_; }
    const map_type& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    auto begin() const { return t_.begin(); }
    auto end() const { return t_.end(); }

    Scalar coeff(const K& k) const
    {
        auto it = t_.find(k);
        return it == t_.end() ? Scalar(0) : it->second;
    }

    void add(const K& k, const Scalar& c)
    {
        Scalar v = ring_.normalize(c);
        if (v == 0)
            return;
        auto [it, fresh] = t_.emplace(k, v);
        if (!fresh) {
            it->second = ring_.add(it->second, v);
            if (it->second == 0)
                t_.erase(it);
        }
    }

    void add(const Lin& o, const Scalar& c = Scalar(1))
    {
        for (const auto& [k, v] : o.t_)
            add(k, v * c);
    }

    Lin scaled(const Scalar& c) const
    {
        Lin r(ring_);
        for (const auto& [k, v] : t_)
            r.add(k, v * c);
        return r;
    }

    Lin& operator+=(const Lin& o) { add(o); return *this; }
    Lin& operator-=(const Lin& o) { add(o, Scalar(-1)); return *this; }
    friend Lin operator+(Lin a, const Lin& b) { a += b; return a; }
    friend Lin operator-(Lin a, const Lin& b) { a -= b; return a; }
    Lin operator-() const { return scaled(Scalar(-1)); }

    bool operator==(const Lin& o) const { return t_ == o.t_; }
    bool operator!=(const Lin& o) const { return !(*this == o); }
    bool operator<(const Lin& o) const { return t_ < o.t_; }

    template <class K2, class F>
    Lin<K2> map_keys(F&& f) const
    {
        Lin<K2> r(ring_);
        for (const auto& [k, v] : t_)
            r.add(f(k), v);
        return r;
    }

    // Linear extension of f : K -> Lin<K2>.
    template <class K2, class F>
    Lin<K2> apply(F&& f) const
    {
        Lin<K2> r(ring_);
        for (const auto& [k, v] : t_)
            r.add(f(k), v);
        return r;
    }

private:
    Ring ring_;
    map_type t_;
};

} // namespace ainf
