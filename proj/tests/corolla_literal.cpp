// Literal differential on three-leaf trees with every splitting term carrying
// a plus sign and every label term carrying (-1)^{deg f}. Over F_2 this is the
// free differential; over odd primes it squares to a nonzero multiple of two
// and disagrees with the library. Exit 0 iff it matches and squares to zero.

#include "ainf/tree_category.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace ainf;

namespace {

using Key = std::pair<std::string, std::vector<int>>; // shape, generators in written order
using Sum = std::map<Key, long long>;

const char* corolla = "(*,*,*)";

void add(Sum& s, const Key& k, long long c, long long p)
{
    long long& v = s[k];
    v = ((v + c) % p + p) % p;
    if (v == 0)
        s.erase(k);
}

Sum literal_d(const DGQuiver& q, const Sum& in, long long p)
{
    Sum out;
    for (const auto& [key, c] : in) {
        const auto& [shape, gens] = key;
        if (shape == corolla) {
            add(out, {"((*,*),*)", gens}, c, p);
            add(out, {"(*,(*,*))", gens}, c, p);
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            long long sgn = q.gen(gens[i]).degree % 2 == 0 ? 1 : -1;
            for (const auto& [h, k] : q.d(gens[i])) {
                auto next = gens;
                next[i] = h;
                add(out, {shape, next}, c * sgn * boost::multiprecision::numerator(k).convert_to<long long>(), p);
            }
        }
    }
    return out;
}

Elem to_elem(const TreeCategory& c, const DGQuiver& q, const Sum& s)
{
    Elem e(c.ring());
    for (const auto& [key, k] : s) {
        std::string t = "(" + key.first + " | ";
        for (std::size_t i = 0; i < key.second.size(); ++i)
            t += (i ? "," : "") + q.gen(key.second[i]).name;
        e.add(c.parse_term(t + ")"), Scalar(k));
    }
    return e;
}

} // namespace

int main(int argc, char** argv)
{
    long long p = argc > 1 ? std::atoll(argv[1]) : 7;
    Ring r = Ring::prime_field(p);
    DGQuiver q(r, {"x1", "x2", "x3", "x4"});
    int f1 = q.add("f1", 0, 1, 0), g1 = q.add("g1", 0, 1, 1);
    int f2 = q.add("f2", 1, 2, 1), g2 = q.add("g2", 1, 2, 2);
    int f3 = q.add("f3", 2, 3, -1), g3 = q.add("g3", 2, 3, 0);
    q.set_d(f1, Vec(r, g1));
    q.set_d(f2, Vec(r, g2));
    q.set_d(f3, Vec(r, g3, 2));
    auto c = free_category(q);

    bool ok = true;
    for (const char* shape : {corolla, "((*,*),*)", "(*,(*,*))"}) {
        Sum t;
        add(t, {shape, {f3, f2, f1}}, 1, p);
        Sum d = literal_d(q, t, p);
        Elem lib = m_of(*c, {to_elem(*c, q, t)});
        bool same = lib == to_elem(*c, q, d);
        Sum dd = literal_d(q, d, p);
        std::cout << shape << ": literal = library " << (same ? "yes" : "no") << ", literal d^2 = 0 "
                  << (dd.empty() ? "yes" : "no") << "\n";
        if (!same)
            std::cout << "  literal: " << format(*c, to_elem(*c, q, d)) << "\n  library: " << format(*c, lib) << "\n";
        if (!dd.empty())
            std::cout << "  d^2: " << format(*c, to_elem(*c, q, dd)) << "\n";
        ok = ok && same && dd.empty();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " literal three-leaf differential over F_" << p << "\n";
    return ok ? 0 : 1;
}
