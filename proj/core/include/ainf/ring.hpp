#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ainf {

using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact coefficient ring. Scalars are stored as rationals; over F_p they are
// kept reduced to the canonical residues 0..p-1, over Z they stay integral.
class Ring {
public:
    enum class Kind { rationals, prime_field, integers };

    Ring() = default;
    static Ring rationals() { return Ring(Kind::rationals, 0); }
    static Ring integers() { return Ring(Kind::integers, 0); }
    static Ring prime_field(std::int64_t p);

    Kind kind() const { return kind_; }
    std::int64_t p() const { return p_; }
    bool is_field() const { return kind_ != Kind::integers; }
    std::string name() const;

    Scalar normalize(const Scalar& a) const;
    Scalar from_int(std::int64_t v) const { return normalize(Scalar(v)); }
    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
    Scalar neg(const Scalar& a) const { return normalize(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    static bool is_zero(const Scalar& a) { return a == 0; }

    // (-1)^e as a ring element
    Scalar sign(long long e) const { return (e % 2 == 0) ? one() : neg(one()); }

    bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

private:
    Ring(Kind k, std::int64_t p) : kind_(k), p_(p) {}
    Kind kind_ = Kind::rationals;
    std::int64_t p_ = 0;
};

bool is_prime(std::int64_t p);
std::string scalar_to_string(const Scalar& s);

class NotAField : public std::runtime_error {
public:
    explicit NotAField(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ainf
