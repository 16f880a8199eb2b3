#include "ainf/ring.hpp"

namespace ainf {

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

Ring Ring::prime_field(std::int64_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    return Ring(Kind::prime_field, p);
}

std::string Ring::name() const
{
    switch (kind_) {
    case Kind::rationals: return "QQ";
    case Kind::integers: return "ZZ";
    case Kind::prime_field: return "F" + std::to_string(p_);
    }
    return "?";
}

namespace {

BigInt mod_pos(const BigInt& a, const BigInt& p)
{
    BigInt r = a % p;
    if (r < 0)
        r += p;
    return r;
}

// inverse of a modulo p by the extended Euclidean algorithm
BigInt inv_mod(const BigInt& a, const BigInt& p)
{
    BigInt t = 0, nt = 1, r = p, nr = mod_pos(a, p);
    while (nr != 0) {
        BigInt q = r / nr;
        BigInt tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw std::domain_error("element not invertible modulo p");
    return mod_pos(t, p);
}

} // namespace

Scalar Ring::normalize(const Scalar& a) const
{
    if (kind_ == Kind::rationals)
        return a;
    if (kind_ == Kind::integers) {
        if (denominator(a) != 1)
            throw std::domain_error("non-integral scalar over ZZ");
        return a;
    }
    BigInt p(p_);
    BigInt n = mod_pos(numerator(a), p);
    BigInt d = denominator(a);
    if (d == 1)
        return Scalar(n);
    return Scalar(mod_pos(n * inv_mod(d, p), p));
}

Scalar Ring::inv(const Scalar& a) const
{
    if (a == 0)
        throw std::domain_error("division by zero");
    if (kind_ == Kind::integers) {
        if (a == 1 || a == -1)
            return a;
        throw NotAField("inverse of " + scalar_to_string(a) + " does not exist over ZZ");
    }
    if (kind_ == Kind::rationals)
        return Scalar(1) / a;
    return Scalar(inv_mod(numerator(a), BigInt(p_)));
}

std::string scalar_to_string(const Scalar& s)
{
    if (denominator(s) == 1)
        return numerator(s).str();
    return numerator(s).str() + "/" + denominator(s).str();
}

} // namespace ainf
