#pragma once

// Exact coefficient arithmetic.  Two models of the same interface: prime
// fields F_p with machine-word elements, and arbitrary-precision rationals.
// Everything downstream is a template over one of these.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "hhsmash/errors.hpp"

namespace hhsmash {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Runtime description of the coefficient field: characteristic 0 means the
// rationals, otherwise a prime p.
struct FieldSpec {
    std::uint64_t characteristic = 0;

    static FieldSpec rationals() { return FieldSpec{0}; }

    static FieldSpec prime(std::uint64_t p) {
        if (!is_prime(p))
            throw StructuralError("field characteristic " + std::to_string(p) + " is not prime");
        if (p >= (std::uint64_t(1) << 31))
            throw StructuralError("prime characteristic too large for machine-word arithmetic");
        return FieldSpec{p};
    }

    static FieldSpec of_characteristic(std::uint64_t c) {
        return c == 0 ? rationals() : prime(c);
    }

    bool operator==(const FieldSpec&) const = default;
};

// F_p with p < 2^31 so products fit in a uint64_t before reduction.
class FpField {
public:
    using Elt = std::uint32_t;

    explicit FpField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (!is_prime(p) || p >= (std::uint64_t(1) << 31))
            throw StructuralError("bad prime " + std::to_string(p));
    }

    FieldSpec spec() const { return FieldSpec{p_}; }
    std::uint64_t characteristic() const { return p_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1u % p_; }
    bool is_zero(Elt a) const { return a == 0; }
    bool eq(Elt a, Elt b) const { return a == b; }

    Elt add(Elt a, Elt b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= p_ ? Elt(s - p_) : Elt(s);
    }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : Elt(a + p_ - b); }
    Elt neg(Elt a) const { return a == 0 ? 0 : p_ - a; }
    Elt mul(Elt a, Elt b) const { return Elt(std::uint64_t(a) * b % p_); }

    Elt inv(Elt a) const {
        if (a == 0) throw StructuralError("division by zero in F_p");
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1, r = p_, newr = a;
        while (newr != 0) {
            std::int64_t q = r / newr;
            t -= q * newt; std::swap(t, newt);
            r -= q * newr; std::swap(r, newr);
        }
        if (t < 0) t += p_;
        return Elt(t);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    Elt from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return Elt(r);
    }

    std::string to_string(Elt a) const { return std::to_string(a); }

private:
    std::uint32_t p_;
};

// The rationals with arbitrary-precision arithmetic.
class RatField {
public:
    using Elt = boost::multiprecision::cpp_rational;

    FieldSpec spec() const { return FieldSpec{0}; }
    std::uint64_t characteristic() const { return 0; }

    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    bool is_zero(const Elt& a) const { return a == 0; }
    bool eq(const Elt& a, const Elt& b) const { return a == b; }

    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt inv(const Elt& a) const {
        if (a == 0) throw StructuralError("division by zero");
        return 1 / a;
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }

    Elt from_int(long long v) const { return Elt(v); }

    std::string to_string(const Elt& a) const { return a.str(); }
};

// Parses "n" or "n/d" (both with optional sign) into a field element.
template <class F>
typename F::Elt parse_field_element(const F& field, const std::string& text) {
    auto bad = [&] { throw StructuralError("bad field element '" + text + "'"); };
    std::size_t slash = text.find('/');
    auto parse_ll = [&](const std::string& s) -> long long {
        if (s.empty()) bad();
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (...) {
            bad();
        }
        if (pos != s.size()) bad();
        return v;
    };
    if (slash == std::string::npos) return field.from_int(parse_ll(text));
    long long num = parse_ll(text.substr(0, slash));
    long long den = parse_ll(text.substr(slash + 1));
    if (den == 0) bad();
    return field.div(field.from_int(num), field.from_int(den));
}

} // namespace hhsmash
