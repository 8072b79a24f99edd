#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace madt {

// Exact rational number on 64-bit numerator/denominator with 128-bit
// intermediates.  Always kept normalized (gcd 1, denominator > 0).
// Overflow of the reduced result throws instead of wrapping; the scales used
// in this project (lattice coordinates, small-denominator weights) stay far
// below the limit.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return (double)num_ / (double)den_; }

    // Serialized as "n" for integers and "n/d" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Parses "n" or "n/d" (optionally signed).  Throws on malformed input.
    static Rat parse(const std::string& s);

private:
    long long num_, den_;

    void assign(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n; den_ = d;
    }

    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        const __int128 lim = (__int128)INT64_MAX;
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("Rat: overflow after reduction");
        Rat r; r.num_ = (long long)n; r.den_ = (long long)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

inline Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat: empty string");
    size_t slash = s.find('/');
    auto parse_ll = [](const std::string& t) {
        size_t pos = 0;
        long long v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("Rat: trailing junk in '" + t + "'");
        return v;
    };
    if (slash == std::string::npos) return Rat(parse_ll(s));
    return Rat(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
}

} // namespace madt
