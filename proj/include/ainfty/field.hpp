#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ainfty {

struct FieldMismatch : std::runtime_error {
    FieldMismatch() : std::runtime_error("scalars belong to different fields") {}
};

/// Element of a prime field F_p.  The modulus travels with the value so that
/// mixed-modulus arithmetic can be rejected at runtime.
class Fp {
  public:
    Fp() : v_(0), p_(0) {}
    Fp(long long v, long long p) : v_(reduce(v, p)), p_(p) {}

    long long value() const { return v_; }
    long long modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return Fp(p_ - v_, p_); }
    Fp operator+(const Fp& o) const { return check(o), Fp(v_ + o.v_, p_); }
    Fp operator-(const Fp& o) const { return check(o), Fp(v_ - o.v_, p_); }
    Fp operator*(const Fp& o) const { return check(o), Fp(v_ * o.v_, p_); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
        // extended Euclid
        long long a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            long long q = a / b;
            long long t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0, p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

    bool operator==(const Fp& o) const { check(o); return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

  private:
    static long long reduce(long long v, long long p) {
        if (p <= 1) throw std::domain_error("modulus must be >= 2");
        long long r = v % p;
        return r < 0 ? r + p : r;
    }
    void check(const Fp& o) const {
        if (p_ != o.p_) throw FieldMismatch();
    }
    long long v_;
    long long p_;
};

/// Arbitrary-precision rational; boost keeps it in lowest terms with
/// positive denominator.  Expression templates are off so arithmetic yields
/// plain values.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline bool scalar_is_zero(const Fp& a) { return a.is_zero(); }
inline bool scalar_is_zero(const Rat& a) { return a == 0; }

inline Fp scalar_inverse(const Fp& a) { return a.inverse(); }
inline Rat scalar_inverse(const Rat& a) {
    if (a == 0) throw std::domain_error("inverse of zero");
    return Rat(1) / a;
}

/// Field descriptor: the piece of runtime state (the modulus) needed to make
/// scalars out of integers or strings.
template <class K>
struct Field;

template <>
struct Field<Fp> {
    long long p = 0;
    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp from_long(long long n) const { return Fp(n, p); }
    long long characteristic() const { return p; }
    Fp parse(const std::string& s) const {
        std::size_t pos = 0;
        long long n = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad F_p coefficient: " + s);
        return Fp(n, p);
    }
    static std::string to_string(const Fp& a) { return std::to_string(a.value()); }
    bool operator==(const Field& o) const { return p == o.p; }
};

template <>
struct Field<Rat> {
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_long(long long n) const { return Rat(n); }
    long long characteristic() const { return 0; }
    Rat parse(const std::string& s) const {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rat(boost::multiprecision::cpp_int(s));
        boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(num, den);
    }
    static std::string to_string(const Rat& a) { return a.str(); }
    bool operator==(const Field&) const { return true; }
};

}  // namespace ainfty
