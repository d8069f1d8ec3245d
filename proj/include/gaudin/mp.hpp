// Scalar domains: exact rationals (GMP) and multiprecision complex floats (MPFR).
//
// Every multiprecision value carries its own precision; binary operations
// produce a result at the larger of the two operand precisions, so no global
// precision state is involved and values are safe to use from any thread.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace gaudin {

using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Parses "p/q", "p" or a finite decimal such as "-0.25" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class Real {
public:
    explicit Real(unsigned precision_bits = kDefaultPrecisionBits);
    Real(long value, unsigned precision_bits);
    Real(const Rational& value, unsigned precision_bits);
    Real(double value, unsigned precision_bits);
    /// Decimal or scientific notation; throws std::invalid_argument on junk.
    Real(std::string_view decimal, unsigned precision_bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits = 0) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);
    friend Real operator+(const Real& a, const Rational& q);
    friend Real operator-(const Real& a, const Rational& q);
    friend Real operator*(const Real& a, const Rational& q);
    friend Real operator/(const Real& a, const Rational& q);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
/// 2^exponent at the given precision.
Real pow2(long exponent, unsigned precision_bits);
/// 10^exponent at the given precision.
Real pow10(long exponent, unsigned precision_bits);

class Complex {
public:
    explicit Complex(unsigned precision_bits = kDefaultPrecisionBits);
    Complex(Real re, Real im);
    Complex(const Rational& re, unsigned precision_bits);

    unsigned precision() const { return re_.precision() > im_.precision() ? re_.precision() : im_.precision(); }
    const Real& real() const { return re_; }
    const Real& imag() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    Real norm2() const;  // |z|^2
    Real abs() const;
    Complex conj() const;

    Complex& operator+=(const Complex& rhs);
    Complex& operator-=(const Complex& rhs);
    Complex& operator*=(const Complex& rhs);
    Complex& operator/=(const Complex& rhs);

    friend Complex operator+(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a);

    friend Complex operator+(const Complex& a, const Rational& q);
    friend Complex operator-(const Complex& a, const Rational& q);
    friend Complex operator-(const Rational& q, const Complex& a);
    friend Complex operator*(const Complex& a, const Rational& q);
    friend Complex operator*(const Rational& q, const Complex& a) { return a * q; }
    friend Complex operator/(const Complex& a, const Rational& q);
    friend Complex operator/(const Rational& q, const Complex& a);

private:
    Real re_;
    Real im_;
};

// Uniform helpers so templated code can treat both scalar domains alike.

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Complex& c) { return c.is_zero(); }

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Complex zero_like(const Complex& c) { return Complex(c.precision()); }

inline Rational lift_like(const Rational&, const Rational& q) { return q; }
inline Complex lift_like(const Complex& proto, const Rational& q) { return Complex(q, proto.precision()); }

/// |x|^2 as a multiprecision real (exact rationals are rounded at `bits`).
Real magnitude2(const Rational& q, unsigned bits);
Real magnitude2(const Complex& c, unsigned bits);

inline unsigned precision_of(const Rational&) { return 0; }
inline unsigned precision_of(const Complex& c) { return c.precision(); }

/// Scalar-domain tag used in reports: "exact" or "float".
template <class S> constexpr std::string_view domain_name();
template <> constexpr std::string_view domain_name<Rational>() { return "exact"; }
template <> constexpr std::string_view domain_name<Complex>() { return "float"; }

/// Maps an exact scalar into domain S (identity for rationals).
template <class S> S from_rational(const Rational& q, unsigned precision_bits);
template <> inline Rational from_rational<Rational>(const Rational& q, unsigned) { return q; }
template <> inline Complex from_rational<Complex>(const Rational& q, unsigned bits) { return Complex(q, bits); }

} // namespace gaudin
