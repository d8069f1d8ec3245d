#include "gaudin/mp.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace gaudin {

namespace {

mpfr_prec_t clamp_prec(unsigned bits) {
    return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(bits));
}

unsigned max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

} // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find_first_of(".eE") != std::string::npos) {
        // Finite decimal: split mantissa and exponent and build p / 10^d exactly.
        std::size_t epos = s.find_first_of("eE");
        std::string mant = s.substr(0, epos);
        long exp10 = 0;
        if (epos != std::string::npos) {
            std::size_t used = 0;
            exp10 = std::stol(s.substr(epos + 1), &used);
            if (used != s.size() - epos - 1) throw std::invalid_argument("bad exponent in '" + s + "'");
        }
        std::size_t dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            exp10 -= static_cast<long>(mant.size() - dot - 1);
        }
        if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad decimal '" + s + "'");
        if (digits[0] == '+') digits.erase(0, 1);
        mpz_class num;
        if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad decimal '" + s + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        Rational q = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
        q.canonicalize();
        return q;
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

// --- Real -------------------------------------------------------------------

Real::Real(unsigned precision_bits) {
    mpfr_init2(value_, clamp_prec(precision_bits));
    mpfr_set_zero(value_, 1);
}

Real::Real(long value, unsigned precision_bits) {
    mpfr_init2(value_, clamp_prec(precision_bits));
    mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, unsigned precision_bits) {
    mpfr_init2(value_, clamp_prec(precision_bits));
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(double value, unsigned precision_bits) {
    mpfr_init2(value_, clamp_prec(precision_bits));
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(std::string_view decimal, unsigned precision_bits) {
    mpfr_init2(value_, clamp_prec(precision_bits));
    std::string s(decimal);
    char* end = nullptr;
    bool ok = !s.empty();
    if (ok) {
        mpfr_strtofr(value_, s.c_str(), &end, 10, MPFR_RNDN);
        ok = end != nullptr && *end == '\0';
    }
    if (!ok) {
        mpfr_clear(value_);
        throw std::invalid_argument("bad decimal literal '" + s + "'");
    }
}

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return sign() > 0 ? "inf" : "-inf";
    if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
Real operator+(const Real& a, const Rational& q) {
    Real r(a.precision());
    mpfr_add_q(r.get(), a.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Rational& q) {
    Real r(a.precision());
    mpfr_sub_q(r.get(), a.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Rational& q) {
    Real r(a.precision());
    mpfr_mul_q(r.get(), a.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Rational& q) {
    Real r(a.precision());
    mpfr_div_q(r.get(), a.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow2(long exponent, unsigned precision_bits) {
    Real r(1L, precision_bits);
    mpfr_mul_2si(r.get(), r.get(), exponent, MPFR_RNDN);
    return r;
}

Real pow10(long exponent, unsigned precision_bits) {
    Real r(precision_bits);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent), MPFR_RNDN);
    if (exponent < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
    return r;
}

// --- Complex ----------------------------------------------------------------

Complex::Complex(unsigned precision_bits) : re_(precision_bits), im_(precision_bits) {}

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

Complex::Complex(const Rational& re, unsigned precision_bits) : re_(re, precision_bits), im_(precision_bits) {}

Real Complex::norm2() const { return re_ * re_ + im_ * im_; }

Real Complex::abs() const { return sqrt(norm2()); }

Complex Complex::conj() const { return Complex(re_, -im_); }

Complex& Complex::operator+=(const Complex& rhs) { return *this = *this + rhs; }
Complex& Complex::operator-=(const Complex& rhs) { return *this = *this - rhs; }
Complex& Complex::operator*=(const Complex& rhs) { return *this = *this * rhs; }
Complex& Complex::operator/=(const Complex& rhs) { return *this = *this / rhs; }

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re_ + b.re_, a.im_ + b.im_); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re_ - b.re_, a.im_ - b.im_); }
Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}
Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm2();
    return Complex((a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d);
}
Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }

Complex operator+(const Complex& a, const Rational& q) { return Complex(a.re_ + q, a.im_); }
Complex operator-(const Complex& a, const Rational& q) { return Complex(a.re_ - q, a.im_); }
Complex operator-(const Rational& q, const Complex& a) { return Complex(-(a.re_ - q), -a.im_); }
Complex operator*(const Complex& a, const Rational& q) { return Complex(a.re_ * q, a.im_ * q); }
Complex operator/(const Complex& a, const Rational& q) { return Complex(a.re_ / q, a.im_ / q); }
Complex operator/(const Rational& q, const Complex& a) {
    Real d = a.norm2();
    return Complex(a.re_ * q / d, -(a.im_ * q) / d);
}

Real magnitude2(const Rational& q, unsigned bits) { return Real(Rational(q * q), bits); }
Real magnitude2(const Complex& c, unsigned) { return c.norm2(); }

} // namespace gaudin
