#ifndef WEYL_SCALAR_HPP
#define WEYL_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace weyl
{

using Rational = mpq_class;

/// Parses "a", "-a" or "a/b" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational &q);

Rational factorial(int n);
Rational binomial(int n, int k);

// Exact complex rationals. Multiplication takes a fast path when both operands are real,
// which is the common case for symbols of self-adjoint operators.
class GaussianRational
{
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational &real() const { return re_; }
    const Rational &imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    GaussianRational &operator+=(const GaussianRational &o);
    GaussianRational &operator-=(const GaussianRational &o);
    GaussianRational &operator*=(const GaussianRational &o);
    GaussianRational &operator/=(const GaussianRational &o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
    GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Integer power of i/2 scaled by nothing else: (i/2)^k.
GaussianRational half_i_power(int k);
GaussianRational pow(const GaussianRational &z, int k);

/// "3", "-1/8", "1/2+3/4*i", "-i".
std::string to_string(const GaussianRational &z);
GaussianRational parse_gaussian(std::string_view re, std::string_view im);

} // namespace weyl

#endif
