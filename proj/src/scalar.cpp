#include "weyl/scalar.hpp"

#include <cctype>

namespace weyl
{

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    if (s.front() == '+')
        s.erase(s.begin());
    auto body = s.front() == '-' ? std::string_view(s).substr(1) : std::string_view(s);
    auto slash = body.find('/');
    auto digits = [](std::string_view d) {
        if (d.empty())
            return false;
        for (char c : d)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    if (!digits(body.substr(0, slash)) || (slash != std::string_view::npos && !digits(body.substr(slash + 1))))
        throw std::invalid_argument("malformed rational literal: " + s);
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    if (sgn(q.get_den()) == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q) { return q.get_str(); }

Rational factorial(int n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o)
{
    re_ += o.re_;
    if (sgn(o.im_) != 0)
        im_ += o.im_;
    return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o)
{
    re_ -= o.re_;
    if (sgn(o.im_) != 0)
        im_ -= o.im_;
    return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
        return *this;
    }
    Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
    Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational pow(const GaussianRational &z, int k)
{
    if (k < 0)
        return GaussianRational(1) / pow(z, -k);
    GaussianRational result(1);
    for (int n = 0; n < k; ++n)
        result *= z;
    return result;
}

GaussianRational half_i_power(int k) { return pow(GaussianRational(Rational(0), Rational(1, 2)), k); }

std::string to_string(const GaussianRational &z)
{
    if (z.is_real())
        return to_string(z.real());
    std::string im;
    if (z.imag() == 1)
        im = "i";
    else if (z.imag() == -1)
        im = "-i";
    else
        im = to_string(z.imag()) + "*i";
    if (sgn(z.real()) == 0)
        return im;
    return to_string(z.real()) + (im.front() == '-' ? "" : "+") + im;
}

GaussianRational parse_gaussian(std::string_view re, std::string_view im)
{
    return {parse_rational(re), parse_rational(im)};
}

} // namespace weyl
