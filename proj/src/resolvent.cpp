#include "weyl/resolvent.hpp"

#include <stdexcept>

namespace weyl
{

namespace
{

// Polynomials in a with coefficients in z, indexed by the power of a.
using APoly = std::vector<Polynomial>;

APoly apoly_mul(const APoly &x, const APoly &y, int nvars)
{
    if (x.empty() || y.empty())
        return {};
    APoly r(x.size() + y.size() - 1, Polynomial(nvars));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!x[i].is_zero() && !y[j].is_zero())
                r[i + j] += x[i] * y[j];
    return r;
}

// (a - A)^n as a polynomial in a.
APoly shift_power(const Polynomial &base, int n)
{
    const int nv = base.variables();
    APoly r{Polynomial::constant(nv, 1)};
    const APoly u{-base, Polynomial::constant(nv, 1)};
    for (int k = 0; k < n; ++k)
        r = apoly_mul(r, u, nv);
    return r;
}

void trim(APoly &p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

} // namespace

ResolventSymbol::ResolventSymbol(Polynomial base) : base_(std::move(base)) {}

ResolventSymbol ResolventSymbol::term(const Polynomial &base, const Polynomial &c, int power)
{
    ResolventSymbol r(base);
    r.add(power, c);
    return r;
}

ResolventSymbol ResolventSymbol::constant(const Polynomial &base, const GaussianRational &c)
{
    return term(base, Polynomial::constant(base.variables(), c), 0);
}

ResolventSymbol ResolventSymbol::from_numerator(const Polynomial &base, std::span<const Polynomial> numerator, int m)
{
    if (m < 0)
        throw std::invalid_argument("denominator power must be non-negative");
    // a = u + A, so a^j = sum_i C(j,i) u^i A^{j-i}.
    ResolventSymbol r(base);
    for (std::size_t j = 0; j < numerator.size(); ++j) {
        if (numerator[j].is_zero())
            continue;
        for (int i = 0; i <= static_cast<int>(j); ++i) {
            Polynomial c = numerator[j] * pow(base, static_cast<int>(j) - i) *
                           GaussianRational(binomial(static_cast<int>(j), i));
            r.add(i - m, c);
        }
    }
    return r;
}

void ResolventSymbol::add(int power, const Polynomial &c)
{
    if (c.variables() != base_.variables())
        throw dimension_error("resolvent coefficient lives in a different ring");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(power, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void ResolventSymbol::check_base(const ResolventSymbol &o) const
{
    if (!(base_ == o.base_))
        throw dimension_error("resolvent symbols with different bases");
}

int ResolventSymbol::denominator_power() const
{
    if (terms_.empty())
        return 0;
    return std::max(0, -terms_.begin()->first);
}

std::vector<Polynomial> ResolventSymbol::numerator() const
{
    const int m = denominator_power();
    const int nv = base_.variables();
    APoly out;
    for (const auto &[k, c] : terms_) {
        APoly t = shift_power(base_, k + m);
        for (auto &coef : t)
            coef *= c;
        if (out.size() < t.size())
            out.resize(t.size(), Polynomial(nv));
        for (std::size_t i = 0; i < t.size(); ++i)
            out[i] += t[i];
    }
    trim(out);
    return out;
}

ResolventSymbol &ResolventSymbol::operator+=(const ResolventSymbol &o)
{
    check_base(o);
    for (const auto &[k, c] : o.terms_)
        add(k, c);
    return *this;
}

ResolventSymbol &ResolventSymbol::operator-=(const ResolventSymbol &o)
{
    check_base(o);
    for (const auto &[k, c] : o.terms_)
        add(k, -c);
    return *this;
}

ResolventSymbol &ResolventSymbol::operator*=(const GaussianRational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[k, v] : terms_)
        v *= c;
    return *this;
}

ResolventSymbol operator*(const ResolventSymbol &x, const ResolventSymbol &y)
{
    x.check_base(y);
    ResolventSymbol r(x.base_);
    for (const auto &[kx, cx] : x.terms_)
        for (const auto &[ky, cy] : y.terms_)
            r.add(kx + ky, cx * cy);
    return r;
}

ResolventSymbol ResolventSymbol::operator-() const
{
    ResolventSymbol r(*this);
    for (auto &[k, v] : r.terms_)
        v = -v;
    return r;
}

ResolventSymbol ResolventSymbol::derivative(int var) const
{
    ResolventSymbol r(base_);
    const Polynomial da = base_.derivative(var);
    for (const auto &[k, c] : terms_) {
        r.add(k, c.derivative(var));
        if (k != 0 && !da.is_zero())
            r.add(k - 1, c * da * GaussianRational(-k));
    }
    return r;
}

bool ResolventSymbol::equivalent(const ResolventSymbol &o) const
{
    check_base(o);
    const int nv = base_.variables();
    APoly lhs = apoly_mul(numerator(), shift_power(base_, o.denominator_power()), nv);
    APoly rhs = apoly_mul(o.numerator(), shift_power(base_, denominator_power()), nv);
    trim(lhs);
    trim(rhs);
    return lhs == rhs;
}

GaussianRational ResolventSymbol::evaluate(std::span<const GaussianRational> z, const GaussianRational &a) const
{
    const GaussianRational u = a - base_.evaluate(z);
    GaussianRational sum;
    for (const auto &[k, c] : terms_) {
        if (k < 0 && u.is_zero())
            throw std::domain_error("resolvent symbol evaluated on its pole a = A(z)");
        const GaussianRational uk = k >= 0 ? pow(u, k) : GaussianRational(1) / pow(u, -k);
        sum += c.evaluate(z) * uk;
    }
    return sum;
}

std::string to_string(const ResolventSymbol &r, std::span<const std::string> names)
{
    if (r.is_zero())
        return "0";
    std::string out;
    for (const auto &[k, c] : r.laurent()) {
        if (!out.empty())
            out += " + ";
        out += "(" + to_string(c, names) + ")";
        if (k != 0)
            out += "*u^" + std::to_string(k);
    }
    return out;
}

} // namespace weyl
