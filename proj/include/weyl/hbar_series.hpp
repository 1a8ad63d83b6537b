#ifndef WEYL_HBAR_SERIES_HPP
#define WEYL_HBAR_SERIES_HPP

#include <algorithm>
#include <vector>

#include "weyl/errors.hpp"
#include "weyl/polynomial.hpp"

namespace weyl
{

inline int ring_variables(const Polynomial &p) { return p.variables(); }

// Truncated formal power series in hbar, sum_{e <= order} hbar^e c_e, over a symbol algebra
// (polynomials or resolvent symbols). Products discard every power above the truncation order;
// binary operations on series of different orders truncate to the smaller one.
template <class Sym>
class HbarSeries
{
public:
    HbarSeries(int order, const Sym &prototype) : coeffs_(checked(order) + 1, zero_like(prototype)) {}

    static HbarSeries constant(const Sym &s, int order)
    {
        HbarSeries r(order, s);
        r.coeffs_[0] = s;
        return r;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Sym &operator[](int e) const { return coeffs_.at(static_cast<std::size_t>(e)); }
    Sym &operator[](int e) { return coeffs_.at(static_cast<std::size_t>(e)); }
    const std::vector<Sym> &coefficients() const { return coeffs_; }

    bool is_hbar_independent() const
    {
        return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Sym &c) { return is_zero(c); });
    }

    HbarSeries truncated(int order) const
    {
        HbarSeries r(order, coeffs_[0]);
        for (int e = 0; e <= std::min(order, this->order()); ++e)
            r.coeffs_[static_cast<std::size_t>(e)] = coeffs_[static_cast<std::size_t>(e)];
        return r;
    }

    // Multiply by hbar^k, dropping what falls off the end.
    HbarSeries shifted(int k) const
    {
        HbarSeries r(order(), coeffs_[0]);
        for (int e = 0; e + k <= order(); ++e)
            r.coeffs_[static_cast<std::size_t>(e + k)] = coeffs_[static_cast<std::size_t>(e)];
        return r;
    }

    HbarSeries &operator+=(const HbarSeries &o)
    {
        shrink_to(o.order());
        for (int e = 0; e <= order(); ++e)
            coeffs_[static_cast<std::size_t>(e)] += o[e];
        return *this;
    }

    HbarSeries &operator-=(const HbarSeries &o)
    {
        shrink_to(o.order());
        for (int e = 0; e <= order(); ++e)
            coeffs_[static_cast<std::size_t>(e)] -= o[e];
        return *this;
    }

    HbarSeries &operator*=(const GaussianRational &c)
    {
        for (auto &s : coeffs_)
            s *= c;
        return *this;
    }

    friend HbarSeries operator+(HbarSeries a, const HbarSeries &b) { return a += b; }
    friend HbarSeries operator-(HbarSeries a, const HbarSeries &b) { return a -= b; }
    friend HbarSeries operator*(HbarSeries a, const GaussianRational &c) { return a *= c; }
    friend HbarSeries operator*(const GaussianRational &c, HbarSeries a) { return a *= c; }

    friend HbarSeries operator*(const HbarSeries &a, const HbarSeries &b)
    {
        const int n = std::min(a.order(), b.order());
        HbarSeries r(n, a.coeffs_[0]);
        for (int i = 0; i <= n; ++i) {
            if (is_zero(a[i]))
                continue;
            for (int j = 0; i + j <= n; ++j) {
                if (is_zero(b[j]))
                    continue;
                r.coeffs_[static_cast<std::size_t>(i + j)] += a[i] * b[j];
            }
        }
        return r;
    }

    HbarSeries &operator*=(const HbarSeries &o) { return *this = *this * o; }

    friend bool operator==(const HbarSeries &a, const HbarSeries &b) { return a.coeffs_ == b.coeffs_; }

private:
    static std::size_t checked(int order)
    {
        if (order < 0)
            throw std::invalid_argument("truncation order must be non-negative");
        return static_cast<std::size_t>(order);
    }

    void shrink_to(int order)
    {
        if (order < this->order())
            coeffs_.resize(static_cast<std::size_t>(order) + 1);
    }

    std::vector<Sym> coeffs_;
};

template <class Sym>
HbarSeries<Sym> partial_derivative(const HbarSeries<Sym> &s, int var)
{
    HbarSeries<Sym> r(s.order(), s[0]);
    for (int e = 0; e <= s.order(); ++e)
        r[e] = partial_derivative(s[e], var);
    return r;
}

template <class Sym>
HbarSeries<Sym> zero_like(const HbarSeries<Sym> &s)
{
    return HbarSeries<Sym>(s.order(), s[0]);
}

template <class Sym>
HbarSeries<Sym> one_like(const HbarSeries<Sym> &s)
{
    return HbarSeries<Sym>::constant(one_like(s[0]), s.order());
}

template <class Sym>
int degree_bound(const HbarSeries<Sym> &s)
{
    int d = -1;
    for (const auto &c : s.coefficients())
        d = std::max(d, degree_bound(c));
    return d;
}

template <class Sym>
bool is_zero(const HbarSeries<Sym> &s)
{
    return std::all_of(s.coefficients().begin(), s.coefficients().end(), [](const Sym &c) { return is_zero(c); });
}

template <class Sym>
int ring_variables(const HbarSeries<Sym> &s)
{
    return ring_variables(s[0]);
}

using SymbolSeries = HbarSeries<Polynomial>;

inline void check_truncation_order(int order)
{
    if (order < 0 || order > kMaxTruncationOrder)
        throw capacity_error("truncation order must lie in [0, " + std::to_string(kMaxTruncationOrder) + "]");
}

} // namespace weyl

#endif
