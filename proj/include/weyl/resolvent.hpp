#ifndef WEYL_RESOLVENT_HPP
#define WEYL_RESOLVENT_HPP

#include <climits>
#include <map>
#include <span>
#include <vector>

#include "weyl/polynomial.hpp"

namespace weyl
{

// Rational symbol N(z, a) / (a - A(z))^m for a fixed polynomial base A and a formal spectral
// parameter a.
//
// Stored as a Laurent polynomial sum_k c_k(z) u^k in u = a - A(z). Since a is free, u is
// algebraically independent of z, so this form is unique once zero c_k are dropped; equality
// of stored forms is equality of rational functions.
class ResolventSymbol
{
public:
    explicit ResolventSymbol(Polynomial base);

    // c(z) * u^power.
    static ResolventSymbol term(const Polynomial &base, const Polynomial &c, int power);
    static ResolventSymbol constant(const Polynomial &base, const GaussianRational &c);
    // (sum_j numerator[j](z) a^j) / (a - A)^m.
    static ResolventSymbol from_numerator(const Polynomial &base, std::span<const Polynomial> numerator, int m);

    const Polynomial &base() const { return base_; }
    const std::map<int, Polynomial> &laurent() const { return terms_; }
    int variables() const { return base_.variables(); }
    bool is_zero() const { return terms_.empty(); }

    // Smallest m with (a - A)^m * this polynomial in a.
    int denominator_power() const;
    // Coefficients (in z) of the numerator over (a - A)^denominator_power(), indexed by power of a.
    std::vector<Polynomial> numerator() const;

    ResolventSymbol &operator+=(const ResolventSymbol &o);
    ResolventSymbol &operator-=(const ResolventSymbol &o);
    ResolventSymbol &operator*=(const GaussianRational &c);
    friend ResolventSymbol operator+(ResolventSymbol x, const ResolventSymbol &y) { return x += y; }
    friend ResolventSymbol operator-(ResolventSymbol x, const ResolventSymbol &y) { return x -= y; }
    friend ResolventSymbol operator*(const ResolventSymbol &x, const ResolventSymbol &y);
    friend ResolventSymbol operator*(ResolventSymbol x, const GaussianRational &c) { return x *= c; }
    friend ResolventSymbol operator*(const GaussianRational &c, ResolventSymbol x) { return x *= c; }
    ResolventSymbol operator-() const;
    ResolventSymbol &operator*=(const ResolventSymbol &o) { return *this = *this * o; }

    friend bool operator==(const ResolventSymbol &x, const ResolventSymbol &y)
    {
        return x.base_ == y.base_ && x.terms_ == y.terms_;
    }

    ResolventSymbol derivative(int var) const;

    // Cross-multiplied comparison N1 (a-A)^m2 == N2 (a-A)^m1 on the numerator form.
    bool equivalent(const ResolventSymbol &o) const;

    // Value at phase point z and spectral parameter a; throws std::domain_error at a pole.
    GaussianRational evaluate(std::span<const GaussianRational> z, const GaussianRational &a) const;

private:
    void check_base(const ResolventSymbol &o) const;
    void add(int power, const Polynomial &c);

    Polynomial base_;
    std::map<int, Polynomial> terms_;
};

inline ResolventSymbol partial_derivative(const ResolventSymbol &r, int var) { return r.derivative(var); }
inline ResolventSymbol zero_like(const ResolventSymbol &r) { return ResolventSymbol(r.base()); }
inline ResolventSymbol one_like(const ResolventSymbol &r) { return ResolventSymbol::constant(r.base(), 1); }
// Derivatives of 1/(a-A) never terminate, so no bracket can be pruned by degree.
inline int degree_bound(const ResolventSymbol &) { return INT_MAX / 2; }
inline bool is_zero(const ResolventSymbol &r) { return r.is_zero(); }
inline int ring_variables(const ResolventSymbol &r) { return r.variables(); }

std::string to_string(const ResolventSymbol &r, std::span<const std::string> names = {});

} // namespace weyl

#endif
