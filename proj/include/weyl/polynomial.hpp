#ifndef WEYL_POLYNOMIAL_HPP
#define WEYL_POLYNOMIAL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "weyl/errors.hpp"
#include "weyl/scalar.hpp"

namespace weyl
{

inline constexpr int kMaxVariables = 12;

struct Monomial {
    std::array<std::uint8_t, kMaxVariables> exps{};

    int degree() const
    {
        int d = 0;
        for (auto e : exps)
            d += e;
        return d;
    }

    auto operator<=>(const Monomial &) const = default;
};

// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
//
// A phase-space symbol on T*R^N uses variables (x1..xN, p1..pN) in slots 0..2N-1. Further
// slots may hold parameters that a quantization tensor never differentiates (a mass, the
// jet of a generic potential, ...). No zero coefficient is ever stored.
class Polynomial
{
public:
    using Terms = std::map<Monomial, GaussianRational>;

    explicit Polynomial(int variables = 2);

    static Polynomial constant(int variables, const GaussianRational &c);
    static Polynomial variable(int variables, int index);
    static Polynomial monomial(int variables, const Monomial &m, const GaussianRational &c);

    int variables() const { return nvars_; }
    const Terms &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_real() const;
    // -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(int var) const;
    GaussianRational coefficient(const Monomial &m) const;
    GaussianRational constant_term() const { return coefficient(Monomial{}); }

    void add_term(const Monomial &m, const GaussianRational &c);

    Polynomial &operator+=(const Polynomial &o);
    Polynomial &operator-=(const Polynomial &o);
    Polynomial &operator*=(const Polynomial &o);
    Polynomial &operator*=(const GaussianRational &c);

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(Polynomial a, const GaussianRational &c) { return a *= c; }
    friend Polynomial operator*(const GaussianRational &c, Polynomial a) { return a *= c; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial derivative(int var) const;

    GaussianRational evaluate(std::span<const GaussianRational> point) const;
    // Real part evaluated in extended precision; imaginary parts are ignored.
    long double evaluate_real(std::span<const long double> point) const;

    // Replace variable `var` by a constant.
    Polynomial substitute(int var, const GaussianRational &value) const;
    // Replace every variable k by subs[k]; all substitutes must share one variable count.
    Polynomial compose(std::span<const Polynomial> subs) const;
    // Same polynomial viewed in a ring with more trailing variables.
    Polynomial extend(int variables) const;

    Polynomial real_part() const;
    Polynomial imag_part() const;

private:
    void check_same(const Polynomial &o) const;

    int nvars_;
    Terms terms_;
};

Polynomial pow(const Polynomial &p, int k);

/// Exact formal derivative with respect to variable `var` (0-based). Throws dimension_error.
Polynomial partial_derivative(const Polynomial &p, int var);

// Symbol-algebra hooks shared with HbarSeries and ResolventSymbol.
inline Polynomial zero_like(const Polynomial &p) { return Polynomial(p.variables()); }
inline Polynomial one_like(const Polynomial &p) { return Polynomial::constant(p.variables(), 1); }
inline int degree_bound(const Polynomial &p) { return p.total_degree(); }
inline bool is_zero(const Polynomial &p) { return p.is_zero(); }

std::vector<std::string> default_variable_names(int variables);

/// Canonical rendering: descending total degree, then descending exponent order.
std::string to_string(const Polynomial &p, std::span<const std::string> names = {});

} // namespace weyl

#endif
