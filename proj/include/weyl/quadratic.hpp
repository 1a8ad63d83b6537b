#ifndef WEYL_QUADRATIC_HPP
#define WEYL_QUADRATIC_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weyl/functional_calculus.hpp"

namespace weyl
{

inline constexpr int kMaxZagIndex = 12;

/// Signed path coefficients c_0, c_1, ... through the convolution recurrence (c_0 = 1).
std::vector<mpz_class> path_coefficients(int k_max);
/// |c_k| for k = 0..k_max: 1, 2, 16, 272, 7936, ...
std::vector<mpz_class> zag_numbers(int k_max);
/// Same sequence read off the Maclaurin series of sin/cos: tan x = sum |c_k| x^(2k+1)/(2k+1)!.
std::vector<mpz_class> zag_from_tangent(int k_max);
/// Same sequence from Bernoulli numbers: |c_{k-1}| = 2^(2k) (2^(2k) - 1) |B_2k| / (2k).
std::vector<mpz_class> zag_from_bernoulli(int k_max);

/// B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);

/// y = sum alpha_k x^(2k+1)/(2k+1)! satisfies y' = 1 + y^2 through x^degree.
bool satisfies_tangent_equation(const std::vector<mpz_class> &alpha, int degree);

/// Exact Maclaurin coefficients through x^degree.
std::vector<Rational> tangent_series(int degree);
std::vector<Rational> secant_series(int degree);

// A(z) = 1/2 z^T Q z on T*R^N with Q symmetric and rational.
class QuadraticForm
{
public:
    QuadraticForm(int dimension, std::vector<Rational> row_major);

    /// Reads Q off a homogeneous quadratic symbol; anything else is rejected.
    static QuadraticForm from_symbol(const Polynomial &a);
    /// "q11,q12;q21,q22" (rows separated by ';').
    static QuadraticForm parse(const std::string &text);

    int dimension() const { return n_; }
    int coordinates() const { return 2 * n_; }
    const Rational &operator()(int r, int c) const;

    Polynomial symbol() const;
    /// omega^2 = det Q (N = 1).
    Rational omega_squared() const;

private:
    int n_;
    std::vector<Rational> q_;
};

/// The path with 2k arrows 0 -> 1 -> ... -> 2k and the directed cycle on 2k vertices.
std::vector<Arrow> path_arrows(int k);
std::vector<Arrow> cycle_arrows(int k);

/// (lambda of the path, lambda of the cycle) = ((-1)^k w^2k 2A, (-1)^k w^2k 2) for N = 1.
std::pair<Polynomial, Polynomial> lambda_closed_forms(const QuadraticForm &q, int k);

/// B = sec(u) exp[A D (tan(u)/u - 1)] f(A) with u = i hbar w D/2, expanded to hbar^order.
JetSeries quadratic_closed_symbol(const QuadraticForm &q, int order);

/// The exponent written with path coefficients:
/// A sum_{k>=1} (i hbar w/2)^2k |c_k| D^(2k+1)/(2k+1)! + sum_{k>=1} (i hbar w/2)^2k |c_{k-1}| D^2k/(2k)!.
JetSeries quadratic_exponent_symbol(const QuadraticForm &q, int order);

// Prefactor of exp(-i t A/hbar) in the symbol of the time evolution, as a double series in t
// and hbar: terms[(t power, hbar power)], hbar powers may be negative.
struct PropagatorSeries {
    int t_order = 0;
    std::map<std::pair<int, int>, Polynomial> terms;

    friend bool operator==(const PropagatorSeries &, const PropagatorSeries &) = default;
};

/// sec(t w/2) exp[(2A/(i hbar w)) (tan(t w/2) - t w/2)] through t^t_order.
PropagatorSeries propagator_closed_form(const QuadraticForm &q, int t_order);
/// The same prefactor from a JetSeries by D -> -i t/hbar: sum Q_{e,v} (-i)^v t^v hbar^(e-v).
/// Throws capacity_error when the jet's hbar order cannot reach every t^v, v <= t_order.
PropagatorSeries propagator_from_jet(const JetSeries &jet, int t_order);

} // namespace weyl

#endif
