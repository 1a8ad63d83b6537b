#include "weyl/quadratic.hpp"

#include <cmath>
#include <sstream>

namespace weyl
{

namespace
{

void check_index(int k_max)
{
    if (k_max < 0)
        throw std::invalid_argument("index must be non-negative");
    if (k_max > kMaxZagIndex)
        throw capacity_error("Zag index above " + std::to_string(kMaxZagIndex));
}

mpz_class to_integer(const Rational &q)
{
    if (q.get_den() != 1)
        throw std::logic_error("expected an integer, got " + q.get_str());
    return q.get_num();
}

// Maclaurin coefficients of sin and cos through x^degree.
std::vector<Rational> sine(int degree)
{
    std::vector<Rational> s(static_cast<std::size_t>(degree) + 1, Rational(0));
    for (int n = 1; n <= degree; n += 2)
        s[static_cast<std::size_t>(n)] = Rational((n / 2) % 2 ? -1 : 1) / factorial(n);
    return s;
}

std::vector<Rational> cosine(int degree)
{
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
    for (int n = 0; n <= degree; n += 2)
        c[static_cast<std::size_t>(n)] = Rational((n / 2) % 2 ? -1 : 1) / factorial(n);
    return c;
}

std::vector<Rational> divide(const std::vector<Rational> &num, const std::vector<Rational> &den)
{
    std::vector<Rational> q(num.size(), Rational(0));
    for (std::size_t n = 0; n < num.size(); ++n) {
        Rational acc = num[n];
        for (std::size_t j = 1; j <= n; ++j)
            acc -= den[j] * q[n - j];
        q[n] = acc / den[0];
    }
    return q;
}

Rational power(const Rational &x, int k)
{
    Rational r(1);
    for (int i = 0; i < k; ++i)
        r *= x;
    return r;
}

// (i w/2)^2k = (-w^2/4)^k.
Rational u_squared_power(const Rational &omega2, int k) { return power(-omega2 / 4, k); }

// Double series in (first grade, second grade) with polynomial coefficients; products drop
// every term whose first grade exceeds `limit`.
using Bigraded = std::map<std::pair<int, int>, Polynomial>;

void accumulate(Bigraded &s, std::pair<int, int> key, const Polynomial &p)
{
    if (p.is_zero())
        return;
    auto [it, inserted] = s.try_emplace(key, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero())
            s.erase(it);
    }
}

Bigraded multiply(const Bigraded &x, const Bigraded &y, int limit)
{
    Bigraded out;
    for (const auto &[kx, px] : x)
        for (const auto &[ky, py] : y)
            if (kx.first + ky.first <= limit)
                accumulate(out, {kx.first + ky.first, kx.second + ky.second}, px * py);
    return out;
}

// exp(x) for x without terms of first grade below `min_grade` (> 0).
Bigraded exponential(const Bigraded &x, int limit, int min_grade, int variables)
{
    Bigraded out;
    Bigraded power;
    power[{0, 0}] = Polynomial::constant(variables, 1);
    for (int n = 0; n * min_grade <= limit; ++n) {
        if (n > 0)
            power = multiply(power, x, limit);
        for (const auto &[k, p] : power)
            accumulate(out, k, p * GaussianRational(Rational(1) / factorial(n)));
    }
    return out;
}

JetSeries to_jet(const Bigraded &s, const Polynomial &a, int order)
{
    JetSeries jet(a, order);
    for (const auto &[k, p] : s)
        jet.add(k.first, k.second, p);
    return jet;
}

void check_one_dimensional(const QuadraticForm &q)
{
    if (q.dimension() != 1)
        throw dimension_error("closed forms are one-dimensional");
}

} // namespace

std::vector<mpz_class> path_coefficients(int k_max)
{
    check_index(k_max);
    std::vector<mpz_class> c{1};
    for (int k = 1; k <= k_max; ++k) {
        mpz_class acc = 0;
        for (int j = 0; j < k; ++j)
            acc += to_integer(binomial(2 * k, 2 * j + 1)) * c[static_cast<std::size_t>(j)] *
                   c[static_cast<std::size_t>(k - j - 1)];
        c.push_back(-acc);
    }
    return c;
}

std::vector<mpz_class> zag_numbers(int k_max)
{
    auto c = path_coefficients(k_max);
    for (auto &v : c)
        v = abs(v);
    return c;
}

std::vector<Rational> tangent_series(int degree)
{
    if (degree < 0)
        throw std::invalid_argument("degree must be non-negative");
    return divide(sine(degree), cosine(degree));
}

std::vector<Rational> secant_series(int degree)
{
    if (degree < 0)
        throw std::invalid_argument("degree must be non-negative");
    std::vector<Rational> one(static_cast<std::size_t>(degree) + 1, Rational(0));
    one[0] = 1;
    return divide(one, cosine(degree));
}

std::vector<mpz_class> zag_from_tangent(int k_max)
{
    check_index(k_max);
    const auto t = tangent_series(2 * k_max + 1);
    std::vector<mpz_class> out;
    for (int k = 0; k <= k_max; ++k)
        out.push_back(to_integer(t[static_cast<std::size_t>(2 * k + 1)] * factorial(2 * k + 1)));
    return out;
}

std::vector<Rational> bernoulli_numbers(int n)
{
    if (n < 0)
        throw std::invalid_argument("index must be non-negative");
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    std::vector<Rational> b{Rational(1)};
    for (int m = 1; m <= n; ++m) {
        Rational acc(0);
        for (int j = 0; j < m; ++j)
            acc += binomial(m + 1, j) * b[static_cast<std::size_t>(j)];
        b.push_back(-acc / Rational(m + 1));
    }
    return b;
}

std::vector<mpz_class> zag_from_bernoulli(int k_max)
{
    check_index(k_max);
    const auto b = bernoulli_numbers(2 * k_max + 2);
    std::vector<mpz_class> out;
    for (int k = 1; k <= k_max + 1; ++k) {
        mpz_class p = 1;
        p <<= 2 * k;
        const Rational bk = abs(b[static_cast<std::size_t>(2 * k)]);
        out.push_back(to_integer(Rational(p) * Rational(p - 1) * bk / Rational(2 * k)));
    }
    return out;
}

bool satisfies_tangent_equation(const std::vector<mpz_class> &alpha, int degree)
{
    if (degree < 0)
        return true;
    // y through x^(degree+1) so that y' and y^2 are complete through x^degree.
    std::vector<Rational> y(static_cast<std::size_t>(degree) + 2, Rational(0));
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        const int n = 2 * static_cast<int>(k) + 1;
        if (n <= degree + 1)
            y[static_cast<std::size_t>(n)] = Rational(alpha[k]) / factorial(n);
    }
    if (2 * static_cast<int>(alpha.size()) - 1 < degree + 1)
        throw std::invalid_argument("not enough terms for the requested degree");
    for (int n = 0; n <= degree; ++n) {
        Rational lhs = y[static_cast<std::size_t>(n) + 1] * (n + 1);
        Rational rhs = n == 0 ? Rational(1) : Rational(0);
        for (int j = 0; j <= n; ++j)
            rhs += y[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(n - j)];
        if (lhs != rhs)
            return false;
    }
    return true;
}

QuadraticForm::QuadraticForm(int dimension, std::vector<Rational> row_major) : n_(dimension), q_(std::move(row_major))
{
    if (n_ < 1 || 2 * n_ > kMaxVariables)
        throw dimension_error("phase-space dimension out of range");
    const int m = 2 * n_;
    if (static_cast<int>(q_.size()) != m * m)
        throw dimension_error("matrix size does not match 2N x 2N");
    for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c)
            if ((*this)(r, c) != (*this)(c, r))
                throw std::invalid_argument("quadratic form matrix must be symmetric");
}

const Rational &QuadraticForm::operator()(int r, int c) const
{
    const int m = 2 * n_;
    if (r < 0 || c < 0 || r >= m || c >= m)
        throw std::out_of_range("matrix index");
    return q_[static_cast<std::size_t>(r * m + c)];
}

QuadraticForm QuadraticForm::from_symbol(const Polynomial &a)
{
    const int m = a.variables();
    if (m % 2 != 0)
        throw dimension_error("symbol does not live on a phase space");
    std::vector<Rational> q(static_cast<std::size_t>(m * m), Rational(0));
    for (const auto &[mono, coeff] : a.terms()) {
        if (mono.degree() != 2)
            throw std::invalid_argument("symbol is not a homogeneous quadratic form");
        if (!coeff.is_real())
            throw std::invalid_argument("quadratic form must be real");
        std::vector<int> idx;
        for (int v = 0; v < m; ++v)
            for (int e = 0; e < mono.exps[static_cast<std::size_t>(v)]; ++e)
                idx.push_back(v);
        const auto r = static_cast<std::size_t>(idx[0]);
        const auto c = static_cast<std::size_t>(idx[1]);
        if (r == c) {
            q[r * static_cast<std::size_t>(m) + c] = 2 * coeff.real();
        } else {
            q[r * static_cast<std::size_t>(m) + c] = coeff.real();
            q[c * static_cast<std::size_t>(m) + r] = coeff.real();
        }
    }
    return QuadraticForm(m / 2, std::move(q));
}

QuadraticForm QuadraticForm::parse(const std::string &text)
{
    std::vector<Rational> entries;
    std::size_t rows = 0;
    std::size_t width = 0;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::stringstream cs(row);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(cs, cell, ',')) {
            entries.push_back(parse_rational(cell));
            ++count;
        }
        if (rows == 0)
            width = count;
        else if (count != width)
            throw std::invalid_argument("ragged matrix rows");
        ++rows;
    }
    if (rows == 0 || rows != width || rows % 2 != 0)
        throw std::invalid_argument("expected a square 2N x 2N matrix");
    return QuadraticForm(static_cast<int>(rows / 2), std::move(entries));
}

Polynomial QuadraticForm::symbol() const
{
    const int m = coordinates();
    Polynomial a(m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            if (sgn((*this)(r, c)) == 0)
                continue;
            a += Polynomial::variable(m, r) * Polynomial::variable(m, c) *
                 GaussianRational(Rational((*this)(r, c) / 2));
        }
    return a;
}

Rational QuadraticForm::omega_squared() const
{
    check_one_dimensional(*this);
    return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
}

std::vector<Arrow> path_arrows(int k)
{
    if (k < 1)
        throw std::invalid_argument("family index starts at 1");
    std::vector<Arrow> a;
    for (int i = 0; i < 2 * k; ++i)
        a.push_back({i, i + 1});
    return a;
}

std::vector<Arrow> cycle_arrows(int k)
{
    if (k < 1)
        throw std::invalid_argument("family index starts at 1");
    std::vector<Arrow> a;
    for (int i = 0; i < 2 * k; ++i)
        a.push_back({i, (i + 1) % (2 * k)});
    return a;
}

std::pair<Polynomial, Polynomial> lambda_closed_forms(const QuadraticForm &q, int k)
{
    if (k < 1)
        throw std::invalid_argument("family index starts at 1");
    const Rational scale = power(-q.omega_squared(), k) * 2;
    const Polynomial a = q.symbol();
    return {a * GaussianRational(scale), Polynomial::constant(a.variables(), GaussianRational(scale))};
}

JetSeries quadratic_closed_symbol(const QuadraticForm &q, int order)
{
    check_truncation_order(order);
    const Rational w2 = q.omega_squared();
    const Polynomial a = q.symbol();
    const int half = order / 2;
    const auto tan = tangent_series(2 * half + 1);
    const auto sec = secant_series(2 * half);

    Bigraded secant;
    Bigraded exponent;
    for (int k = 0; k <= half; ++k) {
        const Rational u = u_squared_power(w2, k);
        secant[{2 * k, 2 * k}] = Polynomial::constant(2, GaussianRational(Rational(sec[static_cast<std::size_t>(2 * k)] * u)));
        if (k >= 1)
            accumulate(exponent, {2 * k, 2 * k + 1},
                       a * GaussianRational(Rational(tan[static_cast<std::size_t>(2 * k + 1)] * u)));
    }
    Bigraded b = multiply(secant, exponential(exponent, order, 2, 2), order);
    return to_jet(b, a, order);
}

JetSeries quadratic_exponent_symbol(const QuadraticForm &q, int order)
{
    check_truncation_order(order);
    const Rational w2 = q.omega_squared();
    const Polynomial a = q.symbol();
    const int half = order / 2;
    const auto c = zag_numbers(half);
    Bigraded exponent;
    for (int k = 1; k <= half; ++k) {
        const Rational u = u_squared_power(w2, k);
        accumulate(exponent, {2 * k, 2 * k + 1},
                   a * GaussianRational(Rational(Rational(c[static_cast<std::size_t>(k)]) * u / factorial(2 * k + 1))));
        accumulate(exponent, {2 * k, 2 * k},
                   Polynomial::constant(2, GaussianRational(Rational(Rational(c[static_cast<std::size_t>(k - 1)]) * u /
                                                                    factorial(2 * k)))));
    }
    return to_jet(exponential(exponent, order, 2, 2), a, order);
}

PropagatorSeries propagator_closed_form(const QuadraticForm &q, int t_order)
{
    if (t_order < 0)
        throw std::invalid_argument("t order must be non-negative");
    if (t_order > 4 * kMaxTruncationOrder)
        throw capacity_error("t order too large");
    const Rational w2 = q.omega_squared();
    const Polynomial a = q.symbol();
    const auto tan = tangent_series(t_order + 1);
    const auto sec = secant_series(t_order);

    // s = t w/2: sec(s) = sum sec_2k (w^2/4)^k t^2k; the exponent is
    // -i (A/hbar) sum_{k>=1} tan_{2k+1} (w^2/4)^k t^(2k+1).
    Bigraded secant;
    Bigraded exponent;
    for (int k = 0; 2 * k <= t_order; ++k) {
        const Rational s = power(w2 / 4, k);
        secant[{2 * k, 0}] = Polynomial::constant(2, GaussianRational(Rational(sec[static_cast<std::size_t>(2 * k)] * s)));
        if (k >= 1 && 2 * k + 1 <= t_order)
            accumulate(exponent, {2 * k + 1, -1},
                       a * GaussianRational(Rational(0), Rational(-tan[static_cast<std::size_t>(2 * k + 1)] * s)));
    }
    PropagatorSeries out;
    out.t_order = t_order;
    out.terms = multiply(secant, exponential(exponent, t_order, 3, 2), t_order);
    return out;
}

PropagatorSeries propagator_from_jet(const JetSeries &jet, int t_order)
{
    if (t_order < 0)
        throw std::invalid_argument("t order must be non-negative");
    if (jet.order() < t_order)
        throw capacity_error("hbar truncation too low for the requested t order");
    PropagatorSeries out;
    out.t_order = t_order;
    const GaussianRational minus_i(Rational(0), Rational(-1));
    for (const auto &[key, poly] : jet.terms()) {
        const auto [e, v] = key;
        if (v > t_order)
            continue;
        accumulate(out.terms, {v, e - v}, poly * pow(minus_i, v));
    }
    return out;
}

} // namespace weyl
