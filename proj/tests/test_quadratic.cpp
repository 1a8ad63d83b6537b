#include <doctest.h>

#include "weyl/parse.hpp"
#include "weyl/quadratic.hpp"

using namespace weyl;

namespace
{

Polynomial sym(const char *text) { return parse_symbol(text, 1); }

GaussianRational im(Rational r) { return {Rational(0), std::move(r)}; }

} // namespace

TEST_CASE("path coefficients through three routes")
{
    const std::vector<mpz_class> first{1, 2, 16, 272, 7936, 353792};
    CHECK(zag_numbers(5) == first);
    CHECK(zag_from_tangent(5) == first);
    CHECK(zag_from_bernoulli(5) == first);
    CHECK(zag_numbers(kMaxZagIndex) == zag_from_tangent(kMaxZagIndex));
    CHECK(zag_numbers(kMaxZagIndex) == zag_from_bernoulli(kMaxZagIndex));
    const auto signed_c = path_coefficients(6);
    const auto abs_c = zag_numbers(6);
    for (std::size_t k = 0; k < signed_c.size(); ++k)
        CHECK(abs(signed_c[k]) == abs_c[k]);
    CHECK_THROWS_AS(zag_numbers(kMaxZagIndex + 1), capacity_error);
    CHECK_THROWS_AS(zag_numbers(-1), std::invalid_argument);
}

TEST_CASE("the generating function solves y' = 1 + y^2")
{
    CHECK(satisfies_tangent_equation(zag_numbers(6), 11));
    auto wrong = zag_numbers(6);
    wrong[3] += 1;
    CHECK_FALSE(satisfies_tangent_equation(wrong, 11));
    CHECK_THROWS_AS(satisfies_tangent_equation(zag_numbers(2), 13), std::invalid_argument);
}

TEST_CASE("Bernoulli numbers and Maclaurin series")
{
    const auto b = bernoulli_numbers(8);
    CHECK(b[0] == 1);
    CHECK(b[1] == Rational(-1, 2));
    CHECK(b[2] == Rational(1, 6));
    CHECK(b[3] == 0);
    CHECK(b[4] == Rational(-1, 30));
    CHECK(b[8] == Rational(-1, 30));
    const auto t = tangent_series(5);
    CHECK(t[1] == 1);
    CHECK(t[3] == Rational(1, 3));
    CHECK(t[5] == Rational(2, 15));
    CHECK(t[2] == 0);
    const auto s = secant_series(4);
    CHECK(s[0] == 1);
    CHECK(s[2] == Rational(1, 2));
    CHECK(s[4] == Rational(5, 24));
    CHECK_THROWS_AS(tangent_series(-1), std::invalid_argument);
}

TEST_CASE("quadratic forms")
{
    const QuadraticForm q = QuadraticForm::parse("2,1;1,3");
    CHECK(q.symbol() == sym("x^2 + x*p + 3/2*p^2"));
    CHECK(q.omega_squared() == 5);
    const QuadraticForm back = QuadraticForm::from_symbol(q.symbol());
    CHECK(back.symbol() == q.symbol());
    CHECK(QuadraticForm::parse("1,0;0,1").omega_squared() == 1);
    CHECK_THROWS_AS(QuadraticForm::parse("1,2;0,1"), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm::parse("1,0;0"), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm::parse("1,0,0;0,1,0;0,0,1"), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm::from_symbol(sym("x^2+p")), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm::from_symbol(sym("x^2") * GaussianRational::i()), std::invalid_argument);
    const QuadraticForm two(2, std::vector<Rational>(16, Rational(0)));
    CHECK(two.symbol().is_zero());
    CHECK_THROWS_AS(two.omega_squared(), dimension_error);
    CHECK_THROWS_AS(quadratic_closed_symbol(two, 2), dimension_error);
}

TEST_CASE("path and cycle lambdas close")
{
    for (const char *text : {"1,0;0,1", "2,1;1,3", "1/2,-1;-1,4"}) {
        const QuadraticForm q = QuadraticForm::parse(text);
        const auto j = QuantizationTensor::moyal(1);
        for (int k = 1; k <= 3; ++k) {
            const auto path = path_arrows(k);
            const auto cycle = cycle_arrows(k);
            CHECK(path.size() == static_cast<std::size_t>(2 * k));
            CHECK(cycle.size() == static_cast<std::size_t>(2 * k));
            const std::vector<Polynomial> p(static_cast<std::size_t>(2 * k + 1), q.symbol());
            const std::vector<Polynomial> c(static_cast<std::size_t>(2 * k), q.symbol());
            const auto [lp, lc] = lambda_closed_forms(q, k);
            CHECK(lambda<Polynomial>(2 * k + 1, path, p, j) == lp);
            CHECK(lambda<Polynomial>(2 * k, cycle, c, j) == lc);
        }
    }
    CHECK_THROWS_AS(path_arrows(0), std::invalid_argument);
    CHECK_THROWS_AS(cycle_arrows(0), std::invalid_argument);
}

TEST_CASE("closed form equals the graph expansion")
{
    for (const char *text : {"1,0;0,1", "2,1;1,3", "1/2,-1;-1,4"}) {
        const QuadraticForm q = QuadraticForm::parse(text);
        for (int order : {2, 4, 6}) {
            const JetSeries graphs =
                symbol_of_function_unlabeled(SymbolSeries::constant(q.symbol(), order), moyal_config(1, order));
            CHECK(quadratic_closed_symbol(q, order) == graphs);
            CHECK(quadratic_exponent_symbol(q, order) == graphs);
        }
    }
}

TEST_CASE("time-evolution prefactor through t^4")
{
    // 1 + w^2 t^2/8 - i A w^2 t^3/(12 hbar) + 5 w^4 t^4/384.
    const QuadraticForm q = QuadraticForm::parse("2,1;1,3");
    const PropagatorSeries p = propagator_closed_form(q, 4);
    const Polynomial a = q.symbol();
    const Polynomial one = sym("1");
    CHECK(p.terms.size() == 4);
    CHECK(p.terms.at({0, 0}) == one);
    CHECK(p.terms.at({2, 0}) == one * GaussianRational(Rational(5, 8)));
    CHECK(p.terms.at({3, -1}) == a * im(Rational(-5, 12)));
    CHECK(p.terms.at({4, 0}) == one * GaussianRational(Rational(5 * 25, 384)));
    CHECK(propagator_from_jet(quadratic_closed_symbol(q, 6), 6) == propagator_closed_form(q, 6));
    CHECK_THROWS_AS(propagator_from_jet(quadratic_closed_symbol(q, 2), 4), capacity_error);
    CHECK_THROWS_AS(propagator_closed_form(q, -1), std::invalid_argument);
}
