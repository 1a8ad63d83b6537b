#include <doctest.h>

#include <random>

#include "weyl/functional_calculus.hpp"
#include "weyl/parse.hpp"
#include "weyl/verify.hpp"

using namespace weyl;

namespace
{

Polynomial sym(const char *text, int n = 1) { return parse_symbol(text, n); }

SymbolSeries ser(const char *text, int order = 4, int n = 1) { return SymbolSeries::constant(sym(text, n), order); }

FunctionJet power(int k)
{
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
    c.back() = 1;
    return FunctionJet::polynomial(c);
}

} // namespace

TEST_CASE("function descriptors")
{
    CHECK(parse_function("abstract").kind() == FunctionJet::Kind::abstract);
    CHECK(parse_function("resolvent").kind() == FunctionJet::Kind::resolvent);
    CHECK(parse_function("exp").rate() == GaussianRational(1));
    CHECK(parse_function("exp:-1/2").rate() == GaussianRational(Rational(-1, 2)));
    const FunctionJet cubic = parse_function("poly:1,0,0,2");
    CHECK(cubic.coefficients().size() == 4);
    CHECK(cubic.derivative_coefficients(2) == std::vector<Rational>{0, 12});
    CHECK(cubic.derivative_at(1, GaussianRational(1)) == GaussianRational(6));
    CHECK_THROWS_AS(parse_function("sin"), std::invalid_argument);
    CHECK_THROWS_AS(parse_function("poly:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_function("poly:1,x"), std::invalid_argument);
}

TEST_CASE("low-order terms of the harmonic symbol")
{
    // A = (x^2+p^2)/2: Q_{2,2} = -1/8 and Q_{2,3} = -A/12 from sec and tan.
    const JetSeries jet = symbol_of_function_unlabeled(ser("(x^2+p^2)/2"), moyal_config(1, 4));
    CHECK(jet.coefficient(0, 0) == sym("1"));
    CHECK(jet.coefficient(1, 2).is_zero());
    CHECK(jet.coefficient(2, 2) == sym("-1/8"));
    CHECK(jet.coefficient(2, 3) == sym("-(x^2+p^2)/24"));
    CHECK(jet.is_even_and_real());
    CHECK(jet.max_derivative() == 6);
}

TEST_CASE("identity and squares")
{
    const StarConfig cfg = moyal_config(1, 4);
    const SymbolSeries a = ser("x^3 + x*p^2");
    const JetSeries jet = symbol_of_function_unlabeled(a, cfg);
    CHECK(materialize(jet, FunctionJet::polynomial({0, 1})) == a);
    CHECK(materialize(jet, FunctionJet::polynomial({5})) == ser("5"));
    CHECK(materialize(jet, power(2)) == star(a, a, cfg));
}

TEST_CASE("three forms agree, including hbar-dependent symbols")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        SymbolSeries a = SymbolSeries::constant(random_symbol(rng, 1, 3), 4);
        if (trial % 2 == 1)
            a[2] = random_symbol(rng, 1, 2);
        const StarConfig cfg = moyal_config(1, 4);
        const JetSeries u = symbol_of_function(a, cfg, CalculusForm::unlabeled);
        CHECK(symbol_of_function(a, cfg, CalculusForm::labeled) == u);
        CHECK(symbol_of_function(a, cfg, CalculusForm::connected) == u);
        const auto rl = graph_coefficients(a, cfg, CalculusForm::labeled);
        const auto ru = graph_coefficients(a, cfg, CalculusForm::unlabeled);
        CHECK(rl == ru);
    }
}

TEST_CASE("higher orders beyond the labeled capacity")
{
    const SymbolSeries a = ser("x^2*p + p^2", 6);
    const StarConfig cfg = moyal_config(1, 6);
    CHECK(symbol_of_function_unlabeled(a, cfg) == symbol_of_function_connected(a, cfg));
    const SymbolSeries cube = materialize(symbol_of_function_unlabeled(a, cfg), power(3));
    const std::vector<SymbolSeries> three(3, a);
    CHECK(cube == star_fold(three, cfg, 2));
    CHECK_THROWS_AS(symbol_of_function_labeled(ser("x^2*p", 7), moyal_config(1, 7)), capacity_error);
}

TEST_CASE("exponential of a linear symbol has no corrections")
{
    const JetSeries jet = symbol_of_function_unlabeled(ser("2*x - p"), moyal_config(1, 4));
    CHECK(exponential_prefactor(jet, GaussianRational(1)) == ser("1"));
}

TEST_CASE("exponential prefactor of the harmonic symbol")
{
    // exp(A) with A = (x^2+p^2)/2: prefactor sec(u) exp[A (tan(u)/u - 1)] with u = i hbar/2, so the
    // hbar^2 term is -1/8 - A/24 (rate 1).
    const JetSeries jet = symbol_of_function_unlabeled(ser("(x^2+p^2)/2"), moyal_config(1, 4));
    const SymbolSeries pre = exponential_prefactor(jet, GaussianRational(1));
    CHECK(pre[0] == sym("1"));
    CHECK(pre[2] == sym("-1/8 - (x^2+p^2)/24"));
}

TEST_CASE("resolvent from the jet")
{
    const JetSeries jet = symbol_of_function_unlabeled(ser("x^2+p^2"), moyal_config(1, 2));
    const auto h = materialize_resolvent(jet);
    const Polynomial base = sym("x^2+p^2");
    CHECK(h[0] == ResolventSymbol::term(base, sym("1"), -1));
    CHECK(h[1].is_zero());
    const auto check = resolvent_symbol_check(sym("x^2+p^2"), 4, 1);
    CHECK_MESSAGE(check.passed, check.residue);
}

TEST_CASE("pointwise and global symbols")
{
    std::mt19937_64 rng(33);
    const StarConfig cfg = moyal_config(1, 4);
    const Polynomial a = random_symbol(rng, 1, 3);
    const JetSeries jet = symbol_of_function_unlabeled(SymbolSeries::constant(a, 4), cfg);
    const FunctionJet f = FunctionJet::polynomial({0, 1, 1, 1});
    const SymbolSeries global = materialize(jet, f);
    const std::vector<GaussianRational> z{GaussianRational(Rational(1, 2)), GaussianRational(-2)};
    CHECK(pointwise_symbol(a, f, z, cfg) == evaluate(global, z));
    CHECK(vanishing_order(a, z, 1, cfg) == 5);
    CHECK(vanishing_order(a, z, 2, cfg) >= 1);
    CHECK(vanishing_order(a, z, 4, cfg) >= 2);
    CHECK_THROWS_AS(pointwise_symbol(a, FunctionJet::abstract_function(), z, cfg), std::invalid_argument);
}

TEST_CASE("commuting symbols")
{
    const std::vector<SymbolSeries> ops{ser("x"), ser("x^2")};
    const StarConfig cfg = moyal_config(1, 4);
    const MultiJetSeries jet = symbol_of_multifunction(ops, cfg);
    const std::vector<std::string> names{"y1", "y2"};
    CHECK(materialize(jet, parse_polynomial("y1*y2 + y2^2", names)) == ser("x^3 + x^4"));
    CHECK_THROWS_AS(materialize(jet, parse_polynomial("y1", std::vector<std::string>{"y1"})), dimension_error);
    const std::vector<SymbolSeries> none;
    CHECK_THROWS_AS(symbol_of_multifunction(none, cfg), std::invalid_argument);
}

TEST_CASE("calculus error paths")
{
    const StarConfig cfg = moyal_config(1, 4);
    CHECK_THROWS_AS(symbol_of_function_unlabeled(ser("x^2", 2), cfg), std::invalid_argument);
    const StarConfig standard{QuantizationTensor::standard_order(1), 2};
    CHECK_THROWS_AS(symbol_of_function_unlabeled(ser("x*p", 2), standard), std::invalid_argument);
    // The labeled form does not need antisymmetry: it agrees with standard-order powers.
    const JetSeries jet = symbol_of_function_labeled(ser("x*p", 2), standard);
    const std::vector<SymbolSeries> two(2, ser("x*p", 2));
    CHECK(materialize(jet, power(2)) == star_fold(two, standard, 2));
    JetSeries j(sym("x"), 2);
    CHECK_THROWS_AS(j.add(3, 1, sym("1")), std::out_of_range);
    CHECK_THROWS_AS(materialize(j, FunctionJet::abstract_function()), std::invalid_argument);
}
