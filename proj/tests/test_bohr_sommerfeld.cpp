#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weyl/bohr_sommerfeld.hpp"
#include "weyl/parse.hpp"

using namespace weyl;

namespace
{

Polynomial sym(const char *text) { return parse_symbol(text, 1); }

SplitHamiltonian harmonic() { return SplitHamiltonian(Rational(1), {Rational(0), Rational(0), Rational(1, 2)}); }

SplitHamiltonian quartic() { return SplitHamiltonian(Rational(1), {0, 0, 0, 0, 1}); }

} // namespace

TEST_CASE("universal polynomials")
{
    const Polynomial h = sym("x^2+p^2");
    CHECK(universal_polynomial(h, 0, 1) == sym("1"));
    // P_{2,3} = -(1/8) {H,H}_2.
    CHECK(universal_polynomial(h, 2, 3) == sym("-1"));
    CHECK(universal_polynomial(h, 2, 4) == sym("-2*x^2 - 2*p^2"));
    CHECK(universal_polynomial(h, 1, 3).is_zero());
    const auto all = universal_polynomials(h, 2);
    CHECK(all.size() == 2);
    // The resolvent assembled from them is the hbar^2 part of the graph expansion.
    const JetSeries jet = symbol_of_function_unlabeled(SymbolSeries::constant(h, 2), moyal_config(1, 2));
    CHECK(resolvent_from_universal(h, 2) == materialize_resolvent(jet)[2]);
    CHECK(resolvent_from_universal(sym("x^3+p^2"), 2) ==
          materialize_resolvent(
              symbol_of_function_unlabeled(SymbolSeries::constant(sym("x^3+p^2"), 2), moyal_config(1, 2)))[2]);
}

TEST_CASE("split-form corrections")
{
    const auto names = jet_variable_names();
    CHECK(names.size() == static_cast<std::size_t>(jet_variables()));
    CHECK(names[kJetMassSlot] == "mu");
    const auto c = split_form_corrections(4);
    REQUIRE(c.size() == 3);
    const int n = jet_variables();
    const Polynomial mu = Polynomial::variable(n, kJetMassSlot);
    const Polynomial v2 = Polynomial::variable(n, kJetPotentialSlot + 2);
    const Polynomial v4 = Polynomial::variable(n, kJetPotentialSlot + 4);
    CHECK(c.at({2, 1}) == mu * v2 * GaussianRational(Rational(-1, 24)));
    CHECK(c.at({4, 2}) == mu * mu * v4 * GaussianRational(Rational(-1, 1152)));
    CHECK(c.at({4, 3}) == mu * mu * v2 * v2 * GaussianRational(Rational(7, 5760)));
    CHECK(to_string(c.at({2, 1}), names) == "-1/24*mu*V''");
    CHECK(split_form_corrections(2).size() == 1);
    CHECK_THROWS_AS(split_form_corrections(6), capacity_error);
}

TEST_CASE("full and reduced action series")
{
    const Polynomial h = sym("p^2/2 + x^4");
    const ActionSeries full = action_corrections(h, 4);
    const ActionSeries reduced = reduced_action_corrections(h, 4);
    int full4 = 0;
    for (const auto &t : full.terms)
        full4 += t.hbar == 4 ? 1 : 0;
    int reduced4 = 0;
    for (const auto &t : reduced.terms)
        reduced4 += t.hbar == 4 ? 1 : 0;
    CHECK(reduced4 == 5);
    CHECK(full4 >= reduced4);
    // Only even powers survive.
    for (const auto &[key, poly] : full.combined())
        CHECK(key.first % 2 == 0);
    CHECK_THROWS_AS(action_corrections(h, 5), capacity_error);
}

TEST_CASE("split Hamiltonian geometry")
{
    const SplitHamiltonian h = harmonic();
    CHECK(h.symbol() == sym("p^2/2 + x^2/2"));
    CHECK(h.minimum_value() == doctest::Approx(0).epsilon(1e-12));
    const auto [lo, hi] = h.turning_points(2.0L);
    CHECK(static_cast<double>(lo) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(static_cast<double>(hi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(h.turning_points(-1.0L), std::domain_error);

    const SplitHamiltonian shifted(Rational(2), {Rational(3), Rational(-2), Rational(1)});
    CHECK(static_cast<double>(shifted.minimum_location()) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(static_cast<double>(shifted.minimum_value()) == doctest::Approx(2.0).epsilon(1e-12));

    const SplitHamiltonian dw(Rational(1), {0, 0, -2, 0, 1});
    CHECK_THROWS_AS(dw.turning_points(-0.5L), std::domain_error);
    CHECK_NOTHROW(dw.turning_points(1.0L));

    CHECK_THROWS_AS(SplitHamiltonian(Rational(0), {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SplitHamiltonian(Rational(1), {0, 0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SplitHamiltonian(Rational(1), {0, 0, -1}), std::invalid_argument);
}

TEST_CASE("period integrals")
{
    const SplitHamiltonian h = harmonic();
    const double two_pi = 2 * std::numbers::pi;
    // The period of the unit oscillator and the area 2 pi E.
    CHECK(static_cast<double>(period_integral(h, 1.5L, sym("1"))) == doctest::Approx(two_pi).epsilon(1e-12));
    CHECK(static_cast<double>(area_action(h, 1.5L)) == doctest::Approx(two_pi * 1.5).epsilon(1e-12));
    // Time average of x^2 is E.
    CHECK(static_cast<double>(period_integral(h, 1.5L, sym("x^2"))) == doctest::Approx(two_pi * 1.5).epsilon(1e-12));

    const SplitHamiltonian q = quartic();
    for (long double e : {0.5L, 3.0L}) {
        const double fast = static_cast<double>(period_integral(q, e, sym("x^2*p^2 + 1")));
        const double ref = static_cast<double>(period_integral_reference(q, e, sym("x^2*p^2 + 1")));
        CHECK(fast == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK_THROWS_AS(period_integral(h, 1.0L, sym("x") * GaussianRational::i()), std::invalid_argument);
}

TEST_CASE("Richardson derivatives")
{
    auto f = [](long double x) { return std::sin(x); };
    long double err = 0;
    CHECK(static_cast<double>(richardson_derivative(f, 0.3L, 1, 0.1L, &err)) ==
          doctest::Approx(std::cos(0.3)).epsilon(1e-10));
    CHECK(err < 1e-8L);
    CHECK(static_cast<double>(richardson_derivative(f, 0.3L, 2, 0.1L)) == doctest::Approx(-std::sin(0.3)).epsilon(1e-8));
    CHECK(static_cast<double>(richardson_derivative(f, 0.3L, 3, 0.2L)) == doctest::Approx(-std::cos(0.3)).epsilon(1e-6));
    CHECK(static_cast<double>(richardson_derivative(f, 0.3L, 0, 0.1L)) == doctest::Approx(std::sin(0.3)));
    CHECK_THROWS_AS(richardson_derivative(f, 0.3L, -1, 0.1L), std::invalid_argument);
    CHECK_THROWS_AS(richardson_derivative(f, 0.3L, 1, 0.0L), std::invalid_argument);
}

TEST_CASE("harmonic levels are exact at every order")
{
    for (int order : {0, 2, 4}) {
        for (double hbar : {1.0, 0.3}) {
            for (const auto &level : bs_eigenvalues(harmonic(), 1, 5, order, hbar)) {
                CHECK(static_cast<double>(level.energy) == doctest::Approx((level.n - 0.5) * hbar).epsilon(1e-10));
                CHECK(std::fabs(static_cast<double>(level.correction2)) < 1e-9);
                CHECK_FALSE(level.blowup);
            }
        }
    }
}

TEST_CASE("quartic levels against the oracle")
{
    const auto oracle = schrodinger_oracle({0, 0, 0, 0, 1}, 1.0, 1.0, 6);
    // Literature value of the ground state of p^2/2 + x^4.
    CHECK(oracle.eigenvalues[0] == doctest::Approx(0.667986259155777).epsilon(1e-8));
    CHECK(oracle.last_change < 1e-8);
    const auto bs = bs_eigenvalues(quartic(), 1, 6, 4, 1.0L);
    // Regression pin for the ground state, where the series is least accurate.
    CHECK(static_cast<double>(bs[0].energy) == doctest::Approx(0.599497543681839).epsilon(1e-7));
    double previous_error = 1;
    for (std::size_t i = 2; i < bs.size(); ++i) {
        const double rel = std::fabs(static_cast<double>(bs[i].energy) - oracle.eigenvalues[i]) / oracle.eigenvalues[i];
        CHECK(rel < 5e-4);
        CHECK(rel < previous_error);
        previous_error = rel;
    }
    // Each order improves on the last for an excited level.
    const double ref = oracle.eigenvalues[4];
    double last = 1e9;
    for (int order : {0, 2, 4}) {
        const double e = static_cast<double>(bs_eigenvalues(quartic(), 5, 5, order, 1.0L)[0].energy);
        CHECK(std::fabs(e - ref) < last);
        last = std::fabs(e - ref);
    }
}

TEST_CASE("full and reduced hbar^4 corrections agree numerically")
{
    const SplitHamiltonian h(Rational(1, 2), {Rational(0), Rational(0), Rational(1), Rational(1, 3), Rational(1)});
    const ActionEvaluator full(h, 4, ActionForm::full);
    const ActionEvaluator reduced(h, 4, ActionForm::reduced);
    for (long double e : {0.5L, 2.0L, 6.0L}) {
        const double a = static_cast<double>(full.correction(4, e));
        const double b = static_cast<double>(reduced.correction(4, e));
        CHECK(a == doctest::Approx(b).epsilon(1e-6));
        CHECK(static_cast<double>(full.correction(2, e)) ==
              doctest::Approx(static_cast<double>(reduced.correction(2, e))).epsilon(1e-9));
    }
}

TEST_CASE("oracle on the harmonic well")
{
    const auto r = schrodinger_oracle({Rational(0), Rational(0), Rational(1, 2)}, 1.0, 1.0, 4);
    for (int n = 0; n < 4; ++n)
        CHECK(r.eigenvalues[static_cast<std::size_t>(n)] == doctest::Approx(n + 0.5).epsilon(1e-8));
    CHECK(r.half_width > 0);
    CHECK(r.grid_points > 0);
}

TEST_CASE("level solver error paths")
{
    CHECK_THROWS_AS(bs_eigenvalues(harmonic(), 1, 2, 3, 1.0L), std::invalid_argument);
    CHECK_THROWS_AS(bs_eigenvalues(harmonic(), 0, 2, 2, 1.0L), std::invalid_argument);
    CHECK_THROWS_AS(bs_eigenvalues(harmonic(), 1, 2, 2, 0.0L), std::invalid_argument);
    CHECK_THROWS_AS(ActionEvaluator(harmonic(), 1), std::invalid_argument);
    CHECK_THROWS_AS(schrodinger_oracle({0, 0, 1}, 1.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(schrodinger_oracle({0, 0, 1}, -1.0, 1.0, 2), std::invalid_argument);
}
