#include <doctest.h>

#include <random>

#include "weyl/brackets.hpp"
#include "weyl/parse.hpp"
#include "weyl/serialize.hpp"
#include "weyl/verify.hpp"

using namespace weyl;

namespace
{

Polynomial sym(const char *text, int n = 1) { return parse_symbol(text, n); }

Rational q(const char *text) { return parse_rational(text); }

} // namespace

TEST_CASE("rational literals")
{
    CHECK(q("4/6") == Rational(2, 3));
    CHECK(to_string(q("4/6")) == "2/3");
    CHECK(to_string(q("-1/8")) == "-1/8");
    CHECK(to_string(q("272")) == "272");
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
    CHECK(factorial(0) == 1);
    CHECK(factorial(6) == 720);
    CHECK(binomial(6, 2) == 15);
}

TEST_CASE("gaussian rationals")
{
    const GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    CHECK(half_i_power(2) == GaussianRational(q("-1/4")));
    CHECK(half_i_power(3) == GaussianRational(Rational(0), q("-1/8")));
    CHECK(pow(i, 4) == GaussianRational(1));
    const GaussianRational z(q("1/2"), q("3/4"));
    CHECK(z / z == GaussianRational(1));
    CHECK(z * z.conj() == GaussianRational(q("13/16")));
    CHECK_THROWS_AS(z / GaussianRational(), std::domain_error);
    CHECK(to_string(z) == "1/2+3/4*i");
    CHECK(to_string(-i) == "-i");
    CHECK(parse_gaussian("1/2", "3/4") == z);
}

TEST_CASE("polynomial arithmetic and rendering")
{
    const Polynomial a = sym("(x+p)^2 - 3");
    CHECK(to_string(a) == "x^2 + 2*x*p + p^2 - 3");
    CHECK(a.total_degree() == 2);
    CHECK(Polynomial(2).total_degree() == -1);
    CHECK(a.degree_in(0) == 2);
    CHECK(a - a == Polynomial(2));
    CHECK(a.derivative(0) == sym("2*x + 2*p"));
    CHECK(partial_derivative(a, 1) == sym("2*x + 2*p"));
    const std::vector<GaussianRational> z{GaussianRational(1), GaussianRational(2)};
    CHECK(a.evaluate(z) == GaussianRational(6));
    CHECK(a.substitute(1, GaussianRational(0)) == sym("x^2 - 3"));
    const std::vector<Polynomial> swap{sym("p"), sym("x")};
    CHECK(sym("x^3*p").compose(swap) == sym("p^3*x"));
    CHECK(a.extend(4).variables() == 4);
    CHECK(pow(sym("x"), 3) == sym("x^3"));
    CHECK((sym("x") * GaussianRational::i()).is_real() == false);
    CHECK((sym("x") * GaussianRational::i()).imag_part() == sym("x"));
}

TEST_CASE("polynomial error paths")
{
    CHECK_THROWS_AS(Polynomial(-1), dimension_error);
    CHECK(Polynomial(0).is_zero());
    CHECK_THROWS_AS(Polynomial(kMaxVariables + 1), dimension_error);
    CHECK_THROWS_AS(sym("x") + sym("x1", 2), dimension_error);
    CHECK_THROWS_AS(sym("x").derivative(2), dimension_error);
    CHECK_THROWS_AS(pow(sym("x"), 40) * pow(sym("x"), 40), capacity_error);
    CHECK_THROWS_AS(sym("x").extend(1), dimension_error);
    const std::vector<GaussianRational> short_point{GaussianRational(1)};
    CHECK_THROWS_AS(sym("x").evaluate(short_point), dimension_error);
}

TEST_CASE("symbol parser")
{
    CHECK(sym("x^2/2") == sym("1/2*x^2"));
    CHECK(sym("x1*p1", 1) == sym("x*p"));
    CHECK(to_string(sym("x1*p2+x2^2", 2)) == "x1*p2 + x2^2");
    CHECK(infer_dimension("x1*p2") == 2);
    CHECK(infer_dimension("x^2+p") == 1);
    CHECK(sym("  x *  p ") == sym("x*p"));
    CHECK(sym("-(x-p)") == sym("p-x"));
    CHECK_THROWS_AS(sym("x^"), parse_error);
    CHECK_THROWS_AS(sym("q"), parse_error);
    CHECK_THROWS_AS(sym("x2"), parse_error);
    CHECK_THROWS_AS(sym("(x+p"), parse_error);
    CHECK_THROWS_AS(sym("x/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_symbol("x", 0), dimension_error);
}

TEST_CASE("hbar series truncate to the smaller order")
{
    SymbolSeries a = SymbolSeries::constant(sym("x"), 4);
    a[1] = sym("p");
    const SymbolSeries b = SymbolSeries::constant(sym("p"), 2);
    const SymbolSeries prod = a * b;
    CHECK(prod.order() == 2);
    CHECK(prod[0] == sym("x*p"));
    CHECK(prod[1] == sym("p^2"));
    CHECK((a + b).order() == 2);
    CHECK(a.shifted(3)[4] == sym("p"));
    CHECK(a.shifted(3)[3] == sym("x"));
    CHECK_FALSE(a.is_hbar_independent());
    CHECK(a.truncated(0).is_hbar_independent());
    CHECK_THROWS_AS(SymbolSeries(-1, sym("x")), std::invalid_argument);
    CHECK_THROWS_AS(check_truncation_order(kMaxTruncationOrder + 1), capacity_error);
}

TEST_CASE("quantization tensors")
{
    const auto m = QuantizationTensor::moyal(2);
    CHECK(m.is_antisymmetric());
    CHECK(m(0, 2) == 1);
    CHECK(m(2, 0) == -1);
    CHECK(m.nonzero().size() == 4);
    const auto s = QuantizationTensor::standard_order(1);
    CHECK_FALSE(s.is_antisymmetric());
    CHECK(s(1, 0) == 1);
    CHECK(tensor_from_name("standard", 1) == s);
    CHECK_THROWS_AS(tensor_from_name("weyl", 1), std::invalid_argument);
    CHECK_THROWS_AS(QuantizationTensor(1, {Rational(0)}), dimension_error);
    CHECK_THROWS_AS(QuantizationTensor::moyal(0), dimension_error);
}

TEST_CASE("k-fold brackets")
{
    const auto j = QuantizationTensor::moyal(1);
    CHECK(bracket_k(sym("x"), sym("p"), 1, j) == sym("1"));
    CHECK(bracket_k(sym("p"), sym("x"), 1, j) == sym("-1"));
    CHECK(bracket_k(sym("x^2"), sym("p^2"), 2, j) == sym("4"));
    CHECK(bracket_k(sym("x^2"), sym("p^2"), 0, j) == sym("x^2*p^2"));
    CHECK(bracket_k(sym("x^2"), sym("p^2"), 3, j) == Polynomial(2));
    // Standard order: {C,D}_k = d_p^k C d_x^k D.
    CHECK(bracket_k(sym("p^2"), sym("x^2"), 2, QuantizationTensor::standard_order(1)) == sym("4"));
    CHECK(bracket_k(sym("x^2"), sym("p^2"), 2, QuantizationTensor::standard_order(1)) == Polynomial(2));
    CHECK_THROWS_AS(bracket_k(sym("x"), sym("p"), -1, j), std::invalid_argument);
    CHECK_THROWS_AS(bracket_k(sym("x1", 2), sym("x1", 2), 1, QuantizationTensor::moyal(3)), dimension_error);
}

TEST_CASE("brackets of an antisymmetric tensor are (-1)^k symmetric")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 2;
        const auto j = QuantizationTensor::moyal(n);
        const Polynomial c = random_symbol(rng, n, 3);
        const Polynomial d = random_symbol(rng, n, 3);
        for (int k = 0; k <= 3; ++k) {
            const GaussianRational sign(k % 2 == 0 ? 1 : -1);
            CHECK(bracket_k(c, d, k, j) == bracket_k(d, c, k, j) * sign);
        }
    }
}

TEST_CASE("random symbols have a quadratic part")
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const Polynomial a = random_symbol(rng, 2, 3);
        CHECK(a.variables() == 4);
        CHECK(a.total_degree() >= 2);
        CHECK(a.total_degree() <= 3);
        CHECK(a.is_real());
    }
}

TEST_CASE("JSON round trips")
{
    std::mt19937_64 rng(3);
    const Polynomial a = random_symbol(rng, 2, 3) + sym("x1*p2", 2) * GaussianRational(Rational(0), q("-2/3"));
    CHECK(polynomial_from_json(to_json(a)) == a);
    CHECK(polynomial_from_json(Json::parse(to_json(a).dump())) == a);

    SymbolSeries s = SymbolSeries::constant(a, 3);
    s[2] = random_symbol(rng, 2, 2);
    CHECK(series_from_json(to_json(s)) == s);

    JetSeries jet(sym("x^2+p^2"), 4);
    jet.add(2, 2, sym("-1/8"));
    jet.add(4, 3, sym("x^2"));
    CHECK(jet_from_json(to_json(jet)) == jet);

    const Polynomial base = sym("x^3+p^2");
    const ResolventSymbol r =
        ResolventSymbol::term(base, sym("x"), -3) + ResolventSymbol::term(base, sym("2"), -1);
    CHECK(resolvent_from_json(to_json(r)) == r);

    const LabeledGraph g(3, {{0, 1}, {1, 2}, {1, 2}});
    CHECK(labeled_graph_from_json(to_json(g)) == g);
    CHECK(to_json(g).dump() == R"({"V":3,"edges":[[1,2],[2,3],[2,3]]})");
}

TEST_CASE("malformed JSON is rejected")
{
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"terms":[]})")), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"N":1,"terms":[{"exp":[1],"re":"1"}]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"N":1,"terms":[{"exp":[1,0],"re":"x"}]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"order":2,"hbar":[]})")), std::invalid_argument);
    CHECK_THROWS_AS(labeled_graph_from_json(Json::parse(R"({"V":2,"edges":[[1,1]]})")), std::invalid_argument);
    CHECK_THROWS_AS(labeled_graph_from_json(Json::parse(R"({"V":2,"edges":[[0,1]]})")), std::invalid_argument);
    CHECK_THROWS_AS(labeled_graph_from_json(Json::parse(R"({"V":2,"edges":[[1,2,3]]})")), std::invalid_argument);
}

TEST_CASE("arrows keep the listed orientation")
{
    const auto [v, arrows] = arrows_from_json(Json::parse(R"({"V":3,"edges":[[2,1],[2,3]]})"));
    CHECK(v == 3);
    REQUIRE(arrows.size() == 2);
    CHECK(arrows[0] == Arrow{1, 0});
    CHECK(arrows[1] == Arrow{1, 2});
}
