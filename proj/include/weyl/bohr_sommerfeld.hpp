#ifndef WEYL_BOHR_SOMMERFELD_HPP
#define WEYL_BOHR_SOMMERFELD_HPP

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "weyl/functional_calculus.hpp"

namespace weyl
{

/// P_{j,l}(H): sum over reduced graphs with l-1 vertices and j edges of (i/2)^j (c/S) lambda(H).
Polynomial universal_polynomial(const Polynomial &h, int j, int l);
/// Every nonzero P_{j,l} for fixed j, keyed by l.
std::map<int, Polynomial> universal_polynomials(const Polynomial &h, int j);
/// sum_l P_{j,l} / (a - H)^l.
ResolventSymbol resolvent_from_universal(const Polynomial &h, int j);

// One graph's share of the action: weight * (d/dE)^derivative of the integral of `integrand`
// over the energy curve in time, at hbar^hbar.
struct ActionTerm {
    int hbar = 0;
    int derivative = 0;
    GaussianRational weight;
    Polynomial integrand;
    std::string graph;
};

struct ActionSeries {
    int order = 0;
    std::vector<ActionTerm> terms;

    /// weight * integrand summed per (hbar power, derivative order); zero sums dropped.
    std::map<std::pair<int, int>, Polynomial> combined() const;
};

/// Every reduced graph with 1 <= E <= order weighted by (i/2)^E (-1)^V c / (S V!), d = V - 1.
ActionSeries action_corrections(const Polynomial &h, int order);
/// The single-graph hbar^2 term and the five graphs at hbar^4 in which every vertex has at least
/// two edges, with their fixed prefactors.
ActionSeries reduced_action_corrections(const Polynomial &h, int order);

// Jet variables for H = mu p^2/2 + V(x): slots x, p, mu, then V(0), V'(0), ..., V^(K)(0).
inline constexpr int kPotentialJetOrder = 6;
inline constexpr int kJetMassSlot = 2;
inline constexpr int kJetPotentialSlot = 3;
int jet_variables();
std::vector<std::string> jet_variable_names();
/// The generic kinetic-plus-potential symbol with V = sum_k V^(k)(0) x^k/k!, k <= kPotentialJetOrder.
Polynomial generic_split_hamiltonian();
/// The reduced corrections for the generic split symbol read at x = 0, per (hbar power, d):
/// polynomials in mu = 1/m and the potential jet.
std::map<std::pair<int, int>, Polynomial> split_form_corrections(int order);

// H = p^2/(2m) + V(x) with V a polynomial (coefficients in ascending powers).
class SplitHamiltonian
{
public:
    SplitHamiltonian(Rational mass, std::vector<Rational> potential);

    const Rational &mass() const { return mass_; }
    const std::vector<Rational> &potential() const { return potential_; }
    Polynomial symbol() const;
    Polynomial potential_polynomial() const;

    long double potential_at(long double x) const;
    long double minimum_location() const { return x_min_; }
    long double minimum_value() const { return v_min_; }

    // x- < x+ with V(x+-) = E; throws std::domain_error unless E > min V and both turning points
    // are simple and bound a single well.
    std::pair<long double, long double> turning_points(long double e) const;

private:
    Rational mass_;
    std::vector<Rational> potential_;
    std::vector<long double> v_;
    long double x_min_ = 0;
    long double v_min_ = 0;
};

inline constexpr long double kPeriodTolerance = 1e-10L;

/// Integral of G(x, p) along the energy curve in time, dt = m dx / p, through x = c + h sin(theta)
/// and Gauss-Legendre panels doubled until the relative change is below `tolerance`.
long double period_integral(const SplitHamiltonian &h, long double e, const Polynomial &g,
                            long double tolerance = kPeriodTolerance);
/// The same integral in the x variable with a double-exponential rule; a check on the above.
long double period_integral_reference(const SplitHamiltonian &h, long double e, const Polynomial &g);
/// S_0(E) = closed-curve integral of p dx.
long double area_action(const SplitHamiltonian &h, long double e);

/// f^(d)(x) by central differences with Richardson extrapolation, starting from step h0.
long double richardson_derivative(const std::function<long double(long double)> &f, long double x, int d,
                                  long double h0, long double *error = nullptr);

enum class ActionForm { full, reduced };

// Numeric action S(E) = S_0 + sum_j hbar^j S_j for a split Hamiltonian.
class ActionEvaluator
{
public:
    ActionEvaluator(SplitHamiltonian h, int order, ActionForm form = ActionForm::reduced);

    const SplitHamiltonian &hamiltonian() const { return h_; }
    int order() const { return order_; }
    /// Graph part of S_j(E). The constant S_1 = pi is carried by the n - 1/2 of the rule.
    long double correction(int j, long double e) const;
    long double action(long double e, long double hbar) const;

private:
    struct Piece {
        int derivative;
        std::vector<std::tuple<int, int, long double>> terms; // x power, p power, coefficient
    };

    long double integrate(const Piece &piece, long double e, int panels) const;
    int panels_for(const Piece &piece, long double e) const;

    SplitHamiltonian h_;
    int order_;
    std::map<int, std::vector<Piece>> pieces_;
};

struct BsLevel {
    int n = 0;
    long double energy = 0;
    long double correction2 = 0; // hbar^2 S_2 at the solution
    long double correction4 = 0; // hbar^4 S_4 at the solution
    bool blowup = false;         // |hbar^4 S_4| > |hbar^2 S_2|
};

/// Solves 2 pi (n - 1/2) hbar = S(E) for n in [n_min, n_max]; order in {0, 2, 4}.
std::vector<BsLevel> bs_eigenvalues(const SplitHamiltonian &h, int n_min, int n_max, int order, long double hbar,
                                    ActionForm form = ActionForm::reduced);

struct OracleResult {
    std::vector<double> eigenvalues;
    double half_width = 0;
    int grid_points = 0;
    double last_change = 0; // relative change of the last refinement
};

/// Lowest `count` eigenvalues of -hbar^2/(2m) psi'' + V psi by finite differences on [-L, L],
/// refined with Richardson extrapolation in the grid spacing until they move < tolerance.
OracleResult schrodinger_oracle(const std::vector<Rational> &potential, double mass, double hbar, int count,
                                double tolerance = 1e-8);

} // namespace weyl

#endif
