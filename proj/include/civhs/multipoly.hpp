#ifndef CIVHS_MULTIPOLY_HPP
#define CIVHS_MULTIPOLY_HPP

#include <array>
#include <map>
#include <string>
#include <vector>
#include <utility>
#include "civhs/rational.hpp"
#include "civhs/series.hpp"
#include "civhs/errors.hpp"

namespace civhs::exact {

// Dense exponent vector over at most 3 variables, sparse term map.
// Variables are fixed as x,y (2 vars) or x,y,z (3 vars).
using Expo = std::array<int, 3>;

class MultiPoly {
public:
    explicit MultiPoly(int nvars = 2) : nvars_(check_nvars(nvars)) {}

    static MultiPoly constant(const Rat& c, int nvars);
    static MultiPoly variable(int index, int nvars);
    static MultiPoly monomial(const Rat& c, const Expo& e, int nvars);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    Rat coeff(const Expo& e) const;
    void set_coeff(const Expo& e, const Rat& c);

    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(int var) const;
    bool is_homogeneous() const;
    // degree-d homogeneous component
    MultiPoly homogeneous_part(int d) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rat& c) const;
    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    MultiPoly partial(int var) const;

    Rat evaluate(const std::vector<Rat>& point) const;

    // substitute var := value, keeping the variable count
    MultiPoly substitute_value(int var, const Rat& value) const;
    // drop a variable that no longer occurs (3 -> 2 vars, keeping order of the rest)
    MultiPoly drop_variable(int var) const;
    // shift origin: p(x+a, y+b[, z+c])
    MultiPoly translated(const std::vector<Rat>& offset) const;
    // linear change of variables: x_i := sum_j m[i][j] * x_j
    MultiPoly linear_change(const std::vector<std::vector<Rat>>& m) const;
    // swap two variables
    MultiPoly swapped(int a, int b) const;

    std::string to_string() const;

private:
    static int check_nvars(int n);
    void add_term(const Expo& e, const Rat& c);

    int nvars_;
    std::map<Expo, Rat> terms_;  // no zero coefficients stored
};

// formal partials (F_x, F_y)
std::pair<MultiPoly, MultiPoly> poly_partials(const MultiPoly& f);

// F(x(t), y(t)) for a 2-variable F, exact through the propagated window
TruncSeries substitute_series(const MultiPoly& f, const TruncSeries& x_of_t,
                              const TruncSeries& y_of_t);

// Parses "y^2*z - x^3" style text: rational coefficients, variables x,y,z,
// operators + - * ^ and parentheses.
MultiPoly parse_poly(const std::string& text, int nvars = 3);

const std::array<std::string, 3>& variable_names();

}  // namespace civhs::exact

#endif
