#ifndef CIVHS_SERIES_HPP
#define CIVHS_SERIES_HPP

#include <string>
#include <vector>
#include "civhs/rational.hpp"
#include "civhs/errors.hpp"

namespace civhs::exact {

// Truncated Laurent series in one parameter. A series knows exactly which
// coefficient window it is valid on: every exponent below min_exponent() is
// an exact zero, every stored exponent is exact, and nothing is known from
// truncation_order() upward. All arithmetic shrinks the window
// conservatively, so a coefficient that can be read is always correct.
class TruncSeries {
public:
    TruncSeries() : param_("t"), min_exp_(0), trunc_(1) {}

    // zero series, known up to (not including) trunc
    static TruncSeries zero(int trunc, std::string param = "t");
    // c * t^k, known through order trunc
    static TruncSeries monomial(const Rat& c, int k, int trunc, std::string param = "t");
    static TruncSeries from_coeffs(std::vector<Rat> coeffs, int min_exp, int trunc,
                                   std::string param = "t");

    const std::string& parameter() const { return param_; }
    int truncation_order() const { return trunc_; }
    // Lower bound of the support: exponents below are exact zeros. For a
    // series with no nonzero stored coefficient this equals the truncation
    // order (the series is zero everywhere it is known).
    int min_exponent() const { return coeffs_.empty() ? trunc_ : min_exp_; }

    bool is_zero_on_window() const { return coeffs_.empty(); }

    // Coefficient of t^k; throws precision_error if k is outside the window.
    Rat coeff(int k) const;

    // valuation (exponent of first nonzero coefficient); precision_error when
    // the series is zero through the whole window
    int valuation() const;

    TruncSeries operator-() const;
    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries operator*(const Rat& c) const;

    TruncSeries shifted(int k) const;          // multiply by t^k
    TruncSeries truncated(int new_trunc) const;
    TruncSeries derivative() const;            // d/dt
    // keep only exponents < 0
    TruncSeries principal_part() const;

    // this(g(t)) for g with positive valuation; parameter of result = g's
    TruncSeries compose(const TruncSeries& g) const;

    TruncSeries pow(unsigned n, int window_cap) const;

    bool operator==(const TruncSeries& o) const;

    std::string to_string() const;

private:
    void normalize();
    static void require_same_parameter(const TruncSeries& a, const TruncSeries& b);

    std::string param_;
    int min_exp_;               // exponent of coeffs_[0] when nonempty
    std::vector<Rat> coeffs_;   // trimmed: first and last entries nonzero
    int trunc_;                 // exponents >= trunc_ are unknown
};

// g(t) dt
struct DiffForm {
    TruncSeries coeff_series;
};

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);

// coefficient of t^-1; precision_error if the window excludes exponent -1
Rat series_residue(const DiffForm& form);

}  // namespace civhs::exact

#endif
