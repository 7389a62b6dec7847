#include "civhs/series.hpp"

#include <algorithm>
#include <sstream>

namespace civhs::exact {

TruncSeries TruncSeries::zero(int trunc, std::string param) {
    TruncSeries s;
    s.param_ = std::move(param);
    s.min_exp_ = trunc - 1;
    s.trunc_ = trunc;
    return s;
}

TruncSeries TruncSeries::monomial(const Rat& c, int k, int trunc, std::string param) {
    TruncSeries s = zero(trunc, std::move(param));
    if (k < trunc && sgn(c) != 0) {
        s.min_exp_ = k;
        s.coeffs_ = {c};
    }
    return s;
}

TruncSeries TruncSeries::from_coeffs(std::vector<Rat> coeffs, int min_exp, int trunc,
                                     std::string param) {
    if (trunc <= min_exp && !coeffs.empty())
        throw precision_error("series window is empty");
    if (min_exp + static_cast<int>(coeffs.size()) > trunc)
        throw precision_error("series coefficients extend past the truncation order");
    TruncSeries s;
    s.param_ = std::move(param);
    s.min_exp_ = min_exp;
    s.coeffs_ = std::move(coeffs);
    s.trunc_ = trunc;
    s.normalize();
    return s;
}

void TruncSeries::normalize() {
    size_t lo = 0;
    while (lo < coeffs_.size() && sgn(coeffs_[lo]) == 0) ++lo;
    size_t hi = coeffs_.size();
    while (hi > lo && sgn(coeffs_[hi - 1]) == 0) --hi;
    if (lo == hi) {
        coeffs_.clear();
        min_exp_ = trunc_ - 1;
        return;
    }
    if (lo > 0 || hi < coeffs_.size()) {
        std::vector<Rat> t(coeffs_.begin() + lo, coeffs_.begin() + hi);
        coeffs_.swap(t);
        min_exp_ += static_cast<int>(lo);
    }
}

void TruncSeries::require_same_parameter(const TruncSeries& a, const TruncSeries& b) {
    if (a.param_ != b.param_)
        throw input_error("mismatched series parameter symbols: " + a.param_ + " vs " + b.param_);
}

Rat TruncSeries::coeff(int k) const {
    if (k >= trunc_)
        throw precision_error("coefficient t^" + std::to_string(k) +
                              " is outside the valid window (truncation order " +
                              std::to_string(trunc_) + ")");
    if (coeffs_.empty() || k < min_exp_) return Rat(0);
    int idx = k - min_exp_;
    if (idx >= static_cast<int>(coeffs_.size())) return Rat(0);
    return coeffs_[idx];
}

int TruncSeries::valuation() const {
    if (coeffs_.empty())
        throw precision_error("valuation of a series that is zero through its window");
    return min_exp_;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    require_same_parameter(*this, o);
    int trunc = std::min(trunc_, o.trunc_);
    int lo = std::min(min_exponent(), o.min_exponent());
    lo = std::min(lo, trunc - 1);
    std::vector<Rat> c(static_cast<size_t>(trunc - lo), Rat(0));
    auto add = [&](const TruncSeries& s, int sign) {
        if (s.coeffs_.empty()) return;
        for (size_t i = 0; i < s.coeffs_.size(); ++i) {
            int e = s.min_exp_ + static_cast<int>(i);
            if (e >= trunc) break;
            if (sign > 0) c[e - lo] += s.coeffs_[i];
            else c[e - lo] -= s.coeffs_[i];
        }
    };
    add(*this, 1);
    add(o, 1);
    return from_coeffs(std::move(c), lo, trunc, param_);
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    return series_mul(*this, o);
}

TruncSeries TruncSeries::operator*(const Rat& c) const {
    if (sgn(c) == 0) return zero(trunc_, param_);
    TruncSeries r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

TruncSeries TruncSeries::shifted(int k) const {
    TruncSeries r = *this;
    r.min_exp_ += k;
    r.trunc_ += k;
    return r;
}

TruncSeries TruncSeries::truncated(int new_trunc) const {
    if (new_trunc > trunc_)
        throw precision_error("cannot extend a series window by truncation");
    TruncSeries r = *this;
    r.trunc_ = new_trunc;
    if (!r.coeffs_.empty()) {
        int keep = new_trunc - r.min_exp_;
        if (keep <= 0) r.coeffs_.clear();
        else if (keep < static_cast<int>(r.coeffs_.size()))
            r.coeffs_.resize(static_cast<size_t>(keep));
    }
    r.normalize();
    if (r.coeffs_.empty()) r.min_exp_ = r.trunc_ - 1;
    return r;
}

TruncSeries TruncSeries::derivative() const {
    std::vector<Rat> c;
    c.reserve(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int e = min_exp_ + static_cast<int>(i);
        c.push_back(coeffs_[i] * e);
    }
    return from_coeffs(std::move(c), min_exp_ - 1, trunc_ - 1, param_);
}

TruncSeries TruncSeries::principal_part() const {
    // Needs the window to cover all negative exponents; the result is then an
    // exact Laurent polynomial, so it gets a wide window.
    if (trunc_ < 0)
        throw precision_error("window too short to extract the principal part");
    constexpr int kExactWindow = 1 << 10;
    TruncSeries r = *this;
    if (!r.coeffs_.empty()) {
        int keep = -r.min_exp_;
        if (keep <= 0) r.coeffs_.clear();
        else if (keep < static_cast<int>(r.coeffs_.size()))
            r.coeffs_.resize(static_cast<size_t>(keep));
    }
    r.trunc_ = kExactWindow;
    r.normalize();
    if (r.coeffs_.empty()) r.min_exp_ = r.trunc_ - 1;
    return r;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    if (a.parameter() != b.parameter())
        throw input_error("mismatched series parameter symbols: " + a.parameter() + " vs " +
                          b.parameter());
    // Unknown coefficients of one factor meet the other factor's support at
    // its actual valuation, which sharpens the usual window rule.
    int va = a.min_exponent(), vb = b.min_exponent();
    long trunc_l = std::min<long>(static_cast<long>(a.truncation_order()) + vb,
                                  static_cast<long>(b.truncation_order()) + va);
    int trunc = static_cast<int>(trunc_l);
    if (a.is_zero_on_window() || b.is_zero_on_window())
        return TruncSeries::zero(trunc, a.parameter());
    int lo = va + vb;
    if (trunc <= lo) throw precision_error("series product has an empty window");
    std::vector<Rat> c(static_cast<size_t>(trunc - lo), Rat(0));
    for (int i = va; i < std::min(a.truncation_order(), trunc - vb); ++i) {
        Rat ai = a.coeff(i);
        if (sgn(ai) == 0) continue;
        for (int j = vb; i + j < trunc && j < b.truncation_order(); ++j) {
            Rat bj = b.coeff(j);
            if (sgn(bj) == 0) continue;
            c[static_cast<size_t>(i + j - lo)] += ai * bj;
        }
    }
    return TruncSeries::from_coeffs(std::move(c), lo, trunc, a.parameter());
}

TruncSeries TruncSeries::compose(const TruncSeries& g) const {
    if (min_exponent() < 0)
        throw input_error("composition requires a nonnegative-valuation outer series");
    if (g.is_zero_on_window()) {
        // f(0): constant term, window limited by g's
        return monomial(coeff(0), 0, g.truncation_order(), g.parameter());
    }
    if (g.valuation() < 1)
        throw input_error("composition requires positive-valuation inner series");
    int window = g.truncation_order();
    TruncSeries acc = zero(window, g.parameter());
    // Horner from the top stored exponent down
    int top = coeffs_.empty() ? 0 : (min_exp_ + static_cast<int>(coeffs_.size()) - 1);
    int guaranteed = std::min<long>(window, static_cast<long>(trunc_) * g.valuation());
    for (int e = top; e >= 0; --e) {
        acc = series_mul(acc, g);
        Rat ce = (e >= min_exponent() && e < trunc_) ? coeff(e) : Rat(0);
        if (sgn(ce) != 0)
            acc = acc + monomial(ce, 0, acc.truncation_order(), g.parameter());
    }
    return acc.truncated(std::min(acc.truncation_order(), static_cast<int>(guaranteed)));
}

TruncSeries TruncSeries::pow(unsigned n, int window_cap) const {
    TruncSeries r = monomial(Rat(1), 0, window_cap, param_);
    for (unsigned i = 0; i < n; ++i) {
        r = series_mul(r, *this);
        if (r.truncation_order() > window_cap) r = r.truncated(window_cap);
    }
    return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    return param_ == o.param_ && trunc_ == o.trunc_ && min_exponent() == o.min_exponent() &&
           coeffs_ == o.coeffs_;
}

std::string TruncSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        int e = min_exp_ + static_cast<int>(i);
        if (!first) os << " + ";
        os << rat_to_string(coeffs_[i]);
        if (e != 0) os << "*" << param_ << "^" << e;
        first = false;
    }
    if (first) os << "0";
    os << " + O(" << param_ << "^" << trunc_ << ")";
    return os.str();
}

Rat series_residue(const DiffForm& form) {
    const TruncSeries& s = form.coeff_series;
    if (s.truncation_order() <= -1)
        throw precision_error("truncation window excludes exponent -1; residue undecidable");
    return s.coeff(-1);
}

}  // namespace civhs::exact
