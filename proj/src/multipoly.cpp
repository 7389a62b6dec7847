#include "civhs/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace civhs::exact {

const std::array<std::string, 3>& variable_names() {
    static const std::array<std::string, 3> names = {"x", "y", "z"};
    return names;
}

int MultiPoly::check_nvars(int n) {
    if (n != 2 && n != 3) throw input_error("MultiPoly supports 2 or 3 variables");
    return n;
}

MultiPoly MultiPoly::constant(const Rat& c, int nvars) {
    MultiPoly p(nvars);
    p.add_term({0, 0, 0}, c);
    return p;
}

MultiPoly MultiPoly::variable(int index, int nvars) {
    MultiPoly p(nvars);
    if (index < 0 || index >= nvars) throw input_error("variable index out of range");
    Expo e{0, 0, 0};
    e[static_cast<size_t>(index)] = 1;
    p.add_term(e, Rat(1));
    return p;
}

MultiPoly MultiPoly::monomial(const Rat& c, const Expo& e, int nvars) {
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

void MultiPoly::add_term(const Expo& e, const Rat& c) {
    for (int i = nvars_; i < 3; ++i)
        if (e[static_cast<size_t>(i)] != 0)
            throw input_error("exponent on an absent variable");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (sgn(c) != 0) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Rat MultiPoly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MultiPoly::set_coeff(const Expo& e, const Rat& c) {
    terms_.erase(e);
    if (sgn(c) != 0) add_term(e, c);
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
}

bool MultiPoly::is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = e[0] + e[1] + e[2];
        if (d == -1) d = s;
        else if (s != d) return false;
    }
    return true;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
    MultiPoly p(nvars_);
    for (const auto& [e, c] : terms_)
        if (e[0] + e[1] + e[2] == d) p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw input_error("variable count mismatch");
    MultiPoly p = *this;
    for (const auto& [e, c] : o.terms_) p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw input_error("variable count mismatch");
    MultiPoly p(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            p.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return p;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
    MultiPoly p(nvars_);
    if (sgn(c) == 0) return p;
    p = *this;
    for (auto& [e, v] : p.terms_) v *= c;
    return p;
}

MultiPoly MultiPoly::partial(int var) const {
    MultiPoly p(nvars_);
    size_t v = static_cast<size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Expo d = e;
        d[v] -= 1;
        p.add_term(d, c * e[v]);
    }
    return p;
}

Rat MultiPoly::evaluate(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw input_error("evaluation point has wrong dimension");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat term = c;
        for (int v = 0; v < nvars_; ++v) {
            for (int k = 0; k < e[static_cast<size_t>(v)]; ++k)
                term *= point[static_cast<size_t>(v)];
        }
        total += term;
    }
    return total;
}

MultiPoly MultiPoly::substitute_value(int var, const Rat& value) const {
    MultiPoly p(nvars_);
    size_t v = static_cast<size_t>(var);
    for (const auto& [e, c] : terms_) {
        Rat coeff = c;
        for (int k = 0; k < e[v]; ++k) coeff *= value;
        Expo d = e;
        d[v] = 0;
        p.add_term(d, coeff);
    }
    return p;
}

MultiPoly MultiPoly::drop_variable(int var) const {
    if (nvars_ != 3) throw input_error("drop_variable requires 3 variables");
    MultiPoly p(2);
    size_t v = static_cast<size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] != 0) throw input_error("cannot drop a variable that still occurs");
        Expo d{0, 0, 0};
        int j = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == var) continue;
            d[static_cast<size_t>(j++)] = e[static_cast<size_t>(i)];
        }
        p.add_term(d, c);
    }
    return p;
}

MultiPoly MultiPoly::translated(const std::vector<Rat>& offset) const {
    if (static_cast<int>(offset.size()) != nvars_)
        throw input_error("offset has wrong dimension");
    std::vector<std::vector<Rat>> shifted_vars;
    MultiPoly acc(nvars_);
    for (const auto& [e, c] : terms_) {
        // expand prod (x_v + a_v)^{e_v} via binomials
        MultiPoly term = MultiPoly::constant(c, nvars_);
        for (int v = 0; v < nvars_; ++v) {
            MultiPoly base = MultiPoly::variable(v, nvars_) +
                             MultiPoly::constant(offset[static_cast<size_t>(v)], nvars_);
            for (int k = 0; k < e[static_cast<size_t>(v)]; ++k) term = term * base;
        }
        acc = acc + term;
    }
    return acc;
}

MultiPoly MultiPoly::linear_change(const std::vector<std::vector<Rat>>& m) const {
    if (static_cast<int>(m.size()) != nvars_) throw input_error("matrix has wrong dimension");
    std::vector<MultiPoly> images;
    for (int i = 0; i < nvars_; ++i) {
        MultiPoly img(nvars_);
        for (int j = 0; j < nvars_; ++j)
            img = img + MultiPoly::variable(j, nvars_) * m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        images.push_back(img);
    }
    MultiPoly acc(nvars_);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = MultiPoly::constant(c, nvars_);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[static_cast<size_t>(v)]; ++k)
                term = term * images[static_cast<size_t>(v)];
        acc = acc + term;
    }
    return acc;
}

MultiPoly MultiPoly::swapped(int a, int b) const {
    MultiPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
        Expo d = e;
        std::swap(d[static_cast<size_t>(a)], d[static_cast<size_t>(b)]);
        p.add_term(d, c);
    }
    return p;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    // leading-degree-first, then reverse lex, for stable readable output
    std::vector<std::pair<Expo, Rat>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        int da = a.first[0] + a.first[1] + a.first[2];
        int db = b.first[0] + b.first[1] + b.first[2];
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ordered) {
        Rat a = c;
        if (first) {
            if (sgn(a) < 0) { os << "-"; a = -a; }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        bool has_var = e[0] || e[1] || e[2];
        bool coeff_one = (a == 1);
        if (!coeff_one || !has_var) os << rat_to_string(a);
        bool need_star = !coeff_one && has_var;
        for (int v = 0; v < 3; ++v) {
            if (e[static_cast<size_t>(v)] == 0) continue;
            if (need_star) os << "*";
            os << variable_names()[static_cast<size_t>(v)];
            if (e[static_cast<size_t>(v)] > 1) os << "^" << e[static_cast<size_t>(v)];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

std::pair<MultiPoly, MultiPoly> poly_partials(const MultiPoly& f) {
    return {f.partial(0), f.partial(1)};
}

TruncSeries substitute_series(const MultiPoly& f, const TruncSeries& x_of_t,
                              const TruncSeries& y_of_t) {
    if (f.nvars() != 2) throw input_error("substitute_series expects a 2-variable polynomial");
    if (x_of_t.parameter() != y_of_t.parameter())
        throw input_error("mismatched series parameter symbols");
    const std::string& param = x_of_t.parameter();
    int window = std::min(x_of_t.truncation_order(), y_of_t.truncation_order());

    int dx = f.degree_in(0), dy = f.degree_in(1);
    std::vector<TruncSeries> xpow(static_cast<size_t>(dx) + 1), ypow(static_cast<size_t>(dy) + 1);
    xpow[0] = TruncSeries::monomial(Rat(1), 0, window, param);
    ypow[0] = xpow[0];
    for (int i = 1; i <= dx; ++i) xpow[static_cast<size_t>(i)] = series_mul(xpow[static_cast<size_t>(i - 1)], x_of_t);
    for (int j = 1; j <= dy; ++j) ypow[static_cast<size_t>(j)] = series_mul(ypow[static_cast<size_t>(j - 1)], y_of_t);

    TruncSeries acc = TruncSeries::zero(window, param);
    bool any = false;
    for (const auto& [e, c] : f.terms()) {
        TruncSeries term = series_mul(xpow[static_cast<size_t>(e[0])], ypow[static_cast<size_t>(e[1])]) * c;
        acc = any ? acc + term : term;
        any = true;
    }
    if (!any) acc = TruncSeries::zero(window, param);
    if (acc.truncation_order() <= 0 && acc.is_zero_on_window())
        throw precision_error("catastrophic truncation: no retained coefficient is certain");
    return acc;
}

}  // namespace civhs::exact
