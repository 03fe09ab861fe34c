#include <moduli/sympoly.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace moduli {

SymPoly SymPoly::constant(long nvars, const Rational& c) {
    SymPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

SymPoly SymPoly::monomial(Exponents e, const Rational& c) {
    SymPoly p(static_cast<long>(e.size()));
    p.add_term(e, c);
    return p;
}

SymPoly SymPoly::variable(long nvars, long i) {
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(std::move(e), 1);
}

SymPoly SymPoly::linear_sum(long nvars, const std::vector<long>& vars) {
    SymPoly p(nvars);
    for (long i : vars) {
        Exponents e(nvars, 0);
        e[i] = 1;
        p.add_term(e, 1);
    }
    return p;
}

void SymPoly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<long>(e.size()) != nvars_) throw std::invalid_argument("SymPoly: arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational SymPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    r += o;
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const {
    SymPoly r = *this;
    r -= o;
    return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("SymPoly: arity mismatch");
    SymPoly r(nvars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(nvars_);
            for (long i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

SymPoly SymPoly::operator*(const Rational& c) const {
    SymPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
    return r;
}

SymPoly SymPoly::operator/(const Rational& c) const {
    if (c == 0) throw std::invalid_argument("SymPoly: division by zero");
    SymPoly r(nvars_);
    for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef / c);
    return r;
}

SymPoly SymPoly::pow(long k) const {
    if (k < 0) throw std::invalid_argument("SymPoly: negative power");
    SymPoly r = constant(nvars_, 1);
    for (long i = 0; i < k; ++i) r = r * (*this);
    return r;
}

SymPoly SymPoly::divide_by_linear(const std::vector<long>& vars) const {
    if (vars.empty()) throw std::invalid_argument("SymPoly: empty divisor");
    // The lex-leading monomial of the divisor is the variable with the
    // smallest index; peel it off term by term.
    long lead = *std::min_element(vars.begin(), vars.end());
    SymPoly quotient(nvars_);
    SymPoly rem = *this;
    while (!rem.terms_.empty()) {
        auto it = std::prev(rem.terms_.end()); // lex-largest remaining term
        const Exponents& e = it->first;
        if (e[lead] == 0) throw std::invalid_argument("SymPoly: division is not exact");
        Exponents q = e;
        --q[lead];
        Rational c = it->second;
        quotient.add_term(q, c);
        for (long v : vars) {
            Exponents t = q;
            ++t[v];
            rem.add_term(t, -c);
        }
    }
    return quotient;
}

SymPoly SymPoly::embed(long new_nvars, const std::vector<long>& mapping) const {
    if (static_cast<long>(mapping.size()) != nvars_)
        throw std::invalid_argument("SymPoly: embedding arity mismatch");
    SymPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents t(new_nvars, 0);
        for (long i = 0; i < nvars_; ++i) t[mapping[i]] += e[i];
        r.add_term(t, c);
    }
    return r;
}

bool SymPoly::is_symmetric() const {
    // Adjacent-transposition check suffices.
    for (long i = 0; i + 1 < nvars_; ++i) {
        for (const auto& [e, c] : terms_) {
            Exponents t = e;
            std::swap(t[i], t[i + 1]);
            if (coeff(t) != c) return false;
        }
    }
    return true;
}

bool SymPoly::is_homogeneous(long degree) const {
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0L) != degree) return false;
    return true;
}

std::string SymPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        os << rat_str(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// LaurentSlice
// ---------------------------------------------------------------------------

LaurentSlice LaurentSlice::one(long nvars, std::vector<long> xbox) {
    LaurentSlice l(nvars, std::move(xbox));
    l.add(0, SymPoly::constant(nvars, 1));
    return l;
}

void LaurentSlice::add_clipped(long ypow, const SymPoly::Exponents& e, const Rational& c) {
    for (long i = 0; i < nvars_; ++i)
        if (e[i] > xbox_[i]) return;
    auto [it, inserted] = slices_.try_emplace(ypow, SymPoly(nvars_));
    it->second.add_term(e, c);
    if (it->second.is_zero()) slices_.erase(it);
}

void LaurentSlice::add(long ypow, const SymPoly& p) {
    for (const auto& [e, c] : p.terms()) add_clipped(ypow, e, c);
}

LaurentSlice LaurentSlice::operator+(const LaurentSlice& o) const {
    LaurentSlice r = *this;
    for (const auto& [yp, p] : o.slices_) r.add(yp, p);
    return r;
}

LaurentSlice LaurentSlice::operator*(const LaurentSlice& o) const {
    LaurentSlice r(nvars_, xbox_);
    for (const auto& [y1, p1] : slices_) {
        for (const auto& [y2, p2] : o.slices_) {
            for (const auto& [e1, c1] : p1.terms()) {
                for (const auto& [e2, c2] : p2.terms()) {
                    SymPoly::Exponents e(nvars_);
                    for (long i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                    r.add_clipped(y1 + y2, e, c1 * c2);
                }
            }
        }
    }
    return r;
}

LaurentSlice LaurentSlice::operator*(const Rational& c) const {
    LaurentSlice r(nvars_, xbox_);
    if (c == 0) return r;
    for (const auto& [yp, p] : slices_) r.add(yp, p * c);
    return r;
}

Rational LaurentSlice::coeff(long ypow, const SymPoly::Exponents& e) const {
    auto it = slices_.find(ypow);
    return it == slices_.end() ? Rational(0) : it->second.coeff(e);
}

SymPoly LaurentSlice::slice(long ypow) const {
    auto it = slices_.find(ypow);
    return it == slices_.end() ? SymPoly(nvars_) : it->second;
}

} // namespace moduli
