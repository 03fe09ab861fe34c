#ifndef MODULI_SYMPOLY_HPP
#define MODULI_SYMPOLY_HPP

#include <moduli/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace moduli {

// Sparse multivariate polynomial with rational coefficients in variables
// x_1..x_n. Exponent vectors are the map keys; zero coefficients are never
// stored, so structural equality is mathematical equality.
class SymPoly {
public:
    using Exponents = std::vector<long>;

    explicit SymPoly(long nvars = 0) : nvars_(nvars) {}
    static SymPoly constant(long nvars, const Rational& c);
    static SymPoly monomial(Exponents e, const Rational& c);
    // x_{i} (0-based variable index)
    static SymPoly variable(long nvars, long i);
    // sum of the variables with the given 0-based indices
    static SymPoly linear_sum(long nvars, const std::vector<long>& vars);

    long nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c);
    Rational coeff(const Exponents& e) const;

    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly operator*(const Rational& c) const;
    SymPoly operator/(const Rational& c) const;
    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    bool operator==(const SymPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    SymPoly pow(long k) const;

    // Exact division by sum_{i in vars} x_i; throws if the remainder is
    // nonzero (the recursions guarantee divisibility, so this is a check).
    SymPoly divide_by_linear(const std::vector<long>& vars) const;

    // Reinterpret this polynomial in a larger variable set: variable i of
    // *this becomes variable mapping[i] of the result.
    SymPoly embed(long new_nvars, const std::vector<long>& mapping) const;

    bool is_symmetric() const;
    bool is_homogeneous(long degree) const;

    std::string str() const; // deterministic "c*x1^a*x2^b + ..." form

private:
    long nvars_;
    std::map<Exponents, Rational> terms_;
};

// Finite Laurent object used by the series-coefficient machinery: a map from
// the power of a distinguished variable y (which may be negative) to a
// polynomial in x_1..x_n. All arithmetic truncates x-exponents to a fixed
// componentwise box, which keeps every object finite even though negative
// y powers pair with unbounded x degrees in the untruncated series.
class LaurentSlice {
public:
    LaurentSlice(long nvars, std::vector<long> xbox) : nvars_(nvars), xbox_(std::move(xbox)) {}

    static LaurentSlice one(long nvars, std::vector<long> xbox);

    long nvars() const { return nvars_; }
    const std::vector<long>& xbox() const { return xbox_; }
    const std::map<long, SymPoly>& slices() const { return slices_; }

    void add(long ypow, const SymPoly& p);
    LaurentSlice operator+(const LaurentSlice& o) const;
    LaurentSlice operator*(const LaurentSlice& o) const;
    LaurentSlice operator*(const Rational& c) const;

    Rational coeff(long ypow, const SymPoly::Exponents& e) const;
    SymPoly slice(long ypow) const;

private:
    void add_clipped(long ypow, const SymPoly::Exponents& e, const Rational& c);
    long nvars_;
    std::vector<long> xbox_;
    std::map<long, SymPoly> slices_;
};

} // namespace moduli

#endif // MODULI_SYMPOLY_HPP
