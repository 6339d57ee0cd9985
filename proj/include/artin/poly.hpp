#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "artin/fp.hpp"

namespace artin {

/// Exponent vector of a monomial in a fixed number of variables.
struct Monomial {
    std::vector<std::uint32_t> exps;

    static Monomial one(std::size_t nvars) { return Monomial{std::vector<std::uint32_t>(nvars, 0)}; }
    static Monomial var(std::size_t nvars, std::size_t i, std::uint32_t e = 1);

    std::size_t nvars() const { return exps.size(); }
    std::uint64_t degree() const;
    bool is_one() const { return degree() == 0; }

    Monomial times(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial divided_by(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return exps != o.exps; }
};

/// Graded reverse lexicographic order: lower degree first; at equal degree the
/// monomial with the larger exponent in the last differing variable is smaller.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(a, b); }
};

/// Sparse polynomial over F_p. Terms are kept in ascending grevlex order and
/// zero coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<Monomial, Scalar, GrevlexLess>;

    Poly(FieldConfig field, std::size_t nvars) : field_(field), nvars_(nvars) {}
    static Poly constant(FieldConfig field, std::size_t nvars, Scalar c);
    static Poly variable(FieldConfig field, std::size_t nvars, std::size_t i);
    static Poly term(FieldConfig field, std::size_t nvars, Monomial m, Scalar c);

    const FieldConfig& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    std::uint64_t degree() const; ///< degree of the leading term; 0 for the zero polynomial

    /// Leading (grevlex-largest) term. Throws on the zero polynomial.
    std::pair<Monomial, Scalar> leading() const;
    Scalar coeff(const Monomial& m) const;

    void add_term(const Monomial& m, Scalar c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(Scalar c) const;
    /// this * (c * m)
    Poly times_term(const Monomial& m, Scalar c) const;
    Poly pow(std::uint64_t e) const;

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    void check_compatible(const Poly& o) const;

    FieldConfig field_;
    std::size_t nvars_;
    TermMap terms_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line, std::size_t col)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line(line), col(col) {}
    std::size_t line, col;
};

/// Parse an integer polynomial expression over the named variables.
/// Grammar: sums and differences of products of powers; atoms are nonnegative
/// integers, variable names, and parenthesized expressions; '^' takes a
/// nonnegative integer exponent. Example: "(1+S)^2 - 1".
Poly parse_poly(FieldConfig field, const std::vector<std::string>& vars, const std::string& text);

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars);
/// Deterministic rendering, terms in ascending grevlex order.
std::string poly_to_string(const Poly& f, const std::vector<std::string>& vars);

} // namespace artin
