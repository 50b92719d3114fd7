#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diokex/errors.hpp"

namespace diokex {

// Power product over a fixed variable count.  Exponent vectors are dense;
// variable counts stay small in this protocol.
class Monomial {
public:
    explicit Monomial(std::size_t varcount)
        : exps_(varcount, 0), degree_(0) {}
    explicit Monomial(std::vector<std::uint32_t> exponents);

    std::size_t varcount() const { return exps_.size(); }
    std::uint32_t exponent(std::size_t var) const { return exps_[var]; }
    std::uint64_t degree() const { return degree_; }
    bool is_constant() const { return degree_ == 0; }

    bool divides(const Monomial& other) const;
    // Largest t with this^t | other; 0 when this is constant or does not divide.
    std::uint32_t division_multiplicity(const Monomial& other) const;

    Monomial times(const Monomial& other) const;
    Monomial divided_by(const Monomial& divisor) const;  // pre: divisor | *this
    Monomial power(std::uint32_t e) const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exps_ == b.exps_;
    }

private:
    std::vector<std::uint32_t> exps_;
    std::uint64_t degree_;
};

// Canonical term order: graded lexicographic with the higher variable index
// ranked first (degree decides, ties compare exponents from x_m down to x_1).
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return grlex_less(b, a);
    }
};

// Ambient ring: Z[x_1..x_m] or Z_w[x_1..x_m].  With a modulus present all
// coefficients are kept reduced into [0, w).
struct RingSpec {
    std::size_t varcount = 0;
    std::optional<mpz_class> modulus;

    bool finite() const { return modulus.has_value(); }

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.varcount == b.varcount && a.modulus == b.modulus;
    }
};

RingSpec integer_ring(std::size_t varcount);
RingSpec residue_ring(std::size_t varcount, mpz_class modulus);

// Sparse multivariate polynomial in canonical form: no zero coefficients,
// terms held in descending graded-lex order.  Values are immutable in
// practice; every operation returns a fresh polynomial.
class Polynomial {
public:
    using TermMap = std::map<Monomial, mpz_class, GrlexGreater>;

    explicit Polynomial(RingSpec spec) : spec_(std::move(spec)) {}

    static Polynomial constant(const RingSpec& spec, mpz_class value);
    static Polynomial term(const RingSpec& spec, Monomial m, mpz_class coefficient);
    static Polynomial variable(const RingSpec& spec, std::size_t var);

    const RingSpec& spec() const { return spec_; }
    std::size_t varcount() const { return spec_.varcount; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::uint64_t degree() const;  // total degree; 0 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    const Monomial* leading_monomial() const;
    mpz_class coefficient(const Monomial& m) const;
    mpz_class constant_term() const;
    bool mentions(std::size_t var) const;

    // Accumulate a term, keeping canonical form.
    void add_term(const Monomial& m, const mpz_class& coefficient);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
        lhs += -rhs;
        return lhs;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.spec_ == b.spec_ && a.terms_ == b.terms_;
    }

    mpz_class eval(const std::vector<mpz_class>& point) const;

private:
    RingSpec spec_;
    TermMap terms_;
};

Polynomial operator*(const mpz_class& scalar, const Polynomial& p);
Polynomial pow(const Polynomial& base, unsigned long exponent);

// Wire grammar:
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//   varpow := 'x' INDEX ('^' EXP)?
//   coeff  := decimal integer
// Canonical output: terms descending in the grlex order above, single spaces
// around binary '+'/'-', no sign on a positive leading term, coefficient 1
// elided except on the constant term, factors ascending by variable index.
Polynomial parse_polynomial(const std::string& text, const RingSpec& spec);
std::string format_polynomial(const Polynomial& p);

// Highest variable index mentioned in a polynomial text (0 when none);
// used to infer the variable count of an incoming relation.
std::size_t scan_varcount(const std::string& text);

}  // namespace diokex
