#include "diokex/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "diokex/intmath.hpp"

namespace diokex {

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exps_(std::move(exponents)), degree_(0) {
    for (std::uint32_t e : exps_) degree_ += e;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

std::uint32_t Monomial::division_multiplicity(const Monomial& other) const {
    std::uint32_t t = std::numeric_limits<std::uint32_t>::max();
    bool nontrivial = false;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        nontrivial = true;
        t = std::min(t, other.exps_[i] / exps_[i]);
    }
    return nontrivial ? t : 0;
}

Monomial Monomial::times(const Monomial& other) const {
    std::vector<std::uint32_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        const std::uint64_t sum =
            std::uint64_t{exps_[i]} + std::uint64_t{other.exps_[i]};
        if (sum > std::numeric_limits<std::uint32_t>::max())
            throw std::overflow_error("monomial exponent overflow");
        e[i] = static_cast<std::uint32_t>(sum);
    }
    return Monomial(std::move(e));
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
    std::vector<std::uint32_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        e[i] = exps_[i] - divisor.exps_[i];
    return Monomial(std::move(e));
}

Monomial Monomial::power(std::uint32_t k) const {
    std::vector<std::uint32_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        const std::uint64_t prod = std::uint64_t{exps_[i]} * k;
        if (prod > std::numeric_limits<std::uint32_t>::max())
            throw std::overflow_error("monomial exponent overflow");
        e[i] = static_cast<std::uint32_t>(prod);
    }
    return Monomial(std::move(e));
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.varcount(); i-- > 0;)
        if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
    return false;
}

RingSpec integer_ring(std::size_t varcount) { return RingSpec{varcount, std::nullopt}; }

RingSpec residue_ring(std::size_t varcount, mpz_class modulus) {
    if (modulus < 2) throw DimensionError("residue ring needs modulus >= 2");
    return RingSpec{varcount, std::move(modulus)};
}

namespace {

mpz_class reduce_coefficient(const RingSpec& spec, const mpz_class& c) {
    return spec.finite() ? mod_floor(c, *spec.modulus) : c;
}

void require_same_spec(const RingSpec& a, const RingSpec& b) {
    if (!(a == b)) throw DimensionError("ring spec mismatch");
}

}  // namespace

Polynomial Polynomial::constant(const RingSpec& spec, mpz_class value) {
    Polynomial p(spec);
    p.add_term(Monomial(spec.varcount), value);
    return p;
}

Polynomial Polynomial::term(const RingSpec& spec, Monomial m, mpz_class coefficient) {
    if (m.varcount() != spec.varcount)
        throw DimensionError("monomial varcount mismatch");
    Polynomial p(spec);
    p.add_term(m, coefficient);
    return p;
}

Polynomial Polynomial::variable(const RingSpec& spec, std::size_t var) {
    if (var >= spec.varcount) throw DimensionError("variable index out of range");
    std::vector<std::uint32_t> e(spec.varcount, 0);
    e[var] = 1;
    return term(spec, Monomial(std::move(e)), 1);
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

std::uint64_t Polynomial::degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

const Monomial* Polynomial::leading_monomial() const {
    return terms_.empty() ? nullptr : &terms_.begin()->first;
}

mpz_class Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

mpz_class Polynomial::constant_term() const {
    return coefficient(Monomial(spec_.varcount));
}

bool Polynomial::mentions(std::size_t var) const {
    for (const auto& [m, c] : terms_)
        if (m.exponent(var) > 0) return true;
    return false;
}

void Polynomial::add_term(const Monomial& m, const mpz_class& coefficient) {
    if (m.varcount() != spec_.varcount)
        throw DimensionError("monomial varcount mismatch");
    auto [it, inserted] = terms_.emplace(m, coefficient);
    if (!inserted) it->second += coefficient;
    it->second = reduce_coefficient(spec_, it->second);
    if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
    Polynomial r(spec_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), m, reduce_coefficient(spec_, -c));
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    require_same_spec(spec_, rhs.spec_);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_spec(a.spec(), b.spec());
    Polynomial r(a.spec());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            r.add_term(ma.times(mb), ca * cb);
    return r;
}

Polynomial operator*(const mpz_class& scalar, const Polynomial& p) {
    Polynomial r(p.spec());
    for (const auto& [m, c] : p.terms()) r.add_term(m, scalar * c);
    return r;
}

Polynomial pow(const Polynomial& base, unsigned long exponent) {
    Polynomial result = Polynomial::constant(base.spec(), 1);
    Polynomial sq = base;
    unsigned long e = exponent;
    while (e > 0) {
        if (e & 1) result = result * sq;
        e >>= 1;
        if (e > 0) sq = sq * sq;
    }
    return result;
}

mpz_class Polynomial::eval(const std::vector<mpz_class>& point) const {
    if (point.size() != spec_.varcount)
        throw DimensionError("evaluation point has wrong length");
    // Per-variable power tables up to the largest exponent present.
    std::vector<std::uint32_t> maxexp(spec_.varcount, 0);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < spec_.varcount; ++i)
            maxexp[i] = std::max(maxexp[i], m.exponent(i));
    std::vector<std::vector<mpz_class>> pows(spec_.varcount);
    for (std::size_t i = 0; i < spec_.varcount; ++i) {
        pows[i].resize(maxexp[i] + 1);
        pows[i][0] = 1;
        const mpz_class base = reduce_coefficient(spec_, point[i]);
        for (std::uint32_t e = 1; e <= maxexp[i]; ++e) {
            pows[i][e] = pows[i][e - 1] * base;
            pows[i][e] = reduce_coefficient(spec_, pows[i][e]);
        }
    }
    mpz_class sum = 0;
    for (const auto& [m, c] : terms_) {
        mpz_class t = c;
        for (std::size_t i = 0; i < spec_.varcount; ++i)
            if (m.exponent(i) > 0) t *= pows[i][m.exponent(i)];
        sum += reduce_coefficient(spec_, t);
    }
    return reduce_coefficient(spec_, sum);
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

class PolyScanner {
public:
    PolyScanner(const std::string& text, const RingSpec& spec)
        : text_(text), spec_(spec) {}

    Polynomial run() {
        Polynomial p(spec_);
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        bool negative = consume_sign_opt();
        parse_term(p, negative);
        skip_ws();
        while (!at_end()) {
            const char op = text_[pos_];
            if (op != '+' && op != '-')
                throw ParseError("expected '+' or '-'", pos_);
            ++pos_;
            skip_ws();
            parse_term(p, op == '-');
            skip_ws();
        }
        return p;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume_sign_opt() {
        if (!at_end() && text_[pos_] == '-') {
            ++pos_;
            skip_ws();
            return true;
        }
        return false;
    }

    bool digit_ahead() const {
        return !at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::string parse_digits() {
        const std::size_t start = pos_;
        while (digit_ahead()) ++pos_;
        if (pos_ == start) throw ParseError("expected digits", pos_);
        return text_.substr(start, pos_ - start);
    }

    unsigned long parse_small_number(const char* what) {
        const std::size_t at = pos_;
        const std::string digits = parse_digits();
        if (digits.size() > 9) throw ParseError(std::string(what) + " too large", at);
        return std::stoul(digits);
    }

    // varpow := 'x' INDEX ('^' EXP)?
    void parse_varpow(std::vector<std::uint32_t>& exps) {
        ++pos_;  // 'x'
        const std::size_t at = pos_;
        const unsigned long index = parse_small_number("variable index");
        if (index == 0) throw ParseError("variable indices start at 1", at);
        if (index > spec_.varcount)
            throw ParseError("unknown variable x" + std::to_string(index), at);
        unsigned long e = 1;
        if (!at_end() && text_[pos_] == '^') {
            ++pos_;
            e = parse_small_number("exponent");
        }
        const std::uint64_t sum = std::uint64_t{exps[index - 1]} + e;
        if (sum > std::numeric_limits<std::uint32_t>::max())
            throw ParseError("exponent overflow", at);
        exps[index - 1] = static_cast<std::uint32_t>(sum);
    }

    void parse_term(Polynomial& p, bool negative) {
        mpz_class coeff = 1;
        std::vector<std::uint32_t> exps(spec_.varcount, 0);
        bool saw_factor = false;
        if (!at_end() && text_[pos_] == '-') {  // tolerated: signed coefficient
            ++pos_;
            negative = !negative;
        }
        if (digit_ahead()) {
            coeff = mpz_class(parse_digits());
            saw_factor = true;
        } else if (!at_end() && text_[pos_] == 'x') {
            parse_varpow(exps);
            saw_factor = true;
        }
        if (!saw_factor) throw ParseError("expected term", pos_);
        while (!at_end()) {
            const std::size_t before = pos_;
            skip_ws();
            if (at_end() || text_[pos_] != '*') {
                pos_ = before;
                break;
            }
            ++pos_;
            skip_ws();
            if (!at_end() && text_[pos_] == 'x') {
                parse_varpow(exps);
            } else {
                throw ParseError("expected variable after '*'", pos_);
            }
        }
        if (negative) coeff = -coeff;
        p.add_term(Monomial(std::move(exps)), coeff);
    }

    const std::string& text_;
    const RingSpec& spec_;
    std::size_t pos_ = 0;
};

void format_term(std::ostream& os, const Monomial& m, const mpz_class& coeff) {
    mpz_class a = abs(coeff);
    bool need_star = false;
    if (m.is_constant()) {
        os << a.get_str();
        return;
    }
    if (a != 1) {
        os << a.get_str();
        need_star = true;
    }
    for (std::size_t i = 0; i < m.varcount(); ++i) {
        if (m.exponent(i) == 0) continue;
        if (need_star) os << '*';
        os << 'x' << (i + 1);
        if (m.exponent(i) > 1) os << '^' << m.exponent(i);
        need_star = true;
    }
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingSpec& spec) {
    return PolyScanner(text, spec).run();
}

std::string format_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        format_term(os, m, c);
    }
    return os.str();
}

std::size_t scan_varcount(const std::string& text) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'x') continue;
        std::size_t j = i + 1;
        std::size_t index = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            index = index * 10 + static_cast<std::size_t>(text[j] - '0');
            if (index > 1'000'000) throw ParseError("variable index too large", i);
            ++j;
        }
        best = std::max(best, index);
        i = j - 1;
    }
    return best;
}

}  // namespace diokex
