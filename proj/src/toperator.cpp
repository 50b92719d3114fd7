#include "diokex/toperator.hpp"

#include <sstream>
#include <stdexcept>

#include "diokex/intmath.hpp"

namespace diokex {

TOperator::TOperator(mpz_class a, mpz_class b, unsigned long c)
    : pre_add(std::move(a)), post_add(std::move(b)), exponent(c) {
    if (c == 0 || c % 2 == 0)
        throw std::invalid_argument("operator exponent must be odd and positive");
}

bool operator==(const TOperator& x, const TOperator& y) {
    return x.pre_add == y.pre_add && x.post_add == y.post_add &&
           x.exponent == y.exponent;
}

std::string TOperator::to_text() const {
    std::ostringstream os;
    os << "T[" << pre_add.get_str() << ',' << post_add.get_str() << ';'
       << exponent << ']';
    return os.str();
}

std::string OperatorChain::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (i > 0) out += ',';
        out += ops_[i].to_text();
    }
    return out;
}

namespace {

mpz_class parse_integer_until(const std::string& text, std::size_t& pos, char stop) {
    const std::size_t at = pos;
    const std::size_t end = text.find(stop, pos);
    if (end == std::string::npos) throw ParseError("unterminated operator", at);
    const std::string digits = text.substr(pos, end - pos);
    if (digits.empty() ||
        digits.find_first_not_of("-0123456789") != std::string::npos ||
        (digits.size() > 1 && digits.find('-', 1) != std::string::npos))
        throw ParseError("bad integer in operator", at);
    pos = end + 1;
    return mpz_class(digits);
}

}  // namespace

OperatorChain OperatorChain::from_text(const std::string& text) {
    std::vector<TOperator> ops;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text.compare(pos, 2, "T[") != 0)
            throw ParseError("expected 'T['", pos);
        pos += 2;
        mpz_class a = parse_integer_until(text, pos, ',');
        mpz_class b = parse_integer_until(text, pos, ';');
        mpz_class c = parse_integer_until(text, pos, ']');
        if (c <= 0 || !c.fits_ulong_p())
            throw ParseError("operator exponent out of range", pos);
        try {
            ops.emplace_back(std::move(a), std::move(b), c.get_ui());
        } catch (const std::invalid_argument&) {
            throw ParseError("operator exponent must be odd", pos);
        }
        if (pos < text.size()) {
            if (text[pos] != ',') throw ParseError("expected ','", pos);
            ++pos;
            if (pos == text.size())
                throw ParseError("trailing ',' in operator chain", pos);
        }
    }
    if (ops.empty()) throw ParseError("empty operator chain", 0);
    return OperatorChain(std::move(ops));
}

Polynomial apply_symbolic(const TOperator& op, const Polynomial& p) {
    const Polynomial shifted = p + Polynomial::constant(p.spec(), op.pre_add);
    return pow(shifted, op.exponent) + Polynomial::constant(p.spec(), op.post_add);
}

Polynomial chain_apply_symbolic(const OperatorChain& chain, const Polynomial& g,
                                const Relation& rel, Rng& rng, std::size_t budget) {
    if (chain.empty()) throw std::invalid_argument("empty operator chain");
    Polynomial image = g;
    for (auto it = chain.ops().rbegin(); it != chain.ops().rend(); ++it)
        image = apply_symbolic(*it, image);
    image = normal_form(image, rel);
    if (budget > 0) image = randomize_representation(image, rel, rng, budget);
    return image;
}

mpz_class apply_numeric(const TOperator& op, const mpz_class& v, const RingSpec& spec) {
    if (spec.finite()) {
        const mpz_class& w = *spec.modulus;
        const mpz_class base = mod_floor(v + op.pre_add, w);
        mpz_class r;
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), op.exponent, w.get_mpz_t());
        return mod_floor(r + op.post_add, w);
    }
    mpz_class r;
    const mpz_class base = v + op.pre_add;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), op.exponent);
    return r + op.post_add;
}

mpz_class invert_numeric(const TOperator& op, const mpz_class& v, const RingSpec& spec) {
    if (spec.finite()) {
        const mpz_class& w = *spec.modulus;
        const mpz_class cinv = inverse_exponent(op.exponent, w);
        const mpz_class base = mod_floor(v - op.post_add, w);
        mpz_class r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), cinv.get_mpz_t(), w.get_mpz_t());
        return mod_floor(r - op.pre_add, w);
    }
    const auto root = integer_root(v - op.post_add, op.exponent);
    if (!root)
        throw NotAPerfectPower("value is not an exact power; transcript does not match");
    return *root - op.pre_add;
}

mpz_class chain_apply_numeric(const OperatorChain& chain, mpz_class v,
                              const RingSpec& spec) {
    for (auto it = chain.ops().rbegin(); it != chain.ops().rend(); ++it)
        v = apply_numeric(*it, v, spec);
    return v;
}

mpz_class chain_invert_numeric(const OperatorChain& chain, mpz_class p,
                               const RingSpec& spec) {
    for (const TOperator& op : chain.ops()) p = invert_numeric(op, p, spec);
    return p;
}

std::optional<mpz_class> integer_root(const mpz_class& v, unsigned long c) {
    if (c == 0 || c % 2 == 0)
        throw std::invalid_argument("integer_root requires an odd positive exponent");
    if (v < 0) {
        auto r = integer_root(mpz_class(-v), c);
        if (r) *r = -*r;
        return r;
    }
    if (v == 0) return mpz_class(0);
    // Monotone bisection on r^c; the root has about bits(v)/c bits.
    const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    mpz_class lo = 0;
    mpz_class hi = 1;
    hi <<= static_cast<mp_bitcnt_t>(bits / c + 1);
    while (lo <= hi) {
        const mpz_class mid = (lo + hi) / 2;
        mpz_class mc;
        mpz_pow_ui(mc.get_mpz_t(), mid.get_mpz_t(), c);
        if (mc == v) return mid;
        if (mc < v)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return std::nullopt;
}

mpz_class inverse_exponent(unsigned long c, const mpz_class& w) {
    if (c == 0 || c % 2 == 0)
        throw std::invalid_argument("exponent must be odd and positive");
    const mpz_class phi = totient(factorize(w));
    if (phi == 1) return 1;
    mpz_class inv;
    const mpz_class ce(c);
    if (mpz_invert(inv.get_mpz_t(), ce.get_mpz_t(), phi.get_mpz_t()) == 0)
        throw NoInverseExponent("exponent shares a factor with phi(w)");
    return inv;
}

}  // namespace diokex
