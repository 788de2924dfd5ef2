#include "ffod/ff.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>

#include "ffod/arith.hpp"

namespace ffod {

namespace {

// small polynomial helpers over F_p, coefficients lowest first
using FpPoly = std::vector<std::uint32_t>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>(
                (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    fp_trim(c);
    return c;
}

// a mod m, m monic
FpPoly fp_rem(FpPoly a, const FpPoly& m, std::uint64_t p) {
    fp_trim(a);
    while (a.size() >= m.size()) {
        std::uint64_t c = a.back();
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t t = a[shift + i] + p * p - c * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>(t % p);
        }
        fp_trim(a);
    }
    return a;
}

FpPoly fp_powmod(FpPoly base, mpz_class e, const FpPoly& m, std::uint64_t p) {
    FpPoly r{1};
    base = fp_rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_rem(fp_mul(r, base, p), m, p);
        base = fp_rem(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_monic(FpPoly a, std::uint64_t p);

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        b = fp_monic(std::move(b), p);  // fp_rem needs a monic divisor
        a = fp_rem(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

FpPoly fp_monic(FpPoly a, std::uint64_t p) {
    fp_trim(a);
    if (a.empty()) return a;
    mpz_class lc(static_cast<unsigned long>(a.back())), pz(static_cast<unsigned long>(p)), inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pz.get_mpz_t());
    std::uint64_t iv = mpz_get_ui(inv.get_mpz_t());
    for (auto& c : a) c = static_cast<std::uint32_t>(c * iv % p);
    return a;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
    fp_trim(a);
    return a;
}

// distinct-degree irreducibility criterion over F_p
bool fp_irreducible(const FpPoly& m, std::uint64_t p) {
    std::size_t k = m.size() - 1;
    if (k == 0) return false;
    mpz_class pz(static_cast<unsigned long>(p));
    FpPoly x{0, 1};
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(), k);
    FpPoly frob = fp_powmod(x, pk, m, p);
    if (fp_sub(frob, fp_rem(x, m, p), p) != FpPoly{}) return false;
    for (const auto& [l, e] : factor_u64(static_cast<std::uint64_t>(k))) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), pz.get_mpz_t(), k / l);
        FpPoly diff = fp_sub(fp_powmod(x, pe, m, p), fp_rem(x, m, p), p);
        FpPoly g = fp_gcd(fp_monic(m, p), fp_monic(std::move(diff), p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

FpPoly code_to_poly(std::uint32_t code, std::uint64_t p, unsigned k) {
    FpPoly c(k, 0);
    for (unsigned i = 0; i < k; ++i) {
        c[i] = static_cast<std::uint32_t>(code % p);
        code = static_cast<std::uint32_t>(code / p);
    }
    fp_trim(c);
    return c;
}

std::uint32_t poly_to_code(const FpPoly& c, std::uint64_t p) {
    std::uint64_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return static_cast<std::uint32_t>(code);
}

}  // namespace

FieldSpec::Ptr FieldSpec::make(std::uint64_t p, unsigned k,
                               std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime_u64(p)) throw NotPrime("FieldSpec: p is not prime");
    if (k < 1) throw PreconditionViolated("FieldSpec: k < 1");
    double qd = 1;
    for (unsigned i = 0; i < k; ++i) qd *= static_cast<double>(p);
    if (qd > 65536.0) throw TooLarge("FieldSpec: q > 2^16 unsupported");
    std::uint32_t q = static_cast<std::uint32_t>(pow_u64(p, k));

    auto fs = std::shared_ptr<FieldSpec>(new FieldSpec());
    fs->p_ = p;
    fs->k_ = k;
    fs->q_ = q;

    if (k == 1) {
        fs->modulus_ = {0, 1};  // the identity modulus: elements are residues mod p
        if (modulus && *modulus != fs->modulus_ && modulus->size() == 2)
            fs->modulus_ = *modulus;
    } else if (modulus) {
        if (modulus->size() != k + 1 || modulus->back() != 1)
            throw PreconditionViolated("FieldSpec: modulus not monic of degree k");
        for (auto c : *modulus)
            if (c >= p) throw PreconditionViolated("FieldSpec: modulus coefficient >= p");
        FpPoly m(modulus->begin(), modulus->end());
        if (!fp_irreducible(m, p))
            throw ReducibleModulus("FieldSpec: modulus is reducible");
        fs->modulus_ = *modulus;
    } else {
        // canonical choice: first irreducible in ascending coefficient-code order
        bool found = false;
        for (std::uint32_t code = 0; code < q && !found; ++code) {
            FpPoly m = code_to_poly(code, p, k);
            m.resize(k + 1, 0);
            m[k] = 1;
            if (fp_irreducible(m, p)) {
                fs->modulus_.assign(m.begin(), m.end());
                found = true;
            }
        }
        if (!found) throw Error("FieldSpec: no irreducible modulus found");
    }

    fs->addp_.resize(p * p);
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            fs->addp_[a * p + b] = static_cast<std::uint32_t>((a + b) % p);

    // find a multiplicative generator (smallest code), then fill exp/log
    FpPoly mod(fs->modulus_.begin(), fs->modulus_.end());
    auto raw_mul = [&](std::uint32_t a, std::uint32_t b) {
        return poly_to_code(
            fp_rem(fp_mul(code_to_poly(a, p, k), code_to_poly(b, p, k), p), mod, p), p);
    };
    auto raw_pow = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    auto qm1_factors = factor_u64(q - 1);
    for (std::uint32_t g = 1; g < q; ++g) {
        bool primitive = true;
        for (const auto& [l, e] : qm1_factors)
            if (raw_pow(g, (q - 1) / l) == 1) {
                primitive = false;
                break;
            }
        if (primitive || q == 2) {
            fs->generator_ = g;
            break;
        }
    }
    fs->exp_.resize(q - 1);
    fs->log_.assign(q, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        fs->exp_[i] = x;
        fs->log_[x] = i;
        x = raw_mul(x, fs->generator_);
    }
    return fs;
}

std::uint32_t FieldSpec::add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return addp_[a * p_ + b];
    std::uint32_t r = 0;
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint32_t da = static_cast<std::uint32_t>(a % p_);
        std::uint32_t db = static_cast<std::uint32_t>(b % p_);
        a = static_cast<std::uint32_t>(a / p_);
        b = static_cast<std::uint32_t>(b / p_);
        r += static_cast<std::uint32_t>(addp_[da * p_ + db] * scale);
        scale *= p_;
    }
    return r;
}

std::uint32_t FieldSpec::neg(std::uint32_t a) const {
    std::uint32_t r = 0;
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint32_t da = static_cast<std::uint32_t>(a % p_);
        a = static_cast<std::uint32_t>(a / p_);
        r += static_cast<std::uint32_t>(((p_ - da) % p_) * scale);
        scale *= p_;
    }
    return r;
}

std::uint32_t FieldSpec::sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
}

std::uint32_t FieldSpec::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("FieldSpec::inv(0)");
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t FieldSpec::div(std::uint32_t a, std::uint32_t b) const {
    return mul(a, inv(b));
}

std::uint32_t FieldSpec::pow(std::uint32_t a, const mpz_class& e) const {
    if (e < 0) return pow(inv(a), -e);
    if (a == 0) return e == 0 ? 1 : 0;
    mpz_class r = e % (q_ - 1);
    std::uint64_t em = mpz_get_ui(r.get_mpz_t());
    return exp_[static_cast<std::uint64_t>(log_[a]) * em % (q_ - 1)];
}

std::uint32_t FieldSpec::mul_via_coeffs(std::uint32_t a, std::uint32_t b) const {
    FpPoly mod(modulus_.begin(), modulus_.end());
    return poly_to_code(
        fp_rem(fp_mul(code_to_poly(a, p_, k_), code_to_poly(b, p_, k_), p_), mod, p_),
        p_);
}

std::uint64_t FieldSpec::unit_order(std::uint32_t x) const {
    if (x == 0) throw ZeroElement("unit_order(0)");
    // ord(g^i) = (q-1)/gcd(i, q-1)
    std::uint64_t i = log_[x];
    std::uint64_t n = q_ - 1;
    if (n == 0) return 1;
    return n / std::gcd(i, n);
}

bool FieldSpec::same(const FieldSpec& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
}

std::string FieldSpec::print_elem(std::uint32_t x) const {
    if (x >= q_) throw PreconditionViolated("print_elem: code out of range");
    if (k_ == 1) return std::to_string(x);
    if (x == 0) return "0";
    FpPoly c = code_to_poly(x, p_, k_);
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += (i == 1) ? "g" : "g^" + std::to_string(i);
        }
    }
    return out;
}

std::uint32_t FieldSpec::parse_elem(const std::string& raw) const {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty field element");
    std::uint32_t acc = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        bool negate = false;
        if (s[i] == '+' || s[i] == '-') {
            negate = (s[i] == '-');
            ++i;
            if (i >= s.size()) throw ParseError("dangling sign in field element");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        // term: INT | [INT*]g[^INT]
        std::uint64_t coef = 1;
        unsigned power = 0;
        std::size_t gpos = term.find('g');
        if (gpos == std::string::npos) {
            coef = std::strtoull(term.c_str(), nullptr, 10);
            if (term.empty() || term.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad field element term: " + term);
        } else {
            if (k_ == 1) throw ParseError("'g' in prime-field element");
            std::string pre = term.substr(0, gpos);
            if (!pre.empty()) {
                if (pre.back() != '*') throw ParseError("bad term: " + term);
                pre.pop_back();
                if (pre.empty() || pre.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("bad coefficient: " + term);
                coef = std::strtoull(pre.c_str(), nullptr, 10);
            }
            std::string post = term.substr(gpos + 1);
            if (post.empty()) {
                power = 1;
            } else {
                if (post[0] != '^' ||
                    post.substr(1).find_first_not_of("0123456789") != std::string::npos ||
                    post.size() < 2)
                    throw ParseError("bad exponent: " + term);
                power = static_cast<unsigned>(std::strtoul(post.c_str() + 1, nullptr, 10));
            }
        }
        if (coef >= p_) throw ParseError("coefficient >= p in field element");
        if (power >= k_ && !(k_ == 1 && power == 0))
            throw ParseError("power of g >= extension degree");
        std::uint32_t mono =
            static_cast<std::uint32_t>(coef * pow_u64(p_, power));
        acc = add(acc, negate ? neg(mono) : mono);
    }
    return acc;
}

FFElem operator+(const FFElem& a, const FFElem& b) {
    if (!a.field->same(*b.field)) throw FieldMismatch("FFElem +");
    return {a.field->add(a.code, b.code), a.field};
}
FFElem operator-(const FFElem& a, const FFElem& b) {
    if (!a.field->same(*b.field)) throw FieldMismatch("FFElem -");
    return {a.field->sub(a.code, b.code), a.field};
}
FFElem operator*(const FFElem& a, const FFElem& b) {
    if (!a.field->same(*b.field)) throw FieldMismatch("FFElem *");
    return {a.field->mul(a.code, b.code), a.field};
}
FFElem operator/(const FFElem& a, const FFElem& b) {
    if (!a.field->same(*b.field)) throw FieldMismatch("FFElem /");
    return {a.field->div(a.code, b.code), a.field};
}
bool operator==(const FFElem& a, const FFElem& b) {
    return a.field->same(*b.field) && a.code == b.code;
}
FFElem FFElem::pow(const mpz_class& e) const { return {field->pow(code, e), field}; }

}  // namespace ffod
