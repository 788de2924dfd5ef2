#include "ffod/polyring.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include "ffod/arith.hpp"

namespace ffod {

Poly::Poly(FieldSpec::Ptr fs, std::vector<std::uint32_t> coeffs)
    : fs_(std::move(fs)), c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldSpec::Ptr fs, std::uint32_t c) {
    return Poly(std::move(fs), {c});
}

std::uint32_t Poly::lead() const {
    if (c_.empty()) throw ZeroInput("lead of zero polynomial");
    return c_.back();
}

Poly Poly::monic() const { return scaled(fs_->inv(lead())); }

Poly Poly::scaled(std::uint32_t c) const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fs_->mul(c_[i], c);
    return Poly(fs_, std::move(r));
}

Poly Poly::shifted(unsigned n) const {
    if (c_.empty()) return *this;
    std::vector<std::uint32_t> r(c_.size() + n, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + n);
    return Poly(fs_, std::move(r));
}

std::uint32_t Poly::eval(std::uint32_t x) const {
    std::uint32_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = fs_->add(fs_->mul(acc, x), c_[i]);
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return zero(fs_);
    std::vector<std::uint32_t> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        // i * c_i means c_i added to itself i times (prime-field scalar)
        std::uint32_t s = 0;
        std::uint64_t times = i % fs_->p();
        for (std::uint64_t t = 0; t < times; ++t) s = fs_->add(s, c_[i]);
        r[i - 1] = s;
    }
    return Poly(fs_, std::move(r));
}

namespace {

void check_fields(const Poly& a, const Poly& b) {
    if (!a.field() || !b.field() || !a.field()->same(*b.field()))
        throw FieldMismatch("polynomial operands from different fields");
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
    check_fields(a, b);
    const auto& fs = a.field();
    std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = fs->add(a.coeff(i), b.coeff(i));
    return Poly(fs, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
    check_fields(a, b);
    const auto& fs = a.field();
    std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = fs->sub(a.coeff(i), b.coeff(i));
    return Poly(fs, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
    check_fields(a, b);
    const auto& fs = a.field();
    if (a.is_zero() || b.is_zero()) return Poly::zero(fs);
    std::vector<std::uint32_t> r(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        std::uint32_t ai = a.coeff(i);
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            r[i + j] = fs->add(r[i + j], fs->mul(ai, b.coeff(j)));
    }
    return Poly(fs, std::move(r));
}

bool operator==(const Poly& a, const Poly& b) {
    return a.field()->same(*b.field()) && a.coeffs() == b.coeffs();
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    check_fields(a, b);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const auto& fs = a.field();
    std::vector<std::uint32_t> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {Poly::zero(fs), a};
    std::vector<std::uint32_t> quot(a.degree() - db + 1, 0);
    std::uint32_t ilead = fs->inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        std::uint32_t c = r[i];
        if (c == 0) continue;
        std::uint32_t qc = fs->mul(c, ilead);
        quot[i - db] = qc;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] = fs->sub(r[i - db + j], fs->mul(qc, b.coeff(j)));
    }
    return {Poly(fs, std::move(quot)), Poly(fs, std::move(r))};
}

Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = rem(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monic();
}

Poly powmod(const Poly& a, const mpz_class& e, const Poly& mod) {
    if (mod.is_zero()) throw DivisionByZero("powmod modulus is zero");
    if (e < 0) throw PreconditionViolated("powmod: negative exponent");
    Poly base = rem(a, mod);
    Poly r = Poly::constant(a.field(), 1);
    mpz_class ee = e;
    while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) r = rem(r * base, mod);
        base = rem(base * base, mod);
        ee >>= 1;
    }
    return r;
}

RatFunc RatFunc::make(Poly num, Poly den) {
    check_fields(num, den);
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    Poly g = gcd(num, den);
    if (!num.is_zero() && g.degree() > 0) {
        num = divrem(num, g).first;
        den = divrem(den, g).first;
    }
    std::uint32_t lc = den.lead();
    if (lc != 1) {
        std::uint32_t il = den.field()->inv(lc);
        den = den.scaled(il);
        num = num.scaled(il);
    }
    return RatFunc{std::move(num), std::move(den)};
}

RatFunc RatFunc::from_poly(Poly p) {
    Poly one = Poly::constant(p.field(), 1);
    return RatFunc{std::move(p), std::move(one)};
}

std::pair<std::uint32_t, RatFunc> monic_part(const RatFunc& x) {
    if (x.is_zero()) throw ZeroInput("monic_part of zero");
    std::uint32_t lambda = x.num.lead();  // den is monic by invariant
    return {lambda, RatFunc{x.num.scaled(x.num.field()->inv(lambda)), x.den}};
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw ConstantInput("is_irreducible of constant");
    const auto& fs = f.field();
    unsigned n = static_cast<unsigned>(f.degree());
    Poly t = Poly::t(fs);
    mpz_class q(static_cast<unsigned long>(fs->q()));
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    if (!(powmod(t, qn, f) == rem(t, f))) return false;
    for (const auto& [l, e] : factor_u64(n)) {
        mpz_class qd;
        mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), n / l);
        Poly g = gcd(powmod(t, qd, f) - rem(t, f), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

namespace {

// equal-degree splitting (Cantor-Zassenhaus), deterministic seed schedule
void edf(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const auto& fs = f.field();
    unsigned deg = static_cast<unsigned>(f.degree());
    if (deg == d) {
        out.push_back(f.monic());
        return;
    }
    mpz_class q(static_cast<unsigned long>(fs->q()));
    while (true) {
        std::vector<std::uint32_t> rc(deg);
        for (auto& c : rc)
            c = static_cast<std::uint32_t>(rng() % fs->q());
        Poly r(fs, std::move(rc));
        if (r.is_zero()) continue;
        Poly g;
        if (fs->p() == 2) {
            // trace map sum_{i < d*k} r^{2^i}
            unsigned bits = d * fs->k();
            Poly t = rem(r, f), acc = t;
            for (unsigned i = 1; i < bits; ++i) {
                t = rem(t * t, f);
                acc = acc + t;
            }
            g = gcd(acc, f);
        } else {
            mpz_class qd;
            mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
            Poly s = powmod(r, (qd - 1) / 2, f) - Poly::constant(fs, 1);
            g = gcd(s, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(divrem(f, g).first, d, rng, out);
            return;
        }
    }
}

void ddf(Poly f, std::mt19937_64& rng, std::vector<Poly>& out) {
    const auto& fs = f.field();
    mpz_class q(static_cast<unsigned long>(fs->q()));
    Poly t = Poly::t(fs);
    Poly frob = rem(t, f);  // T^{q^d} mod f, advanced one q-power per round
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(f.degree()); ++d) {
        frob = powmod(frob, q, f);
        Poly g = gcd(frob - rem(t, f), f);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            f = divrem(f, g).first;
            frob = rem(frob, f);
        }
    }
    if (f.degree() > 0) out.push_back(f.monic());
}

// p-th root of a polynomial whose derivative vanishes: f(T) = g(T^p)
Poly pth_root(const Poly& f) {
    const auto& fs = f.field();
    std::uint64_t p = fs->p();
    mpz_class root_exp;  // c^{q/p} is the p-th root of c in F_q
    mpz_ui_pow_ui(root_exp.get_mpz_t(), static_cast<unsigned long>(p), fs->k() - 1);
    std::vector<std::uint32_t> r;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p)
        r.push_back(fs->pow(f.coeff(i), root_exp));
    return Poly(fs, std::move(r));
}

void squarefree(const Poly& f, unsigned mult, std::mt19937_64& rng,
                std::map<std::pair<int, std::uint64_t>, std::pair<Poly, unsigned>>& acc) {
    const auto& fs = f.field();
    Poly fp = f.derivative();
    Poly c = fp.is_zero() ? f : gcd(f, fp);
    Poly w = fp.is_zero() ? Poly::constant(fs, 1) : divrem(f, c).first;
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = divrem(w, y).first;
        if (z.degree() > 0) {
            std::vector<Poly> irr;
            ddf(z, rng, irr);
            for (const auto& P : irr) {
                auto key = std::make_pair(P.degree(), monic_index(P));
                auto it = acc.find(key);
                if (it == acc.end())
                    acc.emplace(key, std::make_pair(P, mult * i));
                else
                    it->second.second += mult * i;
            }
        }
        w = y;
        c = divrem(c, y).first;
        ++i;
    }
    if (c.degree() > 0) squarefree(pth_root(c), mult * static_cast<unsigned>(fs->p()), rng, acc);
}

}  // namespace

PolyFactorization factorize(const Poly& f) {
    if (f.is_zero()) throw ZeroInput("factorize of zero");
    PolyFactorization out;
    out.lead = f.lead();
    if (f.degree() == 0) return out;
    std::mt19937_64 rng(0x66f0d5eedULL ^ (static_cast<std::uint64_t>(f.degree()) << 32) ^
                        monic_index(f.monic()));
    std::map<std::pair<int, std::uint64_t>, std::pair<Poly, unsigned>> acc;
    squarefree(f.monic(), 1, rng, acc);
    for (auto& [key, pe] : acc) out.factors.push_back(std::move(pe));
    return out;
}

mpz_class gauss_count(std::uint64_t q, unsigned N) {
    if (N < 1) throw PreconditionViolated("gauss_count: N < 1");
    mpz_class sum = 0;
    for (std::uint64_t e : divisors_of(N)) {
        int mu = moebius(e);
        if (mu == 0) continue;
        mpz_class qe;
        mpz_ui_pow_ui(qe.get_mpz_t(), static_cast<unsigned long>(q),
                      static_cast<unsigned long>(N / e));
        sum += mu * qe;
    }
    return sum / N;
}

Poly monic_from_index(const FieldSpec::Ptr& fs, unsigned N, std::uint64_t idx) {
    std::vector<std::uint32_t> c(N + 1, 0);
    std::uint64_t q = fs->q();
    for (unsigned i = 0; i < N; ++i) {
        c[i] = static_cast<std::uint32_t>(idx % q);
        idx /= q;
    }
    c[N] = 1;
    return Poly(fs, std::move(c));
}

std::uint64_t monic_index(const Poly& f) {
    if (!f.is_monic()) throw PreconditionViolated("monic_index of non-monic");
    std::uint64_t q = f.field()->q();
    std::uint64_t idx = 0;
    for (int i = f.degree() - 1; i >= 0; --i) idx = idx * q + f.coeff(i);
    return idx;
}

namespace {

struct SieveCache {
    std::mutex mu;
    std::map<std::string, std::unique_ptr<SieveResult>> entries;
};

SieveCache& sieve_cache() {
    static SieveCache cache;
    return cache;
}

std::string field_key(const FieldSpec& fs) {
    std::string k = std::to_string(fs.p()) + "^" + std::to_string(fs.k()) + ":";
    for (auto c : fs.modulus()) k += std::to_string(c) + ",";
    return k;
}

void sieve_build(const FieldSpec::Ptr& fs, unsigned N, unsigned budget_log2,
                 unsigned workers, SieveResult& res) {
    std::uint64_t q = fs->q();
    res.N = N;
    res.total = pow_u64(q, N);
    res.composite.assign((res.total + 63) / 64, 0);
    if (N == 1) {
        res.irreducible = q;
        return;
    }

    // flatten irreducibles of degree m <= N/2 (recursively sieved; cheap)
    struct Factor {
        unsigned m;
        std::vector<std::uint32_t> c;  // length m+1, monic
    };
    std::vector<Factor> factors;
    for (unsigned m = 1; 2 * m <= N; ++m) {
        const SieveResult& sub = irreducible_sieve(fs, m, budget_log2, workers);
        for (std::uint64_t idx = 0; idx < sub.total; ++idx) {
            if (!sub.is_irreducible(idx)) continue;
            Factor fct;
            fct.m = m;
            std::uint64_t t = idx;
            fct.c.resize(m + 1);
            for (unsigned i = 0; i < m; ++i) {
                fct.c[i] = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            fct.c[m] = 1;
            factors.push_back(std::move(fct));
        }
    }

    std::vector<std::uint64_t> powq(N);
    powq[0] = 1;
    for (unsigned i = 1; i < N; ++i) powq[i] = powq[i - 1] * q;

    auto* bits = reinterpret_cast<std::atomic<std::uint64_t>*>(res.composite.data());
    static_assert(sizeof(std::atomic<std::uint64_t>) == sizeof(std::uint64_t));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        const FieldSpec& F = *fs;
        while (true) {
            std::size_t fi = next.fetch_add(1);
            if (fi >= factors.size()) break;
            const Factor& fct = factors[fi];
            unsigned m = fct.m;
            unsigned r = N - m;
            // prod = f * g with g walking all monic polynomials of degree r;
            // start at g = T^r and update incrementally per odometer digit
            std::vector<std::uint32_t> prod(N, 0);
            for (unsigned i = 0; i < m; ++i) prod[r + i] = fct.c[i];
            std::uint64_t index = 0;
            for (unsigned i = 0; i < N; ++i) index += prod[i] * powq[i];
            std::vector<std::uint32_t> digits(r, 0);
            std::uint64_t count = pow_u64(q, r);
            auto apply = [&](unsigned t, std::uint32_t oldc, std::uint32_t newc) {
                std::uint32_t delta = F.sub(newc, oldc);
                for (unsigned i = 0; i <= m; ++i) {
                    unsigned pos = t + i;
                    if (pos >= N) break;  // leading coefficient stays 1
                    std::uint32_t before = prod[pos];
                    std::uint32_t after = F.add(before, F.mul(delta, fct.c[i]));
                    prod[pos] = after;
                    index += (static_cast<std::int64_t>(after) - before) *
                             static_cast<std::int64_t>(powq[pos]);
                }
            };
            for (std::uint64_t step = 0;; ++step) {
                bits[index >> 6].fetch_or(1ULL << (index & 63),
                                          std::memory_order_relaxed);
                if (step + 1 == count) break;
                for (unsigned t = 0; t < r; ++t) {
                    std::uint32_t oldc = digits[t];
                    std::uint32_t newc = oldc + 1 == q ? 0 : oldc + 1;
                    apply(t, oldc, newc);
                    digits[t] = newc;
                    if (newc != 0) break;
                }
            }
        }
    };

    unsigned nw = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < nw; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::uint64_t composites = 0;
    for (std::uint64_t word : res.composite) composites += std::popcount(word);
    // slack bits in the last word are never set
    res.irreducible = res.total - composites;
}

}  // namespace

const SieveResult& irreducible_sieve(const FieldSpec::Ptr& fs, unsigned N,
                                     unsigned budget_log2, unsigned workers) {
    if (N < 1) throw PreconditionViolated("irreducible_sieve: N < 1");
    if (budget_log2 > 62) budget_log2 = 62;
    mpz_class qN;
    mpz_ui_pow_ui(qN.get_mpz_t(), static_cast<unsigned long>(fs->q()), N);
    mpz_class cap = 1;
    cap <<= budget_log2;
    if (qN > cap) throw BudgetExceeded("irreducible_sieve: q^N exceeds budget");

    std::string key = field_key(*fs) + "N=" + std::to_string(N);
    SieveCache& cache = sieve_cache();
    {
        std::lock_guard<std::mutex> lk(cache.mu);
        auto it = cache.entries.find(key);
        if (it != cache.entries.end()) return *it->second;
    }
    auto res = std::make_unique<SieveResult>();
    sieve_build(fs, N, budget_log2, workers, *res);
    std::lock_guard<std::mutex> lk(cache.mu);
    auto [it, inserted] = cache.entries.emplace(key, std::move(res));
    return *it->second;
}

void sieve_cache_clear() {
    SieveCache& cache = sieve_cache();
    std::lock_guard<std::mutex> lk(cache.mu);
    cache.entries.clear();
}

void for_each_irreducible(const FieldSpec::Ptr& fs, unsigned N,
                          const std::function<void(const Poly&)>& fn,
                          unsigned budget_log2) {
    const SieveResult& sv = irreducible_sieve(fs, N, budget_log2);
    for (std::uint64_t idx = 0; idx < sv.total; ++idx)
        if (sv.is_irreducible(idx)) fn(monic_from_index(fs, N, idx));
}

std::vector<Poly> irreducibles(const FieldSpec::Ptr& fs, unsigned N,
                               unsigned budget_log2) {
    std::vector<Poly> out;
    for_each_irreducible(fs, N, [&](const Poly& f) { out.push_back(f); }, budget_log2);
    return out;
}

namespace {

bool needs_parens(const std::string& s) {
    return s.find('+') != std::string::npos || s.find('-') != std::string::npos;
}

}  // namespace

std::string print_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    const auto& fs = f.field();
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        std::uint32_t c = f.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        std::string cs = fs->print_elem(c);
        if (i == 0) {
            out += cs;
            continue;
        }
        if (c != 1) {
            if (needs_parens(cs)) cs = "(" + cs + ")";
            out += cs + "*";
        }
        out += (i == 1) ? "T" : "T^" + std::to_string(i);
    }
    return out;
}

Poly parse_poly(const FieldSpec::Ptr& fs, const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty polynomial");
    Poly acc = Poly::zero(fs);
    std::size_t i = 0;
    while (i < s.size()) {
        bool negate = false;
        if (s[i] == '+' || s[i] == '-') {
            negate = (s[i] == '-');
            ++i;
        }
        int depth = 0;
        std::size_t j = i;
        while (j < s.size() && (depth > 0 || (s[j] != '+' && s[j] != '-'))) {
            if (s[j] == '(') ++depth;
            if (s[j] == ')') --depth;
            ++j;
        }
        if (depth != 0) throw ParseError("unbalanced parentheses");
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw ParseError("empty term in polynomial");
        // locate T outside parentheses
        std::size_t tpos = std::string::npos;
        depth = 0;
        for (std::size_t k = 0; k < term.size(); ++k) {
            if (term[k] == '(') ++depth;
            if (term[k] == ')') --depth;
            if (depth == 0 && term[k] == 'T') {
                tpos = k;
                break;
            }
        }
        std::uint32_t coef = 1;
        unsigned power = 0;
        if (tpos == std::string::npos) {
            std::string es = term;
            if (es.size() >= 2 && es.front() == '(' && es.back() == ')')
                es = es.substr(1, es.size() - 2);
            coef = fs->parse_elem(es);
        } else {
            std::string pre = term.substr(0, tpos);
            if (!pre.empty()) {
                if (pre.back() != '*') throw ParseError("bad term: " + term);
                pre.pop_back();
                if (pre.size() >= 2 && pre.front() == '(' && pre.back() == ')')
                    pre = pre.substr(1, pre.size() - 2);
                coef = fs->parse_elem(pre);
            }
            std::string post = term.substr(tpos + 1);
            if (post.empty()) {
                power = 1;
            } else {
                if (post[0] != '^' || post.size() < 2 ||
                    post.substr(1).find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("bad exponent: " + term);
                power = static_cast<unsigned>(std::strtoul(post.c_str() + 1, nullptr, 10));
            }
        }
        std::vector<std::uint32_t> mono(power + 1, 0);
        mono[power] = negate ? fs->neg(coef) : coef;
        acc = acc + Poly(fs, std::move(mono));
    }
    return acc;
}

std::string print_ratfunc(const RatFunc& x) {
    if (x.den.is_constant()) return print_poly(x.num);
    std::string n = print_poly(x.num), d = print_poly(x.den);
    if (needs_parens(n)) n = "(" + n + ")";
    if (needs_parens(d)) d = "(" + d + ")";
    return n + "/" + d;
}

RatFunc parse_ratfunc(const FieldSpec::Ptr& fs, const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && s[i] == '/') {
            slash = i;
            break;
        }
    }
    auto strip = [](std::string t) {
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
            int d = 0;
            bool whole = true;
            for (std::size_t i = 0; i + 1 < t.size(); ++i) {
                if (t[i] == '(') ++d;
                if (t[i] == ')') --d;
                if (d == 0) {
                    whole = false;
                    break;
                }
            }
            if (whole) return t.substr(1, t.size() - 2);
        }
        return t;
    };
    if (slash == std::string::npos)
        return RatFunc::make(parse_poly(fs, strip(s)), Poly::constant(fs, 1));
    return RatFunc::make(parse_poly(fs, strip(s.substr(0, slash))),
                         parse_poly(fs, strip(s.substr(slash + 1))));
}

}  // namespace ffod
