#include "ffod/empirical.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <numeric>
#include <thread>

#include "ffod/density.hpp"

namespace ffod {

mpz_class order_mod(const RatFunc& a, const Poly& P) {
    const auto& fs = P.field();
    if (!a.field()->same(*fs)) throw FieldMismatch("order_mod: field mismatch");
    if (!is_irreducible(P)) throw PreconditionViolated("order_mod: P reducible");
    Poly num = rem(a.num, P);
    Poly den = rem(a.den, P);
    if (num.is_zero() || den.is_zero())
        throw BadReduction("order_mod: v_P(a) != 0");

    unsigned N = static_cast<unsigned>(P.degree());
    mpz_class G;
    mpz_ui_pow_ui(G.get_mpz_t(), fs->q(), N);
    G -= 1;
    Factorization fac = factor(G);

    // x = num/den mod P; den^{G-1} is the inverse since den^G = 1
    Poly x = den.is_constant() && den.coeff(0) == 1
                 ? num
                 : rem(num * powmod(den, G - 1, P), P);

    Poly one = Poly::constant(fs, 1);
    mpz_class t = G;
    for (const auto& [l, e] : fac.factors) {
        for (unsigned i = 0; i < e; ++i) {
            mpz_class t2 = t / l;
            if (powmod(x, t2, P) == one)
                t = t2;
            else
                break;
        }
    }
    return t;
}

std::size_t ScanResult::pack(const std::vector<unsigned>& v) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        idx += v[i] * stride;
        stride *= vcap[i] + 1;
    }
    return idx;
}

namespace {

// Iterate the histogram, handing each tuple of valuations to fn.
template <class F>
void hist_walk(const ScanResult& s, F&& fn) {
    std::vector<unsigned> v(s.primes.size(), 0);
    for (std::size_t idx = 0; idx < s.hist.size(); ++idx) {
        fn(v, s.hist[idx]);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (++v[i] <= s.vcap[i]) break;
            v[i] = 0;
        }
    }
}

std::vector<unsigned> prime_valuations(const ScanResult& s, std::uint64_t n,
                                       const char* who) {
    std::vector<unsigned> out(s.primes.size(), 0);
    for (std::size_t i = 0; i < s.primes.size(); ++i) {
        unsigned e = val(n, s.primes[i]);
        out[i] = e;
        for (unsigned j = 0; j < e; ++j) n /= s.primes[i];
    }
    if (n != 1) throw PreconditionViolated(std::string(who) +
                                           ": modulus not smooth over scan primes");
    return out;
}

}  // namespace

std::uint64_t ScanResult::count_ord_multiple_of(std::uint64_t d) const {
    if (d == 0) throw PreconditionViolated("count_ord_multiple_of: d = 0");
    auto lo = prime_valuations(*this, d, "count_ord_multiple_of");
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (lo[i] > vcap[i]) return 0;
    std::uint64_t total = 0;
    hist_walk(*this, [&](const std::vector<unsigned>& v, std::uint64_t c) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < lo[i]) return;
        total += c;
    });
    return total;
}

std::uint64_t ScanResult::count_ord_divides_quotient(std::uint64_t dd) const {
    if (dd == 0) throw PreconditionViolated("count_ord_divides_quotient: dd = 0");
    auto sub = prime_valuations(*this, dd, "count_ord_divides_quotient");
    std::vector<unsigned> hi(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (sub[i] > vcap[i]) return 0;  // dd does not divide q^N - 1
        hi[i] = vcap[i] - sub[i];
    }
    std::uint64_t total = 0;
    hist_walk(*this, [&](const std::vector<unsigned>& v, std::uint64_t c) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] > hi[i]) return;
        total += c;
    });
    return total;
}

namespace {

/// Fixed-modulus arithmetic for monic degree-N polynomials over a small
/// field, driven by flat q x q lookup tables.
struct TableOps {
    std::uint32_t q = 0;
    unsigned N = 0;
    const std::uint16_t* mul = nullptr;  // [a*q + b]
    const std::uint16_t* add = nullptr;  // [a*q + b]
    const std::uint16_t* neg = nullptr;

    std::vector<std::uint16_t> mod;   // N coefficients below the monic lead
    std::vector<std::uint16_t> red;   // red[i*N + j]: T^{N+i} mod P, i < N-1
    std::vector<std::uint16_t> tmp;   // 2N scratch

    void set_modulus(std::uint64_t idx) {
        for (unsigned i = 0; i < N; ++i) {
            mod[i] = static_cast<std::uint16_t>(idx % q);
            idx /= q;
        }
        if (N >= 2) {
            for (unsigned j = 0; j < N; ++j) red[j] = neg[mod[j]];
            for (unsigned i = 1; i + 1 < N; ++i) {
                const std::uint16_t* prev = red.data() + (i - 1) * N;
                std::uint16_t* row = red.data() + i * N;
                std::uint16_t t = prev[N - 1];
                for (unsigned j = N - 1; j > 0; --j) row[j] = prev[j - 1];
                row[0] = 0;
                if (t) {
                    const std::uint16_t* trow = mul + t * q;
                    for (unsigned j = 0; j < N; ++j)
                        row[j] = add[row[j] * q + trow[neg[mod[j]]]];
                }
            }
        }
    }

    void mulmod(const std::uint16_t* a, const std::uint16_t* b,
                std::uint16_t* out) {
        std::memset(tmp.data(), 0, 2 * N * sizeof(std::uint16_t));
        for (unsigned i = 0; i < N; ++i) {
            std::uint16_t ai = a[i];
            if (!ai) continue;
            const std::uint16_t* row = mul + ai * q;
            std::uint16_t* dst = tmp.data() + i;
            for (unsigned j = 0; j < N; ++j)
                dst[j] = add[dst[j] * q + row[b[j]]];
        }
        for (unsigned i = 2 * N - 2; i >= N; --i) {
            std::uint16_t c = tmp[i];
            if (!c) continue;
            const std::uint16_t* row = mul + c * q;
            const std::uint16_t* rr = red.data() + (i - N) * N;
            for (unsigned j = 0; j < N; ++j)
                tmp[j] = add[tmp[j] * q + row[rr[j]]];
            if (i == N) break;
        }
        std::memcpy(out, tmp.data(), N * sizeof(std::uint16_t));
    }

    // b <- b * T mod P
    void mul_by_t(std::uint16_t* b) {
        std::uint16_t t = b[N - 1];
        for (unsigned j = N - 1; j > 0; --j) b[j] = b[j - 1];
        b[0] = 0;
        if (t) {
            const std::uint16_t* row = mul + t * q;
            for (unsigned j = 0; j < N; ++j)
                b[j] = add[b[j] * q + row[neg[mod[j]]]];
        }
    }

    // Horner reduction of an arbitrary coefficient vector mod P.
    void reduce(const std::vector<std::uint16_t>& c, std::uint16_t* out) {
        std::memset(out, 0, N * sizeof(std::uint16_t));
        for (std::size_t i = c.size(); i-- > 0;) {
            mul_by_t(out);
            out[0] = add[out[0] * q + c[i]];
        }
    }

    void powmod_u64(const std::uint16_t* base, std::uint64_t e,
                    std::uint16_t* out) {
        std::memset(out, 0, N * sizeof(std::uint16_t));
        out[0] = 1;
        if (e == 0) return;
        int bit = 63 - __builtin_clzll(e);
        for (; bit >= 0; --bit) {
            mulmod(out, out, out);
            if (e >> bit & 1) mulmod(out, base, out);
        }
    }

    bool is_one(const std::uint16_t* b) const {
        if (b[0] != 1) return false;
        for (unsigned j = 1; j < N; ++j)
            if (b[j]) return false;
        return true;
    }

    bool is_zero(const std::uint16_t* b) const {
        for (unsigned j = 0; j < N; ++j)
            if (b[j]) return false;
        return true;
    }
};

/// Prime-field variant: lanes accumulate products as plain integers and
/// reduce mod p in bulk, which vectorizes.  Requires N*(p-1)^2 < 2^16.
struct PrimeOps {
    std::uint32_t q = 0;
    unsigned N = 0;
    std::vector<std::uint16_t> mod, negmod, red, tmp;
    std::vector<std::uint16_t> modtab;  // i % q, i < 2^16: avoids hw division

    PrimeOps(std::uint32_t q_, unsigned N_) : q(q_), N(N_) {
        mod.resize(N);
        negmod.resize(N);
        red.resize(N >= 2 ? static_cast<std::size_t>(N - 1) * N : 0);
        tmp.resize(2 * N);
        modtab.resize(65536);
        for (std::uint32_t i = 0; i < 65536; ++i)
            modtab[i] = static_cast<std::uint16_t>(i % q);
    }

    void set_modulus(std::uint64_t idx) {
        for (unsigned i = 0; i < N; ++i) {
            mod[i] = static_cast<std::uint16_t>(idx % q);
            idx /= q;
        }
        for (unsigned j = 0; j < N; ++j)
            negmod[j] = static_cast<std::uint16_t>((q - mod[j]) % q);
        if (N >= 2) {
            std::memcpy(red.data(), negmod.data(), N * sizeof(std::uint16_t));
            for (unsigned i = 1; i + 1 < N; ++i) {
                const std::uint16_t* prev = red.data() + (i - 1) * N;
                std::uint16_t* row = red.data() + i * N;
                std::uint16_t t = prev[N - 1];
                for (unsigned j = N - 1; j > 0; --j) row[j] = prev[j - 1];
                row[0] = 0;
                if (t)
                    for (unsigned j = 0; j < N; ++j)
                        row[j] = static_cast<std::uint16_t>(
                            (row[j] + t * negmod[j]) % q);
            }
        }
    }

    void mulmod(const std::uint16_t* a, const std::uint16_t* b,
                std::uint16_t* out) {
        std::memset(tmp.data(), 0, 2 * N * sizeof(std::uint16_t));
        for (unsigned i = 0; i < N; ++i) {
            std::uint16_t ai = a[i];
            if (!ai) continue;
            std::uint16_t* dst = tmp.data() + i;
            for (unsigned j = 0; j < N; ++j)
                dst[j] = static_cast<std::uint16_t>(dst[j] + ai * b[j]);
        }
        for (unsigned j = 0; j < 2 * N - 1; ++j)
            tmp[j] = modtab[tmp[j]];
        for (unsigned i = 2 * N - 2; i >= N; --i) {
            std::uint16_t c = tmp[i];
            if (c) {
                const std::uint16_t* rr = red.data() + (i - N) * N;
                for (unsigned j = 0; j < N; ++j)
                    tmp[j] = static_cast<std::uint16_t>(tmp[j] + c * rr[j]);
            }
            if (i == N) break;
        }
        for (unsigned j = 0; j < N; ++j)
            out[j] = modtab[tmp[j]];
    }

    void sqmod(const std::uint16_t* a, std::uint16_t* out) {
        std::memset(tmp.data(), 0, 2 * N * sizeof(std::uint16_t));
        for (unsigned i = 0; i < N; ++i) {
            std::uint16_t ai = a[i];
            if (!ai) continue;
            tmp[2 * i] = static_cast<std::uint16_t>(tmp[2 * i] + ai * ai);
            std::uint16_t a2 = static_cast<std::uint16_t>(2 * ai);
            std::uint16_t* dst = tmp.data() + i;
            for (unsigned j = i + 1; j < N; ++j)
                dst[j] = static_cast<std::uint16_t>(dst[j] + a2 * a[j]);
        }
        for (unsigned j = 0; j < 2 * N - 1; ++j)
            tmp[j] = modtab[tmp[j]];
        for (unsigned i = 2 * N - 2; i >= N; --i) {
            std::uint16_t c = tmp[i];
            if (c) {
                const std::uint16_t* rr = red.data() + (i - N) * N;
                for (unsigned j = 0; j < N; ++j)
                    tmp[j] = static_cast<std::uint16_t>(tmp[j] + c * rr[j]);
            }
            if (i == N) break;
        }
        for (unsigned j = 0; j < N; ++j)
            out[j] = modtab[tmp[j]];
    }

    void mul_by_t(std::uint16_t* b) {
        std::uint16_t t = b[N - 1];
        for (unsigned j = N - 1; j > 0; --j) b[j] = b[j - 1];
        b[0] = 0;
        if (t)
            for (unsigned j = 0; j < N; ++j)
                b[j] = modtab[b[j] + t * negmod[j]];
    }

    void reduce(const std::vector<std::uint16_t>& c, std::uint16_t* out) {
        std::memset(out, 0, N * sizeof(std::uint16_t));
        for (std::size_t i = c.size(); i-- > 0;) {
            mul_by_t(out);
            out[0] = modtab[out[0] + c[i]];
        }
    }

    void powmod_u64(const std::uint16_t* base, std::uint64_t e,
                    std::uint16_t* out) {
        std::memset(out, 0, N * sizeof(std::uint16_t));
        out[0] = 1;
        if (e == 0) return;
        int bit = 63 - __builtin_clzll(e);
        for (; bit >= 0; --bit) {
            sqmod(out, out);
            if (e >> bit & 1) mulmod(out, base, out);
        }
    }

    bool is_one(const std::uint16_t* b) const {
        if (b[0] != 1) return false;
        for (unsigned j = 1; j < N; ++j)
            if (b[j]) return false;
        return true;
    }

    bool is_zero(const std::uint16_t* b) const {
        for (unsigned j = 0; j < N; ++j)
            if (b[j]) return false;
        return true;
    }
};

}  // namespace

OrderScanner::OrderScanner(FieldSpec::Ptr fs, RatFunc a,
                           std::vector<std::uint64_t> primes,
                           unsigned budget_log2, unsigned workers)
    : fs_(std::move(fs)),
      a_(std::move(a)),
      primes_(std::move(primes)),
      budget_log2_(budget_log2),
      workers_(workers) {
    if (!a_.field()->same(*fs_)) throw FieldMismatch("scanner: field mismatch");
    if (a_.is_zero()) throw ZeroInput("scanner: a = 0");
    if (a_.is_constant()) throw ConstantInput("scanner: a constant");
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (std::uint64_t l : primes_) {
        if (!is_prime_u64(l)) throw NotPrime("scanner: scan prime not prime");
        if (fs_->p() % l == 0)
            throw NotCoprime("scanner: scan prime equals the characteristic");
    }
    if (fs_->q() > 1024) throw TooLarge("scanner: q > 1024");
}

const ScanResult& OrderScanner::scan(unsigned N) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(N);
        if (it != cache_.end()) return *it->second;
    }

    const SieveResult& sv = irreducible_sieve(fs_, N, budget_log2_, workers_);
    std::uint64_t q = fs_->q();
    std::uint64_t G = sv.total - 1;  // q^N - 1

    auto res = std::make_unique<ScanResult>();
    res->N = N;
    res->group_order = G;
    res->primes = primes_;
    res->irreducible = sv.irreducible;
    std::size_t np = primes_.size();
    res->vcap.resize(np);
    std::size_t hist_size = 1;
    for (std::size_t i = 0; i < np; ++i) {
        res->vcap[i] = val(G, primes_[i]);
        hist_size *= res->vcap[i] + 1;
    }
    res->hist.assign(hist_size, 0);

    // E0 strips the scan primes from G; powers of each l are then peeled off
    // per prime with the small cofactor exponents M[i].
    std::uint64_t E0 = G;
    std::vector<std::uint64_t> lpow(np);
    for (std::size_t i = 0; i < np; ++i) {
        lpow[i] = pow_u64(primes_[i], res->vcap[i]);
        E0 /= lpow[i];
    }
    std::vector<std::uint64_t> M(np, 1);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j)
            if (j != i) M[i] *= lpow[j];

    bool fast = fs_->k() == 1 &&
                2 * static_cast<std::uint64_t>(N + 1) * (q - 1) * (q - 1) < 65536;

    // flat field tables for the generic path
    std::vector<std::uint16_t> fmul, fadd, fneg;
    if (!fast) {
        fmul.resize(q * q);
        fadd.resize(q * q);
        fneg.resize(q);
        for (std::uint64_t x = 0; x < q; ++x) {
            fneg[x] = static_cast<std::uint16_t>(fs_->neg(x));
            for (std::uint64_t y = 0; y < q; ++y) {
                fmul[x * q + y] = static_cast<std::uint16_t>(fs_->mul(x, y));
                fadd[x * q + y] = static_cast<std::uint16_t>(fs_->add(x, y));
            }
        }
    }

    std::vector<std::uint16_t> anum(a_.num.degree() + 1), aden;
    for (int i = 0; i <= a_.num.degree(); ++i)
        anum[i] = static_cast<std::uint16_t>(a_.num.coeff(i));
    bool den_trivial = a_.den.is_constant() && a_.den.coeff(0) == 1;
    if (!den_trivial) {
        aden.resize(a_.den.degree() + 1);
        for (int i = 0; i <= a_.den.degree(); ++i)
            aden[i] = static_cast<std::uint16_t>(a_.den.coeff(i));
    }

    unsigned nworkers = workers_ ? workers_ : std::thread::hardware_concurrency();
    if (nworkers == 0) nworkers = 1;
    const std::uint64_t block = 1u << 14;
    std::atomic<std::uint64_t> next{0};
    std::mutex merge_mu;

    auto body = [&](auto& ctx) {
        std::vector<std::uint16_t> xnum(N), xden(N), x(N), y(N), z(N), zt(N);
        std::vector<std::uint64_t> lhist(hist_size, 0);
        std::uint64_t lexcluded = 0;
        std::vector<unsigned> v(np);

        while (true) {
            std::uint64_t lo = next.fetch_add(block);
            if (lo >= sv.total) break;
            std::uint64_t hi = std::min(lo + block, sv.total);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                if (!sv.is_irreducible(idx)) continue;
                ctx.set_modulus(idx);
                ctx.reduce(anum, xnum.data());
                if (ctx.is_zero(xnum.data())) {
                    ++lexcluded;
                    continue;
                }
                if (den_trivial) {
                    std::memcpy(x.data(), xnum.data(), N * sizeof(std::uint16_t));
                } else {
                    ctx.reduce(aden, xden.data());
                    if (ctx.is_zero(xden.data())) {
                        ++lexcluded;
                        continue;
                    }
                    ctx.powmod_u64(xden.data(), G - 1, z.data());
                    ctx.mulmod(xnum.data(), z.data(), x.data());
                }
                ctx.powmod_u64(x.data(), E0, y.data());
                for (std::size_t i = 0; i < np; ++i) {
                    ctx.powmod_u64(y.data(), M[i], z.data());
                    unsigned e = 0;
                    while (!ctx.is_one(z.data())) {
                        ctx.powmod_u64(z.data(), primes_[i], zt.data());
                        z.swap(zt);
                        ++e;
                    }
                    v[i] = e;
                }
                ++lhist[res->pack(v)];
            }
        }

        std::lock_guard<std::mutex> lock(merge_mu);
        for (std::size_t i = 0; i < hist_size; ++i) res->hist[i] += lhist[i];
        res->excluded += lexcluded;
    };

    auto work = [&]() {
        if (fast) {
            PrimeOps ctx(static_cast<std::uint32_t>(q), N);
            body(ctx);
        } else {
            TableOps ctx;
            ctx.q = static_cast<std::uint32_t>(q);
            ctx.N = N;
            ctx.mul = fmul.data();
            ctx.add = fadd.data();
            ctx.neg = fneg.data();
            ctx.mod.resize(N);
            ctx.red.resize(N >= 2 ? static_cast<std::size_t>(N - 1) * N : 0);
            ctx.tmp.resize(2 * N);
            body(ctx);
        }
    };

    if (nworkers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < nworkers; ++i) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }

    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = cache_.emplace(N, std::move(res));
    return *it->second;
}

Counter::Counter(ArithProfile profile, unsigned budget_log2, unsigned workers,
                 std::shared_ptr<OrderScanner> scanner)
    : pr_(std::move(profile)), scanner_(std::move(scanner)) {
    if (!scanner_) {
        scanner_ = std::make_shared<OrderScanner>(
            pr_.field, pr_.a, pr_.base.primes, budget_log2, workers);
    } else {
        if (!scanner_->field()->same(*pr_.field))
            throw FieldMismatch("counter: scanner field mismatch");
        if (!(scanner_->a().num == pr_.a.num) ||
            !(scanner_->a().den == pr_.a.den))
            throw PreconditionViolated("counter: scanner built for different a");
        for (std::uint64_t l : pr_.base.primes)
            if (!std::binary_search(scanner_->primes().begin(),
                                    scanner_->primes().end(), l))
                throw PreconditionViolated("counter: scanner misses a prime of d");
    }
}

std::uint64_t Counter::count_R(unsigned N) {
    return scanner_->scan(N).count_ord_multiple_of(pr_.d);
}

std::uint64_t Counter::split_count(std::uint64_t n, std::uint64_t dd,
                                   unsigned N) {
    if (dd == 0 || n % dd != 0)
        throw PreconditionViolated("split_count: dd does not divide n");
    if (std::gcd(n, pr_.field->p()) != 1)
        throw NotCoprime("split_count: p | n");
    const ScanResult& s = scanner_->scan(N);
    if (s.group_order % n != 0) return 0;  // zeta_n not rational over F_{q^N}
    return s.count_ord_divides_quotient(dd);
}

SplitIdentityReport Counter::split_identity_check(unsigned N) {
    SplitIdentityReport rep;
    rep.lhs = count_R(N);
    if (N % pr_.f != 0) {
        rep.rhs = 0;
        rep.pass = rep.lhs == 0;
        return rep;
    }
    std::uint64_t e = e_N(pr_, N);
    for (std::uint64_t v : divisors_of(e)) {
        for (std::uint64_t u : divisors_of(pr_.d)) {
            int mu = moebius(u);
            if (mu == 0) continue;
            rep.rhs += mu * static_cast<std::int64_t>(
                               split_count(pr_.d * v, u * v, N));
        }
    }
    rep.pass = static_cast<std::int64_t>(rep.lhs) == rep.rhs;
    return rep;
}

mpq_class Counter::cesaro(unsigned N) {
    if (N == 0) throw PreconditionViolated("cesaro: N = 0");
    mpq_class sum = 0;
    mpz_class qn = 1;
    for (unsigned n = 1; n <= N; ++n) {
        qn *= pr_.q();
        mpq_class term(mpz_class(count_R(n)) * n, qn);
        term.canonicalize();
        sum += term;
    }
    sum /= N;
    return sum;
}

mpq_class Counter::normalized_error(unsigned N) {
    if (N % pr_.f != 0) return 0;
    mpq_class delta = proportion_density(pr_, N).value;
    mpz_class qN;
    mpz_ui_pow_ui(qN.get_mpz_t(), pr_.q(), N);
    mpq_class expected = delta * mpq_class(qN) / N;
    mpq_class diff = mpq_class(count_R(N)) - expected;
    if (diff < 0) diff = -diff;
    mpz_class root = sqrt(qN);  // floor for odd N
    std::uint64_t scale =
        pow_u64(2, arith_suite(pr_.d).omega + 1) * arith_suite(e_N(pr_, N)).tau;
    mpq_class out = diff * N / (mpq_class(root) * scale);
    return out;
}

CountRecord Counter::record(unsigned N) {
    CountRecord rec;
    rec.N = N;
    rec.I_N = gauss_count(pr_.q(), N);
    rec.R = count_R(N);
    rec.a_excluded = scanner_->scan(N).excluded;
    if (N % pr_.f == 0) {
        for (std::uint64_t v : divisors_of(e_N(pr_, N)))
            for (std::uint64_t u : divisors_of(pr_.d)) {
                if (moebius(u) == 0) continue;
                rec.splits[{v, u}] = split_count(pr_.d * v, u * v, N);
            }
    }
    rec.cesaro = cesaro(N);
    rec.normalized_error = normalized_error(N);
    return rec;
}

D1Probe Counter::d1_probe(unsigned steps) {
    if (pr_.f < 2) throw FTooSmall("d1_probe: f = 1, no zero degrees exist");
    D1Probe probe;
    double log2q = std::log2(static_cast<double>(pr_.q()));
    auto affordable = [&](std::uint64_t n) {
        return n * log2q <= scanner_->budget_log2() + 1e-9;
    };

    std::uint64_t N = 1;
    while (probe.zero_sequence.size() < steps && affordable(N)) {
        if (N % pr_.f != 0) {
            mpz_class qN;
            mpz_ui_pow_ui(qN.get_mpz_t(), pr_.q(), static_cast<unsigned>(N));
            mpq_class ratio(mpz_class(count_R(static_cast<unsigned>(N))) * N, qN);
            ratio.canonicalize();
            probe.zero_sequence.emplace_back(N, ratio);
        }
        ++N;
    }

    std::uint64_t stride = pr_.f_bar * gcd_supernatural(pr_.h, pr_.base);
    for (unsigned n = 0; n < steps; ++n) {
        D1Probe::YPoint pt;
        pt.y = stride * (pr_.d * n + 1);
        pt.delta = proportion_density(pr_, pt.y).value;
        if (affordable(pt.y)) {
            mpz_class qY;
            mpz_ui_pow_ui(qY.get_mpz_t(), pr_.q(), static_cast<unsigned>(pt.y));
            mpq_class ratio(mpz_class(count_R(static_cast<unsigned>(pt.y))) * pt.y,
                            qY);
            ratio.canonicalize();
            pt.ratio = ratio;
        }
        probe.y_sequence.push_back(std::move(pt));
    }
    return probe;
}

}  // namespace ffod
