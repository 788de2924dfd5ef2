// ffod: densities of irreducible polynomials P with d | ord_P(a), with
// brute-force cross-validation.  Subcommands: spectrum, density, verify,
// probe-d1.  Profile arguments are key=value tokens (q=..., a=..., d=...).

#include <cstdio>
#include <sstream>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffod/arith.hpp"
#include "ffod/density.hpp"
#include "ffod/empirical.hpp"
#include "ffod/ff.hpp"
#include "ffod/polyring.hpp"
#include "ffod/profile.hpp"

using json = nlohmann::ordered_json;
using namespace ffod;

namespace {

struct RunConfig {
    FieldSpec::Ptr field;
    RatFunc a;
    std::uint64_t d = 0;
    unsigned budget = 30;
    unsigned workers = 0;
    std::uint64_t v_bound = 10000;
    std::string out_path;
};

unsigned default_budget() {
    if (const char* s = std::getenv("FFOD_BUDGET")) {
        long v = std::atol(s);
        if (v < 1 || v > 62) throw ParseError("FFOD_BUDGET out of range [1,62]");
        return static_cast<unsigned>(v);
    }
    return 30;
}

// "p^k" or a plain prime power
std::pair<std::uint64_t, unsigned> parse_prime_power(const std::string& s) {
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        std::uint64_t p = std::stoull(s.substr(0, caret));
        unsigned k = static_cast<unsigned>(std::stoul(s.substr(caret + 1)));
        if (!is_prime_u64(p)) throw ParseError("field size: " + s + " is not a prime power");
        return {p, k};
    }
    std::uint64_t q = std::stoull(s);
    auto fac = factor_u64(q);
    if (fac.size() != 1) throw ParseError("field size: " + s + " is not a prime power");
    return {fac[0].first, fac[0].second};
}

RunConfig build_config(const std::vector<std::string>& kv, unsigned budget,
                       unsigned workers, std::uint64_t v_bound,
                       const std::string& out_path) {
    std::string qspec, aspec, dspec, modspec;
    for (const std::string& tok : kv) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value, got: " + tok);
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        if (key == "q") {
            // the field size argument may carry the modulus: q=p^k,modulus=...
            auto comma = val.find(",modulus=");
            if (comma != std::string::npos) {
                modspec = val.substr(comma + 9);
                val = val.substr(0, comma);
            }
            qspec = val;
        } else if (key == "a") {
            aspec = tok.substr(eq + 1);
        } else if (key == "d") {
            dspec = val;
        } else if (key == "modulus") {
            modspec = val;
        } else {
            throw ParseError("unknown key: " + key);
        }
    }
    if (qspec.empty() || aspec.empty() || dspec.empty())
        throw ParseError("q=, a= and d= are all required");

    RunConfig cfg;
    auto [p, k] = parse_prime_power(qspec);
    std::optional<std::vector<std::uint32_t>> modulus;
    if (!modspec.empty()) {
        auto fp = FieldSpec::make(p, 1);
        modulus = parse_poly(fp, modspec).coeffs();
    }
    cfg.field = FieldSpec::make(p, k, modulus);
    cfg.a = parse_ratfunc(cfg.field, aspec);
    long long d = std::stoll(dspec);
    if (d < 1) throw ParseError("d must be >= 1");
    cfg.d = static_cast<std::uint64_t>(d);
    cfg.budget = budget;
    cfg.workers = workers;
    cfg.v_bound = v_bound;
    cfg.out_path = out_path;
    return cfg;
}

std::string decimal(const mpq_class& x, int digits = 15) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, mpq_get_d(x.get_mpq_t()));
    return buf;
}

json rational_json(const mpq_class& x) {
    return json{{"num", x.get_num().get_str()},
                {"den", x.get_den().get_str()},
                {"decimal", decimal(x)}};
}

std::string ratio_str(const mpq_class& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(out_path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open output file: " + tmp.string());
        os << text;
    }
    fs::rename(tmp, target);
}

// Exact rational from a decimal/scientific literal like 1e-9 or 0.25.
mpq_class parse_decimal(const std::string& s) {
    std::string t = s;
    int exp10 = 0;
    auto e = t.find_first_of("eE");
    if (e != std::string::npos) {
        exp10 = std::stoi(t.substr(e + 1));
        t = t.substr(0, e);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<int>(t.size() - dot - 1);
        t.erase(dot, 1);
    }
    if (t.empty() || t == "+" || t == "-") throw ParseError("bad number: " + s);
    mpq_class v{mpz_class(t), 1};
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned>(std::abs(exp10)));
    if (exp10 >= 0)
        v *= p10;
    else
        v /= p10;
    v.canonicalize();
    return v;
}

json assumption_json(const AssumptionReport& rep) {
    return json{{"verified", rep.verified},
                {"proof_level", rep.level == ProofLevel::theorem ? "theorem" : "bounded"},
                {"v_bound", rep.v_bound}};
}

// a = lambda in F_q^x: density is 1 or 0 by d | ord(lambda)
json constant_a_json(const RunConfig& cfg) {
    std::uint32_t lam = cfg.field->div(cfg.a.num.coeff(0), cfg.a.den.coeff(0));
    std::uint64_t ord = cfg.field->unit_order(lam);
    bool divides = ord % cfg.d == 0;
    return json{{"mode", "constant-a"},
                {"lambda", cfg.field->print_elem(lam)},
                {"ord_lambda", ord},
                {"d", cfg.d},
                {"d_divides_ord", divides},
                {"density", rational_json(divides ? mpq_class(1) : mpq_class(0))},
                {"note", "R(N) = I_N when d | ord(lambda), else 0"}};
}

json d1_json() {
    return json{{"mode", "d-is-1"},
                {"d", 1},
                {"density", rational_json(mpq_class(1))},
                {"note", "R(N) = I_N - a_N; a_N = 0 for all but finitely many N"}};
}

int cmd_spectrum(const RunConfig& cfg) {
    json doc{{"schema", 1}, {"command", "spectrum"}};
    if (cfg.a.is_zero()) throw ZeroInput("spectrum: a = 0");
    if (cfg.a.is_constant()) {
        doc.update(constant_a_json(cfg));
        emit(doc.dump(2) + "\n", cfg.out_path);
        return 0;
    }
    if (cfg.d == 1) {
        doc.update(d1_json());
        emit(doc.dump(2) + "\n", cfg.out_path);
        return 0;
    }
    ArithProfile pr = profile_new(cfg.field, cfg.a, cfg.d);
    AssumptionReport rep = assumption_check(pr, cfg.v_bound);
    doc["q"] = pr.q();
    doc["a"] = print_ratfunc(pr.a);
    doc["d"] = pr.d;
    doc["lambda"] = pr.field->print_elem(pr.lambda);
    doc["a_tilde"] = print_ratfunc(pr.a_monic);
    doc["h"] = pr.h;
    doc["m"] = pr.m;
    doc["f"] = pr.f;
    doc["f_bar"] = pr.f_bar;
    doc["proposition_P"] = pr.p_flag;
    doc["e_f"] = e_N(pr, pr.f);
    doc["e_f_bar"] = e_N(pr, pr.f_bar);
    doc["assumption"] = assumption_json(rep);
    emit(doc.dump(2) + "\n", cfg.out_path);
    return 0;
}

int cmd_density(const RunConfig& cfg, const std::string& mode,
                const std::string& eps_str, std::optional<unsigned> N) {
    json doc{{"schema", 1}, {"command", "density"}, {"mode", mode}};
    if (cfg.a.is_zero()) throw ZeroInput("density: a = 0");
    if (cfg.a.is_constant()) {
        doc.update(constant_a_json(cfg));
        doc["tail_bound"] = rational_json(0);
        emit(doc.dump(2) + "\n", cfg.out_path);
        return 0;
    }
    if (cfg.d == 1) {
        doc.update(d1_json());
        doc["tail_bound"] = rational_json(0);
        emit(doc.dump(2) + "\n", cfg.out_path);
        return 0;
    }
    ArithProfile pr = profile_new(cfg.field, cfg.a, cfg.d);
    if (mode == "closed") {
        ClosedFormResult res = d3_closed(pr, cfg.v_bound);
        doc["density"] = rational_json(res.density.value);
        doc["tail_bound"] = rational_json(0);
        doc["assumption"] = assumption_json(res.assumption);
    } else if (mode == "series") {
        DensityValue res = d3_series(pr, parse_decimal(eps_str));
        doc["density"] = rational_json(res.value);
        doc["tail_bound"] = rational_json(res.tail_bound);
        doc["proof_level"] = "unconditional";
    } else if (mode == "proportion") {
        if (!N) throw ParseError("density proportion: --N is required");
        DensityValue res = proportion_density(pr, *N);
        doc["N"] = *N;
        doc["density"] = rational_json(res.value);
        doc["tail_bound"] = rational_json(0);
    } else {
        throw ParseError("density: mode must be closed | series | proportion");
    }
    emit(doc.dump(2) + "\n", cfg.out_path);
    return 0;
}

// a_N: number of monic irreducible factors of degree N of num*den
std::uint64_t a_excluded_theory(const RatFunc& a, unsigned N) {
    std::uint64_t n = 0;
    for (const Poly* part : {&a.num, &a.den}) {
        if (part->degree() < static_cast<int>(N)) continue;
        for (const auto& [P, e] : factorize(*part).factors)
            if (P.degree() == static_cast<int>(N)) ++n;
    }
    return n;
}

int cmd_verify(const RunConfig& cfg, unsigned Nmax, const std::string& format) {
    json doc{{"schema", 1}, {"command", "verify"}};
    if (cfg.a.is_zero()) throw ZeroInput("verify: a = 0");
    if (cfg.a.is_constant())
        throw ConstantInput("verify: a must be non-constant");

    bool all_pass = true;
    std::ostringstream csv;
    csv << "N,I_N,R,delta_N_num,delta_N_den,cesaro,cesaro_decimal,"
           "normalized_error,normalized_error_decimal,identity_pass\n";
    json rows = json::array();
    mpq_class max_err = 0, final_cesaro = 0;

    if (cfg.d == 1) {
        // R(N) = I_N - a_N: validated against the scan's own exclusion count
        auto scanner = std::make_shared<OrderScanner>(
            cfg.field, cfg.a, std::vector<std::uint64_t>{}, cfg.budget, cfg.workers);
        mpq_class cesaro_sum = 0;
        mpz_class qn = 1;
        for (unsigned N = 1; N <= Nmax; ++N) {
            const ScanResult& s = scanner->scan(N);
            std::uint64_t R = s.hist.empty() ? 0 : s.hist[0];
            mpz_class I = gauss_count(cfg.field->q(), N);
            bool pass = mpz_class(R) == I - a_excluded_theory(cfg.a, N);
            all_pass = all_pass && pass;
            qn *= cfg.field->q();
            mpq_class term(mpz_class(R) * N, qn);
            term.canonicalize();
            cesaro_sum += term;
            mpq_class ces = cesaro_sum / N;
            final_cesaro = ces;
            csv << N << "," << I << "," << R << ",1,1," << ratio_str(ces) << ","
                << decimal(ces) << ",0/1,0," << (pass ? "pass" : "FAIL") << "\n";
            rows.push_back(json{{"N", N},
                                {"I_N", I.get_str()},
                                {"R", R},
                                {"delta_N", rational_json(1)},
                                {"cesaro", rational_json(ces)},
                                {"normalized_error", rational_json(0)},
                                {"identity_pass", pass}});
        }
        doc["density"] = rational_json(1);
    } else {
        ArithProfile pr = profile_new(cfg.field, cfg.a, cfg.d);
        Counter counter(pr, cfg.budget, cfg.workers);
        for (unsigned N = 1; N <= Nmax; ++N) {
            CountRecord rec = counter.record(N);
            SplitIdentityReport id = counter.split_identity_check(N);
            all_pass = all_pass && id.pass;
            mpq_class delta = proportion_density(pr, N).value;
            if (rec.normalized_error > max_err) max_err = rec.normalized_error;
            final_cesaro = rec.cesaro;
            csv << N << "," << rec.I_N.get_str() << "," << rec.R << ","
                << delta.get_num().get_str() << "," << delta.get_den().get_str()
                << "," << ratio_str(rec.cesaro) << "," << decimal(rec.cesaro)
                << "," << ratio_str(rec.normalized_error) << ","
                << decimal(rec.normalized_error) << ","
                << (id.pass ? "pass" : "FAIL") << "\n";
            rows.push_back(json{{"N", N},
                                {"I_N", rec.I_N.get_str()},
                                {"R", rec.R},
                                {"a_excluded", rec.a_excluded},
                                {"delta_N", rational_json(delta)},
                                {"cesaro", rational_json(rec.cesaro)},
                                {"normalized_error", rational_json(rec.normalized_error)},
                                {"identity", json{{"lhs", id.lhs}, {"rhs", id.rhs},
                                                  {"pass", id.pass}}}});
        }
        mpq_class density;
        AssumptionReport rep = assumption_check(pr, cfg.v_bound);
        if (rep.verified) {
            density = d3_closed(pr, cfg.v_bound).density.value;
        } else {
            density = d3_series(pr, mpq_class(1, 1000000)).value;
        }
        doc["density"] = rational_json(density);
        mpq_class gap = final_cesaro - density;
        if (gap < 0) gap = -gap;
        doc["summary"] = json{{"all_identities_pass", all_pass},
                              {"max_normalized_error", rational_json(max_err)},
                              {"final_cesaro_gap", rational_json(gap)}};
    }

    if (format == "csv") {
        std::ostringstream out;
        out << csv.str();
        out << "# all_identities_pass=" << (all_pass ? "true" : "false") << "\n";
        out << "# max_normalized_error=" << ratio_str(max_err) << "\n";
        emit(out.str(), cfg.out_path);
    } else {
        doc["rows"] = rows;
        doc["all_identities_pass"] = all_pass;
        emit(doc.dump(2) + "\n", cfg.out_path);
    }
    return all_pass ? 0 : 4;
}

int cmd_probe_d1(const RunConfig& cfg, unsigned steps) {
    if (cfg.a.is_zero()) throw ZeroInput("probe-d1: a = 0");
    if (cfg.a.is_constant())
        throw ConstantInput("probe-d1: a must be non-constant");
    if (cfg.d < 2) throw DLessThanTwo("probe-d1: d must be >= 2");
    ArithProfile pr = profile_new(cfg.field, cfg.a, cfg.d);
    if (pr.f < 2)
        throw FTooSmall("probe-d1: f = ord_d(q) = 1; the probe needs f >= 2 "
                        "so that degrees with R = 0 exist");
    Counter counter(pr, cfg.budget, cfg.workers);
    D1Probe probe = counter.d1_probe(steps);

    json doc{{"schema", 1}, {"command", "probe-d1"}, {"f", pr.f}};
    json zeros = json::array();
    for (const auto& [N, ratio] : probe.zero_sequence)
        zeros.push_back(json{{"N", N}, {"ratio", rational_json(ratio)}});
    json ys = json::array();
    for (const auto& pt : probe.y_sequence) {
        json row{{"y", pt.y}, {"delta", rational_json(pt.delta)}};
        if (pt.ratio)
            row["ratio"] = rational_json(*pt.ratio);
        else
            row["ratio"] = nullptr;  // beyond budget
        ys.push_back(row);
    }
    doc["zero_sequence"] = zeros;
    doc["y_sequence"] = ys;
    emit(doc.dump(2) + "\n", cfg.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Densities of monic irreducibles P over F_q with d | ord_P(a)"};
    app.require_subcommand(1);

    std::vector<std::string> kv;
    unsigned budget = 0, workers = 0, Nmax = 10, steps = 3;
    std::optional<unsigned> propN;
    std::uint64_t v_bound = 10000;
    std::string eps_str = "1e-9", format = "csv", out_path, mode;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("profile", kv, "profile tokens: q=.. a=.. d=.. [modulus=..]");
        sub->add_option("--budget", budget, "log2 of the monic-polynomial budget");
        sub->add_option("--workers", workers, "worker threads (0 = hardware)");
        sub->add_option("--v-bound", v_bound, "bound for the assumption check");
        sub->add_option("--out", out_path, "output file (atomic write)");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "print the arithmetic profile");
    add_common(spectrum);

    CLI::App* density = app.add_subcommand("density", "theoretical density");
    density->add_option("kind", mode, "closed | series | proportion")->required();
    add_common(density);
    density->add_option("--N", propN, "degree for the proportion density");
    density->add_option("--eps", eps_str, "tail bound for the series");

    CLI::App* verify = app.add_subcommand("verify", "brute-force cross-validation");
    add_common(verify);
    verify->add_option("--Nmax", Nmax, "largest degree to verify");
    verify->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* probe = app.add_subcommand("probe-d1", "d1 non-existence probe");
    add_common(probe);
    probe->add_option("--steps", steps, "subsequence length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (budget == 0) budget = default_budget();
        RunConfig cfg = build_config(kv, budget, workers, v_bound, out_path);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (density->parsed()) return cmd_density(cfg, mode, eps_str, propN);
        if (verify->parsed()) return cmd_verify(cfg, Nmax, format);
        if (probe->parsed()) return cmd_probe_d1(cfg, steps);
        return 2;
    } catch (const AssumptionNotVerified& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
