#include "walkprove/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "walkprove/fp.hpp"
#include "walkprove/guess.hpp"
#include "walkprove/kernelproof.hpp"
#include "walkprove/multipoly.hpp"
#include "walkprove/ore.hpp"
#include "walkprove/walks.hpp"

namespace walkprove {

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Section section_from_key(const std::string& s) {
    if (s == "x0") return Section::X0;
    if (s == "y0") return Section::Y0;
    if (s == "origin") return Section::Origin;
    if (s == "diagonal") return Section::Diagonal;
    throw error("unknown section '" + s + "' (expected x0|y0|origin|diagonal)");
}

std::vector<long> parse_long_list(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        long v = std::stol(item, &pos);
        if (pos != item.size()) throw error("bad integer '" + item + "' in list");
        out.push_back(v);
    }
    return out;
}

std::string steps_file_tag(const std::string& steps) {
    std::string tag;
    for (char c : steps) tag += (c == ',') ? '-' : c;
    return tag;
}

int coeff_digits(const MultiPoly& P) {
    size_t d = 1;
    for (const auto& [m, c] : P.terms) {
        std::string s = c.str();
        if (!s.empty() && s[0] == '-') s.erase(0, 1);
        d = std::max(d, s.size());
    }
    return (int)d;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << body;
    if (!out.flush()) throw error("short write to " + path);
}

// --- config ------------------------------------------------------------------

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& val) {
    if (key == "steps") cfg.steps = val;
    else if (key == "section") cfg.section = val;
    else if (key == "kind") cfg.kind = val;
    else if (key == "mode") cfg.mode = val;
    else if (key == "N") cfg.N = std::stoull(val);
    else if (key == "deg_main") cfg.deg_main = std::stoi(val);
    else if (key == "deg_t") cfg.deg_t = std::stoi(val);
    else if (key == "prime_count") cfg.prime_count = std::stoi(val);
    else if (key == "prime_bits") cfg.prime_bits = std::stoi(val);
    else if (key == "primes_file") cfg.primes_file = val;
    else if (key == "points") cfg.points = parse_long_list(val);
    else if (key == "point") cfg.point = std::stol(val);
    else if (key == "out") cfg.out = val;
    else if (key == "threads") cfg.threads = std::stoi(val);
    else if (key == "pmax") cfg.pmax = std::stoull(val);
    else throw error("unknown config key '" + key + "'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open config file " + path);
    RunConfig cfg;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!val.empty() && (val.front() == ' ' || val.front() == '\t')) val.erase(0, 1);
        try {
            apply_config_line(cfg, key, val);
        } catch (const std::exception& e) {
            throw error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

std::string dump_config(const RunConfig& cfg) {
    std::ostringstream o;
    o << "steps=" << cfg.steps << "\n";
    o << "section=" << cfg.section << "\n";
    o << "kind=" << cfg.kind << "\n";
    o << "mode=" << cfg.mode << "\n";
    o << "N=" << cfg.N << "\n";
    o << "deg_main=" << cfg.deg_main << "\n";
    o << "deg_t=" << cfg.deg_t << "\n";
    o << "prime_count=" << cfg.prime_count << "\n";
    o << "prime_bits=" << cfg.prime_bits << "\n";
    o << "primes_file=" << cfg.primes_file << "\n";
    {
        o << "points=";
        for (size_t i = 0; i < cfg.points.size(); ++i) o << (i ? "," : "") << cfg.points[i];
        o << "\n";
    }
    o << "point=" << cfg.point << "\n";
    o << "out=" << cfg.out << "\n";
    o << "threads=" << cfg.threads << "\n";
    o << "pmax=" << cfg.pmax << "\n";
    return o.str();
}

std::vector<uint64_t> resolve_primes(const RunConfig& cfg) {
    std::string path = cfg.primes_file;
    if (const char* env = std::getenv("WALKPROVE_PRIMES"); env && *env) path = env;
    if (path.empty()) return default_prime_pool((size_t)std::max(1, cfg.prime_count));
    std::ifstream in(path);
    if (!in) throw error("cannot open prime list " + path);
    std::vector<uint64_t> primes;
    std::string line;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        uint64_t p = std::stoull(line.substr(a));
        if (!is_prime_u64(p)) throw error("prime list " + path + ": " + std::to_string(p) +
                                          " is not prime");
        if (p >= (1ull << 31)) throw error("prime list " + path + ": " + std::to_string(p) +
                                           " exceeds the 31-bit word bound");
        primes.push_back(p);
    }
    if (primes.empty()) throw error("prime list " + path + " is empty");
    return primes;
}

namespace {

// --- count ------------------------------------------------------------------

int run_count(const RunConfig& cfg, int n, const std::string& end) {
    StepSet W = StepSet::parse(cfg.steps);
    if (!end.empty()) {
        auto ij = parse_long_list(end);
        if (ij.size() != 2) throw error("--end expects i,j");
        Int v = count(W, n, (int)ij[0], (int)ij[1]);
        std::printf("%s\n", v.str().c_str());
        return 0;
    }
    auto layers = full_table_int(W, n);
    const auto& layer = layers[(size_t)n];
    int side = n + 1;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            const Int& v = layer[(size_t)i * (size_t)side + (size_t)j];
            if (!(v == Int(0))) std::printf("%d %d %s\n", i, j, v.str().c_str());
        }
    return 0;
}

// --- guess ------------------------------------------------------------------

int run_guess_algeq(const RunConfig& cfg, const StepSet& W, Section sec) {
    auto t0 = Clock::now();
    AnsatzGrid grid(GuessKind::Algebraic, cfg.deg_main, cfg.deg_t, cfg.N);
    std::vector<uint64_t> primes = resolve_primes(cfg);
    if ((int)primes.size() > cfg.prime_count && cfg.prime_count > 0)
        primes.resize((size_t)cfg.prime_count);
    std::vector<long> points = cfg.points;
    if (points.empty())
        for (long k = 1; (int)points.size() < 2 * (cfg.deg_main + cfg.deg_t) + 8; ++k)
            points.push_back(k);
    PipelineOptions po;
    po.threads = cfg.threads > 0 ? cfg.threads : (int)std::thread::hardware_concurrency();
    GuessReport rep;
    try {
        rep = modular_guess_pipeline({W, sec}, grid, primes, points, po);
    } catch (const error& e) {
        std::fprintf(stderr, "no result at precision N=%zu: %s\n", cfg.N, e.what());
        return 1;
    }
    if (!rep.found) {
        std::fprintf(stderr, "no algebraic relation found up to precision N=%zu\n", cfg.N);
        return 1;
    }
    const MultiPoly& P = rep.candidate;
    std::string out = cfg.out.empty() ? steps_file_tag(cfg.steps) + ".guess" : cfg.out;
    std::ostringstream body;
    body << "walkprove-guess v1\n";
    body << "kind: algeq\n";
    body << "steps: " << W.str() << "\n";
    body << "section: " << cfg.section << "\n";
    body << "precision: " << rep.precision << "\n";
    body << "margin: " << rep.margin << "\n";
    body << "poly P: " << to_string(P) << "\n";
    body << "end\n";
    write_text_file(out, body.str());
    std::printf("found: degT=%d degt=%d degx=%d margin=%ld primes=%zu points=%zu digits=%d "
                "time=%.1fs\n",
                degree(P, VAR_T), degree(P, VAR_t), degree(P, VAR_x), rep.margin, primes.size(),
                points.size(), coeff_digits(P), secs_since(t0));
    std::printf("written: %s\n", out.c_str());
    return 0;
}

int run_guess_diffeq(const RunConfig& cfg, const StepSet& W, Section sec) {
    auto t0 = Clock::now();
    uint64_t p = resolve_primes(cfg)[0];
    FpCtx C(p);
    int order = cfg.deg_main, tdeg = cfg.deg_t;
    if (cfg.N <= (size_t)order + (size_t)(order + 1) * (size_t)(tdeg + 1))
        throw error("N too small for the requested operator box");
    std::vector<uint64_t> vals;
    if (sec == Section::Origin || sec == Section::Diagonal) {
        for (const auto& r : section_series_mod(W, sec, (int)cfg.N - 1, p)) vals.push_back(r[0]);
    } else {
        vals = section_at_points_mod(W, sec, (int)cfg.N - 1, p,
                                     {(uint64_t)((cfg.point % (long)p + (long)p) % (long)p)})[0];
    }
    size_t Np = cfg.N - (size_t)order;
    std::vector<std::vector<uint64_t>> rows((size_t)order + 1);
    rows[0].assign(vals.begin(), vals.begin() + (long)(Np + (size_t)order));
    for (int k = 1; k <= order; ++k) {
        const auto& prev = rows[(size_t)k - 1];
        rows[(size_t)k].resize(prev.size() - 1);
        for (size_t m = 0; m + 1 < prev.size(); ++m)
            rows[(size_t)k][m] = mulmod((m + 1) % p, prev[m + 1], p);
    }
    for (auto& r : rows) r.resize(Np);
    std::vector<int> bounds((size_t)order + 1, tdeg);
    HPBasis basis = hermite_pade(rows, bounds, Np, p);
    std::vector<OreOp<FpCtx>> ops;
    for (const auto& row : basis) {
        OreOp<FpCtx> L = ore_from_polys(C, row);
        if (L.order() == order && ops.size() < 6) ops.push_back(std::move(L));
    }
    if (ops.empty()) {
        std::fprintf(stderr, "no order-%d operator with deg_t<=%d in %zu terms\n", order, tdeg,
                     cfg.N);
        return 1;
    }
    long margin = (long)Np - (long)(order + 1) * (tdeg + 1);
    std::string out = cfg.out.empty() ? steps_file_tag(cfg.steps) + ".ops" : cfg.out;
    std::ostringstream body;
    body << "walkprove-operators v1\n";
    body << "kind: diffeq\n";
    body << "steps: " << W.str() << "\n";
    body << "section: " << cfg.section << "\n";
    body << "prime: " << p << "\n";
    body << "point: " << cfg.point << "\n";
    body << "terms: " << cfg.N << "\n";
    for (size_t i = 0; i < ops.size(); ++i)
        body << "operator " << (char)('a' + (char)i) << ": " << fp_op_text(C, ops[i]) << "\n";
    int gorder = -1, gdeg = -1;
    if (ops.size() >= 2) {
        OreOp<FpCtx> G = ops[0];
        for (size_t i = 1; i < ops.size(); ++i) G = gcrd(C, G, ops[i]);
        gorder = G.order();
        gdeg = cleared_max_deg_fp(C, G);
        body << "operator gcrd: " << fp_op_text(C, G) << "\n";
    }
    body << "end\n";
    write_text_file(out, body.str());
    std::printf("found: order=%d degt<=%d count=%zu", order, tdeg, ops.size());
    if (gorder >= 0) std::printf(" gcrd_order=%d gcrd_deg=%d", gorder, gdeg);
    std::printf(" margin=%ld prime=%llu point=%ld time=%.1fs\n", margin, (unsigned long long)p,
                cfg.point, secs_since(t0));
    std::printf("written: %s\n", out.c_str());
    return 0;
}

int run_guess(const RunConfig& cfg) {
    StepSet W = StepSet::parse(cfg.steps);
    Section sec = section_from_key(cfg.section);
    if (cfg.kind == "algeq") return run_guess_algeq(cfg, W, sec);
    if (cfg.kind == "diffeq") return run_guess_diffeq(cfg, W, sec);
    throw error("unknown guess kind '" + cfg.kind + "' (expected algeq|diffeq)");
}

// --- prove ------------------------------------------------------------------

int run_prove(const RunConfig& cfg) {
    StepSet W = StepSet::parse(cfg.steps);
    if (cfg.mode != "series" && cfg.mode != "exact")
        throw error("unknown mode '" + cfg.mode + "' (expected series|exact)");
    PipelineConfig pc;
    pc.series_N = cfg.N;
    pc.exact_mode = cfg.mode == "exact";
    pc.curvature_pmax = cfg.pmax;
    pc.threads = cfg.threads > 0 ? cfg.threads : (int)std::thread::hardware_concurrency();
    if (!cfg.primes_file.empty() || std::getenv("WALKPROVE_PRIMES")) pc.primes = resolve_primes(cfg);
    pc.out_path = cfg.out.empty() ? steps_file_tag(cfg.steps) + ".cert" : cfg.out;
    Certificate cert;
    try {
        cert = run_proof_pipeline(W, pc);
    } catch (const error& e) {
        std::fprintf(stderr, "pipeline failed: %s\n", e.what());
        return 1;
    }
    for (const auto& st : cert.stages) {
        std::printf("stage %s: %s", st.name.c_str(), st.ok ? "ok" : "FAIL");
        for (const auto& [k, v] : st.kv)
            if (k == "degT" || k == "degt" || k == "order" || k == "maxdeg" || k == "margin" ||
                k == "residual" || k == "prime" || k == "N")
                std::printf(" %s=%s", k.c_str(), v.c_str());
        std::printf("\n");
    }
    for (const auto& c : cert.caveats) std::printf("caveat: %s\n", c.c_str());
    std::printf("mode: %s\ncertificate: %s\n", cert.mode.c_str(), pc.out_path.c_str());
    return cert.ok() ? 0 : 1;
}

// --- pcurv ------------------------------------------------------------------

std::string extract_operator_text(const std::string& body, const std::string& name) {
    std::istringstream in(body);
    std::string line;
    if (!std::getline(in, line)) throw error("empty operator file");
    if (line.rfind("walkprove-operators", 0) != 0) {
        // plain file: the whole content is one operator expression
        std::string text = line;
        while (std::getline(in, line)) text += " " + line;
        return text;
    }
    std::string want = "operator " + (name.empty() ? "" : name + ":");
    std::string first;
    while (std::getline(in, line)) {
        if (line.rfind("operator ", 0) != 0) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string text = line.substr(colon + 1);
        if (first.empty()) first = text;
        if (!name.empty() && line.substr(0, colon) == "operator " + name) return text;
    }
    if (!name.empty()) throw error("no operator named '" + name + "' in the file");
    if (first.empty()) throw error("no operator lines in the file");
    return first;
}

int run_pcurv(const std::string& path, const std::string& name, const std::string& primes_csv,
              uint64_t pmax) {
    std::ifstream in(path);
    if (!in) throw error("cannot open operator file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    OreOp<QCtx> L = parse_operator(extract_operator_text(buf.str(), name));
    std::vector<uint64_t> primes;
    if (!primes_csv.empty()) {
        for (long v : parse_long_list(primes_csv)) {
            if (v < 2 || !is_prime_u64((uint64_t)v))
                throw error(std::to_string(v) + " is not prime");
            primes.push_back((uint64_t)v);
        }
    } else if (pmax > 0) {
        primes = small_primes_below(pmax);
    }
    int order = L.order();
    for (uint64_t p : primes) {
        if (p <= (uint64_t)order) {
            std::printf("p=%llu skipped (p <= order %d)\n", (unsigned long long)p, order);
            continue;
        }
        FpCtx C(p);
        bool zero = p_curvature_zero(C, reduce_op_mod(L, p));
        std::printf("p=%llu %s\n", (unsigned long long)p, zero ? "zero" : "nonzero");
    }
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"guess-and-prove toolkit for quarter-plane lattice walks"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path;
    bool dump = false;
    app.add_option("--config", config_path, "key=value config file");
    app.add_flag("--dump-config", dump, "print the effective config and exit");

    // flag storage; presence decides whether a value overrides the config file
    RunConfig flags;
    int count_n = 0;
    std::string count_end, points_csv, pcurv_op, pcurv_name, pcurv_primes;
    uint64_t pcurv_pmax = 0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--steps", flags.steps, "compass step tokens, e.g. W,S,NE");
        c->add_option("--threads", flags.threads, "worker count (0 = hardware)");
        c->add_option("--out", flags.out, "output file path");
    };

    CLI::App* ccount = app.add_subcommand("count", "exact walk counts for one length");
    ccount->add_option("--n", count_n, "walk length")->required()->check(CLI::NonNegativeNumber);
    ccount->add_option("--end", count_end, "endpoint i,j (omit for the full slice)");
    add_common(ccount);

    CLI::App* cguess = app.add_subcommand("guess", "fit an annihilating relation from series data");
    cguess->add_option("--kind", flags.kind, "algeq | diffeq");
    cguess->add_option("--section", flags.section, "x0 | y0 | origin | diagonal");
    cguess->add_option("--N", flags.N, "series precision");
    cguess->add_option("--deg-main", flags.deg_main, "deg_T (algeq) or operator order (diffeq)");
    cguess->add_option("--deg-t", flags.deg_t, "t-degree bound");
    cguess->add_option("--prime-count", flags.prime_count, "pool primes to use");
    cguess->add_option("--points", points_csv, "x-interpolation points, comma-separated");
    cguess->add_option("--point", flags.point, "evaluation point for single-point guessing");
    add_common(cguess);

    CLI::App* cprove = app.add_subcommand("prove", "run the verification pipeline");
    cprove->add_option("--mode", flags.mode, "series | exact");
    cprove->add_option("--N", flags.N, "series verification order");
    cprove->add_option("--pmax", flags.pmax, "curvature prime ceiling");
    add_common(cprove);

    CLI::App* cpcurv = app.add_subcommand("pcurv", "p-curvature table for an operator file");
    cpcurv->add_option("--op", pcurv_op, "operator file")->required();
    cpcurv->add_option("--name", pcurv_name, "operator name inside a multi-operator file");
    cpcurv->add_option("--primes", pcurv_primes, "explicit prime list, comma-separated");
    cpcurv->add_option("--pmax", pcurv_pmax, "all primes below this bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        auto take = [&](CLI::App* c, const std::string& flag, auto member) {
            if (c->count(flag)) cfg.*member = flags.*member;
        };
        for (CLI::App* c : {ccount, cguess, cprove}) {
            if (!c->parsed()) continue;
            take(c, "--steps", &RunConfig::steps);
            take(c, "--threads", &RunConfig::threads);
            take(c, "--out", &RunConfig::out);
        }
        if (cguess->parsed()) {
            take(cguess, "--kind", &RunConfig::kind);
            take(cguess, "--section", &RunConfig::section);
            take(cguess, "--N", &RunConfig::N);
            take(cguess, "--deg-main", &RunConfig::deg_main);
            take(cguess, "--deg-t", &RunConfig::deg_t);
            take(cguess, "--prime-count", &RunConfig::prime_count);
            take(cguess, "--point", &RunConfig::point);
            if (cguess->count("--points")) cfg.points = parse_long_list(points_csv);
        }
        if (cprove->parsed()) {
            take(cprove, "--mode", &RunConfig::mode);
            take(cprove, "--pmax", &RunConfig::pmax);
            if (cprove->count("--N")) cfg.N = flags.N;
            else if (config_path.empty()) cfg.N = 300;  // prove default
        }
        if (dump) {
            std::fputs(dump_config(cfg).c_str(), stdout);
            return 0;
        }
        if (ccount->parsed()) return run_count(cfg, count_n, count_end);
        if (cguess->parsed()) return run_guess(cfg);
        if (cprove->parsed()) return run_prove(cfg);
        if (cpcurv->parsed()) return run_pcurv(pcurv_op, pcurv_name, pcurv_primes, pcurv_pmax);
        std::fputs(app.help().c_str(), stdout);
        return 2;
    } catch (const error& e) {
        // domain errors during validation and setup are usage errors; failures
        // of the mathematics itself return 1 from the handlers above
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

}  // namespace walkprove
