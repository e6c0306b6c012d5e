// sgs: experiment driver for the generalized-sampling library.
//
// Usage: sgs <experiment> --config <path> [--out <dir>] [--seed <u64>]
//            [--jobs <n>]
//        sgs list
//
// Every experiment reads a flat key=value config, writes one CSV artifact
// with a header row, and a JSON sidecar holding the config hash, the seed,
// and the library version.  Identical config + seed gives byte-identical
// CSV.  SGS_LOG={error,info,debug} controls stderr verbosity.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgs/csinf.hpp"
#include "sgs/gensamp.hpp"
#include "sgs/invreg.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace sgs;
using std::numbers::pi;
using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Logging

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel g_log_level = LogLevel::Error;

void init_log_level() {
    const char* env = std::getenv("SGS_LOG");
    if (!env) return;
    const std::string v(env);
    if (v == "info") g_log_level = LogLevel::Info;
    else if (v == "debug") g_log_level = LogLevel::Debug;
    else if (v == "error") g_log_level = LogLevel::Error;
    else std::fprintf(stderr, "sgs: unknown SGS_LOG value '%s', using 'error'\n", env);
}

template <typename... Args>
void log_at(LogLevel lvl, const char* fmt, Args... args) {
    if (g_log_level < lvl) return;
    std::fprintf(stderr, "sgs: ");
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
}
#define LOG_INFO(...) log_at(LogLevel::Info, __VA_ARGS__)
#define LOG_DEBUG(...) log_at(LogLevel::Debug, __VA_ARGS__)

// ---------------------------------------------------------------------------
// Config: flat key = value lines; '#' comments; optional [section] headers
// prefix the keys that follow with "section.".

class Config {
  public:
    static Config load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::ostringstream whole;
        whole << in.rdbuf();
        Config c;
        c.raw_ = whole.str();
        std::istringstream lines(c.raw_);
        std::string line, section;
        int lineno = 0;
        while (std::getline(lines, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r\n");
                if (b == std::string::npos) return std::string();
                const auto e = s.find_last_not_of(" \t\r\n");
                return s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty())
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": empty key");
            if (!section.empty()) key = section + "." + key;
            c.kv_[key] = val;
        }
        return c;
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string str(const std::string& key) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) throw std::runtime_error("missing config key: " + key);
        return it->second;
    }
    std::string str(const std::string& key, const std::string& dflt) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? dflt : it->second;
    }
    long integer(const std::string& key) const { return std::stol(str(key)); }
    long integer(const std::string& key, long dflt) const {
        return has(key) ? std::stol(str(key)) : dflt;
    }
    double real(const std::string& key) const { return std::stod(str(key)); }
    double real(const std::string& key, double dflt) const {
        return has(key) ? std::stod(str(key)) : dflt;
    }
    std::vector<long> integers(const std::string& key) const {
        std::vector<long> out;
        for (const std::string& tok : split(str(key))) out.push_back(std::stol(tok));
        return out;
    }
    std::vector<double> reals(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& tok : split(str(key))) out.push_back(std::stod(tok));
        return out;
    }

    // FNV-1a over the raw file bytes.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : raw_) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

  private:
    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',' || ch == ' ' || ch == '\t') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    }

    std::map<std::string, std::string> kv_;
    std::string raw_;
};

// ---------------------------------------------------------------------------
// CSV writer with deterministic formatting.

class Csv {
  public:
    Csv(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }
    Csv& field(long v) {
        sep();
        out_ << v;
        return *this;
    }
    Csv& field(double v) {
        sep();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out_ << buf;
        return *this;
    }
    Csv& field(const std::string& v) {
        sep();
        out_ << v;
        return *this;
    }
    void endrow() {
        out_ << "\n";
        first_ = true;
    }

  private:
    void sep() {
        if (!first_) out_ << ",";
        first_ = false;
    }
    std::ofstream out_;
    bool first_ = true;
};

void write_sidecar(const std::filesystem::path& csv_path, const std::string& experiment,
                   const Config& cfg, std::uint64_t seed) {
    nlohmann::json meta;
    meta["experiment"] = experiment;
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    meta["config_hash"] = std::string(hex);
    meta["seed"] = seed;
    meta["version"] = kVersion;
    std::ofstream out(csv_path.string() + ".meta.json", std::ios::binary);
    out << meta.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Shared helpers

FunctionSystem make_system(const Config& cfg, const std::string& prefix) {
    const Interval dom{cfg.real("domain_a", 0.0), cfg.real("domain_b", 1.0)};
    const std::string name = cfg.str(prefix, prefix == "sampling" ? "fourier" : "haar");
    if (name == "fourier") return FunctionSystem::fourier(dom);
    if (name == "haar") return FunctionSystem::haar(dom);
    if (name == "legendre") return FunctionSystem::legendre(dom);
    if (name == "daubechies")
        return FunctionSystem::daubechies(static_cast<int>(cfg.integer("moments", 2)), dom);
    throw std::runtime_error("unknown system '" + name + "' for key " + prefix);
}

// Test signals on the normalized coordinate of the system domain.
Eigen::VectorXcd eval_target(const std::string& name, const Interval& dom,
                             const Grid& g) {
    Eigen::VectorXcd f(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double t = (g.nodes[i] - dom.a) / dom.length();
        double v;
        if (name == "cosine") v = std::cos(2.0 * pi * t);
        else if (name == "step") v = t < 0.5 ? 1.0 : -1.0;
        else if (name == "hat") v = 1.0 - 2.0 * std::abs(t - 0.5);
        else if (name == "ramp") v = t;
        else throw std::runtime_error("unknown target '" + name + "'");
        f[i] = v;
    }
    return f;
}

// 64-bit splitmix step, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform draw in [1, n] with rejection (deterministic across platforms).
long bounded_draw(std::mt19937_64& rng, long n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<long>(v % span) + 1;
}

// ---------------------------------------------------------------------------
// Experiments

int run_gs(const Config& cfg, const std::filesystem::path& out, std::uint64_t seed) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const long M = cfg.integer("M");
    const std::vector<long> Ns =
        cfg.has("N_list") ? cfg.integers("N_list") : std::vector<long>{cfg.integer("N")};
    const std::string target = cfg.str("target", "cosine");

    const Grid g = make_grid(samp.domain, 256, 10);
    const Eigen::VectorXcd f = eval_target(target, samp.domain, g);
    const double f_norm = norm(g, f);

    Csv csv(out, {"N", "M", "d_nm", "iterations", "residual", "err_l2"});
    for (long N : Ns) {
        if (N < M) throw std::runtime_error("gs: need N >= M");
        const SectionMatrix A = assemble_section(samp, {1, N}, recon, {1, M});
        Eigen::VectorXcd b(N);
        for (long i = 1; i <= N; ++i) b[i - 1] = dot(g, f, eval_element(samp, i, g));
        const GsResult r = gs_reconstruct(A, b);
        CoeffVec c;
        c.values = r.coeffs;
        c.system = recon;
        c.offset = 1;
        const double err = norm(g, f - synthesize(c, g));
        LOG_INFO("gs: N=%ld M=%ld err=%.6g", N, M, err);
        csv.field(N).field(M).field(r.d_nm).field(long(r.iterations));
        csv.field(r.residual_norm).field(err / std::max(f_norm, 1e-300));
        csv.endrow();
    }
    (void)seed;
    return 0;
}

int run_ssr(const Config& cfg, const std::filesystem::path& out, std::uint64_t) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const double theta = cfg.real("theta", 2.0);
    Csv csv(out, {"M", "theta", "ssr"});
    for (long M : cfg.integers("M_list")) {
        SsrQuery q;
        q.M = M;
        q.theta = theta;
        const long N = stable_sampling_rate(samp, recon, q);
        LOG_INFO("ssr: M=%ld -> N=%ld", M, N);
        csv.field(M).field(theta).field(N).endrow();
    }
    return 0;
}

int run_consistent_fail(const Config& cfg, const std::filesystem::path& out,
                        std::uint64_t) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const long lo = cfg.integer("N_lo", 5), hi = cfg.integer("N_hi", 25);
    Csv csv(out, {"N", "sigma_min", "log_sigma_min"});
    for (long N = lo; N <= hi; ++N) {
        const SectionMatrix A = assemble_section(samp, {1, N}, recon, {1, N});
        const double s = min_singular_value(A);
        csv.field(N).field(s).field(std::log(s)).endrow();
    }
    return 0;
}

int run_invreg_volterra(const Config& cfg, const std::filesystem::path& out,
                        std::uint64_t seed) {
    const long M = cfg.integer("M"), N = cfg.integer("N"), R = cfg.integer("R");
    const std::vector<double> eps_list =
        cfg.has("eps_list") ? cfg.reals("eps_list") : std::vector<double>{0.0};
    const std::vector<double> alpha_list =
        cfg.has("alpha_list") ? cfg.reals("alpha_list") : std::vector<double>{0.0};

    const FunctionSystem four = FunctionSystem::fourier();
    const SingularSystem sys = SingularSystem::volterra(N + 4);
    const Grid g = make_grid({0.0, 1.0}, 256, 10);
    Eigen::VectorXcd gv(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i)
        gv[i] = std::sin(2.0 * pi * g.nodes[i]) / (2.0 * pi);

    // f = cos(2 pi t): coefficients 1/2 at the +-1 frequencies.
    Eigen::VectorXcd beta_true = Eigen::VectorXcd::Zero(M);
    if (M >= 3) {
        beta_true[1] = 0.5;
        beta_true[2] = 0.5;
    }

    Csv csv(out, {"eps_rel", "delta", "N", "M", "R", "alpha", "err_unfiltered",
                  "err_filtered"});
    for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
        const double eps = eps_list[ei];
        Eigen::VectorXcd data = gv;
        double delta = 0.0;
        if (eps > 0.0) {
            const InvProblemData noisy = add_noise(g, gv, eps, mix_seed(seed, ei), false);
            data = noisy.g_noisy;
            delta = noisy.delta;
        }
        const Eigen::VectorXcd eta = sample_coefficients(g, data, four, R);
        const CoeffVec uneven = uneven_recover(sys, four, four, N, M, R, eta);
        const double err_u = (uneven.values - beta_true).norm();
        for (double alpha : alpha_list) {
            const FilterSpec filter =
                alpha == 0.0 ? FilterSpec::none() : FilterSpec::tikhonov(alpha);
            const CoeffVec rec = filtered_recover(sys, four, four, filter, N, M, R, eta);
            const double err_f = (rec.values - beta_true).norm();
            LOG_INFO("invreg: eps=%g alpha=%g err_u=%.6g err_f=%.6g", eps, alpha,
                     err_u, err_f);
            csv.field(eps).field(delta).field(N).field(M).field(R).field(alpha);
            csv.field(err_u).field(err_f).endrow();
        }
    }
    return 0;
}

int run_coherence(const Config& cfg, const std::filesystem::path& out, std::uint64_t) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const long depth = cfg.integer("probe_depth", 0);
    Csv csv(out, {"N", "mu_rows", "mu_cols"});
    for (long N : cfg.integers("N_list")) {
        const TailCoherence tc = tail_coherence(samp, recon, N, depth);
        LOG_INFO("coherence: N=%ld mu_rows=%.6g mu_cols=%.6g", N, tc.mu_rows, tc.mu_cols);
        csv.field(N).field(tc.mu_rows).field(tc.mu_cols).endrow();
    }
    return 0;
}

// Draw an (s,M)-sparse coefficient vector with unit-modulus nonzeros.
Eigen::VectorXcd sparse_signal(const SparsityLevels& sp, long K, std::mt19937_64& rng) {
    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(K);
    long lo = 0;
    for (std::size_t k = 0; k < sp.levels.size(); ++k) {
        const long hi = sp.levels[k];
        std::set<long> support;
        while (static_cast<long>(support.size()) < sp.s[k])
            support.insert(lo + bounded_draw(rng, hi - lo));
        for (long idx : support) {
            const double phase = 2.0 * pi * (static_cast<double>(rng() >> 11) /
                                             9007199254740992.0);
            beta[idx - 1] = std::polar(1.0, phase);
        }
        lo = hi;
    }
    return beta;
}

std::vector<long> uniform_omega(long N, long m, std::mt19937_64& rng) {
    std::set<long> idx;
    while (static_cast<long>(idx.size()) < m) idx.insert(bounded_draw(rng, N));
    return {idx.begin(), idx.end()};
}

SparsityLevels read_sparsity(const Config& cfg) {
    SparsityLevels sp;
    sp.levels = cfg.integers("s_levels");
    sp.s = cfg.integers("s");
    if (sp.levels.size() != sp.s.size())
        throw std::runtime_error("s_levels and s must have equal length");
    return sp;
}

int run_cs_recover(const Config& cfg, const std::filesystem::path& out,
                   std::uint64_t seed) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const std::vector<long> levels = cfg.integers("levels");
    const std::vector<long> m = cfg.integers("m");
    const long K = cfg.integer("K");
    const double delta = cfg.real("delta", 0.0);
    const long n_seeds = cfg.integer("seeds", 20);
    const SparsityLevels sp = read_sparsity(cfg);
    const long N = levels.back();
    long m_total = 0;
    for (long v : m) m_total += v;

    Csv csv(out, {"seed", "scheme_id", "s_total", "err_l2", "err_l1",
                  "feasibility_gap", "iterations"});
    for (long t = 0; t < n_seeds; ++t) {
        const std::uint64_t trial_seed = mix_seed(seed, t);
        std::mt19937_64 rng(mix_seed(trial_seed, 0xa11ce));
        const Eigen::VectorXcd beta = sparse_signal(sp, K, rng);

        const MultilevelScheme scheme = draw_scheme(levels, m, trial_seed);
        const std::vector<long> uni = uniform_omega(N, m_total, rng);
        for (int which = 0; which < 2; ++which) {
            const std::vector<long>& omega = which == 0 ? scheme.omega : uni;
            const Eigen::MatrixXcd B = subsampled_matrix(samp, recon, omega, K);
            const Eigen::VectorXcd y = B * beta;
            const CsResult r = l1_solve(B, y, delta);
            const double err2 = (r.coeffs - beta).norm();
            const double err1 = (r.coeffs - beta).lpNorm<1>();
            LOG_INFO("cs-recover: seed=%ld %s err2=%.6g", t,
                     which == 0 ? "multilevel" : "uniform", err2);
            csv.field(t).field(std::string(which == 0 ? "multilevel" : "uniform"));
            csv.field(sp.total_s()).field(err2).field(err1);
            csv.field(r.feasibility_gap).field(long(r.iterations)).endrow();
        }
    }
    return 0;
}

int run_cs_flip(const Config& cfg, const std::filesystem::path& out,
                std::uint64_t seed) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const std::vector<long> levels = cfg.integers("levels");
    const std::vector<long> m = cfg.integers("m");
    const long K = cfg.integer("K");
    const double delta = cfg.real("delta", 0.0);
    const long n_seeds = cfg.integer("seeds", 10);
    const long N = levels.back();
    if (K <= N)
        throw std::runtime_error("cs-flip: K must exceed the sampling bandwidth");

    // Piecewise-smooth test signal: a smooth oscillation with a jump.
    const Grid g = make_grid(recon.domain, 512, 8);
    Eigen::VectorXcd f(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double t = (g.nodes[i] - recon.domain.a) / recon.domain.length();
        f[i] = std::sin(2.0 * pi * t) + (t > 0.4 && t < 0.75 ? 1.0 : 0.0);
    }
    Eigen::VectorXcd beta(K);
    for (long j = 1; j <= K; ++j) beta[j - 1] = inner_product(g, f, recon, j);

    Csv csv(out, {"seed", "err_direct", "err_flipped", "ratio"});
    for (long t = 0; t < n_seeds; ++t) {
        const MultilevelScheme scheme = draw_scheme(levels, m, mix_seed(seed, t));
        const Eigen::MatrixXcd B = subsampled_matrix(samp, recon, scheme.omega, K);

        const CsResult direct = l1_solve(B, B * beta, delta);
        const double err_d = (direct.coeffs - beta).norm();

        const Eigen::VectorXcd beta_f = flip_coefficients(beta, K);
        const CsResult flipped = l1_solve(B, B * beta_f, delta);
        const double err_f =
            (flip_coefficients(flipped.coeffs, K) - beta).norm();
        LOG_INFO("cs-flip: seed=%ld direct=%.6g flipped=%.6g", t, err_d, err_f);
        csv.field(t).field(err_d).field(err_f);
        csv.field(err_f / std::max(err_d, 1e-300)).endrow();
    }
    return 0;
}

int run_theorem_check(const Config& cfg, const std::filesystem::path& out,
                      std::uint64_t seed) {
    const FunctionSystem samp = make_system(cfg, "sampling");
    const FunctionSystem recon = make_system(cfg, "reconstruction");
    const std::vector<long> levels = cfg.integers("levels");
    const std::vector<long> m = cfg.integers("m");
    const SparsityLevels sp = read_sparsity(cfg);
    const double epsilon = cfg.real("epsilon", 0.5);
    const std::string mode = cfg.str("sparsity_mode", "bound");

    const SectionMatrix A =
        assemble_section(samp, {1, levels.back()}, recon, {1, sp.levels.back()});
    std::vector<double> S;
    for (int k = 1; k <= static_cast<int>(levels.size()); ++k)
        S.push_back(relative_sparsity(A, levels, sp, k,
                                      mode == "exact" ? SparsityMode::Exact
                                                      : SparsityMode::Bound));
    const MultilevelScheme scheme = draw_scheme(levels, m, seed);
    const TheoremConditions tc = theorem_conditions(A, scheme, sp, S, epsilon);

    Csv csv(out, {"level", "width", "m", "S_k", "required_m", "level_ok", "mhat_ok",
                  "satisfied"});
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const long width = levels[k] - (k == 0 ? 0 : levels[k - 1]);
        csv.field(long(k + 1)).field(width).field(m[k]).field(S[k]);
        csv.field(tc.required_m[k]).field(long(tc.level_ok[k] ? 1 : 0));
        csv.field(long(tc.mhat_ok ? 1 : 0)).field(long(tc.satisfied ? 1 : 0));
        csv.endrow();
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentEntry {
    const char* name;
    const char* params;
    int (*run)(const Config&, const std::filesystem::path&, std::uint64_t);
};

const ExperimentEntry kExperiments[] = {
    {"gs", "reconstruction, M, N or N_list, target, [domain_a, domain_b, moments]",
     run_gs},
    {"ssr", "reconstruction, M_list, [theta]", run_ssr},
    {"consistent-fail", "reconstruction, [N_lo, N_hi]", run_consistent_fail},
    {"invreg-volterra", "M, N, R, [eps_list, alpha_list]", run_invreg_volterra},
    {"coherence", "reconstruction, N_list, [probe_depth]", run_coherence},
    {"cs-recover", "reconstruction, levels, m, K, s_levels, s, [delta, seeds]",
     run_cs_recover},
    {"cs-flip", "reconstruction, levels, m, K (> bandwidth), [delta, seeds]",
     run_cs_flip},
    {"theorem-check",
     "reconstruction, levels, m, s_levels, s, [epsilon, sparsity_mode]",
     run_theorem_check},
};

void list_experiments() {
    std::printf("available experiments:\n");
    for (const auto& e : kExperiments)
        std::printf("  %-16s %s\n", e.name, e.params);
    std::printf("\ncommon flags: --config <path> [--out <dir>] [--seed <u64>]"
                " [--jobs <n>]\n");
}

}  // namespace

int main(int argc, char** argv) {
    init_log_level();

    CLI::App app{"sgs: generalized sampling and compressive recovery experiments"};
    app.require_subcommand(0);
    std::string experiment, config_path, out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 1;
    app.add_option("experiment", experiment, "experiment name, or 'list'")
        ->required();
    app.add_option("--config", config_path, "path to key=value config file");
    app.add_option("--out", out_dir, "output directory (default: .)");
    auto* seed_opt = app.add_option("--seed", seed, "seed override (u64)");
    app.add_option("--jobs", jobs, "worker cap for internal linear algebra")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;
    Eigen::setNbThreads(jobs);

    if (experiment == "list") {
        list_experiments();
        return 0;
    }

    const ExperimentEntry* entry = nullptr;
    for (const auto& e : kExperiments)
        if (experiment == e.name) entry = &e;
    if (!entry) {
        std::fprintf(stderr, "sgs: unknown experiment '%s' (try 'sgs list')\n",
                     experiment.c_str());
        return 2;
    }
    if (config_path.empty()) {
        std::fprintf(stderr, "sgs: --config is required for experiment runs\n");
        return 2;
    }

    try {
        const Config cfg = Config::load(config_path);
        const std::uint64_t run_seed =
            seed_given ? seed : static_cast<std::uint64_t>(cfg.integer("seed", 0));
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path csv_path =
            std::filesystem::path(out_dir) / (experiment + ".csv");
        LOG_INFO("running %s -> %s (seed %llu)", experiment.c_str(),
                 csv_path.string().c_str(), static_cast<unsigned long long>(run_seed));
        const int rc = entry->run(cfg, csv_path, run_seed);
        if (rc == 0) write_sidecar(csv_path, experiment, cfg, run_seed);
        return rc;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "sgs: %s: %s\n", experiment.c_str(), ex.what());
        return 1;
    }
}
