// pmlab command-line front end: reproducible runs, CSV/JSON emission.
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmlab/pmlab.hpp"

using namespace pmlab;

namespace {

std::string now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int default_threads() {
    if (const char* env = std::getenv("PMLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

struct Emitter {
    std::string format = "csv";
    std::string out_path;

    void emit(io::RunRecord& rec, std::chrono::steady_clock::time_point started) const {
        rec.timestamp = now_iso8601();
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
        std::string text = format == "json" ? io::to_json(rec).dump(2) + "\n" : io::to_csv(rec);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
            f << text;
        }
    }
};

std::string fmt_int(int64_t v) { return std::to_string(v); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pmlab: numerical laboratory for L^q norms of Dirichlet polynomials"};
    app.require_subcommand(1);

    Emitter emitter;
    int threads = default_threads();
    auto* format_opt = app.add_option("--format", emitter.format, "output format")
                           ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", emitter.out_path,
                   "write output to a file instead of stdout (a .json suffix implies --format json)");
    app.add_option("--threads", threads, "worker threads (default $PMLAB_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    // dcoef
    auto* dcoef = app.add_subcommand("dcoef", "generalized divisor coefficients d_alpha(n)");
    double dc_alpha = 0.0;
    std::vector<int64_t> dc_ns;
    dcoef->add_option("--alpha", dc_alpha, "order alpha")->required();
    dcoef->add_option("--n", dc_ns, "values of n (comma separated)")->required()->delimiter(',');

    // exact
    auto* exact = app.add_subcommand("exact", "exact/certified mean values");
    std::string ex_kind;
    int64_t ex_N = 0, ex_Y = 0;
    int ex_k = 1, ex_cutoff = 40;
    double ex_beta = 1.0, ex_tol = 1e-7;
    int ex_budget = 1 << 16;
    exact->add_option("--kind", ex_kind, "one of l2k, J, I, i2")
        ->required()
        ->check(CLI::IsMember({"l2k", "J", "I", "i2"}));
    exact->add_option("--N", ex_N);
    exact->add_option("--k", ex_k);
    exact->add_option("--Y", ex_Y);
    exact->add_option("--beta", ex_beta);
    exact->add_option("--cutoff", ex_cutoff, "local series cutoff");
    exact->add_option("--budget", ex_budget, "quadrature node budget (i2)");
    exact->add_option("--tol", ex_tol, "quadrature convergence tolerance (i2)");

    // norm
    auto* norm = app.add_subcommand("norm", "Monte Carlo L^q norms (common random numbers)");
    int64_t no_N = 0, no_samples = 100000;
    uint64_t no_seed = 1;
    std::vector<double> no_qs;
    norm->add_option("--N", no_N)->required();
    norm->add_option("--q", no_qs, "q values (comma separated)")->required()->delimiter(',');
    norm->add_option("--samples", no_samples);
    norm->add_option("--seed", no_seed);

    // const
    auto* cnst = app.add_subcommand("const", "Euler-product constant a_beta with certified tail");
    double ct_beta = 1.0;
    int64_t ct_prime_limit = 100000;
    int ct_cutoff = 40;
    cnst->add_option("--beta", ct_beta)->required();
    cnst->add_option("--prime-limit", ct_prime_limit);
    cnst->add_option("--cutoff", ct_cutoff);

    // bound
    auto* bound = app.add_subcommand("bound", "envelope / Hoelder bound formulas");
    double bd_q = 1.0, bd_C = 1.0, bd_B = 0.0;
    int64_t bd_N = 0, bd_Y = 0, bd_prime_limit = 100000;
    bool bd_optimize = false;
    bound->add_option("--q", bd_q)->required();
    bound->add_option("--N", bd_N);
    bound->add_option("--Y", bd_Y);
    bound->add_option("--B", bd_B);
    bound->add_option("--C", bd_C);
    bound->add_option("--prime-limit", bd_prime_limit, "prime limit for a1");
    bound->add_flag("--optimize-B", bd_optimize, "report the optimal B = e^gamma/pi");

    // verify
    auto* verify = app.add_subcommand("verify", "measured-vs-formula suites");
    std::string vf_suite;
    int64_t vf_samples = 20000;
    uint64_t vf_seed = 1;
    std::vector<int64_t> vf_N, vf_Y;
    std::vector<double> vf_q, vf_beta;
    verify->add_option("--suite", vf_suite, "theorem1|prop1|prop2|holder|i2")->required();
    verify->add_option("--samples", vf_samples);
    verify->add_option("--seed", vf_seed);
    verify->add_option("--N-grid", vf_N)->delimiter(',');
    verify->add_option("--Y-grid", vf_Y)->delimiter(',');
    verify->add_option("--q-grid", vf_q)->delimiter(',');
    verify->add_option("--beta-grid", vf_beta)->delimiter(',');

    bool verify_failed = false;

    try {
        app.parse(argc, argv);
        if (format_opt->count() == 0 && emitter.out_path.size() > 5
            && emitter.out_path.ends_with(".json"))
            emitter.format = "json";
        auto started = std::chrono::steady_clock::now();
        io::RunRecord rec;

        if (*dcoef) {
            rec.command = "dcoef";
            rec.params = {{"alpha", io::format_double(dc_alpha)}};
            int64_t max_n = 2;
            for (int64_t n : dc_ns) {
                if (n < 1) throw std::domain_error("dcoef: n must be positive");
                max_n = std::max(max_n, n);
            }
            auto table = arith::build_prime_table(max_n);
            rec.columns = {"n", "d_alpha"};
            for (int64_t n : dc_ns)
                rec.rows.push_back({static_cast<double>(n),
                                    arith::divisor_coefficient(arith::DivisorOrder(dc_alpha),
                                                               arith::factorize(n, table))});
        } else if (*exact) {
            rec.command = "exact";
            rec.params = {{"kind", ex_kind}};
            if (ex_kind == "l2k") {
                if (ex_N < 1) throw std::domain_error("exact --kind l2k: --N required");
                rec.params.push_back({"N", fmt_int(ex_N)});
                rec.params.push_back({"k", fmt_int(ex_k)});
                auto r = meanvalues::pseudomoment_2k_exact(ex_N, ex_k);
                rec.columns = {"N", "k", "value", "terms", "truncation_error"};
                rec.rows.push_back({static_cast<double>(ex_N), static_cast<double>(ex_k), r.value,
                                    static_cast<double>(r.terms_used), r.truncation_error});
            } else if (ex_kind == "J") {
                if (ex_Y < 1) throw std::domain_error("exact --kind J: --Y required");
                rec.params.push_back({"Y", fmt_int(ex_Y)});
                rec.params.push_back({"beta", io::format_double(ex_beta)});
                rec.params.push_back({"cutoff", fmt_int(ex_cutoff)});
                auto table = arith::build_prime_table(std::max<int64_t>(2, ex_Y));
                auto r = meanvalues::J_exact(ex_Y, ex_beta, table, ex_cutoff);
                rec.columns = {"Y", "beta", "value", "terms", "truncation_error"};
                rec.rows.push_back({static_cast<double>(ex_Y), ex_beta, r.value,
                                    static_cast<double>(r.terms_used), r.truncation_error});
            } else if (ex_kind == "I") {
                if (ex_N < 1 || ex_Y < 1) throw std::domain_error("exact --kind I: --N and --Y required");
                rec.params.push_back({"N", fmt_int(ex_N)});
                rec.params.push_back({"Y", fmt_int(ex_Y)});
                rec.params.push_back({"cutoff", fmt_int(ex_cutoff)});
                auto table = arith::build_prime_table(std::max({int64_t{2}, ex_N, ex_Y}));
                auto r = meanvalues::I_exact(ex_N, ex_Y, table, ex_cutoff);
                rec.columns = {"N", "Y", "value", "terms", "truncation_error"};
                rec.rows.push_back({static_cast<double>(ex_N), static_cast<double>(ex_Y), r.value,
                                    static_cast<double>(r.terms_used), r.truncation_error});
            } else {  // i2
                if (ex_Y < 3) throw std::domain_error("exact --kind i2: --Y >= 3 required");
                rec.params.push_back({"Y", fmt_int(ex_Y)});
                rec.params.push_back({"budget", fmt_int(ex_budget)});
                rec.params.push_back({"tol", io::format_double(ex_tol)});
                auto table = arith::build_prime_table(ex_Y);
                meanvalues::I2Stats stats;
                meanvalues::QuadratureSpec spec{ex_budget, 2, ex_tol};
                double v = meanvalues::I2_numeric(ex_Y, spec, table, &stats);
                rec.columns = {"Y", "value", "last_delta", "nodes", "min_integrand"};
                rec.rows.push_back({static_cast<double>(ex_Y), v, stats.last_delta,
                                    static_cast<double>(stats.nodes), stats.min_integrand});
            }
        } else if (*norm) {
            rec.command = "norm";
            rec.has_seed = true;
            rec.seed = no_seed;
            rec.params = {{"N", fmt_int(no_N)}, {"samples", fmt_int(no_samples)}};
            auto table = arith::build_prime_table(std::max<int64_t>(2, no_N));
            auto est = montecarlo::estimate_norm_q(no_N, no_qs, no_samples, no_seed, table, threads);
            rec.columns = {"N", "q", "samples", "seed", "mean", "stderr", "max_over_mean"};
            for (const auto& e : est)
                rec.rows.push_back({static_cast<double>(e.N), e.q, static_cast<double>(e.samples),
                                    static_cast<double>(e.seed), e.mean, e.std_err, e.max_over_mean});
        } else if (*cnst) {
            rec.command = "const";
            rec.params = {{"beta", io::format_double(ct_beta)},
                          {"prime_limit", fmt_int(ct_prime_limit)},
                          {"cutoff", fmt_int(ct_cutoff)}};
            auto v = products::a_beta(ct_beta, ct_prime_limit, ct_cutoff);
            rec.columns = {"beta", "prime_limit", "series_cutoff", "value", "tail_bound"};
            rec.rows.push_back({ct_beta, static_cast<double>(v.prime_limit),
                                static_cast<double>(v.series_cutoff), v.real(), v.tail_bound});
        } else if (*bound) {
            rec.command = "bound";
            rec.params = {{"q", io::format_double(bd_q)}};
            auto a = bounds::alpha_exponent(bd_q);
            rec.columns = {"q", "alpha_q", "companion", "holder_beta"};
            std::vector<double> row{bd_q, a.alpha, a.companion, bounds::holder_beta(bd_q)};
            if (bd_N > 0) {
                rec.params.push_back({"N", fmt_int(bd_N)});
                rec.params.push_back({"C", io::format_double(bd_C)});
                rec.columns.insert(rec.columns.end(), {"N", "envelope", "y_lower", "y_upper", "y_nonempty"});
                auto yr = bounds::y_range_check(static_cast<double>(bd_N));
                row.push_back(static_cast<double>(bd_N));
                row.push_back(bounds::theorem1_envelope(bd_q, static_cast<double>(bd_N), bd_C));
                row.push_back(yr.lower);
                row.push_back(yr.upper);
                row.push_back(yr.nonempty ? 1.0 : 0.0);
            }
            if (bd_optimize || bd_B > 0.0) {
                rec.params.push_back({"prime_limit", fmt_int(bd_prime_limit)});
                auto a1 = products::a_beta(1.0, bd_prime_limit, 40);
                rec.columns.push_back("a1");
                row.push_back(a1.real());
                if (bd_B > 0.0) {
                    rec.params.push_back({"B", io::format_double(bd_B)});
                    rec.columns.insert(rec.columns.end(), {"B", "one_norm_constant"});
                    row.push_back(bd_B);
                    row.push_back(bounds::one_norm_constant(bd_B, a1.real()));
                }
                if (bd_optimize) {
                    auto opt = bounds::optimize_B(a1.real());
                    rec.columns.insert(rec.columns.end(),
                                       {"B_star", "min_constant", "below_paper_range"});
                    row.push_back(opt.B_star);
                    row.push_back(opt.constant_factor);
                    row.push_back(opt.below_paper_range ? 1.0 : 0.0);
                }
            }
            if (bd_Y > 0) rec.params.push_back({"Y", fmt_int(bd_Y)});
            rec.rows.push_back(row);
        } else if (*verify) {
            rec.command = "verify";
            rec.has_seed = true;
            rec.seed = vf_seed;
            bounds::Suite suite = bounds::parse_suite(vf_suite);
            bounds::VerifyGrids grids = bounds::default_grids(suite);
            if (verify->count("--N-grid")) grids.N = vf_N;
            if (verify->count("--Y-grid")) grids.Y = vf_Y;
            if (verify->count("--q-grid")) grids.q = vf_q;
            if (verify->count("--beta-grid")) grids.beta = vf_beta;
            int64_t limit = 2;
            for (int64_t n : grids.N) limit = std::max(limit, n);
            for (int64_t y : grids.Y) limit = std::max(limit, y);
            auto table = arith::build_prime_table(limit);
            auto report = bounds::verify_suite(suite, grids, vf_samples, vf_seed, table, threads);
            rec.params = {{"suite", report.suite}, {"samples", fmt_int(vf_samples)}};
            for (const auto& [k, v] : report.metadata) rec.params.push_back({k, v});
            rec.columns = report.columns;
            rec.columns.push_back("pass");
            for (size_t i = 0; i < report.rows.size(); ++i) {
                auto row = report.rows[i];
                row.push_back(static_cast<double>(report.row_pass[i]));
                rec.rows.push_back(std::move(row));
            }
            verify_failed = !report.all_pass();
        }

        emitter.emit(rec, started);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << " (last iterates " << e.previous_iterate << ", "
                  << e.last_iterate << ")\n";
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    return verify_failed ? 1 : 0;
}
