#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmlab/constants.hpp"
#include "pmlab/meanvalues.hpp"
#include "pmlab/montecarlo.hpp"
#include "pmlab/products.hpp"

namespace pmlab::bounds {

// Exponent pair of the norm envelope: alpha_q = 1/(4(2-q)) and its
// companion 1/2 - alpha_q.
struct AlphaExponents {
    double alpha;
    double companion;
};

inline AlphaExponents alpha_exponent(double q) {
    if (!(q > 0.0) || q > 1.0) throw std::domain_error("alpha_exponent: requires 0 < q <= 1");
    double a = 1.0 / (4.0 * (2.0 - q));
    return {a, 0.5 - a};
}

inline double holder_beta(double q) {
    if (!(q > 0.0) || q > 1.0) throw std::domain_error("holder_beta: requires 0 < q <= 1");
    return q / (2.0 - q);
}

// Bound on ||f||_q implied by ||f||_q^q <= I^{q/2} J^{1-q/2}.
inline double holder_combine(double I_val, double J_val, double q) {
    if (I_val < 0.0 || J_val < 0.0) throw std::invalid_argument("holder_combine: inputs must be >= 0");
    if (!(q > 0.0) || q > 1.0) throw std::domain_error("holder_combine: requires 0 < q <= 1");
    return std::pow(std::pow(I_val, q / 2.0) * std::pow(J_val, 1.0 - q / 2.0), 1.0 / q);
}

// C (log N)^{alpha_q} (loglog N)^{1/2 - alpha_q}. Needs loglog N >= 1,
// i.e. N >= e^e, so both factors are real and the companion power is sane.
inline double theorem1_envelope(double q, double N, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("theorem1_envelope: C must be positive");
    static const double n_floor = std::exp(std::exp(1.0));
    if (!(N >= n_floor)) throw std::domain_error("theorem1_envelope: requires N >= e^e (loglog N >= 1)");
    AlphaExponents a = alpha_exponent(q);
    const double ln = std::log(N);
    return C * std::pow(ln, a.alpha) * std::pow(std::log(ln), a.companion);
}

// g(B) = sqrt(B) e^{-gamma} + 1/(pi sqrt(B)); the B-dependent part of the
// explicit 1-norm constant.
inline double one_norm_g(double B) {
    if (!(B > 0.0)) throw std::domain_error("one_norm_g: requires B > 0");
    const double r = std::sqrt(B);
    return r * std::exp(-MathConstants::euler_gamma) + 1.0 / (MathConstants::pi * r);
}

// a1 e^{gamma/4} (sqrt(B) e^{-gamma} + 1/(pi sqrt(B)))^{1/2}.
inline double one_norm_constant(double B, double a1) {
    return a1 * std::exp(MathConstants::euler_gamma / 4.0) * std::sqrt(one_norm_g(B));
}

struct OptimizeBResult {
    double B_star;
    double constant_factor;    // (4/pi)^{1/4} a1, the minimal constant
    bool below_paper_range;    // true when B* < 5, outside the proved range
};

inline OptimizeBResult optimize_B(double a1 = 1.0) {
    const double b = MathConstants::exp_gamma() / MathConstants::pi;
    return {b, std::pow(4.0 / MathConstants::pi, 0.25) * a1, b < 5.0};
}

// Principal terms of the I(N, Y) formula: a1 (e^g log Y)^{1/4}
// (log N / (e^g log Y) + (1/pi) loglog Y); the O(1) is omitted, so every
// consumer labels this "principal terms only".
inline double prop2_rhs(int64_t N, int64_t Y, double a1) {
    if (Y < 3) throw std::domain_error("prop2_rhs: requires Y >= 3");
    if (N < 2) throw std::domain_error("prop2_rhs: requires N >= 2");
    const double t = MathConstants::exp_gamma() * std::log(static_cast<double>(Y));
    return a1 * std::pow(t, 0.25)
         * (std::log(static_cast<double>(N)) / t
            + std::log(std::log(static_cast<double>(Y))) / MathConstants::pi);
}

struct YRange {
    double lower;
    double upper;
    bool nonempty;
};

// Whether exp((loglog N)^2) <= Y <= exp(log N / (5 loglog N)) admits any Y,
// in terms of log N (the range is empty for every representable double N).
inline bool y_range_nonempty_log(double log_n) {
    if (!(log_n > 1.0)) throw std::domain_error("y_range_nonempty_log: requires log N > 1");
    const double ll = std::log(log_n);
    return ll * ll <= log_n / (5.0 * ll);
}

inline YRange y_range_check(double N) {
    if (!(N >= 16.0)) throw std::domain_error("y_range_check: requires N >= 16");
    const double ln = std::log(N);
    const double ll = std::log(ln);
    YRange r;
    r.lower = std::exp(ll * ll);
    r.upper = std::exp(ln / (5.0 * ll));
    r.nonempty = r.lower <= r.upper;
    return r;
}

// Smallest log N whose admissible Y-range is nonempty, i.e. the root of
// x = 5 (log x)^3. The corresponding N = e^x is around 10^1023.
inline double first_nonempty_log_n() {
    double lo = 1300.0, hi = 100000.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (y_range_nonempty_log(mid) ? hi : lo) = mid;
    }
    return hi;
}

// Parameter bundle for bound evaluations, with the envelope's domain rules.
struct BoundParams {
    double q;
    int64_t N;
    int64_t Y = 0;   // 0 = unset
    double B = 0.0;  // 0 = unset

    void validate() const {
        if (!(q > 0.0) || q > 1.0) throw std::domain_error("BoundParams: q must be in (0, 1]");
        if (N < 16) throw std::domain_error("BoundParams: N must be >= 16");
        if (Y != 0 && Y < 2) throw std::domain_error("BoundParams: Y must be >= 2");
        if (B != 0.0 && !(B > 0.0)) throw std::domain_error("BoundParams: B must be > 0");
    }
};

enum class Suite { theorem1, prop1, prop2, holder, i2 };

inline Suite parse_suite(const std::string& name) {
    if (name == "theorem1") return Suite::theorem1;
    if (name == "prop1") return Suite::prop1;
    if (name == "prop2") return Suite::prop2;
    if (name == "holder") return Suite::holder;
    if (name == "i2") return Suite::i2;
    throw std::invalid_argument("unknown suite: " + name);
}

inline const char* suite_name(Suite s) {
    switch (s) {
        case Suite::theorem1: return "theorem1";
        case Suite::prop1: return "prop1";
        case Suite::prop2: return "prop2";
        case Suite::holder: return "holder";
        case Suite::i2: return "i2";
    }
    return "?";
}

struct VerifyGrids {
    std::vector<int64_t> N;
    std::vector<int64_t> Y;
    std::vector<double> q;
    std::vector<double> beta;
};

inline VerifyGrids default_grids(Suite s) {
    switch (s) {
        case Suite::theorem1:
            return {{100, 1000, 10000}, {}, {0.5, 0.75, 1.0}, {}};
        case Suite::prop1:
            return {{}, {100, 1000, 10000, 100000}, {}, {1.0, 2.0}};
        case Suite::prop2:
            return {{200, 1000, 3000}, {7, 20, 50}, {}, {}};
        case Suite::holder:
            return {{100, 1000}, {5, 50}, {}, {}};
        case Suite::i2:
            return {{}, {100, 1000, 10000}, {}, {}};
    }
    return {};
}

// One row per parameter combination, pairing measured values with formula
// values. pass is 1/0 for checked rows and -1 for report-only rows.
struct BoundReport {
    std::string suite;
    uint64_t seed = 0;
    int64_t samples = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<int> row_pass;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool all_pass() const {
        for (int p : row_pass)
            if (p == 0) return false;
        return true;
    }
};

inline BoundReport verify_suite(Suite suite, const VerifyGrids& grids, int64_t samples,
                                uint64_t seed, const arith::PrimeTable& table, int threads = 1) {
    BoundReport rep;
    rep.suite = suite_name(suite);
    rep.seed = seed;
    rep.samples = samples;

    switch (suite) {
        case Suite::theorem1: {
            rep.columns = {"q", "N", "norm_mean", "norm_stderr", "envelope_C1", "ratio"};
            rep.metadata.push_back({"note", "C_q unknown except q=1; ratio curves reported, no pass/fail"});
            for (int64_t N : grids.N) {
                auto est = montecarlo::estimate_norm_q(N, grids.q, samples, seed, table, threads);
                for (size_t j = 0; j < grids.q.size(); ++j) {
                    const double q = grids.q[j];
                    const double norm = std::pow(est[j].mean, 1.0 / q);
                    // delta-method propagation of the q-th root
                    const double norm_err = est[j].mean > 0.0
                        ? norm * est[j].std_err / (q * est[j].mean) : 0.0;
                    const double env = theorem1_envelope(q, static_cast<double>(N), 1.0);
                    rep.rows.push_back({q, static_cast<double>(N), norm, norm_err, env, norm / env});
                    rep.row_pass.push_back(-1);
                }
            }
            break;
        }
        case Suite::prop1: {
            rep.columns = {"beta", "Y", "J_exact", "formula", "ratio"};
            rep.metadata.push_back({"note", "pass = |ratio-1| non-increasing along the Y grid per beta"});
            for (double beta : grids.beta) {
                products::EulerProductValue ab = products::a_beta(beta, 100000, 40);
                rep.metadata.push_back({"a_beta(" + std::to_string(beta) + ")",
                                        std::to_string(ab.real()) + " tail " + std::to_string(ab.tail_bound)});
                double prev_gap = -1.0;
                for (int64_t Y : grids.Y) {
                    auto J = meanvalues::J_exact(Y, beta, table, 64);
                    const double formula = ab.real()
                        * std::pow(MathConstants::exp_gamma() * std::log(static_cast<double>(Y)),
                                   beta * beta / 4.0);
                    const double ratio = J.value / formula;
                    const double gap = std::abs(ratio - 1.0);
                    rep.rows.push_back({beta, static_cast<double>(Y), J.value, formula, ratio});
                    rep.row_pass.push_back(prev_gap < 0.0 ? 1 : (gap <= prev_gap + 1e-12 ? 1 : 0));
                    prev_gap = gap;
                }
            }
            break;
        }
        case Suite::prop2: {
            rep.columns = {"N", "Y", "I_exact", "rhs_principal", "ratio"};
            rep.metadata.push_back({"note", "principal terms only; admissible Y-range is empty at desk "
                                            "scale, so this is an extrapolation diagnostic, never pass/fail"});
            products::EulerProductValue a1 = products::a_beta(1.0, 100000, 40);
            rep.metadata.push_back({"a1", std::to_string(a1.real())});
            for (int64_t N : grids.N)
                for (int64_t Y : grids.Y) {
                    auto I = meanvalues::I_exact(N, Y, table);
                    const double rhs = prop2_rhs(N, Y, a1.real());
                    rep.rows.push_back({static_cast<double>(N), static_cast<double>(Y),
                                        I.value, rhs, I.value / rhs});
                    rep.row_pass.push_back(-1);
                }
            break;
        }
        case Suite::holder: {
            rep.columns = {"N", "Y", "mean_abs_f", "I_mean", "J_mean", "bound", "margin"};
            rep.metadata.push_back({"note", "empirical Cauchy-Schwarz with common random numbers; "
                                            "pass = mean|f| <= sqrt(I J) exactly"});
            for (int64_t N : grids.N)
                for (int64_t Y : grids.Y) {
                    auto chain = montecarlo::estimate_holder_chain(N, Y, samples, seed, table, threads);
                    rep.rows.push_back({static_cast<double>(N), static_cast<double>(Y),
                                        chain.one_norm.mean, chain.I.mean, chain.J.mean,
                                        chain.bound(), chain.bound() - chain.one_norm.mean});
                    rep.row_pass.push_back(chain.holds() ? 1 : 0);
                }
            break;
        }
        case Suite::i2: {
            rep.columns = {"Y", "I2", "nodes", "min_integrand", "a1_loglog_term", "offset"};
            rep.metadata.push_back({"note", "I2 is diagnostic (O(1) unquantified); pass = converged "
                                            "with strictly positive integrand"});
            products::EulerProductValue a1 = products::a_beta(1.0, 100000, 40);
            rep.metadata.push_back({"a1", std::to_string(a1.real())});
            for (int64_t Y : grids.Y) {
                meanvalues::I2Stats stats;
                meanvalues::QuadratureSpec qs;
                const double v = meanvalues::I2_numeric(Y, qs, table, &stats);
                const double term = a1.real() / MathConstants::pi
                                  * std::log(std::log(static_cast<double>(Y)));
                rep.rows.push_back({static_cast<double>(Y), v, static_cast<double>(stats.nodes),
                                    stats.min_integrand, term, v - term});
                rep.row_pass.push_back(stats.min_integrand > 0.0 ? 1 : 0);
            }
            break;
        }
    }
    return rep;
}

}
