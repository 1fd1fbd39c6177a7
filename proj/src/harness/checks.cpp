#include "catqae/harness/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace catqae::harness {

namespace {

// Tolerance bands.
constexpr double kQuantumSlopeMax = -0.85;
constexpr double kClassicalSlopeLo = -0.65;
constexpr double kClassicalSlopeHi = -0.40;
constexpr double kSpeedupLo = 1.5;
constexpr double kSpeedupHi = 3.5;
constexpr double kNoiselessRmseMax = 100.0;
constexpr double kNoiseJump = 10.0;
constexpr double kSaturation = 0.25;
constexpr double kTailSpeedupLo = 1.0;
constexpr double kTailSpeedupHi = 4.0;
constexpr double kCtMax97 = 30.0;
constexpr double kQmcLo = 15.0;
constexpr double kQmcHi = 90.0;
constexpr double kQmcSpread = 2.0;
constexpr std::int64_t kBudgetMatch = 8192;
constexpr double kDiscBand = 0.30;
constexpr double kRatioLo = 2.0;
constexpr double kRatioHi = 4.0;
constexpr std::int64_t kRatioMaxN = 6;
constexpr double kEmpiricalLo = 1.2;
constexpr double kEmpiricalHi = 3.0;
constexpr double kLogGain = 3.0;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool has_column(const ExperimentReport& r, const char* name) {
    return std::find(r.columns.begin(), r.columns.end(), name) != r.columns.end();
}

void add(std::vector<CheckResult>& out, std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
}

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

void invariants(const ExperimentReport& r, std::vector<CheckResult>& out) {
    if (has_column(r, "disc_error") && has_column(r, "analytic") && has_column(r, "exact_bins")) {
        bool ok = true;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const double d = r.number(i, "disc_error");
            ok = ok && d == std::abs(r.number(i, "exact_bins") - r.number(i, "analytic"));
        }
        add(out, "disc_error = |bins - analytic| on every row", ok, std::to_string(r.rows.size()) + " rows");
    }
}

void slope_sanity(const ExperimentReport& r, std::vector<CheckResult>& out) {
    const SlopeFit* q = r.slope("quantum");
    const SlopeFit* c = r.slope("classical_bins");
    if (!q || !c) {
        add(out, "slope fits present", false, "missing quantum or classical_bins fit");
        return;
    }
    add(out, "classical-on-bins slope CI intersects [-0.65, -0.40]",
        c->ci_low <= kClassicalSlopeHi && c->ci_high >= kClassicalSlopeLo,
        "slope " + num(c->slope) + " CI [" + num(c->ci_low) + ", " + num(c->ci_high) + "]");
    add(out, "quantum slope below classical slope", q->slope < c->slope,
        num(q->slope) + " vs " + num(c->slope));
}

std::size_t row_where(const ExperimentReport& r, const char* col, double value) {
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.number(i, col) == value) return i;
    }
    throw std::out_of_range(std::string("no row with ") + col + " = " + num(value));
}

void convergence(const ExperimentReport& r, bool synthetic, std::vector<CheckResult>& out) {
    slope_sanity(r, out);
    if (synthetic) {
        if (const SlopeFit* q = r.slope("quantum")) {
            add(out, "quantum slope <= -0.85", q->slope <= kQuantumSlopeMax, "slope " + num(q->slope));
            add(out, "quantum slope CI excludes -0.5", q->ci_high < -0.5 || q->ci_low > -0.5,
                "CI [" + num(q->ci_low) + ", " + num(q->ci_high) + "]");
        }
    }
    const double s = r.number(row_where(r, "k", 6), "speedup");
    add(out, "k=6 speedup in [1.5, 3.5]", in(s, kSpeedupLo, kSpeedupHi), num(s) + "x");
}

void noise(const ExperimentReport& r, std::vector<CheckResult>& out) {
    auto rmse_of = [&](const char* preset) {
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            if (r.text(i, "preset") == preset) return i;
        }
        throw std::out_of_range(std::string("no preset ") + preset);
    };
    const std::size_t z = rmse_of("noiseless"), lo = rmse_of("low"), me = rmse_of("medium"), hi = rmse_of("high");
    const double rz = r.number(z, "rmse"), rl = r.number(lo, "rmse");
    add(out, "noiseless RMSE <= $100", rz <= kNoiselessRmseMax, "$" + num(rz));
    add(out, "low RMSE >= 10x noiseless with positive bias", rl >= kNoiseJump * rz && r.number(lo, "bias") > 0.0,
        "$" + num(rl) + " bias " + num(r.number(lo, "bias")));
    const double rm = r.number(me, "rmse"), rh = r.number(hi, "rmse");
    add(out, "medium and high RMSE within 25%", std::abs(rm - rh) <= kSaturation * std::min(rm, rh),
        "$" + num(rm) + " vs $" + num(rh));
}

void tail_sweep(const ExperimentReport& r, bool synthetic, std::vector<CheckResult>& out) {
    bool parity = true;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.number(i, "degenerate") != 0.0) continue;
        parity = parity && r.number(i, "queries") ==
                               r.number(i, "grover_shots") * (2.0 * r.number(i, "k_use") + 1.0);
    }
    add(out, "query parity", parity, "queries = S_G (2k+1) on every row");
    if (synthetic) {
        double prev = -1.0;
        bool band = true, mono = true;
        std::string detail;
        for (double pct : {90.0, 95.0, 97.0}) {
            const double s = r.number(row_where(r, "percentile", pct), "speedup");
            band = band && in(s, kTailSpeedupLo, kTailSpeedupHi);
            mono = mono && s >= prev;
            prev = s;
            detail += num(pct) + ":" + num(s) + "x ";
        }
        add(out, "speedups in [1.0, 4.0]", band, detail);
        add(out, "speedups nondecreasing in percentile", mono, detail);
    } else {
        for (double pct : {95.0, 97.0}) {
            const double s = r.number(row_where(r, "percentile", pct), "speedup");
            add(out, num(pct) + "th speedup in [1.5, 3.5]", in(s, kSpeedupLo, kSpeedupHi), num(s) + "x");
        }
        const std::size_t i = row_where(r, "percentile", 90.0);
        add(out, "90th row pathological (disc_error > analytic)",
            r.number(i, "pathological") == 1.0 && r.number(i, "disc_error") > r.number(i, "analytic"),
            "disc_error $" + num(r.number(i, "disc_error")) + " vs analytic $" + num(r.number(i, "analytic")));
    }
}

void budget_match(const ExperimentReport& r, std::vector<CheckResult>& out) {
    bool order = true;
    double qmin = 1e300, qmax = 0.0;
    bool qband = true;
    std::string detail;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.number(i, "budget") != static_cast<double>(kBudgetMatch)) continue;
        const double naive = r.number(i, "naive"), ct = r.number(i, "conditional_tail"), q = r.number(i, "qmc");
        order = order && ct < naive && q < naive;
        qband = qband && in(q, kQmcLo, kQmcHi);
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
        detail += num(r.number(i, "percentile")) + ": naive " + num(naive) + " ct " + num(ct) + " qmc " + num(q) +
                  "; ";
    }
    add(out, "CT < naive and QMC < naive at B=8192", order, detail);
    double ct = -1.0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.number(i, "percentile") == 97.0 && r.number(i, "budget") == static_cast<double>(kBudgetMatch)) {
            ct = r.number(i, "conditional_tail");
        }
    }
    add(out, "CT at 97th <= $30", ct >= 0.0 && ct <= kCtMax97, "$" + num(ct));
    add(out, "QMC in [$15, $90] varying < 2x", qband && qmax < kQmcSpread * qmin,
        "$" + num(qmin) + " .. $" + num(qmax));
}

void qubit_sweep(const ExperimentReport& r, std::vector<CheckResult>& out) {
    double m = 0.0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) m += r.number(i, "disc_error");
    m /= static_cast<double>(r.rows.size());
    bool band = true, ratio = true, growth = true;
    std::string dd, rd;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double d = r.number(i, "disc_error");
        band = band && std::abs(d - m) <= kDiscBand * m;
        dd += num(d) + " ";
        if (r.number(i, "n") <= static_cast<double>(kRatioMaxN)) {
            const double q = r.number(i, "ratio");
            ratio = ratio && in(q, kRatioLo, kRatioHi);
            rd += "n=" + num(r.number(i, "n")) + ":" + num(q) + "x ";
        }
        if (i > 0) growth = growth && r.number(i, "sp_two_qubit") > r.number(i - 1, "sp_two_qubit");
    }
    add(out, "disc_error within +-30% of its mean across n", band, dd);
    add(out, "classical/quantum RMSE ratio in [2, 4] for n <= 6", ratio, rd);
    add(out, "state-prep two-qubit count strictly increasing", growth, "");
}

void empirical(const ExperimentReport& r, std::vector<CheckResult>& out) {
    double top = 0.0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) top = std::max(top, r.number(i, "budget"));
    bool band = true, k1 = true;
    std::string detail;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        k1 = k1 && r.number(i, "k") == 1.0;
        if (r.number(i, "budget") != top) continue;
        const double s = r.number(i, "speedup");
        band = band && in(s, kEmpiricalLo, kEmpiricalHi);
        detail += num(r.number(i, "percentile")) + ":" + num(s) + "x ";
    }
    add(out, "speedup in [1.2, 3.0] at each percentile (largest budget)", band, detail);
    add(out, "k used = 1", k1, "");
}

void binning(const ExperimentReport& r, std::vector<CheckResult>& out) {
    auto find = [&](const char* scheme, double n) {
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            if (r.text(i, "scheme") == scheme && r.number(i, "n") == n) return i;
        }
        throw std::out_of_range("missing binning row");
    };
    const double ew4 = r.number(find("equal_width", 4), "disc_error");
    const double ls4 = r.number(find("log_spaced", 4), "disc_error");
    add(out, "log-spaced n=4 disc_error <= equal-width / 3", ls4 * kLogGain <= ew4, num(ls4) + " vs " + num(ew4));
    const double ew3 = r.number(find("equal_width", 3), "disc_error");
    const double ls3 = r.number(find("log_spaced", 3), "disc_error");
    add(out, "log-spaced n=3 disc_error > equal-width n=3", ls3 > ew3, num(ls3) + " vs " + num(ew3));
    for (double n : {4.0, 5.0}) {
        const double le = r.number(find("log_spaced", n), "k_max");
        const double ee = r.number(find("equal_width", n), "k_max");
        add(out, "log-spaced k_max > equal-width k_max at n=" + num(n), le > ee, num(le) + " vs " + num(ee));
    }
}

} // namespace

std::vector<CheckResult> check_report(const ExperimentReport& r) {
    std::vector<CheckResult> out;
    invariants(r, out);
    try {
        const std::string& id = r.experiment_id;
        if (id == "exp1" || id == "exp4a") convergence(r, r.dataset == "synthetic", out);
        else if (id == "exp2") noise(r, out);
        else if (id == "exp3" || id == "exp4b") tail_sweep(r, r.dataset == "synthetic", out);
        else if (id == "exp5") budget_match(r, out);
        else if (id == "exp6") qubit_sweep(r, out);
        else if (id == "exp7") empirical(r, out);
        else if (id == "binning") binning(r, out);
    } catch (const std::out_of_range& e) {
        add(out, "report shape", false, e.what());
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

} // namespace catqae::harness
