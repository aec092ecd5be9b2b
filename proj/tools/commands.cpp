#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sisi::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kCurvePoints = 101;
constexpr double kCurveBetaMax = 1e-9;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    std::ofstream os(dir / name, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write '" + (dir / name).string() + "'");
    return os;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + dir.string() + "'");
}

double grid(double lo, double hi, std::size_t k, std::size_t n) {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

std::string_view verdict(double r) {
    if (std::abs(r - 1.0) <= kR0UnityTolerance) return "critical";
    return r > 1.0 ? "supercritical" : "subcritical";
}

std::string describe(const Threshold& t) {
    if (t.attained()) return summary_number(t.value);
    std::string s(to_string(t.kind));
    if (std::isfinite(t.value)) s += " (root at " + summary_number(t.value) + ")";
    return s;
}

std::string format_state(const State& x) {
    std::string s;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) s += ", ";
        s += std::string(kCompartmentNames[i]) + " = " + summary_number(x[i]);
    }
    return s;
}

std::size_t data_rows(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines == 0 ? 0 : lines - 1;
}

// R0 = 1 boundary in the (upsilon, beta) plane.
void write_threshold_curve(std::ostream& os, const ModelParams& p) {
    os << "upsilon,beta_threshold\n";
    for (std::size_t k = 0; k < kCurvePoints; ++k) {
        const double u = grid(0.0, 1.0, k, kCurvePoints);
        os << full_precision(u) << ',' << full_precision(beta_threshold(p.with(ParamName::upsilon, u)).value) << '\n';
    }
}

// R0 = 1 boundary in the (efficacy, alpha) plane at full coverage.
void write_efficacy_curve(std::ostream& os, const ModelParams& p) {
    const ModelParams full = p.with(ParamName::upsilon, 1.0);
    os << "efficacy,alpha_threshold\n";
    for (std::size_t k = 0; k < kCurvePoints; ++k) {
        const double e = grid(0.0, 1.0, k, kCurvePoints);
        os << full_precision(e) << ','
           << full_precision(recovery_threshold(full.with(ParamName::delta, 1.0 - e)).value) << '\n';
    }
}

void write_r0_curve(std::ostream& os, const ModelParams& p) {
    os << "beta,r0\n";
    for (std::size_t k = 0; k < kCurvePoints; ++k) {
        const double b = grid(0.0, kCurveBetaMax, k, kCurvePoints);
        os << full_precision(b) << ',' << full_precision(r0(p.with(ParamName::beta, b))) << '\n';
    }
}

void write_lambda_max_csv(std::ostream& os, const std::vector<BifurcationPoint>& scan) {
    os << "r0,lambda_max\n";
    for (const auto& pt : scan) os << full_precision(pt.r0) << ',' << full_precision(pt.lambda_max_endemic) << '\n';
}

void print_threshold_report(const ModelParams& p, std::ostream& out) {
    out << "R0 = " << summary_number(r0(p)) << " (" << verdict(r0(p)) << ")\n";
    out << "beta*      = " << describe(beta_threshold(p)) << "  (R0 < 1 iff beta < beta*)\n";
    out << "upsilon*   = " << describe(upsilon_threshold(p)) << "  (minimal vaccinated share)\n";
    const auto here = efficacy_recovery_thresholds(p);
    out << "efficacy*  = " << describe(here.efficacy) << "  (minimal 1 - delta at alpha = " << summary_number(p.alpha)
        << ")\n";
    out << "alpha*     = " << describe(here.alpha) << "  (minimal recovery rate at delta = " << summary_number(p.delta)
        << ")\n";
    const ModelParams full = p.with(ParamName::upsilon, 1.0);
    const auto all = efficacy_recovery_thresholds(full);
    out << "at full coverage (upsilon = 1):\n";
    out << "  beta*     = " << describe(beta_threshold(full)) << '\n';
    out << "  efficacy* = " << describe(all.efficacy) << '\n';
    out << "  alpha*    = " << describe(all.alpha) << '\n';
}

void print_endemic_sensitivity(const EndemicSensitivity& s, std::ostream& out) {
    out << "endemic-state indices (S, I1, S1, I2), cond_1(J) = " << summary_number(s.jacobian_condition) << ":\n";
    for (ParamName which : kEndemicTableOrder) {
        const auto& row = s.rows[which];
        out << "  " << std::left << std::setw(9) << key_of(which) << std::right;
        for (std::size_t i = 0; i < 4; ++i) {
            out << ' ' << std::setw(12) << summary_number(row.index[i]);
            if (row.small_denominator[i]) out << '!';
        }
        out << '\n';
    }
    bool flagged = false;
    for (ParamName which : kAllParams)
        for (bool f : s.rows[which].small_denominator) flagged = flagged || f;
    if (flagged) out << "  ! coordinate below one individual; index is ill-conditioned\n";
}

constexpr const char* kPlotScript = R"(#!/usr/bin/env python3
# Renders the CSV artifacts in this directory. Requires pandas and matplotlib.
import json
import pathlib

import matplotlib.pyplot as plt
import pandas as pd

here = pathlib.Path(__file__).resolve().parent


def load(name):
    return pd.read_csv(here / name)


def save(fig, stem):
    fig.tight_layout()
    fig.savefig(here / f"{stem}.png", dpi=150)
    plt.close(fig)


df = load("threshold_curve.csv")
fig, ax = plt.subplots()
ax.plot(df.upsilon, df.beta_threshold)
ax.fill_between(df.upsilon, 0, df.beta_threshold, alpha=0.3)
ax.set_xlabel("upsilon")
ax.set_ylabel("beta")
save(fig, "threshold_curve")

df = load("r0_vs_beta.csv")
fig, ax = plt.subplots()
ax.plot(df.beta, df.r0)
ax.axhline(1.0, ls=":")
ax.set_xlabel("beta")
ax.set_ylabel("R0")
save(fig, "r0_vs_beta")

df = load("lambda_max.csv")
fig, ax = plt.subplots()
ax.plot(df.r0, df.lambda_max)
ax.axhline(0.0, ls=":")
ax.set_xlabel("R0")
ax.set_ylabel("lambda_max")
save(fig, "lambda_max")

df = load("bifurcation.csv")
fig, ax = plt.subplots()
for col, flag in (("i_dfe", "dfe_stable"), ("i_endemic", "endemic_stable")):
    ax.plot(df.r0.where(df[flag] == 1), df[col].where(df[flag] == 1), "-")
    ax.plot(df.r0.where(df[flag] == 0), df[col].where(df[flag] == 0), "--")
ax.set_xlabel("R0")
ax.set_ylabel("I")
save(fig, "bifurcation")

for case in ("low", "high"):
    df = load(f"trajectory_{case}.csv")
    fig, axes = plt.subplots(2, 2, sharex=True)
    for ax, col in zip(axes.flat, ["S", "I1", "S1", "I2"]):
        ax.plot(df.t, df[col])
        ax.set_title(col)
    save(fig, f"trajectory_{case}")

df = load("efficacy_recovery_curve.csv")
fig, ax = plt.subplots()
ax.plot(df.efficacy, df.alpha_threshold)
ax.set_xlabel("1 - delta")
ax.set_ylabel("alpha")
save(fig, "efficacy_recovery_curve")

for case in ("low", "high"):
    df = load(f"sensitivity_endemic_{case}.csv").set_index("parameter")
    fig, ax = plt.subplots()
    df.plot.bar(ax=ax)
    ax.set_ylabel("normalized sensitivity index")
    save(fig, f"sensitivity_endemic_{case}")

print(json.dumps(sorted(p.name for p in here.glob("*.png"))))
)";

std::string timestamp_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y%m%d-%H%M%S");
    return os.str();
}

}  // namespace

Scenario resolve_scenario(const Options& opt) {
    Scenario sc = opt.config.empty() ? Scenario{} : load_scenario(opt.config);
    if (opt.beta) sc.params.beta = *opt.beta;
    if (opt.upsilon) sc.params.upsilon = *opt.upsilon;
    sc.validate();
    return sc;
}

int exit_code_of(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) return err->exit_code();
    if (dynamic_cast<const fs::filesystem_error*>(&e)) return 2;
    return 1;
}

std::string error_record(std::string_view command, const std::exception& e) {
    json rec;
    rec["status"] = "error";
    rec["command"] = command;
    rec["exit_code"] = exit_code_of(e);
    if (const auto* err = dynamic_cast<const Error*>(&e))
        rec["kind"] = err->kind();
    else
        rec["kind"] = "internal";
    rec["message"] = e.what();
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        rec["line"] = pe->line();
        rec["column"] = pe->column();
    }
    if (const auto* ve = dynamic_cast<const ValidationError*>(&e)) rec["field"] = ve->field();
    return rec.dump();
}

std::vector<std::string> cmd_r0(const Scenario& sc, std::ostream& out) {
    const double r = r0(sc.params);
    out << "R0 = " << summary_number(r) << " (" << verdict(r) << ")\n";
    return {};
}

std::vector<std::string> cmd_threshold(const Scenario& sc, const fs::path& dir, std::ostream& out) {
    ensure_directory(dir);
    {
        auto os = open_output(dir, "threshold_curve.csv");
        write_threshold_curve(os, sc.params);
    }
    {
        auto os = open_output(dir, "efficacy_recovery_curve.csv");
        write_efficacy_curve(os, sc.params);
    }
    print_threshold_report(sc.params, out);
    return {"threshold_curve.csv", "efficacy_recovery_curve.csv"};
}

std::vector<std::string> cmd_equilibria(const Scenario& sc, const fs::path& dir, std::ostream& out) {
    ensure_directory(dir);
    const ModelParams& p = sc.params;
    const Equilibrium dfe = disease_free(p);
    const auto end = endemic(p);

    auto os = open_output(dir, "equilibria.csv");
    os << "equilibrium,S,I1,S1,I2,residual\n";
    auto row = [&os](const Equilibrium& e) {
        os << to_string(e.kind);
        for (std::size_t i = 0; i < 4; ++i) os << ',' << full_precision(e.state[i]);
        os << ',' << full_precision(e.residual) << '\n';
    };
    row(dfe);
    if (end) row(*end);

    out << "R0 = " << summary_number(r0(p)) << " (" << verdict(r0(p)) << ")\n";
    out << "disease-free: " << format_state(dfe.state) << "; residual " << summary_number(dfe.residual) << '\n';
    if (end)
        out << "endemic:      " << format_state(end->state) << "; residual " << summary_number(end->residual) << '\n';
    else
        out << "endemic:      none (R0 <= 1)\n";
    return {"equilibria.csv"};
}

std::vector<std::string> cmd_stability(const Scenario& sc, const fs::path& dir, std::ostream& out) {
    ensure_directory(dir);
    const ModelParams& p = sc.params;
    std::vector<Equilibrium> eqs{disease_free(p)};
    if (auto e = endemic(p)) eqs.push_back(*e);

    auto os = open_output(dir, "spectra.csv");
    os << "equilibrium,k,re,im,lambda_max,stability\n";
    for (const Equilibrium& e : eqs) {
        const Stability s = classify(p, e);
        const Spectrum sp = spectrum(jacobian(p, e.state));
        for (std::size_t k = 0; k < 4; ++k)
            os << to_string(e.kind) << ',' << k << ',' << full_precision(sp.eigenvalues[k].real()) << ','
               << full_precision(sp.eigenvalues[k].imag()) << ',' << full_precision(sp.lambda_max) << ','
               << to_string(s) << '\n';
        out << to_string(e.kind) << ": " << to_string(s) << ", lambda_max = " << summary_number(sp.lambda_max)
            << " per day\n  eigenvalues:";
        for (const auto& z : sp.eigenvalues) {
            out << ' ' << summary_number(z.real());
            if (z.imag() != 0.0) out << (z.imag() > 0 ? "+" : "-") << summary_number(std::abs(z.imag())) << 'i';
        }
        out << '\n';
    }
    return {"spectra.csv"};
}

std::vector<std::string> cmd_simulate(const Scenario& sc, const fs::path& dir, std::ostream& out) {
    ensure_directory(dir);
    const Trajectory traj = integrate(sc.params, sc.sim_config());
    {
        auto os = open_output(dir, "trajectory.csv");
        write_trajectory_csv(os, traj);
    }
    out << "t_end = " << summary_number(traj.times.back()) << " days, " << traj.size() << " samples, "
        << traj.stats.accepted << " accepted / " << traj.stats.rejected << " rejected steps\n";
    out << "final: " << format_state(traj.states.back()) << '\n';
    if (const auto e = endemic(sc.params)) {
        const double window = std::min(10000.0, sc.t_end);
        out << "max relative deviation from the endemic state over the last " << summary_number(window)
            << " days: " << summary_number(max_relative_deviation(traj, e->state, window)) << '\n';
    }
    return {"trajectory.csv"};
}

std::vector<std::string> cmd_bifurcation(const Scenario& sc, double lo, double hi, std::size_t n, const fs::path& dir,
                                         std::ostream& out) {
    ensure_directory(dir);
    const auto scan = bifurcation_scan(sc.params, lo, hi, n);
    {
        auto os = open_output(dir, "bifurcation.csv");
        write_bifurcation_csv(os, scan);
    }
    {
        auto os = open_output(dir, "lambda_max.csv");
        write_lambda_max_csv(os, scan);
    }
    out << n << " points, R0 in [" << summary_number(lo) << ", " << summary_number(hi) << "]\n";
    out << "I(R0 = " << summary_number(scan.front().r0) << ") = " << summary_number(scan.front().i_endemic) << '\n';
    out << "I(R0 = " << summary_number(scan.back().r0) << ") = " << summary_number(scan.back().i_endemic) << '\n';
    for (std::size_t k = 1; k < scan.size(); ++k)
        if (scan[k].dfe_stable != scan[k - 1].dfe_stable || scan[k].endemic_stable != scan[k - 1].endemic_stable)
            out << "stability changes between R0 = " << summary_number(scan[k - 1].r0) << " and "
                << summary_number(scan[k].r0) << '\n';
    return {"bifurcation.csv", "lambda_max.csv"};
}

std::vector<std::string> cmd_sensitivity(const Scenario& sc, const fs::path& dir, std::ostream& out) {
    ensure_directory(dir);
    const SensitivityReport rep = sensitivity_report(sc.params);
    std::vector<std::string> files{"sensitivity_r0.csv"};
    {
        auto os = open_output(dir, "sensitivity_r0.csv");
        write_r0_sensitivity_csv(os, rep);
    }
    out << "R0 indices (index, 1/index, percent change for a 1 percent drop in R0):\n";
    for (ParamName which : kAllParams)
        out << "  " << std::left << std::setw(9) << key_of(which) << std::right << ' ' << std::setw(12)
            << summary_number(rep.stage1[which]) << ' ' << std::setw(12) << summary_number(rep.reciprocal_stage1[which])
            << ' ' << std::setw(12) << summary_number(rep.effort_stage1[which]) << '\n';
    if (rep.stage2) {
        auto os = open_output(dir, "sensitivity_endemic.csv");
        write_endemic_sensitivity_csv(os, *rep.stage2);
        files.push_back("sensitivity_endemic.csv");
        print_endemic_sensitivity(*rep.stage2, out);
    } else {
        out << "no endemic equilibrium (R0 <= 1); endemic-state indices skipped\n";
    }
    return files;
}

fs::path reproduce_paper(const fs::path& root, std::ostream& out) {
    ensure_directory(root);
    fs::path dir = root / ("reproduce-" + timestamp_now());
    for (int k = 1; fs::exists(dir); ++k) dir = root / ("reproduce-" + timestamp_now() + "-" + std::to_string(k));
    ensure_directory(dir);

    const ModelParams low = calibration::params(calibration::kBetaLow);
    const ModelParams high = calibration::params(calibration::kBetaHigh);
    json artifacts = json::array();
    auto record = [&](const std::string& target, const std::string& file, const std::string& what) {
        artifacts.push_back({{"target", target}, {"file", file}, {"rows", data_rows(dir / file)}, {"description", what}});
        out << "  " << file << '\n';
    };
    out << "writing " << dir.string() << '\n';

    {
        auto os = open_output(dir, "threshold_curve.csv");
        write_threshold_curve(os, low);
    }
    record("r0_unity_curve_beta_upsilon", "threshold_curve.csv", "beta at which R0 = 1 against vaccinated share");
    {
        auto os = open_output(dir, "r0_vs_beta.csv");
        write_r0_curve(os, low);
    }
    record("r0_vs_beta", "r0_vs_beta.csv", "R0 against beta at upsilon = 0.0167");

    const auto scan = bifurcation_scan(low);
    {
        auto os = open_output(dir, "lambda_max.csv");
        write_lambda_max_csv(os, scan);
    }
    record("lambda_max_vs_r0", "lambda_max.csv", "largest real part of the endemic-state spectrum against R0");
    {
        auto os = open_output(dir, "bifurcation.csv");
        write_bifurcation_csv(os, scan);
    }
    record("transcritical_bifurcation", "bifurcation.csv", "equilibrium infections and stability against R0");

    {
        Scenario sc;
        sc.params = low;
        auto os = open_output(dir, "trajectory_low.csv");
        write_trajectory_csv(os, integrate(low, sc.sim_config()));
    }
    record("trajectory_low", "trajectory_low.csv", "time series, beta = 2e-10, 0 <= t <= 200000 days");
    {
        Scenario sc;
        sc.params = high;
        sc.t_end = 100000.0;
        sc.stride = 190.0;
        auto os = open_output(dir, "trajectory_high.csv");
        write_trajectory_csv(os, integrate(high, sc.sim_config()));
    }
    record("trajectory_high", "trajectory_high.csv", "time series, beta = 8e-10, 0 <= t <= 100000 days");

    {
        auto os = open_output(dir, "sensitivity_r0.csv");
        write_r0_sensitivity_csv(os, sensitivity_report(low));
    }
    record("sensitivity_r0", "sensitivity_r0.csv", "normalized sensitivity indices of R0");
    {
        auto os = open_output(dir, "sensitivity_endemic_low.csv");
        write_endemic_sensitivity_csv(os, endemic_indices(low));
    }
    record("sensitivity_endemic_low", "sensitivity_endemic_low.csv",
           "endemic-state sensitivity indices, beta = 2e-10 (table and box plot)");
    {
        auto os = open_output(dir, "sensitivity_endemic_high.csv");
        write_endemic_sensitivity_csv(os, endemic_indices(high));
    }
    record("sensitivity_endemic_high", "sensitivity_endemic_high.csv",
           "endemic-state sensitivity indices, beta = 8e-10 (table and box plot)");
    {
        auto os = open_output(dir, "efficacy_recovery_curve.csv");
        write_efficacy_curve(os, high);
    }
    record("r0_unity_curve_efficacy_alpha", "efficacy_recovery_curve.csv",
           "recovery rate at which R0 = 1 against vaccine efficacy, upsilon = 1, beta = 8e-10");

    {
        auto os = open_output(dir, "plot_figures.py");
        os << kPlotScript;
    }
    artifacts.push_back({{"target", "plot_script"}, {"file", "plot_figures.py"}, {"description", "optional renderer"}});
    out << "  plot_figures.py\n";

    const json manifest{{"artifacts", artifacts}};
    {
        auto os = open_output(dir, "manifest.json");
        os << manifest.dump(2) << '\n';
    }
    out << "  manifest.json\n";
    return dir;
}

int run_command(std::string_view name, const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        if (name == "reproduce-paper") {
            reproduce_paper(opt.out, out);
            return 0;
        }
        const Scenario sc = resolve_scenario(opt);
        if (opt.dump_config) {
            dump_scenario(out, sc);
            return 0;
        }
        if (name == "r0") cmd_r0(sc, out);
        else if (name == "threshold") cmd_threshold(sc, opt.out, out);
        else if (name == "equilibria") cmd_equilibria(sc, opt.out, out);
        else if (name == "stability") cmd_stability(sc, opt.out, out);
        else if (name == "simulate") cmd_simulate(sc, opt.out, out);
        else if (name == "bifurcation") cmd_bifurcation(sc, opt.r0_lo, opt.r0_hi, opt.points, opt.out, out);
        else if (name == "sensitivity") cmd_sensitivity(sc, opt.out, out);
        else throw ConfigError("unknown command '" + std::string(name) + "'");
        return 0;
    } catch (const std::exception& e) {
        err << error_record(name, e) << '\n';
        return exit_code_of(e);
    }
}

}  // namespace sisi::cli
