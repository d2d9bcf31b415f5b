// Command-line front end: scenario runs, diffusion estimation, scenario
// export, and generator-bound audits of recorded runs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rcbf/errors.hpp"
#include "rcbf/estimation.hpp"
#include "rcbf/scenario.hpp"
#include "rcbf/simulate.hpp"

namespace fs = std::filesystem;

namespace {

rcbf::Scenario resolve_scenario(const std::string& ref) {
    if (ref == "exp1d" || ref == "exp1n" || ref == "exp2d" || ref == "exp2n")
        return rcbf::builtin_scenario(ref);
    if (fs::exists(ref)) return rcbf::load_scenario(ref);
    throw rcbf::UnknownScenario("'" + ref + "' is neither a builtin scenario nor a file");
}

struct RunOverrides {
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::string> psi_form;
};

void apply_overrides(rcbf::Scenario& sc, const RunOverrides& ov) {
    if (ov.trials) sc.trials = *ov.trials;
    if (ov.seed) sc.sde.seed = *ov.seed;
    if (ov.mode) {
        if (*ov.mode == "point_cloud") sc.mode = rcbf::SimMode::point_cloud;
        else if (*ov.mode == "pose") sc.mode = rcbf::SimMode::pose;
        else throw rcbf::ConfigError("--mode must be point_cloud or pose");
    }
    if (ov.psi_form) {
        if (*ov.psi_form == "full_cancel") sc.controller.psi_form = rcbf::PsiForm::full_cancel;
        else if (*ov.psi_form == "projection") sc.controller.psi_form = rcbf::PsiForm::projection;
        else throw rcbf::ConfigError("--psi-form must be full_cancel or projection");
    }
}

std::string trial_filename(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "trial_%04d.csv", index);
    return buf;
}

int cmd_run(const std::string& scenario_ref, const RunOverrides& ov, const std::string& out_dir,
            bool assert_safe) {
    rcbf::Scenario sc = resolve_scenario(scenario_ref);
    apply_overrides(sc, ov);
    sc.validate();

    if (!out_dir.empty()) fs::create_directories(out_dir);

    rcbf::CampaignSummary sum;
    sum.n_trials = sc.trials;
    double chatter_total = 0.0;
    int chatter_count = 0;
    int total_flips = 0;
    int near_flips = 0;
    for (int i = 0; i < sc.trials; ++i) {
        sum.trial_seeds.push_back(rcbf::derive_trial_seed(sc.sde.seed, i));
        try {
            const rcbf::TrialRecord rec = rcbf::run_trial(sc, i);
            if (!rec.breached) ++sum.n_safe;
            for (const rcbf::TrialRow& row : rec.rows) {
                if (row.margin < sum.min_margin_over_all) sum.min_margin_over_all = row.margin;
                if (std::isfinite(row.b) && row.b > sum.b_max) sum.b_max = row.b;
            }
            if (rec.max_generator_excess > sum.max_generator_excess)
                sum.max_generator_excess = rec.max_generator_excess;
            chatter_total += rec.chatter;
            ++chatter_count;
            const rcbf::ChatterStats st = rcbf::chatter_flip_stats(rec);
            total_flips += st.flips;
            near_flips += st.flips_near_parallel;
            if (!out_dir.empty())
                rcbf::export_csv(rec, (fs::path(out_dir) / trial_filename(i)).string());
        } catch (const rcbf::SimError& err) {
            sum.errors.push_back({i, err.what()});
        }
    }
    sum.mean_chatter = chatter_count == 0 ? 0.0 : chatter_total / chatter_count;

    std::printf("scenario         %s\n", scenario_ref.c_str());
    std::printf("trials           %d\n", sum.n_trials);
    std::printf("safe             %d\n", sum.n_safe);
    std::printf("errors           %zu\n", sum.errors.size());
    std::printf("breach fraction  %.4f\n", sum.breach_fraction());
    std::printf("min margin       %.9g m\n", sum.min_margin_over_all);
    std::printf("max B            %.9g 1/m\n", sum.b_max);
    std::printf("mean chatter     %.9g\n", sum.mean_chatter);
    std::printf("max growth excess %.3e\n", sum.max_generator_excess);
    if (total_flips > 0)
        std::printf("input sign flips %d (%.0f%% with x2* within 0.3 rad of -pi/2)\n", total_flips,
                    100.0 * near_flips / total_flips);
    for (const rcbf::TrialError& e : sum.errors)
        std::printf("trial %d error: %s\n", e.trial_index, e.message.c_str());
    if (!out_dir.empty()) std::printf("wrote %d trial files to %s\n", chatter_count, out_dir.c_str());

    if (assert_safe && sum.n_safe != sum.n_trials) return 1;
    return 0;
}

int cmd_estimate(const std::string& input, std::optional<double> dt) {
    const rcbf::IncrementSeries series = rcbf::read_increment_csv(input, dt);
    const double c1 = rcbf::estimate_c1(series);
    std::printf("samples   %zu\n", series.x1.size());
    std::printf("dt        %.9g s\n", series.dt);
    std::printf("c1        %.9g m/sqrt(s)\n", c1);
    return 0;
}

int cmd_export(const std::string& name, const std::string& out) {
    rcbf::save_scenario(rcbf::builtin_scenario(name), out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_audit(const std::string& scenario_ref, const RunOverrides& ov, const std::string& csv_dir,
              double tol) {
    rcbf::Scenario sc = resolve_scenario(scenario_ref);
    apply_overrides(sc, ov);
    sc.validate();

    bool ok = true;
    for (int i = 0; i < sc.trials; ++i) {
        const rcbf::TrialRecord rec = rcbf::run_trial(sc, i);
        const bool pass = rec.max_generator_excess <= tol;
        ok = ok && pass;
        std::printf("trial %04d  max excess %.3e  %s\n", i, rec.max_generator_excess,
                    pass ? "ok" : "VIOLATION");
        if (!csv_dir.empty()) {
            const fs::path path = fs::path(csv_dir) / trial_filename(i);
            std::ifstream in(path, std::ios::binary);
            if (!in) throw rcbf::ConfigError("cannot open '" + path.string() + "'");
            std::string recorded((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
            if (recorded != rcbf::trial_csv_string(rec)) {
                std::printf("trial %04d  recorded CSV does not match the replay\n", i);
                ok = false;
            }
        }
    }
    std::printf("audit %s\n", ok ? "passed" : "FAILED");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safety-filtered vehicle simulation with reciprocal barrier compensators"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a Monte Carlo campaign");
    std::string run_scenario;
    RunOverrides run_ov;
    std::string run_out;
    bool assert_safe = false;
    run->add_option("--scenario", run_scenario, "builtin name or scenario file")->required();
    run->add_option("--trials", run_ov.trials, "override trial count");
    run->add_option("--seed", run_ov.seed, "override master seed");
    run->add_option("--mode", run_ov.mode, "point_cloud | pose");
    run->add_option("--psi-form", run_ov.psi_form, "full_cancel | projection");
    run->add_option("--out", run_out, "directory for per-trial CSV files");
    run->add_flag("--assert-safe", assert_safe, "exit 1 unless every trial stays safe");

    // estimate-c1
    auto* est = app.add_subcommand("estimate-c1", "Estimate the distance-channel diffusion");
    std::string est_input;
    std::optional<double> est_dt;
    est->add_option("--input", est_input, "CSV with columns t,x1,v")->required();
    est->add_option("--dt", est_dt, "sample interval override [s]");

    // export-scenario
    auto* exp = app.add_subcommand("export-scenario", "Write a builtin scenario to a file");
    std::string exp_name, exp_out;
    exp->add_option("--name", exp_name, "exp1d | exp1n | exp2d | exp2n")->required();
    exp->add_option("--out", exp_out, "output path")->required();

    // audit
    auto* audit = app.add_subcommand("audit", "Replay a campaign and re-check the growth bound");
    std::string audit_scenario, audit_csv;
    RunOverrides audit_ov;
    double audit_tol = 1e-9;
    audit->add_option("--scenario", audit_scenario, "builtin name or scenario file")->required();
    audit->add_option("--trials", audit_ov.trials, "override trial count");
    audit->add_option("--seed", audit_ov.seed, "override master seed");
    audit->add_option("--csv", audit_csv, "directory of exported trial CSVs to compare against");
    audit->add_option("--tol", audit_tol, "allowed growth excess");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_scenario, run_ov, run_out, assert_safe);
        if (est->parsed()) return cmd_estimate(est_input, est_dt);
        if (exp->parsed()) return cmd_export(exp_name, exp_out);
        if (audit->parsed()) return cmd_audit(audit_scenario, audit_ov, audit_csv, audit_tol);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
