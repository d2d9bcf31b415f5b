#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rcbf/scenario.hpp"

namespace rcbf {

// One recorded control tick. On a breach row the barrier and the applied
// inputs are NaN: the barrier is undefined outside the safe set and no
// input is synthesized there.
struct TrialRow {
    double t = 0.0;
    double x1_istar = 0.0;
    double alpha_istar = 0.0;
    double x2_istar = 0.0;
    double v_applied = 0.0;
    double w_applied = 0.0;
    double b = 0.0;
    double margin = 0.0;
};

struct TrialRecord {
    std::vector<TrialRow> rows;
    bool breached = false;
    double breach_time = std::numeric_limits<double>::quiet_NaN();
    double chatter = 0.0;  // total variation of the applied inputs
    std::uint64_t seed = 0;
    // Largest realized growth excess over the mode's bound across ticks.
    double max_generator_excess = -std::numeric_limits<double>::infinity();
};

struct TrialError {
    int trial_index = 0;
    std::string message;
};

struct CampaignSummary {
    int n_trials = 0;
    int n_safe = 0;
    double min_margin_over_all = std::numeric_limits<double>::infinity();
    double b_max = 0.0;
    double mean_chatter = 0.0;
    double max_generator_excess = -std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> trial_seeds;
    std::vector<TrialError> errors;

    double breach_fraction() const {
        return n_trials == 0 ? 0.0
                             : static_cast<double>(n_trials - n_safe - static_cast<int>(errors.size())) /
                                   n_trials;
    }
};

// Runs one closed-loop trial: evaluate the barrier on the current scan,
// synthesize the compensator, drive the SDE for one interval, repeat until
// the horizon or the first nonpositive margin. Throws InvalidInitialState
// if the initial scan is already outside the safe set.
TrialRecord run_trial(const Scenario& sc, int trial_index);

// Runs sc.trials trials with per-trial derived seeds. Per-trial failures
// are recorded, not fatal. Deterministic given the master seed.
CampaignSummary run_campaign(const Scenario& sc);

// Sign-flip census of the applied inputs: how many ticks flipped the sign
// of v or w, and how many of those happened with the active point roughly
// beside the vehicle (x2 within +-0.3 rad of -pi/2).
struct ChatterStats {
    int flips = 0;
    int flips_near_parallel = 0;

    double near_fraction() const {
        return flips == 0 ? 0.0 : static_cast<double>(flips_near_parallel) / flips;
    }
};

ChatterStats chatter_flip_stats(const TrialRecord& rec);

// Writes the record with header t,x1_istar,alpha_ci_istar,x2_istar,
// v_applied,w_applied,B,margin, one row per tick, 9 significant digits,
// LF endings.
void export_csv(const TrialRecord& rec, const std::string& path);
std::string trial_csv_string(const TrialRecord& rec);

// Parses a file produced by export_csv.
std::vector<TrialRow> read_trial_csv(const std::string& path);

}  // namespace rcbf
