#include "rcbf/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rcbf/errors.hpp"

namespace rcbf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Scan scan_from_raw(const RawScan& raw, const VehicleParams& p) {
    Scan s;
    s.points.reserve(raw.points.size());
    s.beam_ids = raw.beam_ids;
    for (const RawScanPoint& r : raw.points) s.points.push_back(sensor_to_axle(r, p));
    return s;
}

TrialRow breach_row(double t, const Scan& scan, std::size_t i, double margin,
                    const VehicleParams& p) {
    const ScanPoint& pt = scan.points[i];
    return {t, pt.x1, allowable_distance(pt.x2, p), pt.x2, kNaN, kNaN, kNaN, margin};
}

}  // namespace

TrialRecord run_trial(const Scenario& sc, int trial_index) {
    sc.validate();

    TrialRecord rec;
    rec.seed = derive_trial_seed(sc.sde.seed, static_cast<std::uint64_t>(trial_index));

    const int n_ticks = static_cast<int>(std::llround(sc.horizon / sc.sde.dt));
    if (n_ticks < 1) throw ConfigError("horizon shorter than one control interval");
    const int sub = sc.sde.substeps;
    const double h = sc.sde.dt / sub;
    const std::vector<double> dw =
        wiener_increments(rec.seed, static_cast<std::size_t>(n_ticks) * sub, h);

    Pose pose = sc.initial_pose;
    Scan scan;
    if (sc.mode == SimMode::point_cloud && !sc.initial_points.empty())
        scan = Scan::from_points(sc.initial_points);
    else
        scan = scan_from_raw(raycast(sc.env, sensor_pose_from(pose, sc.vehicle), sc.vehicle.n_beams),
                             sc.vehicle);

    for (int k = 0;; ++k) {
        const double t = k * sc.sde.dt;

        if (sc.mode == SimMode::pose && k > 0) {
            scan = scan_from_raw(
                raycast(sc.env, sensor_pose_from(pose, sc.vehicle), sc.vehicle.n_beams),
                sc.vehicle);
            // Common-mode vibration displaces every return by the Wiener
            // increment accumulated over the preceding interval.
            if (sc.noise.c1 != 0.0 || sc.noise.c2 != 0.0) {
                double dw_tick = 0.0;
                for (int s = 0; s < sub; ++s) dw_tick += dw[(k - 1) * sub + s];
                for (ScanPoint& pt : scan.points) {
                    pt.x1 += sc.noise.c1 * dw_tick;
                    pt.x2 = wrap_angle(pt.x2 + sc.noise.c2 * dw_tick);
                }
            }
        }

        const auto [margin, i_star] = scan_margin(scan, sc.vehicle);
        if (!(margin > 0.0)) {
            if (k == 0)
                throw InvalidInitialState("initial scan outside the safe set (margin " +
                                          std::to_string(margin) + " m)");
            rec.rows.push_back(breach_row(t, scan, i_star, margin, sc.vehicle));
            rec.breached = true;
            rec.breach_time = t;
            break;
        }

        const BarrierEval ev = evaluate(scan, sc.vehicle, sc.noise);
        const PreInput pre = pre_at(sc, t);
        const ControlInput u = synthesize(ev, pre, sc.controller);
        const ControlInput app = applied_input(pre, u);

        // Per-tick growth audit against the mode's bound.
        const double drift = dot(ev.lgb, {app.v, app.w});
        const double excess = sc.controller.mode == ControlMode::stochastic
                                  ? drift + ev.ito - sc.controller.gamma * ev.b
                                  : drift - (sc.controller.k * ev.b + sc.controller.c);
        if (excess > rec.max_generator_excess) rec.max_generator_excess = excess;

        if (ev.i_star != kNoPoint) {
            const ScanPoint& pt = scan.points[ev.i_star];
            rec.rows.push_back({t, pt.x1, allowable_distance(pt.x2, sc.vehicle), pt.x2, app.v,
                                app.w, ev.b, margin});
        } else {
            rec.rows.push_back({t, kNaN, kNaN, kNaN, app.v, app.w, ev.b, margin});
        }

        if (k == n_ticks) break;

        if (sc.mode == SimMode::point_cloud) {
            bool collapsed = false;
            for (int s = 0; s < sub && !collapsed; ++s) {
                const double w_s = dw[static_cast<std::size_t>(k) * sub + s];
                for (ScanPoint& pt : scan.points) {
                    pt = point_step(pt, app, sc.noise, h, w_s);
                    if (!(pt.x1 > kDegenerateRange)) collapsed = true;
                }
                // A collapsed point crossed the axle; stop integrating and
                // let the next tick's margin check record the breach.
            }
        } else {
            for (int s = 0; s < sub; ++s) pose = pose_step(pose, app, h);
        }
    }

    for (std::size_t r = 1; r < rec.rows.size(); ++r) {
        const TrialRow& a = rec.rows[r - 1];
        const TrialRow& b = rec.rows[r];
        if (std::isfinite(a.v_applied) && std::isfinite(b.v_applied))
            rec.chatter += std::abs(b.v_applied - a.v_applied) + std::abs(b.w_applied - a.w_applied);
    }
    return rec;
}

CampaignSummary run_campaign(const Scenario& sc) {
    sc.validate();
    CampaignSummary sum;
    sum.n_trials = sc.trials;
    double chatter_total = 0.0;
    int chatter_count = 0;
    for (int i = 0; i < sc.trials; ++i) {
        sum.trial_seeds.push_back(derive_trial_seed(sc.sde.seed, static_cast<std::uint64_t>(i)));
        try {
            const TrialRecord rec = run_trial(sc, i);
            if (!rec.breached) ++sum.n_safe;
            for (const TrialRow& row : rec.rows) {
                if (row.margin < sum.min_margin_over_all) sum.min_margin_over_all = row.margin;
                if (std::isfinite(row.b) && row.b > sum.b_max) sum.b_max = row.b;
            }
            if (rec.max_generator_excess > sum.max_generator_excess)
                sum.max_generator_excess = rec.max_generator_excess;
            chatter_total += rec.chatter;
            ++chatter_count;
        } catch (const SimError& err) {
            sum.errors.push_back({i, err.what()});
        }
    }
    sum.mean_chatter = chatter_count == 0 ? 0.0 : chatter_total / chatter_count;
    return sum;
}

ChatterStats chatter_flip_stats(const TrialRecord& rec) {
    ChatterStats st;
    for (std::size_t r = 1; r < rec.rows.size(); ++r) {
        const TrialRow& a = rec.rows[r - 1];
        const TrialRow& b = rec.rows[r];
        if (!std::isfinite(a.v_applied) || !std::isfinite(b.v_applied)) continue;
        const bool flip = a.v_applied * b.v_applied < 0.0 || a.w_applied * b.w_applied < 0.0;
        if (!flip) continue;
        ++st.flips;
        if (std::abs(wrap_angle(b.x2_istar + kPi / 2.0)) <= 0.3) ++st.flips_near_parallel;
    }
    return st;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

void append_value(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += buf;
}

}  // namespace

std::string trial_csv_string(const TrialRecord& rec) {
    std::string out = "t,x1_istar,alpha_ci_istar,x2_istar,v_applied,w_applied,B,margin\n";
    for (const TrialRow& r : rec.rows) {
        append_value(out, r.t);
        out += ',';
        append_value(out, r.x1_istar);
        out += ',';
        append_value(out, r.alpha_istar);
        out += ',';
        append_value(out, r.x2_istar);
        out += ',';
        append_value(out, r.v_applied);
        out += ',';
        append_value(out, r.w_applied);
        out += ',';
        append_value(out, r.b);
        out += ',';
        append_value(out, r.margin);
        out += '\n';
    }
    return out;
}

void export_csv(const TrialRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << trial_csv_string(rec);
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

std::vector<TrialRow> read_trial_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + path + "': empty file");
    std::vector<TrialRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        double vals[8];
        for (int k = 0; k < 8; ++k) {
            if (!std::getline(ss, cell, ','))
                throw ConfigError("'" + path + "' line " + std::to_string(lineno) +
                                  ": expected 8 columns");
            vals[k] = std::stod(cell);
        }
        rows.push_back(
            {vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7]});
    }
    return rows;
}

}  // namespace rcbf
