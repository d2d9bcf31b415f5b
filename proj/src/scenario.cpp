#include "rcbf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rcbf/errors.hpp"

namespace rcbf {

void Scenario::validate() const {
    vehicle.validate();
    controller.validate();
    noise.validate();
    sde.validate();
    env.validate();
    if (!(horizon > 0.0)) throw InvalidParams("scenario: horizon must be > 0");
    if (trials < 1) throw InvalidParams("scenario: trials must be >= 1");
    for (const ScanPoint& pt : initial_points)
        if (!(pt.x1 > 0.0)) throw InvalidParams("scenario: initial points need x1 > 0");
}

PreInput pre_at(const Scenario& sc, double t) {
    PreInput out = sc.pre;
    for (const PreInputSample& s : sc.pre_table) {
        if (s.t > t) break;
        out = s.value;
    }
    return out;
}

namespace {

// Straight wall perpendicular to the body-frame bearing `x2` at distance
// `x1` from the axle center, long enough to act as infinite at max_range.
Environment wall_for_initial(double x1, double x2, const Pose& pose, double max_range) {
    const double heading = pose.p3 + x2;
    const Vec2 n{std::cos(heading), std::sin(heading)};
    const Vec2 foot{pose.p1 + x1 * n.x, pose.p2 + x1 * n.y};
    const Vec2 along{-n.y, n.x};
    const double half = 4.0 * max_range;
    Environment env;
    env.max_range = max_range;
    env.segments.push_back({foot - half * along, foot + half * along});
    return env;
}

}  // namespace

Scenario builtin_scenario(const std::string& name) {
    Scenario sc;  // field defaults already carry the shared parameter set
    if (name == "exp1d") {
        sc.noise = {0.0, 0.0};
        sc.controller.mode = ControlMode::deterministic;
    } else if (name == "exp1n") {
        sc.noise = {0.0, 0.0};
        sc.controller.mode = ControlMode::stochastic;
    } else if (name == "exp2d") {
        sc.noise = {0.035, 0.0};
        sc.controller.mode = ControlMode::deterministic;
    } else if (name == "exp2n") {
        sc.noise = {0.035, 0.0};
        sc.controller.mode = ControlMode::stochastic;
    } else {
        throw UnknownScenario("unknown scenario '" + name +
                              "' (builtins: exp1d, exp1n, exp2d, exp2n)");
    }
    sc.env = wall_for_initial(0.4, kPi / 4.0, sc.initial_pose, sc.env.max_range);
    return sc;
}

// ---------------------------------------------------------------------------
// Config file I/O
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": bad number '" + v + "'");
    }
}

long long parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": bad integer '" + v + "'");
    }
}

std::uint64_t parse_uint64(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": bad unsigned integer '" + v + "'");
    }
}

std::vector<double> parse_doubles(const std::string& v, std::size_t count,
                                  const std::string& where) {
    std::stringstream ss(v);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(tok, where));
    if (out.size() != count)
        throw ConfigError(where + ": expected " + std::to_string(count) + " values");
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");

    Scenario sc;
    sc.env = Environment{};  // file defines the map from scratch
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (section == "vehicle") {
            if (key == "d") sc.vehicle.d = parse_double(val, where);
            else if (key == "e") sc.vehicle.e = parse_double(val, where);
            else if (key == "alpha") sc.vehicle.alpha = parse_double(val, where);
            else if (key == "n_beams") sc.vehicle.n_beams = static_cast<int>(parse_int(val, where));
            else throw ConfigError(where + ": unknown key '" + key + "' in [vehicle]");
        } else if (section == "controller") {
            if (key == "gamma") sc.controller.gamma = parse_double(val, where);
            else if (key == "k") sc.controller.k = parse_double(val, where);
            else if (key == "c") sc.controller.c = parse_double(val, where);
            else if (key == "eps_g") sc.controller.eps_g = parse_double(val, where);
            else if (key == "mode") {
                if (val == "deterministic") sc.controller.mode = ControlMode::deterministic;
                else if (val == "stochastic") sc.controller.mode = ControlMode::stochastic;
                else throw ConfigError(where + ": mode must be deterministic|stochastic");
            } else if (key == "psi_form") {
                if (val == "full_cancel") sc.controller.psi_form = PsiForm::full_cancel;
                else if (val == "projection") sc.controller.psi_form = PsiForm::projection;
                else throw ConfigError(where + ": psi_form must be full_cancel|projection");
            } else throw ConfigError(where + ": unknown key '" + key + "' in [controller]");
        } else if (section == "noise") {
            if (key == "c1") sc.noise.c1 = parse_double(val, where);
            else if (key == "c2") sc.noise.c2 = parse_double(val, where);
            else throw ConfigError(where + ": unknown key '" + key + "' in [noise]");
        } else if (section == "preinput") {
            if (key == "v") sc.pre.v_o = parse_double(val, where);
            else if (key == "w") sc.pre.w_o = parse_double(val, where);
            else if (key == "table") {
                const auto t = parse_doubles(val, 3, where);
                sc.pre_table.push_back({t[0], {t[1], t[2]}});
            } else throw ConfigError(where + ": unknown key '" + key + "' in [preinput]");
        } else if (section == "sde") {
            if (key == "dt") sc.sde.dt = parse_double(val, where);
            else if (key == "substeps") sc.sde.substeps = static_cast<int>(parse_int(val, where));
            else if (key == "seed") sc.sde.seed = parse_uint64(val, where);
            else throw ConfigError(where + ": unknown key '" + key + "' in [sde]");
        } else if (section == "sim") {
            if (key == "horizon") sc.horizon = parse_double(val, where);
            else if (key == "trials") sc.trials = static_cast<int>(parse_int(val, where));
            else if (key == "mode") {
                if (val == "point_cloud") sc.mode = SimMode::point_cloud;
                else if (val == "pose") sc.mode = SimMode::pose;
                else throw ConfigError(where + ": mode must be point_cloud|pose");
            } else throw ConfigError(where + ": unknown key '" + key + "' in [sim]");
        } else if (section == "initial") {
            if (key == "pose") {
                const auto t = parse_doubles(val, 3, where);
                sc.initial_pose = {t[0], t[1], wrap_angle(t[2])};
            } else if (key == "point") {
                const auto t = parse_doubles(val, 2, where);
                sc.initial_points.push_back({t[0], wrap_angle(t[1])});
            } else throw ConfigError(where + ": unknown key '" + key + "' in [initial]");
        } else if (section == "env") {
            if (key == "max_range") sc.env.max_range = parse_double(val, where);
            else if (key == "segment") {
                const auto t = parse_doubles(val, 4, where);
                sc.env.segments.push_back({{t[0], t[1]}, {t[2], t[3]}});
            } else if (key == "circle") {
                const auto t = parse_doubles(val, 3, where);
                sc.env.circles.push_back({{t[0], t[1]}, t[2]});
            } else throw ConfigError(where + ": unknown key '" + key + "' in [env]");
        } else {
            throw ConfigError(where + ": unknown section '" + section + "'");
        }
    }
    sc.validate();
    std::sort(sc.pre_table.begin(), sc.pre_table.end(),
              [](const PreInputSample& a, const PreInputSample& b) { return a.t < b.t; });
    return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");

    out << "[vehicle]\n";
    out << "d = " << fmt(sc.vehicle.d) << "\n";
    out << "e = " << fmt(sc.vehicle.e) << "\n";
    out << "alpha = " << fmt(sc.vehicle.alpha) << "\n";
    out << "n_beams = " << sc.vehicle.n_beams << "\n\n";

    out << "[controller]\n";
    out << "mode = "
        << (sc.controller.mode == ControlMode::deterministic ? "deterministic" : "stochastic")
        << "\n";
    out << "psi_form = "
        << (sc.controller.psi_form == PsiForm::full_cancel ? "full_cancel" : "projection") << "\n";
    out << "gamma = " << fmt(sc.controller.gamma) << "\n";
    out << "k = " << fmt(sc.controller.k) << "\n";
    out << "c = " << fmt(sc.controller.c) << "\n";
    out << "eps_g = " << fmt(sc.controller.eps_g) << "\n\n";

    out << "[noise]\n";
    out << "c1 = " << fmt(sc.noise.c1) << "\n";
    out << "c2 = " << fmt(sc.noise.c2) << "\n\n";

    out << "[preinput]\n";
    out << "v = " << fmt(sc.pre.v_o) << "\n";
    out << "w = " << fmt(sc.pre.w_o) << "\n";
    for (const PreInputSample& s : sc.pre_table)
        out << "table = " << fmt(s.t) << " " << fmt(s.value.v_o) << " " << fmt(s.value.w_o)
            << "\n";
    out << "\n";

    out << "[sde]\n";
    out << "dt = " << fmt(sc.sde.dt) << "\n";
    out << "substeps = " << sc.sde.substeps << "\n";
    out << "seed = " << sc.sde.seed << "\n\n";

    out << "[sim]\n";
    out << "mode = " << (sc.mode == SimMode::point_cloud ? "point_cloud" : "pose") << "\n";
    out << "horizon = " << fmt(sc.horizon) << "\n";
    out << "trials = " << sc.trials << "\n\n";

    out << "[initial]\n";
    out << "pose = " << fmt(sc.initial_pose.p1) << " " << fmt(sc.initial_pose.p2) << " "
        << fmt(sc.initial_pose.p3) << "\n";
    for (const ScanPoint& pt : sc.initial_points)
        out << "point = " << fmt(pt.x1) << " " << fmt(pt.x2) << "\n";
    out << "\n";

    out << "[env]\n";
    out << "max_range = " << fmt(sc.env.max_range) << "\n";
    for (const Segment& s : sc.env.segments)
        out << "segment = " << fmt(s.a.x) << " " << fmt(s.a.y) << " " << fmt(s.b.x) << " "
            << fmt(s.b.y) << "\n";
    for (const Circle& c : sc.env.circles)
        out << "circle = " << fmt(c.center.x) << " " << fmt(c.center.y) << " " << fmt(c.radius)
            << "\n";

    if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace rcbf
