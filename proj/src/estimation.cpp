#include "rcbf/estimation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rcbf/errors.hpp"

namespace rcbf {

void IncrementSeries::validate() const {
    if (x1.size() < 2) throw InsufficientData("increment series needs at least 2 samples");
    if (!(dt > 0.0)) throw InvalidParams("increment series: dt must be > 0");
    if (v.size() + 1 < x1.size())
        throw InvalidParams("increment series: need an input per interval");
}

double c1_from_variance(double variance, double dt) {
    if (!(dt > 0.0)) throw InvalidParams("dt must be > 0");
    if (!(variance >= 0.0)) throw InvalidParams("variance must be >= 0");
    return std::sqrt(variance / dt);
}

double estimate_c1(const IncrementSeries& series) {
    series.validate();
    const std::size_t n = series.x1.size() - 1;
    if (n < 2) throw InsufficientData("need at least 2 increments");

    std::vector<double> inc(n);
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        inc[j] = series.x1[j + 1] - series.x1[j] - series.v[j] * series.dt;
        mean += inc[j];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double d : inc) ss += (d - mean) * (d - mean);
    const double var = ss / static_cast<double>(n - 1);
    return c1_from_variance(var, series.dt);
}

IncrementSeries read_increment_csv(const std::string& path, std::optional<double> dt_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + path + "': empty file");
    // Header must name t,x1,v in that order.
    {
        std::string h = line;
        h.erase(remove_if(h.begin(), h.end(), [](char c) { return c == ' ' || c == '\r'; }),
                h.end());
        if (h != "t,x1,v") throw ConfigError("'" + path + "': expected header t,x1,v");
    }

    IncrementSeries s;
    std::vector<double> times;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        double row[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, cell, ','))
                throw ConfigError("'" + path + "' line " + std::to_string(lineno) +
                                  ": expected 3 columns");
            try {
                row[k] = std::stod(cell);
            } catch (const std::exception&) {
                throw ConfigError("'" + path + "' line " + std::to_string(lineno) +
                                  ": bad number '" + cell + "'");
            }
        }
        times.push_back(row[0]);
        s.x1.push_back(row[1]);
        s.v.push_back(row[2]);
    }
    if (s.x1.size() < 2) throw InsufficientData("'" + path + "': needs at least 2 rows");
    s.dt = dt_override ? *dt_override : times[1] - times[0];
    if (!(s.dt > 0.0)) throw ConfigError("'" + path + "': nonpositive sample interval");
    return s;
}

}  // namespace rcbf
