#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rcbf {

// Logged distance samples of one beam plus the translational input applied
// over each interval, on a uniform time grid.
struct IncrementSeries {
    std::vector<double> x1;  // distances [m], at least 2 samples
    std::vector<double> v;   // applied translational input [m/s], per interval
    double dt = 0.1;         // [s]

    void validate() const;
};

// sqrt(variance / dt).
double c1_from_variance(double variance, double dt);

// Distance-channel diffusion coefficient from drift-compensated increments:
//   c1 = sqrt( Var(x1[j+1] - x1[j] - v[j] dt) / dt )
// with the unbiased (n-1) sample variance. Needs at least 2 increments.
double estimate_c1(const IncrementSeries& series);

// Reads columns t,x1,v. dt comes from the time column unless overridden.
IncrementSeries read_increment_csv(const std::string& path,
                                   std::optional<double> dt_override = std::nullopt);

}  // namespace rcbf
