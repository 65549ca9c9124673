#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shelldecay/expansion.hpp"
#include "shelldecay/singularity.hpp"

namespace shelldecay::io {

inline constexpr int kSchemaVersion = 1;

// Header comment lines are written as "# <line>".
using Comments = std::vector<std::string>;

/// Columns: index, re_k, im_k, resonance_position, width (+ re_A, im_A with a basis).
/// Every double is written with 17 significant digits so reading back is bit-exact.
void write_poles_csv(std::ostream& os, const PoleSet& poles, const Comments& comments = {},
                     const ResonantBasis* basis = nullptr);
void write_poles_json(std::ostream& os, const PoleSet& poles, const Comments& comments = {},
                      const ResonantBasis* basis = nullptr);
PoleSet read_poles_csv(std::istream& is);
PoleSet read_poles_json(std::istream& is);

/// Columns: t, t_over_tau, re_A, im_A, S, S_exp_only, S_tail_only (+ S_oracle).
/// Oracle values that could not be computed (t below the oracle's t_min) are NaN in
/// CSV and null in JSON.
void write_series_csv(std::ostream& os, const SurvivalSeries& series, const std::string& source,
                      const Comments& comments = {}, const std::vector<double>* oracle = nullptr);
void write_series_json(std::ostream& os, const SurvivalSeries& series, const std::string& source,
                       const Comments& comments = {}, const std::vector<double>* oracle = nullptr);

/// Columns: b, re_k, im_k, family.
void write_trajectory_csv(std::ostream& os, const PoleTrajectory& traj, const Comments& comments = {});

void write_singularity_json(std::ostream& os, const Singularity& s, const Comments& comments = {});

/// %.17g
std::string format_double(double x);

}  // namespace shelldecay::io
