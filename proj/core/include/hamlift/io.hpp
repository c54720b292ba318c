#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hamlift/correspondence.hpp"
#include "hamlift/flow.hpp"
#include "hamlift/grid.hpp"
#include "hamlift/weyl.hpp"

#include <json.hpp>

namespace hamlift {

/// Shortest round-trip decimal form, 17 significant digits.
std::string format_double(double v);

/// CSV `t, x1..xn, p1..pn[, E]` with header row, LF line endings. When
/// energies is non-empty it must match the sample count.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<double>& energies = {});

/// CSV `x, re, im`.
void write_wavefunction_csv(std::ostream& os, const WaveFunction& psi);

/// CSV `x, p, re, im` over the phase lattice.
void write_symbol_csv(std::ostream& os, const Symbol& a, const Grid& g);

/// CSV `x, y, re, im`.
void write_kernel_csv(std::ostream& os, const KernelMatrix& km);

/// Row-major arrays of arrays; complex entries as [re, im] pairs.
nlohmann::json matrix_to_json(const Mat& m);
nlohmann::json cmatrix_to_json(const CMat& m);

/// Pretty-printed with sorted keys (two-space indent, LF).
std::string json_to_string(const nlohmann::json& j);

}  // namespace hamlift
