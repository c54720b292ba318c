#include "hamlift/io.hpp"

#include <cstdio>
#include <ostream>

namespace hamlift {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<double>& energies) {
    if (!energies.empty() && energies.size() != traj.times.size())
        throw std::invalid_argument("write_trajectory_csv: energy column length mismatch");
    const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size() / 2;
    os << "t";
    for (Eigen::Index i = 1; i <= n; ++i) os << ",x" << i;
    for (Eigen::Index i = 1; i <= n; ++i) os << ",p" << i;
    if (!energies.empty()) os << ",E";
    os << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << format_double(traj.times[k]);
        for (Eigen::Index i = 0; i < 2 * n; ++i) os << "," << format_double(traj.states[k](i));
        if (!energies.empty()) os << "," << format_double(energies[k]);
        os << "\n";
    }
}

void write_wavefunction_csv(std::ostream& os, const WaveFunction& psi) {
    os << "x,re,im\n";
    for (Eigen::Index i = 0; i < psi.grid.N; ++i)
        os << format_double(psi.grid.x_at(i)) << "," << format_double(psi.values(i).real())
           << "," << format_double(psi.values(i).imag()) << "\n";
}

void write_symbol_csv(std::ostream& os, const Symbol& a, const Grid& g) {
    os << "x,p,re,im\n";
    for (Eigen::Index i = 0; i < g.N; ++i) {
        for (Eigen::Index k = 0; k < g.N; ++k) {
            const Complex v = a(g.x_at(i), g.p_at(k));
            os << format_double(g.x_at(i)) << "," << format_double(g.p_at(k)) << ","
               << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
        }
    }
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& km) {
    const Grid& g = km.grid;
    os << "x,y,re,im\n";
    for (Eigen::Index i = 0; i < g.N; ++i) {
        for (Eigen::Index j = 0; j < g.N; ++j) {
            os << format_double(g.x_at(i)) << "," << format_double(g.x_at(j)) << ","
               << format_double(km.K(i, j).real()) << "," << format_double(km.K(i, j).imag())
               << "\n";
        }
    }
}

nlohmann::json matrix_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json cmatrix_to_json(const CMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(nlohmann::json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string json_to_string(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace hamlift
