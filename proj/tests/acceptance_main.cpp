// Acceptance harness: runs the verification suite and the CLI determinism
// checks, printing one pass/fail line per criterion. Exit 0 iff all pass.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hamlift/verify.hpp"

namespace {

using hamlift::VerifyCheck;

struct Criterion {
    std::string title;
    std::vector<std::string> check_names;
};

int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

bool cli_determinism(const std::string& cli, std::string& detail) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("hamlift_accept_" + std::to_string(getpid()));
    fs::create_directories(dir);
    const fs::path out1 = dir / "verify1.json";
    const fs::path out2 = dir / "verify2.json";
    const fs::path out3 = dir / "verify_neg.json";
    const fs::path badcfg = dir / "bad.cfg";

    bool ok = true;
    const int rc1 = run_command(cli + " verify --out " + out1.string());
    const int rc2 = run_command(cli + " verify --out " + out2.string());
    if (rc1 != 0 || rc2 != 0) {
        detail += "verify exit codes " + std::to_string(rc1) + "," + std::to_string(rc2) +
                  " (want 0,0); ";
        ok = false;
    }
    const std::string b1 = slurp(out1), b2 = slurp(out2);
    if (b1.empty() || b1 != b2) {
        detail += "verify runs not byte-identical; ";
        ok = false;
    }

    const int rcneg = run_command(cli + " verify --covariance-tau 0 --out " + out3.string());
    if (rcneg != 1) {
        detail += "tau=0 covariance verify exit " + std::to_string(rcneg) + " (want 1); ";
        ok = false;
    }

    {
        std::ofstream f(badcfg);
        f << "grid.n=not_a_number\n";
    }
    const int rcbad =
        run_command(cli + " flow --config " + badcfg.string() + " --t 0.1 2>/dev/null");
    if (rcbad != 2) {
        detail += "malformed config exit " + std::to_string(rcbad) + " (want 2); ";
        ok = false;
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: hamlift_acceptance <path-to-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];

    const std::vector<VerifyCheck> checks = hamlift::run_verification({});
    std::map<std::string, const VerifyCheck*> by_name;
    for (const auto& c : checks) by_name[c.name] = &c;

    const std::vector<Criterion> criteria = {
        {"symplecticity of flow Jacobians",
         {"symplecticity_oscillator", "symplecticity_driven_oscillator",
          "symplecticity_pendulum"}},
        {"flow composition, inverse, conjugation",
         {"flow_composition", "flow_inverse", "flow_conjugation"}},
        {"Hamiltonian reconstruction from flow families",
         {"banyaga_rotation", "banyaga_shear"}},
        {"extended phase-space energy bookkeeping", {"extended_energy"}},
        {"quadratic Fourier unitarity and inverse",
         {"metaplectic_unitarity", "metaplectic_inverse"}},
        {"quadratic Fourier covariance transport", {"metaplectic_covariance"}},
        {"tau-calculus: multiplication, round trip, Hermiticity",
         {"tau_multiplication", "tau_roundtrip", "tau_hermiticity",
          "tau_hermiticity_tau_zero_negative"}},
        {"symplectic covariance of Weyl ordering",
         {"covariance_fourier", "covariance_shear", "covariance_tau_zero_negative"}},
        {"classical-quantum correspondence",
         {"correspondence_center", "correspondence_covariance",
          "correspondence_methods_agree"}},
        {"generator recovery convergence orders", {"stone_forward", "stone_central"}},
        {"extended-equation residual", {"extended_schrodinger"}},
    };

    bool all_ok = true;
    int idx = 0;
    for (const auto& crit : criteria) {
        ++idx;
        bool ok = true;
        std::ostringstream detail;
        for (const auto& name : crit.check_names) {
            const auto it = by_name.find(name);
            if (it == by_name.end()) {
                ok = false;
                detail << name << " missing; ";
                continue;
            }
            if (!it->second->pass) {
                ok = false;
                detail << name << " residual " << it->second->residual << " vs tol "
                       << it->second->tolerance << "; ";
            }
        }
        all_ok = all_ok && ok;
        std::printf("criterion %02d: %-4s %s%s%s\n", idx, ok ? "PASS" : "FAIL",
                    crit.title.c_str(), detail.str().empty() ? "" : " — ",
                    detail.str().c_str());
    }

    std::string detail;
    const bool det_ok = cli_determinism(cli, detail);
    all_ok = all_ok && det_ok;
    std::printf("criterion 12: %-4s CLI determinism and exit codes%s%s\n",
                det_ok ? "PASS" : "FAIL", detail.empty() ? "" : " — ", detail.c_str());

    return all_ok ? 0 : 1;
}
