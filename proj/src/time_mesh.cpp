#include "fracwave/time_mesh.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fracwave {

namespace {

/// Populate tau, tau_half, t_half from validated levels.
TimeMesh finish(std::vector<double> levels) {
    TimeMesh m;
    m.N = static_cast<int>(levels.size()) - 1;
    m.T = levels.back();
    m.t = std::move(levels);

    const size_t N = static_cast<size_t>(m.N);
    m.tau.resize(N);
    m.tau_half.resize(N);
    m.t_half.resize(N + 1);
    for (size_t n = 1; n <= N; ++n) m.tau[n - 1] = m.t[n] - m.t[n - 1];

    m.tau_half[0] = m.tau[0] / 2.0;
    for (size_t n = 2; n <= N; ++n) m.tau_half[n - 1] = (m.tau[n - 1] + m.tau[n - 2]) / 2.0;

    m.t_half[0] = m.t[0];  // t_{-1/2} = t_0 by convention
    for (size_t n = 1; n <= N; ++n) m.t_half[n] = m.t[n - 1] + m.tau[n - 1] / 2.0;
    return m;
}

void check_levels(const std::vector<double>& levels) {
    if (levels.size() < 2) throw std::invalid_argument("mesh needs at least one step (N >= 1)");
    if (levels.front() != 0.0) throw std::invalid_argument("mesh must start at t_0 = 0");
    const double T = levels.back();
    if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
    for (size_t k = 1; k < levels.size(); ++k) {
        if (!(levels[k] > levels[k - 1])) {
            std::ostringstream os;
            os << "mesh levels not strictly increasing at index " << k;
            throw std::invalid_argument(os.str());
        }
    }
    // First step guard: tau_{1/2}^{-alpha} enters the kernels, so a vanishing
    // first step would blow up the leading coefficient.
    const double tau1 = levels[1] - levels[0];
    if (tau1 < 1e3 * std::numeric_limits<double>::epsilon() * T)
        throw std::invalid_argument("first step below minimum-step guard (1e3*eps*T)");
    // Step condition: tau_{n-1} <= tau_n for 2 <= n <= N. Steps are formed by
    // subtracting levels of size up to T, so equal steps of a nominally
    // uniform mesh can differ by a few ulps of T; allow that as slack. A real
    // violation is at least a visible fraction of a step, far above the
    // minimum-step guard of 1e3*eps*T.
    const double slack = 16.0 * std::numeric_limits<double>::epsilon() * T;
    for (size_t n = 2; n < levels.size(); ++n) {
        const double tp = levels[n - 1] - levels[n - 2];
        const double tc = levels[n] - levels[n - 1];
        if (tc < tp - slack) {
            std::ostringstream os;
            os << "step condition violated at n=" << n << ": tau_n=" << tc
               << " < tau_{n-1}=" << tp;
            throw std::invalid_argument(os.str());
        }
    }
}

}  // namespace

TimeMesh graded_mesh(int N, double T, double gamma) {
    if (N < 1) throw std::invalid_argument("graded_mesh: N must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("graded_mesh: T must be positive");
    if (!(gamma >= 1.0)) throw std::invalid_argument("graded_mesh: gamma must be >= 1");
    std::vector<double> levels(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k)
        levels[static_cast<size_t>(k)] = T * std::pow(static_cast<double>(k) / N, gamma);
    levels.back() = T;  // snap to avoid final-time drift from pow round-off
    check_levels(levels);
    return finish(std::move(levels));
}

TimeMesh validate_mesh(const std::vector<double>& levels) {
    check_levels(levels);
    return finish(levels);
}

TimeMesh load_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open mesh file: " + path);
    std::string first;
    std::getline(in, first);
    std::vector<double> levels;
    if (first.find('[') != std::string::npos) {
        // JSON array, possibly spanning several lines.
        std::stringstream whole;
        whole << first << in.rdbuf();
        auto j = nlohmann::json::parse(whole.str());
        for (const auto& v : j) levels.push_back(v.get<double>());
    } else {
        std::stringstream whole;
        whole << first << '\n' << in.rdbuf();
        double x;
        while (whole >> x) levels.push_back(x);
    }
    return validate_mesh(levels);
}

}  // namespace fracwave
