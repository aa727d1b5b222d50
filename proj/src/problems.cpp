#include "fracwave/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace fracwave {

double caputo_power(double nu, double mu, double t) {
    if (!(nu > 0.0)) throw std::invalid_argument("caputo_power: nu must be positive");
    if (t < 0.0) throw std::invalid_argument("caputo_power: t must be nonnegative");
    // The derivative annihilates polynomials below its order: D^nu t^m = 0
    // for integer 0 <= m <= ceil(nu) - 1.
    if (mu >= 0.0 && mu == std::floor(mu) && mu <= std::ceil(nu) - 1.0) return 0.0;
    if (!(mu > std::ceil(nu) - 1.0))
        throw std::invalid_argument("caputo_power: requires mu > ceil(nu) - 1");
    if (t == 0.0 && mu - nu < 0.0)
        throw std::invalid_argument("caputo_power: singular at t = 0 for mu < nu");
    const double d = mu + 1.0 - nu;
    const double p = (t == 0.0 && mu == nu) ? 1.0 : std::pow(t, mu - nu);
    return std::tgamma(mu + 1.0) / std::tgamma(d) * p;
}

ProblemSpec example_51(double beta, double sigma) {
    if (!(beta > 1.0) || !(beta < 2.0))
        throw std::invalid_argument("example_51: beta must lie in (1,2)");
    if (!(sigma > 0.0)) throw std::invalid_argument("example_51: sigma must be positive");
    ProblemSpec p;
    p.name = "example51";
    p.beta = beta;
    p.sigma = sigma;
    const double coef = std::tgamma(sigma + 2.0) / std::tgamma(sigma + 2.0 - beta);
    p.f = [=](double x, double y, double t) {
        return (2.0 * std::pow(t, sigma + 1.0) + coef * std::pow(t, sigma + 1.0 - beta)) *
               std::sin(x) * std::sin(y);
    };
    p.exact_u = [=](double x, double y, double t) {
        return std::pow(t, sigma + 1.0) * std::sin(x) * std::sin(y);
    };
    p.phi1 = [](double, double) { return 0.0; };
    p.phi2 = [](double, double) { return 0.0; };
    return p;
}

ProblemSpec example_52(double beta, double eps) {
    if (!(beta > 1.0) || !(beta < 2.0))
        throw std::invalid_argument("example_52: beta must lie in (1,2)");
    if (!(eps > 0.0)) throw std::invalid_argument("example_52: eps must be positive");
    ProblemSpec p;
    p.name = "example52";
    p.beta = beta;
    p.sigma = beta - 1.0;  // u = t^beta, so u_t ~ t^{beta-1}
    p.eps = eps;
    p.cubic_nonlinearity = true;
    const double gb1 = std::tgamma(beta + 1.0);
    p.f = [=](double x, double y, double t) {
        const double s = std::sin(x) * std::sin(y);
        const double tb = std::pow(t, beta);
        return gb1 * s + 2.0 * eps * eps * tb * s + tb * tb * tb * s * s * s;
    };
    p.exact_u = [=](double x, double y, double t) {
        return std::pow(t, beta) * std::sin(x) * std::sin(y);
    };
    p.phi1 = [](double, double) { return 0.0; };
    p.phi2 = [](double, double) { return 0.0; };
    return p;
}

}  // namespace fracwave
