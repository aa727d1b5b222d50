#ifndef FRACWAVE_PROBLEMS_HPP
#define FRACWAVE_PROBLEMS_HPP

#include <functional>
#include <string>

namespace fracwave {

/** Manufactured problem on the periodic square (0,L)^2: evolution equation
 *  of fractional order beta in (1,2) with forcing f, initial data
 *  u(.,0) = phi1, u_t(.,0) = phi2, optional cubic nonlinearity (+u^3 with
 *  diffusion scaled by eps^2), and an optional exact solution for error
 *  measurement. */
struct ProblemSpec {
    std::string name;
    double beta = 1.5;   ///< equation order, strictly in (1,2)
    double sigma = 0.5;  ///< regularity parameter (solution ~ t^{sigma+1})
    double L = 2.0 * 3.14159265358979323846;
    double T = 1.0;
    double eps = 1.0;    ///< diffusion coefficient (eps^2 * Lap) for the cubic case
    bool cubic_nonlinearity = false;
    std::function<double(double, double, double)> f;        ///< (x, y, t)
    std::function<double(double, double, double)> exact_u;  ///< may be empty
    std::function<double(double, double)> phi1;             ///< u(x,y,0)
    std::function<double(double, double)> phi2;             ///< u_t(x,y,0)
};

/** Fractional derivative (Caputo sense) of the power t^mu for order nu > 0:
 *  Gamma(mu+1)/Gamma(mu+1-nu) * t^{mu-nu}. Requires mu > ceil(nu) - 1 so the
 *  derivative is classical. */
double caputo_power(double nu, double mu, double t);

/** Linear benchmark: exact solution u = t^{sigma+1} sin x sin y on (0,2pi)^2,
 *  T = 1, with forcing
 *    f = (2 t^{sigma+1} + Gamma(sigma+2)/Gamma(sigma+2-beta) t^{sigma+1-beta}) sin x sin y
 *  and homogeneous initial data (sigma > 0 implies u_t(.,0) = 0). */
ProblemSpec example_51(double beta, double sigma);

/** Semilinear (Klein-Gordon type) benchmark: D^beta u - eps^2 Lap u + u^3 = f
 *  on (0,2pi)^2, T = 1, exact solution u = t^beta sin x sin y, forcing
 *    f = Gamma(beta+1) sin x sin y + 2 eps^2 t^beta sin x sin y
 *        + t^{3 beta} sin^3 x sin^3 y,
 *  homogeneous initial data. */
ProblemSpec example_52(double beta, double eps = 1.0);

}  // namespace fracwave

#endif
