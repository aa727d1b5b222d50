// fracwave: CLI front end for the nonuniform-mesh fractional diffusion-wave
// solver. Subcommands: run, convergence, kernels-check, truncation,
// bdf2-compare. Exit codes: 0 success, 1 numerical failure, 2 config error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracwave/bdf2.hpp"
#include "fracwave/dcc_kernels.hpp"
#include "fracwave/harness.hpp"
#include "fracwave/l1_kernels.hpp"
#include "fracwave/problems.hpp"
#include "fracwave/space_grid.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/time_mesh.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fracwave;

namespace {

constexpr uint64_t kDefaultSeed = 0x5EED;

/// Write atomically: stream to a temp file in the same directory, then rename.
void atomic_write(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void atomic_write_field(const fs::path& path, const Field2D& u) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    write_field(tmp.string(), u);
    fs::rename(tmp, path);
}

int worker_count() {
    // The implementation is sequential; the env var is honored as a cap.
    if (const char* env = std::getenv("FRACWAVE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return std::min(v, 1);
    }
    return 1;
}

StepperOptions make_options(const std::string& first_step) {
    StepperOptions opt;
    if (first_step == "consistent")
        opt.first_step = FirstStepMode::consistent;
    else if (first_step == "half-weight")
        opt.first_step = FirstStepMode::half_weight;
    else
        throw CLI::ValidationError("--first-step must be 'consistent' or 'half-weight'");
    return opt;
}

ProblemSpec make_problem(const std::string& name, double beta, double sigma, double eps) {
    if (name == "example51") return example_51(beta, sigma);
    if (name == "example52") return example_52(beta, eps);
    throw CLI::ValidationError("--problem must be 'example51' or 'example52'");
}

/// Pre-scan argv for --config and load the JSON object (flag overrides apply
/// on top of config-file values, which override built-in defaults).
json load_config(int argc, char** argv) {
    for (int i = 1; i < argc - 1; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw std::runtime_error(std::string("cannot open config file ") + argv[i + 1]);
            return json::parse(in);
        }
    }
    return json::object();
}

template <typename T>
void from_config(const json& cfg, const char* key, T& var) {
    if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

std::string csv_header_convergence() {
    return "scheme,beta,sigma,gamma,N,M,e_max,e_l2,order_max,order_l2,expected_order,wall_ms\n";
}

void append_convergence_rows(std::ostringstream& os, const std::string& scheme,
                             const ProblemSpec& p, double gamma, int M,
                             const std::vector<ConvergenceRow>& rows) {
    for (const auto& r : rows) {
        os << scheme << ',' << p.beta << ',' << p.sigma << ',' << gamma << ',' << r.N << ','
           << M << ',' << r.e_max << ',' << r.e_l2 << ',' << r.order_max << ',' << r.order_l2
           << ',' << r.expected << ',' << r.wall_ms << '\n';
    }
}

json echo_config(const json& kv) {
    json j = kv;
    j["workers"] = worker_count();
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracwave: nonuniform-mesh solver for the 2D time-fractional "
                 "diffusion-wave equation (half-point scheme, complementary-kernel "
                 "verification harness, spectral periodic Helmholtz solves)"};
    app.require_subcommand(1);

    json cfg;
    try {
        cfg = load_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    std::string config_path;  // accepted (and consumed) by every subcommand
    app.add_option("--config", config_path, "JSON config file (flags override its values)");

    // ---- shared parameter variables (defaults <- config file <- flags) ----
    std::string problem = "example51", first_step = "consistent", outdir = "out";
    double beta = 1.5, sigma = 0.5, gamma = 2.0, T = 1.0, eps = 1.0, alpha = 0.5;
    int M = 512, N = 40, max_N = 60, count = 100;
    uint64_t seed = kDefaultSeed;
    std::vector<int> N_list = {40, 80, 160, 320};
    std::string mesh_file;
    bool use_bdf2 = false, dump_dcc = false;
    from_config(cfg, "problem", problem);
    from_config(cfg, "first_step", first_step);
    from_config(cfg, "outdir", outdir);
    from_config(cfg, "beta", beta);
    from_config(cfg, "sigma", sigma);
    from_config(cfg, "gamma", gamma);
    from_config(cfg, "T", T);
    from_config(cfg, "eps", eps);
    from_config(cfg, "alpha", alpha);
    from_config(cfg, "M", M);
    from_config(cfg, "N", N);
    from_config(cfg, "N_list", N_list);
    from_config(cfg, "seed", seed);

    auto add_common = [&](CLI::App* sub, bool with_space) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
        sub->add_option("--beta", beta, "equation order in (1,2)")->capture_default_str();
        sub->add_option("--gamma", gamma, "mesh grading exponent >= 1")->capture_default_str();
        sub->add_option("--T", T, "final time")->capture_default_str();
        if (with_space)
            sub->add_option("--M", M, "spatial points per dimension (even, >= 4)")
                ->capture_default_str();
    };

    // run ------------------------------------------------------------------
    auto* c_run = app.add_subcommand("run", "single solve; writes final field + per-step stats");
    add_common(c_run, true);
    c_run->add_option("--problem", problem, "example51 | example52")->capture_default_str();
    c_run->add_option("--sigma", sigma, "regularity parameter")->capture_default_str();
    c_run->add_option("--eps", eps, "diffusion coefficient (example52)")->capture_default_str();
    c_run->add_option("--N", N, "time steps")->capture_default_str();
    c_run->add_option("--first-step", first_step, "consistent | half-weight")
        ->capture_default_str();
    c_run->add_option("--mesh-file", mesh_file, "explicit mesh levels (text or JSON array)");

    // convergence ------------------------------------------------------------
    auto* c_conv = app.add_subcommand("convergence", "graded-mesh convergence table");
    add_common(c_conv, true);
    c_conv->add_option("--problem", problem, "example51 | example52")->capture_default_str();
    c_conv->add_option("--sigma", sigma, "regularity parameter")->capture_default_str();
    c_conv->add_option("--eps", eps, "diffusion coefficient (example52)")->capture_default_str();
    c_conv->add_option("--N", N_list, "doubling list of step counts, e.g. 40,80,160")
        ->delimiter(',')
        ->capture_default_str();
    c_conv->add_option("--first-step", first_step, "consistent | half-weight")
        ->capture_default_str();
    c_conv->add_flag("--bdf2", use_bdf2, "use the integer-level second-order scheme");

    // kernels-check ----------------------------------------------------------
    auto* c_kern = app.add_subcommand("kernels-check",
                                      "kernel rows, inequality margins, complementary kernels");
    add_common(c_kern, false);
    c_kern->add_option("--alpha", alpha, "reduced order in (0,1)")->capture_default_str();
    c_kern->add_option("--N", N, "time steps")->capture_default_str();
    c_kern->add_flag("--dcc", dump_dcc, "also dump complementary kernel rows");
    c_kern->add_option("--random", count, "random-mesh fuzz count (0 = deterministic only)")
        ->capture_default_str();
    c_kern->add_option("--max-N", max_N, "max steps of random meshes")->capture_default_str();
    c_kern->add_option("--seed", seed, "fuzz seed")->capture_default_str();

    // truncation ---------------------------------------------------------------
    auto* c_trunc = app.add_subcommand("truncation",
                                       "consistency residuals of the discrete derivative vs "
                                       "the factor-2 bound, with decay-slope fit");
    add_common(c_trunc, false);
    c_trunc->add_option("--alpha", alpha, "reduced order in (0,1)")->capture_default_str();
    c_trunc->add_option("--sigma", sigma, "power exponent of the test function")
        ->capture_default_str();
    c_trunc->add_option("--N", N_list, "doubling list of step counts")->delimiter(',')
        ->capture_default_str();

    // bdf2-compare ---------------------------------------------------------------
    auto* c_cmp = app.add_subcommand("bdf2-compare",
                                     "empirical order: half-point scheme vs experimental "
                                     "integer-level scheme (--experimental-bdf2 acknowledged)");
    add_common(c_cmp, true);
    c_cmp->add_option("--sigma", sigma, "regularity parameter")->capture_default_str();
    c_cmp->add_option("--N", N_list, "doubling list of step counts")->delimiter(',')
        ->capture_default_str();
    bool experimental = false;
    c_cmp->add_flag("--experimental-bdf2", experimental,
                    "acknowledge the experimental (no-theory) scheme");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const fs::path out(outdir);

        if (*c_run) {
            const ProblemSpec prob = make_problem(problem, beta, sigma, eps);
            const TimeMesh mesh =
                mesh_file.empty() ? graded_mesh(N, T, gamma) : load_mesh_file(mesh_file);
            const Grid2D grid(M, prob.L);
            const SolutionReport rep = run(prob, mesh, grid, make_options(first_step));

            std::ostringstream csv;
            csv << "n,t_n,tau_n,picard_iters,residual,wall_ms\n";
            for (const auto& s : rep.stats)
                csv << s.n << ',' << s.t_n << ',' << s.tau_n << ',' << s.picard_iters << ','
                    << s.residual << ',' << s.wall_ms << '\n';
            atomic_write(out / "steps.csv", csv.str());
            atomic_write_field(out / "u_final.f2d", rep.u_final);

            json summary = {{"problem", prob.name}, {"N", mesh.N}, {"M", M},
                            {"e_max", rep.e_max},   {"e_l2", rep.e_l2}};
            atomic_write(out / "summary.json", summary.dump(2) + "\n");
            atomic_write(out / "config.json",
                         echo_config({{"subcommand", "run"}, {"problem", problem},
                                      {"beta", beta}, {"sigma", sigma}, {"gamma", gamma},
                                      {"N", N}, {"M", M}, {"T", T}, {"eps", eps},
                                      {"first_step", first_step}, {"mesh_file", mesh_file}})
                             .dump(2) +
                             "\n");
            std::cout << summary.dump(2) << "\n";
        }

        if (*c_conv) {
            const ProblemSpec prob = make_problem(problem, beta, sigma, eps);
            const auto rows =
                convergence_study(prob, gamma, N_list, M, make_options(first_step), use_bdf2);
            std::ostringstream csv;
            csv << csv_header_convergence();
            append_convergence_rows(csv, use_bdf2 ? "bdf2" : "halfpoint", prob, gamma, M, rows);
            atomic_write(out / "convergence.csv", csv.str());
            atomic_write(out / "config.json",
                         echo_config({{"subcommand", "convergence"}, {"problem", problem},
                                      {"beta", beta}, {"sigma", sigma}, {"gamma", gamma},
                                      {"N_list", N_list}, {"M", M},
                                      {"first_step", first_step}, {"bdf2", use_bdf2}})
                             .dump(2) +
                             "\n");
            std::cout << csv.str();
        }

        if (*c_kern) {
            const TimeMesh mesh = graded_mesh(N, T, gamma);
            const FracOrder order(alpha);
            const auto a_rows = l1_rows(mesh, order);
            const auto p_rows = dcc_rows(a_rows);

            std::ostringstream csv;
            csv << "n,lag,a_value";
            for (const char* nm : {"I", "II", "III", "IV", "V"})
                csv << ",pass_" << nm << ",margin_" << nm;
            csv << '\n';
            for (int n = 1; n <= mesh.N; ++n) {
                const auto props = check_kernel_lemma(mesh, order, n);
                for (int lag = 0; lag < n; ++lag) {
                    csv << n << ',' << lag << ','
                        << a_rows[static_cast<size_t>(n - 1)].a[static_cast<size_t>(lag)];
                    for (const auto& pr : props)
                        csv << ',' << (pr.checked ? (pr.pass ? 1 : 0) : -1) << ',' << pr.margin;
                    csv << '\n';
                }
            }
            atomic_write(out / "kernels.csv", csv.str());

            if (dump_dcc) {
                std::ostringstream dcsv;
                dcsv << "n,lag,p_value\n";
                for (int n = 1; n <= mesh.N; ++n)
                    for (int lag = 0; lag < n; ++lag)
                        dcsv << n << ',' << lag << ','
                             << p_rows[static_cast<size_t>(n - 1)].p[static_cast<size_t>(lag)]
                             << '\n';
                atomic_write(out / "dcc.csv", dcsv.str());
            }

            double ident = 0.0;
            for (int n = 1; n <= mesh.N; ++n)
                ident = std::max(ident, verify_identity(p_rows, a_rows, n));
            json summary = {
                {"identity_residual", ident},
                {"pd_margin_p", positive_definiteness_margin(p_rows, a_rows, false)},
                {"pd_margin_zeta", positive_definiteness_margin(p_rows, a_rows, true)}};

            if (count > 0) {
                const auto fuzz = lemma_suite(seed, count, max_N);
                summary["fuzz"] = {{"meshes", fuzz.meshes},
                                   {"failures", fuzz.failures},
                                   {"worst_lemma_margin", fuzz.worst_lemma_margin},
                                   {"worst_identity_residual", fuzz.worst_identity_residual},
                                   {"worst_sum_bound_margin", fuzz.worst_sum_bound_margin},
                                   {"worst_pd_margin_p", fuzz.worst_pd_margin_p},
                                   {"worst_pd_margin_zeta", fuzz.worst_pd_margin_zeta},
                                   {"notes", fuzz.notes}};
                if (!fuzz.all_pass()) {
                    atomic_write(out / "kernels_summary.json", summary.dump(2) + "\n");
                    std::cerr << "kernel property failures detected\n" << summary.dump(2) << "\n";
                    return 1;
                }
            }
            atomic_write(out / "kernels_summary.json", summary.dump(2) + "\n");
            atomic_write(out / "config.json",
                         echo_config({{"subcommand", "kernels-check"}, {"alpha", alpha},
                                      {"gamma", gamma}, {"N", N}, {"random", count},
                                      {"max_N", max_N}, {"seed", seed}})
                             .dump(2) +
                             "\n");
            std::cout << summary.dump(2) << "\n";
        }

        if (*c_trunc) {
            const FracOrder order(alpha);
            std::ostringstream csv;
            csv << "N,n,measured,bound\n";
            std::vector<double> xs, maxima;
            bool all_bounded = true;
            for (int Ni : N_list) {
                const TimeMesh mesh = graded_mesh(Ni, T, gamma);
                const auto rep = truncation_study(mesh, order, sigma);
                for (int n = 1; n <= Ni; ++n)
                    csv << Ni << ',' << n << ',' << rep.measured[static_cast<size_t>(n - 1)]
                        << ',' << rep.bound[static_cast<size_t>(n - 1)] << '\n';
                xs.push_back(Ni);
                maxima.push_back(rep.max_measured);
                all_bounded = all_bounded && rep.bound_ok;
            }
            const double slope = fit_slope(xs, maxima);
            const double target = -std::min(gamma * sigma, 2.0 - alpha);
            json summary = {{"slope", slope},
                            {"target_slope", target},
                            {"bound_ok", all_bounded}};
            atomic_write(out / "truncation.csv", csv.str());
            atomic_write(out / "truncation_summary.json", summary.dump(2) + "\n");
            atomic_write(out / "config.json",
                         echo_config({{"subcommand", "truncation"}, {"alpha", alpha},
                                      {"sigma", sigma}, {"gamma", gamma}, {"N_list", N_list}})
                             .dump(2) +
                             "\n");
            std::cout << summary.dump(2) << "\n";
            if (!all_bounded) return 1;
        }

        if (*c_cmp) {
            const ProblemSpec prob = example_51(beta, sigma);
            std::ostringstream csv;
            csv << csv_header_convergence();
            const auto l1 = convergence_study(prob, gamma, N_list, M, StepperOptions{}, false);
            const auto b2 = convergence_study(prob, gamma, N_list, M, StepperOptions{}, true);
            append_convergence_rows(csv, "halfpoint", prob, gamma, M, l1);
            append_convergence_rows(csv, "bdf2", prob, gamma, M, b2);
            atomic_write(out / "bdf2_compare.csv", csv.str());
            atomic_write(out / "config.json",
                         echo_config({{"subcommand", "bdf2-compare"}, {"beta", beta},
                                      {"sigma", sigma}, {"gamma", gamma}, {"N_list", N_list},
                                      {"M", M}, {"experimental_bdf2", experimental}})
                             .dump(2) +
                             "\n");
            std::cout << csv.str();
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
