#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hnbc/direct_solver.hpp"
#include "hnbc/errors.hpp"
#include "hnbc/identity_engine.hpp"
#include "hnbc/inverse.hpp"
#include "hnbc/serialization.hpp"
#include "hnbc/spectral_sums.hpp"

namespace {

struct SpectrumArgs {
    std::string config;
    std::string spectrum_out;
    std::string format = "json";
    int n_max = 0; // 0: keep the configured value
};

struct VerifyArgs {
    std::string config;
    std::string spectrum_in;
    std::string spectrum_out;
    double threshold = 1e-2;
    int n_max = 0; // 0: keep the configured value
    bool no_tail = false;
};

struct RecoverBcArgs {
    std::string spectrum_in;
    std::string out;
    std::string endpoint = "left";
    int index = 0;
    bool no_tail = false;
};

struct RecoverMissingArgs {
    std::string config;
    std::string partial_in;
    std::string spectrum_out;
    std::string format = "json";
};

int do_spectrum(const SpectrumArgs& args) {
    hnbc::Problem problem = hnbc::parse_problem(hnbc::read_text_file(args.config));
    if (args.n_max > 0)
        problem.solver.n_max = args.n_max;
    const hnbc::Spectrum spectrum = hnbc::find_eigenvalues(problem);
    const std::string text = args.format == "csv"
                                 ? hnbc::write_spectrum_csv(spectrum)
                                 : hnbc::write_spectrum_json(spectrum);
    if (args.spectrum_out.empty())
        std::cout << text;
    else
        hnbc::write_text_file(args.spectrum_out, text);
    std::cerr << "computed " << spectrum.data.size()
              << " eigenvalues (tail constant " << spectrum.tail_constant
              << ")\n";
    return 0;
}

int do_verify(const VerifyArgs& args) {
    hnbc::Problem problem =
        hnbc::parse_problem(hnbc::read_text_file(args.config));
    hnbc::Spectrum spectrum;
    if (args.spectrum_in.empty()) {
        if (args.n_max > 0)
            problem.solver.n_max = args.n_max;
        spectrum = hnbc::find_eigenvalues(problem);
        if (!args.spectrum_out.empty())
            hnbc::write_text_file(args.spectrum_out,
                                  hnbc::write_spectrum_json(spectrum));
    } else {
        spectrum = hnbc::parse_spectrum(hnbc::read_text_file(args.spectrum_in));
    }
    if (problem.f.index() != spectrum.ind_f ||
        problem.F.index() != spectrum.ind_F)
        throw hnbc::ConfigError(
            "boundary function indices in the configuration disagree with "
            "the spectrum file");

    const bool with_tail = !args.no_tail;
    const auto sums_left =
        hnbc::sigma_vector(spectrum, spectrum.ind_f, with_tail);
    const auto left =
        hnbc::identity_residuals(sums_left, hnbc::omega_vector(problem.f));
    const auto reflected = hnbc::reflected_spectrum(spectrum);
    const auto sums_right =
        hnbc::sigma_vector(reflected, spectrum.ind_F, with_tail);
    const auto right =
        hnbc::identity_residuals(sums_right, hnbc::omega_vector(problem.F));

    double worst = 0.0;
    for (std::size_t k = 0; k < left.size(); ++k) {
        std::cout << "left  identity k=" << k << " residual " << left[k] << "\n";
        worst = std::max(worst, std::abs(left[k]));
    }
    for (std::size_t k = 0; k < right.size(); ++k) {
        std::cout << "right identity k=" << k << " residual " << right[k] << "\n";
        worst = std::max(worst, std::abs(right[k]));
    }
    const bool pass = worst <= args.threshold;
    std::cout << "verify: " << (pass ? "PASS" : "FAIL") << " max |residual| "
              << worst << " against threshold " << args.threshold << "\n";
    return pass ? 0 : 1;
}

int do_recover_bc(const RecoverBcArgs& args) {
    const hnbc::Spectrum spectrum =
        hnbc::parse_spectrum(hnbc::read_text_file(args.spectrum_in));
    const bool with_tail = !args.no_tail;
    const hnbc::HerglotzFunction recovered =
        args.endpoint == "right"
            ? hnbc::recover_right_function(spectrum, args.index, with_tail)
            : hnbc::recover_boundary_function(spectrum, args.index, with_tail);
    const std::string text = hnbc::write_herglotz_json(recovered);
    if (args.out.empty())
        std::cout << text;
    else
        hnbc::write_text_file(args.out, text);
    return 0;
}

int do_recover_missing(const RecoverMissingArgs& args) {
    const hnbc::Problem problem =
        hnbc::parse_problem(hnbc::read_text_file(args.config));
    const hnbc::PartialSpectrum partial =
        hnbc::parse_partial_spectrum(hnbc::read_text_file(args.partial_in));
    const hnbc::RecoveryResult result =
        hnbc::recover_missing(partial, problem.f, problem.F);
    double worst = 0.0;
    for (double r : result.residuals)
        worst = std::max(worst, std::abs(r));
    std::cerr << "recovered missing data in " << result.iterations
              << " iterations, max scaled residual " << worst << "\n";
    const std::string text = args.format == "csv"
                                 ? hnbc::write_spectrum_csv(result.completed)
                                 : hnbc::write_spectrum_json(result.completed);
    if (args.spectrum_out.empty())
        std::cout << text;
    else
        hnbc::write_text_file(args.spectrum_out, text);
    return 0;
}

int do_selfcheck() {
    using namespace hnbc;
    int failures = 0;
    const auto report = [&failures](const std::string& name, bool ok,
                                    const std::string& detail) {
        std::cout << (ok ? "ok   " : "FAIL ") << name;
        if (!detail.empty())
            std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok)
            ++failures;
    };

    Problem problem;
    problem.q = Potential::constant(1.0);
    problem.f = HerglotzFunction(0.0, 1.0);  // y'(0) = -y(0)
    problem.F = HerglotzFunction(1.0, 0.5);  // lambda-affine right condition
    problem.solver.n_max = 30;

    const Spectrum spectrum = find_eigenvalues(problem);
    {
        std::ostringstream detail;
        detail << spectrum.data.size() << " eigenvalues";
        report("direct solve", spectrum.data.size() == 30, detail.str());
    }
    {
        double worst = 0.0;
        for (const SpectralDatum& d : spectrum.data)
            worst = std::max(worst, std::abs(d.chi_prime - d.beta * d.gamma) /
                                        (1.0 + std::abs(d.chi_prime)));
        std::ostringstream detail;
        detail << "max relative gap " << worst;
        report("chi' = beta * gamma", worst < 1e-6, detail.str());
    }
    double worst_identity = 0.0;
    {
        const auto left = identity_residuals(
            sigma_vector(spectrum, spectrum.ind_f), omega_vector(problem.f));
        const auto right = identity_residuals(
            sigma_vector(reflected_spectrum(spectrum), spectrum.ind_F),
            omega_vector(problem.F));
        for (double r : left)
            worst_identity = std::max(worst_identity, std::abs(r));
        for (double r : right)
            worst_identity = std::max(worst_identity, std::abs(r));
        std::ostringstream detail;
        detail << "max |residual| " << worst_identity;
        report("identity residuals", worst_identity < 1e-2, detail.str());
    }
    {
        const HerglotzFunction left = recover_boundary_function(spectrum, 0);
        std::ostringstream detail;
        detail << "offset " << left.offset();
        report("left boundary recovery",
               std::abs(left.offset() - 1.0) < 5e-2, detail.str());
    }
    {
        const HerglotzFunction right = recover_right_function(spectrum, 1);
        std::ostringstream detail;
        detail << "slope " << right.slope() << ", offset " << right.offset();
        report("right boundary recovery",
               std::abs(right.slope() - 1.0) < 5e-2 &&
                   std::abs(right.offset() - 0.5) < 5e-2,
               detail.str());
    }
    std::cout << (failures == 0 ? "selfcheck: PASS" : "selfcheck: FAIL")
              << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, weighted spectral sums, and boundary-condition "
                 "recovery for Schrodinger problems on [0, pi] with rational "
                 "Herglotz-Nevanlinna boundary conditions"};
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    CLI::App* spectrum_cmd = app.add_subcommand(
        "spectrum", "Compute eigenvalues, norming constants and ratios");
    spectrum_cmd->add_option("--config", spectrum_args.config,
                             "Problem configuration JSON file")
        ->required();
    spectrum_cmd->add_option("--spectrum-out", spectrum_args.spectrum_out,
                             "Output file (stdout when omitted)");
    spectrum_cmd->add_option("--format", spectrum_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    spectrum_cmd->add_option("--n-max", spectrum_args.n_max,
                             "Override the number of eigenvalues");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Check spectral data against the identity system of a "
                  "problem configuration");
    verify_cmd->add_option("--config", verify_args.config,
                           "Problem configuration JSON file")
        ->required();
    verify_cmd->add_option("--spectrum-in", verify_args.spectrum_in,
                           "Spectrum JSON file (computed from the "
                           "configuration when omitted)");
    verify_cmd->add_option("--spectrum-out", verify_args.spectrum_out,
                           "Save the computed spectrum to this file");
    verify_cmd->add_option("--n-max", verify_args.n_max,
                           "Override the number of eigenvalues when computing");
    verify_cmd->add_option("--threshold", verify_args.threshold,
                           "Max admissible |residual| (default 1e-2)");
    verify_cmd->add_flag("--no-tail", verify_args.no_tail,
                         "Skip tail corrections of the spectral sums");

    RecoverBcArgs recover_bc_args;
    CLI::App* recover_bc_cmd = app.add_subcommand(
        "recover-bc",
        "Recover a boundary condition function from spectral data");
    recover_bc_cmd->add_option("--spectrum-in", recover_bc_args.spectrum_in,
                               "Spectrum JSON file")
        ->required();
    recover_bc_cmd->add_option("--ind-f", recover_bc_args.index,
                               "Index of the function to recover")
        ->required();
    recover_bc_cmd->add_option("--endpoint", recover_bc_args.endpoint,
                               "left or right (default left)")
        ->check(CLI::IsMember({"left", "right"}));
    recover_bc_cmd->add_flag("--no-tail", recover_bc_args.no_tail,
                             "Skip tail corrections of the spectral sums");
    recover_bc_cmd->add_option("--out", recover_bc_args.out,
                               "Output file (stdout when omitted)");

    RecoverMissingArgs recover_missing_args;
    CLI::App* recover_missing_cmd = app.add_subcommand(
        "recover-missing", "Fill holes in a partially known spectrum using "
                           "both boundary condition functions");
    recover_missing_cmd->add_option("--config", recover_missing_args.config,
                                    "Problem configuration JSON file")
        ->required();
    recover_missing_cmd->add_option("--partial-in",
                                    recover_missing_args.partial_in,
                                    "Partial spectrum JSON file")
        ->required();
    recover_missing_cmd->add_option("--spectrum-out",
                                    recover_missing_args.spectrum_out,
                                    "Output file (stdout when omitted)");
    recover_missing_cmd->add_option("--format", recover_missing_args.format,
                                    "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* selfcheck_cmd = app.add_subcommand(
        "selfcheck", "Run a built-in end-to-end consistency check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*spectrum_cmd)
            return do_spectrum(spectrum_args);
        if (*verify_cmd)
            return do_verify(verify_args);
        if (*recover_bc_cmd)
            return do_recover_bc(recover_bc_args);
        if (*recover_missing_cmd)
            return do_recover_missing(recover_missing_args);
        if (*selfcheck_cmd)
            return do_selfcheck();
    } catch (const hnbc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hnbc::NotHerglotz& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const hnbc::NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const hnbc::SingularSystem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const hnbc::NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const hnbc::UnderdeterminedProblem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const hnbc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
