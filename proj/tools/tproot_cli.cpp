#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace tproot::cli;

    CLI::App app{"Root numbers, cycle-orbit combinatorics and Weil pairings for triple products"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto const add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };

    auto* root = app.add_subcommand("root-number", "Global root number and conductor of f1 x f2 x f3 (x chi)");
    root->add_option("--p", cfg.p, "prime level")->required();
    root->add_option("--signs", cfg.signs, "a_p(f1),a_p(f2),a_p(f3), e.g. +,-,+");
    root->add_flag("--twisted", cfg.twisted, "twist by the Legendre character");
    add_format(root);

    auto* orbits = app.add_subcommand("orbits", "SL2, diamond, Galois and S3 orbit data for marking triples");
    orbits->add_option("--p", cfg.p, "odd prime")->required();
    orbits->add_option("--orbit-bound", cfg.orbit_bound, "largest p for the exhaustive SL2 orbit table");
    add_format(orbits);

    auto* oinv = app.add_subcommand("o-invariant", "o(E; C1, C2, C3) on an auto-selected curve");
    oinv->add_option("--p", cfg.p, "odd prime")->required();
    oinv->add_option("--coeffs", cfg.coeffs, "subgroup generators as (a,b);(a,b);(a,b) in the torsion basis");
    oinv->add_option("--max-ell", cfg.max_ell, "largest base prime in the curve search");
    oinv->add_option("--max-k", cfg.max_k, "largest extension degree");
    oinv->add_option("--seed", cfg.seed, "seed for random points and shift points");
    oinv->add_option("--manifest-out", cfg.manifest_out, "write the curve manifest to this file");
    add_format(oinv);

    auto* gauss = app.add_subcommand("gauss", "Exact Gauss sums");
    auto* gp = gauss->add_option("--p", cfg.p, "odd prime; Gauss sum of the Legendre character");
    auto* gq = gauss->add_option("--q", cfg.q, "prime modulus of a general character");
    gauss->add_option("--char-exponent", cfg.char_exponent, "mu(g^k) = zeta_{q-1}^{e k}, g the least primitive root")
        ->needs(gq);
    gp->excludes(gq);
    add_format(gauss);

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return kInvalidInput;
    }
    if (gauss->parsed() && gp->count() == 0 && gq->count() == 0) {
        std::cerr << "gauss: one of --p or --q is required\n";
        return kInvalidInput;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    Report const report = dispatch(cfg);
    if (report.body.contains("error"))
        std::cerr << cfg.command << ": " << report.body["error"]["message"].get<std::string>() << '\n';
    std::cout << render(report, cfg.format);
    return report.exit_code;
}
