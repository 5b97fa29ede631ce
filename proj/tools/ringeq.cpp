#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringeq/commands.hpp"

namespace {

std::vector<std::string> split_formats(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int report(const ringeq::cli::CommandResult& r) {
    if (r.exit_code == 0) {
        std::cout << r.message << '\n';
    } else {
        std::cerr << "error: " << r.message << '\n';
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ringeq::cli;
    CLI::App app{"Equilibrium shapes of a pressurised elastic ring"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    ShapeArgs shape;
    std::string shape_formats = "csv,svg";
    auto* sh = app.add_subcommand("shape", "solve the mode-n equilibrium and export its shape");
    sh->add_option("--n", shape.n, "mode number (>= 2)")->required();
    sh->add_option("--sigma", shape.sigma, "dimensionless pressure")->required();
    sh->add_option("--samples", shape.samples, "number of points on the curve")->capture_default_str();
    sh->add_option("--format", shape_formats, "comma-separated list of csv, svg")->capture_default_str();
    sh->add_option("--out", shape.out, "output path prefix")->capture_default_str();

    ContactTableArgs table;
    auto* ct = app.add_subcommand("contact-table", "tabulate contact pressures");
    ct->add_option("--n-min", table.n_min, "first mode")->capture_default_str();
    ct->add_option("--n-max", table.n_max, "last mode")->capture_default_str();
    ct->add_option("--out", table.out, "CSV output path")->capture_default_str();
    ct->add_flag("!--no-alternative", table.alternative, "skip the alternative contact system");

    ContactShapeArgs cshape;
    std::string cshape_formats = "csv,svg";
    auto* cs = app.add_subcommand("contact-shape", "build a shape with lines of contact");
    cs->add_option("--n", cshape.n, "mode number (>= 2)")->required();
    cs->add_option("--sigma", cshape.sigma_hat, "pressure, at least the contact pressure")->required();
    cs->add_option("--samples", cshape.samples, "number of points on the curve")->capture_default_str();
    cs->add_option("--format", cshape_formats, "comma-separated list of csv, svg")->capture_default_str();
    cs->add_option("--out", cshape.out, "output path prefix")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    double tol = 1e-10;
    try {
        tol = residual_tolerance_from_env();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (sh->parsed()) {
            shape.formats = split_formats(shape_formats);
            shape.tol = tol;
            return report(cmd_shape(shape));
        }
        if (ct->parsed()) {
            table.tol = tol;
            return report(cmd_contact_table(table));
        }
        cshape.formats = split_formats(cshape_formats);
        cshape.tol = tol;
        return report(cmd_contact_shape(cshape));
    } catch (const std::exception& e) {
        // I/O failures and anything else unexpected
        std::cerr << "error: " << e.what() << '\n';
        return kConvergence;
    }
}
