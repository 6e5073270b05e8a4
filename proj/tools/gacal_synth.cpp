// Writes a loadable input set whose "experimental" data are simulated with
// known parameters. Used to build the tutorial and recovery data sets.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gacal/errors.hpp"
#include "gacal/io_config.hpp"
#include "gacal/synthetic.hpp"

namespace {

std::vector<double> split_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stod(item));
    return out;
}

gacal::SearchDomain default_domain() {
    return {{28.0, 500.0, 0.15, 0.8, 0.05, 0.5, 0.52, 1.05},
            {38.0, 5000.0, 0.45, 1.2, 0.5, 2.5, 0.65, 1.3}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic calibration data set"};
    std::string params_text;
    std::vector<std::string> oe_specs, td_specs;
    std::string out_dir = "data";
    std::string like;
    gacal::SyntheticOptions options;
    options.n_step = 1000;
    std::size_t run_n_step = 100;
    app.add_option("--params", params_text,
                   "phi_c,h_s,n,e_c0,alpha,beta,lambda_d,lambda_i (deg, MPa)")->required();
    app.add_option("--oe", oe_specs, "OE test T1,T2,e0,e_fin,points (MPa, compression positive)");
    app.add_option("--td", td_specs, "TD test T1,T2,e0,eps_fin[%],points (MPa, compression positive)");
    app.add_option("--n-step", options.n_step, "integration steps used to generate the data");
    app.add_option("--noise", options.noise, "relative Gaussian noise level");
    app.add_option("--seed", options.seed, "noise seed");
    app.add_option("--digits", options.significant_digits, "significant digits of recorded values");
    app.add_option("--run-n-step", run_n_step, "n_Step written to Input.txt");
    app.add_option("--like", like, "copy domain, GA setup and weights from this Input.txt");
    app.add_option("--out", out_dir, "output folder");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::vector<double> pv = split_numbers(params_text);
        if (pv.size() != gacal::kParameterCount) throw gacal::ConfigError("--params needs 8 values");
        gacal::ParameterVector v{};
        std::copy(pv.begin(), pv.end(), v.begin());
        const gacal::SHParameters p = gacal::SHParameters::from_vector(v);
        p.validate();

        std::vector<gacal::SyntheticTest> recipe;
        auto add = [&](const std::string& text, gacal::TestKind kind) {
            const std::vector<double> f = split_numbers(text);
            if (f.size() != 5) throw gacal::ConfigError("test description needs 5 values: " + text);
            const double terminal = kind == gacal::TestKind::Oedometer ? f[3] : f[3] / 100.0;
            recipe.push_back({kind, {-f[0], -f[1], f[2]}, terminal, static_cast<std::size_t>(f[4])});
        };
        for (const auto& s : oe_specs) add(s, gacal::TestKind::Oedometer);
        for (const auto& s : td_specs) add(s, gacal::TestKind::Triaxial);

        gacal::io::LoadedInputs li;
        if (!like.empty()) {
            gacal::io::LoadedInputs base = gacal::io::load_inputs(like);
            li.domain = base.domain;
            li.ga = base.ga;
            li.input.weights = base.input.weights;
        } else {
            li.domain = default_domain();
        }
        li.input.n_oe = oe_specs.size();
        li.input.n_td = td_specs.size();
        li.input.n_step = run_n_step;
        li.tests = gacal::synthesize_tests(p, recipe, options);
        gacal::io::write_inputs(li, out_dir);
        std::cout << fmt::format("wrote {} OE and {} TD tests to {}\n", li.input.n_oe, li.input.n_td,
                                 out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
