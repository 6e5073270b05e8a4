#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gacal/errors.hpp"
#include "gacal/io_config.hpp"
#include "gacal/optimizer.hpp"
#include "temp_dir.hpp"

using namespace gacal;
namespace fs = std::filesystem;
using gacal::testing::TempDir;

namespace {

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// Minimal data set: one OE and one TD test, ids written explicitly by the caller.
void write_small_set(const fs::path& dir, const std::string& oe_data, const std::string& td_data,
                     const std::string& td_init = "0.2 0.2 0.66\n") {
    write_file(dir / "Input.txt", "1 1\n100\n1 1 1\nD.txt\nG.txt\nOEi.txt\nTDi.txt\nOEd.txt\nTDd.txt\n");
    write_file(dir / "D.txt",
               "phi_c 28 38\nh_s 500 5000\nn 0.15 0.45\ne_c0 0.8 1.2\nalpha 0.05 0.5\n"
               "beta 0.5 2.5\nlambda_d 0.52 0.65\nlambda_i 1.05 1.3\n");
    write_file(dir / "G.txt", "N_i 20\nP_dim 8\nN_ITER 3\nN_eli 2\nn_f 0.5\nmu_en 0.05\nmu_in 0.4\n");
    write_file(dir / "OEi.txt", "0.01 0.005 0.66\n");
    write_file(dir / "TDi.txt", td_init);
    write_file(dir / "OEd.txt", oe_data);
    write_file(dir / "TDd.txt", td_data);
}

const std::string kOe = "0.66 0.01 1\n0.64 0.2 1\n0.62 1.0 1\n";
const std::string kTd = "0 0 0 1\n2.5 0.3 0.3 1\n9.5 -0.4 0.5 1\n";

template <class F>
std::string parse_error_of(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("load the small set") {
    TempDir tmp;
    write_small_set(tmp.path(), kOe, kTd);
    const io::LoadedInputs li = io::load_inputs(tmp.path() / "Input.txt");
    REQUIRE(li.tests.size() == 2);
    CHECK(li.input.n_step == 100);
    CHECK(li.ga.population_size == 20);
    CHECK(li.ga.mutation_final == 0.05);
    CHECK(li.ga.mutation_initial == 0.4);
    CHECK(li.domain.lower[1] == 500.0);
    const TestCase& oe = li.tests[0];
    CHECK(oe.kind == TestKind::Oedometer);
    CHECK(oe.initial.T1 == -0.01);
    CHECK(oe.initial.T2 == -0.005);
    CHECK(oe.terminal == 0.62);
    const TestCase& td = li.tests[1];
    CHECK(td.kind == TestKind::Triaxial);
    REQUIRE(td.td_data.size() == 3);
    CHECK(td.td_data[2].eps_a == 9.5 / 100.0);
    CHECK(td.td_data[2].eps_a == doctest::Approx(0.095).epsilon(1e-15));
    CHECK(td.td_data[2].eps_v == -0.004);
    CHECK(td.terminal == td.td_data[2].eps_a);
    CHECK(li.warnings.empty());
}

TEST_CASE("records tolerate commas, tabs and comments") {
    TempDir tmp;
    write_small_set(tmp.path(), "# header\n0.66,0.01,1\n0.64\t0.2 1  # note\n\n0.62, 1.0, 1\n", kTd);
    const io::LoadedInputs li = io::load_inputs(tmp.path() / "Input.txt");
    CHECK(li.tests[0].oe_data.size() == 3);
}

TEST_CASE("ids group rows into tests") {
    TempDir tmp;
    write_small_set(tmp.path(), kOe, kTd);
    write_file(tmp.path() / "Input.txt",
               "2 1\n100\n1 1 1\nD.txt\nG.txt\nOEi.txt\nTDi.txt\nOEd.txt\nTDd.txt\n");
    write_file(tmp.path() / "OEi.txt", "0.01 0.005 0.66\n0.01 0.005 0.7\n");
    write_file(tmp.path() / "OEd.txt", "0.66 0.01 1\n0.62 1 1\n0.7 0.01 2\n0.68 0.2 2\n0.65 1 2\n");
    const io::LoadedInputs li = io::load_inputs(tmp.path() / "Input.txt");
    REQUIRE(li.tests.size() == 3);
    CHECK(li.tests[0].oe_data.size() == 2);
    CHECK(li.tests[1].oe_data.size() == 3);
    CHECK(li.tests[1].id == 2);
    CHECK(li.tests[1].initial.e == 0.7);
}

TEST_CASE("unloading branch is dropped with a warning") {
    TempDir tmp;
    write_small_set(tmp.path(), "0.66 0.01 1\n0.62 1.0 1\n0.625 0.5 1\n0.63 0.1 1\n", kTd);
    const io::LoadedInputs li = io::load_inputs(tmp.path() / "Input.txt");
    CHECK(li.tests[0].oe_data.size() == 2);
    REQUIRE(li.warnings.size() == 1);
    CHECK(li.warnings[0].find("2 point(s)") != std::string::npos);
}

TEST_CASE("malformed inputs name file and line") {
    TempDir tmp;
    const fs::path input = tmp.path() / "Input.txt";

    SUBCASE("TD_init row count") {
        write_small_set(tmp.path(), kOe, kTd, "0.2 0.2 0.66\n0.3 0.3 0.66\n");
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("TDi.txt:2") != std::string::npos);
        CHECK(msg.find("declares 1") != std::string::npos);
    }
    SUBCASE("ids not ascending") {
        write_small_set(tmp.path(), kOe, "0 0 0 1\n2 0.3 0.3 1\n1 0.1 0.1 0\n");
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("TDd.txt:3") != std::string::npos);
    }
    SUBCASE("missing test id") {
        write_small_set(tmp.path(), kOe, kTd);
        write_file(tmp.path() / "Input.txt",
                   "1 2\n100\n1 1 1\nD.txt\nG.txt\nOEi.txt\nTDi.txt\nOEd.txt\nTDd.txt\n");
        write_file(tmp.path() / "TDi.txt", "0.2 0.2 0.66\n0.3 0.3 0.66\n");
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("test id 2 has no data") != std::string::npos);
    }
    SUBCASE("P_dim") {
        write_small_set(tmp.path(), kOe, kTd);
        write_file(tmp.path() / "G.txt", "N_i 20\nP_dim 7\nN_ITER 3\nN_eli 2\nn_f 0.5\nmu_en 0.05\nmu_in 0.4\n");
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("G.txt:2") != std::string::npos);
    }
    SUBCASE("domain outside the model range") {
        write_small_set(tmp.path(), kOe, kTd);
        write_file(tmp.path() / "D.txt",
                   "phi_c 28 38\nh_s 500 5000\nn 0.15 0.45\ne_c0 0.8 1.2\nalpha 0.05 0.5\n"
                   "beta 0.5 2.5\nlambda_d 0.52 1.2\nlambda_i 1.05 1.3\n");
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("D.txt:1") != std::string::npos);
        CHECK(msg.find("lambda_d") != std::string::npos);
    }
    SUBCASE("wrong parameter name") {
        write_small_set(tmp.path(), kOe, kTd);
        write_file(tmp.path() / "D.txt",
                   "phi_c 28 38\nhs 500 5000\nn 0.15 0.45\ne_c0 0.8 1.2\nalpha 0.05 0.5\n"
                   "beta 0.5 2.5\nlambda_d 0.52 0.6\nlambda_i 1.05 1.3\n");
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("D.txt:2") != std::string::npos);
    }
    SUBCASE("non numeric field") {
        write_small_set(tmp.path(), "0.66 0.01 1\n0.64 abc 1\n0.62 1 1\n", kTd);
        const std::string msg = parse_error_of([&] { io::load_inputs(input); });
        CHECK(msg.find("OEd.txt:2") != std::string::npos);
    }
    SUBCASE("TD test without positive axial strain") {
        write_small_set(tmp.path(), kOe, "0 0 0 1\n");
        CHECK_FALSE(parse_error_of([&] { io::load_inputs(input); }).empty());
    }
}

TEST_CASE("missing files raise IoError") {
    TempDir tmp;
    CHECK_THROWS_AS(io::load_inputs(tmp.path() / "nope" / "Input.txt"), IoError);
    CHECK_THROWS_AS(io::load_inputs(tmp.path() / "Input.txt"), IoError);
    write_small_set(tmp.path(), kOe, kTd);
    fs::remove(tmp.path() / "TDd.txt");
    CHECK_THROWS_AS(io::load_inputs(tmp.path() / "Input.txt"), IoError);
}

TEST_CASE("write_inputs round trip") {
    TempDir tmp;
    const io::LoadedInputs first = io::load_inputs(fs::path(GACAL_TUTORIAL_DIR) / "Input.txt");
    io::write_inputs(first, tmp.path() / "a");
    const io::LoadedInputs second = io::load_inputs(tmp.path() / "a" / "Input.txt");
    io::write_inputs(second, tmp.path() / "b");
    const io::LoadedInputs third = io::load_inputs(tmp.path() / "b" / "Input.txt");

    CHECK(second.input.n_oe == first.input.n_oe);
    CHECK(second.input.n_step == first.input.n_step);
    CHECK(second.domain.lower == first.domain.lower);
    CHECK(second.domain.upper == first.domain.upper);
    CHECK(second.ga.population_size == first.ga.population_size);
    CHECK(second.ga.mutation_final == first.ga.mutation_final);
    REQUIRE(second.tests.size() == first.tests.size());
    for (std::size_t t = 0; t < first.tests.size(); ++t) {
        const TestCase& a = first.tests[t];
        const TestCase& b = second.tests[t];
        CHECK(a.initial.T1 == b.initial.T1);
        CHECK(a.initial.e == b.initial.e);
        REQUIRE(a.point_count() == b.point_count());
        for (std::size_t i = 0; i < a.oe_data.size(); ++i) {
            CHECK(a.oe_data[i].e == b.oe_data[i].e);
            CHECK(a.oe_data[i].sigma_v == b.oe_data[i].sigma_v);
        }
        for (std::size_t i = 0; i < a.td_data.size(); ++i) {
            CHECK(a.td_data[i].eps_a == b.td_data[i].eps_a);
            CHECK(a.td_data[i].eps_v == b.td_data[i].eps_v);
            CHECK(a.td_data[i].q == b.td_data[i].q);
        }
    }
    for (const char* name : {"Input.txt", "Domain_file.txt", "OE_data.txt", "TD_data.txt"})
        CHECK(read_file(tmp.path() / "a" / name) == read_file(tmp.path() / "b" / name));
    CHECK(third.tests.size() == first.tests.size());
}

TEST_CASE("outputs and manifest") {
    TempDir tmp;
    write_small_set(tmp.path(), kOe, kTd);
    const io::LoadedInputs li = io::load_inputs(tmp.path() / "Input.txt");
    RunOptions options;
    options.n_step = 20;
    std::vector<io::LogEntry> log;
    options.observer = [&](std::size_t index, const Population& pop, const HistoryRow&) {
        for (std::size_t i = 0; i < pop.size(); ++i) log.push_back({index, pop.rows[i], pop.costs[i].total});
    };
    GAConfig cfg = li.ga;
    cfg.seed = 4;
    const RunResult result = run(cfg, li.domain, li.tests, options);

    io::OutputBundle bundle;
    bundle.log = log;
    bundle.best = result.best;
    bundle.best_cost = result.best_cost;
    bundle.best_row = result.final_population.ranking.front();
    bundle.seed = result.seed;
    bundle.tests = li.tests;
    bundle.final_population = result.final_population.rows;
    bundle.n_step = options.n_step;
    const fs::path out = tmp.path() / "out";
    io::write_outputs(bundle, out);

    const io::Manifest m = io::read_manifest(out / io::kManifestFile);
    CHECK(m.n_oe == 1);
    CHECK(m.n_td == 1);
    CHECK(m.n_step == 20);
    CHECK(m.n_candidates == 20);
    CHECK(m.best_candidate == bundle.best_row + 1);
    REQUIRE(m.oe_points.size() == 1);
    CHECK(m.oe_points[0] == std::pair<int, std::size_t>{1, 3});
    CHECK(m.td_points[0] == std::pair<int, std::size_t>{1, 3});
    for (const io::ManifestFile& f : m.files) {
        INFO(f.name);
        CHECK(io::count_csv_rows(out / f.name) == f.rows);
    }
    REQUIRE(m.find(io::kOeCurvesFile) != nullptr);
    CHECK(m.find(io::kOeCurvesFile)->rows == 20 * 1 * 21);
    CHECK(m.find(io::kTdCurvesFile)->columns.size() == 7);
    CHECK(m.find("missing.csv") == nullptr);

    const ParameterVector best = io::read_best_fit(out / io::kBestFitFile);
    for (std::size_t j = 0; j < kParameterCount; ++j)
        CHECK(best[j] == result.final_population.rows[bundle.best_row][j]);

    const std::string log1 = read_file(out / io::kLogFile);
    CHECK(log1.find("# run seed=4 candidates=80") != std::string::npos);
    io::write_outputs(bundle, out);
    const std::string log2 = read_file(out / io::kLogFile);
    CHECK(log2.size() == 2 * log1.size());
}
