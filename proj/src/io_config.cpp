#include "gacal/io_config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gacal/errors.hpp"

namespace gacal::io {

namespace fs = std::filesystem;

namespace {

struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct TextFile {
    std::string name;  ///< as shown in messages
    std::vector<Record> records;
    std::size_t last_line = 0;
};

TextFile read_records(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    TextFile file{path.string(), {}, 0};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::replace(line.begin(), line.end(), '\t', ' ');
        std::istringstream tokens(line);
        Record r{number, {}};
        for (std::string t; tokens >> t;) r.fields.push_back(t);
        if (!r.fields.empty()) file.records.push_back(std::move(r));
    }
    file.last_line = number;
    return file;
}

[[noreturn]] void fail(const TextFile& f, std::size_t line, const std::string& what) {
    throw ParseError(f.name, line, what);
}

double to_double(const TextFile& f, const Record& r, std::size_t i, const char* schema) {
    const std::string& s = r.fields[i];
    double value = 0.0;
    const char* begin = s.data();
    if (!s.empty() && s.front() == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
        fail(f, r.line, fmt::format("field {} '{}' is not a number; expected {}", i + 1, s, schema));
    return value;
}

long long to_integer(const TextFile& f, const Record& r, std::size_t i, const char* schema) {
    const double v = to_double(f, r, i, schema);
    if (v != std::floor(v) || std::abs(v) > 1e15)
        fail(f, r.line, fmt::format("field {} '{}' must be an integer; expected {}", i + 1,
                                    r.fields[i], schema));
    return static_cast<long long>(v);
}

std::size_t to_count(const TextFile& f, const Record& r, std::size_t i, const char* schema) {
    const long long v = to_integer(f, r, i, schema);
    if (v < 0) fail(f, r.line, fmt::format("field {} must be non-negative; expected {}", i + 1, schema));
    return static_cast<std::size_t>(v);
}

void expect_fields(const TextFile& f, const Record& r, std::size_t n, const char* schema) {
    if (r.fields.size() != n)
        fail(f, r.line, fmt::format("expected {} fields ({}), found {}", n, schema, r.fields.size()));
}

const Record& record_at(const TextFile& f, std::size_t i, const char* schema) {
    if (i >= f.records.size())
        fail(f, f.last_line, fmt::format("missing record {}: expected {}", i + 1, schema));
    return f.records[i];
}

RunInput parse_input(const TextFile& f) {
    static constexpr const char* kCounts = "n_OE n_TD";
    static constexpr const char* kSteps = "n_Step";
    static constexpr const char* kWeights = "w1 w2 w3";
    RunInput in;
    const Record& counts = record_at(f, 0, kCounts);
    expect_fields(f, counts, 2, kCounts);
    in.n_oe = to_count(f, counts, 0, kCounts);
    in.n_td = to_count(f, counts, 1, kCounts);
    if (in.n_oe + in.n_td == 0) fail(f, counts.line, "at least one OE or TD test is required");

    const Record& steps = record_at(f, 1, kSteps);
    expect_fields(f, steps, 1, kSteps);
    in.n_step = to_count(f, steps, 0, kSteps);
    if (in.n_step < 1) fail(f, steps.line, "n_Step must be at least 1");

    const Record& weights = record_at(f, 2, kWeights);
    expect_fields(f, weights, 3, kWeights);
    for (std::size_t i = 0; i < 3; ++i) {
        in.weights[i] = to_double(f, weights, i, kWeights);
        if (in.weights[i] < 0.0) fail(f, weights.line, "weights must be non-negative");
    }

    static constexpr std::array<const char*, 6> kRoles = {
        "Domain file name", "GA setup file name", "OE init file name",
        "TD init file name", "OE data file name", "TD data file name"};
    for (std::size_t i = 0; i < 6; ++i) {
        const Record& r = record_at(f, 3 + i, kRoles[i]);
        expect_fields(f, r, 1, kRoles[i]);
        in.files[i] = r.fields[0];
    }
    if (f.records.size() > 9) fail(f, f.records[9].line, "unexpected extra record");
    return in;
}

SearchDomain parse_domain(const TextFile& f) {
    static constexpr const char* kSchema = "name min max";
    if (f.records.size() != kParameterCount)
        fail(f, f.records.empty() ? f.last_line : f.records.back().line,
             fmt::format("expected {} parameter ranges ({}), found {}", kParameterCount, kSchema,
                         f.records.size()));
    SearchDomain dom;
    for (std::size_t j = 0; j < kParameterCount; ++j) {
        const Record& r = f.records[j];
        expect_fields(f, r, 3, kSchema);
        if (r.fields[0] != kParameterNames[j])
            fail(f, r.line, fmt::format("expected parameter '{}', found '{}'", kParameterNames[j],
                                        r.fields[0]));
        dom.lower[j] = to_double(f, r, 1, kSchema);
        dom.upper[j] = to_double(f, r, 2, kSchema);
    }
    try {
        dom.validate();
    } catch (const ConfigError& e) {
        fail(f, f.records.front().line, e.what());
    }
    return dom;
}

constexpr std::array<const char*, 7> kGaKeys = {"N_i", "P_dim", "N_ITER", "N_eli",
                                                "n_f", "mu_en", "mu_in"};

GAConfig parse_ga_setup(const TextFile& f) {
    static constexpr const char* kSchema = "key value";
    GAConfig cfg;
    for (std::size_t k = 0; k < kGaKeys.size(); ++k) {
        const Record& r = record_at(f, k, kGaKeys[k]);
        expect_fields(f, r, 2, kSchema);
        if (r.fields[0] != kGaKeys[k])
            fail(f, r.line, fmt::format("expected key '{}', found '{}'", kGaKeys[k], r.fields[0]));
        switch (k) {
            case 0: cfg.population_size = to_count(f, r, 1, kSchema); break;
            case 1:
                cfg.dimension = to_count(f, r, 1, kSchema);
                if (cfg.dimension != kParameterCount)
                    fail(f, r.line, fmt::format("P_dim must be {} for the sand model", kParameterCount));
                break;
            case 2: cfg.iterations = to_count(f, r, 1, kSchema); break;
            case 3: cfg.elites = to_count(f, r, 1, kSchema); break;
            case 4: cfg.mating_fraction = to_double(f, r, 1, kSchema); break;
            case 5: cfg.mutation_final = to_double(f, r, 1, kSchema); break;
            case 6: cfg.mutation_initial = to_double(f, r, 1, kSchema); break;
        }
    }
    if (f.records.size() > kGaKeys.size())
        fail(f, f.records[kGaKeys.size()].line, "unexpected extra record");
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        fail(f, f.records.front().line, e.what());
    }
    return cfg;
}

std::vector<SoilState> parse_init(const TextFile& f, std::size_t expected) {
    static constexpr const char* kSchema = "T1 T2 e (stresses in MPa, compression positive)";
    if (f.records.size() != expected)
        fail(f, f.records.empty() ? f.last_line : f.records.back().line,
             fmt::format("Input.txt declares {} tests but {} initial conditions were found",
                         expected, f.records.size()));
    std::vector<SoilState> out;
    for (const Record& r : f.records) {
        expect_fields(f, r, 3, kSchema);
        const SoilState s{-to_double(f, r, 0, kSchema), -to_double(f, r, 1, kSchema),
                          to_double(f, r, 2, kSchema)};
        if (!(s.trace() < 0.0)) fail(f, r.line, "initial stress must be compressive (T1 + 2 T2 > 0)");
        if (!(s.e > 0.0)) fail(f, r.line, "initial void ratio must be positive");
        out.push_back(s);
    }
    return out;
}

// Groups rows by their trailing id column; ids must be ascending and cover 1..expected.
template <class Point, class Convert>
std::vector<std::vector<Point>> parse_grouped(const TextFile& f, std::size_t expected,
                                              std::size_t columns, const char* schema,
                                              std::vector<std::size_t>& first_line, Convert convert) {
    std::vector<std::vector<Point>> groups(expected);
    first_line.assign(expected, 0);
    long long previous = 0;
    for (const Record& r : f.records) {
        expect_fields(f, r, columns, schema);
        const long long id = to_integer(f, r, columns - 1, schema);
        if (id < previous) fail(f, r.line, "test ids must be in ascending order");
        if (id < 1 || static_cast<std::size_t>(id) > expected)
            fail(f, r.line, fmt::format("test id {} outside 1..{} declared in Input.txt", id, expected));
        previous = id;
        auto& g = groups[static_cast<std::size_t>(id - 1)];
        if (g.empty()) first_line[static_cast<std::size_t>(id - 1)] = r.line;
        g.push_back(convert(r));
    }
    for (std::size_t k = 0; k < expected; ++k)
        if (groups[k].empty())
            fail(f, f.last_line,
                 fmt::format("Input.txt declares {} tests but test id {} has no data", expected, k + 1));
    return groups;
}

}  // namespace

LoadedInputs load_inputs(const fs::path& input_file) {
    const fs::path dir = input_file.parent_path();
    if (!dir.empty() && !fs::is_directory(dir))
        throw IoError("data folder '" + dir.string() + "' does not exist");
    if (!fs::exists(input_file)) throw IoError("input file '" + input_file.string() + "' does not exist");

    LoadedInputs li;
    li.directory = dir;
    li.input = parse_input(read_records(input_file));
    auto open = [&](InputFile which) {
        const fs::path p = dir / li.input.file(which);
        if (!fs::exists(p)) throw IoError("file '" + p.string() + "' named in Input.txt does not exist");
        return read_records(p);
    };

    const TextFile domain = open(InputFile::Domain);
    li.domain = parse_domain(domain);
    li.ga = parse_ga_setup(open(InputFile::GaSetup));

    const TextFile oe_init_file = open(InputFile::OeInit);
    const TextFile td_init_file = open(InputFile::TdInit);
    const std::vector<SoilState> oe_init = parse_init(oe_init_file, li.input.n_oe);
    const std::vector<SoilState> td_init = parse_init(td_init_file, li.input.n_td);

    const TextFile oe_file = open(InputFile::OeData);
    static constexpr const char* kOeSchema = "e sigma_v[MPa] id";
    std::vector<std::size_t> oe_lines;
    auto oe_groups = parse_grouped<OePoint>(oe_file, li.input.n_oe, 3, kOeSchema, oe_lines,
                                            [&](const Record& r) {
                                                return OePoint{to_double(oe_file, r, 0, kOeSchema),
                                                               to_double(oe_file, r, 1, kOeSchema)};
                                            });
    const TextFile td_file = open(InputFile::TdData);
    static constexpr const char* kTdSchema = "eps_a[%] eps_v[%] q[MPa] id";
    std::vector<std::size_t> td_lines;
    auto td_groups = parse_grouped<TdPoint>(td_file, li.input.n_td, 4, kTdSchema, td_lines,
                                            [&](const Record& r) {
                                                return TdPoint{to_double(td_file, r, 0, kTdSchema) / 100.0,
                                                               to_double(td_file, r, 1, kTdSchema) / 100.0,
                                                               to_double(td_file, r, 2, kTdSchema)};
                                            });

    for (std::size_t k = 0; k < li.input.n_oe; ++k) {
        auto& pts = oe_groups[k];
        const auto min_it = std::min_element(pts.begin(), pts.end(),
                                             [](const OePoint& a, const OePoint& b) { return a.e < b.e; });
        const auto dropped = static_cast<std::size_t>(std::distance(min_it, pts.end()) - 1);
        if (dropped > 0) {
            li.warnings.push_back(fmt::format(
                "{}: OE test {}: {} point(s) after the smallest void ratio ignored (unloading)",
                oe_file.name, k + 1, dropped));
            pts.erase(min_it + 1, pts.end());
        }
        TestCase t = make_oe_test(static_cast<int>(k + 1), oe_init[k], std::move(pts));
        try {
            (void)oe_scaling(t);
        } catch (const InputDataError& e) {
            fail(oe_file, oe_lines[k], e.what());
        }
        li.tests.push_back(std::move(t));
    }
    for (std::size_t k = 0; k < li.input.n_td; ++k) {
        TestCase t = make_td_test(static_cast<int>(k + 1), td_init[k], std::move(td_groups[k]));
        try {
            (void)td_scaling(t);
        } catch (const InputDataError& e) {
            fail(td_file, td_lines[k], e.what());
        }
        li.tests.push_back(std::move(t));
    }
    return li;
}

namespace {

std::ofstream open_out(const fs::path& p, std::ios::openmode mode = std::ios::out | std::ios::trunc) {
    std::ofstream out(p, mode);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& p) {
    out.flush();
    if (!out) throw IoError("error while writing " + p.string());
}

std::string num(double v) { return fmt::format("{}", v); }  // shortest round-trip form

// Shortest percent text that reads back (after division by 100) as `fraction`.
std::string percent(double fraction) {
    double v = fraction * 100.0;
    std::string best;
    double down = v, up = v;
    for (int k = 0; k < 8; ++k) {
        for (double c : {down, up}) {
            if (c / 100.0 != fraction) continue;
            std::string text = num(c);
            if (best.empty() || text.size() < best.size()) best = std::move(text);
        }
        down = std::nextafter(down, -INFINITY);
        up = std::nextafter(up, INFINITY);
    }
    return best.empty() ? num(v) : best;
}

}  // namespace

void write_inputs(const LoadedInputs& li, const fs::path& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());
    const RunInput& in = li.input;

    {
        const fs::path p = directory / "Input.txt";
        auto out = open_out(p);
        out << "# n_OE n_TD\n" << in.n_oe << ' ' << in.n_td << '\n';
        out << "# n_Step\n" << in.n_step << '\n';
        out << "# w1 w2 w3\n" << num(in.weights[0]) << ' ' << num(in.weights[1]) << ' '
            << num(in.weights[2]) << '\n';
        out << "# Domain, GA setup, OE init, TD init, OE data, TD data\n";
        for (const auto& f : in.files) out << f << '\n';
        finish(out, p);
    }
    {
        const fs::path p = directory / in.file(InputFile::Domain);
        auto out = open_out(p);
        out << "# name min max   (phi_c in deg, h_s in MPa)\n";
        for (std::size_t j = 0; j < kParameterCount; ++j)
            out << kParameterNames[j] << ' ' << num(li.domain.lower[j]) << ' '
                << num(li.domain.upper[j]) << '\n';
        finish(out, p);
    }
    {
        const fs::path p = directory / in.file(InputFile::GaSetup);
        auto out = open_out(p);
        const GAConfig& g = li.ga;
        out << "# key value\n";
        out << "N_i " << g.population_size << '\n' << "P_dim " << g.dimension << '\n'
            << "N_ITER " << g.iterations << '\n' << "N_eli " << g.elites << '\n'
            << "n_f " << num(g.mating_fraction) << '\n' << "mu_en " << num(g.mutation_final) << '\n'
            << "mu_in " << num(g.mutation_initial) << '\n';
        finish(out, p);
    }
    auto write_init = [&](InputFile which, TestKind kind) {
        const fs::path p = directory / in.file(which);
        auto out = open_out(p);
        out << "# T1[MPa] T2[MPa] e   (compression positive), one row per test\n";
        for (const TestCase& t : li.tests)
            if (t.kind == kind)
                out << num(-t.initial.T1) << ' ' << num(-t.initial.T2) << ' ' << num(t.initial.e) << '\n';
        finish(out, p);
    };
    write_init(InputFile::OeInit, TestKind::Oedometer);
    write_init(InputFile::TdInit, TestKind::Triaxial);
    {
        const fs::path p = directory / in.file(InputFile::OeData);
        auto out = open_out(p);
        out << "# e sigma_v[MPa] id\n";
        for (const TestCase& t : li.tests)
            if (t.kind == TestKind::Oedometer)
                for (const OePoint& pt : t.oe_data)
                    out << num(pt.e) << ' ' << num(pt.sigma_v) << ' ' << t.id << '\n';
        finish(out, p);
    }
    {
        const fs::path p = directory / in.file(InputFile::TdData);
        auto out = open_out(p);
        out << "# eps_a[%] eps_v[%] q[MPa] id   (strains compression positive)\n";
        for (const TestCase& t : li.tests)
            if (t.kind == TestKind::Triaxial)
                for (const TdPoint& pt : t.td_data)
                    out << percent(pt.eps_a) << ' ' << percent(pt.eps_v) << ' ' << num(pt.q) << ' '
                        << t.id << '\n';
        finish(out, p);
    }
}

void write_outputs(const OutputBundle& b, const fs::path& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec || !fs::is_directory(directory))
        throw IoError("cannot create output directory " + directory.string());

    {
        const fs::path p = directory / kLogFile;
        auto out = open_out(p, std::ios::out | std::ios::app);
        out << fmt::format("# run seed={} candidates={}\n", b.seed, b.log.size());
        out << "# phi_c h_s n e_c0 alpha beta lambda_d lambda_i cost iteration\n";
        for (const LogEntry& e : b.log) {
            for (double v : e.parameters) out << num(v) << ' ';
            out << num(e.cost) << ' ' << e.iteration << '\n';
        }
        finish(out, p);
    }
    {
        const fs::path p = directory / kBestFitFile;
        auto out = open_out(p);
        out << fmt::format("# best fit: cost {} (delta_OE {}, delta_TD_q {}, delta_TD_ev {})\n",
                           num(b.best_cost.total), num(b.best_cost.delta[0]),
                           num(b.best_cost.delta[1]), num(b.best_cost.delta[2]));
        out << "# name value unit\n";
        for (std::size_t j = 0; j < kParameterCount; ++j)
            out << kParameterNames[j] << ' ' << num(b.best[j]) << ' ' << kParameterUnits[j] << '\n';
        finish(out, p);
    }

    std::size_t n_oe = 0, n_td = 0, oe_rows = 0, td_rows = 0;
    {
        const fs::path p_oe = directory / kOePointsFile;
        const fs::path p_td = directory / kTdPointsFile;
        auto oe = open_out(p_oe);
        auto td = open_out(p_td);
        oe << "test,sigma_v_MPa,e\n";
        td << "test,eps_a_pct,eps_v_pct,q_MPa\n";
        for (const TestCase& t : b.tests) {
            if (t.kind == TestKind::Oedometer) {
                ++n_oe;
                for (const OePoint& pt : t.oe_data) {
                    oe << t.id << ',' << num(pt.sigma_v) << ',' << num(pt.e) << '\n';
                    ++oe_rows;
                }
            } else {
                ++n_td;
                for (const TdPoint& pt : t.td_data) {
                    td << t.id << ',' << num(pt.eps_a * 100.0) << ',' << num(pt.eps_v * 100.0) << ','
                       << num(pt.q) << '\n';
                    ++td_rows;
                }
            }
        }
        finish(oe, p_oe);
        finish(td, p_td);
    }

    const std::size_t points_per_curve = b.n_step + 1;
    {
        const fs::path p_oe = directory / kOeCurvesFile;
        const fs::path p_td = directory / kTdCurvesFile;
        auto oe = open_out(p_oe);
        auto td = open_out(p_td);
        oe << "candidate,test,step,sigma_v_MPa,e,feasible\n";
        td << "candidate,test,step,eps_a_pct,eps_v_pct,q_MPa,feasible\n";
        for (std::size_t c = 0; c < b.final_population.size(); ++c) {
            const SHParameters p = SHParameters::from_vector(b.final_population[c]);
            bool valid = true;
            try {
                p.validate();
            } catch (const ParameterDomainError&) {
                valid = false;
            }
            for (const TestCase& t : b.tests) {
                ResponseCurve curve;
                if (valid) curve = integrate(p, t, b.n_step);
                const int feasible = valid && curve.feasible ? 1 : 0;
                for (std::size_t k = 0; k < points_per_curve; ++k) {
                    if (t.kind == TestKind::Oedometer) {
                        oe << c + 1 << ',' << t.id << ',' << k << ',';
                        if (k < curve.oe.size())
                            oe << num(curve.oe[k].sigma_v) << ',' << num(curve.oe[k].e);
                        else
                            oe << "nan,nan";
                        oe << ',' << feasible << '\n';
                    } else {
                        td << c + 1 << ',' << t.id << ',' << k << ',';
                        if (k < curve.td.size())
                            td << num(curve.td[k].eps_a * 100.0) << ',' << num(curve.td[k].eps_v * 100.0)
                               << ',' << num(curve.td[k].q);
                        else
                            td << "nan,nan,nan";
                        td << ',' << feasible << '\n';
                    }
                }
            }
        }
        finish(oe, p_oe);
        finish(td, p_td);
    }

    {
        const fs::path p = directory / kManifestFile;
        auto out = open_out(p);
        const std::size_t n_cand = b.final_population.size();
        out << "# gacal output manifest\n";
        out << "format 1\n";
        out << "n_oe " << n_oe << '\n' << "n_td " << n_td << '\n' << "n_step " << b.n_step << '\n';
        out << "n_candidates " << n_cand << '\n' << "best_candidate " << b.best_row + 1 << '\n';
        for (const TestCase& t : b.tests)
            out << (t.kind == TestKind::Oedometer ? "oe_points " : "td_points ") << t.id << ' '
                << t.point_count() << '\n';
        out << "# file name rows columns (curve rows ordered candidate, test, step)\n";
        out << "file " << kOePointsFile << ' ' << oe_rows << " test,sigma_v_MPa,e\n";
        out << "file " << kTdPointsFile << ' ' << td_rows << " test,eps_a_pct,eps_v_pct,q_MPa\n";
        out << "file " << kOeCurvesFile << ' ' << n_cand * n_oe * points_per_curve
            << " candidate,test,step,sigma_v_MPa,e,feasible\n";
        out << "file " << kTdCurvesFile << ' ' << n_cand * n_td * points_per_curve
            << " candidate,test,step,eps_a_pct,eps_v_pct,q_MPa,feasible\n";
        finish(out, p);
    }
}

const ManifestFile* Manifest::find(const std::string& name) const {
    for (const ManifestFile& f : files)
        if (f.name == name) return &f;
    return nullptr;
}

Manifest read_manifest(const fs::path& path) {
    const TextFile f = read_records(path);
    Manifest m;
    for (const Record& r : f.records) {
        const std::string& key = r.fields[0];
        auto need = [&](std::size_t n) {
            if (r.fields.size() != n) fail(f, r.line, fmt::format("'{}' expects {} fields", key, n));
        };
        if (key == "format") {
            need(2);
        } else if (key == "n_oe" || key == "n_td" || key == "n_step" || key == "n_candidates" ||
                   key == "best_candidate") {
            need(2);
            const std::size_t v = to_count(f, r, 1, "key count");
            if (key == "n_oe") m.n_oe = v;
            else if (key == "n_td") m.n_td = v;
            else if (key == "n_step") m.n_step = v;
            else if (key == "n_candidates") m.n_candidates = v;
            else m.best_candidate = v;
        } else if (key == "oe_points" || key == "td_points") {
            need(3);
            auto& target = key == "oe_points" ? m.oe_points : m.td_points;
            target.emplace_back(static_cast<int>(to_integer(f, r, 1, "key id count")),
                                to_count(f, r, 2, "key id count"));
        } else if (key == "file") {
            // columns were comma separated and have been split into fields
            if (r.fields.size() < 4) fail(f, r.line, "'file' expects name rows columns");
            ManifestFile mf{r.fields[1], to_count(f, r, 2, "file name rows columns"), {}};
            mf.columns.assign(r.fields.begin() + 3, r.fields.end());
            m.files.push_back(std::move(mf));
        } else {
            fail(f, r.line, "unknown manifest key '" + key + "'");
        }
    }
    return m;
}

ParameterVector read_best_fit(const fs::path& path) {
    const TextFile f = read_records(path);
    static constexpr const char* kSchema = "name value unit";
    if (f.records.size() != kParameterCount)
        fail(f, f.last_line, fmt::format("expected {} named values", kParameterCount));
    ParameterVector v{};
    for (std::size_t j = 0; j < kParameterCount; ++j) {
        const Record& r = f.records[j];
        expect_fields(f, r, 3, kSchema);
        if (r.fields[0] != kParameterNames[j])
            fail(f, r.line, fmt::format("expected '{}'", kParameterNames[j]));
        v[j] = to_double(f, r, 1, kSchema);
    }
    return v;
}

std::size_t count_csv_rows(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::size_t rows = 0;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        ++rows;
    }
    return rows;
}

}  // namespace gacal::io
