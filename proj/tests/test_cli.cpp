#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "greedy/experiment.hpp"
#include "greedy/pointprocess.hpp"
#include "greedy/solver.hpp"

using namespace greedy;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("greedy_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string dir() const { return path.string(); }
    std::string read(const std::string& name) const {
        std::ifstream is(path / name, std::ios::binary);
        REQUIRE(is);
        std::stringstream buf;
        buf << is.rdbuf();
        return buf.str();
    }
};

int run(const std::string& experiment, const std::string& config, const std::string& out_dir,
        bool force = false, std::vector<std::string> inputs = {}) {
    RunOptions options;
    options.out_dir = out_dir;
    options.force = force;
    options.inputs = std::move(inputs);
    std::ostringstream log, err;
    const int code = run_experiment(experiment, config, options, log, err);
    INFO(err.str());
    return code;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto kv = parse_config_text("a = 1\n# comment\nb = two # trailing\n\n  c=3\n");
    CHECK(kv.at("a") == "1");
    CHECK(kv.at("b") == "two");
    CHECK(kv.at("c") == "3");
    CHECK_THROWS_AS(parse_config_text("a = 1\na = 2\n"), configuration_error);
    CHECK_THROWS_AS(parse_config_text("nonsense line\n"), configuration_error);
    CHECK_THROWS_AS(parse_config_text("key =\n"), configuration_error);
}

TEST_CASE("unknown keys, missing keys and missing seed are validation errors") {
    TempDir tmp;
    CHECK(run("sample", "law = uniform:1:1\nell = 2\nseed = 1\nbogus = 1\n", tmp.dir()) ==
          kExitValidation);
    CHECK(run("sample", "law = uniform:1:1\nseed = 1\n", tmp.dir()) == kExitValidation);
    CHECK(run("sample", "law = uniform:1:1\nell = 2\n", tmp.dir()) == kExitValidation);
    CHECK(run("tail",
              "law = uniform:1:0.05\nvariant = path\nzeta_grid =\nell = 5\nreplicates = 200\nseed = 1\n",
              tmp.dir()) == kExitValidation);
    CHECK(run("", "law = uniform:1:1\n", tmp.dir()) == kExitValidation);
    CHECK(run("sample", "experiment = tail\nlaw = uniform:1:1\nell = 2\nseed = 1\n", tmp.dir()) ==
          kExitValidation);
}

TEST_CASE("capacity violations exit with the capacity code") {
    TempDir tmp;
    const std::string cfg =
        "law = uniform:1:5\nvariant = path\nzeta_grid = 0.1\nell = 10\nreplicates = 200\nseed = 1\n";
    CHECK(run("tail", cfg, tmp.dir()) == kExitCapacity);
    CHECK_FALSE(fs::exists(tmp.path / "tail.csv"));
}

TEST_CASE("sample writes a parseable deterministic configuration") {
    TempDir tmp;
    const std::string cfg = "law = uniform:1:0.4\nell = 3\nbeta = 0.5\nseed = 9\n";
    REQUIRE(run("sample", cfg, tmp.dir()) == kExitOk);
    const std::string first = tmp.read("sample.txt");
    const auto config = parse_configuration(first);
    CHECK(config.dimension == 2);
    CHECK(config.seed == 9);
    CHECK(config.window.hi[0] == 4.5);

    // append-never without --force, byte-identical with it
    CHECK(run("sample", cfg, tmp.dir()) == kExitIo);
    REQUIRE(run("sample", cfg, tmp.dir(), true) == kExitOk);
    CHECK(tmp.read("sample.txt") == first);

    const std::string manifest = tmp.read("manifest.json");
    CHECK(manifest.find("greedy-manifest-v1") != std::string::npos);
    CHECK(manifest.find("config_hash") != std::string::npos);
}

TEST_CASE("solve consumes a sampled configuration") {
    TempDir tmp;
    REQUIRE(run("sample", "law = uniform:1:0.4\nell = 3\nseed = 9\n", tmp.dir()) == kExitOk);
    const std::string input = (tmp.path / "sample.txt").string();

    TempDir out2;
    const std::string cfg = "input = " + input + "\nvariant = path\nbudget = 3\nseed = 1\n";
    REQUIRE(run("solve", cfg, out2.dir()) == kExitOk);
    const std::string solved = out2.read("solve.json");
    CHECK(solved.find("value_lower") != std::string::npos);
    CHECK(solved.find("witness_atoms") != std::string::npos);

    TempDir out3;
    const std::string animal_cfg = "input = " + input +
                                   "\nvariant = animal\nbudget = 2\nend = 1,0\ndelta = 1\nseed = 1\n";
    REQUIRE(run("solve", animal_cfg, out3.dir()) == kExitOk);

    TempDir out4;
    CHECK(run("solve", "input = /nonexistent/file\nvariant = path\nbudget = 3\nseed = 1\n",
              out4.dir()) == kExitIo);
}

TEST_CASE("experiment outputs are byte-identical across reruns and worker counts") {
    const std::string cfg =
        "law = uniform:1:0.05\nvariant = path\nmode = upper\nbeta = 0\n"
        "zeta_grid = 0.1,0.3\nell = 6\nreplicates = 400\nseed = 5\n";
    TempDir a, b;
    REQUIRE(run("tail", cfg, a.dir()) == kExitOk);
    REQUIRE(run("tail", cfg + "workers = 4\n", b.dir()) == kExitOk);
    CHECK(a.read("tail.csv") == b.read("tail.csv"));
}

TEST_CASE("emit-plotdata flattens reports and round-trips numbers") {
    TempDir src;
    const std::string cfg =
        "law = uniform:1:0.05\nvariant = path\nzeta_grid = 0.2\nell = 6\nreplicates = 300\nseed = 2\n";
    REQUIRE(run("tail", cfg, src.dir()) == kExitOk);
    const std::string tail_path = (src.path / "tail.csv").string();

    TempDir out;
    REQUIRE(run("emit-plotdata", "", out.dir(), false, {tail_path}) == kExitOk);
    const std::string plot = out.read("plotdata.csv");
    CHECK(plot.rfind("source,schema,row,field,value", 0) == 0);
    CHECK(plot.find("rate_hat") != std::string::npos);
    CHECK(plot.find("greedy-rate-table-v1") != std::string::npos);

    // original numeric tokens appear verbatim in the long format
    const std::string source = src.read("tail.csv");
    std::istringstream ss(source);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    std::getline(ss, line);
    std::istringstream row(line);
    std::string token;
    std::getline(row, token, ',');  // variant
    while (std::getline(row, token, ',')) CHECK(plot.find("," + token + "\n") != std::string::npos);

    TempDir empty_out;
    REQUIRE(run("emit-plotdata", "", empty_out.dir(), false, {}) == kExitOk);
    CHECK(empty_out.read("plotdata.csv") == "source,schema,row,field,value\n");

    TempDir bad_out;
    CHECK(run("emit-plotdata", "", bad_out.dir(), false, {"/nonexistent.csv"}) == kExitIo);
}

TEST_CASE("every estimation subcommand wires through to artifacts") {
    {
        TempDir tmp;
        const std::string cfg =
            "law = uniform:1:0.05\nvariant = path\nbeta_grid = 0,0.4\nell_grid = 3,6\n"
            "replicates = 200\nseed = 3\n";
        REQUIRE(run("scan-lln", cfg, tmp.dir()) == kExitOk);
        const std::string csv = tmp.read("lln.csv");
        CHECK(csv.find("greedy-lln-table-v1") != std::string::npos);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // schema + header + 4 rows
    }
    {
        TempDir tmp;
        const std::string cfg =
            "law = uniform:1:0.05\nvariant = path\nmode = lower\nbeta_grid = 0\n"
            "zeta_grid = 0.05,0.1\nell_grid = 4,6\nreplicates = 200\nseed = 3\n";
        REQUIRE(run("rate-table", cfg, tmp.dir()) == kExitOk);
        const std::string csv = tmp.read("rate_table.csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    }
    {
        TempDir tmp;
        const std::string cfg =
            "law = uniform:1:0.05\nbeta = 0.5\nzeta = 0.1\ndelta = 1\npairs = 3+3,3+6\n"
            "replicates = 200\nseed = 3\n";
        REQUIRE(run("fekete", cfg, tmp.dir()) == kExitOk);
        CHECK(tmp.read("fekete.csv").find("greedy-fekete-table-v1") != std::string::npos);
    }
    {
        TempDir tmp;
        const std::string cfg =
            "law = uniform:1:0.08\nkind = unpen\nell = 5\nreplicates = 500\nseed = 3\n";
        REQUIRE(run("concentration", cfg, tmp.dir()) == kExitOk);
        CHECK(tmp.read("concentration.json").find("concentration_unpen") != std::string::npos);
    }
    {
        TempDir tmp;
        const std::string cfg =
            "law = dirac:1:0.05\nkind = pen\nq = 0.5\nalpha = 1\nell = 5\nreplicates = 500\nseed = 3\n";
        REQUIRE(run("concentration", cfg, tmp.dir()) == kExitOk);
        CHECK(tmp.read("concentration.json").find("concentration_pen") != std::string::npos);
    }
    {
        TempDir tmp;
        const std::string cfg =
            "law = uniform:1:0.045\nheavy_law = pareto:2:0.35:0.045\ncontrol_law = uniform:1:0.045\n"
            "zeta = 0.4\nell_grid = 4,6\nreplicates = 300\nseed = 3\n";
        REQUIRE(run("counterexample", cfg, tmp.dir()) == kExitOk);
        const std::string csv = tmp.read("counterexample.csv");
        CHECK(csv.find("pareto:2") != std::string::npos);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // note + schema + header + 4 rows
    }
}

TEST_CASE("solver cap honors the environment override") {
    CHECK(solver_atom_cap() == kDefaultAtomCap);
    ::setenv("GREEDY_FIELDS_CAP", "40", 1);
    CHECK(solver_atom_cap() == 40);
    ::unsetenv("GREEDY_FIELDS_CAP");
    CHECK(solver_atom_cap() == kDefaultAtomCap);
}
