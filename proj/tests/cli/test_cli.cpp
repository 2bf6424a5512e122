#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergm/report.hpp"

namespace fs = std::filesystem;
using ergm::json;
using ergm::load_json;

namespace {

const std::string kTool = ERGMSEL_PATH;
const std::string kData = TEST_DATA_DIR;

int run(const std::string& args) {
    const std::string cmd = kTool + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("motifs subcommand reproduces the benchmark census") {
    ScratchDir dir("ergmsel_motifs");
    const auto out = dir.path / "motifs.json";
    REQUIRE(run("motifs --network " + kData + "/florentine_marriage.edges --out " +
                out.string()) == 0);
    const json j = load_json(out.string());
    CHECK(j["edges"] == 20);
    CHECK(j["two_stars"]["paper"] == 94);
    CHECK(j["triangles"]["paper"] == 6);
    CHECK(j["network"]["node_labels"][11] == "Pucci");
}

TEST_CASE("fit subcommand emits a fit record") {
    ScratchDir dir("ergmsel_fit");
    const auto out = dir.path / "fit.json";
    REQUIRE(run("fit --network " + kData + "/florentine_marriage.edges --terms edges "
                "--method mple --out " + out.string()) == 0);
    const json j = load_json(out.string());
    CHECK(j["method"] == "mple");
    CHECK(j["flags"][0] == "finite");
    CHECK(std::abs(j["aic"].get<double>() - 110.135) < 1e-3);
}

TEST_CASE("simulate writes draws and a statistics csv") {
    ScratchDir dir("ergmsel_sim");
    const auto model = dir.path / "model.json";
    {
        std::ofstream f(model);
        f << R"({"terms": ["edges"], "theta": [-1.6094379124341003]})";
    }
    const auto out = dir.path / "draws";
    REQUIRE(run("simulate --model " + model.string() +
                " --nodes 16 --draws 5 --seed 9 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "draw_1.edges"));
    CHECK(fs::exists(out / "draw_5.edges"));
    const std::string csv = slurp(out / "statistics.csv");
    CHECK(csv.find("draw,edges,") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);   // header + 5 rows
}

TEST_CASE("malformed input exits 1 with a line diagnostic") {
    ScratchDir dir("ergmsel_bad");
    const auto bad = dir.path / "bad.edges";
    {
        std::ofstream f(bad);
        f << "a b\na b c\n";
    }
    CHECK(run("motifs --network " + bad.string()) == 1);
    CHECK(run("motifs --network " + (dir.path / "missing.edges").string()) == 1);
}

TEST_CASE("missing seed is a config error") {
    CHECK(run("select --network " + kData + "/florentine_marriage.edges") == 3);
}

TEST_CASE("bound subcommand reports the marriage bounds") {
    ScratchDir dir("ergmsel_bound");
    const auto out = dir.path / "bounds.json";
    REQUIRE(run("bound --network " + kData + "/florentine_marriage.edges --out " +
                out.string()) == 0);
    const json j = load_json(out.string());
    CHECK(std::abs(j["bounds"]["kstar"].get<int>() - 5) <= 2);
    CHECK(std::abs(j["bounds"]["esp"].get<int>() - 1) <= 2);
}

TEST_CASE("screen subcommand flags the blow-up model") {
    ScratchDir dir("ergmsel_screen");
    const auto models = dir.path / "models";
    fs::create_directories(models);
    {
        std::ofstream f(models / "null.json");
        f << R"({"terms": ["edges"], "theta": [-1.6094379124341003]})";
    }
    {
        std::ofstream f(models / "blowup.json");
        f << R"({"terms": ["edges", "triangle"], "theta": [-1.6094379124341003, 5.0]})";
    }
    const auto out = dir.path / "screening.json";
    REQUIRE(run("screen --network " + kData + "/florentine_marriage.edges --models " +
                models.string() + " --draws 40 --seed 11 --out " + out.string()) == 0);
    const json j = load_json(out.string());
    CHECK(j["n_models"] == 2);
    CHECK(j["n_degenerate"] == 1);
    CHECK(j["n_survivors"] == 1);
}

TEST_CASE("pipeline produces every artifact deterministically") {
    ScratchDir dir("ergmsel_pipe");
    const auto out1 = dir.path / "run1";
    const auto out2 = dir.path / "run2";
    const std::string args = "pipeline --network " + kData +
                             "/florentine_marriage.edges --refits 10 --draws 40 "
                             "--bridge-draws 150 --seed 2026 --threads 2 --out ";
    REQUIRE(run(args + out1.string()) == 0);
    REQUIRE(run(args + out2.string()) == 0);

    for (const char* name : {"bounds.json", "candidates.json", "selection.json",
                             "screening.json", "motifs.json", "panels.svg"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(out1 / name));
        CHECK(slurp(out1 / name) == slurp(out2 / name));
    }
    CHECK(fs::exists(out1 / "draw_1.edges"));

    const json sel = load_json((out1 / "selection.json").string());
    const long long survivors = sel["survivors"].get<long long>();
    CHECK(sel["model_space"].get<long long>() == survivors * (survivors + 1) / 2);
    const json scr = load_json((out1 / "screening.json").string());
    long long degenerate = 0, survived = 0;
    for (const auto& m : scr["models"]) {
        degenerate += m["degenerate"].get<bool>();
        survived += m["survived"].get<bool>();
    }
    CHECK(survived == scr["n_survivors"].get<long long>());
    CHECK(degenerate == scr["n_degenerate"].get<long long>());
}

TEST_CASE("report subcommand renders tables") {
    ScratchDir dir("ergmsel_report");
    const auto out = dir.path / "motifs.json";
    REQUIRE(run("motifs --network " + kData + "/florentine_marriage.edges --out " +
                out.string()) == 0);
    CHECK(run("report --in " + dir.path.string()) == 0);
    CHECK(run("report --in " + (dir.path / "empty").string()) == 3);
}
