#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "ginv/cli.hpp"
#include "ginv/decomp.hpp"
#include "ginv/matrix_file.hpp"
#include "helpers.hpp"

using namespace ginv;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result ginv_run(std::vector<std::string> args) {
    args.insert(args.begin(), "ginv");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("ginv_cli_" + std::to_string(counter_++))) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& text = {}) const {
        const fs::path p = path_ / name;
        if (!text.empty()) std::ofstream(p) << text;
        return p.string();
    }
    std::string matrix(const std::string& name, const ComplexMatrix& m) const {
        io::write_matrix(path_ / name, m);
        return (path_ / name).string();
    }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

const char* kNilpotent2 = "0,1\n0,0\n";

}  // namespace

TEST_CASE("index") {
    TempDir d;
    CHECK(ginv_run({"index", d.matrix("ex.csv", fixtures::example())}).out == "4\n");
    CHECK(ginv_run({"index", d.matrix("i.json", ComplexMatrix::identity(3))}).out == "0\n");
    const Result r = ginv_run({"index", d.file("n.csv", kNilpotent2)});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");
}

TEST_CASE("compute writes the inverse") {
    TempDir d;
    const std::string ex = d.matrix("ex.csv", fixtures::example());
    const std::string out = d.file("x.csv");
    CHECK(ginv_run({"compute", ex, "--kind", "mwc", "--m", "1", "-o", out}).code == 0);
    helpers::check_close(io::read_matrix(out), fixtures::example_mwc1(), 1e-10);

    const Result id = ginv_run({"compute", d.matrix("i.csv", ComplexMatrix::identity(3)), "--kind", "mp"});
    CHECK(id.code == 0);
    CHECK(io::parse_csv(id.out) == ComplexMatrix::identity(3));

    const Result js = ginv_run({"compute", ex, "-k", "core-ep", "--format", "json", "--route", "hs"});
    CHECK(js.code == 0);
    ComplexMatrix e11(5, 5);
    e11(0, 0) = 1.0;
    helpers::check_close(io::parse_json(js.out), e11, 1e-12);
}

TEST_CASE("compute exit codes") {
    TempDir d;
    const std::string nil = d.file("n.csv", kNilpotent2);
    const Result group = ginv_run({"compute", nil, "--kind", "group"});
    CHECK(group.code == 3);
    CHECK(group.err.find("index") != std::string::npos);
    CHECK(ginv_run({"compute", nil, "--kind", "mwc"}).code == 2);
    CHECK(ginv_run({"compute", nil, "--kind", "mwc", "--m", "0"}).code == 2);
    CHECK(ginv_run({"compute", nil, "--kind", "mp", "--m", "2"}).code == 2);
    CHECK(ginv_run({"compute", nil, "--kind", "bt"}).code == 2);
    CHECK(ginv_run({"compute", nil, "--kind", "drazin", "--route", "hs"}).code == 3);
    CHECK(ginv_run({"compute", d.file("r.csv", "1,2\n"), "--kind", "drazin"}).code == 3);
    CHECK(ginv_run({"compute", d.file("missing.csv"), "--kind", "mp"}).code == 2);
    const Result bad = ginv_run({"compute", d.file("b.csv", "1,2\n3,4x\n"), "--kind", "mp"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 2, column 4") != std::string::npos);
    CHECK(ginv_run({}).code == 2);
    CHECK(ginv_run({"frobnicate"}).code == 2);
    CHECK(ginv_run({"--help"}).code == 0);
}

TEST_CASE("decompose") {
    TempDir d;
    const std::string out = (d.path() / "ce").string();
    CHECK(ginv_run({"decompose", d.matrix("ex.csv", fixtures::example()), "--outdir", out}).code == 0);
    std::ifstream mf(fs::path(out) / "manifest.json");
    const nlohmann::json manifest = nlohmann::json::parse(mf);
    CHECK(manifest["t"] == 1);
    CHECK(manifest["index"] == 4);
    for (const char* f : {"U.csv", "T.csv", "S.csv", "N.csv"}) CHECK(fs::exists(fs::path(out) / f));

    const std::string ns = (d.path() / "ns").string();
    const ComplexMatrix m = helpers::random(3, 3, 1);
    CHECK(ginv_run({"decompose", d.matrix("m.csv", m), "-d", ns, "--format", "json"}).code == 0);
    CHECK(fs::exists(fs::path(ns) / "T.json"));
    CHECK_FALSE(fs::exists(fs::path(ns) / "S.json"));
    CHECK_FALSE(fs::exists(fs::path(ns) / "N.json"));
    std::ifstream nf(fs::path(ns) / "manifest.json");
    CHECK(nlohmann::json::parse(nf)["index"] == 0);

    const std::string hs = (d.path() / "hs").string();
    CHECK(ginv_run({"decompose", d.matrix("ex2.csv", fixtures::example()), "-d", hs, "--which", "hs"}).code == 0);
    std::ifstream hf(fs::path(hs) / "manifest.json");
    CHECK(nlohmann::json::parse(hf)["r"] == numkit::rank(fixtures::example()));
    CHECK(ginv_run({"decompose", d.file("z.csv", "0,0\n0,0\n"), "-d", hs, "--which", "hs"}).code == 3);
}

TEST_CASE("verify") {
    TempDir d;
    const std::string ex = d.matrix("ex.csv", fixtures::example());
    const Result r = ginv_run({"verify", ex, "--m", "1,2,3,4,5", "--suite", "all"});
    CHECK(r.code == 0);
    CHECK(r.out.find("system1[m=5] PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(ginv_run({"verify", d.matrix("i.csv", ComplexMatrix::identity(4))}).code == 0);

    const Result bad = ginv_run({"verify", ex, "--debug-mutate", "perturb", "-q"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    CHECK(bad.out.find("PASS") == std::string::npos);

    const Result dmp = ginv_run({"verify", ex, "--m", "2", "--debug-mutate", "dmp", "--suite", "props"});
    CHECK(dmp.code == 1);
    CHECK(dmp.out.find("system1[m=2] FAIL 1") != std::string::npos);

    CHECK(ginv_run({"verify", ex, "--m", "0"}).code == 2);
    CHECK(ginv_run({"verify", ex, "--suite", "everything"}).code == 2);
    CHECK(ginv_run({"verify", d.file("b.csv", "1,\n")}).code == 2);
}

TEST_CASE("random") {
    TempDir d;
    const std::string out = d.file("r.csv");
    const Result r = ginv_run({"random", "-n", "6", "-t", "2", "--index", "3", "--seed", "42", "-o", out});
    CHECK(r.code == 0);
    CHECK(r.out == "index 3, rank(A^k) 2\n");
    CHECK(decomp::matrix_index(io::read_matrix(out)) == 3);

    const Result stdout_run = ginv_run({"random", "-n", "6", "-t", "2", "--index", "3", "--seed", "42"});
    CHECK(io::parse_csv(stdout_run.out) == io::read_matrix(out));
    CHECK(stdout_run.err == "index 3, rank(A^k) 2\n");

    const Result ns = ginv_run({"random", "-n", "3", "-t", "3", "--index", "0"});
    CHECK(ns.code == 0);
    CHECK(numkit::rank(io::parse_csv(ns.out)) == 3);

    const Result bad = ginv_run({"random", "-n", "4", "-t", "2", "--index", "5"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("infeasible") != std::string::npos);
}

TEST_CASE("tolerance flags and environment") {
    TempDir d;
    const std::string ex = d.matrix("ex.csv", fixtures::example());
    CHECK(ginv_run({"index", ex, "--rank-tol", "-1"}).code == 2);
    CHECK(ginv_run({"--eq-abs", "abc", "index", ex}).code == 2);

    ::setenv("GINV_RANK_TOL", "-1", 1);
    CHECK(ginv_run({"index", ex}).code == 2);
    CHECK(ginv_run({"index", ex, "--rank-tol", "1e-10"}).code == 0);  // the flag wins
    ::unsetenv("GINV_RANK_TOL");

    // A tiny diagonal entry counts as nonzero until the rank cutoff exceeds it.
    const std::string m = d.file("m.csv", "1,0\n0,1e-6\n");
    CHECK(ginv_run({"index", m}).out == "0\n");
    ::setenv("GINV_RANK_TOL", "1e-3", 1);
    CHECK(ginv_run({"index", m}).out == "1\n");
    ::unsetenv("GINV_RANK_TOL");
}
