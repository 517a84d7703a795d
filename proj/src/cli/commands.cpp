#include "ginv/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginv/decomp.hpp"
#include "ginv/inverses.hpp"
#include "ginv/matrix_file.hpp"
#include "ginv/verify.hpp"

namespace ginv::cli {

namespace {

namespace fs = std::filesystem;
using inverses::InverseKind;
using inverses::Kind;
using inverses::Route;

enum class Verbosity { Quiet, Normal, Debug };

struct Config {
    numkit::Tolerance tol;
    std::string format;  // empty: from the output path
    bool quiet = false;
    bool debug = false;

    Verbosity verbosity() const {
        return debug ? Verbosity::Debug : quiet ? Verbosity::Quiet : Verbosity::Normal;
    }
};

struct Input {
    std::string path = "-";
    std::string format;  // empty: from the extension

    ComplexMatrix load() const {
        return io::read_matrix(path, format.empty() ? std::nullopt : io::parse_format(format));
    }
};

const std::map<std::string, Kind> kKinds{
    {"mp", Kind::MoorePenrose}, {"group", Kind::Group}, {"drazin", Kind::Drazin},
    {"core", Kind::Core},       {"core-ep", Kind::CoreEp}, {"dmp", Kind::Dmp},
    {"wg", Kind::Wg},           {"mwg", Kind::MWeakGroup}, {"wc", Kind::Wc},
    {"mwc", Kind::MWeakCore},
};

const std::map<std::string, Route> kRoutes{
    {"definitional", Route::Definitional},
    {"canonical", Route::CoreEpCanonical},
    {"hs", Route::HartwigSpindelbock},
};

const std::map<std::string, verify::Suite> kSuites{
    {"all", verify::Suite::All},
    {"props", verify::Suite::Props},
    {"equalities", verify::Suite::Equalities},
    {"special", verify::Suite::Special},
    {"maximal", verify::Suite::Maximal},
};

const std::map<std::string, verify::Mutation> kMutations{
    {"none", verify::Mutation::None},
    {"dmp", verify::Mutation::SubstituteDmp},
    {"perturb", verify::Mutation::PerturbEntry},
};

template <typename T>
std::vector<std::string> keys(const std::map<std::string, T>& m) {
    std::vector<std::string> out;
    for (const auto& [k, v] : m) out.push_back(k);
    return out;
}

io::Format output_format(const Config& cfg, const fs::path& path) {
    if (!cfg.format.empty()) return *io::parse_format(cfg.format);
    return io::format_for_path(path);
}

void emit(const ComplexMatrix& m, const fs::path& path, const Config& cfg, std::ostream& out) {
    const io::Format f = output_format(cfg, path);
    if (path == "-")
        out << io::write(m, f);
    else
        io::write_matrix(path, m, f);
}

void add_input(CLI::App* cmd, Input& in) {
    cmd->add_option("input", in.path, "Matrix file (CSV or JSON, \"-\" for stdin)")->required();
    cmd->add_option("--input-format", in.format, "Override the format implied by the extension")
        ->check(CLI::IsMember({"csv", "json"}));
}

// --- compute -------------------------------------------------------------

struct ComputeArgs {
    Input in;
    std::string kind;
    std::optional<unsigned> m;
    std::string route = "canonical";
    std::string output = "-";
};

int cmd_compute(const ComputeArgs& args, const Config& cfg, std::ostream& out, std::ostream& err) {
    InverseKind kind{kKinds.at(args.kind), 0};
    if (kind.has_parameter()) {
        if (!args.m) throw CLI::ValidationError("--m", "required for " + args.kind);
        kind.m = *args.m;
    } else if (args.m) {
        throw CLI::ValidationError("--m", "only applies to mwg and mwc");
    }
    kind.validate();
    const ComplexMatrix a = args.in.load();
    const auto started = std::chrono::steady_clock::now();
    const inverses::InverseResult r = inverses::compute_detailed(a, kind, cfg.tol, kRoutes.at(args.route));
    if (cfg.verbosity() != Verbosity::Quiet)
        for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
    if (cfg.verbosity() == Verbosity::Debug) {
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
        err << "debug: " << inverses::to_string(kind) << " via " << args.route << ", n = " << a.rows()
            << ", index = " << decomp::matrix_index(a, cfg.tol) << ", " << took.count() << " s\n";
    }
    emit(r.value, args.output, cfg, out);
    return kOk;
}

// --- index ---------------------------------------------------------------

int cmd_index(const Input& in, const Config& cfg, std::ostream& out) {
    out << decomp::matrix_index(in.load(), cfg.tol) << '\n';
    return kOk;
}

// --- decompose -----------------------------------------------------------

struct DecomposeArgs {
    Input in;
    std::string which = "core-ep";
    std::string outdir;
};

int cmd_decompose(const DecomposeArgs& args, const Config& cfg, std::ostream& out) {
    const ComplexMatrix a = args.in.load();
    const io::Format f = cfg.format.empty() ? io::Format::Csv : *io::parse_format(cfg.format);
    const std::string ext = "." + io::to_string(f);
    std::vector<std::pair<std::string, const ComplexMatrix*>> parts;
    nlohmann::json manifest;

    decomp::CoreEpDecomposition ce;
    decomp::HsDecomposition hs;
    if (args.which == "core-ep") {
        ce = decomp::core_ep(a, cfg.tol);
        manifest = {{"t", ce.t_size}, {"index", ce.index}};
        parts.emplace_back("U", &ce.u);
        if (ce.t_size > 0) parts.emplace_back("T", &ce.t_block);
        if (ce.t_size < ce.n()) {
            if (ce.t_size > 0) parts.emplace_back("S", &ce.s_block);
            parts.emplace_back("N", &ce.n_block);
        }
    } else {
        hs = decomp::hs_decompose(a, cfg.tol);
        manifest = {{"r", hs.r_size}};
        parts.emplace_back("U", &hs.u);
        parts.emplace_back("Sigma", &hs.sigma);
        parts.emplace_back("K", &hs.k_block);
        if (hs.r_size < a.rows()) parts.emplace_back("L", &hs.l_block);
    }

    const fs::path dir(args.outdir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw FileError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& [name, m] : parts) io::write_matrix(dir / (name + ext), *m, f);
    std::ofstream mf(dir / "manifest.json");
    mf << manifest.dump() << '\n';
    if (!mf) throw FileError("cannot write " + (dir / "manifest.json").string());
    if (cfg.verbosity() != Verbosity::Quiet) out << manifest.dump() << '\n';
    return kOk;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
    Input in;
    std::vector<unsigned> m;
    std::string suite = "all";
    std::string mutate = "none";
    std::uint64_t seed = verify::SuiteOptions{}.seed;
};

int cmd_verify(const VerifyArgs& args, const Config& cfg, std::ostream& out, std::ostream& err) {
    const ComplexMatrix a = args.in.load();
    std::vector<unsigned> ms = args.m;
    if (ms.empty()) {
        if (!a.is_square()) throw DimensionError("verify needs a square matrix");
        const unsigned k = decomp::matrix_index(a, cfg.tol);
        for (unsigned m = 1; m <= k + 2; ++m) ms.push_back(m);
    }
    for (unsigned m : ms)
        if (m == 0) throw CLI::ValidationError("--m", "values must be positive");

    verify::SuiteOptions opts;
    opts.suite = kSuites.at(args.suite);
    opts.mutation = kMutations.at(args.mutate);
    opts.seed = args.seed;
    const std::vector<verify::CheckReport> reports = verify::run_suite(a, ms, cfg.tol, opts);

    std::size_t failed = 0;
    const Verbosity v = cfg.verbosity();
    for (const verify::CheckReport& r : reports) {
        if (!r.passed) ++failed;
        if (v == Verbosity::Quiet && r.passed) continue;
        out << r.name << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << std::setprecision(3)
            << r.residual;
        if (v == Verbosity::Debug || !r.passed) {
            out << " (threshold " << r.threshold << ")";
            if (!r.detail.empty()) out << ' ' << r.detail;
        }
        out << '\n';
    }
    if (v != Verbosity::Quiet)
        err << reports.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kOk : kVerifyFailed;
}

// --- random --------------------------------------------------------------

struct RandomArgs {
    verify::InstanceSpec spec;
    std::string output = "-";
};

int cmd_random(const RandomArgs& args, const Config& cfg, std::ostream& out, std::ostream& err) {
    const ComplexMatrix a = verify::generate(args.spec, cfg.tol);
    emit(a, args.output, cfg, out);
    const unsigned k = decomp::matrix_index(a, cfg.tol);
    const std::size_t t = decomp::core_ep(a, cfg.tol).t_size;
    std::ostream& info = args.output == "-" ? err : out;
    if (cfg.verbosity() != Verbosity::Quiet) info << "index " << k << ", rank(A^k) " << t << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized inverses around the m-weak core inverse", "ginv"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all");
    app.option_defaults()->always_capture_default();

    Config cfg;
    app.add_option("--rank-tol", cfg.tol.rank_rel, "Relative singular value cutoff")
        ->envname("GINV_RANK_TOL");
    app.add_option("--eq-abs", cfg.tol.eq_abs, "Absolute identity threshold")->envname("GINV_EQ_ABS");
    app.add_option("--eq-rel", cfg.tol.eq_rel, "Relative identity threshold")->envname("GINV_EQ_REL");
    app.add_option("--format", cfg.format, "Output format (default: from the output extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* quiet = app.add_flag("-q,--quiet", cfg.quiet, "Only results and failures");
    app.add_flag("--debug", cfg.debug, "Extra diagnostics")->excludes(quiet);

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "Compute a generalized inverse");
    add_input(c, compute.in);
    c->add_option("-k,--kind", compute.kind, "Inverse kind")->required()->check(CLI::IsMember(keys(kKinds)));
    c->add_option("-m,--m", compute.m, "Power parameter for mwg and mwc");
    c->add_option("-r,--route", compute.route, "Computation route")
        ->check(CLI::IsMember(keys(kRoutes)));
    c->add_option("-o,--output", compute.output, "Output file (\"-\" for stdout)");

    Input index_in;
    auto* ix = app.add_subcommand("index", "Print the index of a square matrix");
    add_input(ix, index_in);

    DecomposeArgs dec;
    auto* d = app.add_subcommand("decompose", "Write the blocks of a decomposition to a directory");
    add_input(d, dec.in);
    d->add_option("-w,--which", dec.which, "Decomposition")->check(CLI::IsMember({"core-ep", "hs"}));
    d->add_option("-d,--outdir", dec.outdir, "Output directory")->required();

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run the identity checks on a matrix");
    add_input(v, ver.in);
    v->add_option("-m,--m", ver.m, "Comma-separated values of m (default 1..index+2)")->delimiter(',');
    v->add_option("-s,--suite", ver.suite, "Check group")->check(CLI::IsMember(keys(kSuites)));
    v->add_option("--debug-mutate", ver.mutate, "Corrupt the inverse under test")
        ->check(CLI::IsMember(keys(kMutations)));
    v->add_option("--seed", ver.seed, "Seed for the random free matrices");

    RandomArgs rnd;
    auto* r = app.add_subcommand("random", "Generate a matrix with prescribed size, core rank and index");
    r->add_option("-n,--n", rnd.spec.n, "Size")->required();
    r->add_option("-t,--t", rnd.spec.t, "rank(A^k)")->required();
    r->add_option("-k,--index", rnd.spec.index, "Index")->required();
    r->add_option("--seed", rnd.spec.seed, "Seed");
    r->add_option("--cond-cap", rnd.spec.condition_cap, "Bound on cond(T)");
    r->add_option("-o,--output", rnd.output, "Output file (\"-\" for stdout)");

    try {
        app.parse(argc, argv);
        cfg.tol.validate();
        if (c->parsed()) return cmd_compute(compute, cfg, out, err);
        if (ix->parsed()) return cmd_index(index_in, cfg, out);
        if (d->parsed()) return cmd_decompose(dec, cfg, out);
        if (v->parsed()) return cmd_verify(ver, cfg, out, err);
        return cmd_random(rnd, cfg, out, err);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const FileError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
}

}  // namespace ginv::cli
