// eqcartan: run the randomized identity checks and evaluate form expressions.
//
// Exit status: 0 pass, 1 check failure, 2 usage or parse error.

#include "eqcartan/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace eqcartan;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Sampler {
    enum class Kind { Identity, Seed, Repeat, Basis } kind = Kind::Seed;
    std::uint64_t seed = 0;
    std::vector<int> basis;  // 1-based indices into basis_so4()
};

/// "identity", "seed:N", "repeat:N" or "basis:i,j,..." (kinds allowed per flag).
Sampler parse_sampler(const std::string& text, bool allow_identity, bool allow_repeat, bool allow_basis) {
    Sampler s;
    if (text == "identity" && allow_identity) {
        s.kind = Sampler::Kind::Identity;
        return s;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("malformed sampler '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
        if (kind == "seed" || (kind == "repeat" && allow_repeat)) {
            s.kind = kind == "seed" ? Sampler::Kind::Seed : Sampler::Kind::Repeat;
            std::size_t used = 0;
            s.seed = std::stoull(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
            return s;
        }
        if (kind == "basis" && allow_basis) {
            s.kind = Sampler::Kind::Basis;
            std::stringstream in(arg);
            std::string item;
            while (std::getline(in, item, ',')) {
                std::size_t used = 0;
                const int i = std::stoi(item, &used);
                if (used != item.size() || i < 1 || i > 6) throw std::invalid_argument(item);
                s.basis.push_back(i);
            }
            if (s.basis.empty()) throw std::invalid_argument(arg);
            return s;
        }
    } catch (const std::logic_error&) {
        throw UsageError("malformed sampler '" + text + "'");
    }
    throw UsageError("unsupported sampler '" + text + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return kExitPass;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    out << text << "\n";
    return kExitPass;
}

int run_eval(const std::string& expr_path, const std::string& at, const std::string& tangents, const std::string& x_spec) {
    const std::string src = read_file(expr_path);
    formdsl::FormExpr expr;
    try {
        expr = formdsl::parse(src);
    } catch (const formdsl::ParseError& e) {
        std::cerr << expr_path << ":" << e.what() << "\n";
        return kExitUsage;
    }
    const int level = formdsl::required_level(expr);
    const EquivariantForm form = formdsl::interpret(expr, level);

    const Sampler base = parse_sampler(at, true, false, false);
    const GroupPoint h = base.kind == Sampler::Kind::Identity
                             ? GroupPoint::identity(level)
                             : [&] {
                                   Rng rng(base.seed);
                                   return random_point(rng, level);
                               }();

    const Sampler tan = parse_sampler(tangents, false, true, true);
    std::vector<TangentRep> vs;
    if (tan.kind == Sampler::Kind::Basis) {
        if (static_cast<int>(tan.basis.size()) != form.form_degree) {
            std::cerr << "error: expression has degree " << form.form_degree << " but " << tan.basis.size()
                      << " tangents were given\n";
            return kExitUsage;
        }
        const auto basis = basis_so4();
        for (int i : tan.basis) {
            std::vector<SkewMatrix> ys(static_cast<std::size_t>(level), basis[static_cast<std::size_t>(i - 1)]);
            vs.push_back(left_translate(h, ys));
        }
    } else {
        Rng rng(tan.seed);
        const TangentRep first = random_tangent(rng, h);
        for (int i = 0; i < form.form_degree; ++i) {
            vs.push_back(i == 0 || tan.kind == Sampler::Kind::Repeat ? first : random_tangent(rng, h));
        }
    }

    SkewMatrix x;
    const Sampler xs = parse_sampler(x_spec, false, false, true);
    if (xs.kind == Sampler::Kind::Basis) {
        if (xs.basis.size() != 1) throw UsageError("--x basis: takes a single index");
        x = basis_so4()[static_cast<std::size_t>(xs.basis[0] - 1)];
    } else {
        Rng rng(xs.seed);
        x = random_algebra_element(rng);
    }

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", form(x).evaluate(h, vs));
    std::cout << buf << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for the SO(4) equivariant Euler cocycle"};
    app.require_subcommand(1);

    harness::CheckConfig cfg;
    std::string format = "json";
    std::string out_path;
    auto* check = app.add_subcommand("check", "Run one check");
    check->add_option("--id", cfg.check_id, "Check identifier (see `list`)")->required();
    check->add_option("--trials", cfg.trials, "Number of random trials")->capture_default_str();
    check->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    check->add_option("--fd-step", cfg.fd_step, "Central-difference step")->capture_default_str();
    check->add_option("--tol", cfg.tol, "Tolerance (default: per-check)");
    check->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    check->add_option("--out", out_path, "Write the report to this file");

    harness::CheckConfig all_cfg;
    std::string all_format = "json";
    auto* check_all = app.add_subcommand("check-all", "Run every check with default tolerances");
    check_all->add_option("--seed", all_cfg.seed, "Base seed")->capture_default_str();
    check_all->add_option("--trials", all_cfg.trials, "Number of random trials per check")->capture_default_str();
    check_all->add_option("--fd-step", all_cfg.fd_step, "Central-difference step")->capture_default_str();
    check_all->add_option("--format", all_format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    std::string expr_path, at = "identity", tangents = "seed:0", x_spec = "seed:0";
    auto* eval = app.add_subcommand("eval", "Evaluate a form expression at a sampled point");
    eval->add_option("--expr", expr_path, "Expression file")->required();
    eval->add_option("--at", at, "Base point: identity | seed:N")->capture_default_str();
    eval->add_option("--tangents", tangents, "Tangents: seed:M | repeat:M | basis:i,j,...")->capture_default_str();
    eval->add_option("--x", x_spec, "Algebra argument: seed:K | basis:i")->capture_default_str();

    auto* list = app.add_subcommand("list", "List check identifiers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*list) {
            for (const auto& id : harness::list_checks()) std::cout << id << "\n";
            return kExitPass;
        }
        if (*check) {
            const auto report = harness::run_check(cfg);
            const std::string text = format == "json" ? harness::to_json(report).dump() : harness::to_text(report);
            const int status = emit(text, out_path);
            if (status != kExitPass) return status;
            return report.pass ? kExitPass : kExitFail;
        }
        if (*check_all) {
            bool all_pass = true;
            nlohmann::json reports = nlohmann::json::array();
            std::string lines;
            for (const auto& id : harness::list_checks()) {
                harness::CheckConfig c = all_cfg;
                c.check_id = id;
                const auto report = harness::run_check(c);
                all_pass = all_pass && report.pass;
                reports.push_back(harness::to_json(report));
                lines += harness::to_text(report) + "\n";
            }
            if (all_format == "json") {
                std::cout << reports.dump() << "\n";
            } else {
                std::cout << lines;
            }
            return all_pass ? kExitPass : kExitFail;
        }
        if (*eval) return run_eval(expr_path, at, tangents, x_spec);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
