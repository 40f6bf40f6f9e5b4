#pragma once

#include <deltacat/diff.hpp>
#include <deltacat/document.hpp>
#include <deltacat/errors.hpp>
#include <deltacat/eval.hpp>
#include <deltacat/format.hpp>
#include <deltacat/laws.hpp>
#include <deltacat/models.hpp>
#include <deltacat/report.hpp>
#include <deltacat/tangent.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace deltacat {

enum ExitCode : int { exit_ok = 0, exit_law_failure = 1, exit_usage = 2, exit_error = 3 };

namespace detail {

struct UsageError : Error {
    using Error::Error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used, 10);
        if (used == text.size() && !text.empty() && text[0] != '-') return v;
    } catch (const std::exception&) {
    }
    throw UsageError(origin + ": expected a non-negative integer seed, got '" + text + "'");
}

} // namespace detail

/// Entry point of the `deltacat` tool, with injectable streams so it can be
/// driven from tests. `out_is_tty` picks the default report format.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   bool out_is_tty = false) {
    CLI::App app{"Cartesian difference category engine", "deltacat"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "deltacat 1.0");

    std::string model_name;
    std::optional<double> tol;
    std::optional<std::size_t> stream_depth;
    auto model_opts = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--model", model_name, "findiff, smooth, smooth:exact, module:r=K, stream[:depth=N]");
        if (required) opt->required();
        sub->add_option("--tol", tol, "relative tolerance of the floating-point smooth model")
            ->check(CLI::PositiveNumber);
        sub->add_option("--stream-depth", stream_depth, "prefix depth of the stream model")->check(CLI::PositiveNumber);
    };

    std::string file, name, point, second;
    std::size_t order = 1;
    std::string suite = "all";
    std::vector<std::string> law_ids;
    std::optional<std::string> seed_text;
    std::size_t trials = 200;
    std::size_t depth = 4;
    unsigned threads = 1;
    std::string format;
    bool timing = false;
    bool list = false;

    auto report_opts = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_text, "random seed (default: $DELTA_CAT_SEED or 42)");
        sub->add_option("--trials", trials, "trials per law")->check(CLI::NonNegativeNumber);
        sub->add_option("--depth", depth, "maximum constructor depth of sampled terms");
        sub->add_option("--threads", threads, "worker threads per law")->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "table or jsonl (default: table on a terminal)")
            ->check(CLI::IsMember({"table", "jsonl"}));
        sub->add_flag("--timing", timing, "include elapsed time per law");
    };

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a named term at a point");
    model_opts(eval_cmd, false);
    eval_cmd->add_option("file", file, "term file (.dc)")->required();
    eval_cmd->add_option("name", name, "definition to evaluate")->required();
    eval_cmd->add_option("point", point, "point literal, e.g. \"(1)\" or \"((1 2) [0 1])\"")->required();

    auto* diff_cmd = app.add_subcommand("diff", "print the derivative of a named term");
    model_opts(diff_cmd, false);
    diff_cmd->add_option("--order", order, "number of times to differentiate")->check(CLI::NonNegativeNumber);
    diff_cmd->add_option("file", file, "term file (.dc)")->required();
    diff_cmd->add_option("name", name, "definition to differentiate")->required();

    auto* laws_cmd = app.add_subcommand("laws", "run law suites");
    model_opts(laws_cmd, true);
    laws_cmd->add_option("--suite", suite, "cdc, cad, lemmas, monad, kleisli, linearity, model, control or all");
    laws_cmd->add_option("--law", law_ids, "run only these laws (repeatable)");
    laws_cmd->add_flag("--list", list, "list law ids and exit");
    report_opts(laws_cmd);

    auto* kleisli_cmd = app.add_subcommand("kleisli", "print the Kleisli composite g o f of two named maps");
    model_opts(kleisli_cmd, false);
    kleisli_cmd->add_option("file", file, "term file (.dc)")->required();
    kleisli_cmd->add_option("f", name, "inner map A -> T(B)")->required();
    kleisli_cmd->add_option("g", second, "outer map B -> T(C)")->required();

    auto* monad_cmd = app.add_subcommand("monad", "check the tangent monad laws");
    model_opts(monad_cmd, true);
    report_opts(monad_cmd);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    ModelOptions mopts;
    mopts.rel_tol = tol;
    mopts.stream_depth = stream_depth;
    std::optional<std::string> model_arg;
    if (!model_name.empty()) model_arg = model_name;

    auto emit = [&](const std::vector<LawReport>& reports) {
        const std::string fmt = format.empty() ? (out_is_tty ? "table" : "jsonl") : format;
        if (fmt == "table")
            write_table(out, reports, timing);
        else
            write_jsonl(out, reports, timing);
        for (const auto& r : reports)
            if (r.failures) return int(exit_law_failure);
        return int(exit_ok);
    };
    auto config = [&]() {
        LawConfig c;
        if (seed_text) {
            c.seed = detail::parse_seed(*seed_text, "--seed");
        } else if (const char* env = std::getenv("DELTA_CAT_SEED"); env && *env) {
            c.seed = detail::parse_seed(env, "DELTA_CAT_SEED");
        }
        c.trials = trials;
        c.depth = depth;
        c.threads = threads;
        return c;
    };

    try {
        if (eval_cmd->parsed()) {
            const TermDocument doc = parse_document(detail::read_file(file), model_arg, mopts);
            const MapTerm& f = doc.term(name);
            const Value x = parse_value(doc.model(), f.dom(), point);
            out << print_point(eval(doc.model(), f, x)) << '\n';
            return exit_ok;
        }
        if (diff_cmd->parsed()) {
            const TermDocument doc = parse_document(detail::read_file(file), model_arg, mopts);
            const MapTerm df = derive_n(doc.term(name), order, doc.model());
            out << print_term(df) << '\n' << "; " << print_signature(df) << '\n';
            return exit_ok;
        }
        if (kleisli_cmd->parsed()) {
            const TermDocument doc = parse_document(detail::read_file(file), model_arg, mopts);
            const KleisliMap f = KleisliMap::from_term(doc.term(name));
            const KleisliMap g = KleisliMap::from_term(doc.term(second));
            const KleisliMap gf = kleisli_compose(g, f, doc.model());
            out << print_term(gf.term()) << '\n' << "; " << gf.src().to_string() << " -> T " << gf.tgt().to_string()
                << '\n';
            return exit_ok;
        }
        if (laws_cmd->parsed()) {
            if (list) {
                for (const auto& def : law_catalog()) out << def.suite << ' ' << def.id << '\n';
                return exit_ok;
            }
            const Model model = make_model(model_name, mopts);
            const LawConfig c = config();
            std::vector<LawReport> reports;
            if (!law_ids.empty()) {
                for (const auto& id : law_ids) reports.push_back(check_law(model, id, c));
            } else {
                reports = check_suite(model, suite, c);
            }
            return emit(reports);
        }
        if (monad_cmd->parsed()) {
            const Model model = make_model(model_name, mopts);
            return emit(check_suite(model, "monad", config()));
        }
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UnknownModel& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UnknownLaw& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SourceError& e) {
        err << file << ':';
        if (e.line()) err << e.line() << ':' << e.column() << ':';
        err << ' ' << e.kind() << ": " << e.message() << '\n';
        return exit_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_usage;
}

} // namespace deltacat
