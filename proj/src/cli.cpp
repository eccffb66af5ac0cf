#include "hcvr/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hcvr/baselines.hpp"
#include "hcvr/compare.hpp"
#include "hcvr/correlation.hpp"
#include "hcvr/dataset.hpp"
#include "hcvr/error.hpp"
#include "hcvr/run_config.hpp"
#include "hcvr/sweep.hpp"
#include "hcvr/voting.hpp"

namespace hcvr {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Context {
    RunConfig cfg;
    bool quiet = false;
    std::ostream& out;
    std::ostream& err;

    fs::path out_dir() const { return cfg.out_dir; }

    void prepare_out_dir() const {
        std::error_code ec;
        fs::create_directories(out_dir(), ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create '" + cfg.out_dir + "': " + ec.message());
        write_file(out_dir() / "run-config.json", nlohmann::json(cfg).dump(2) + "\n");
    }

    Split load_split() const {
        const Dataset data =
            load_csv(cfg.data_path, parse_label_column(cfg.label_column), cfg.has_header);
        if (!quiet) {
            err << "loaded " << data.n_rows() << " rows x " << data.n_cols() << " features from "
                << cfg.data_path << "\n";
        }
        return train_test_split(data, cfg.split_spec());
    }
};

std::string selection_summary(const SelectionReport& report, const Dataset& train) {
    std::ostringstream os;
    os << "theta " << fixed(report.theta, 4) << ": kept " << report.n_features_out << " of "
       << report.n_features_in << " features (dataset " << report.dataset_hash << ", seed "
       << report.seed << ")\n";
    std::vector<bool> kept(report.n_features_in, false);
    for (std::size_t i : report.selected) kept[i] = true;
    for (bool section : {true, false}) {
        os << (section ? "kept:\n" : "dropped:\n");
        for (std::size_t i = 0; i < report.n_features_in; ++i) {
            if (kept[i] != section) continue;
            os << "  " << i << "\t" << train.feature_names()[i] << "\tkeep "
               << report.tally.keep_votes[i] << " / " << report.tally.pair_count << "\n";
        }
    }
    return os.str();
}

int cmd_select(const Context& ctx) {
    if (!ctx.cfg.theta) throw Error(ErrorCode::InvalidConfig, "select needs --theta");
    const Threshold theta(*ctx.cfg.theta);
    ctx.prepare_out_dir();
    const Split split = ctx.load_split();

    const auto cache = ProfileCache::from_env();
    const CorrelationProfile profile =
        cache ? cache->load_or_build(split.train, ctx.cfg.seed) : build_profile(split.train);
    SelectionReport report = select(profile, theta);
    report.dataset_hash = content_hash(split.train);
    report.seed = ctx.cfg.seed;

    const std::string json = nlohmann::json(report).dump(2) + "\n";
    const std::string summary = selection_summary(report, split.train);
    write_file(ctx.out_dir() / "selection.json", json);
    write_file(ctx.out_dir() / "selection.txt", summary);
    ctx.out << (ctx.quiet ? json : summary);
    return kExitOk;
}

int cmd_sweep(const Context& ctx) {
    const auto specs = ctx.cfg.classifier_specs();
    if (specs.size() != 1) {
        throw Error(ErrorCode::InvalidConfig, "sweep takes exactly one --classifier");
    }
    ctx.prepare_out_dir();
    const Split split = ctx.load_split();
    const SweepTrace trace = sweep(split.train, specs.front(), ctx.cfg.sweep_options());

    const std::string csv = to_csv(trace);
    write_file(ctx.out_dir() / "sweep.csv", csv);
    write_file(ctx.out_dir() / "sweep.json", nlohmann::json(trace).dump(2) + "\n");
    if (ctx.quiet) {
        ctx.out << csv;
    } else {
        ctx.out << csv << "best theta " << fixed(trace.best_theta, 4) << " with "
                << trace.best_n_selected << " features, validation accuracy "
                << fixed(trace.best_validation_accuracy, 4) << "\n";
    }
    return kExitOk;
}

int cmd_baseline(const Context& ctx) {
    ctx.prepare_out_dir();
    const Split split = ctx.load_split();
    const Dataset& train = split.train;

    nlohmann::json result = nlohmann::json::object();
    std::ostringstream csv;
    csv << "method,rank,feature,name,score\n";
    for (const auto& method : ctx.cfg.method_configs()) {
        if (method.kind == MethodKind::HCVR) continue;
        RankedFeatures ranked;
        switch (method.kind) {
            case MethodKind::AnovaF: ranked = anova_f_scores(train); break;
            case MethodKind::MutualInfo: ranked = mutual_info_scores(train, method.n_bins); break;
            default: ranked = mrmr_ranking(train, method.k, method.n_bins); break;
        }
        const auto best = k_best(ranked, method.k);
        result[method.id()] = {{"ranking", ranked}, {"k", method.k}, {"selected", best}};
        for (std::size_t r = 0; r < best.size(); ++r) {
            csv << method.id() << "," << r + 1 << "," << best[r] << ","
                << train.feature_names()[best[r]] << "," << fixed(ranked.scores[best[r]]) << "\n";
        }
    }
    if (result.empty()) {
        throw Error(ErrorCode::InvalidConfig, "baseline needs one of anova_f, mi, mrmr in --methods");
    }
    const std::string json = result.dump(2) + "\n";
    write_file(ctx.out_dir() / "baseline.json", json);
    write_file(ctx.out_dir() / "baseline.csv", csv.str());
    ctx.out << (ctx.quiet && ctx.cfg.format == "json" ? json : csv.str());
    return kExitOk;
}

int cmd_compare(const Context& ctx) {
    const auto specs = ctx.cfg.classifier_specs();
    const auto methods = ctx.cfg.method_configs();
    ctx.prepare_out_dir();
    const Split split = ctx.load_split();
    const ComparisonTable table = compare_methods(split.train, split.test, specs, methods);

    const std::string body = ctx.cfg.format == "json" ? nlohmann::json(table).dump(2) + "\n"
                                                      : to_csv(table);
    write_file(ctx.out_dir() / (ctx.cfg.format == "json" ? "comparison.json" : "comparison.csv"),
               body);
    ctx.out << body;
    return kExitOk;
}

int cmd_report(const Context& ctx) {
    const fs::path dir = ctx.out_dir();
    if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, "no output directory '" + ctx.cfg.out_dir + "'");
    bool any = false;
    if (fs::exists(dir / "selection.txt")) {
        ctx.out << "== selection\n" << read_file(dir / "selection.txt");
        any = true;
    }
    if (fs::exists(dir / "sweep.json")) {
        const auto j = nlohmann::json::parse(read_file(dir / "sweep.json"));
        ctx.out << "== sweep (" << j.at("classifier_id").get<std::string>() << ")\n"
                << "best theta " << fixed(j.at("best_theta").get<double>(), 4) << ", "
                << j.at("best_n_selected").get<std::size_t>() << " features, validation accuracy "
                << fixed(j.at("best_validation_accuracy").get<double>(), 4) << "\n";
        any = true;
    }
    for (const char* name : {"comparison.csv", "comparison.json", "baseline.csv"}) {
        if (fs::exists(dir / name)) {
            ctx.out << "== " << name << "\n" << read_file(dir / name);
            any = true;
        }
    }
    if (!any) throw Error(ErrorCode::IoError, "nothing to report in '" + ctx.cfg.out_dir + "'");
    return kExitOk;
}

std::optional<std::string> find_config_arg(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        if (auto path = find_config_arg(args)) cfg = load_run_config(*path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"Correlation-aware voting feature selection"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string label = cfg.label_column;
    std::string classifiers;
    std::string methods;
    double theta = 0.0;
    bool quiet = false;
    bool no_stratify = false;

    app.add_option("--config", config_path, "Run config JSON (flags override it)");
    app.add_option("--data", cfg.data_path, "CSV file");
    app.add_option("--label", label, "Label column: index (negative from end) or header name");
    app.add_flag("--header", cfg.has_header, "First row is a header");
    auto* theta_opt = app.add_option("--theta", theta, "Threshold for select");
    app.add_option("--theta-min", cfg.theta_min, "Sweep start");
    app.add_option("--theta-max", cfg.theta_max, "Sweep end (inclusive)");
    app.add_option("--step", cfg.step, "Sweep increment");
    app.add_flag("--refine", cfg.refine, "Add a finer pass around the best sweep threshold");
    auto* clf_opt = app.add_option("--classifier", classifiers,
                                   "decision_tree|logistic_sgd|gaussian_nb (comma list for compare)");
    auto* methods_opt = app.add_option("--methods", methods, "Comma list of hcvr,anova_f,mi,mrmr");
    app.add_option("--k", cfg.k, "Features kept by the filter baselines");
    app.add_option("--bins", cfg.n_bins, "Equal-frequency bins for MI and mRMR");
    app.add_option("--test-fraction", cfg.test_fraction, "Held-out test fraction");
    app.add_flag("--no-stratify", no_stratify, "Plain random split");
    app.add_option("--seed", cfg.seed, "Seed for the split and every derived stream");
    app.add_option("--out", cfg.out_dir, "Output directory");
    app.add_option("--format", cfg.format, "Comparison output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--quiet", quiet, "Only machine-readable output on stdout");

    auto* select_cmd = app.add_subcommand("select", "Vote features at one threshold");
    auto* sweep_cmd = app.add_subcommand("sweep", "Tune the threshold with a classifier");
    auto* baseline_cmd = app.add_subcommand("baseline", "Rank features with the filter baselines");
    auto* compare_cmd = app.add_subcommand("compare", "Classifier x method comparison grid");
    auto* report_cmd = app.add_subcommand("report", "Summarize an output directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        cfg.label_column = label;
        if (theta_opt->count() > 0) cfg.theta = theta;
        if (clf_opt->count() > 0) cfg.classifiers = split_list(classifiers);
        if (methods_opt->count() > 0) cfg.methods = split_list(methods);
        if (no_stratify) cfg.stratified = false;

        if (report_cmd->parsed()) return cmd_report(Context{cfg, quiet, out, err});

        if (cfg.methods.empty()) {
            err << "error: --methods is empty\n" << app.help();
            return kExitUsage;
        }
        cfg.validate();
        const Context ctx{cfg, quiet, out, err};
        if (select_cmd->parsed()) return cmd_select(ctx);
        if (sweep_cmd->parsed()) return cmd_sweep(ctx);
        if (baseline_cmd->parsed()) return cmd_baseline(ctx);
        if (compare_cmd->parsed()) return cmd_compare(ctx);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_validation_error(e.code()) ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace hcvr
