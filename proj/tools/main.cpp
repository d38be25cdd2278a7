// sentitrade command-line entry point.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sentitrade/commands.hpp"
#include "sentitrade/config.hpp"

namespace config = sentitrade::config;

int main(int argc, char** argv) {
    CLI::App app{"Sentiment-volume backtesting pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned jobs = 0;
    app.add_option("--config", config_path, "TOML run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--jobs", jobs, "Worker threads for grid and permutation sweeps")->check(CLI::PositiveNumber);

    // One override flag per config key, e.g. --pos_threshold 12 or --tickers AAPL,MSFT.
    std::map<std::string, std::string> raw;
    for (const auto& key : config::known_keys()) {
        app.add_option("--" + key, raw[key], "Overrides config key '" + key + "'")->allow_extra_args(false);
    }

    const std::map<std::string, std::string> descriptions = {
        {"ingest", "Load and validate comments and prices"},
        {"score", "Fill the sentiment score of every comment"},
        {"signal", "Compute daily SVC signals"},
        {"correlate", "Regress forward returns on the signal"},
        {"backtest", "Run the strategies and buy-and-hold baselines"},
        {"grid", "Search the threshold grid"},
        {"permute", "Evaluate the multi-stock strategy on every ticker subset"},
        {"report", "Build the return and risk tables"},
    };
    for (const auto& name : sentitrade::commands::names()) {
        app.add_subcommand(name, descriptions.at(name))->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    config::RunConfig cfg;
    try {
        if (!config_path.empty()) {
            const std::filesystem::path p(config_path);
            cfg.apply(config::load_toml(p), p.parent_path());
        }
        std::map<std::string, std::string> given;
        for (const auto& [key, value] : raw) {
            if (app.count("--" + key) > 0) given.emplace(key, value);
        }
        cfg.apply(config::flag_table(given), {});
        if (!out_dir.empty()) cfg.out = out_dir;
        if (jobs > 0) cfg.jobs = jobs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const auto* sub = app.get_subcommands().front();
    return sentitrade::commands::run(sub->get_name(), cfg, std::cout, std::cerr);
}
