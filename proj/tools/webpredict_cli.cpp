// webpredict: command-line front end for the page prediction engine.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "webpredict/config.hpp"
#include "webpredict/model.hpp"
#include "webpredict/predictor.hpp"
#include "webpredict/ranker.hpp"
#include "webpredict/service.hpp"
#include "webpredict/site_graph.hpp"
#include "webpredict/trace_sim.hpp"

namespace {

using namespace webpredict;

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kIo = 3,
    kInvalidInput = 4,
    kNoConvergence = 5,
    kUnknownUrl = 6,
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw IoError("cannot write " + path);
}

EngineConfig load_config(const std::string& path) {
    return path.empty() ? EngineConfig{} : parse_config(read_file(path));
}

Model load_or_build(const std::string& model_path, const std::string& graph_path,
                    const std::string& modlog_path, const EngineConfig& cfg) {
    if (!model_path.empty()) return load_model(read_file(model_path), cfg.build);
    const auto g = parse_graph(read_file(graph_path));
    ModificationLog log;
    if (!modlog_path.empty()) log = parse_modification_log(read_file(modlog_path), g);
    return build_model(g, log, cfg.build);
}

std::string render_table(const Model& m) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "Key" << std::setw(24) << "URL" << std::setw(5) << "LC"
       << std::setw(5) << "L#" << std::setw(5) << "C#" << std::setw(8) << "TS" << std::setw(8) << "DM"
       << "Links\n";
    std::istringstream csv(dump_model(m));
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) {
        std::vector<std::string> f;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) f.push_back(cell);
        f.resize(8);
        os << std::setw(6) << f[0] << std::setw(24) << f[1] << std::setw(5) << f[2] << std::setw(5)
           << f[3] << std::setw(5) << f[4] << std::setw(8) << f[5] << std::setw(8) << f[6] << f[7]
           << '\n';
    }
    return os.str();
}

nlohmann::json model_to_json(const Model& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m.records()) {
        std::vector<std::string> links;
        for (PageId t : r.links) links.push_back(m.record(t).url);
        rows.push_back({{"url", r.url}, {"lc", r.lc}, {"level", r.level}, {"class", r.class_no},
                        {"ts", r.ts}, {"dm", r.dm}, {"rank", r.ordinal}, {"links", links}});
    }
    return {{"levels", m.levels()}, {"pages", m.page_count()}, {"tick", m.tick()}, {"records", rows}};
}

int run_serve(Service& service, const std::string& host, int port, const std::string& snapshot_out) {
    // Route SIGINT/SIGTERM to a watcher thread so shutdown runs outside a
    // signal handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    HttpFrontend frontend(service);
    const int bound = frontend.bind(host, port);
    std::cerr << "webpredict: listening on " << host << ':' << bound << std::endl;

    std::thread watcher([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        frontend.stop();
    });
    frontend.listen();
    if (watcher.joinable()) {
        pthread_kill(watcher.native_handle(), SIGTERM);
        watcher.join();
    }
    if (!snapshot_out.empty()) write_output(snapshot_out, service.snapshot());
    std::cerr << "webpredict: stopped" << std::endl;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Category-based web page prediction and prefetch simulation"};
    app.require_subcommand(1);

    std::string graph_path, modlog_path, config_path, out_path, model_path, url, trace_path;
    std::string final_model_path, format = "table", host = "127.0.0.1", snapshot_out;
    std::string cache_mode, baseline = "model";
    std::optional<std::size_t> window;
    std::uint64_t seed = 1;
    int port = 8080;
    TraceOptions trace_opts;

    auto* build = app.add_subcommand("build", "Build the initial model and write its page table");
    build->add_option("--graph", graph_path, "Site graph file")->required();
    build->add_option("--modlog", modlog_path, "Modification log file");
    build->add_option("--config", config_path, "key=value config file");
    build->add_option("--out", out_path, "Output CSV (default stdout)");

    auto* rank = app.add_subcommand("rank", "Print PageRank scores and ordinals as CSV");
    rank->add_option("--graph", graph_path, "Site graph file")->required();
    rank->add_option("--config", config_path, "key=value config file");
    rank->add_option("--out", out_path, "Output CSV (default stdout)");

    auto* pred = app.add_subcommand("predict", "Predict the next pages after a request");
    pred->add_option("--model", model_path, "Model CSV")->required();
    pred->add_option("--url", url, "Requested URL")->required();
    pred->add_option("--window", window, "Prediction window size");
    pred->add_option("--config", config_path, "key=value config file");

    auto* rep = app.add_subcommand("replay", "Replay a trace and report hit ratio");
    auto* rep_model = rep->add_option("--model", model_path, "Model CSV");
    auto* rep_graph = rep->add_option("--graph", graph_path, "Site graph file (builds the model)");
    rep_model->excludes(rep_graph);
    rep->add_option("--modlog", modlog_path, "Modification log (with --graph)")->needs(rep_graph);
    rep->add_option("--trace", trace_path, "Trace CSV")->required();
    rep->add_option("--window", window, "Prediction window size");
    rep->add_option("--config", config_path, "key=value config file");
    rep->add_option("--cache", cache_mode, "Client cache: session or window")
        ->check(CLI::IsMember({"session", "window"}));
    rep->add_option("--baseline", baseline, "Prefetch policy: model or random")
        ->check(CLI::IsMember({"model", "random"}));
    rep->add_option("--seed", seed, "Seed for the random baseline");
    rep->add_option("--final-model", final_model_path, "Write the final model CSV here");

    auto* gen = app.add_subcommand("gen-trace", "Generate a synthetic session trace");
    gen->add_option("--graph", graph_path, "Site graph file")->required();
    gen->add_option("--sessions", trace_opts.sessions, "Number of sessions")->check(CLI::NonNegativeNumber);
    gen->add_option("--length", trace_opts.length, "Requests per session")->check(CLI::PositiveNumber);
    gen->add_option("--affinity", trace_opts.affinity, "Same-class preference")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", trace_opts.seed, "Random seed");
    gen->add_option("--out", out_path, "Output CSV (default stdout)");

    auto* serve = app.add_subcommand("serve", "Run the prediction service over HTTP");
    auto* srv_model = serve->add_option("--model", model_path, "Model CSV");
    auto* srv_graph = serve->add_option("--graph", graph_path, "Site graph file");
    srv_model->excludes(srv_graph);
    serve->add_option("--config", config_path, "key=value config file");
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--port", port, "Listen port (0 picks one)")->check(CLI::Range(0, 65535));
    serve->add_option("--window", window, "Default prediction window");
    serve->add_option("--snapshot-out", snapshot_out, "Write the final model CSV here on shutdown");

    auto* dump = app.add_subcommand("dump", "Show a model's page table");
    auto* dump_model_opt = dump->add_option("--model", model_path, "Model CSV");
    auto* dump_graph = dump->add_option("--graph", graph_path, "Site graph file");
    dump_model_opt->excludes(dump_graph);
    dump->add_option("--config", config_path, "key=value config file");
    dump->add_option("--format", format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const EngineConfig cfg = load_config(config_path);
        const std::size_t w = window.value_or(cfg.window);

        if (*build) {
            const auto g = parse_graph(read_file(graph_path));
            ModificationLog log;
            if (!modlog_path.empty()) log = parse_modification_log(read_file(modlog_path), g);
            write_output(out_path, dump_model(build_model(g, log, cfg.build)));
        } else if (*rank) {
            const auto g = parse_graph(read_file(graph_path));
            const auto ranks = rank_pages(g, cfg.build.rank);
            std::ostringstream os;
            os << "url,score,ordinal\n" << std::setprecision(17);
            for (PageId i = 0; i < g.size(); ++i)
                os << g.url(i) << ',' << ranks.scores[static_cast<Eigen::Index>(i)] << ','
                   << ranks.ordinals[i] << '\n';
            write_output(out_path, os.str());
        } else if (*pred) {
            const auto m = load_model(read_file(model_path), cfg.build);
            std::cout << prediction_to_json(predict(m, url, w)).dump() << '\n';
        } else if (*rep) {
            if (model_path.empty() && graph_path.empty())
                throw CLI::RequiredError("replay needs --model or --graph");
            const auto m = load_or_build(model_path, graph_path, modlog_path, cfg);
            const auto trace = parse_trace(read_file(trace_path));
            ReplayOptions opts;
            opts.window = w;
            opts.update = cfg.update;
            opts.cache = cfg.cache;
            if (!cache_mode.empty())
                opts.cache = cache_mode == "window" ? CacheMode::kWindow : CacheMode::kSession;
            opts.policy = baseline == "random" ? PrefetchPolicy::kRandom : PrefetchPolicy::kModel;
            opts.seed = seed;
            const auto result = replay(m, trace, opts);
            std::cout << render_report(result.report);
            if (!final_model_path.empty()) write_output(final_model_path, dump_model(result.model));
        } else if (*gen) {
            const auto g = parse_graph(read_file(graph_path));
            write_output(out_path, render_trace(generate_trace(g, trace_opts)));
        } else if (*serve) {
            if (model_path.empty() && graph_path.empty())
                throw CLI::RequiredError("serve needs --model or --graph");
            Service service(load_or_build(model_path, graph_path, "", cfg), cfg.update, w);
            return run_serve(service, host, port, snapshot_out);
        } else if (*dump) {
            if (model_path.empty() && graph_path.empty())
                throw CLI::RequiredError("dump needs --model or --graph");
            const auto m = load_or_build(model_path, graph_path, "", cfg);
            if (format == "csv") std::cout << dump_model(m);
            else if (format == "json") std::cout << model_to_json(m).dump(2) << '\n';
            else std::cout << render_table(m);
        }
        return kOk;
    } catch (const CLI::Error& e) {
        std::cerr << "webpredict: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "webpredict: " << e.what() << '\n';
        return kIo;
    } catch (const UnknownUrlError& e) {
        std::cerr << "webpredict: " << e.what() << '\n';
        return kUnknownUrl;
    } catch (const ConvergenceError& e) {
        std::cerr << "webpredict: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const Error& e) {
        std::cerr << "webpredict: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "webpredict: " << e.what() << '\n';
        return kFailure;
    }
}
