#include "wbench/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "wbench/blocks.hpp"
#include "wbench/io.hpp"
#include "wbench/util.hpp"

namespace wbench {

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split_on(s, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

// Output collector: atomic writes plus the append-only manifest, every file
// referenced with a content digest.
struct OutputSink {
    std::vector<std::string> argv;
    nlohmann::json outputs = nlohmann::json::array();

    void write_text(const std::string& path, const std::string& text) {
        atomic_write_text(path, text);
        outputs.push_back({{"path", path}, {"fnv1a64", fnv1a64_hex(text)}});
    }

    void note_file(const std::string& path, const std::string& bytes) {
        outputs.push_back({{"path", path}, {"fnv1a64", fnv1a64_hex(bytes)}});
    }

    void finish(const Config& cfg, std::uint64_t seed) {
        if (outputs.empty()) return;
        std::filesystem::path dir =
            std::filesystem::path(outputs.front()["path"].get<std::string>()).parent_path();
        if (dir.empty()) dir = ".";
        nlohmann::json entry;
        entry["version"] = kVersion;
        entry["cmd"] = argv;
        entry["seed"] = seed;
        entry["config"] = cfg.entries();
        entry["outputs"] = outputs;
        append_manifest_line((dir / "manifest.jsonl").string(), entry);
    }
};

GridFunction builtin_field(const GridSpec& g, const std::string& desc) {
    std::vector<std::string> parts = split_on(desc, ':');
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("builtin input: builtin:<kind>[:<args>]");
    const std::string& kind = parts[1];
    std::vector<double> a = parts.size() == 3 ? parse_doubles(parts[2]) : std::vector<double>{};
    auto need = [&](std::size_t k) {
        if (a.size() != k)
            throw std::invalid_argument("builtin:" + kind + ": expected " + std::to_string(k) +
                                        " comma-separated arguments");
    };
    if (kind == "indicator") {
        need(2);
        double lo = a[0], hi = a[1];
        auto in1 = [lo, hi](double x) { return x > lo && x < hi ? 1.0 : 0.0; };
        return g.dim == 1 ? sample_function1(g, in1)
                          : sample_function2(g, [&](double x, double y) { return in1(x) * in1(y); });
    }
    if (kind == "ramp") {
        need(2);
        double c = 0.5 * (a[0] + a[1]), hw = 0.5 * (a[1] - a[0]);
        if (!(hw > 0)) throw std::invalid_argument("builtin:ramp: empty interval");
        auto tent = [c, hw](double x) { return std::max(0.0, 1.0 - std::abs(x - c) / hw); };
        return g.dim == 1 ? sample_function1(g, tent)
                          : sample_function2(g, [&](double x, double y) { return tent(x) * tent(y); });
    }
    if (kind == "gauss") {
        need(2);
        double c = a[0], sig = a[1];
        if (!(sig > 0)) throw std::invalid_argument("builtin:gauss: sigma must be positive");
        auto bell1 = [c, sig](double x) { return std::exp(-0.5 * (x - c) * (x - c) / (sig * sig)); };
        return g.dim == 1 ? sample_function1(g, bell1)
                          : sample_function2(g, [&](double x, double y) {
                                double r2 = (x - c) * (x - c) + (y - c) * (y - c);
                                return std::exp(-0.5 * r2 / (sig * sig));
                            });
    }
    if (kind == "cos") {
        need(1);
        double freq = a[0];
        auto wave = [freq](double x) { return std::cos(2.0 * 3.14159265358979323846 * freq * x); };
        return g.dim == 1 ? sample_function1(g, wave)
                          : sample_function2(g, [&](double x, double y) { return wave(x) * wave(y); });
    }
    if (kind == "decay") {
        need(2);
        double gamma = a[0], ell = a[1];
        if (!(ell > 0)) throw std::invalid_argument("builtin:decay: scale must be positive");
        auto profile = [gamma, ell](double r) { return std::pow(1.0 + r / ell, -gamma); };
        return g.dim == 1
                   ? sample_function1(g, [&](double x) { return profile(std::abs(x)); })
                   : sample_function2(g, [&](double x, double y) { return profile(std::hypot(x, y)); });
    }
    throw std::invalid_argument("unknown builtin input: " + desc);
}

GridFunction input_field(const std::string& desc, const GridSpec& g) {
    if (desc.rfind("builtin:", 0) == 0) return builtin_field(g, desc);
    return load_grid_function(desc);
}

// Values shared by all leaves; only the parsed leaf's option pointers are
// consulted for explicit-flag detection.
struct Opts {
    std::string config_path, out_path, csv_path;
    std::uint64_t seed = 0;
    bool strict = false;
    int threads = 0;
    std::string weight = "power:0.3";
    std::string op;
    std::string input;
    int dim = 1;
    double L = 2.0;
    int N = 512;
    double p = 2.0, q = 1.5, s = 8.0, eps = -1.0;
    int trials = 0;
    std::string classes = "aplus:1.5";
    std::string center = "0";
};

struct LeafOpts {
    CLI::Option* seed = nullptr;
    CLI::Option* weight = nullptr;
    CLI::Option* op = nullptr;
    CLI::Option* dim = nullptr;
    CLI::Option* L = nullptr;
    CLI::Option* N = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* q = nullptr;
    CLI::Option* s = nullptr;
    CLI::Option* eps = nullptr;
    CLI::Option* trials = nullptr;
};

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

void add_common(CLI::App* a, Opts& o, LeafOpts& lo) {
    a->add_option("--config", o.config_path, "key=value config file");
    a->add_option("--out", o.out_path, "output file (JSON report)");
    a->add_option("--csv", o.csv_path, "per-trial CSV output");
    lo.seed = a->add_option("--seed", o.seed, "master seed (overrides config)");
    a->add_flag("--strict", o.strict, "exit 1 when a gate or stability check fails");
    a->add_option("--threads", o.threads, "worker threads; 0 = hardware (env WEIGHTBENCH_THREADS wins)");
}

void add_grid(CLI::App* a, Opts& o, LeafOpts& lo) {
    lo.dim = a->add_option("--dim", o.dim, "grid dimension, 1 or 2");
    lo.L = a->add_option("--L", o.L, "domain half side");
    lo.N = a->add_option("--N", o.N, "cells per axis (power of two)");
    lo.weight = a->add_option("--weight", o.weight, "weight descriptor, e.g. power:0.3");
}

void add_exponents(CLI::App* a, Opts& o, LeafOpts& lo) {
    lo.p = a->add_option("--p", o.p, "outer exponent p");
    lo.q = a->add_option("--q", o.q, "class exponent q");
    lo.s = a->add_option("--s", o.s, "block integrability exponent s (inf allowed)");
    lo.eps = a->add_option("--eps", o.eps, "molecule epsilon; negative = default");
    lo.trials = a->add_option("--trials", o.trials, "trial count");
}

GridSpec grid_from(const Opts& o) {
    GridSpec g{o.dim, o.L, o.N};
    g.validate();
    return g;
}

void emit_json(OutputSink& sink, const Opts& o, const nlohmann::json& j) {
    std::string text = j.dump(2) + "\n";
    if (!o.out_path.empty())
        sink.write_text(o.out_path, text);
    else
        std::fputs(text.c_str(), stdout);
}

BoundReport run_named_experiment(const std::string& leaf, const ExperimentConfig& ec) {
    if (leaf == "prop75") return uniform_block_bound(make_operator(ec.op), ec);
    if (leaf == "thm71") return decomposition_inequality(make_operator(ec.op), ec);
    if (leaf == "prop712") return bh_block_bound(make_operator(ec.op), ec);
    if (leaf == "whitney") return whitney_check(ec);
    if (leaf == "duality") return duality_check(ec);
    if (leaf == "sharpness") return sharpness_study(ec);
    throw std::invalid_argument("unknown experiment: " + leaf);
}

std::string default_op_for(const std::string& leaf) {
    return leaf == "prop75" ? "identity" : "hilbert:h";
}

int cmd_weights(const Opts& o, OutputSink& sink) {
    GridSpec g = grid_from(o);
    WeightBuilder builder = weight_from_descriptor(o.weight);
    Weight w = builder(g);
    nlohmann::json out;
    out["schema"] = "weightbench/1";
    out["grid"] = {{"dim", g.dim}, {"L", g.L}, {"N", g.N}};
    out["weight"] = o.weight;
    nlohmann::json results = nlohmann::json::array();
    for (const std::string& spec : split_on(o.classes, ',')) {
        if (spec.empty()) continue;
        std::vector<std::string> parts = split_on(spec, ':');
        const std::string& kind = parts[0];
        auto need = [&](std::size_t k) {
            if (parts.size() != k + 1)
                throw std::invalid_argument("class spec " + spec + ": wrong argument count");
        };
        nlohmann::json j;
        if (kind == "aplus") {
            need(1);
            double q = std::stod(parts[1]);
            j = weight_report_to_json(aplus_constant(w, q));
            j["q"] = q;
        } else if (kind == "ap") {
            need(1);
            double p = std::stod(parts[1]);
            j = weight_report_to_json(ap_constant(w, p));
            j["p"] = p;
        } else if (kind == "doubling") {
            need(2);
            double p = std::stod(parts[1]), lambda = std::stod(parts[2]);
            j = weight_report_to_json(doubling_constant(w, p, lambda));
            j["p"] = p;
            j["lambda"] = lambda;
        } else if (kind == "rh") {
            need(1);
            double r = std::stod(parts[1]);
            j = weight_report_to_json(reverse_holder_constant(w, r));
            j["r"] = r;
        } else if (kind == "critical") {
            need(0);
            CriticalIndexOptions co;
            co.base_N = std::min(g.dim == 1 ? 128 : 16, g.N);
            CriticalIndexResult ci = critical_index(builder, g, co);
            j["r_w"] = json_finite(ci.unbounded ? kInf : ci.value);
            j["unbounded"] = ci.unbounded;
            nlohmann::json probes = nlohmann::json::array();
            for (const auto& pr : ci.probes) probes.push_back({pr.first, json_finite(pr.second)});
            j["probes"] = probes;
        } else if (kind == "classp") {
            need(1);
            double delta = std::stod(parts[1]);
            j["delta"] = delta;
            j["positive"] = class_p_check(w, delta);
        } else {
            throw std::invalid_argument("unknown class spec: " + spec);
        }
        j["kind"] = kind;
        results.push_back(j);
    }
    out["results"] = results;
    emit_json(sink, o, out);
    sink.finish(Config{}, o.seed);
    return 0;
}

int cmd_blocks(const Opts& o, OutputSink& sink) {
    GridSpec g = grid_from(o);
    std::string input = o.input.empty() ? "builtin:indicator:0,1" : o.input;
    GridFunction f = input_field(input, g);
    WeightBuilder builder = weight_from_descriptor(o.weight);
    auto w = std::make_shared<const Weight>(builder(f.spec));
    BlockDecomposition d = decompose_ml(f, o.p, o.s, w);
    double err = 0;
    if (d.terms.empty()) {
        err = gf_max_abs(f);
    } else {
        GridFunction rec = reconstruct(d);
        for (std::size_t i = 0; i < rec.size(); ++i)
            err = std::max(err, std::abs(rec.samples[i] - f.samples[i]));
    }
    nlohmann::json out;
    out["schema"] = "weightbench/1";
    out["input"] = input;
    out["p"] = o.p;
    out["s"] = json_finite(o.s);
    out["weight"] = o.weight;
    out["n_terms"] = d.terms.size();
    out["quasinorm"] = json_finite(coefficient_quasinorm(d));
    out["ml_quasinorm"] = json_finite(ml_quasinorm(f, o.p, *w));
    out["recon_err"] = json_finite(err);
    emit_json(sink, o, out);
    if (!o.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (const BlockTerm& t : d.terms)
            rows.push_back({double(t.tag), t.lambda, double(t.block.support.corner[0]),
                            double(t.block.support.corner[1]),
                            double(side_cells(f.spec, t.block.support)),
                            gf_max_abs(t.block.samples)});
        sink.write_text(o.csv_path,
                        csv_text({"level", "lambda", "corner_x", "corner_y", "side_cells", "peak"}, rows));
    }
    sink.finish(Config{}, o.seed);
    return 0;
}

int cmd_molecules(const Opts& o, OutputSink& sink) {
    GridSpec g = grid_from(o);
    std::string input = o.input.empty() ? "builtin:decay:3,0.25" : o.input;
    GridFunction f = input_field(input, g);
    WeightBuilder builder = weight_from_descriptor(o.weight);
    auto w = std::make_shared<const Weight>(builder(f.spec));
    std::vector<double> c = parse_doubles(o.center);
    if (c.empty() || c.size() > 2) throw std::invalid_argument("--center expects x or x,y");
    Molecule m{f, {c[0], c.size() == 2 ? c[1] : 0.0}, MoleculeParams{o.p, o.s, o.q, o.eps}, w};
    double R = molecule_R(m);
    MoleculeSplit split = molecule_to_blocks(m);
    double err = 0;
    if (split.decomp.terms.empty()) {
        err = gf_max_abs(f);
    } else {
        GridFunction rec = reconstruct(split.decomp);
        for (std::size_t i = 0; i < rec.size(); ++i)
            err = std::max(err, std::abs(rec.samples[i] - f.samples[i]));
    }
    nlohmann::json out;
    out["schema"] = "weightbench/1";
    out["input"] = input;
    out["R"] = json_finite(R);
    out["l"] = json_finite(split.l);
    out["k0"] = split.k0;
    out["clamped"] = split.clamped;
    out["n_terms"] = split.decomp.terms.size();
    out["quasinorm"] = json_finite(coefficient_quasinorm(split.decomp));
    out["recon_err"] = json_finite(err);
    emit_json(sink, o, out);
    if (!o.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (const BlockTerm& t : split.decomp.terms)
            rows.push_back({double(t.tag), t.lambda, double(t.block.support.corner[0]),
                            double(t.block.support.corner[1]),
                            double(side_cells(f.spec, t.block.support)),
                            gf_max_abs(t.block.samples)});
        sink.write_text(o.csv_path,
                        csv_text({"annulus", "lambda", "corner_x", "corner_y", "side_cells", "peak"}, rows));
    }
    sink.finish(Config{}, o.seed);
    return 0;
}

int cmd_op(const Opts& o, OutputSink& sink) {
    GridSpec g = grid_from(o);
    std::string input = o.input.empty() ? "builtin:indicator:0,1" : o.input;
    GridFunction f = input_field(input, g);
    OperatorHandle op = make_operator(o.op.empty() ? "hilbert:h" : o.op);
    GridFunction out_f = op.apply(f);
    if (!o.out_path.empty()) {
        std::filesystem::path p(o.out_path);
        std::filesystem::path tmp = p.parent_path() / ("tmp_" + p.filename().string());
        save_grid_function(out_f, tmp.string());
        std::ifstream in(tmp, std::ios::binary);
        std::ostringstream bytes;
        bytes << in.rdbuf();
        in.close();
        if (std::rename(tmp.string().c_str(), o.out_path.c_str()) != 0) {
            std::remove(tmp.string().c_str());
            throw std::runtime_error("rename failed: " + o.out_path);
        }
        sink.note_file(o.out_path, bytes.str());
    } else {
        std::printf("%s: max|Tf|=%s\n", op.name.c_str(), format_g17(gf_max_abs(out_f)).c_str());
    }
    sink.finish(Config{}, o.seed);
    return 0;
}

int cmd_verify(const std::string& leaf, const Opts& o, const LeafOpts& lo, OutputSink& sink) {
    Config cfg = o.config_path.empty() ? Config{} : Config::from_file(o.config_path);
    ExperimentConfig ec = experiment_from_config(cfg);
    if (given(lo.seed)) ec.seed = o.seed;
    if (given(lo.dim)) ec.dim = o.dim;
    if (given(lo.L)) ec.L = o.L;
    if (given(lo.weight)) ec.weight = o.weight;
    if (given(lo.p)) ec.p = o.p;
    if (given(lo.q)) ec.q = o.q;
    if (given(lo.s)) ec.s = o.s;
    if (given(lo.eps)) ec.eps = o.eps;
    if (given(lo.trials)) ec.trials = o.trials;
    if (given(lo.op))
        ec.op = o.op;
    else if (!cfg.has("exp.op"))
        ec.op = default_op_for(leaf);
    BoundReport rep = run_named_experiment(leaf, ec);
    if (!o.csv_path.empty()) sink.write_text(o.csv_path, csv_text(rep.columns, rep.rows));
    if (!o.out_path.empty()) sink.write_text(o.out_path, report_to_json(rep).dump(2) + "\n");
    std::printf("%s: sup=%s stability=%s pass=%s\n", rep.name.c_str(), format_g17(rep.sup).c_str(),
                format_g17(rep.stability).c_str(), rep.pass ? "yes" : "no");
    for (const std::string& n : rep.notes) std::printf("  %s\n", n.c_str());
    sink.finish(cfg, ec.seed);
    return o.strict && !(rep.pass && rep.gates.ok) ? 1 : 0;
}

int cmd_sweep(const Opts& o, const LeafOpts& lo, OutputSink& sink) {
    if (o.config_path.empty()) throw std::invalid_argument("sweep requires --config");
    Config base = Config::from_file(o.config_path);
    const std::string exp_name = base.get("sweep.experiment", "sharpness");
    const int cap = base.get_int("sweep.cap", 64);
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    const std::string prefix = "sweep.vary.";
    for (const auto& kv : base.entries()) {
        if (kv.first.rfind(prefix, 0) != 0) continue;
        std::vector<std::string> values;
        for (const std::string& tok : split_on(kv.second, ','))
            if (!tok.empty()) values.push_back(tok);
        if (values.empty())
            throw std::invalid_argument("sweep axis " + kv.first + " has no values");
        axes.emplace_back(kv.first.substr(prefix.size()), values);
    }
    std::size_t total = 1;
    for (const auto& ax : axes) total *= ax.second.size();
    if (total > std::size_t(std::max(1, cap)))
        throw std::invalid_argument("sweep grid has " + std::to_string(total) +
                                    " combinations, above the cap of " + std::to_string(cap));
    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    std::uint64_t seed_used = 0;
    for (std::size_t combo = 0; combo < total; ++combo) {
        Config c = base;
        std::size_t rem = combo;
        std::vector<std::pair<std::string, std::string>> chosen;
        for (const auto& ax : axes) {
            const std::string& val = ax.second[rem % ax.second.size()];
            rem /= ax.second.size();
            c.set(ax.first, val);
            chosen.emplace_back(ax.first, val);
        }
        ExperimentConfig ec = experiment_from_config(c);
        if (given(lo.seed)) ec.seed = o.seed;
        if (!c.has("exp.op")) ec.op = default_op_for(exp_name);
        seed_used = ec.seed;
        BoundReport rep = run_named_experiment(exp_name, ec);
        all_pass = all_pass && rep.pass;
        const std::string id = std::to_string(combo);
        for (const auto& kv : chosen) rows.push_back({id, "param." + kv.first, kv.second});
        rows.push_back({id, "metric.sup", format_g17(rep.sup)});
        rows.push_back({id, "metric.median", format_g17(rep.median)});
        rows.push_back({id, "metric.stability", format_g17(rep.stability)});
        rows.push_back({id, "metric.fitted_slope", format_g17(rep.slope)});
        rows.push_back({id, "metric.pass", rep.pass ? "1" : "0"});
    }
    std::string out_csv = !o.csv_path.empty() ? o.csv_path
                          : !o.out_path.empty() ? o.out_path
                                                : std::string("sweep.csv");
    sink.write_text(out_csv, csv_text_str({"combo", "key", "value"}, rows));
    std::printf("sweep[%s]: %zu combinations, %s\n", exp_name.c_str(), total,
                all_pass ? "all pass" : "failures present");
    sink.finish(base, seed_used);
    return o.strict && !all_pass ? 1 : 0;
}

int resolve_threads(const Opts& o) {
    if (const char* env = std::getenv("WEIGHTBENCH_THREADS")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw std::invalid_argument("WEIGHTBENCH_THREADS must be an integer");
        }
    }
    return o.threads;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"grid-scale weight classes, block decompositions, and operator bounds"};
    app.name("weightbench");
    app.require_subcommand(1);

    Opts o;
    std::map<const CLI::App*, LeafOpts> leaf_opts;

    CLI::App* weights_cmd = app.add_subcommand("weights", "weight class estimators");
    weights_cmd->require_subcommand(1);
    CLI::App* weights_analyze = weights_cmd->add_subcommand("analyze", "estimate class constants");
    {
        LeafOpts lo;
        add_common(weights_analyze, o, lo);
        add_grid(weights_analyze, o, lo);
        weights_analyze->add_option("--classes", o.classes,
                                    "comma list: aplus:<q>, ap:<p>, doubling:<p>:<lambda>, rh:<r>, "
                                    "critical, classp:<delta>");
        leaf_opts[weights_analyze] = lo;
    }

    CLI::App* blocks_cmd = app.add_subcommand("blocks", "block decompositions");
    blocks_cmd->require_subcommand(1);
    CLI::App* blocks_decompose =
        blocks_cmd->add_subcommand("decompose", "level-set decomposition of an input field");
    {
        LeafOpts lo;
        add_common(blocks_decompose, o, lo);
        add_grid(blocks_decompose, o, lo);
        add_exponents(blocks_decompose, o, lo);
        blocks_decompose->add_option("--input", o.input, "field: builtin:<kind>[:<args>] or a file");
        leaf_opts[blocks_decompose] = lo;
    }

    CLI::App* molecules_cmd = app.add_subcommand("molecules", "molecule machinery");
    molecules_cmd->require_subcommand(1);
    CLI::App* molecules_split =
        molecules_cmd->add_subcommand("split", "split a molecule into annulus blocks");
    {
        LeafOpts lo;
        add_common(molecules_split, o, lo);
        add_grid(molecules_split, o, lo);
        add_exponents(molecules_split, o, lo);
        molecules_split->add_option("--input", o.input, "field: builtin:<kind>[:<args>] or a file");
        molecules_split->add_option("--center", o.center, "molecule center: x or x,y");
        leaf_opts[molecules_split] = lo;
    }

    CLI::App* op_cmd = app.add_subcommand("op", "apply an operator");
    op_cmd->require_subcommand(1);
    CLI::App* op_apply = op_cmd->add_subcommand("apply", "apply a named operator to a field");
    {
        LeafOpts lo;
        add_common(op_apply, o, lo);
        add_grid(op_apply, o, lo);
        lo.op = op_apply->add_option("--op", o.op, "operator descriptor, e.g. hilbert:h, hl_max");
        op_apply->add_option("--input", o.input, "field: builtin:<kind>[:<args>] or a file");
        leaf_opts[op_apply] = lo;
    }

    CLI::App* verify_cmd = app.add_subcommand("verify", "inequality experiments");
    verify_cmd->require_subcommand(1);
    const char* leaves[] = {"prop75", "thm71", "prop712", "sharpness", "duality", "whitney"};
    const char* leaf_help[] = {"uniform block bound",          "decomposition inequality",
                               "molecule block bound",         "sharpness scaling study",
                               "Morrey duality pairing bound", "constructive decomposition check"};
    std::map<std::string, CLI::App*> verify_leaves;
    for (std::size_t i = 0; i < 6; ++i) {
        CLI::App* leaf = verify_cmd->add_subcommand(leaves[i], leaf_help[i]);
        LeafOpts lo;
        add_common(leaf, o, lo);
        add_grid(leaf, o, lo);
        add_exponents(leaf, o, lo);
        lo.op = leaf->add_option("--op", o.op, "operator descriptor");
        leaf_opts[leaf] = lo;
        verify_leaves[leaves[i]] = leaf;
    }

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "cartesian parameter sweep");
    {
        LeafOpts lo;
        add_common(sweep_cmd, o, lo);
        leaf_opts[sweep_cmd] = lo;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    OutputSink sink;
    sink.argv.push_back("weightbench");
    for (const std::string& a : args) sink.argv.push_back(a);

    try {
        set_threads(resolve_threads(o));
        if (*weights_analyze) return cmd_weights(o, sink);
        if (*blocks_decompose) return cmd_blocks(o, sink);
        if (*molecules_split) return cmd_molecules(o, sink);
        if (*op_apply) return cmd_op(o, sink);
        for (const auto& kv : verify_leaves)
            if (*kv.second) return cmd_verify(kv.first, o, leaf_opts[kv.second], sink);
        if (*sweep_cmd) return cmd_sweep(o, leaf_opts[sweep_cmd], sink);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    std::fprintf(stderr, "error: no command executed\n");
    return 2;
}

} // namespace wbench
