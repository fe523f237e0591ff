#include "seqedit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "seqedit/csv.hpp"
#include "seqedit/linalg.hpp"
#include "seqedit/rng.hpp"

namespace seqedit {

using nlohmann::json;

namespace {

const std::vector<std::string> kCheckpointHeader = {
    "edit_index",      "cond",
    "sigma_max_w",     "sigma_min_w",
    "sigma_max_sum",   "efficacy",
    "locality",        "mean_recall_err",
    "restrain_event_index", "restrained_count",
    "sigma_max_before", "sigma_max_after",
    "cond_before",     "cond_after"};

const std::vector<std::string> kBoundHeader = {
    "trial", "p",       "q",        "kappa",    "kappa_hat", "gamma",
    "eta",   "e11_norm", "e12_norm", "e21_norm", "term1",     "term2",
    "term3", "rhs_total", "actual_drift", "acute", "bound_holds"};

const std::vector<std::string> kMetricsHeader = {
    "edit_index", "cond",     "sigma_max_w", "sigma_min_w",
    "sigma_max_sum", "efficacy", "generalization", "locality",
    "mean_recall_err"};

void reject_unknown_keys(const json& object,
                         const std::vector<std::string>& allowed,
                         const std::string& context) {
    for (const auto& item : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) ==
            allowed.end()) {
            throw ConfigError(context.empty() ? item.key()
                                              : context + "." + item.key(),
                              "unknown key");
        }
    }
}

RestraintConfig parse_restraint(const json& node) {
    if (!node.is_object()) {
        throw ConfigError("restraint", "must be an object");
    }
    reject_unknown_keys(node, {"function", "alpha", "beta", "schedule", "k"},
                        "restraint");
    RestraintConfig cfg;
    const std::string fn = node.at("function").get<std::string>();
    if (fn == "log") {
        cfg.function = RestraintFunction::kLog;
        if (node.contains("alpha")) cfg.alpha = node["alpha"].get<double>();
        if (node.contains("beta")) {
            throw ConfigError("restraint.beta", "only valid with linear function");
        }
    } else if (fn == "linear") {
        cfg.function = RestraintFunction::kLinear;
        if (node.contains("beta")) cfg.beta = node["beta"].get<double>();
        if (node.contains("alpha")) {
            throw ConfigError("restraint.alpha", "only valid with log function");
        }
    } else {
        throw ConfigError("restraint.function", "expected 'log' or 'linear'");
    }
    const std::string schedule = node.at("schedule").get<std::string>();
    if (schedule == "once") {
        cfg.schedule = RestraintSchedule::kOnceAtEnd;
        if (node.contains("k")) {
            throw ConfigError("restraint.k", "only valid with every_k schedule");
        }
    } else if (schedule == "every_k") {
        cfg.schedule = RestraintSchedule::kEveryK;
        cfg.every_k = node.at("k").get<int>();
    } else {
        throw ConfigError("restraint.schedule", "expected 'once' or 'every_k'");
    }
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError("restraint", e.what());
    }
    return cfg;
}

std::string bool_cell(bool b) { return b ? "true" : "false"; }

}  // namespace

void ExperimentConfig::validate() const {
    if (p < 1) throw ConfigError("p", "must be >= 1");
    if (q <= p) throw ConfigError("q", "must exceed p");
    if (num_pairs < 1 || num_pairs > q) {
        throw ConfigError("num_pairs", "must be in [1, q]");
    }
    if (num_edits < 1) throw ConfigError("num_edits", "must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("tol", "must be positive");
    if (noise < 0.0) throw ConfigError("noise", "must be non-negative");
    if (gen_samples < 1) throw ConfigError("gen_samples", "must be >= 1");
    if (checkpoint_every < 1) {
        throw ConfigError("checkpoint_every", "must be >= 1");
    }
    if (edit_rule == EditRule::kCovariance && !(ridge > 0.0)) {
        throw ConfigError("ridge", "must be positive for the covariance rule");
    }
    if (first_m < 0 || first_m > num_edits) {
        throw ConfigError("first_m", "must be in [0, num_edits]");
    }
    if (restraint) {
        try {
            restraint->validate();
        } catch (const DomainError& e) {
            throw ConfigError("restraint", e.what());
        }
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("<document>", "top level must be an object");
    }
    reject_unknown_keys(doc,
                        {"p", "q", "num_pairs", "num_edits", "edit_rule",
                         "ridge", "restraint", "noise", "gen_samples", "tol",
                         "checkpoint_every", "seed", "first_m"},
                        "");

    ExperimentConfig cfg;
    try {
        cfg.p = doc.at("p").get<int>();
        cfg.q = doc.at("q").get<int>();
        cfg.num_pairs = doc.at("num_pairs").get<int>();
        cfg.num_edits = doc.at("num_edits").get<int>();
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError("<document>",
                          std::string("missing or mistyped required key: ") +
                              e.what());
    }
    if (doc.contains("edit_rule")) {
        const std::string rule = doc["edit_rule"].get<std::string>();
        if (rule == "rank_one") {
            cfg.edit_rule = EditRule::kRankOne;
        } else if (rule == "covariance") {
            cfg.edit_rule = EditRule::kCovariance;
        } else {
            throw ConfigError("edit_rule", "expected 'rank_one' or 'covariance'");
        }
    }
    if (doc.contains("ridge")) cfg.ridge = doc["ridge"].get<double>();
    if (doc.contains("noise")) cfg.noise = doc["noise"].get<double>();
    if (doc.contains("gen_samples")) cfg.gen_samples = doc["gen_samples"].get<int>();
    if (doc.contains("tol")) cfg.tol = doc["tol"].get<double>();
    if (doc.contains("checkpoint_every")) {
        cfg.checkpoint_every = doc["checkpoint_every"].get<int>();
    }
    if (doc.contains("first_m")) cfg.first_m = doc["first_m"].get<int>();
    if (doc.contains("restraint") && !doc["restraint"].is_null()) {
        cfg.restraint = parse_restraint(doc["restraint"]);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config(text);
}

std::string dump_config(const ExperimentConfig& cfg) {
    json doc;
    doc["p"] = cfg.p;
    doc["q"] = cfg.q;
    doc["num_pairs"] = cfg.num_pairs;
    doc["num_edits"] = cfg.num_edits;
    doc["edit_rule"] =
        cfg.edit_rule == EditRule::kRankOne ? "rank_one" : "covariance";
    doc["ridge"] = cfg.ridge;
    doc["noise"] = cfg.noise;
    doc["gen_samples"] = cfg.gen_samples;
    doc["tol"] = cfg.tol;
    doc["checkpoint_every"] = cfg.checkpoint_every;
    doc["seed"] = cfg.seed;
    doc["first_m"] = cfg.first_m;
    if (cfg.restraint) {
        json r;
        if (cfg.restraint->function == RestraintFunction::kLog) {
            r["function"] = "log";
            r["alpha"] = cfg.restraint->alpha;
        } else {
            r["function"] = "linear";
            r["beta"] = cfg.restraint->beta;
        }
        if (cfg.restraint->schedule == RestraintSchedule::kOnceAtEnd) {
            r["schedule"] = "once";
        } else {
            r["schedule"] = "every_k";
            r["k"] = cfg.restraint->every_k;
        }
        doc["restraint"] = r;
    }
    return doc.dump(2);
}

namespace {

json record_to_json(const DiagnosticsRecord& rec) {
    return json{{"edit_index", rec.edit_index},
                {"cond", rec.cond},
                {"sigma_max_w", rec.sigma_max_w},
                {"sigma_min_w", rec.sigma_min_w},
                {"sigma_max_sum", rec.sigma_max_sum},
                {"efficacy", rec.efficacy},
                {"generalization", rec.generalization},
                {"locality", rec.locality},
                {"mean_recall_err", rec.mean_recall_err}};
}

DiagnosticsRecord record_from_json(const json& node) {
    DiagnosticsRecord rec;
    rec.edit_index = node.at("edit_index").get<int>();
    rec.cond = node.at("cond").get<double>();
    rec.sigma_max_w = node.at("sigma_max_w").get<double>();
    rec.sigma_min_w = node.at("sigma_min_w").get<double>();
    rec.sigma_max_sum = node.at("sigma_max_sum").get<double>();
    rec.efficacy = node.at("efficacy").get<double>();
    rec.generalization = node.at("generalization").get<double>();
    rec.locality = node.at("locality").get<double>();
    rec.mean_recall_err = node.at("mean_recall_err").get<double>();
    return rec;
}

void write_checkpoints_csv(const std::filesystem::path& path,
                           const EditTrace& trace) {
    CsvWriter csv(path, kCheckpointHeader);
    std::size_t next_restraint = 0;
    auto emit_restraints_up_to = [&](int edit_index) {
        while (next_restraint < trace.restraints.size() &&
               trace.restraints[next_restraint].edit_index <= edit_index) {
            const RestraintEvent& ev = trace.restraints[next_restraint];
            csv.row({std::to_string(ev.edit_index), "", "", "", "", "", "", "",
                     std::to_string(ev.event_index),
                     std::to_string(ev.report.restrained_count),
                     format_double(ev.report.sigma_max_before),
                     format_double(ev.report.sigma_max_after),
                     format_double(ev.report.cond_before),
                     format_double(ev.report.cond_after)});
            ++next_restraint;
        }
    };
    for (const DiagnosticsRecord& rec : trace.checkpoints) {
        emit_restraints_up_to(rec.edit_index);
        csv.row({std::to_string(rec.edit_index), format_double(rec.cond),
                 format_double(rec.sigma_max_w), format_double(rec.sigma_min_w),
                 format_double(rec.sigma_max_sum), format_double(rec.efficacy),
                 format_double(rec.locality),
                 format_double(rec.mean_recall_err), "", "", "", "", "", ""});
    }
    emit_restraints_up_to(trace.checkpoints.back().edit_index + 1);
}

Matrix edits_to_rows(const std::vector<EditRequest>& edits, bool keys) {
    const long n = static_cast<long>(edits.size());
    const long dim = keys ? edits.front().key.size()
                          : edits.front().new_value.size();
    Matrix rows(n, dim);
    for (long j = 0; j < n; ++j) {
        const auto& e = edits[static_cast<std::size_t>(j)];
        rows.row(j) = (keys ? e.key : e.new_value).transpose();
    }
    return rows;
}

SequentialEditOptions options_from_config(const ExperimentConfig& cfg) {
    SequentialEditOptions options;
    options.rule = cfg.edit_rule;
    options.restraint = cfg.restraint;
    options.checkpoint_every = cfg.checkpoint_every;
    options.ridge = cfg.ridge;
    options.metric_tol = cfg.tol;
    options.gen_noise = cfg.noise;
    options.gen_samples = cfg.gen_samples;
    options.seed = cfg.seed;
    return options;
}

}  // namespace

RunArtifacts cmd_run(const ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir) {
    cfg.validate();

    const AssociativeMemory mem =
        synthesize_memory(cfg.p, cfg.q, cfg.num_pairs, cfg.seed);
    const std::vector<EditRequest> edits =
        generate_edit_stream(mem, cfg.num_edits, cfg.seed);
    EditTrace trace = sequential_edit(mem, edits, options_from_config(cfg));

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + out_dir.string());
    }

    save_memory(out_dir / "base", mem);
    save_matrix(out_dir / "sum.mat", trace.update_sum);
    if (trace.pre_restraint_sum) {
        save_matrix(out_dir / "sum_unrestrained.mat", *trace.pre_restraint_sum);
    }
    save_matrix(out_dir / "edit_keys.mat", edits_to_rows(edits, true));
    save_matrix(out_dir / "edit_values.mat", edits_to_rows(edits, false));
    write_checkpoints_csv(out_dir / "checkpoints.csv", trace);

    {
        std::ofstream out(out_dir / "config.json");
        if (!out) {
            throw IoError("cannot write " + (out_dir / "config.json").string());
        }
        out << dump_config(cfg) << '\n';
    }

    json summary;
    summary["final"] = record_to_json(trace.checkpoints.back());
    summary["restraints"] = json::array();
    for (const RestraintEvent& ev : trace.restraints) {
        summary["restraints"].push_back(
            {{"event_index", ev.event_index},
             {"edit_index", ev.edit_index},
             {"restrained_count", ev.report.restrained_count},
             {"sigma_max_before", ev.report.sigma_max_before},
             {"sigma_max_after", ev.report.sigma_max_after},
             {"cond_before", ev.report.cond_before},
             {"cond_after", ev.report.cond_after}});
    }
    {
        std::ofstream out(out_dir / "summary.json");
        if (!out) {
            throw IoError("cannot write " + (out_dir / "summary.json").string());
        }
        out << summary.dump(2) << '\n';
    }

    RunArtifacts artifacts;
    artifacts.dir = out_dir;
    artifacts.final_record = trace.checkpoints.back();
    artifacts.trace = std::move(trace);
    return artifacts;
}

EditTrace load_trace(const std::filesystem::path& dir) {
    EditTrace trace;
    trace.base = load_memory(dir / "base");
    trace.update_sum = load_matrix(dir / "sum.mat");
    if (std::filesystem::exists(dir / "sum_unrestrained.mat")) {
        trace.pre_restraint_sum = load_matrix(dir / "sum_unrestrained.mat");
    }

    const Matrix keys = load_matrix(dir / "edit_keys.mat");
    const Matrix values = load_matrix(dir / "edit_values.mat");
    if (keys.rows() != values.rows()) {
        throw IoError("edit_keys.mat / edit_values.mat row counts differ in " +
                      dir.string());
    }
    for (long j = 0; j < keys.rows(); ++j) {
        trace.edits.push_back(EditRequest{keys.row(j).transpose(),
                                          values.row(j).transpose()});
    }

    const CsvTable table = read_csv(dir / "checkpoints.csv");
    const int col_edit = table.column("edit_index");
    const int col_event = table.column("restrain_event_index");
    for (const auto& row : table.rows) {
        if (!row[static_cast<std::size_t>(col_event)].empty()) {
            RestraintEvent ev;
            ev.edit_index = std::stoi(row[static_cast<std::size_t>(col_edit)]);
            ev.event_index = std::stoi(row[static_cast<std::size_t>(col_event)]);
            ev.report.restrained_count =
                std::stoi(row[static_cast<std::size_t>(table.column("restrained_count"))]);
            ev.report.sigma_max_before = std::stod(
                row[static_cast<std::size_t>(table.column("sigma_max_before"))]);
            ev.report.sigma_max_after = std::stod(
                row[static_cast<std::size_t>(table.column("sigma_max_after"))]);
            ev.report.cond_before = std::stod(
                row[static_cast<std::size_t>(table.column("cond_before"))]);
            ev.report.cond_after = std::stod(
                row[static_cast<std::size_t>(table.column("cond_after"))]);
            trace.restraints.push_back(std::move(ev));
            continue;
        }
        DiagnosticsRecord rec;
        rec.edit_index = std::stoi(row[static_cast<std::size_t>(col_edit)]);
        rec.cond = std::stod(row[static_cast<std::size_t>(table.column("cond"))]);
        rec.sigma_max_w =
            std::stod(row[static_cast<std::size_t>(table.column("sigma_max_w"))]);
        rec.sigma_min_w =
            std::stod(row[static_cast<std::size_t>(table.column("sigma_min_w"))]);
        rec.sigma_max_sum =
            std::stod(row[static_cast<std::size_t>(table.column("sigma_max_sum"))]);
        rec.efficacy =
            std::stod(row[static_cast<std::size_t>(table.column("efficacy"))]);
        rec.locality =
            std::stod(row[static_cast<std::size_t>(table.column("locality"))]);
        rec.mean_recall_err = std::stod(
            row[static_cast<std::size_t>(table.column("mean_recall_err"))]);
        // generalization is not serialized per checkpoint; analyze recomputes
        // it for the final record.
        rec.generalization = 0.0;
        trace.checkpoints.push_back(rec);
    }
    if (trace.checkpoints.empty()) {
        throw IoError("checkpoints.csv has no checkpoint rows in " + dir.string());
    }
    return trace;
}

namespace {

BoundTrial run_one_bound_trial(int trial, int p_max, int q_max,
                               std::uint64_t seed) {
    GaussianStream rng(
        derive_seed(seed, {stream_tag::bound_trial,
                           static_cast<std::uint64_t>(trial)}));
    const int p = static_cast<int>(rng.uniform_int(6, static_cast<std::uint64_t>(p_max)));
    const int q = static_cast<int>(rng.uniform_int(
        static_cast<std::uint64_t>(p + 4), static_cast<std::uint64_t>(q_max)));

    const Matrix w = rng.normal_matrix(p, q);
    const SvdFactorization f = svd(w);
    const double sigma_min = f.sigma_min();

    // Block norms stay below sigma_min so gamma = 1 - ||E11|| / sigma_min
    // remains positive and the perturbation is small in the 2-norm.
    const double e11_scale = (0.05 + 0.85 * rng.uniform01()) * sigma_min;
    const double e12_scale = (0.05 + 0.85 * rng.uniform01()) * sigma_min;
    Matrix e11 = rng.normal_matrix(p, p);
    Matrix e12 = rng.normal_matrix(p, q - p);
    e11 *= e11_scale / spectral_norm(e11);
    e12 *= e12_scale / spectral_norm(e12);

    Matrix e_reduced(p, q);
    e_reduced.leftCols(p) = e11;
    e_reduced.rightCols(q - p) = e12;
    // Full-rank W leaves the E21/E22 blocks empty, so this assembly is an
    // acute perturbation by construction (Lemma-2 residual is vacuous).
    const Matrix dw = f.u * e_reduced * f.v.transpose();
    const Vector v = rng.unit_vector(p);

    BoundTrial t;
    t.trial = trial;
    t.p = p;
    t.q = q;
    t.kappa = f.sigma_max() / sigma_min;
    t.acute = static_cast<bool>(check_acute(reduced_form(w, dw)));
    t.actual_drift = actual_key_drift(w, dw, v);
    t.pinv_norm_tilde = spectral_norm(pseudo_inverse(w + dw));
    try {
        const GammaBound gb = kappa_hat_bound(w, dw);
        t.gamma = gb.gamma;
        t.pinv_norm_bound = gb.bound;
        t.bound = key_drift_bound(w, dw, v);
        t.bound_holds = t.actual_drift <= t.bound->rhs_total + 1e-8;
    } catch (const BoundInapplicableError& e) {
        t.gamma = e.gamma;
    }
    return t;
}

}  // namespace

std::vector<BoundTrial> run_bound_campaign(int trials, int p_max, int q_max,
                                           std::uint64_t seed, int threads) {
    if (trials < 1) {
        throw DomainError("bound campaign: trials must be >= 1");
    }
    if (p_max < 6) {
        throw DomainError("bound campaign: p must be >= 6");
    }
    if (q_max < p_max + 4) {
        throw DomainError("bound campaign: q must be >= p + 4");
    }
    threads = std::max(1, std::min(threads, trials));

    std::vector<BoundTrial> results(static_cast<std::size_t>(trials));
    auto worker = [&](int tid) {
        for (int t = tid; t < trials; t += threads) {
            results[static_cast<std::size_t>(t)] =
                run_one_bound_trial(t, p_max, q_max, seed);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }
    return results;
}

void cmd_bound_check(int trials, int p_max, int q_max, std::uint64_t seed,
                     const std::filesystem::path& out_path, int threads) {
    const std::vector<BoundTrial> results =
        run_bound_campaign(trials, p_max, q_max, seed, threads);

    CsvWriter csv(out_path, kBoundHeader);
    for (const BoundTrial& t : results) {
        std::vector<std::string> cells;
        cells.reserve(kBoundHeader.size());
        cells.push_back(std::to_string(t.trial));
        cells.push_back(std::to_string(t.p));
        cells.push_back(std::to_string(t.q));
        cells.push_back(format_double(t.kappa));
        if (t.bound) {
            const PerturbationBound& b = *t.bound;
            cells.push_back(format_double(b.kappa_hat));
            cells.push_back(format_double(t.gamma));
            cells.push_back(format_double(b.eta));
            cells.push_back(format_double(b.e11_norm));
            cells.push_back(format_double(b.e12_norm));
            cells.push_back(format_double(b.e21_norm));
            cells.push_back(format_double(b.term1));
            cells.push_back(format_double(b.term2));
            cells.push_back(format_double(b.term3));
            cells.push_back(format_double(b.rhs_total));
        } else {
            // gamma <= 0: the bound machinery is inapplicable; flag the row
            // by leaving the bound fields blank.
            cells.push_back("");
            cells.push_back(format_double(t.gamma));
            for (int i = 0; i < 8; ++i) cells.push_back("");
        }
        cells.push_back(format_double(t.actual_drift));
        cells.push_back(bool_cell(t.acute));
        cells.push_back(t.bound_holds ? bool_cell(*t.bound_holds) : "");
        csv.row(cells);
    }
}

void cmd_analyze(const std::filesystem::path& trace_dir,
                 const std::filesystem::path& out_dir) {
    const ExperimentConfig cfg = load_config(trace_dir / "config.json");
    const EditTrace trace = load_trace(trace_dir);

    std::ifstream in(trace_dir / "summary.json");
    if (!in) {
        throw IoError("cannot open " + (trace_dir / "summary.json").string());
    }
    json summary;
    try {
        in >> summary;
    } catch (const json::exception& e) {
        throw IoError("bad summary.json in " + trace_dir.string() + ": " +
                      e.what());
    }
    const DiagnosticsRecord stored = record_from_json(summary.at("final"));

    const Matrix w_final = trace.final_w();
    const DiagnosticsRecord recomputed = compute_diagnostics(
        static_cast<int>(trace.edits.size()), w_final, trace.update_sum,
        trace.base, trace.edits, static_cast<int>(trace.edits.size()),
        options_from_config(cfg));

    const double scale = std::max(1.0, std::abs(stored.cond));
    if (std::abs(recomputed.cond - stored.cond) > 1e-8 * scale ||
        std::abs(recomputed.efficacy - stored.efficacy) > 1e-8 ||
        std::abs(recomputed.locality - stored.locality) > 1e-8 ||
        std::abs(recomputed.generalization - stored.generalization) > 1e-8 ||
        std::abs(recomputed.mean_recall_err - stored.mean_recall_err) > 1e-8) {
        throw IoError("summary.json in " + trace_dir.string() +
                      " does not match recomputed diagnostics");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + out_dir.string());
    }

    {
        CsvWriter csv(out_dir / "metrics.csv", kMetricsHeader);
        csv.row({std::to_string(recomputed.edit_index),
                 format_double(recomputed.cond),
                 format_double(recomputed.sigma_max_w),
                 format_double(recomputed.sigma_min_w),
                 format_double(recomputed.sigma_max_sum),
                 format_double(recomputed.efficacy),
                 format_double(recomputed.generalization),
                 format_double(recomputed.locality),
                 format_double(recomputed.mean_recall_err)});
    }

    const int first_m =
        std::min(cfg.effective_first_m(), static_cast<int>(trace.edits.size()));
    const ValueDriftReport drift = value_drift(trace, std::nullopt, first_m);
    {
        CsvWriter csv(out_dir / "drift.csv", {"label", "index", "pc1", "pc2"});
        auto emit = [&](const std::string& label,
                        const std::vector<Eigen::Vector2d>& coords) {
            for (std::size_t j = 0; j < coords.size(); ++j) {
                csv.row({label, std::to_string(j),
                         format_double(coords[j](0)),
                         format_double(coords[j](1))});
            }
        };
        emit("current", drift.current);
        emit("editing", drift.editing);
        if (!drift.prune.empty()) emit("prune", drift.prune);
    }
}

int configured_threads() {
    if (const char* env = std::getenv("SEQEDIT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace seqedit
