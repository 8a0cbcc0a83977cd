// hgcolor - batch driver for the hypergraph list-coloring pipeline.
//
// Subcommands: generate, decompose, color-girth5, color-random, verify,
// schedule, estimate-keep, stats. Every artifact-writing command also
// writes <output>.manifest.json with the full configuration, the seed and
// content hashes; re-running the recorded command line reproduces the
// outputs byte for byte.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgc/coloring.hpp"
#include "hgc/cycles.hpp"
#include "hgc/degeneracy.hpp"
#include "hgc/hypergraph.hpp"
#include "hgc/pipeline.hpp"
#include "hgc/randgen.hpp"
#include "hgc/rand_util.hpp"
#include "hgc/schedule.hpp"

using nlohmann::json;

namespace {

std::string out_dir() {
    const char* env = std::getenv("HGCOLOR_OUT");
    return env ? std::string(env) : std::string(".");
}

std::string resolve(const std::string& path) {
    if (path.empty() || path.front() == '/' || path.rfind("./", 0) == 0) return path;
    return out_dir() + "/" + path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// outputs: (logical name, resolved path); the manifest records the logical
// name so reruns into different directories stay byte-identical
void write_manifest(const std::string& primary_output, const json& config,
                    const std::vector<std::pair<std::string, std::string>>& outputs) {
    json manifest;
    manifest["config"] = config;
    manifest["outputs"] = json::array();
    for (const auto& [name, path] : outputs) {
        std::string bytes = slurp(path);
        manifest["outputs"].push_back({{"path", name},
                                       {"bytes", bytes.size()},
                                       {"fnv1a64", hgc::fnv1a64(bytes)}});
    }
    std::ofstream out(primary_output + ".manifest.json");
    out << manifest.dump(2) << '\n';
}

json cycle_report_json(const hgc::CycleReport& rep) {
    json j;
    for (int len = 2; len <= 4; ++len) {
        j["counts"][std::to_string(len)] = rep.counts[len];
        j["exact"][std::to_string(len)] = rep.exact[len];
        j["witnesses"][std::to_string(len)] = rep.witnesses[len];
    }
    j["vertices_in_short_cycles"] = rep.vertices_in_short_cycles.size();
    j["vertices_complete"] = rep.vertices_complete;
    j["girth_at_least_5"] = rep.girth_at_least_5();
    return j;
}

json pipeline_json(const hgc::PipelineResult& res) {
    json j;
    j["success"] = res.success;
    if (!res.error.empty()) j["error"] = res.error;
    j["q"] = res.q;
    j["colors_used"] = res.colors_used;
    j["proper"] = res.verification.proper;
    j["nibble_iterations"] = res.nibble.iterations;
    j["nibble_resamples"] = res.nibble.total_resamples;
    j["all_iterations_certified"] = res.nibble.all_certified;
    j["certificate_reached"] = res.nibble.certificate_reached;
    j["uncolored_at_final"] = res.nibble.uncolored_at_final;
    j["final_resamples"] = res.final_resamples;
    j["final_certified"] = res.final_certified;
    if (!res.schedule_halt.empty()) j["schedule_halt"] = res.schedule_halt;
    if (res.decomposed) {
        j["girth_reducible"] = res.girth_reducible;
        j["U_size"] = res.U_size;
        j["kappa_U"] = res.kappa_U;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-random list coloring of k-uniform hypergraphs"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "sample a random k-uniform hypergraph");
    int g_k = 3, g_n = 1000;
    double g_d = 5.0;
    std::string g_model = "binomial", g_out = "hypergraph.txt";
    std::uint64_t g_seed = 0;
    bool g_seed_set = false;
    gen->add_option("-k", g_k, "uniformity");
    gen->add_option("-n", g_n, "vertex count");
    gen->add_option("-d", g_d, "target average degree");
    gen->add_option("--model", g_model)->check(CLI::IsMember({"binomial", "fixed-count"}));
    gen->add_option("--seed", g_seed)->each([&](const std::string&) { g_seed_set = true; });
    gen->add_option("-o,--out", g_out);

    // ---- decompose ---------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "girth-reducibility decomposition");
    std::string d_in, d_out = "decomposition.json", d_mode = "proof";
    double d_delta = 0.2;
    dec->add_option("input", d_in)->required();
    dec->add_option("--delta", d_delta);
    dec->add_option("--mode", d_mode)->check(CLI::IsMember({"definition", "proof"}));
    dec->add_option("-o,--out", d_out);

    // ---- color-girth5 ------------------------------------------------------
    auto* cg = app.add_subcommand("color-girth5", "color a girth-5 hypergraph");
    std::string cg_in, cg_out = "coloring.txt", cg_mode = "practical";
    double cg_eps = 0.1, cg_alpha = 0.2;
    std::uint64_t cg_seed = 0;
    bool cg_seed_set = false, cg_trace = false;
    std::uint64_t cg_budget = 2000;
    cg->add_option("input", cg_in)->required();
    cg->add_option("--epsilon", cg_eps);
    cg->add_option("--alpha", cg_alpha);
    cg->add_option("--mode", cg_mode)->check(CLI::IsMember({"theory", "practical"}));
    cg->add_option("--mt-budget", cg_budget);
    cg->add_option("--seed", cg_seed)->each([&](const std::string&) { cg_seed_set = true; });
    cg->add_flag("--trace", cg_trace);
    cg->add_option("-o,--out", cg_out);

    // ---- color-random ------------------------------------------------------
    auto* cr = app.add_subcommand("color-random", "full pipeline on a random hypergraph");
    std::string cr_in, cr_out = "coloring.txt", cr_mode = "practical",
                cr_decompose = "definition";
    int cr_k = 3, cr_n = 0, cr_nseeds = 1, cr_jobs = 1;
    double cr_d = 0.0, cr_delta = 0.2, cr_alpha = 0.2;
    std::uint64_t cr_seed = 0, cr_budget = 2000;
    bool cr_seed_set = false, cr_trace = false;
    cr->add_option("input", cr_in, "hypergraph file (omit to generate)");
    cr->add_option("--seeds", cr_nseeds, "run this many consecutive seeds");
    cr->add_option("--jobs", cr_jobs, "parallel workers across seeds");
    cr->add_option("-k", cr_k);
    cr->add_option("-n", cr_n);
    cr->add_option("-d", cr_d);
    cr->add_option("--delta", cr_delta);
    cr->add_option("--alpha", cr_alpha);
    cr->add_option("--mode", cr_mode)->check(CLI::IsMember({"theory", "practical"}));
    cr->add_option("--decompose-mode", cr_decompose)
        ->check(CLI::IsMember({"definition", "proof"}));
    cr->add_option("--mt-budget", cr_budget);
    cr->add_option("--seed", cr_seed)->each([&](const std::string&) { cr_seed_set = true; });
    cr->add_flag("--trace", cr_trace);
    cr->add_option("-o,--out", cr_out);

    // ---- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "check a coloring against a hypergraph");
    std::string v_graph, v_coloring;
    int v_q = 0;
    ver->add_option("hypergraph", v_graph)->required();
    ver->add_option("coloring", v_coloring)->required();
    ver->add_option("-q", v_q, "list size (lists default to [0, q))")->required();

    // ---- schedule ----------------------------------------------------------
    auto* sch = app.add_subcommand("schedule", "emit the L/T trajectory as CSV");
    int s_k = 3;
    double s_delta_cap = 1e6, s_eps = 0.1, s_alpha = 0.0;
    int s_max_iters = 0;
    std::string s_mode = "theory", s_out = "schedule.csv";
    sch->add_option("-k", s_k);
    sch->add_option("--Delta", s_delta_cap);
    sch->add_option("--epsilon", s_eps);
    sch->add_option("--alpha", s_alpha, "activation override (practical mode)");
    sch->add_option("--mode", s_mode)->check(CLI::IsMember({"theory", "practical"}));
    sch->add_option("--max-iters", s_max_iters);
    sch->add_option("-o,--out", s_out);

    // ---- estimate-keep -----------------------------------------------------
    auto* ek = app.add_subcommand("estimate-keep", "Monte Carlo check of the Keep identity");
    int e_k = 3, e_L = 20, e_trials = 100000;
    std::vector<int> e_T;
    double e_alpha = 0.2;
    std::uint64_t e_seed = 0;
    ek->add_option("-k", e_k);
    ek->add_option("-L", e_L);
    ek->add_option("-T", e_T, "conflict targets T_1..T_{k-1}")->expected(-1);
    ek->add_option("--alpha", e_alpha);
    ek->add_option("--trials", e_trials);
    ek->add_option("--seed", e_seed);

    // ---- stats -------------------------------------------------------------
    auto* st = app.add_subcommand("stats", "degree statistics and sparse-subset search");
    std::string st_in, st_out = "stats.json";
    int st_cmax = 15, st_trials = 200;
    double st_sigma = 4.0, st_delta = 0.5;
    std::uint64_t st_seed = 0;
    st->add_option("input", st_in)->required();
    st->add_option("--c-max", st_cmax);
    st->add_option("--tol-sigma", st_sigma);
    st->add_option("--delta", st_delta);
    st->add_option("--subset-trials", st_trials);
    st->add_option("--seed", st_seed);
    st->add_option("-o,--out", st_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (!g_seed_set) throw std::runtime_error("generate requires --seed");
            hgc::GenParams params;
            params.k = g_k;
            params.n = g_n;
            params.d = g_d;
            params.model =
                g_model == "binomial" ? hgc::GenModel::binomial : hgc::GenModel::fixed_count;
            params.seed = g_seed;
            hgc::Hypergraph h = hgc::generate(params);
            std::string path = resolve(g_out);
            hgc::write_hypergraph_file(path, h);
            json cfg = {{"command", "generate"}, {"k", g_k},          {"n", g_n},
                        {"d", g_d},             {"model", g_model},   {"seed", g_seed},
                        {"out", g_out},         {"edges", h.m()}};
            write_manifest(path, cfg, {std::make_pair(g_out, path)});
            std::cout << "wrote " << path << " (" << h.m() << " edges)\n";
            return 0;
        }

        if (dec->parsed()) {
            hgc::Hypergraph h = hgc::read_hypergraph_file(resolve(d_in));
            hgc::DecomposeMode mode = d_mode == "definition" ? hgc::DecomposeMode::definition
                                                             : hgc::DecomposeMode::proof;
            hgc::Decomposition decomp = hgc::decompose(h, d_delta, mode);
            json j;
            j["U"] = decomp.U;
            j["girth_reducible"] = decomp.girth_reducible;
            j["certificates"] = {
                {"d", decomp.d},
                {"clause_a_pass", decomp.clause_a_pass},
                {"witnesses_complete", decomp.witnesses_complete},
                {"kappa_U", decomp.kappa_U},
                {"threshold_b_definition", decomp.threshold_b_definition},
                {"threshold_b_lemma", decomp.threshold_b_lemma},
                {"clause_b_definition_pass", decomp.clause_b_definition_pass},
                {"clause_b_lemma_pass", decomp.clause_b_lemma_pass},
                {"threshold_c", decomp.threshold_c},
                {"threshold_proof", decomp.threshold_proof},
                {"max_boundary", decomp.max_boundary},
                {"clause_c_pass", decomp.clause_c_pass},
                {"complement_max_degree", decomp.complement_max_degree},
                {"complement_girth5", decomp.complement_girth5},
                {"complement_degree_ok", decomp.complement_degree_ok},
                {"expansion_rounds", decomp.expansion_rounds},
                {"complement_cycles", cycle_report_json(decomp.complement_cycles)}};
            std::string path = resolve(d_out);
            std::ofstream out(path);
            out << j.dump(2) << '\n';
            out.close();
            json cfg = {{"command", "decompose"}, {"input", d_in},  {"delta", d_delta},
                        {"mode", d_mode},         {"out", d_out}};
            write_manifest(path, cfg, {std::make_pair(d_out, path)});
            std::cout << (decomp.girth_reducible ? "girth-reducible" : "NOT girth-reducible")
                      << ", |U| = " << decomp.U.size() << "\n";
            return 0;
        }

        if (cr->parsed() && cr_nseeds > 1) {
            // seed sweep: independent runs, parallel only across seeds
            if (!cr_seed_set) throw std::runtime_error("color-random requires --seed");
            hgc::Hypergraph shared;
            bool have_shared = !cr_in.empty();
            if (have_shared) shared = hgc::read_hypergraph_file(resolve(cr_in));
            else if (cr_n <= 0 || cr_d <= 0.0)
                throw std::runtime_error("color-random without input needs -n and -d");

            std::vector<json> reports(cr_nseeds);
            std::vector<int> ok(cr_nseeds, 0);
            std::atomic<int> next{0};
            auto worker = [&]() {
                for (;;) {
                    int i = next.fetch_add(1);
                    if (i >= cr_nseeds) return;
                    std::uint64_t seed = cr_seed + static_cast<std::uint64_t>(i);
                    hgc::PipelineOptions opt;
                    opt.mode = cr_mode == "theory" ? hgc::ScheduleMode::theory
                                                   : hgc::ScheduleMode::practical;
                    opt.delta = cr_delta;
                    opt.alpha = cr_alpha;
                    opt.seed = seed;
                    opt.mt_budget = cr_budget;
                    opt.decompose_mode = cr_decompose == "definition"
                                             ? hgc::DecomposeMode::definition
                                             : hgc::DecomposeMode::proof;
                    hgc::Hypergraph local;
                    const hgc::Hypergraph* inst = &shared;
                    if (!have_shared) {
                        hgc::GenParams params;
                        params.k = cr_k;
                        params.n = cr_n;
                        params.d = cr_d;
                        params.seed = seed;
                        local = hgc::generate(params);
                        inst = &local;
                    }
                    hgc::PipelineResult res = hgc::color_random(*inst, opt);
                    if (res.success) {
                        std::ofstream out(resolve(cr_out) + ".s" + std::to_string(seed));
                        hgc::write_coloring(out, res.coloring);
                        ok[i] = 1;
                    }
                    reports[i] = pipeline_json(res);
                    reports[i]["seed"] = seed;
                }
            };
            int jobs = std::max(1, std::min(cr_jobs, cr_nseeds));
            std::vector<std::thread> pool;
            for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
            for (auto& t : pool) t.join();

            json summary;
            summary["runs"] = reports;
            int successes = 0;
            for (int v : ok) successes += v;
            summary["successes"] = successes;
            summary["seeds"] = cr_nseeds;
            std::cout << summary.dump(2) << '\n';
            return successes == cr_nseeds ? 0 : 1;
        }

        if (cg->parsed() || cr->parsed()) {
            bool girth5 = cg->parsed();
            if (girth5 && !cg_seed_set) throw std::runtime_error("color-girth5 requires --seed");
            if (!girth5 && !cr_seed_set) throw std::runtime_error("color-random requires --seed");

            hgc::PipelineOptions opt;
            opt.mode = (girth5 ? cg_mode : cr_mode) == "theory" ? hgc::ScheduleMode::theory
                                                                : hgc::ScheduleMode::practical;
            opt.epsilon = cg_eps;
            opt.delta = cr_delta;
            opt.alpha = girth5 ? cg_alpha : cr_alpha;
            opt.seed = girth5 ? cg_seed : cr_seed;
            opt.mt_budget = girth5 ? cg_budget : cr_budget;
            opt.decompose_mode = cr_decompose == "definition" ? hgc::DecomposeMode::definition
                                                              : hgc::DecomposeMode::proof;
            if ((girth5 && cg_trace) || (!girth5 && cr_trace)) opt.trace = &std::cerr;

            hgc::Hypergraph h;
            json gen_cfg;
            if (girth5) {
                h = hgc::read_hypergraph_file(resolve(cg_in));
            } else if (!cr_in.empty()) {
                h = hgc::read_hypergraph_file(resolve(cr_in));
            } else {
                if (cr_n <= 0 || cr_d <= 0.0)
                    throw std::runtime_error("color-random without input needs -n and -d");
                hgc::GenParams params;
                params.k = cr_k;
                params.n = cr_n;
                params.d = cr_d;
                params.seed = cr_seed;
                h = hgc::generate(params);
                gen_cfg = {{"k", cr_k}, {"n", cr_n}, {"d", cr_d}};
            }

            hgc::PipelineResult res =
                girth5 ? hgc::color_girth5(h, opt) : hgc::color_random(h, opt);
            json report = pipeline_json(res);
            if (!res.girth_witness.empty()) report["girth_witness"] = res.girth_witness;
            if (!gen_cfg.empty()) report["generated"] = gen_cfg;

            std::string logical = girth5 ? cg_out : cr_out;
            std::string path = resolve(logical);
            std::vector<std::pair<std::string, std::string>> outputs;
            if (res.success) {
                std::ofstream out(path);
                hgc::write_coloring(out, res.coloring);
                out.close();
                outputs.emplace_back(logical, path);
            }
            std::string report_path = path + ".report.json";
            {
                std::ofstream out(report_path);
                out << report.dump(2) << '\n';
            }
            outputs.emplace_back(logical + ".report.json", report_path);
            json cfg = {{"command", girth5 ? "color-girth5" : "color-random"},
                        {"input", girth5 ? cg_in : cr_in},
                        {"mode", girth5 ? cg_mode : cr_mode},
                        {"epsilon", cg_eps},
                        {"delta", cr_delta},
                        {"alpha", opt.alpha},
                        {"seed", opt.seed},
                        {"mt_budget", opt.mt_budget},
                        {"out", girth5 ? cg_out : cr_out}};
            if (!gen_cfg.empty()) cfg["generate"] = gen_cfg;
            write_manifest(path, cfg, outputs);

            std::cout << report.dump(2) << '\n';
            return res.success ? 0 : 1;
        }

        if (ver->parsed()) {
            hgc::Hypergraph h = hgc::read_hypergraph_file(resolve(v_graph));
            std::ifstream in(resolve(v_coloring));
            if (!in) throw std::runtime_error("cannot open coloring file");
            hgc::Coloring col = hgc::read_coloring(in, h.n);
            hgc::VerifyReport rep = hgc::verify(h, hgc::ListAssignment::uniform(h.n, v_q), col);
            json j = {{"is_total", rep.is_total},
                      {"list_respecting", rep.list_respecting},
                      {"monochromatic_edges", rep.monochromatic_edges},
                      {"proper", rep.proper}};
            std::cout << j.dump(2) << '\n';
            return rep.proper ? 0 : 1;
        }

        if (sch->parsed()) {
            hgc::ScheduleParams params =
                s_mode == "theory"
                    ? hgc::ScheduleParams::theory(s_k, s_delta_cap, s_eps)
                    : hgc::ScheduleParams::practical(s_k, s_delta_cap, s_eps, s_alpha);
            int iters = s_max_iters > 0 ? s_max_iters : hgc::default_max_iters(params);
            hgc::ScheduleTrajectory traj = hgc::run_to_stop(params, iters);
            std::string path = resolve(s_out);
            std::ofstream out(path);
            hgc::write_trajectory_csv(out, traj);
            out.close();
            json cfg = {{"command", "schedule"}, {"k", s_k},
                        {"Delta", s_delta_cap},  {"epsilon", s_eps},
                        {"alpha", s_alpha},      {"mode", s_mode},
                        {"max_iters", iters},    {"out", s_out}};
            write_manifest(path, cfg, {std::make_pair(s_out, path)});
            std::cout << "halt: " << hgc::halt_reason_name(traj.halt)
                      << (traj.i_star ? " (i* = " + std::to_string(*traj.i_star) + ")" : "")
                      << ", " << traj.records.size() << " iterations -> " << path << '\n';
            return 0;
        }

        if (ek->parsed()) {
            if (static_cast<int>(e_T.size()) != e_k - 1)
                throw std::runtime_error("estimate-keep: need k-1 values after -T");
            hgc::KeepEstimate est =
                hgc::estimate_keep(e_k, e_L, e_T, e_alpha, e_trials, e_seed);
            json j = {{"keep", est.keep},
                      {"estimate", est.estimate},
                      {"std_error", est.std_error},
                      {"z", est.z},
                      {"mean_survivors", est.mean_survivors},
                      {"expected_mean", est.expected_mean},
                      {"z_mean", est.z_mean},
                      {"trials", est.trials}};
            std::cout << j.dump(2) << '\n';
            return 0;
        }

        if (st->parsed()) {
            hgc::Hypergraph h = hgc::read_hypergraph_file(resolve(st_in));
            hgc::DegreeStats stats = hgc::degree_stats(h, std::max(64, st_cmax));
            hgc::PoissonReport poisson =
                hgc::check_poisson(stats, st_cmax, st_sigma, st_delta, h.k);
            hgc::SparseSubsetReport sparse = hgc::sparse_subset_check(h, st_trials, st_seed);
            json j;
            j["n"] = stats.n;
            j["d"] = stats.d;
            j["bands_pass"] = poisson.bands_pass;
            for (const auto& b : poisson.bands)
                j["bands"].push_back({{"c", b.c},
                                      {"observed", b.observed},
                                      {"expected", b.expected},
                                      {"sigma", b.sigma},
                                      {"pass", b.pass}});
            j["midrange_count"] = poisson.midrange_count;
            j["midrange_bound"] = poisson.midrange_bound;
            j["midrange_pass"] = poisson.midrange_pass;
            j["overdegree_count"] = poisson.overdegree_count;
            j["overdegree_bound"] = poisson.overdegree_bound;
            j["overdegree_pass"] = poisson.overdegree_pass;
            j["sparse_subsets"] = {{"bound_ratio", sparse.bound_ratio},
                                   {"max_ratio", sparse.max_ratio},
                                   {"worst_size", sparse.worst_size},
                                   {"trials", sparse.trials},
                                   {"pass", sparse.pass}};
            std::string path = resolve(st_out);
            std::ofstream out(path);
            out << j.dump(2) << '\n';
            out.close();
            json cfg = {{"command", "stats"},     {"input", st_in},
                        {"c_max", st_cmax},       {"tol_sigma", st_sigma},
                        {"delta", st_delta},      {"subset_trials", st_trials},
                        {"seed", st_seed},        {"out", st_out}};
            write_manifest(path, cfg, {std::make_pair(st_out, path)});
            std::cout << j.dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
