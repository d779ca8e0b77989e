#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lnc/fiber.hpp"
#include "lnc/gallery.hpp"
#include "lnc/io.hpp"
#include "lnc/lnc_analysis.hpp"
#include "lnc/openness.hpp"
#include "lnc/sections.hpp"

namespace {

using lnc::OrderedJson;

struct Options {
    std::string body_file;
    std::string gallery_id;
    std::string map_spec;
    std::string target_spec;
    std::string method = "gv-lowest";
    std::string point_spec;
    std::string out_file;
    std::string config_file;
    std::vector<std::string> paths;
    double threshold = 0.0;
    int refine = 0;
    int param = 0;  // gallery size parameter
    bool deterministic = false;
    lnc::ToolConfig cfg;
};

lnc::BodyPtr resolve_body(const Options& o) {
    if (!o.body_file.empty() && !o.gallery_id.empty())
        throw std::invalid_argument("give either --body or --gallery, not both");
    if (!o.body_file.empty()) return lnc::load_body_file(o.body_file);
    if (!o.gallery_id.empty()) return lnc::gallery_body(o.gallery_id, o.param);
    throw std::invalid_argument("need --body FILE or --gallery ID");
}

lnc::LinearMap resolve_map(const Options& o, std::size_t dim) {
    if (!o.map_spec.empty()) return lnc::parse_map_spec(o.map_spec, dim);
    if (!o.gallery_id.empty()) return lnc::gallery_map(o.gallery_id);
    throw std::invalid_argument("need --map SPEC (no gallery default available)");
}

lnc::SectionMethod resolve_method(const std::string& name) {
    if (name == "gv-lowest") return lnc::SectionMethod::GV_LOWEST;
    if (name == "gv-minabs") return lnc::SectionMethod::GV_MIN_ABS;
    if (name == "min-norm") return lnc::SectionMethod::MIN_NORM;
    if (name == "min-dist") return lnc::SectionMethod::MIN_DIST;
    if (name == "gamma") return lnc::SectionMethod::GAMMA;
    throw std::invalid_argument("unknown method '" + name + "'");
}

void emit_json(const OrderedJson& j, const std::string& out_file) {
    std::string text = j.dump(2);
    text += "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_file);
        f << text;
    }
}

void load_config_file(Options& o) {
    if (o.config_file.empty()) return;
    std::ifstream in(o.config_file);
    if (!in) throw std::runtime_error("cannot open config: " + o.config_file);
    OrderedJson j;
    in >> j;
    // Accept either a bare config object or a full report embedding one.
    if (j.is_object() && j.contains("config")) j = j.at("config");
    if (j.is_object() && j.contains("seed") && !j.contains("membership_tol")) {
        // report headers carry seed next to config; tolerate both layouts
    }
    o.cfg = lnc::config_from_json(j);
}

int run_check_lnc(const Options& o) {
    lnc::BodyPtr Q = resolve_body(o);
    lnc::SearchReport rep = lnc::lnc_search(Q, o.cfg, o.cfg.seed);
    OrderedJson j =
        lnc::search_report_to_json(rep, o.cfg, o.cfg.seed, o.deterministic);
    j["body_kind"] = Q->kind();
    emit_json(j, o.out_file);
    if (!o.out_file.empty())
        std::cout << (rep.witness_found ? "NOT_LNC_WITNESS" : "LNC_NO_WITNESS")
                  << "\n";
    return rep.witness_found ? 1 : 0;
}

int run_section(const Options& o) {
    lnc::BodyPtr Q = resolve_body(o);
    lnc::LinearMap T = resolve_map(o, Q->dim());
    if (o.target_spec.empty()) throw std::invalid_argument("need --target LIST");
    lnc::Vector y = lnc::parse_point_list(o.target_spec);
    if (y.size() != T.rows())
        throw std::invalid_argument("target dimension does not match the map");
    lnc::SectionSpec spec{Q, T, resolve_method(o.method), {}};
    bool clipped = false;
    lnc::Vector g;
    try {
        g = lnc::evaluate_section(spec, y, &clipped, o.cfg);
    } catch (const lnc::EmptyFiber& e) {
        std::cerr << "EMPTY_FIBER: " << e.what() << "\n";
        return 1;
    }
    double residual = lnc::vdist(T.apply(g), y);
    double margin = Q->outside_margin(g, o.cfg.membership_tol);
    std::cout << "g = (";
    for (std::size_t i = 0; i < g.size(); ++i)
        std::cout << (i ? ", " : "") << lnc::format_g17(g[i]);
    std::cout << ")\nresidual = " << lnc::format_g17(residual)
              << "\nmargin = " << lnc::format_g17(margin) << "\n";
    if (clipped) std::cout << "CLIPPED: unbounded extent hit the cap\n";
    if (!o.out_file.empty())
        emit_json(lnc::section_result_to_json(y, g, o.method, clipped,
                                              residual, margin, o.cfg,
                                              o.cfg.seed, o.deterministic),
                  o.out_file);
    return 0;
}

int run_probe(const Options& o) {
    lnc::BodyPtr Q = resolve_body(o);
    lnc::LinearMap T = resolve_map(o, Q->dim());
    if (o.paths.empty())
        throw std::invalid_argument("need at least one --path SPEC");
    std::vector<lnc::Vector> targets;
    for (const auto& p : o.paths) {
        auto part = lnc::parse_path_spec(p, T.rows());
        targets.insert(targets.end(), part.begin(), part.end());
    }
    lnc::SectionSpec spec{Q, T, resolve_method(o.method), {}};
    lnc::ProbeResult pr = lnc::probe_continuity(spec, targets, o.refine, o.cfg);
    if (o.out_file.empty()) {
        lnc::write_probe_csv(std::cout, pr, o.cfg, o.cfg.seed);
    } else {
        std::ofstream f(o.out_file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + o.out_file);
        lnc::write_probe_csv(f, pr, o.cfg, o.cfg.seed);
        std::cout << "max_jump = " << lnc::format_g17(pr.max_jump) << "\n";
    }
    if (pr.empty_index) {
        std::cerr << "EMPTY_FIBER at target index " << *pr.empty_index << "\n";
        return 1;
    }
    return 0;
}

int run_openness(const Options& o) {
    lnc::BodyPtr Q = resolve_body(o);
    lnc::LinearMap T = resolve_map(o, Q->dim());
    if (o.point_spec.empty())
        throw std::invalid_argument("need --point LIST (base point in the body)");
    lnc::Vector x0 = lnc::parse_point_list(o.point_spec);
    lnc::OpennessReport rep =
        lnc::openness_probe(Q, T, x0, o.threshold, o.cfg, o.cfg.seed);
    OrderedJson j =
        lnc::openness_report_to_json(rep, o.cfg, o.cfg.seed, o.deterministic);
    j["body_kind"] = Q->kind();
    emit_json(j, o.out_file);
    bool open = rep.verdict == lnc::OpennessVerdict::OPEN_AT;
    if (!o.out_file.empty())
        std::cout << (open ? "OPEN_AT" : "NOT_OPEN_AT") << "\n";
    return open ? 0 : 1;
}

int run_crosscheck(const Options& o) {
    lnc::BodyPtr Q = resolve_body(o);
    lnc::LinearMap T = resolve_map(o, Q->dim());
    lnc::CrosscheckReport rep = lnc::crosscheck(Q, T, o.cfg, o.cfg.seed);
    OrderedJson j = lnc::crosscheck_report_to_json(rep, o.cfg, o.cfg.seed,
                                                   o.deterministic);
    j["body_kind"] = Q->kind();
    emit_json(j, o.out_file);
    bool contradiction = rep.status == lnc::CrosscheckStatus::CONTRADICTION;
    if (!o.out_file.empty()) {
        const char* word =
            rep.status == lnc::CrosscheckStatus::CLEAN
                ? "CLEAN"
                : contradiction ? "CONTRADICTION" : "FALSIFICATION_CONSISTENT";
        std::cout << word << "\n";
    }
    return contradiction ? 1 : 0;
}

int run_gallery_list() {
    for (const auto& e : lnc::gallery_entries()) {
        std::printf("%-12s %-16s %s\n", e.id.c_str(), e.expected.c_str(),
                    e.summary.c_str());
    }
    return 0;
}

int run_gallery_run(const Options& o, const std::string& id) {
    lnc::GalleryRun run = lnc::gallery_run(id, o.param, o.cfg);
    std::cout << run.id << ": expected " << run.expected << ", got " << run.got
              << (run.match ? " (match)" : " (MISMATCH)") << "\n";
    for (const auto& n : run.notes) std::cout << "  " << n << "\n";
    if (!o.out_file.empty())
        emit_json(lnc::gallery_run_to_json(run, o.cfg, o.cfg.seed,
                                           o.deterministic),
                  o.out_file);
    return run.match ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o, bool with_map) {
    cmd->add_option("--body", o.body_file, "body description file (JSON)");
    cmd->add_option("--gallery", o.gallery_id, "gallery identifier");
    cmd->add_option("--n", o.param, "gallery size parameter (helix10 samples)");
    cmd->add_option("--seed", o.cfg.seed, "RNG seed");
    cmd->add_option("--pairs", o.cfg.search_pairs, "search pair budget");
    cmd->add_option("--scales", o.cfg.search_scales, "primary search scales");
    cmd->add_option("--config", o.config_file,
                    "config JSON (bare object or report embedding one)");
    cmd->add_option("--out", o.out_file, "write the artifact to this file");
    cmd->add_flag("--deterministic", o.deterministic,
                  "suppress the timestamp field in artifacts");
    if (with_map)
        cmd->add_option("--map", o.map_spec,
                        "row-major rows 'a,b;c,d', or x, y, z, x+y, proj-xy");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sections of restricted linear maps on convex bodies"};
    app.require_subcommand(1);
    Options o;

    CLI::App* c_check = app.add_subcommand(
        "check-lnc", "search for a local nonconicality witness");
    add_common(c_check, o, false);

    CLI::App* c_section =
        app.add_subcommand("section", "evaluate one section value");
    add_common(c_section, o, true);
    c_section->add_option("--target", o.target_spec, "image point (comma list)");
    c_section->add_option("--method", o.method,
                          "gv-lowest | gv-minabs | min-norm | min-dist | gamma");

    CLI::App* c_probe =
        app.add_subcommand("probe", "walk a target path and emit CSV");
    add_common(c_probe, o, true);
    c_probe->add_option("--path", o.paths,
                        "circle:cx,cy,rx,ry,t0,t1,K | segment:a..,b..,K | "
                        "point:coords (repeatable)");
    c_probe->add_option("--method", o.method,
                        "gv-lowest | gv-minabs | min-norm | min-dist | gamma");
    c_probe->add_option("--refine", o.refine, "jump bisection rounds");

    CLI::App* c_open =
        app.add_subcommand("openness", "probe openness of the restriction");
    add_common(c_open, o, true);
    c_open->add_option("--point", o.point_spec, "base point in the body");
    c_open->add_option("--r", o.threshold,
                       "bad-target distance (default 0.1 * image diameter)");

    CLI::App* c_cross = app.add_subcommand(
        "crosscheck", "witness search cross-validated against openness");
    add_common(c_cross, o, true);

    CLI::App* c_gal = app.add_subcommand("gallery", "built-in example bodies");
    c_gal->require_subcommand(1);
    CLI::App* c_list = c_gal->add_subcommand("list", "list gallery entries");
    CLI::App* c_run =
        c_gal->add_subcommand("run", "run one entry against its expectations");
    std::string run_id;
    c_run->add_option("id", run_id, "gallery identifier")->required();
    add_common(c_run, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        // --config supplies the baseline; explicit flags win over it.
        if (!o.config_file.empty()) {
            lnc::ToolConfig from_flags = o.cfg;
            load_config_file(o);
            for (CLI::App* sub :
                 {c_check, c_section, c_probe, c_open, c_cross, c_run}) {
                if (!sub->parsed()) continue;
                if (sub->count("--seed")) o.cfg.seed = from_flags.seed;
                if (sub->count("--pairs"))
                    o.cfg.search_pairs = from_flags.search_pairs;
                if (sub->count("--scales"))
                    o.cfg.search_scales = from_flags.search_scales;
            }
        }
        if (c_check->parsed()) return run_check_lnc(o);
        if (c_section->parsed()) return run_section(o);
        if (c_probe->parsed()) return run_probe(o);
        if (c_open->parsed()) return run_openness(o);
        if (c_cross->parsed()) return run_crosscheck(o);
        if (c_list->parsed()) return run_gallery_list();
        if (c_run->parsed()) return run_gallery_run(o, run_id);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no command\n";
    return 2;
}
