#include "lnc/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lnc/bodies.hpp"
#include "lnc/combinators.hpp"

namespace lnc {

namespace {

OrderedJson vector_to_json(const Vector& v) {
    OrderedJson arr = OrderedJson::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

Vector vector_from_json(const OrderedJson& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
    Vector v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw std::invalid_argument(std::string(what) + ": expected numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

OrderedJson matrix_to_json(const Matrix& m) {
    OrderedJson rows = OrderedJson::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        OrderedJson row = OrderedJson::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const OrderedJson& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(what) + ": expected row arrays");
    std::size_t cols = 0;
    std::vector<Vector> rows;
    for (const auto& r : j) {
        Vector row = vector_from_json(r, what);
        if (rows.empty())
            cols = row.size();
        else if (row.size() != cols)
            throw std::invalid_argument(std::string(what) + ": ragged rows");
        rows.push_back(std::move(row));
    }
    if (cols == 0) throw std::invalid_argument(std::string(what) + ": empty rows");
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
    return m;
}

std::vector<Vector> vector_list_from_json(const OrderedJson& j,
                                          const char* what) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(what) + ": expected a list of points");
    std::vector<Vector> out;
    std::size_t d = 0;
    for (const auto& e : j) {
        Vector v = vector_from_json(e, what);
        if (out.empty())
            d = v.size();
        else if (v.size() != d)
            throw std::invalid_argument(std::string(what) + ": mixed dimensions");
        out.push_back(std::move(v));
    }
    return out;
}

const OrderedJson& field(const OrderedJson& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw std::invalid_argument(std::string("body: missing field '") +
                                    name + "'");
    return *it;
}

std::vector<double> split_numbers(const std::string& text, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        std::string tok = text.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) +
                                        ": bad number '" + tok + "'");
        }
        while (used < tok.size() &&
               std::isspace(static_cast<unsigned char>(tok[used])))
            ++used;
        if (used != tok.size())
            throw std::invalid_argument(std::string(what) +
                                        ": bad number '" + tok + "'");
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

Vector axis_row(std::size_t dim, std::initializer_list<std::size_t> idxs,
                const std::string& spec) {
    Vector row(dim, 0.0);
    for (std::size_t i : idxs) {
        if (i >= dim)
            throw std::invalid_argument("map '" + spec +
                                        "' needs dimension > " +
                                        std::to_string(i));
        row[i] = 1.0;
    }
    return row;
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

OrderedJson artifact_header(const ToolConfig& cfg, std::uint64_t seed,
                            bool deterministic) {
    OrderedJson j;
    j["config"] = config_to_json(cfg);
    j["seed"] = seed;
    if (!deterministic) j["timestamp"] = timestamp_utc();
    return j;
}

OrderedJson witness_to_json(const LncWitness& w) {
    OrderedJson j;
    j["x"] = vector_to_json(w.x);
    j["x_prime"] = vector_to_json(w.x_prime);
    j["v"] = vector_to_json(w.v);
    j["midpoint"] = vector_to_json(w.midpoint);
    j["pool"] = w.pool;
    j["pair_index"] = w.pair_index;
    j["pair_mode"] = w.pair_mode;
    OrderedJson approach = OrderedJson::array();
    for (const auto& a : w.approach) {
        OrderedJson aj;
        aj["q"] = vector_to_json(a.q);
        aj["scale"] = a.scale;
        aj["dist_to_mid"] = a.dist_to_mid;
        OrderedJson probes = OrderedJson::array();
        for (const auto& p : a.probes) {
            OrderedJson pj;
            pj["eps"] = p.eps;
            pj["margin_plus"] = p.margin_plus;
            pj["margin_minus"] = p.margin_minus;
            probes.push_back(std::move(pj));
        }
        aj["probes"] = std::move(probes);
        approach.push_back(std::move(aj));
    }
    j["approach"] = std::move(approach);
    return j;
}

}  // namespace

OrderedJson body_to_json(const BodyPtr& body) {
    if (!body) throw std::invalid_argument("body_to_json: null body");
    const std::string kind = body->kind();
    OrderedJson j;
    j["kind"] = kind;
    if (kind == "ball") {
        const auto& b = static_cast<const Ball&>(*body);
        j["center"] = vector_to_json(b.center());
        j["radius"] = b.radius();
    } else if (kind == "ellipsoid") {
        const auto& e = static_cast<const Ellipsoid&>(*body);
        j["center"] = vector_to_json(e.center());
        j["shape"] = matrix_to_json(e.shape());
    } else if (kind == "hpolytope") {
        const auto& h = static_cast<const HPolytope&>(*body);
        j["a"] = matrix_to_json(h.A());
        j["b"] = vector_to_json(h.b());
        j["feasible"] = vector_to_json(h.feasible_point());
    } else if (kind == "vpolytope") {
        const auto& v = static_cast<const VPolytope&>(*body);
        OrderedJson verts = OrderedJson::array();
        for (const auto& p : v.vertices()) verts.push_back(vector_to_json(p));
        j["vertices"] = std::move(verts);
    } else if (kind == "zonotope") {
        const auto& z = static_cast<const Zonotope&>(*body);
        j["center"] = vector_to_json(z.center());
        OrderedJson gens = OrderedJson::array();
        for (const auto& g : z.generators()) gens.push_back(vector_to_json(g));
        j["generators"] = std::move(gens);
    } else if (kind == "psdcap2" || kind == "epigraph19") {
        // shape is fully determined by the kind
    } else if (kind == "circular_cone") {
        const auto& c = static_cast<const CircularCone&>(*body);
        j["z_apex"] = c.z_apex();
        j["z_base"] = c.z_base();
        j["base_radius"] = c.base_radius();
    } else if (kind == "intersection") {
        const auto& x = static_cast<const Intersection&>(*body);
        j["a"] = body_to_json(x.first());
        j["b"] = body_to_json(x.second());
    } else if (kind == "product") {
        const auto& x = static_cast<const Product&>(*body);
        j["a"] = body_to_json(x.first());
        j["b"] = body_to_json(x.second());
    } else if (kind == "translate") {
        const auto& t = static_cast<const Translate&>(*body);
        j["base"] = body_to_json(t.base());
        j["shift"] = vector_to_json(t.shift());
    } else if (kind == "suspension") {
        const auto& s = static_cast<const Suspension&>(*body);
        j["base"] = body_to_json(s.base());
    } else {
        throw std::invalid_argument("body_to_json: unknown kind " + kind);
    }
    return j;
}

BodyPtr body_from_json(const OrderedJson& j) {
    if (!j.is_object()) throw std::invalid_argument("body: expected an object");
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "ball") {
        return std::make_shared<Ball>(vector_from_json(field(j, "center"), "ball.center"),
                                      field(j, "radius").get<double>());
    }
    if (kind == "ellipsoid") {
        return std::make_shared<Ellipsoid>(
            vector_from_json(field(j, "center"), "ellipsoid.center"),
            matrix_from_json(field(j, "shape"), "ellipsoid.shape"));
    }
    if (kind == "hpolytope") {
        Matrix a = matrix_from_json(field(j, "a"), "hpolytope.a");
        Vector b = vector_from_json(field(j, "b"), "hpolytope.b");
        if (j.contains("feasible"))
            return std::make_shared<HPolytope>(
                a, b, vector_from_json(j.at("feasible"), "hpolytope.feasible"));
        return std::make_shared<HPolytope>(a, b);
    }
    if (kind == "vpolytope") {
        return std::make_shared<VPolytope>(
            vector_list_from_json(field(j, "vertices"), "vpolytope.vertices"));
    }
    if (kind == "zonotope") {
        return std::make_shared<Zonotope>(
            vector_from_json(field(j, "center"), "zonotope.center"),
            vector_list_from_json(field(j, "generators"),
                                  "zonotope.generators"));
    }
    if (kind == "psdcap2") return std::make_shared<PSDCap2>();
    if (kind == "epigraph19") return std::make_shared<Epigraph19>();
    if (kind == "circular_cone") {
        return std::make_shared<CircularCone>(
            field(j, "z_apex").get<double>(), field(j, "z_base").get<double>(),
            field(j, "base_radius").get<double>());
    }
    if (kind == "intersection") {
        return std::make_shared<Intersection>(body_from_json(field(j, "a")),
                                              body_from_json(field(j, "b")));
    }
    if (kind == "product") {
        return std::make_shared<Product>(body_from_json(field(j, "a")),
                                         body_from_json(field(j, "b")));
    }
    if (kind == "translate") {
        return std::make_shared<Translate>(
            body_from_json(field(j, "base")),
            vector_from_json(field(j, "shift"), "translate.shift"));
    }
    if (kind == "suspension") {
        return std::make_shared<Suspension>(body_from_json(field(j, "base")));
    }
    if (kind == "affine_image") {
        return affine_image(matrix_from_json(field(j, "map"), "affine_image.map"),
                            vector_from_json(field(j, "offset"),
                                             "affine_image.offset"),
                            body_from_json(field(j, "base")));
    }
    throw std::invalid_argument("body: unknown kind '" + kind + "'");
}

BodyPtr load_body_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open body file: " + path);
    OrderedJson j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("body file " + path + ": " + e.what());
    }
    return body_from_json(j);
}

OrderedJson config_to_json(const ToolConfig& cfg) {
    OrderedJson j;
    j["membership_tol"] = cfg.membership_tol;
    j["fiber_tol"] = cfg.fiber_tol;
    j["solver_max_iter"] = cfg.solver_max_iter;
    j["extent_cap"] = cfg.extent_cap;
    j["witness_margin"] = cfg.witness_margin;
    j["eps_grid_depth"] = cfg.eps_grid_depth;
    j["search_pairs"] = cfg.search_pairs;
    j["search_scales"] = cfg.search_scales;
    j["seed"] = cfg.seed;
    return j;
}

ToolConfig config_from_json(const OrderedJson& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected an object");
    ToolConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "membership_tol")
            cfg.membership_tol = it.value().get<double>();
        else if (k == "fiber_tol")
            cfg.fiber_tol = it.value().get<double>();
        else if (k == "solver_max_iter")
            cfg.solver_max_iter = it.value().get<int>();
        else if (k == "extent_cap")
            cfg.extent_cap = it.value().get<double>();
        else if (k == "witness_margin")
            cfg.witness_margin = it.value().get<double>();
        else if (k == "eps_grid_depth")
            cfg.eps_grid_depth = it.value().get<int>();
        else if (k == "search_pairs")
            cfg.search_pairs = it.value().get<int>();
        else if (k == "search_scales")
            cfg.search_scales = it.value().get<int>();
        else if (k == "seed")
            cfg.seed = it.value().get<std::uint64_t>();
        else
            throw std::invalid_argument("config: unknown field '" + k + "'");
    }
    return cfg;
}

LinearMap parse_map_spec(const std::string& spec, std::size_t dim) {
    if (spec.empty()) throw std::invalid_argument("map: empty spec");
    auto named_rows = [&]() -> std::vector<Vector> {
        if (spec == "proj-xy")
            return {axis_row(dim, {0}, spec), axis_row(dim, {1}, spec)};
        if (spec == "x") return {axis_row(dim, {0}, spec)};
        if (spec == "y") return {axis_row(dim, {1}, spec)};
        if (spec == "z") return {axis_row(dim, {2}, spec)};
        if (spec == "x+y") return {axis_row(dim, {0, 1}, spec)};
        return {};
    };
    std::vector<Vector> rows = named_rows();
    if (rows.empty()) {
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            std::size_t next = spec.find(';', pos);
            std::string part = spec.substr(
                pos,
                next == std::string::npos ? std::string::npos : next - pos);
            rows.push_back(split_numbers(part, "map"));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        for (const auto& r : rows)
            if (r.size() != dim)
                throw std::invalid_argument(
                    "map: row length " + std::to_string(r.size()) +
                    " does not match body dimension " + std::to_string(dim));
    }
    Matrix m(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < dim; ++c) m(i, c) = rows[i][c];
    return LinearMap(m);
}

Vector parse_point_list(const std::string& spec) {
    return split_numbers(spec, "point");
}

std::vector<Vector> parse_path_spec(const std::string& spec,
                                    std::size_t image_dim) {
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("path: expected 'circle:', 'segment:' or 'point:'");
    const std::string head = spec.substr(0, colon);
    std::vector<double> nums = split_numbers(spec.substr(colon + 1), "path");
    std::vector<Vector> targets;
    if (head == "point") {
        if (nums.size() != image_dim)
            throw std::invalid_argument("path point: wrong dimension");
        targets.emplace_back(nums.begin(), nums.end());
        return targets;
    }
    if (head == "circle") {
        if (image_dim != 2)
            throw std::invalid_argument("path circle: image dimension must be 2");
        if (nums.size() != 7)
            throw std::invalid_argument(
                "path circle: expected cx,cy,rx,ry,t0,t1,K");
        double cx = nums[0], cy = nums[1], rx = nums[2], ry = nums[3];
        double t0 = nums[4], t1 = nums[5];
        int k = static_cast<int>(nums[6]);
        if (k < 1 || nums[6] != k)
            throw std::invalid_argument("path circle: K must be a positive integer");
        for (int i = 0; i < k; ++i) {
            double t = k == 1 ? t0 : t0 + (t1 - t0) * i / (k - 1);
            targets.push_back(Vector{cx + rx * std::cos(t), cy + ry * std::sin(t)});
        }
        return targets;
    }
    if (head == "segment") {
        if (nums.size() != 2 * image_dim + 1)
            throw std::invalid_argument(
                "path segment: expected 2*m endpoint coords plus K");
        int k = static_cast<int>(nums.back());
        if (k < 1 || nums.back() != k)
            throw std::invalid_argument("path segment: K must be a positive integer");
        Vector a(nums.begin(), nums.begin() + image_dim);
        Vector b(nums.begin() + image_dim, nums.begin() + 2 * image_dim);
        for (int i = 0; i < k; ++i) {
            double s = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1);
            Vector y(image_dim);
            for (std::size_t c = 0; c < image_dim; ++c)
                y[c] = a[c] + (b[c] - a[c]) * s;
            targets.push_back(std::move(y));
        }
        return targets;
    }
    throw std::invalid_argument("path: unknown form '" + head + "'");
}

OrderedJson search_report_to_json(const SearchReport& rep,
                                  const ToolConfig& cfg, std::uint64_t seed,
                                  bool deterministic) {
    OrderedJson j = artifact_header(cfg, seed, deterministic);
    j["witness_found"] = rep.witness_found;
    if (rep.witness) j["witness"] = witness_to_json(*rep.witness);
    OrderedJson stats;
    stats["pairs"] = rep.stats.pairs;
    stats["skipped_short"] = rep.stats.skipped_short;
    stats["skipped_prescreen"] = rep.stats.skipped_prescreen;
    stats["triggered"] = rep.stats.triggered;
    stats["confirmed"] = rep.stats.confirmed;
    j["stats"] = std::move(stats);
    j["scale_base"] = rep.scale_base;
    j["scales"] = vector_to_json(rep.scales);
    j["floors"] = vector_to_json(rep.floors);
    return j;
}

OrderedJson openness_report_to_json(const OpennessReport& rep,
                                    const ToolConfig& cfg, std::uint64_t seed,
                                    bool deterministic) {
    OrderedJson j = artifact_header(cfg, seed, deterministic);
    j["verdict"] = rep.verdict == OpennessVerdict::OPEN_AT ? "OPEN_AT"
                                                            : "NOT_OPEN_AT";
    j["x0"] = vector_to_json(rep.x0);
    j["y0"] = vector_to_json(rep.y0);
    j["image_diameter"] = rep.diam;
    j["threshold"] = rep.threshold;
    OrderedJson decades = OrderedJson::array();
    for (const auto& d : rep.decades) {
        OrderedJson dj;
        dj["rho"] = d.rho;
        dj["checked"] = d.checked;
        dj["bad"] = d.bad;
        if (d.worst) {
            OrderedJson wj;
            wj["y"] = vector_to_json(d.worst->y);
            wj["dist"] = d.worst->dist;
            wj["how"] = d.worst->how;
            dj["worst"] = std::move(wj);
        }
        decades.push_back(std::move(dj));
    }
    j["decades"] = std::move(decades);
    return j;
}

OrderedJson crosscheck_report_to_json(const CrosscheckReport& rep,
                                      const ToolConfig& cfg,
                                      std::uint64_t seed, bool deterministic) {
    OrderedJson j = artifact_header(cfg, seed, deterministic);
    const char* status = rep.status == CrosscheckStatus::CLEAN
                             ? "CLEAN"
                             : rep.status == CrosscheckStatus::FALSIFICATION_CONSISTENT
                                   ? "FALSIFICATION_CONSISTENT"
                                   : "CONTRADICTION";
    j["status"] = status;
    j["witness_found"] = rep.search.witness_found;
    if (rep.search.witness) j["witness"] = witness_to_json(*rep.search.witness);
    OrderedJson probes = OrderedJson::array();
    for (const auto& p : rep.probes) {
        OrderedJson pj;
        pj["label"] = p.label;
        pj["point"] = vector_to_json(p.point);
        pj["verdict"] = p.verdict == OpennessVerdict::OPEN_AT ? "OPEN_AT"
                                                              : "NOT_OPEN_AT";
        probes.push_back(std::move(pj));
    }
    j["openness_probes"] = std::move(probes);
    j["image_status"] = rep.image_status;
    return j;
}

OrderedJson section_result_to_json(const Vector& y, const Vector& g,
                                   const std::string& method, bool clipped,
                                   double residual, double margin,
                                   const ToolConfig& cfg, std::uint64_t seed,
                                   bool deterministic) {
    OrderedJson j = artifact_header(cfg, seed, deterministic);
    j["method"] = method;
    j["target"] = vector_to_json(y);
    j["point"] = vector_to_json(g);
    j["residual"] = residual;
    j["margin"] = margin;
    j["clipped"] = clipped;
    return j;
}

OrderedJson gallery_run_to_json(const GalleryRun& run, const ToolConfig& cfg,
                                std::uint64_t seed, bool deterministic) {
    OrderedJson j = artifact_header(cfg, seed, deterministic);
    j["id"] = run.id;
    j["expected"] = run.expected;
    j["got"] = run.got;
    j["match"] = run.match;
    j["template_ok"] = run.template_ok;
    if (run.max_jump > 0.0) j["max_jump"] = run.max_jump;
    if (run.search.witness) j["witness"] = witness_to_json(*run.search.witness);
    OrderedJson notes = OrderedJson::array();
    for (const auto& n : run.notes) notes.push_back(n);
    j["notes"] = std::move(notes);
    return j;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

namespace {

// RFC 4180 quoting: wrap fields containing commas, quotes or newlines.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

void write_probe_csv(std::ostream& os, const ProbeResult& pr,
                     const ToolConfig& cfg, std::uint64_t seed) {
    const char* crlf = "\r\n";
    std::size_t ydim = 0, gdim = 0;
    if (!pr.steps.empty()) {
        ydim = pr.steps.front().y.size();
        gdim = pr.steps.front().g.size();
    }
    os << "index";
    for (std::size_t c = 0; c < ydim; ++c) os << ",y" << c;
    for (std::size_t c = 0; c < gdim; ++c) os << ",g" << c;
    os << ",jump" << crlf;
    for (std::size_t i = 0; i < pr.steps.size(); ++i) {
        const ProbeStep& s = pr.steps[i];
        os << i;
        for (std::size_t c = 0; c < ydim; ++c)
            os << ',' << format_g17(s.y[c]);
        for (std::size_t c = 0; c < gdim; ++c)
            os << ',' << format_g17(s.g[c]);
        os << ',' << format_g17(s.jump) << crlf;
    }
    os << "max_jump," << format_g17(pr.max_jump) << crlf;
    os << "argmax," << pr.argmax << crlf;
    OrderedJson echo = config_to_json(cfg);
    echo["seed"] = seed;
    os << "config," << csv_field(echo.dump()) << crlf;
}

}  // namespace lnc
