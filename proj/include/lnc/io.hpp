#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnc/body.hpp"
#include "lnc/config.hpp"
#include "lnc/gallery.hpp"
#include "lnc/linalg.hpp"
#include "lnc/lnc_analysis.hpp"
#include "lnc/openness.hpp"
#include "lnc/sections.hpp"

namespace lnc {

using OrderedJson = nlohmann::ordered_json;

// ---- body files -----------------------------------------------------------
// Top-level "kind" picks the shape; numeric matrices are nested row arrays;
// combinators nest recursively. parse(serialize(body)) reproduces every
// numeric field exactly. "affine_image" is accepted on input and resolved to
// the concrete image body, so serialization never emits it.
OrderedJson body_to_json(const BodyPtr& body);
BodyPtr body_from_json(const OrderedJson& j);
BodyPtr load_body_file(const std::string& path);

// ---- config ---------------------------------------------------------------
OrderedJson config_to_json(const ToolConfig& cfg);
// Missing fields keep their defaults, unknown fields are rejected.
ToolConfig config_from_json(const OrderedJson& j);

// ---- CLI specs -------------------------------------------------------------
// Named shorthands "x", "y", "z", "x+y", "proj-xy" or inline rows
// "a,b,c;d,e,f" (rows split on ';').
LinearMap parse_map_spec(const std::string& spec, std::size_t dim);
Vector parse_point_list(const std::string& spec);
// "circle:cx,cy,rx,ry,t0,t1,K" (image dim 2, K targets at
// t = t0 + (t1-t0)*k/(K-1)), "segment:a..,b..,K", "point:coords".
std::vector<Vector> parse_path_spec(const std::string& spec,
                                    std::size_t image_dim);

// ---- report artifacts -------------------------------------------------------
// Every artifact embeds the config and seed it ran with; the timestamp field
// is suppressed when deterministic is set.
OrderedJson search_report_to_json(const SearchReport& rep,
                                  const ToolConfig& cfg, std::uint64_t seed,
                                  bool deterministic);
OrderedJson openness_report_to_json(const OpennessReport& rep,
                                    const ToolConfig& cfg, std::uint64_t seed,
                                    bool deterministic);
OrderedJson crosscheck_report_to_json(const CrosscheckReport& rep,
                                      const ToolConfig& cfg,
                                      std::uint64_t seed, bool deterministic);
OrderedJson section_result_to_json(const Vector& y, const Vector& g,
                                   const std::string& method, bool clipped,
                                   double residual, double margin,
                                   const ToolConfig& cfg, std::uint64_t seed,
                                   bool deterministic);
OrderedJson gallery_run_to_json(const GalleryRun& run, const ToolConfig& cfg,
                                std::uint64_t seed, bool deterministic);

// RFC 4180: CRLF line ends, quoted fields where needed, 17 significant
// digits. Columns: index, target coords, section coords, jump; footer rows
// max_jump, argmax, config.
void write_probe_csv(std::ostream& os, const ProbeResult& pr,
                     const ToolConfig& cfg, std::uint64_t seed);

std::string format_g17(double v);

}  // namespace lnc
