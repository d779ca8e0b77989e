#pragma once

#include <string>
#include <vector>

#include "lnc/body.hpp"
#include "lnc/config.hpp"
#include "lnc/linalg.hpp"
#include "lnc/lnc_analysis.hpp"

namespace lnc {

// Catalog of built-in bodies with a canonical restriction map, an expected
// verdict, and (for the falsifiable ones) a frozen witness template whose
// invariants can be re-verified independently of the search.
//
// Expected verdict strings:
//   NOT_LNC_WITNESS  search should produce a confirmed witness
//   LNC_NO_WITNESS   search should come back empty
//   LIMIT_FAMILY     body itself is clean at any fixed size, but the
//                    canonical section jump persists as the size grows
struct GalleryEntry {
    std::string id;
    std::string summary;
    std::string expected;
    bool has_template = false;
    bool takes_param = false;  // entry accepts a size parameter
    int pairs_override = 0;    // 0: use cfg.search_pairs as given
};

const std::vector<GalleryEntry>& gallery_entries();  // alphabetical by id
const GalleryEntry* gallery_find(const std::string& id);

// param: size knob for parametric entries (helix10 vertex count, default 128).
// Ignored elsewhere. Throws std::invalid_argument for unknown ids.
BodyPtr gallery_body(const std::string& id, int param = 0);
LinearMap gallery_map(const std::string& id);

struct WitnessTemplate {
    Vector x;
    Vector x_prime;
    std::vector<Vector> approach;  // marches toward the midpoint
};

// Throws std::invalid_argument when the entry has no explicit template
// (its witness set is reached by search but has no closed form worth pinning).
WitnessTemplate gallery_witness_template(const std::string& id);

// Re-derives the template's defining identities from the body alone:
// memberships, exact margin laws along +/- v, and the midpoint-shift
// violation. Appends one line per check to notes. Returns overall pass.
bool verify_witness_template(const std::string& id, const ToolConfig& cfg,
                             std::vector<std::string>* notes);

struct GalleryRun {
    std::string id;
    std::string expected;
    std::string got;
    bool match = false;
    bool template_ok = true;  // stays true when there is no template
    double max_jump = 0.0;    // limit-family entries only
    SearchReport search;
    std::vector<std::string> notes;
};

GalleryRun gallery_run(const std::string& id, int param, const ToolConfig& cfg);

}  // namespace lnc
