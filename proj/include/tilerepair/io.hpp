#ifndef TILEREPAIR_IO_HPP
#define TILEREPAIR_IO_HPP

#include <string>
#include <vector>

#include "tilerepair/pipeline.hpp"

namespace tilerepair {

struct GeoJsonOptions {
    // feature property used as the unit id; features without it fall back to
    // the "id" member, then to the feature index
    std::string id_property = "id";
};

// GeoJSON FeatureCollection of Polygon / MultiPolygon features -> units.
// Rings are normalized (closing vertex dropped, outers CCW) and validated;
// errors name the offending feature.  Properties other than the id are kept
// verbatim in Unit::attributes.
std::vector<Unit> parse_units_geojson(const std::string& text, const GeoJsonOptions& opts = {});

// Units -> GeoJSON FeatureCollection text.  Coordinates are rounded to 12
// significant digits; output is byte-deterministic.
std::string units_to_geojson(const std::vector<Unit>& units, const GeoJsonOptions& opts = {});

// CSV with header unit_a,unit_b,shared_length,class (class: rook | queen).
std::string adjacency_to_csv(const AdjacencyGraph& graph);

// Structured JSON; timings are deliberately omitted so the output is
// byte-deterministic.
std::string report_to_json(const RepairReport& report);

// File variants; path "-" means stdin / stdout.
std::vector<Unit> read_units(const std::string& path, const GeoJsonOptions& opts = {});
void write_units(const std::vector<Unit>& units, const std::string& path,
                 const GeoJsonOptions& opts = {});
void write_adjacency(const AdjacencyGraph& graph, const std::string& path);
void write_report(const RepairReport& report, const std::string& path);

// Command-line entry point (subcommands: repair, quick-repair, doctor,
// adjacency, gen, compare).  Returns the process exit code: 0 success,
// 1 usage error, 2 data error, 3 repair finished with reported exclusions.
int cli_main(int argc, const char* const* argv);

}  // namespace tilerepair

#endif
