#include "tilerepair/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tilerepair {

namespace {

using json = nlohmann::ordered_json;

// round to 12 significant digits so serialized coordinates are short and
// stable without losing more precision than the snap tolerance
double quantize(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

Ring parse_ring(const json& arr, const std::string& feature) {
    Ring r;
    for (const auto& pos : arr) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
            fail("feature " + feature + ": ring position is not [x, y]");
        Point p{pos[0].get<double>(), pos[1].get<double>()};
        if (!r.pts.empty() && p == r.pts.back()) continue;  // repeated vertex
        r.pts.push_back(p);
    }
    if (r.pts.size() > 1 && r.pts.front() == r.pts.back()) r.pts.pop_back();
    if (r.pts.size() < 3) fail("feature " + feature + ": degenerate ring");
    return r;
}

void check_simple(const Ring& r, const std::string& feature) {
    std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            Segment si{r.at(i), r.at(i + 1)}, sj{r.at(j), r.at(j + 1)};
            SegIntersection x = segment_intersection(si, sj);
            if (x.kind == SegIntersection::Kind::Empty) continue;
            if (adjacent && x.kind == SegIntersection::Kind::AtPoint &&
                (x.p == si.a || x.p == si.b))
                continue;
            fail("feature " + feature + ": self-intersecting ring");
        }
}

void add_polygon(Unit& u, const json& coords, const std::string& feature) {
    if (!coords.is_array() || coords.empty())
        fail("feature " + feature + ": empty polygon coordinates");
    for (std::size_t k = 0; k < coords.size(); ++k) {
        Ring r = parse_ring(coords[k], feature);
        if (signed_area(r) < 0) std::reverse(r.pts.begin(), r.pts.end());
        check_simple(r, feature);
        (k == 0 ? u.outers : u.holes).push_back(std::move(r));
    }
}

json ring_to_coords(const Ring& r, bool reverse) {
    json arr = json::array();
    auto push = [&](const Point& p) { arr.push_back({quantize(p.x), quantize(p.y)}); };
    if (reverse)
        for (auto it = r.pts.rbegin(); it != r.pts.rend(); ++it) push(*it);
    else
        for (const Point& p : r.pts) push(p);
    arr.push_back(arr.front());  // GeoJSON rings repeat the first position
    return arr;
}

std::string read_stream(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<Unit> parse_units_geojson(const std::string& text, const GeoJsonOptions& opts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        fail("input is not a GeoJSON FeatureCollection");

    std::vector<Unit> units;
    std::set<std::string> seen;
    std::size_t idx = 0;
    for (const auto& feature : doc["features"]) {
        std::string id = std::to_string(idx);
        json props = json::object();
        if (feature.contains("properties") && feature["properties"].is_object())
            props = feature["properties"];
        if (props.contains(opts.id_property)) {
            const json& v = props[opts.id_property];
            id = v.is_string() ? v.get<std::string>() : v.dump();
            props.erase(opts.id_property);
        } else if (feature.contains("id")) {
            const json& v = feature["id"];
            id = v.is_string() ? v.get<std::string>() : v.dump();
        }
        if (!seen.insert(id).second) fail("duplicate unit id \"" + id + "\"");

        if (!feature.contains("geometry") || !feature["geometry"].is_object())
            fail("feature " + id + ": missing geometry");
        const json& geom = feature["geometry"];
        std::string type = geom.value("type", "");
        Unit u;
        u.id = id;
        if (type == "Polygon") {
            add_polygon(u, geom["coordinates"], id);
        } else if (type == "MultiPolygon") {
            for (const auto& poly : geom["coordinates"]) add_polygon(u, poly, id);
        } else {
            fail("feature " + id + ": unsupported geometry type \"" + type + "\"");
        }
        if (!props.empty()) u.attributes = props.dump();
        units.push_back(std::move(u));
        ++idx;
    }
    return units;
}

std::string units_to_geojson(const std::vector<Unit>& units, const GeoJsonOptions& opts) {
    json features = json::array();
    for (const Unit& u : units) {
        // attach each hole to the outer that contains it
        std::vector<std::vector<const Ring*>> holes_of(u.outers.size());
        for (const Ring& h : u.holes) {
            std::size_t best = 0;
            for (std::size_t o = 0; o < u.outers.size(); ++o) {
                int side = 0;
                for (const Point& p : h.pts)
                    if ((side = point_in_ring(p, u.outers[o])) != 0) break;
                if (side > 0) {
                    best = o;
                    break;
                }
            }
            if (!u.outers.empty()) holes_of[best].push_back(&h);
        }
        json polys = json::array();
        for (std::size_t o = 0; o < u.outers.size(); ++o) {
            json rings = json::array();
            rings.push_back(ring_to_coords(u.outers[o], signed_area(u.outers[o]) < 0));
            // RFC 7946: holes are clockwise
            for (const Ring* h : holes_of[o])
                rings.push_back(ring_to_coords(*h, signed_area(*h) > 0));
            polys.push_back(std::move(rings));
        }
        json geom;
        if (polys.size() == 1) {
            geom = {{"type", "Polygon"}, {"coordinates", polys[0]}};
        } else {
            geom = {{"type", "MultiPolygon"}, {"coordinates", polys}};
        }
        json props = json::object();
        if (!u.attributes.empty()) props = json::parse(u.attributes);
        props[opts.id_property] = u.id;
        features.push_back(
            {{"type", "Feature"}, {"properties", props}, {"geometry", std::move(geom)}});
    }
    json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    return doc.dump() + "\n";
}

std::string adjacency_to_csv(const AdjacencyGraph& graph) {
    std::string out = "unit_a,unit_b,shared_length,class\n";
    char buf[64];
    for (const AdjacencyEdge& e : graph.edges) {
        std::snprintf(buf, sizeof buf, "%.12g", e.shared_length);
        out += e.a + "," + e.b + "," + buf + "," + (e.queen ? "queen" : "rook") + "\n";
    }
    return out;
}

std::string report_to_json(const RepairReport& report) {
    json unfilled = json::array();
    for (const auto& g : report.unfilled) {
        json boundary = json::array();
        for (const Point& p : g.boundary.pts) boundary.push_back({quantize(p.x), quantize(p.y)});
        unfilled.push_back(
            {{"area", quantize(g.area)}, {"reason", g.reason}, {"boundary", std::move(boundary)}});
    }
    json doc = {{"input_units", report.input_units},
                {"overlap_pieces", report.overlap_pieces},
                {"gap_regions", report.gap_regions},
                {"filled_gaps", report.filled_gaps},
                {"unfilled", std::move(unfilled)},
                {"disconnected", report.disconnected},
                {"warnings", report.warnings}};
    return doc.dump(2) + "\n";
}

std::vector<Unit> read_units(const std::string& path, const GeoJsonOptions& opts) {
    if (path == "-") return parse_units_geojson(read_stream(std::cin), opts);
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    return parse_units_geojson(read_stream(in), opts);
}

namespace {

void write_text(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << text;
}

}  // namespace

void write_units(const std::vector<Unit>& units, const std::string& path,
                 const GeoJsonOptions& opts) {
    write_text(units_to_geojson(units, opts), path);
}

void write_adjacency(const AdjacencyGraph& graph, const std::string& path) {
    write_text(adjacency_to_csv(graph), path);
}

void write_report(const RepairReport& report, const std::string& path) {
    write_text(report_to_json(report), path);
}

}  // namespace tilerepair
