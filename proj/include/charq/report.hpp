#pragma once

// Rendering of singular-locus reports: versioned JSON (schema 1) and a
// human-readable table.  Identical input and seed give byte-identical
// JSON; ordered_json keeps the key order fixed.

#include <json.hpp>

#include <sstream>
#include <string>

#include "families.hpp"
#include "singular.hpp"

namespace charq {

using Json = nlohmann::ordered_json;

inline Json element_json(const FieldCtx& K, std::uint32_t bits) {
    return Json{{"bits", bits}, {"str", K.element_str(bits)}};
}

inline Json point_json(const ProjPoint& p) {
    Json coords = Json::array();
    for (int i = 0; i < p.size(); ++i) coords.push_back(element_json(*p.ctx(), p.raw()[i]));
    return coords;
}

inline Json report_json(const SingularReport& rep, const FieldCtx& K,
                        std::uint64_t seed) {
    Json j;
    j["schema"] = 1;
    j["surface"] = rep.surface;
    j["field"] = rep.field;
    j["seed"] = seed;
    j["scan_subfield_degree"] = rep.scan_degree;
    Json pts = Json::array();
    for (const auto& r : rep.records) {
        Json p;
        p["coords"] = point_json(r.point);
        p["defdeg"] = r.defdeg;
        p["mult"] = r.mult;
        p["cone"] = r.cone ? Json(cone_point_name(*r.cone)) : Json(nullptr);
        p["local_int_mult"] = r.local.conclusive ? Json(r.local.value) : Json(nullptr);
        p["stab_degree"] = r.local.conclusive ? Json(r.local.stab_degree) : Json(nullptr);
        pts.push_back(std::move(p));
    }
    j["points"] = std::move(pts);
    j["total"] = rep.total;
    Json hist = Json::object();
    for (const auto& [d, n] : rep.by_defdeg) hist[std::to_string(d)] = n;
    j["by_defdeg"] = std::move(hist);
    j["degree_residual"] = rep.degree_residual ? Json(*rep.degree_residual) : Json(nullptr);
    j["gauss_plane"] = rep.gauss_plane;
    if (rep.witness) {
        Json w = Json::array();
        for (const auto& e : *rep.witness) w.push_back(element_json(K, e.bits));
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["normality"] = normality_name(rep.normality);
    j["truncated"] = rep.truncated;
    return j;
}

inline std::string report_table(const SingularReport& rep) {
    std::ostringstream os;
    os << "surface: " << rep.surface << "\n";
    os << "field:   " << rep.field << " (scan subfield degree " << rep.scan_degree << ")\n";
    os << "total singular points: " << rep.total << (rep.truncated ? " (truncated)" : "") << "\n";
    os << "by definition degree:";
    for (const auto& [d, n] : rep.by_defdeg) os << "  " << d << ":" << n;
    os << "\n";
    if (!rep.records.empty()) {
        os << "points:\n";
        for (const auto& r : rep.records) {
            os << "  " << r.point.str() << "  defdeg=" << r.defdeg << " mult=" << r.mult;
            os << " cone=" << (r.cone ? cone_point_name(*r.cone) : "-");
            if (r.local.conclusive)
                os << " local_int_mult=" << r.local.value << " (stab D=" << r.local.stab_degree
                   << ")";
            else
                os << " local_int_mult=inconclusive";
            os << "\n";
        }
    }
    if (rep.degree_residual)
        os << "degree residual (36 - sum of local multiplicities): " << *rep.degree_residual
           << "\n";
    if (!rep.residual_bound_ok)
        os << "warning: residual below 3 with non-planar gauss image\n";
    os << "gauss image planar: " << (rep.gauss_plane ? "yes" : "no");
    if (rep.witness) {
        os << "  witness (";
        for (int i = 0; i < 4; ++i) os << (i ? " : " : "") << (*rep.witness)[i].str();
        os << ")";
    }
    os << "\n";
    os << "normality: " << normality_name(rep.normality) << "\n";
    return os.str();
}

inline Json expectation_json(const FamilyExpectation& exp) {
    Json j;
    j["total_rational"] = exp.total();
    j["total_geometric"] = exp.total_geometric ? Json(*exp.total_geometric) : Json(nullptr);
    j["reducible"] = exp.reducible;
    j["infinite_singular_locus"] = exp.infinite_singular;
    Json groups = Json::array();
    for (const auto& g : exp.groups) {
        Json gg;
        gg["label"] = g.label;
        gg["cone"] = g.cone ? Json(cone_point_name(*g.cone)) : Json(nullptr);
        Json pts = Json::array();
        for (const auto& p : g.points) pts.push_back(p.str());
        gg["points"] = std::move(pts);
        groups.push_back(std::move(gg));
    }
    j["groups"] = std::move(groups);
    j["notes"] = exp.notes;
    return j;
}

inline Json diff_json(const ExpectationDiff& d) {
    Json j;
    j["clean"] = d.clean();
    Json miss = Json::array(), extra = Json::array();
    for (const auto& p : d.missing) miss.push_back(p.str());
    for (const auto& p : d.extra) extra.push_back(p.str());
    j["missing"] = std::move(miss);
    j["extra"] = std::move(extra);
    return j;
}

}  // namespace charq
