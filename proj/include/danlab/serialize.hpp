#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "danlab/constructions.hpp"
#include "danlab/discrete_set.hpp"
#include "danlab/spreading.hpp"
#include "danlab/words.hpp"

namespace danlab {

using Json = nlohmann::ordered_json;

// Word serialization: JSON array of generator records. Exact parameters
// round-trip bit-exactly through the rational text format; approximate ones
// through shortest round-trip decimals.

template <class S>
Json word_to_json(const Word<S>& w) {
    Json arr = Json::array();
    for (const auto& g : w.gens) {
        Json rec;
        rec["kind"] = gen_kind_name(g.kind);
        switch (g.kind) {
            case GenKind::FlowY:
            case GenKind::FlowX:
                rec["t"] = format_scalar(g.t);
                break;
            case GenKind::ReplicaY:
            case GenKind::ReplicaX:
                rec["h"] = g.h.to_text();
                rec["t"] = format_scalar(g.t);
                break;
            case GenKind::Swap:
                break;
            case GenKind::Twist:
                rec["phi"] = g.h.to_text();
                break;
        }
        arr.push_back(std::move(rec));
    }
    return arr;
}

template <class S>
Word<S> word_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("word JSON must be an array");
    Word<S> w;
    for (const auto& rec : j) {
        const std::string kind = rec.at("kind").get<std::string>();
        if (kind == "FlowY") {
            w.gens.push_back(Generator<S>::flow_y(parse_scalar<S>(rec.at("t").get<std::string>())));
        } else if (kind == "FlowX") {
            w.gens.push_back(Generator<S>::flow_x(parse_scalar<S>(rec.at("t").get<std::string>())));
        } else if (kind == "ReplicaY" || kind == "ReplicaX") {
            auto h = Polynomial<S>::parse(rec.at("h").get<std::string>());
            auto t = parse_scalar<S>(rec.at("t").get<std::string>());
            w.gens.push_back(kind == "ReplicaY" ? Generator<S>::replica_y(std::move(h), t)
                                                : Generator<S>::replica_x(std::move(h), t));
        } else if (kind == "Swap") {
            w.gens.push_back(Generator<S>::swap());
        } else if (kind == "Twist") {
            w.gens.push_back(
                Generator<S>::twist(Polynomial<S>::parse(rec.at("phi").get<std::string>())));
        } else {
            throw ParseError("unknown generator kind: " + kind);
        }
    }
    return w;
}

// DiscreteSet: array of [x, y, z] coordinate triples in the scalar text format.

template <class S>
Json set_to_json(const DiscreteSet<S>& d) {
    Json arr = Json::array();
    for (const auto& p : d.points())
        arr.push_back(Json::array({format_scalar(p.x), format_scalar(p.y), format_scalar(p.z)}));
    return arr;
}

template <class S>
std::vector<SurfacePoint<S>> points_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("point list JSON must be an array");
    std::vector<SurfacePoint<S>> pts;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 3)
            throw ParseError("each point must be an [x, y, z] triple");
        pts.push_back(SurfacePoint<S>{parse_scalar<S>(row[0].get<std::string>()),
                                      parse_scalar<S>(row[1].get<std::string>()),
                                      parse_scalar<S>(row[2].get<std::string>())});
    }
    return pts;
}

template <class S>
DiscreteSet<S> set_from_json(const Surface<S>& surf, const Json& j) {
    return DiscreteSet<S>(surf, points_from_json<S>(j));
}

inline Json schedule_to_json(const ThresholdSchedule& s) {
    Json j;
    j["radii"] = s.radii;
    j["r_ball"] = s.r_ball;
    j["deltas"] = s.deltas;
    return j;
}

inline ThresholdSchedule schedule_from_json(const Json& j) {
    ThresholdSchedule s;
    s.radii = j.at("radii").get<std::vector<double>>();
    s.r_ball = j.at("r_ball").get<double>();
    s.deltas = j.at("deltas").get<std::vector<double>>();
    return s;
}

template <class S>
Json witness_to_json(const TameWitness<S>& w) {
    Json j;
    j["word"] = word_to_json(w.word);
    j["zeta"] = w.zeta;
    j["achieved"] = w.achieved;
    return j;
}

inline Json spread_report_to_json(const SpreadReport& r) {
    Json j;
    j["x"] = format_scalar(r.point_x);
    j["y"] = format_scalar(r.point_y);
    j["z"] = format_scalar(r.point_z);
    j["r"] = r.r;
    j["samples"] = r.samples;
    j["hits"] = r.hits;
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_est;
    if (r.bound) j["bound"] = *r.bound;
    else j["bound"] = nullptr;
    return j;
}

}  // namespace danlab
