#pragma once

/*
 * Canonical JSON interchange. Every entity serializes with a fixed key
 * order, so equal values produce identical bytes and fixtures diff
 * cleanly. Parsing is strict: unknown fields, wrong types, and malformed
 * shapes raise SchemaViolation naming the offending path. Serialize after
 * parse reproduces the canonical bytes, and every parse result equals the
 * in-memory value that produced the file.
 *
 * Entities: pants graphs, moves and move paths, model complexes, spine
 * trees, splitting descriptors, curve word markings, assembly manifests,
 * assembly reports, and knotted-loop certificates. Face cover slots are
 * derived data and are not stored; rebuilding the blocks in order
 * restores them.
 */

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "layered/assembly.hpp"
#include "layered/disk_oracle.hpp"
#include "layered/errors.hpp"
#include "layered/model_complex.hpp"
#include "layered/moves.hpp"
#include "layered/pants_graph.hpp"
#include "layered/spines.hpp"

namespace layered {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
    fail(Errc::SchemaViolation, path + ": " + what);
}

inline void expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object");
}

inline void expect_keys(const Json& j, const std::string& path, const std::vector<std::string>& allowed) {
    expect_object(j, path);
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const std::string& a : allowed) ok = ok || a == k;
        if (!ok) schema_fail(path, "unknown field '" + k + "'");
    }
}

inline const Json& member(const Json& j, const std::string& path, const std::string& key) {
    expect_object(j, path);
    auto it = j.find(key);
    if (it == j.end()) schema_fail(path, "missing field '" + key + "'");
    return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::uint64_t as_uint(const Json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    schema_fail(path, "expected a non-negative integer");
}

inline bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) schema_fail(path, "expected a boolean");
    return j.get<bool>();
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) schema_fail(path, "expected a string");
    return j.get<std::string>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array");
    return j;
}

inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void expect_size(const Json& j, const std::string& path, std::size_t n) {
    if (as_array(j, path).size() != n)
        schema_fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
}

}  // namespace detail

// Canonical byte form: two-space indentation and a trailing newline.
inline std::string dump_bytes(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text, const std::string& origin) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) detail::schema_fail(origin, "not valid JSON");
    return j;
}

inline std::string read_text_file(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(Errc::IoFailure, "cannot open '" + file + "' for reading");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_text_file(const std::string& file, const std::string& bytes) {
    std::ofstream out(file, std::ios::binary);
    if (!out) fail(Errc::IoFailure, "cannot open '" + file + "' for writing");
    out << bytes;
    if (!out) fail(Errc::IoFailure, "write to '" + file + "' failed");
}

// ---- pants graphs ----------------------------------------------------

inline Json graph_to_json(const PantsGraph& g) {
    Json matching = Json::array(), ids = Json::array();
    std::vector<CurveId> seen;
    for (int v = 0; v < g.vertices(); ++v)
        for (int s = 0; s < 3; ++s) {
            CurveId c = g.curve_at(Leg{v, s});
            bool first = true;
            for (CurveId k : seen) first = first && k != c;
            if (!first) continue;
            seen.push_back(c);
            Leg p = g.partner(Leg{v, s});
            matching.push_back(Json::array({Json::array({v, s}), Json::array({p.vertex, p.slot})}));
            ids.push_back(c);
        }
    return Json{{"vertices", g.vertices()}, {"matching", std::move(matching)}, {"curve_ids", std::move(ids)}};
}

inline Leg leg_from_json(const Json& j, const std::string& path) {
    detail::expect_size(j, path, 2);
    return Leg{static_cast<int>(detail::as_int(j[0], path + "[0]")),
               static_cast<int>(detail::as_int(j[1], path + "[1]"))};
}

inline PantsGraph graph_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"vertices", "matching", "curve_ids"});
    int n = static_cast<int>(detail::as_int(detail::member(j, path, "vertices"), path + ".vertices"));
    const Json& mj = detail::as_array(detail::member(j, path, "matching"), path + ".matching");
    const Json& cj = detail::as_array(detail::member(j, path, "curve_ids"), path + ".curve_ids");
    if (mj.size() != cj.size()) detail::schema_fail(path, "matching and curve_ids differ in length");
    std::vector<std::pair<Leg, Leg>> pairs;
    std::vector<CurveId> ids;
    for (std::size_t i = 0; i < mj.size(); ++i) {
        std::string pp = detail::at(path + ".matching", i);
        detail::expect_size(mj[i], pp, 2);
        pairs.emplace_back(leg_from_json(mj[i][0], pp + "[0]"), leg_from_json(mj[i][1], pp + "[1]"));
        ids.push_back(detail::as_uint(cj[i], detail::at(path + ".curve_ids", i)));
    }
    return new_pants_graph(n, pairs, ids);
}

// ---- moves and paths -------------------------------------------------

inline Json move_to_json(const Move& m) {
    Json r{{"target", m.target}, {"kind", move_kind_name(m.kind)}};
    r["repairing"] = m.repairing ? Json(repairing_name(*m.repairing)) : Json(nullptr);
    r["twist"] = m.twist;
    r["new_curve"] = m.new_curve;
    return r;
}

inline Move move_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"target", "kind", "repairing", "twist", "new_curve"});
    Move m;
    m.target = detail::as_uint(detail::member(j, path, "target"), path + ".target");
    std::string kind = detail::as_string(detail::member(j, path, "kind"), path + ".kind");
    if (kind == "S")
        m.kind = MoveKind::S;
    else if (kind == "A")
        m.kind = MoveKind::A;
    else
        detail::schema_fail(path + ".kind", "expected \"S\" or \"A\"");
    const Json& rj = detail::member(j, path, "repairing");
    if (rj.is_null())
        m.repairing = std::nullopt;
    else {
        std::string r = detail::as_string(rj, path + ".repairing");
        if (r == "X1")
            m.repairing = Repairing::Cross1;
        else if (r == "X2")
            m.repairing = Repairing::Cross2;
        else
            detail::schema_fail(path + ".repairing", "expected \"X1\", \"X2\", or null");
    }
    m.twist = static_cast<int>(detail::as_int(detail::member(j, path, "twist"), path + ".twist"));
    m.new_curve = detail::as_uint(detail::member(j, path, "new_curve"), path + ".new_curve");
    return m;
}

inline Json path_to_json(const MovePath& p) {
    Json moves = Json::array();
    for (const Move& m : p.moves) moves.push_back(move_to_json(m));
    return Json{{"base", graph_to_json(p.base)}, {"moves", std::move(moves)}};
}

inline MovePath path_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"base", "moves"});
    MovePath p{graph_from_json(detail::member(j, path, "base"), path + ".base"), {}};
    const Json& mj = detail::as_array(detail::member(j, path, "moves"), path + ".moves");
    for (std::size_t i = 0; i < mj.size(); ++i)
        p.moves.push_back(move_from_json(mj[i], detail::at(path + ".moves", i)));
    return p;
}

// ---- model complexes -------------------------------------------------

inline Json front_to_json(const FrontSnapshot& f) {
    Json slots = Json::object(), links = Json::object();
    for (const auto& [v, ref] : f.slots) slots[std::to_string(v)] = Json::array({ref.face, ref.side});
    for (const auto& [c, l] : f.links) links[std::to_string(c)] = l;
    return Json{{"graph", graph_to_json(f.graph)}, {"slots", std::move(slots)}, {"links", std::move(links)}};
}

namespace detail {

inline std::int64_t key_number(const std::string& key, const std::string& path) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        schema_fail(path, "key '" + key + "' is not a non-negative integer");
    try {
        return std::stoll(key);
    } catch (const std::exception&) {
        schema_fail(path, "key '" + key + "' is out of range");
    }
}

}  // namespace detail

inline FrontSnapshot front_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"graph", "slots", "links"});
    FrontSnapshot f{graph_from_json(detail::member(j, path, "graph"), path + ".graph"), {}, {}};
    const Json& sj = detail::member(j, path, "slots");
    detail::expect_object(sj, path + ".slots");
    for (const auto& [k, v] : sj.items()) {
        std::string pp = path + ".slots." + k;
        detail::expect_size(v, pp, 2);
        f.slots[static_cast<int>(detail::key_number(k, pp))] = {
            static_cast<FaceId>(detail::as_int(v[0], pp + "[0]")),
            static_cast<int>(detail::as_int(v[1], pp + "[1]"))};
    }
    const Json& lj = detail::member(j, path, "links");
    detail::expect_object(lj, path + ".links");
    for (const auto& [k, v] : lj.items()) {
        std::string pp = path + ".links." + k;
        f.links[static_cast<CurveId>(detail::key_number(k, pp))] =
            static_cast<LinkId>(detail::as_int(v, pp));
    }
    return f;
}

inline Json complex_to_json(const ModelComplex& m) {
    Json links = Json::array();
    for (const LinkRec& l : m.links()) {
        Json germs = Json::array();
        for (const Germ& g : l.germs)
            germs.push_back(Json{{"face", g.face}, {"cuff", g.cuff}, {"flip", g.flip}});
        Json rec{{"id", l.id}, {"absorbed", l.absorbed}, {"created_stage", l.created_stage}};
        rec["retired_stage"] = l.retired_stage ? Json(*l.retired_stage) : Json(nullptr);
        rec["germs"] = std::move(germs);
        links.push_back(std::move(rec));
    }
    Json faces = Json::array();
    for (const FaceRec& f : m.faces())
        faces.push_back(Json{{"id", f.id},
                             {"cuffs", Json::array({f.cuffs[0], f.cuffs[1], f.cuffs[2]})},
                             {"created_stage", f.created_stage}});
    Json blocks = Json::array();
    for (const BlockRec& b : m.blocks()) {
        Json bottom = Json::array(), top = Json::array();
        for (const FaceSideRef& r : b.bottom) bottom.push_back(Json::array({r.face, r.side}));
        for (const FaceSideRef& r : b.top) top.push_back(Json::array({r.face, r.side}));
        blocks.push_back(Json{{"id", b.id},
                              {"kind", move_kind_name(b.kind)},
                              {"stage", b.stage},
                              {"bottom", std::move(bottom)},
                              {"top", std::move(top)},
                              {"vertical", b.vertical},
                              {"bottom_link", b.bottom_link},
                              {"top_link", b.top_link},
                              {"twist", b.twist}});
    }
    Json stages = Json::array(), fronts = Json::array();
    for (const FrontSnapshot& s : m.stages()) stages.push_back(front_to_json(s));
    for (const FrontSnapshot& s : m.minus_fronts()) fronts.push_back(front_to_json(s));
    return Json{{"links", std::move(links)},     {"faces", std::move(faces)},
                {"blocks", std::move(blocks)},   {"stages", std::move(stages)},
                {"minus_fronts", std::move(fronts)}, {"closed", m.closed()}};
}

inline ModelComplex complex_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"links", "faces", "blocks", "stages", "minus_fronts", "closed"});
    ModelBuilder b;
    const Json& lj = detail::as_array(detail::member(j, path, "links"), path + ".links");
    for (std::size_t i = 0; i < lj.size(); ++i) {
        std::string pp = detail::at(path + ".links", i);
        detail::expect_keys(lj[i], pp, {"id", "absorbed", "created_stage", "retired_stage", "germs"});
        if (detail::as_int(detail::member(lj[i], pp, "id"), pp + ".id") != static_cast<std::int64_t>(i))
            detail::schema_fail(pp + ".id", "link ids must be dense and in order");
        std::vector<CurveId> absorbed;
        const Json& aj = detail::as_array(detail::member(lj[i], pp, "absorbed"), pp + ".absorbed");
        for (std::size_t k = 0; k < aj.size(); ++k)
            absorbed.push_back(detail::as_uint(aj[k], detail::at(pp + ".absorbed", k)));
        std::vector<Germ> germs;
        const Json& gj = detail::as_array(detail::member(lj[i], pp, "germs"), pp + ".germs");
        for (std::size_t k = 0; k < gj.size(); ++k) {
            std::string gp = detail::at(pp + ".germs", k);
            detail::expect_keys(gj[k], gp, {"face", "cuff", "flip"});
            germs.push_back({static_cast<FaceId>(detail::as_int(detail::member(gj[k], gp, "face"), gp + ".face")),
                             static_cast<int>(detail::as_int(detail::member(gj[k], gp, "cuff"), gp + ".cuff")),
                             detail::as_bool(detail::member(gj[k], gp, "flip"), gp + ".flip")});
        }
        int created = static_cast<int>(
            detail::as_int(detail::member(lj[i], pp, "created_stage"), pp + ".created_stage"));
        LinkId id = b.add_link(std::move(absorbed), created, std::move(germs));
        const Json& rj = detail::member(lj[i], pp, "retired_stage");
        if (!rj.is_null()) b.retire_link(id, static_cast<int>(detail::as_int(rj, pp + ".retired_stage")));
    }
    const Json& fj = detail::as_array(detail::member(j, path, "faces"), path + ".faces");
    for (std::size_t i = 0; i < fj.size(); ++i) {
        std::string pp = detail::at(path + ".faces", i);
        detail::expect_keys(fj[i], pp, {"id", "cuffs", "created_stage"});
        if (detail::as_int(detail::member(fj[i], pp, "id"), pp + ".id") != static_cast<std::int64_t>(i))
            detail::schema_fail(pp + ".id", "face ids must be dense and in order");
        const Json& cj = detail::member(fj[i], pp, "cuffs");
        detail::expect_size(cj, pp + ".cuffs", 3);
        std::array<LinkId, 3> cuffs{};
        for (int s = 0; s < 3; ++s)
            cuffs[s] = static_cast<LinkId>(detail::as_int(cj[s], detail::at(pp + ".cuffs", s)));
        b.add_face(cuffs, static_cast<int>(detail::as_int(detail::member(fj[i], pp, "created_stage"),
                                                          pp + ".created_stage")));
    }
    const Json& bj = detail::as_array(detail::member(j, path, "blocks"), path + ".blocks");
    for (std::size_t i = 0; i < bj.size(); ++i) {
        std::string pp = detail::at(path + ".blocks", i);
        detail::expect_keys(bj[i], pp,
                            {"id", "kind", "stage", "bottom", "top", "vertical", "bottom_link",
                             "top_link", "twist"});
        if (detail::as_int(detail::member(bj[i], pp, "id"), pp + ".id") != static_cast<std::int64_t>(i))
            detail::schema_fail(pp + ".id", "block ids must be dense and in order");
        BlockRec rec;
        std::string kind = detail::as_string(detail::member(bj[i], pp, "kind"), pp + ".kind");
        if (kind == "S")
            rec.kind = MoveKind::S;
        else if (kind == "A")
            rec.kind = MoveKind::A;
        else
            detail::schema_fail(pp + ".kind", "expected \"S\" or \"A\"");
        rec.stage = static_cast<int>(detail::as_int(detail::member(bj[i], pp, "stage"), pp + ".stage"));
        auto refs = [&](const char* key) {
            std::vector<FaceSideRef> out;
            const Json& rj = detail::as_array(detail::member(bj[i], pp, key), pp + "." + key);
            for (std::size_t k = 0; k < rj.size(); ++k) {
                std::string rp = detail::at(pp + "." + key, k);
                detail::expect_size(rj[k], rp, 2);
                out.push_back({static_cast<FaceId>(detail::as_int(rj[k][0], rp + "[0]")),
                               static_cast<int>(detail::as_int(rj[k][1], rp + "[1]"))});
            }
            return out;
        };
        rec.bottom = refs("bottom");
        rec.top = refs("top");
        const Json& vj = detail::as_array(detail::member(bj[i], pp, "vertical"), pp + ".vertical");
        for (std::size_t k = 0; k < vj.size(); ++k)
            rec.vertical.push_back(static_cast<LinkId>(detail::as_int(vj[k], detail::at(pp + ".vertical", k))));
        rec.bottom_link = static_cast<LinkId>(
            detail::as_int(detail::member(bj[i], pp, "bottom_link"), pp + ".bottom_link"));
        rec.top_link =
            static_cast<LinkId>(detail::as_int(detail::member(bj[i], pp, "top_link"), pp + ".top_link"));
        rec.twist = static_cast<int>(detail::as_int(detail::member(bj[i], pp, "twist"), pp + ".twist"));
        b.add_block(std::move(rec));
    }
    const Json& sj = detail::as_array(detail::member(j, path, "stages"), path + ".stages");
    for (std::size_t i = 0; i < sj.size(); ++i)
        b.push_stage(front_from_json(sj[i], detail::at(path + ".stages", i)));
    const Json& mj = detail::as_array(detail::member(j, path, "minus_fronts"), path + ".minus_fronts");
    for (std::size_t i = 0; i < mj.size(); ++i)
        b.push_minus_front(front_from_json(mj[i], detail::at(path + ".minus_fronts", i)));
    b.set_closed(detail::as_bool(detail::member(j, path, "closed"), path + ".closed"));
    return b.finish();
}

// ---- spine trees -----------------------------------------------------

inline Json spine_tree_to_json(const SpineTree& t) {
    switch (t.kind) {
        case SpineTree::Kind::GenusTwoLeaf:
            return Json{{"leaf", "genus-two"}};
        case SpineTree::Kind::ProductLeaf:
            if (t.piece) return Json{{"leaf", "product"}, {"piece", graph_to_json(*t.piece)}};
            return Json{{"leaf", "product"}, {"genus", t.piece_genus}};
        case SpineTree::Kind::Attach:
        default: {
            Json children = Json::array();
            for (const SpineTree& c : t.children) children.push_back(spine_tree_to_json(c));
            return Json{{"attach", std::move(children)},
                        {"links", Json::array({t.attach[0].link, t.attach[1].link})}};
        }
    }
}

inline SpineTree spine_tree_from_json(const Json& j, const std::string& path) {
    detail::expect_object(j, path);
    if (j.contains("leaf")) {
        std::string leaf = detail::as_string(detail::member(j, path, "leaf"), path + ".leaf");
        if (leaf == "genus-two") {
            detail::expect_keys(j, path, {"leaf"});
            return SpineTree::genus_two();
        }
        if (leaf == "product") {
            if (j.contains("piece")) {
                detail::expect_keys(j, path, {"leaf", "piece"});
                return SpineTree::product(graph_from_json(detail::member(j, path, "piece"), path + ".piece"));
            }
            detail::expect_keys(j, path, {"leaf", "genus"});
            return SpineTree::product(
                static_cast<int>(detail::as_int(detail::member(j, path, "genus"), path + ".genus")));
        }
        detail::schema_fail(path + ".leaf", "expected \"genus-two\" or \"product\"");
    }
    detail::expect_keys(j, path, {"attach", "links"});
    const Json& cj = detail::as_array(detail::member(j, path, "attach"), path + ".attach");
    const Json& lj = detail::member(j, path, "links");
    detail::expect_size(lj, path + ".links", 2);
    LinkId first = static_cast<LinkId>(detail::as_int(lj[0], path + ".links[0]"));
    LinkId second = static_cast<LinkId>(detail::as_int(lj[1], path + ".links[1]"));
    if (cj.size() == 1)
        return SpineTree::attach_one(spine_tree_from_json(cj[0], path + ".attach[0]"), first, second);
    if (cj.size() == 2)
        return SpineTree::attach_two(spine_tree_from_json(cj[0], path + ".attach[0]"), first,
                                     spine_tree_from_json(cj[1], path + ".attach[1]"), second);
    detail::schema_fail(path + ".attach", "expected one or two children");
}

// ---- splittings, markings, attestations --------------------------------

inline Json splitting_to_json(const SplittingDescriptor& s) {
    Json bodies = Json::array();
    for (const CompressionBodyDescriptor& b : s.bodies)
        bodies.push_back(Json{{"plus", b.plus_genus}, {"minus", b.minus_genera}, {"label", b.label}});
    return Json{{"bodies", std::move(bodies)}, {"strongly_irreducible", s.strongly_irreducible}};
}

inline SplittingDescriptor splitting_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"bodies", "strongly_irreducible"});
    SplittingDescriptor s;
    const Json& bj = detail::as_array(detail::member(j, path, "bodies"), path + ".bodies");
    for (std::size_t i = 0; i < bj.size(); ++i) {
        std::string pp = detail::at(path + ".bodies", i);
        detail::expect_keys(bj[i], pp, {"plus", "minus", "label"});
        CompressionBodyDescriptor b;
        b.plus_genus = static_cast<int>(detail::as_int(detail::member(bj[i], pp, "plus"), pp + ".plus"));
        const Json& mj = detail::as_array(detail::member(bj[i], pp, "minus"), pp + ".minus");
        for (std::size_t k = 0; k < mj.size(); ++k)
            b.minus_genera.push_back(static_cast<int>(detail::as_int(mj[k], detail::at(pp + ".minus", k))));
        if (bj[i].contains("label")) b.label = detail::as_string(bj[i]["label"], pp + ".label");
        s.bodies.push_back(std::move(b));
    }
    if (j.contains("strongly_irreducible"))
        s.strongly_irreducible = detail::as_bool(j["strongly_irreducible"], path + ".strongly_irreducible");
    return s;
}

inline Json marking_to_json(const CurveWordMarking& m) {
    Json words = Json::object();
    for (const auto& [c, w] : m.words) words[std::to_string(c)] = word_text(w);
    return Json{{"body", m.body}, {"rank", m.rank}, {"words", std::move(words)}};
}

inline CurveWordMarking marking_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"body", "rank", "words"});
    CurveWordMarking m;
    if (j.contains("body")) m.body = detail::as_string(j["body"], path + ".body");
    m.rank = static_cast<int>(detail::as_int(detail::member(j, path, "rank"), path + ".rank"));
    const Json& wj = detail::member(j, path, "words");
    detail::expect_object(wj, path + ".words");
    for (const auto& [k, v] : wj.items()) {
        std::string pp = path + ".words." + k;
        CurveId c = static_cast<CurveId>(detail::key_number(k, pp));
        try {
            m.words[c] = parse_word(detail::as_string(v, pp), m.rank);
        } catch (const Error& e) {
            detail::schema_fail(pp, e.what());
        }
    }
    return m;
}

inline Json attestations_to_json(const Attestations& a) {
    return Json{{"spinal_construction", a.spinal_construction},
                {"strongly_irreducible", a.strongly_irreducible}};
}

inline Attestations attestations_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"spinal_construction", "strongly_irreducible"});
    Attestations a;
    if (j.contains("spinal_construction"))
        a.spinal_construction = detail::as_bool(j["spinal_construction"], path + ".spinal_construction");
    if (j.contains("strongly_irreducible"))
        a.strongly_irreducible = detail::as_bool(j["strongly_irreducible"], path + ".strongly_irreducible");
    return a;
}

// ---- manifests ---------------------------------------------------------

struct Manifest {
    std::string splitting;                // splitting descriptor file
    std::vector<std::string> models;      // one model file per body
    std::vector<CurveMatching> matchings; // inline, one per thick surface
    std::vector<std::string> thin_paths;  // one path file per thin surface
    std::string marking;                  // optional marking file
    std::string out;                      // optional output target
    std::uint64_t seed = 0;
    int max_depth = 0;
    int twist_bound = 3;
    Attestations attestations;            // claims the certificate may lean on
    bool operator==(const Manifest&) const = default;
};

inline Json manifest_to_json(const Manifest& m) {
    Json matchings = Json::array();
    for (const CurveMatching& cm : m.matchings) {
        Json pairs = Json::array();
        for (const auto& [l, r] : cm) pairs.push_back(Json::array({l, r}));
        matchings.push_back(std::move(pairs));
    }
    Json r{{"splitting", m.splitting}, {"models", m.models}, {"matchings", std::move(matchings)},
           {"thin_paths", m.thin_paths}};
    r["marking"] = m.marking.empty() ? Json(nullptr) : Json(m.marking);
    r["out"] = m.out.empty() ? Json(nullptr) : Json(m.out);
    r["seed"] = m.seed;
    r["max_depth"] = m.max_depth;
    r["twist_bound"] = m.twist_bound;
    r["attestations"] = attestations_to_json(m.attestations);
    return r;
}

inline Manifest manifest_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path,
                        {"splitting", "models", "matchings", "thin_paths", "marking", "out", "seed",
                         "max_depth", "twist_bound", "attestations"});
    Manifest m;
    m.splitting = detail::as_string(detail::member(j, path, "splitting"), path + ".splitting");
    const Json& mj = detail::as_array(detail::member(j, path, "models"), path + ".models");
    for (std::size_t i = 0; i < mj.size(); ++i)
        m.models.push_back(detail::as_string(mj[i], detail::at(path + ".models", i)));
    const Json& cj = detail::as_array(detail::member(j, path, "matchings"), path + ".matchings");
    for (std::size_t i = 0; i < cj.size(); ++i) {
        std::string pp = detail::at(path + ".matchings", i);
        CurveMatching cm;
        const Json& pj = detail::as_array(cj[i], pp);
        for (std::size_t k = 0; k < pj.size(); ++k) {
            std::string qp = detail::at(pp, k);
            detail::expect_size(pj[k], qp, 2);
            cm.emplace_back(detail::as_uint(pj[k][0], qp + "[0]"), detail::as_uint(pj[k][1], qp + "[1]"));
        }
        m.matchings.push_back(std::move(cm));
    }
    const Json& tj = detail::as_array(detail::member(j, path, "thin_paths"), path + ".thin_paths");
    for (std::size_t i = 0; i < tj.size(); ++i)
        m.thin_paths.push_back(detail::as_string(tj[i], detail::at(path + ".thin_paths", i)));
    const Json& kj = detail::member(j, path, "marking");
    if (!kj.is_null()) m.marking = detail::as_string(kj, path + ".marking");
    const Json& oj = detail::member(j, path, "out");
    if (!oj.is_null()) m.out = detail::as_string(oj, path + ".out");
    if (j.contains("seed")) m.seed = detail::as_uint(j["seed"], path + ".seed");
    if (j.contains("max_depth"))
        m.max_depth = static_cast<int>(detail::as_int(j["max_depth"], path + ".max_depth"));
    if (j.contains("twist_bound"))
        m.twist_bound = static_cast<int>(detail::as_int(j["twist_bound"], path + ".twist_bound"));
    if (j.contains("attestations"))
        m.attestations = attestations_from_json(j["attestations"], path + ".attestations");
    return m;
}

// ---- verdicts, certificates, assembly reports ---------------------------

inline Json verdict_to_json(const Verdict& v) {
    return Json{{"status", disk_status_name(v.status)}, {"provenance", v.provenance},
                {"assumptions", v.assumptions}};
}

inline Verdict verdict_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"status", "provenance", "assumptions"});
    Verdict v;
    std::string status = detail::as_string(detail::member(j, path, "status"), path + ".status");
    if (status == "BoundsDisk")
        v.status = DiskStatus::BoundsDisk;
    else if (status == "NoDisk")
        v.status = DiskStatus::NoDisk;
    else if (status == "Unknown")
        v.status = DiskStatus::Unknown;
    else
        detail::schema_fail(path + ".status", "expected \"BoundsDisk\", \"NoDisk\", or \"Unknown\"");
    v.provenance = detail::as_string(detail::member(j, path, "provenance"), path + ".provenance");
    const Json& aj = detail::as_array(detail::member(j, path, "assumptions"), path + ".assumptions");
    for (std::size_t i = 0; i < aj.size(); ++i)
        v.assumptions.push_back(detail::as_string(aj[i], detail::at(path + ".assumptions", i)));
    return v;
}

inline Json certificate_to_json(const KnottedCertificate& c) {
    Json loops = Json::array();
    for (const LoopCertificate& l : c.loops)
        loops.push_back(Json{{"link", l.link}, {"verdict", verdict_to_json(l.verdict)}});
    return Json{{"loops", std::move(loops)}, {"all_knotted", c.all_knotted}};
}

inline KnottedCertificate certificate_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path, {"loops", "all_knotted"});
    KnottedCertificate c;
    const Json& lj = detail::as_array(detail::member(j, path, "loops"), path + ".loops");
    for (std::size_t i = 0; i < lj.size(); ++i) {
        std::string pp = detail::at(path + ".loops", i);
        detail::expect_keys(lj[i], pp, {"link", "verdict"});
        c.loops.push_back(
            {static_cast<LinkId>(detail::as_int(detail::member(lj[i], pp, "link"), pp + ".link")),
             verdict_from_json(detail::member(lj[i], pp, "verdict"), pp + ".verdict")});
    }
    c.all_knotted = detail::as_bool(detail::member(j, path, "all_knotted"), path + ".all_knotted");
    return c;
}

inline Json report_to_json(const AssemblyReport& r) {
    return Json{{"complex", complex_to_json(r.complex)},
                {"curve_offsets", r.curve_offsets},
                {"link_map", r.link_map},
                {"face_map", r.face_map},
                {"block_map", r.block_map},
                {"tori_crushed", r.tori_crushed},
                {"thin_lengths", r.thin_lengths},
                {"strongly_irreducible", r.strongly_irreducible}};
}

inline AssemblyReport report_from_json(const Json& j, const std::string& path) {
    detail::expect_keys(j, path,
                        {"complex", "curve_offsets", "link_map", "face_map", "block_map",
                         "tori_crushed", "thin_lengths", "strongly_irreducible"});
    AssemblyReport r;
    r.complex = complex_from_json(detail::member(j, path, "complex"), path + ".complex");
    auto ints = [&](const char* key, auto& out) {
        const Json& aj = detail::as_array(detail::member(j, path, key), path + "." + key);
        for (std::size_t i = 0; i < aj.size(); ++i)
            out.push_back(static_cast<typename std::decay_t<decltype(out)>::value_type>(
                detail::as_int(aj[i], detail::at(path + "." + std::string(key), i))));
    };
    const Json& cj = detail::as_array(detail::member(j, path, "curve_offsets"), path + ".curve_offsets");
    for (std::size_t i = 0; i < cj.size(); ++i)
        r.curve_offsets.push_back(detail::as_uint(cj[i], detail::at(path + ".curve_offsets", i)));
    auto tables = [&](const char* key, auto& out) {
        const Json& aj = detail::as_array(detail::member(j, path, key), path + "." + key);
        for (std::size_t i = 0; i < aj.size(); ++i) {
            std::string pp = detail::at(path + "." + std::string(key), i);
            typename std::decay_t<decltype(out)>::value_type row;
            const Json& rj = detail::as_array(aj[i], pp);
            for (std::size_t k = 0; k < rj.size(); ++k)
                row.push_back(static_cast<int>(detail::as_int(rj[k], detail::at(pp, k))));
            out.push_back(std::move(row));
        }
    };
    tables("link_map", r.link_map);
    tables("face_map", r.face_map);
    tables("block_map", r.block_map);
    ints("tori_crushed", r.tori_crushed);
    ints("thin_lengths", r.thin_lengths);
    r.strongly_irreducible =
        detail::as_bool(detail::member(j, path, "strongly_irreducible"), path + ".strongly_irreducible");
    return r;
}

}  // namespace layered
