#pragma once

/*
 * The model-decomposition cell complex.
 *
 * A model is a triple of link components, pants faces and pants blocks. Each
 * face has three cuffs, each lying on a link, and two named sides; a block
 * covers one side of each face it touches, so "block interiors are pairwise
 * disjoint" becomes "every (face, side) pair carries at most one block slot".
 * An S block rides on one face and carries one vertical cuff; an A block
 * rides on two faces and carries four vertical cuffs, counted with
 * multiplicity.
 *
 * Layered construction exposes a pants decomposition at every stage: the
 * front. A front remembers its pants graph, which (face, side) pair realizes
 * each graph vertex, and which link each graph curve lifts from. A link can
 * be exposed through several front curves at once (a spine loop with k germs
 * lifts k times); it is retired at the first stage where none of its lifts
 * is exposed.
 *
 * Spine germs live on the link records: a germ (face, cuff, flip) is one
 * pants sheet attached along the link circle, in cyclic order. flip = false
 * means side 1 of that face looks toward the next sector of the cyclic
 * order. Sector-by-sector reading of the germ list reconstructs the induced
 * boundary decomposition.
 *
 * Euler characteristic: blocks contribute -1 (S) or -2 (A), an internal face
 * (both sides covered) adds +1 back, a loose face (no side covered, as in a
 * bare spine) contributes its own -1, and circles contribute 0 everywhere.
 * All of that collapses to the count below: #S + 2 #A - #faces + #covered
 * slots / ... spelled out in euler_characteristic.
 */

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "layered/moves.hpp"
#include "layered/pants_graph.hpp"

namespace layered {

using LinkId = int;
using FaceId = int;
using BlockId = int;

struct Germ {
    FaceId face = 0;
    int cuff = 0;        // cuff slot 0..2 of that face
    bool flip = false;   // false: side 1 of the face looks toward the next sector
    auto operator<=>(const Germ&) const = default;
};

struct LinkRec {
    LinkId id = 0;
    std::vector<CurveId> absorbed;       // curve ids this link carries, sorted
    int created_stage = 0;
    std::optional<int> retired_stage;    // first stage with no exposed lift
    std::vector<Germ> germs;             // cyclic, spine links only
    bool operator==(const LinkRec&) const = default;
};

struct FaceSideRef {
    FaceId face = 0;
    int side = 0;
    auto operator<=>(const FaceSideRef&) const = default;
};

struct BlockSlot {
    BlockId block = 0;
    bool top = false;   // covered as a top face of that block, else as a bottom face
    int index = 0;      // position within the block's bottom or top list
    auto operator<=>(const BlockSlot&) const = default;
};

struct FaceRec {
    FaceId id = 0;
    std::array<LinkId, 3> cuffs{};
    int created_stage = 0;
    std::array<std::optional<BlockSlot>, 2> cover;  // per side
    bool operator==(const FaceRec&) const = default;
};

struct BlockRec {
    BlockId id = 0;
    MoveKind kind = MoveKind::S;
    int stage = 0;                      // 1-based position in the layering order
    std::vector<FaceSideRef> bottom;    // 1 for S, 2 for A
    std::vector<FaceSideRef> top;
    std::vector<LinkId> vertical;       // 1 for S, 4 for A, with multiplicity
    LinkId bottom_link = 0;
    LinkId top_link = 0;
    int twist = 0;
    bool operator==(const BlockRec&) const = default;
};

struct FrontSnapshot {
    PantsGraph graph;
    std::map<int, FaceSideRef> slots;    // graph vertex -> exposed (face, side)
    std::map<CurveId, LinkId> links;     // graph curve -> link it lifts
    bool operator==(const FrontSnapshot&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;

    void flag(std::string msg) {
        ok = false;
        problems.push_back(std::move(msg));
    }
};

class ModelComplex {
  public:
    const std::vector<LinkRec>& links() const { return links_; }
    const std::vector<FaceRec>& faces() const { return faces_; }
    const std::vector<BlockRec>& blocks() const { return blocks_; }
    const std::vector<FrontSnapshot>& stages() const { return stages_; }
    const std::vector<FrontSnapshot>& minus_fronts() const { return minus_fronts_; }
    bool closed() const { return closed_; }

    const LinkRec& link(LinkId id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= links_.size()) fail(Errc::UnknownCurve, "no such link");
        return links_[id];
    }

    int block_count(MoveKind kind) const {
        int n = 0;
        for (const auto& b : blocks_)
            if (b.kind == kind) ++n;
        return n;
    }

  private:
    friend class ModelBuilder;
    friend bool operator==(const ModelComplex& a, const ModelComplex& b) {
        return a.links_ == b.links_ && a.faces_ == b.faces_ && a.blocks_ == b.blocks_ &&
               a.stages_ == b.stages_ && a.minus_fronts_ == b.minus_fronts_ && a.closed_ == b.closed_;
    }

    std::vector<LinkRec> links_;
    std::vector<FaceRec> faces_;
    std::vector<BlockRec> blocks_;
    std::vector<FrontSnapshot> stages_;
    std::vector<FrontSnapshot> minus_fronts_;
    bool closed_ = false;
};

// Mutable assembler shared by the product-model, spine and closed-manifold
// builders. All id spaces are dense and in insertion order.
class ModelBuilder {
  public:
    ModelBuilder() = default;
    // Resume building on top of an existing complex (layering onto a spine).
    explicit ModelBuilder(ModelComplex m) : m_(std::move(m)) {}

    LinkId add_link(std::vector<CurveId> absorbed, int created_stage, std::vector<Germ> germs = {}) {
        std::sort(absorbed.begin(), absorbed.end());
        LinkId id = static_cast<LinkId>(m_.links_.size());
        m_.links_.push_back({id, std::move(absorbed), created_stage, std::nullopt, std::move(germs)});
        return id;
    }

    FaceId add_face(std::array<LinkId, 3> cuffs, int created_stage) {
        FaceId id = static_cast<FaceId>(m_.faces_.size());
        m_.faces_.push_back({id, cuffs, created_stage, {}});
        return id;
    }

    BlockId add_block(BlockRec b) {
        b.id = static_cast<BlockId>(m_.blocks_.size());
        for (std::size_t i = 0; i < b.bottom.size(); ++i) cover(b.bottom[i], {b.id, false, static_cast<int>(i)});
        for (std::size_t i = 0; i < b.top.size(); ++i) cover(b.top[i], {b.id, true, static_cast<int>(i)});
        m_.blocks_.push_back(std::move(b));
        return m_.blocks_.back().id;
    }

    void retire_link(LinkId id, int stage) { m_.links_[id].retired_stage = stage; }

    void append_germ(LinkId id, Germ g) { m_.links_[id].germs.push_back(g); }

    void push_stage(FrontSnapshot s) { m_.stages_.push_back(std::move(s)); }
    void push_minus_front(FrontSnapshot s) { m_.minus_fronts_.push_back(std::move(s)); }
    void clear_fronts() {
        m_.stages_.clear();
        m_.minus_fronts_.clear();
    }
    void set_closed(bool closed) { m_.closed_ = closed; }

    LinkRec& link(LinkId id) { return m_.links_[id]; }
    FaceRec& face(FaceId id) { return m_.faces_[id]; }
    const ModelComplex& peek() const { return m_; }

    ModelComplex finish() { return std::move(m_); }

  private:
    void cover(FaceSideRef ref, BlockSlot slot) {
        auto& side = m_.faces_[ref.face].cover[ref.side];
        if (side) fail(Errc::ValidationFailure, "face side covered twice");
        side = slot;
    }

    ModelComplex m_;
};

// One product block per move: an S block replaces one exposed pants, an A
// block replaces two. Links are curve lifetimes of the path.
inline ModelComplex build_product_model(const MovePath& path) {
    PathReport rep = validate_path(path);
    if (!rep.valid) fail(Errc::InvalidPath, "product model needs an applicable path: " + rep.message);

    ModelBuilder b;
    std::map<CurveId, LinkId> link_of;   // exposed curve -> link
    FrontSnapshot front{path.base, {}, {}};

    for (CurveId c : path.base.curve_ids()) link_of[c] = b.add_link({c}, 0);
    for (int v = 0; v < path.base.vertices(); ++v) {
        std::array<LinkId, 3> cuffs{};
        for (int s = 0; s < 3; ++s) cuffs[s] = link_of.at(path.base.curve_at(Leg{v, s}));
        FaceId f = b.add_face(cuffs, 0);
        front.slots[v] = {f, 1};
    }
    front.links = link_of;

    // The base surface itself is the lower boundary of the product.
    FrontSnapshot minus = front;
    for (auto& [v, ref] : minus.slots) ref.side = 0;
    b.push_minus_front(std::move(minus));
    b.push_stage(front);

    for (std::size_t i = 0; i < path.moves.size(); ++i) {
        const Move& m = path.moves[i];
        int stage = static_cast<int>(i) + 1;
        MoveEffect e = move_effect(front.graph, m);

        LinkId old_link = link_of.at(e.retired);
        LinkId new_link = b.add_link({e.created}, stage);
        std::vector<LinkId> vertical;
        for (CurveId c : e.vertical) vertical.push_back(link_of.at(c));

        std::vector<FaceSideRef> bottom, top;
        for (int v : e.vertices) bottom.push_back(front.slots.at(v));
        for (int v : e.vertices) {
            std::array<LinkId, 3> cuffs{};
            for (int s = 0; s < 3; ++s) {
                CurveId c = e.after.curve_at(Leg{v, s});
                cuffs[s] = c == e.created ? new_link : link_of.at(c);
            }
            FaceId f = b.add_face(cuffs, stage);
            top.push_back({f, 0});
            front.slots[v] = {f, 1};
        }

        b.add_block({0, m.kind, stage, bottom, top, vertical, old_link, new_link, m.twist});
        b.retire_link(old_link, stage);
        link_of.erase(e.retired);
        link_of[e.created] = new_link;

        front.graph = std::move(e.after);
        front.links = link_of;
        b.push_stage(front);
    }

    return b.finish();
}

// Exposed decomposition after the given number of blocks. Closed complexes
// have no stages at all.
inline const PantsGraph& exposed_decomposition(const ModelComplex& m, int stage) {
    if (stage < 0 || static_cast<std::size_t>(stage) >= m.stages().size())
        fail(Errc::StageOutOfRange, "no front snapshot at stage " + std::to_string(stage));
    return m.stages()[stage].graph;
}

inline ValidationReport validate_complex(const ModelComplex& m) {
    ValidationReport r;
    auto link_ok = [&](LinkId id) { return id >= 0 && static_cast<std::size_t>(id) < m.links().size(); };
    auto face_ok = [&](FaceId id) { return id >= 0 && static_cast<std::size_t>(id) < m.faces().size(); };

    for (const auto& f : m.faces())
        for (LinkId c : f.cuffs)
            if (!link_ok(c)) r.flag("face " + std::to_string(f.id) + " has a cuff on a missing link");

    // Germ data, when present, must point at cuffs of its own link.
    for (const auto& l : m.links())
        for (const Germ& g : l.germs) {
            if (!face_ok(g.face) || g.cuff < 0 || g.cuff > 2) {
                r.flag("link " + std::to_string(l.id) + " has a germ off any face");
                continue;
            }
            if (m.faces()[g.face].cuffs[g.cuff] != l.id)
                r.flag("link " + std::to_string(l.id) + " has a germ at a cuff of another link");
        }

    // Block shape, marked loops, and the two-way face-cover bookkeeping.
    for (const auto& blk : m.blocks()) {
        std::size_t faces_each = blk.kind == MoveKind::S ? 1 : 2;
        std::size_t verticals = blk.kind == MoveKind::S ? 1 : 4;
        if (blk.bottom.size() != faces_each || blk.top.size() != faces_each)
            r.flag("block " + std::to_string(blk.id) + " has the wrong face count");
        if (blk.vertical.size() != verticals)
            r.flag("block " + std::to_string(blk.id) + " has the wrong vertical cuff count");
        for (LinkId l : blk.vertical)
            if (!link_ok(l)) r.flag("block " + std::to_string(blk.id) + " marks a missing link");
        if (!link_ok(blk.bottom_link) || !link_ok(blk.top_link))
            r.flag("block " + std::to_string(blk.id) + " retires or creates a missing link");

        auto check_refs = [&](const std::vector<FaceSideRef>& refs, bool top) {
            for (std::size_t i = 0; i < refs.size(); ++i) {
                const auto& ref = refs[i];
                if (!face_ok(ref.face) || ref.side < 0 || ref.side > 1) {
                    r.flag("block " + std::to_string(blk.id) + " touches a missing face");
                    continue;
                }
                const auto& cover = m.faces()[ref.face].cover[ref.side];
                BlockSlot want{blk.id, top, static_cast<int>(i)};
                if (!cover || !(*cover == want))
                    r.flag("block " + std::to_string(blk.id) + " and face " + std::to_string(ref.face) +
                           " disagree about side " + std::to_string(ref.side));
            }
        };
        check_refs(blk.bottom, false);
        check_refs(blk.top, true);
    }

    // Every cover entry must point back to a real block slot.
    for (const auto& f : m.faces())
        for (int side = 0; side < 2; ++side) {
            const auto& cover = f.cover[side];
            if (!cover) continue;
            if (cover->block < 0 || static_cast<std::size_t>(cover->block) >= m.blocks().size()) {
                r.flag("face " + std::to_string(f.id) + " is covered by a missing block");
                continue;
            }
            const auto& blk = m.blocks()[cover->block];
            const auto& refs = cover->top ? blk.top : blk.bottom;
            if (cover->index < 0 || static_cast<std::size_t>(cover->index) >= refs.size() ||
                !(refs[cover->index] == FaceSideRef{f.id, side}))
                r.flag("face " + std::to_string(f.id) + " cover does not match block " +
                       std::to_string(cover->block));
        }

    if (m.closed()) {
        for (const auto& f : m.faces())
            if (!f.cover[0] || !f.cover[1])
                r.flag("closed complex leaves face " + std::to_string(f.id) + " exposed");
        if (!m.stages().empty() || !m.minus_fronts().empty())
            r.flag("closed complex still carries boundary fronts");
    }

    // Front snapshots: right size, consistent with faces, links and covers.
    auto check_front = [&](const FrontSnapshot& s, int stage, const char* what) {
        std::set<FaceSideRef> used;
        for (const auto& [v, ref] : s.slots) {
            if (v < 0 || v >= s.graph.vertices()) {
                r.flag(std::string(what) + ": slot for a vertex outside the graph");
                continue;
            }
            if (!face_ok(ref.face) || ref.side < 0 || ref.side > 1) {
                r.flag(std::string(what) + ": slot on a missing face");
                continue;
            }
            if (!used.insert(ref).second) r.flag(std::string(what) + ": two pants on one face side");
            const auto& f = m.faces()[ref.face];
            if (f.created_stage > stage) r.flag(std::string(what) + ": face exposed before it exists");
            const auto& cover = f.cover[ref.side];
            if (cover && m.blocks()[cover->block].stage <= stage)
                r.flag(std::string(what) + ": exposed side already under block " +
                       std::to_string(cover->block));
            // The front pants must sit on the same links as the face.
            std::multiset<LinkId> face_links(f.cuffs.begin(), f.cuffs.end());
            std::multiset<LinkId> graph_links;
            for (int slot = 0; slot < 3; ++slot) {
                auto it = s.links.find(s.graph.curve_at(Leg{v, slot}));
                if (it == s.links.end()) {
                    r.flag(std::string(what) + ": front curve lifts no link");
                    break;
                }
                graph_links.insert(it->second);
            }
            if (graph_links.size() == 3 && face_links != graph_links)
                r.flag(std::string(what) + ": face " + std::to_string(ref.face) +
                       " and its front pants disagree about cuff links");
        }
        if (static_cast<int>(s.slots.size()) != s.graph.vertices())
            r.flag(std::string(what) + ": front size is not one slot per pants");
        for (const auto& [c, l] : s.links) {
            if (!s.graph.has_curve(c)) {
                r.flag(std::string(what) + ": lift map mentions a curve not on the front");
                continue;
            }
            if (!link_ok(l)) {
                r.flag(std::string(what) + ": lift map mentions a missing link");
                continue;
            }
            const auto& rec = m.links()[l];
            if (rec.created_stage > stage || (rec.retired_stage && *rec.retired_stage <= stage))
                r.flag(std::string(what) + ": link " + std::to_string(l) + " exposed outside its lifetime");
        }
        if (s.links.size() != static_cast<std::size_t>(s.graph.curve_count()))
            r.flag(std::string(what) + ": lift map size is not one link per curve");
    };

    for (std::size_t k = 0; k < m.stages().size(); ++k)
        check_front(m.stages()[k], static_cast<int>(k), ("stage " + std::to_string(k)).c_str());
    for (const auto& s : m.minus_fronts()) check_front(s, 0, "lower boundary");

    // Stage fronts must line up with the blocks: the stage-k block rides on
    // pants exposed at stage k-1 and its top faces are exposed at stage k.
    if (!m.stages().empty()) {
        for (const auto& blk : m.blocks()) {
            int stage = blk.stage;
            if (stage < 1 || static_cast<std::size_t>(stage) >= m.stages().size()) {
                r.flag("block " + std::to_string(blk.id) + " has no surrounding fronts");
                continue;
            }
            auto exposed_in = [&](const FrontSnapshot& s, const FaceSideRef& ref) {
                for (const auto& [v, got] : s.slots)
                    if (got == ref) return true;
                return false;
            };
            for (const auto& ref : blk.bottom)
                if (!exposed_in(m.stages()[stage - 1], ref))
                    r.flag("block " + std::to_string(blk.id) + " bottom face was not exposed below it");
            for (const auto& ref : blk.top)
                if (!exposed_in(m.stages()[stage], {ref.face, 1 - ref.side}))
                    r.flag("block " + std::to_string(blk.id) + " top face is not exposed above it");
        }
    }

    return r;
}

// Blocks contribute their handlebody characteristic, internal faces
// compensate the double count, loose faces stand alone and circles vanish;
// the sum telescopes to the face/block count below.
inline int euler_characteristic(const ModelComplex& m) {
    ValidationReport rep = validate_complex(m);
    if (!rep.ok) fail(Errc::NotValidated, "complex failed validation: " + rep.problems.front());
    return m.block_count(MoveKind::S) + 2 * m.block_count(MoveKind::A) - static_cast<int>(m.faces().size());
}

}  // namespace layered
