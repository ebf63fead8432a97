#pragma once

/*
 * Three-valued oracle for "does this loop bound a disk in its compression
 * body". Two backends, both sound and both partial:
 *
 * Word backend. Loops are marked with cyclic words in the free group on
 * x1..xg, the fundamental group of a genus-g handlebody. cyclic_reduce
 * computes the conjugacy-class normal form (freely reduce, strip inverse
 * pairs across the seam, then take the least rotation under the order
 * x1 < X1 < x2 < X2 < ...), so conjugate markings of parallel lifts agree
 * exactly. The empty normal form means null-homotopic, and a null-homotopic
 * simple loop on the boundary of a handlebody bounds an embedded disk
 * (Dehn's lemma); a nontrivial normal form rules every disk out. Markings
 * are attested inputs, keyed by curve id; nothing transports them along
 * moves.
 *
 * Structural backend. Reads the loop classification of a model together
 * with caller attestations: a minimal-layer model produced by the inductive
 * spine construction has no disk-bounding loop at all, and in a strongly
 * irreducible splitting no interior fat-spine loop bounds a disk on either
 * side (granting the no-nesting lemma). This backend never answers
 * BoundsDisk.
 *
 * Absence of evidence is always Unknown, never NoDisk, so verdicts can back
 * certificates. combine_verdicts conjoins the two backends, keeping both
 * provenances when they agree and retreating to Unknown when they conflict.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layered/spines.hpp"

namespace layered {

// A word symbol is a nonzero generator index: +k reads xk, -k its inverse Xk.
using Word = std::vector<int>;

// Parses "x1 X1 x2": whitespace-separated symbols, lowercase for a
// generator, uppercase for its inverse, index in 1..rank.
inline Word parse_word(const std::string& text, int rank) {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string token = text.substr(i, j - i);
        if (token[0] != 'x' && token[0] != 'X')
            fail(Errc::BadSymbol, "symbol '" + token + "' must start with x or X");
        if (token.size() < 2 || token.find_first_not_of("0123456789", 1) != std::string::npos)
            fail(Errc::BadSymbol, "symbol '" + token + "' needs a numeric generator index");
        int index = 0;
        try {
            index = std::stoi(token.substr(1));
        } catch (const std::exception&) {
            fail(Errc::BadSymbol, "symbol '" + token + "' has an unreadable index");
        }
        if (index < 1 || index > rank)
            fail(Errc::BadSymbol, "symbol '" + token + "' is outside rank " + std::to_string(rank));
        w.push_back(token[0] == 'x' ? index : -index);
        i = j;
    }
    return w;
}

inline std::string word_text(const Word& w) {
    std::string out;
    for (int s : w) {
        if (!out.empty()) out += ' ';
        out += s > 0 ? "x" + std::to_string(s) : "X" + std::to_string(-s);
    }
    return out;
}

// Conjugacy-class normal form: freely and cyclically reduced, then rotated
// to the least representative under x1 < X1 < x2 < X2 < ...
inline Word cyclic_reduce(Word w) {
    Word flat;
    for (int s : w) {
        if (s == 0) fail(Errc::BadSymbol, "word symbol 0 names no generator");
        if (!flat.empty() && flat.back() == -s)
            flat.pop_back();
        else
            flat.push_back(s);
    }
    std::size_t lo = 0, hi = flat.size();
    while (hi - lo >= 2 && flat[lo] == -flat[hi - 1]) {
        ++lo;
        --hi;
    }
    Word v(flat.begin() + lo, flat.begin() + hi);
    if (v.size() < 2) return v;
    auto key = [](int s) { return std::pair<int, bool>{s < 0 ? -s : s, s < 0}; };
    std::size_t best = 0;
    for (std::size_t c = 1; c < v.size(); ++c)
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto a = key(v[(best + i) % v.size()]);
            auto b = key(v[(c + i) % v.size()]);
            if (a != b) {
                if (b < a) best = c;
                break;
            }
        }
    std::rotate(v.begin(), v.begin() + best, v.end());
    return v;
}

// Attested cyclic words for the curves of one body's boundary surfaces.
struct CurveWordMarking {
    std::string body;
    int rank = 0;
    std::map<CurveId, Word> words;

    void mark(CurveId curve, const std::string& text) { words[curve] = parse_word(text, rank); }
};

enum class DiskStatus { BoundsDisk, NoDisk, Unknown };

inline const char* disk_status_name(DiskStatus s) {
    switch (s) {
        case DiskStatus::BoundsDisk: return "BoundsDisk";
        case DiskStatus::NoDisk: return "NoDisk";
        case DiskStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

// Definite statuses carry the argument that produced them; Unknown carries
// the reason instead. Assumptions list every attested or classical input.
struct Verdict {
    DiskStatus status = DiskStatus::Unknown;
    std::string provenance;
    std::vector<std::string> assumptions;
    bool operator==(const Verdict&) const = default;
};

namespace detail {

inline Verdict reduced_word_verdict(const Word& form) {
    if (form.empty())
        return {DiskStatus::BoundsDisk,
                "free-group word check: the word reduces to the identity, and a null-homotopic "
                "simple loop on a handlebody boundary bounds an embedded disk (Dehn's lemma)",
                {"curve word marking attested"}};
    return {DiskStatus::NoDisk,
            "free-group word check: '" + word_text(form) +
                "' is a nontrivial reduced word, so the loop is not null-homotopic",
            {"curve word marking attested"}};
}

}  // namespace detail

inline Verdict free_group_verdict(const CurveWordMarking& m, CurveId curve) {
    auto it = m.words.find(curve);
    if (it == m.words.end())
        return {DiskStatus::Unknown, "curve " + std::to_string(curve) + " is not marked", {}};
    return detail::reduced_word_verdict(cyclic_reduce(it->second));
}

// Facts the caller vouches for; the structural backend is inert without them.
struct Attestations {
    // The model came out of the inductive spine construction, has minimal
    // layer number for its induced boundary decomposition, and that
    // decomposition carries no disk-bounding loop.
    bool spinal_construction = false;
    // The generalized splitting containing this body is strongly irreducible.
    bool strongly_irreducible = false;
    bool operator==(const Attestations&) const = default;
};

inline Verdict structural_verdict(const ModelComplex& m, LinkId loop, const Attestations& a) {
    bool known = false;
    for (const auto& l : m.links()) known = known || l.id == loop;
    if (!known)
        return {DiskStatus::Unknown, "loop " + std::to_string(loop) + " is not a link of the model", {}};
    if (m.closed()) {
        if (a.spinal_construction && a.strongly_irreducible)
            return {DiskStatus::NoDisk,
                    "structural: in an assembled model built from minimal-layer spines over a "
                    "strongly irreducible splitting every loop is knotted",
                    {"inductive spine construction with minimal layer number attested",
                     "induced boundary decomposition attested disk-free",
                     "strong irreducibility attested", "no-nesting lemma assumed",
                     "hyperbolic target manifold assumed"}};
        return {DiskStatus::Unknown,
                "a closed model needs both the construction and the irreducibility attestations",
                {}};
    }
    if (a.spinal_construction)
        return {DiskStatus::NoDisk,
                "structural: a minimal-layer model from the inductive spine construction has no "
                "disk-bounding loop",
                {"inductive spine construction with minimal layer number attested",
                 "induced boundary decomposition attested disk-free"}};
    if (a.strongly_irreducible && classify_loops(m).at(loop) == LoopClass::Interior)
        return {DiskStatus::NoDisk,
                "structural: an interior fat-spine loop bounds no disk on either side of a "
                "strongly irreducible splitting",
                {"strong irreducibility attested", "no-nesting lemma assumed"}};
    return {DiskStatus::Unknown, "no structural condition covers this loop under the given attestations", {}};
}

// Conjunction of two backends: agreement keeps both provenances, one-sided
// evidence wins over Unknown, and conflicting evidence is surfaced as
// Unknown rather than silently picking a side.
inline Verdict combine_verdicts(const Verdict& a, const Verdict& b) {
    std::vector<std::string> assumptions = a.assumptions;
    for (const std::string& s : b.assumptions)
        if (std::find(assumptions.begin(), assumptions.end(), s) == assumptions.end())
            assumptions.push_back(s);
    if (a.status == DiskStatus::Unknown) return b;
    if (b.status == DiskStatus::Unknown) return a;
    if (a.status == b.status) {
        std::string provenance =
            a.provenance == b.provenance ? a.provenance : a.provenance + "; " + b.provenance;
        return {a.status, std::move(provenance), std::move(assumptions)};
    }
    return {DiskStatus::Unknown, "conflicting evidence: " + a.provenance + " / " + b.provenance,
            std::move(assumptions)};
}

// Word verdict for a model link through its lifts. Lifts are parallel
// copies of one loop, so honest markings share a normal form; lifts whose
// markings disagree make the link Unknown rather than trusting either.
inline Verdict link_word_verdict(const ModelComplex& m, const CurveWordMarking& marking, LinkId link) {
    const LinkRec* rec = nullptr;
    for (const auto& l : m.links())
        if (l.id == link) rec = &l;
    if (!rec)
        return {DiskStatus::Unknown, "loop " + std::to_string(link) + " is not a link of the model", {}};
    std::optional<Word> form;
    for (CurveId c : rec->absorbed) {
        auto it = marking.words.find(c);
        if (it == marking.words.end()) continue;
        Word reduced = cyclic_reduce(it->second);
        if (form && *form != reduced)
            return {DiskStatus::Unknown,
                    "lifts of link " + std::to_string(link) + " carry inconsistent words", {}};
        form = std::move(reduced);
    }
    if (!form)
        return {DiskStatus::Unknown, "no lift of link " + std::to_string(link) + " is marked", {}};
    return detail::reduced_word_verdict(*form);
}

/*
 * Checkable shadow of the minimal-layer property: in a model of minimal
 * layer number, every loop that bounds a disk lies in the interior of the
 * fat spine. The check is conditional on its precondition that the target
 * decomposition is disk-free, read off the markings of the final upper
 * front; it reports rather than asserts, so callers can surface violations.
 */
struct MinimalLayerReport {
    bool disk_free_target = false;       // every marked final-front curve reduces nontrivially
    std::vector<LinkId> interior_disks;  // BoundsDisk links classified Interior
    std::vector<LinkId> violations;      // BoundsDisk links classified Boundary
};

inline MinimalLayerReport minimal_layer_check(const ModelComplex& m, const CurveWordMarking& marking) {
    if (m.stages().empty())
        fail(Errc::NotSingleBody, "minimal_layer_check needs a staged single-body model");
    MinimalLayerReport r;
    r.disk_free_target = true;
    for (CurveId c : m.stages().back().graph.curve_ids()) {
        auto it = marking.words.find(c);
        if (it != marking.words.end() && cyclic_reduce(it->second).empty()) r.disk_free_target = false;
    }
    std::map<LinkId, LoopClass> classes = classify_loops(m);
    for (const auto& l : m.links()) {
        if (link_word_verdict(m, marking, l.id).status != DiskStatus::BoundsDisk) continue;
        (classes.at(l.id) == LoopClass::Interior ? r.interior_disks : r.violations).push_back(l.id);
    }
    return r;
}

}  // namespace layered
