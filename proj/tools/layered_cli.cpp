/*
 * Command-line surface. Subcommands cover the pipeline end to end:
 *
 *   enumerate     list the pants decomposition classes of a genus
 *   build-model   build a layered model from a move path (optionally on a spine)
 *   fat-spine     build the blockless model of a spine tree
 *   layer-number  lower-bound the layer number of a target decomposition
 *   assemble      glue compression bodies per a manifest, optionally certify
 *   check         validate a model complex file
 *   export        canonicalize a file or render it as DOT
 *
 * All files are canonical JSON; DOT is export-only. Exit codes: 0 success,
 * 1 for mathematical or schema violations in the inputs, 2 for usage
 * errors (which print the help text). Identical inputs and flags produce
 * byte-identical outputs.
 */

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "layered/dot.hpp"
#include "layered/serialize.hpp"

namespace {

using namespace layered;

void emit(const std::string& bytes, const std::string& out) {
    if (out.empty())
        std::cout << bytes;
    else
        write_text_file(out, bytes);
}

Json load(const std::string& file) { return parse_json_text(read_text_file(file), file); }

std::string resolve(const std::string& base_file, const std::string& ref) {
    std::filesystem::path p(ref);
    if (p.is_absolute()) return p.string();
    return (std::filesystem::path(base_file).parent_path() / p).string();
}

int run_enumerate(int genus, std::uint64_t seed, const std::string& out, const std::string& format) {
    std::vector<PantsGraph> classes = enumerate_pants_graphs(genus);
    if (format == "dot") {
        std::string dot;
        for (std::size_t i = 0; i < classes.size(); ++i)
            dot += graph_dot(classes[i], "class" + std::to_string(i));
        emit(dot, out);
        return 0;
    }
    Json j{{"command", "enumerate"},
           {"settings", Json{{"genus", genus}, {"seed", seed}}},
           {"count", classes.size()}};
    Json arr = Json::array();
    for (const PantsGraph& g : classes) arr.push_back(graph_to_json(g));
    j["classes"] = std::move(arr);
    emit(dump_bytes(j), out);
    return 0;
}

int run_build_model(const std::string& path_file, const std::string& tree_file, const std::string& out,
                    const std::string& format) {
    MovePath path = path_from_json(load(path_file), "path");
    ModelComplex m = tree_file.empty()
                         ? build_product_model(path)
                         : layer_model(build_fat_spine(spine_tree_from_json(load(tree_file), "tree")), path);
    emit(format == "dot" ? complex_dot(m) : dump_bytes(complex_to_json(m)), out);
    return 0;
}

int run_fat_spine(const std::string& tree_file, const std::string& out, const std::string& format) {
    ModelComplex m = build_fat_spine(spine_tree_from_json(load(tree_file), "tree"));
    emit(format == "dot" ? complex_dot(m) : dump_bytes(complex_to_json(m)), out);
    return 0;
}

int run_layer_number(int genus, const std::string& target_file, int max_depth, std::uint64_t seed,
                     const std::string& out) {
    PantsGraph target = graph_from_json(load(target_file), "graph");
    std::optional<int> bound = layer_number_lower_bound(target, genus, max_depth);
    Json j{{"command", "layer-number"},
           {"settings", Json{{"genus", genus}, {"max_depth", max_depth}, {"seed", seed}}},
           {"bound", bound ? Json(*bound) : Json(nullptr)},
           {"spinal", bound.has_value() && *bound == 0}};
    emit(dump_bytes(j), out);
    return 0;
}

std::string certificate_text(const KnottedCertificate& cert) {
    std::string text = "certificate: " + std::to_string(cert.loops.size()) + " loops, " +
                       (cert.all_knotted ? "all knotted" : "not all knotted") + "\n";
    for (const LoopCertificate& lc : cert.loops) {
        text += "loop " + std::to_string(lc.link) + ": " + disk_status_name(lc.verdict.status) + "\n";
        text += "  provenance: " + lc.verdict.provenance + "\n";
        for (const std::string& a : lc.verdict.assumptions) text += "  assumes: " + a + "\n";
    }
    return text;
}

int run_assemble(const std::string& manifest_file, bool certify, const std::string& out_flag) {
    Manifest man = manifest_from_json(load(manifest_file), "manifest");
    SplittingDescriptor split =
        splitting_from_json(load(resolve(manifest_file, man.splitting)), "splitting");
    std::vector<ModelComplex> models;
    for (const std::string& f : man.models)
        models.push_back(complex_from_json(load(resolve(manifest_file, f)), "model"));
    std::vector<MovePath> thin;
    for (const std::string& f : man.thin_paths)
        thin.push_back(path_from_json(load(resolve(manifest_file, f)), "path"));

    AssemblyReport rep = assemble(split, models, man.matchings, thin);
    Json j{{"command", "assemble"},
           {"settings", Json{{"seed", man.seed}, {"max_depth", man.max_depth},
                             {"twist_bound", man.twist_bound}}},
           {"report", report_to_json(rep)}};
    std::string text;
    if (certify) {
        CurveWordMarking marking{"assembled", 0, {}};
        if (!man.marking.empty())
            marking = marking_from_json(load(resolve(manifest_file, man.marking)), "marking");
        Attestations att = man.attestations;
        att.strongly_irreducible = att.strongly_irreducible || split.strongly_irreducible;
        KnottedCertificate cert = knotted_certificate(rep.complex, marking, att);
        j["certificate"] = certificate_to_json(cert);
        text = certificate_text(cert);
    } else {
        j["certificate"] = nullptr;
    }

    std::string out = out_flag.empty() ? man.out : out_flag;
    if (!out.empty() && out_flag.empty()) out = resolve(manifest_file, out);
    emit(dump_bytes(j), out);
    if (certify) (out.empty() ? std::cerr : std::cout) << text;
    return 0;
}

int run_check(const std::string& file, const std::string& out) {
    ModelComplex m = complex_from_json(load(file), "model");
    ValidationReport r = validate_complex(m);
    Json j{{"command", "check"}, {"ok", r.ok}, {"problems", r.problems}};
    emit(dump_bytes(j), out);
    return r.ok ? 0 : 1;
}

int run_export(const std::string& file, const std::string& out, const std::string& format) {
    Json j = load(file);
    if (!j.is_object()) fail(Errc::SchemaViolation, "file: expected a top-level object");
    if (j.contains("vertices")) {
        PantsGraph g = graph_from_json(j, "graph");
        emit(format == "dot" ? graph_dot(g) : dump_bytes(graph_to_json(g)), out);
        return 0;
    }
    if (j.contains("links")) {
        ModelComplex m = complex_from_json(j, "model");
        emit(format == "dot" ? complex_dot(m) : dump_bytes(complex_to_json(m)), out);
        return 0;
    }
    if (format == "dot") fail(Errc::SchemaViolation, "file: only graphs and models have a DOT form");
    if (j.contains("base")) {
        emit(dump_bytes(path_to_json(path_from_json(j, "path"))), out);
        return 0;
    }
    if (j.contains("leaf") || j.contains("attach")) {
        emit(dump_bytes(spine_tree_to_json(spine_tree_from_json(j, "tree"))), out);
        return 0;
    }
    if (j.contains("bodies")) {
        emit(dump_bytes(splitting_to_json(splitting_from_json(j, "splitting"))), out);
        return 0;
    }
    if (j.contains("rank")) {
        emit(dump_bytes(marking_to_json(marking_from_json(j, "marking"))), out);
        return 0;
    }
    if (j.contains("splitting")) {
        emit(dump_bytes(manifest_to_json(manifest_from_json(j, "manifest"))), out);
        return 0;
    }
    fail(Errc::SchemaViolation, "file: not a recognized entity");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"layered models of generalized Heegaard splittings"};
    app.require_subcommand(1);

    int genus = 2, max_depth = 4, twist_bound = 3;
    std::uint64_t seed = 0;
    std::string out, format = "json", path_file, tree_file, target_file, manifest_file, input_file;
    bool certify = false;

    CLI::App* enumerate = app.add_subcommand("enumerate", "list pants decomposition classes");
    enumerate->add_option("--genus", genus, "surface genus")->required();
    enumerate->add_option("--seed", seed, "random seed echo");
    enumerate->add_option("--out", out, "output file (default stdout)");
    enumerate->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    CLI::App* build = app.add_subcommand("build-model", "build a layered model from a move path");
    build->add_option("--path", path_file, "move path file")->required();
    build->add_option("--tree", tree_file, "spine tree file to layer over (product model if absent)");
    build->add_option("--twist-bound", twist_bound, "twist bound echo");
    build->add_option("--out", out, "output file (default stdout)");
    build->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    CLI::App* spine = app.add_subcommand("fat-spine", "build the blockless model of a spine tree");
    spine->add_option("--tree", tree_file, "spine tree file")->required();
    spine->add_option("--out", out, "output file (default stdout)");
    spine->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    CLI::App* layer = app.add_subcommand("layer-number", "lower-bound the layer number of a target");
    layer->add_option("--genus", genus, "handlebody genus")->required();
    layer->add_option("--target", target_file, "target decomposition file")->required();
    layer->add_option("--max-depth", max_depth, "search depth bound");
    layer->add_option("--seed", seed, "random seed echo");
    layer->add_option("--out", out, "output file (default stdout)");

    CLI::App* assemble_cmd = app.add_subcommand("assemble", "glue compression bodies per a manifest");
    assemble_cmd->add_option("--manifest", manifest_file, "assembly manifest file")->required();
    assemble_cmd->add_flag("--certify", certify, "emit a knotted-loop certificate");
    assemble_cmd->add_option("--out", out, "output file (overrides the manifest target)");

    CLI::App* check = app.add_subcommand("check", "validate a model complex file");
    check->add_option("file", input_file, "model complex file")->required();
    check->add_option("--out", out, "report file (default stdout)");

    CLI::App* export_cmd = app.add_subcommand("export", "canonicalize a file or render it as DOT");
    export_cmd->add_option("file", input_file, "input file")->required();
    export_cmd->add_option("--out", out, "output file (default stdout)");
    export_cmd->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    }

    try {
        if (enumerate->parsed()) return run_enumerate(genus, seed, out, format);
        if (build->parsed()) return run_build_model(path_file, tree_file, out, format);
        if (spine->parsed()) return run_fat_spine(tree_file, out, format);
        if (layer->parsed()) return run_layer_number(genus, target_file, max_depth, seed, out);
        if (assemble_cmd->parsed()) return run_assemble(manifest_file, certify, out);
        if (check->parsed()) return run_check(input_file, out);
        if (export_cmd->parsed()) return run_export(input_file, out, format);
    } catch (const layered::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
