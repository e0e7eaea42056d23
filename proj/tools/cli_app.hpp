#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "matvine/matvine.hpp"

namespace matvine::cli {

enum Exit { ok = 0, negative = 1, bad_input = 2, resource = 3 };

struct Options {
    std::vector<std::string> inputs;
    std::string output, dot, direction = "lower", mode, kind, node, emit_dir, require = "vine";
    std::vector<std::string> order;
    bool psi = false, omega = false, forests = false, roundtrip = false, unbounded = false;
    int k = 0, dim = 0, l = 0;
    unsigned jobs = 1;
};

namespace detail {

inline std::string format_of(const Document& d) {
    if (std::holds_alternative<LabeledGraph>(d)) return graph_format;
    if (std::holds_alternative<VinePoset>(d)) return vine_format;
    return forests_format;
}

inline VinePoset as_vine(const Document& d, const std::string& verb) {
    if (auto p = std::get_if<VinePoset>(&d)) return *p;
    if (auto f = std::get_if<ForestSequence>(&d)) return from_forest_sequence(*f);
    throw input_error(verb + " needs a " + vine_format + " or " + forests_format + " input, got " + format_of(d));
}

inline LabeledGraph as_graph(const Document& d, const std::string& verb) {
    if (auto g = std::get_if<LabeledGraph>(&d)) return *g;
    throw input_error(verb + " needs a " + graph_format + " input, got " + format_of(d));
}

inline VineClass parse_class(const std::string& s) {
    if (s == "vine") return VineClass::Vine;
    if (s == "lr_vine") return VineClass::LRVine;
    if (s == "r_vine") return VineClass::RVine;
    throw input_error("unknown class '" + s + "' (vine|lr_vine|r_vine)");
}

inline StandardKind parse_kind(const std::string& s) {
    if (s == "d_vine") return StandardKind::d_vine;
    if (s == "c_vine") return StandardKind::c_vine;
    if (s == "root_poset_a") return StandardKind::root_poset_a;
    throw input_error("unknown kind '" + s + "' (d_vine|c_vine|root_poset_a)");
}

inline Json big(const BigInt& x) { return Json::parse(x.str()); }

}  // namespace detail

/// Runs one command; results go to `out` as JSON, diagnostics to `err`.
class Runner {
public:
    Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    int check() {
        auto d = read_document(input(0));
        if (auto g = std::get_if<LabeledGraph>(&d)) {
            auto v = check_mat_labeling(*g);
            emit_dot(*g);
            return verdict({{"format", graph_format}}, v);
        }
        auto p = detail::as_vine(d, "check");
        auto c = classify(p);
        emit_dot(p);
        auto need = detail::parse_class(o_.require);
        Verdict v = c.at_least(need) ? Verdict::pass() : Verdict::fail(c.reason);
        return verdict({{"format", detail::format_of(d)}, {"class", to_string(c.kind)}}, v);
    }

    int convert() {
        auto d = read_document(input(0));
        int chosen = int(o_.psi) + int(o_.omega) + int(o_.forests);
        if (chosen != 1) throw input_error("convert needs exactly one of --psi, --omega, --forests");
        if (o_.psi) {
            auto g = detail::as_graph(d, "convert --psi");
            auto p = psi(g);
            if (o_.roundtrip && !report_roundtrip(roundtrip_check(g))) return negative;
            return result(p);
        }
        if (o_.omega) {
            auto p = detail::as_vine(d, "convert --omega");
            auto g = omega(p);
            if (o_.roundtrip && !report_roundtrip(roundtrip_check(p))) return negative;
            return result(g);
        }
        if (auto f = std::get_if<ForestSequence>(&d)) return result(from_forest_sequence(*f));
        auto p = detail::as_vine(d, "convert --forests");
        auto f = to_forest_sequence(p);
        write(to_json(f));
        emit_dot(p);
        return ok;
    }

    int enumerate() {
        EnumerationOptions eo;
        eo.jobs = std::max(1u, o_.jobs);
        eo.unbounded = o_.unbounded;
        eo.keep_representatives = !o_.emit_dir.empty();
        auto r = enumerate_mat_labelings_complete(o_.l, eo);
        if (!o_.emit_dir.empty()) {
            std::filesystem::create_directories(o_.emit_dir);
            for (std::size_t i = 0; i < r.forms.size(); ++i)
                write_text((std::filesystem::path(o_.emit_dir) / (r.forms[i].hex() + ".json")).string(),
                           to_json(r.representatives[i]).dump(2) + "\n");
        }
        auto j = to_json(r);
        write(j);
        if (r.class_count != r.formula_count) {
            err_ << "class count " << r.class_count << " differs from the closed form " << r.formula_count << "\n";
            return negative;
        }
        return ok;
    }

    int count_ideals() {
        std::optional<StandardKind> kind;
        VinePoset p;
        if (!o_.kind.empty()) {
            if (!o_.inputs.empty()) throw input_error("give either an input file or --kind, not both");
            if (o_.dim < 1) throw input_error("--kind needs --dim L with L >= 1");
            kind = detail::parse_kind(o_.kind);
            p = build_standard(*kind, o_.dim);
        } else {
            p = detail::as_vine(read_document(input(0)), "count-ideals");
        }
        if (!o_.mode.empty() && o_.mode != "all" && o_.mode != "full_support")
            throw input_error("unknown mode '" + o_.mode + "' (all|full_support)");
        Json j = {{"nodes", p.size()}, {"dimension", p.dimension()}};
        if (o_.mode.empty() || o_.mode == "all") j["all"] = enumerate_ideals(p, IdealMode::all);
        if (o_.mode.empty() || o_.mode == "full_support")
            j["full_support"] = enumerate_ideals(p, IdealMode::full_support);
        if (kind == StandardKind::d_vine || kind == StandardKind::root_poset_a)
            j["catalan"] = detail::big(catalan(o_.dim + 1));
        if (kind == StandardKind::c_vine) j["a047970"] = detail::big(a047970(o_.dim));
        emit_dot(p);
        write(j);
        return ok;
    }

    int truncate_cmd() {
        auto p = detail::as_vine(read_document(input(0)), "truncate");
        Direction dir;
        if (o_.direction == "lower") dir = Direction::lower;
        else if (o_.direction == "upper") dir = Direction::upper;
        else throw input_error("unknown direction '" + o_.direction + "' (lower|upper)");
        return result(truncate(p, o_.k, dir));
    }

    int marginalize_cmd() {
        auto p = detail::as_vine(read_document(input(0)), "marginalize");
        if (o_.node.empty()) throw input_error("marginalize needs --node");
        auto m = marginalize(p, o_.node);
        if (!m.graded) err_ << "marginal is not graded by the original rank\n";
        return result(m.poset);
    }

    int sampling_order() {
        auto p = detail::as_vine(read_document(input(0)), "sampling-order");
        if (!o_.order.empty()) return verdict({{"order", o_.order}}, is_sampling_order(p, o_.order));
        auto order = find_sampling_order(p);
        write({{"order", *order}});
        return ok;
    }

    int embed() {
        auto p = detail::as_vine(read_document(input(0)), "embed");
        auto [target, map] = embed_in_r_vine(p);
        if (!o_.output.empty()) write_text(o_.output, to_json(target).dump(2) + "\n");
        Json j = {{"map", map.map}};
        if (o_.output.empty()) j["target"] = to_json(target);
        out_ << j.dump(2) << "\n";
        emit_dot(target);
        return ok;
    }

    int glue_cmd() { return result(glue(graph_at(0, "glue"), graph_at(1, "glue"))); }
    int merge_cmd() { return result(merge_complete(graph_at(0, "merge"), graph_at(1, "merge"))); }
    int extend_cmd() { return result(extend_to_complete(graph_at(0, "extend"))); }

    int canon() {
        auto d = read_document(input(0));
        CanonicalForm f;
        if (auto g = std::get_if<LabeledGraph>(&d)) f = canonical_form(*g);
        else f = canonical_form(detail::as_vine(d, "canon"));
        write({{"format", detail::format_of(d)}, {"canonical_form", f.hex()}});
        return ok;
    }

private:
    const std::string& input(std::size_t i) const {
        if (o_.inputs.size() <= i) throw input_error("missing input file");
        return o_.inputs[i];
    }

    LabeledGraph graph_at(std::size_t i, const std::string& verb) {
        return detail::as_graph(read_document(input(i)), verb);
    }

    void write(const Json& j) {
        if (o_.output.empty()) out_ << j.dump(2) << "\n";
        else write_text(o_.output, j.dump(2) + "\n");
    }

    template <typename T>
    void emit_dot(const T& x) {
        if (!o_.dot.empty()) write_text(o_.dot, to_dot(x));
    }

    template <typename T>
    int result(const T& x) {
        write(to_json(x));
        emit_dot(x);
        return ok;
    }

    int verdict(Json head, const Verdict& v) {
        head["verdict"] = to_json(v);
        out_ << head.dump(2) << "\n";
        return v.ok() ? ok : negative;
    }

    bool report_roundtrip(const RoundTrip& r) {
        if (r.verdict.ok()) return true;
        err_ << "round trip failed: " << r.verdict.violation()->message << "\n";
        out_ << Json{{"roundtrip", to_json(r.verdict)}}.dump(2) << "\n";
        return false;
    }

    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
};

inline void err_line(std::ostream& err, const std::string& verb, const std::string& what) {
    err << "matvine " << verb << ": " << what << "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Options o;
    CLI::App app{"MAT-labeled graphs and vines"};
    app.require_subcommand(1, 1);
    auto add = [&](const char* name, const char* help, int inputs) {
        auto* c = app.add_subcommand(name, help);
        if (inputs > 0) c->add_option("inputs", o.inputs, "input files")->expected(inputs);
        if (inputs < 0) c->add_option("input", o.inputs, "input file")->expected(0, 1);
        c->add_option("-o,--output", o.output, "output file (default: standard output)");
        c->add_option("--dot", o.dot, "also write a DOT drawing");
        return c;
    };
    auto* check = add("check", "validate a graph labeling or classify a vine", 1);
    check->add_option("--require", o.require, "class needed for success: vine|lr_vine|r_vine");
    auto* convert = add("convert", "apply Ψ or Ω, or switch between vine formats", 1);
    convert->add_flag("--psi", o.psi, "graph to vine");
    convert->add_flag("--omega", o.omega, "vine to graph");
    convert->add_flag("--forests", o.forests, "vine/v1 <-> vine-forests/v1");
    convert->add_flag("--roundtrip", o.roundtrip, "also verify the round trip");
    auto* enumerate = app.add_subcommand("enumerate", "MAT-labelings of K_l up to isomorphism");
    enumerate->add_option("l", o.l, "number of vertices")->required();
    enumerate->add_option("--jobs", o.jobs, "worker threads");
    enumerate->add_flag("--unbounded", o.unbounded, "lift the default size bound");
    enumerate->add_option("--emit-representatives", o.emit_dir, "write one graph file per class");
    enumerate->add_option("-o,--output", o.output, "output file");
    auto* ideals = add("count-ideals", "count order ideals", -1);
    ideals->add_option("--mode", o.mode, "all|full_support (default: both)");
    ideals->add_option("--kind", o.kind, "d_vine|c_vine|root_poset_a");
    ideals->add_option("--dim", o.dim, "dimension for --kind");
    auto* trunc = add("truncate", "lower or upper truncation", 1);
    trunc->add_option("--k", o.k, "rank bound")->required();
    trunc->add_option("--direction", o.direction, "lower|upper");
    auto* marg = add("marginalize", "remove a minimal node", 1);
    marg->add_option("--node", o.node, "minimal node")->required();
    auto* sampling = add("sampling-order", "find or check a sampling order", 1);
    sampling->add_option("--order", o.order, "comma-separated order to check")->delimiter(',');
    add("embed", "embed an LR-vine as an ideal of an R-vine", 1);
    add("glue", "union of two graphs along a complete overlap", 2);
    add("merge", "merge two complete graphs", 2);
    add("extend", "extend a graph to a complete MAT-labeled graph", 1);
    add("canon", "canonical form", 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }
    Runner r(o, out, err);
    auto* sub = app.get_subcommands().front();
    std::string verb = sub->get_name();
    try {
        if (verb == "check") return r.check();
        if (verb == "convert") return r.convert();
        if (verb == "enumerate") return r.enumerate();
        if (verb == "count-ideals") return r.count_ideals();
        if (verb == "truncate") return r.truncate_cmd();
        if (verb == "marginalize") return r.marginalize_cmd();
        if (verb == "sampling-order") return r.sampling_order();
        if (verb == "embed") return r.embed();
        if (verb == "glue") return r.glue_cmd();
        if (verb == "merge") return r.merge_cmd();
        if (verb == "extend") return r.extend_cmd();
        return r.canon();
    } catch (const input_error& e) {
        err_line(err, verb, e.what());
        return bad_input;
    } catch (const precondition_error& e) {
        err_line(err, verb, e.what());
        out << Json{{"verdict", {{"ok", false}, {"tag", e.condition}, {"message", e.what()}}}}.dump(2) << "\n";
        return negative;
    } catch (const resource_error& e) {
        err_line(err, verb, e.what());
        return resource;
    } catch (const defect_error& e) {
        err_line(err, verb, std::string("internal check failed: ") + e.what());
        return negative;
    }
}

}  // namespace matvine::cli
