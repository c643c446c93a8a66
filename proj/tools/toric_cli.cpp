#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toric/classes.hpp"
#include "toric/fan.hpp"
#include "toric/io.hpp"
#include "toric/morphism.hpp"
#include "toric/recognize.hpp"

namespace {

using toric::Json;

constexpr int kOk = 0;     // computed, all asserted properties hold
constexpr int kAlarm = 1;  // computed, a theorem-backed property failed
constexpr int kBad = 2;    // invalid input or hypothesis violation

struct Outcome {
    Json report;
    int exit_code = kOk;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json report_skeleton(const std::string& command, const std::string& digest_text) {
    Json report;
    report["command"] = command;
    report["digest"] = toric::fnv1a_digest(digest_text);
    report["diagnostics"] = Json::array();
    report["results"] = Json::object();
    return report;
}

Json validation_value(const toric::ValidationReport& v) {
    Json issues = Json::array();
    for (const auto& issue : v.issues) issues.push_back({{"code", issue.code}, {"detail", issue.detail}});
    return issues;
}

/// Collects validation issues into the report; returns false (and sets exit 2)
/// on the first invalid fan.
bool require_valid_fan(const toric::Fan& f, const std::string& label, Outcome& out) {
    auto v = toric::validate_fan(f);
    if (v.valid()) return true;
    out.report["results"]["valid"] = false;
    out.report["results"]["issues"] = validation_value(v);
    for (const auto& issue : v.issues)
        out.report["diagnostics"].push_back(label + " invalid: " + issue.code + ": " + issue.detail);
    out.exit_code = kBad;
    return false;
}

Json certificate_value(const toric::ConvexSupportCertificate& cert) {
    Json a = Json::array();
    for (const auto& q : cert.a) a.push_back(toric::rat_value(q));
    Json m = Json::array();
    for (const auto& row : cert.m) {
        Json rj = Json::array();
        for (const auto& q : row) rj.push_back(toric::rat_value(q));
        m.push_back(std::move(rj));
    }
    return {{"a", std::move(a)}, {"m", std::move(m)}};
}

Json index_list_value(const std::vector<std::size_t>& xs) {
    Json arr = Json::array();
    for (std::size_t x : xs) arr.push_back(x);
    return arr;
}

Json vector_list_value(const std::vector<toric::IntVec>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(toric::int_vector_value(v));
    return arr;
}

Outcome run_analyze(const std::string& text, std::uint64_t seed) {
    Outcome out{report_skeleton("analyze", text), kOk};
    Json& results = out.report["results"];
    try {
        toric::Fan f = toric::parse_fan_document(toric::parse_document_text(text));
        if (!require_valid_fan(f, "fan", out)) return out;
        results["valid"] = true;
        results["issues"] = Json::array();
        results["dim"] = f.dim();
        results["ray_count"] = f.ray_count();
        results["max_cone_count"] = f.max_cones().size();
        const bool simplicial = toric::is_simplicial(f);
        const bool smooth = toric::is_smooth(f);
        const bool complete = toric::is_complete(f, seed);
        results["simplicial"] = simplicial;
        results["smooth"] = smooth;
        results["complete"] = complete;
        if (simplicial && complete) {
            auto cert = toric::is_projective(f);
            if (cert) {
                results["projective"] = true;
                results["certificate"] = certificate_value(*cert);
                if (!toric::verify_support_certificate(f, *cert)) {
                    out.report["diagnostics"].push_back(
                        "projectivity certificate failed independent re-verification");
                    out.exit_code = kAlarm;
                }
            } else {
                results["projective"] = false;
            }
        } else {
            results["projective"] = nullptr;
        }
        try {
            auto cg = toric::divisor_class_group(f);
            results["class_group"] = {{"free_rank", cg.free_rank},
                                      {"torsion", toric::int_vector_value(cg.torsion)}};
            results["picard_rank"] = complete ? Json(cg.free_rank) : Json(nullptr);
        } catch (const std::domain_error& e) {
            results["class_group"] = nullptr;
            results["picard_rank"] = nullptr;
            out.report["diagnostics"].push_back(e.what());
        }
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

Outcome run_sequences(const std::string& text) {
    Outcome out{report_skeleton("sequences", text), kOk};
    Json& results = out.report["results"];
    try {
        toric::Fan f = toric::parse_fan_document(toric::parse_document_text(text));
        auto rep = toric::verify_sequences(f);
        results["n"] = rep.n;
        results["ray_count"] = rep.ray_count;
        results["class_free_rank"] = rep.class_free_rank;
        results["class_torsion"] = toric::int_vector_value(rep.class_torsion);
        results["curve_space_rank"] = rep.curve_space_rank;
        results["divisor_sequence"] = rep.exact_divisor_seq;
        results["dual_sequence"] = rep.exact_dual_seq;
        results["exact"] = rep.exact();
        results["curve_basis"] = vector_list_value(toric::curve_class_space(f));
        if (!rep.exact()) {
            out.report["diagnostics"].push_back("sequence exactness failed: " +
                                                rep.exact_divisor_seq + " / " + rep.exact_dual_seq);
            out.exit_code = kAlarm;
        }
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

Outcome run_morphism(const std::string& text) {
    Outcome out{report_skeleton("morphism", text), kOk};
    Json& results = out.report["results"];
    try {
        toric::ToricMorphism m =
            toric::parse_morphism_document(toric::parse_document_text(text));
        if (!require_valid_fan(m.source, "source fan", out)) return out;
        if (!require_valid_fan(m.target, "target fan", out)) return out;

        auto comp = toric::check_compatibility(m);
        Json comp_j = {{"compatible", comp.compatible}};
        if (comp.offending_cone) comp_j["offending_cone"] = *comp.offending_cone;
        results["compatibility"] = std::move(comp_j);
        if (!comp.compatible) {
            out.report["diagnostics"].push_back(
                "morphism not compatible: no further analysis possible");
            out.exit_code = kBad;
            return out;
        }

        try {
            auto fin = toric::is_generically_finite(m);
            results["generic_finiteness"] = {{"finite", fin.finite},
                                             {"index", toric::int_value(fin.index)}};
        } catch (const std::domain_error& e) {
            results["generic_finiteness"] = {{"error", e.what()}};
        }
        try {
            results["J"] = {{"rays", index_list_value(toric::J_of(m))}};
        } catch (const std::domain_error& e) {
            results["J"] = {{"error", e.what()}};
        }
        try {
            const bool holds = toric::lemma1_check(m);
            results["lemma1"] = {{"holds", holds}};
            if (!holds) {
                out.report["diagnostics"].push_back(
                    "divisorial rays fail to span: counterexample alarm");
                out.exit_code = kAlarm;
            }
        } catch (const std::domain_error& e) {
            results["lemma1"] = {{"error", e.what()}};
        }
        try {
            auto st = toric::stein_factor(m);
            results["stein"] = {{"middle_fan", toric::fan_document(st.finite_part.source)},
                                {"connected_part", toric::morphism_document(st.connected_part)},
                                {"finite_part", toric::morphism_document(st.finite_part)}};
        } catch (const std::domain_error& e) {
            results["stein"] = {{"error", e.what()}};
        }
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

Outcome run_recognize(const std::string& text) {
    Outcome out{report_skeleton("recognize", text), kOk};
    Json& results = out.report["results"];
    try {
        toric::Fan f = toric::parse_fan_document(toric::parse_document_text(text));
        if (!require_valid_fan(f, "fan", out)) return out;
        auto wit = toric::is_projective_space(f);
        Json pn = {{"recognized", wit.has_value()}};
        if (wit) pn["basis_change"] = toric::int_matrix_value(wit->basis_change);
        results["projective_space"] = std::move(pn);
        auto split = toric::is_product(f);
        Json pr = {{"recognized", split.has_value()}};
        if (split) {
            pr["rays1"] = index_list_value(split->rays1);
            pr["rays2"] = index_list_value(split->rays2);
            pr["basis1"] = vector_list_value(split->basis1);
            pr["basis2"] = vector_list_value(split->basis2);
            pr["factor1"] = toric::fan_document(split->factor1);
            pr["factor2"] = toric::fan_document(split->factor2);
        }
        results["product"] = std::move(pr);
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

Outcome run_resolve(const std::string& text) {
    Outcome out{report_skeleton("resolve", text), kOk};
    Json& results = out.report["results"];
    try {
        toric::Fan f = toric::parse_fan_document(toric::parse_document_text(text));
        if (!require_valid_fan(f, "fan", out)) return out;
        auto trace = toric::resolve_with_trace(f);
        results["fan"] = toric::fan_document(trace.fan);
        results["input_ray_count"] = f.ray_count();
        results["output_ray_count"] = trace.fan.ray_count();
        results["steps"] = trace.multiplicity_history.empty()
                               ? 0
                               : trace.multiplicity_history.size() - 1;
        results["multiplicity_history"] = vector_list_value(trace.multiplicity_history);
        const bool smooth = toric::is_smooth(trace.fan);
        results["smooth"] = smooth;
        if (!smooth) {
            out.report["diagnostics"].push_back("resolution output is not smooth: alarm");
            out.exit_code = kAlarm;
        }
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

Outcome run_theorem1(const std::string& text) {
    Outcome out{report_skeleton("theorem1", text), kOk};
    Json& results = out.report["results"];
    try {
        toric::ToricMorphism m =
            toric::parse_morphism_document(toric::parse_document_text(text));
        if (!require_valid_fan(m.source, "source fan", out)) return out;
        if (!require_valid_fan(m.target, "target fan", out)) return out;
        auto res = toric::theorem1_toric_verify(m);
        results["verdict"] = res.verdict;
        results["failures"] = res.failures;
        if (res.witness) results["witness"] = {
            {"basis_change", toric::int_matrix_value(res.witness->basis_change)}};
        if (res.verdict == "confirmed") {
            out.exit_code = kOk;
        } else if (res.verdict == "refuted") {
            out.report["diagnostics"].push_back(
                "hypotheses hold but the target is not a projective space: counterexample alarm");
            out.exit_code = kAlarm;
        } else {
            for (const auto& fl : res.failures) out.report["diagnostics"].push_back(fl);
            out.exit_code = kBad;
        }
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

Outcome run_theorem2(const std::string& x_text, const std::string& f_text,
                     const std::string& g_text) {
    Outcome out{report_skeleton("theorem2", x_text + f_text + g_text), kOk};
    Json& results = out.report["results"];
    try {
        toric::Fan x = toric::parse_fan_document(toric::parse_document_text(x_text), "x");
        toric::ToricMorphism f =
            toric::parse_morphism_document(toric::parse_document_text(f_text), "f");
        toric::ToricMorphism g =
            toric::parse_morphism_document(toric::parse_document_text(g_text), "g");
        if (!require_valid_fan(x, "fan x", out)) return out;
        if (!require_valid_fan(f.source, "f source fan", out)) return out;
        if (!require_valid_fan(f.target, "f target fan", out)) return out;
        if (!require_valid_fan(g.source, "g source fan", out)) return out;
        if (!require_valid_fan(g.target, "g target fan", out)) return out;
        auto res = toric::theorem2_toric_verify(x, f, g);
        results["verdict"] = res.verdict;
        results["failures"] = res.failures;
        if (res.verdict == "fiber-product confirmed") {
            out.exit_code = kOk;
        } else if (res.verdict == "no toric witness found") {
            out.report["diagnostics"].push_back(
                "hypotheses hold but no fiber-product witness was found: counterexample alarm");
            out.exit_code = kAlarm;
        } else {
            for (const auto& fl : res.failures) out.report["diagnostics"].push_back(fl);
            out.exit_code = kBad;
        }
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

toric::IntVec parse_csv_vector(const std::string& csv) {
    toric::IntVec v;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("-0123456789") != std::string::npos ||
            (item.size() > 1 && item.find('-', 1) != std::string::npos) || item == "-")
            throw std::invalid_argument("malformed integer vector component: \"" + item + "\"");
        v.push_back(toric::Int(item));
    }
    if (v.empty()) throw std::invalid_argument("empty integer vector");
    return v;
}

Outcome run_construct(const std::string& kind, const std::vector<std::string>& params,
                      const std::vector<std::string>& input_texts) {
    std::string digest_text = kind;
    for (const auto& p : params) digest_text += " " + p;
    for (const auto& t : input_texts) digest_text += t;
    Outcome out{report_skeleton("construct", digest_text), kOk};
    Json& results = out.report["results"];
    results["kind"] = kind;
    results["parameters"] = params;
    try {
        auto fan_input = [&](std::size_t i, const std::string& label) {
            toric::Fan f = toric::parse_fan_document(
                toric::parse_document_text(input_texts.at(i)), label);
            auto v = toric::validate_fan(f);
            if (!v.valid())
                throw std::invalid_argument(label + " invalid: " + v.issues.front().code + ": " +
                                            v.issues.front().detail);
            return f;
        };
        auto morphism_input = [&](std::size_t i, const std::string& label) {
            return toric::parse_morphism_document(
                toric::parse_document_text(input_texts.at(i)), label);
        };
        toric::Fan built;
        if (kind == "projective-space") {
            if (params.size() != 1) throw std::invalid_argument("projective-space needs one parameter n");
            toric::IntVec n = parse_csv_vector(params[0]);
            if (n.size() != 1 || n[0] < 1 || n[0] > 16)
                throw std::invalid_argument("projective-space dimension must be in [1, 16]");
            built = toric::projective_space_fan(n[0].convert_to<std::size_t>());
        } else if (kind == "hirzebruch") {
            if (params.size() != 1) throw std::invalid_argument("hirzebruch needs one parameter a");
            toric::IntVec a = parse_csv_vector(params[0]);
            if (a.size() != 1) throw std::invalid_argument("hirzebruch parameter must be a single integer");
            built = toric::hirzebruch_fan(a[0]);
        } else if (kind == "product") {
            if (input_texts.size() != 2) throw std::invalid_argument("product needs two fan documents");
            built = toric::product_fan(fan_input(0, "first factor"), fan_input(1, "second factor"));
        } else if (kind == "star-subdivision") {
            if (input_texts.size() != 1 || params.size() != 1)
                throw std::invalid_argument("star-subdivision needs one fan document and one ray vector");
            toric::Fan base = fan_input(0, "fan");
            toric::IntVec v = parse_csv_vector(params[0]);
            if (v.size() != base.dim())
                throw std::invalid_argument("subdivision ray has wrong length for the fan rank");
            built = toric::star_subdivision(base, v);
        } else if (kind == "bundle") {
            if (input_texts.size() != 1 || params.empty())
                throw std::invalid_argument("bundle needs one base fan document and twist vectors");
            toric::Fan base = fan_input(0, "base fan");
            std::vector<toric::IntVec> twists;
            for (const auto& p : params) {
                toric::IntVec t = parse_csv_vector(p);
                if (t.size() != base.ray_count())
                    throw std::invalid_argument("twist vector needs one entry per base ray");
                twists.push_back(std::move(t));
            }
            built = toric::projectivized_split_bundle_fan(base, twists);
        } else if (kind == "fiber-product") {
            if (input_texts.size() != 2)
                throw std::invalid_argument("fiber-product needs two morphism documents");
            built = toric::fiber_product_fan(morphism_input(0, "f"), morphism_input(1, "g"));
        } else {
            throw std::invalid_argument("unknown constructor \"" + kind + "\"");
        }
        results["fan"] = toric::fan_document(built);
    } catch (const std::exception& e) {
        out.report["diagnostics"].push_back(e.what());
        out.exit_code = kBad;
    }
    return out;
}

void emit(const Json& doc) { std::cout << toric::serialize_document(doc); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic calculator for complete toric varieties given as fans"};
    app.require_subcommand(1);
    std::uint64_t seed = toric::kCompletenessSampleSeed;
    bool batch = false;
    app.add_option("--seed", seed, "seed for the sampled completeness cross-check");
    app.add_flag("--batch", batch, "process several input files in parallel, report array out");

    std::vector<std::string> inputs;
    auto add_inputs = [&](CLI::App* cmd, int expected) {
        cmd->add_option("inputs", inputs, "input document paths ('-' reads standard input)")
            ->expected(expected == 0 ? -1 : expected);
    };
    CLI::App* c_analyze = app.add_subcommand("analyze", "fan predicates, class group, certificate");
    add_inputs(c_analyze, 0);
    CLI::App* c_sequences = app.add_subcommand("sequences", "divisor and curve exact sequences");
    add_inputs(c_sequences, 0);
    CLI::App* c_morphism = app.add_subcommand(
        "morphism", "compatibility, finiteness, divisorial rays, factorization");
    add_inputs(c_morphism, 0);
    CLI::App* c_recognize = app.add_subcommand("recognize", "projective-space and product detection");
    add_inputs(c_recognize, 0);
    CLI::App* c_resolve = app.add_subcommand("resolve", "smooth refinement with multiplicity trace");
    add_inputs(c_resolve, 0);
    CLI::App* c_theorem1 = app.add_subcommand("theorem1", "verify the projective-space criterion");
    add_inputs(c_theorem1, 0);
    CLI::App* c_theorem2 = app.add_subcommand("theorem2", "verify the fiber-product criterion");
    add_inputs(c_theorem2, 3);

    CLI::App* c_construct = app.add_subcommand("construct", "build fans from parameters");
    std::string kind;
    std::vector<std::string> raw_args;
    c_construct->add_option("kind", kind,
                            "projective-space | hirzebruch | product | star-subdivision | "
                            "bundle | fiber-product")
        ->required();
    c_construct->add_option("args", raw_args, "parameters, then input document paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json report = report_skeleton("error", "");
        report["diagnostics"].push_back(std::string("command line: ") + e.what());
        emit(report);
        return kBad;
    }

    try {
        if (c_construct->parsed()) {
            // positional split is fixed per kind: document paths first where a
            // kind consumes documents, scalar parameters otherwise
            std::vector<std::string> params, texts;
            if (kind == "product" || kind == "fiber-product") {
                for (const auto& a : raw_args) texts.push_back(read_input(a));
            } else if (kind == "star-subdivision" || kind == "bundle") {
                for (std::size_t i = 0; i < raw_args.size(); ++i) {
                    if (i == 0)
                        texts.push_back(read_input(raw_args[i]));
                    else
                        params.push_back(raw_args[i]);
                }
            } else {
                params = raw_args;
            }
            Outcome out = run_construct(kind, params, texts);
            emit(out.report);
            return out.exit_code;
        }
        if (c_theorem2->parsed()) {
            Outcome out = run_theorem2(read_input(inputs.at(0)), read_input(inputs.at(1)),
                                       read_input(inputs.at(2)));
            emit(out.report);
            return out.exit_code;
        }

        std::string command;
        std::function<Outcome(const std::string&)> runner;
        if (c_analyze->parsed()) {
            command = "analyze";
            runner = [&](const std::string& t) { return run_analyze(t, seed); };
        } else if (c_sequences->parsed()) {
            command = "sequences";
            runner = run_sequences;
        } else if (c_morphism->parsed()) {
            command = "morphism";
            runner = run_morphism;
        } else if (c_recognize->parsed()) {
            command = "recognize";
            runner = run_recognize;
        } else if (c_resolve->parsed()) {
            command = "resolve";
            runner = run_resolve;
        } else if (c_theorem1->parsed()) {
            command = "theorem1";
            runner = run_theorem1;
        }
        if (inputs.empty()) inputs.push_back("-");

        if (!batch) {
            if (inputs.size() != 1) {
                Json report = report_skeleton(command, "");
                report["diagnostics"].push_back(
                    "multiple inputs require --batch; single-run mode takes one document");
                emit(report);
                return kBad;
            }
            Outcome out = runner(read_input(inputs.front()));
            emit(out.report);
            return out.exit_code;
        }

        // batch mode: read all inputs up front, compute in parallel
        std::vector<std::string> texts;
        for (const auto& p : inputs) {
            if (p == "-" && inputs.size() > 1)
                throw std::invalid_argument("standard input is not usable with several batch inputs");
            texts.push_back(read_input(p));
        }
        std::vector<std::future<Outcome>> jobs;
        for (const auto& t : texts)
            jobs.push_back(std::async(std::launch::async, [&runner, t] { return runner(t); }));
        Json reports = Json::array();
        int code = kOk;
        for (auto& j : jobs) {
            Outcome out = j.get();
            reports.push_back(std::move(out.report));
            code = std::max(code, out.exit_code);
        }
        emit(reports);
        return code;
    } catch (const std::exception& e) {
        Json report = report_skeleton("error", "");
        report["diagnostics"].push_back(e.what());
        emit(report);
        return kBad;
    }
}
