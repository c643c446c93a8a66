#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/io.hpp"
#include "toric/morphism.hpp"

using namespace toric;

namespace {

struct RunResult {
    int code = -1;
    Json report;
    std::string raw;
};

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

RunResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::string cmd = shell_quote(TORIC_CLI_PATH);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    std::string stdin_file;
    if (!stdin_text.empty()) {
        stdin_file = "cli_stdin_tmp.json";
        std::ofstream(stdin_file) << stdin_text;
        cmd += " < " + shell_quote(stdin_file);
    }
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.raw = out;
    if (!out.empty()) r.report = Json::parse(out);
    return r;
}

std::string write_doc(const std::string& name, const Json& doc) {
    std::ofstream(name) << serialize_document(doc);
    return name;
}

IntVec vec(std::vector<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(x);
    return v;
}

IntMatrix mat(std::vector<std::vector<long>> rows) {
    std::vector<IntVec> r;
    for (auto& row : rows) r.push_back(vec(row));
    return IntMatrix::from_rows(r);
}

Fan weighted_p112() {
    return Fan(2, {vec({1, 0}), vec({0, 1}), vec({-1, -2})}, {{0, 1}, {1, 2}, {2, 0}});
}

}  // namespace

TEST_CASE("round trip is lossless on the corpus") {
    std::vector<Fan> corpus = {projective_space_fan(1),
                               projective_space_fan(2),
                               projective_space_fan(3),
                               projective_space_fan(4),
                               hirzebruch_fan(0),
                               hirzebruch_fan(1),
                               hirzebruch_fan(7),
                               product_fan(projective_space_fan(1), projective_space_fan(2)),
                               star_subdivision(projective_space_fan(2), vec({1, 1})),
                               weighted_p112(),
                               projectivized_split_bundle_fan(projective_space_fan(2),
                                                              {vec({0, 1, 2})})};
    for (const Fan& f : corpus) {
        Json doc = fan_document(f);
        std::string text = serialize_document(doc);
        Fan back = parse_fan_document(parse_document_text(text));
        CHECK(back == f);
        // serialization itself is deterministic
        CHECK(serialize_document(fan_document(back)) == text);
    }
    ToricMorphism m{star_subdivision(projective_space_fan(2), vec({1, 1})),
                    projective_space_fan(2), IntMatrix::identity(2)};
    ToricMorphism back = parse_morphism_document(
        parse_document_text(serialize_document(morphism_document(m))));
    CHECK(back.source == m.source);
    CHECK(back.target == m.target);
    CHECK(back.map == m.map);
}

TEST_CASE("big integers survive the document format") {
    Int huge("123456789012345678901234567890");
    Fan f(2, {IntVec{huge, huge + 1}}, {{0}});  // consecutive entries: primitive
    Json doc = fan_document(f);
    CHECK(parse_fan_document(doc) == f);
    Json j = int_value(huge);
    CHECK(j.is_string());
    CHECK(parse_int_value(j, "x") == huge);
    CHECK(parse_int_value(int_value(Int(-42)), "x") == Int(-42));
}

TEST_CASE("digest is stable and input-sensitive") {
    std::string a = serialize_document(fan_document(projective_space_fan(2)));
    std::string b = serialize_document(fan_document(projective_space_fan(3)));
    CHECK(fnv1a_digest(a) == fnv1a_digest(a));
    CHECK(fnv1a_digest(a) != fnv1a_digest(b));
    CHECK(fnv1a_digest(a).size() == 16);
}

TEST_CASE("analyze command exit contract") {
    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    auto ok = run_cli({"analyze", p2});
    CHECK(ok.code == 0);
    CHECK(ok.report["command"] == "analyze");
    CHECK(ok.report["results"]["smooth"] == true);
    CHECK(ok.report["results"]["complete"] == true);
    CHECK(ok.report["results"]["picard_rank"] == 1);
    CHECK(ok.report["results"]["projective"] == true);
    CHECK(ok.report["diagnostics"].empty());

    std::string p112 = write_doc("cli_p112.json", fan_document(weighted_p112()));
    auto sing = run_cli({"analyze", p112});
    CHECK(sing.code == 0);
    CHECK(sing.report["results"]["smooth"] == false);
    CHECK(sing.report["results"]["simplicial"] == true);
    CHECK(sing.report["results"]["picard_rank"] == 1);

    auto bad = run_cli({"analyze", "-"}, "{\"rank\": 2, \"rays\": [[1,0],[0]]");
    CHECK(bad.code == 2);
    REQUIRE(!bad.report["diagnostics"].empty());

    // structurally well-formed but not a valid fan: duplicate ray
    Json dup = fan_document(Fan(2, {vec({1, 0}), vec({1, 0})}, {{0}, {1}}));
    auto invalid = run_cli({"analyze", "-"}, serialize_document(dup));
    CHECK(invalid.code == 2);
    CHECK(invalid.report["results"]["valid"] == false);
}

TEST_CASE("sequences command exit contract") {
    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    auto ok = run_cli({"sequences", p2});
    CHECK(ok.code == 0);
    CHECK(ok.report["results"]["exact"] == true);
    CHECK(ok.report["results"]["divisor_sequence"] == "exact");
    CHECK(ok.report["results"]["curve_basis"] == Json::parse("[[1,1,1]]"));

    // rays that span only a half-line: exactness fails, alarm exit
    Json half = fan_document(Fan(2, {vec({1, 0})}, {{0}}));
    auto alarm = run_cli({"sequences", "-"}, serialize_document(half));
    CHECK(alarm.code == 1);
    CHECK(alarm.report["results"]["exact"] == false);

    auto bad = run_cli({"sequences", "-"}, "[]");
    CHECK(bad.code == 2);
}

TEST_CASE("morphism command exit contract") {
    Fan bl = star_subdivision(projective_space_fan(2), vec({1, 1}));
    ToricMorphism blowdown{bl, projective_space_fan(2), IntMatrix::identity(2)};
    std::string m1 = write_doc("cli_blowdown.json", morphism_document(blowdown));
    auto ok = run_cli({"morphism", m1});
    CHECK(ok.code == 0);
    CHECK(ok.report["results"]["compatibility"]["compatible"] == true);
    CHECK(ok.report["results"]["generic_finiteness"]["finite"] == true);
    CHECK(ok.report["results"]["J"]["rays"] == Json::parse("[0,1,2]"));
    CHECK(ok.report["results"]["lemma1"]["holds"] == true);
    CHECK(ok.report["results"]["stein"]["middle_fan"]["rays"] ==
          fan_document(projective_space_fan(2))["rays"]);

    // fibration: computable panel, inapplicable parts carry error strings
    Fan p1p1 = product_fan(projective_space_fan(1), projective_space_fan(1));
    ToricMorphism fib{p1p1, projective_space_fan(1), mat({{1, 0}})};
    auto fibr = run_cli({"morphism", "-"}, serialize_document(morphism_document(fib)));
    CHECK(fibr.code == 0);
    CHECK(fibr.report["results"]["generic_finiteness"]["finite"] == false);
    CHECK(fibr.report["results"]["lemma1"]["error"] ==
          "lemma 1 hypotheses unmet: morphism not generically finite");
    CHECK(fibr.report["results"]["J"]["rays"] == Json::parse("[0,1]"));

    // incompatible morphism: hypothesis violation
    ToricMorphism bad{p1p1, projective_space_fan(2), IntMatrix::identity(2)};
    auto incomp = run_cli({"morphism", "-"}, serialize_document(morphism_document(bad)));
    CHECK(incomp.code == 2);
    CHECK(incomp.report["results"]["compatibility"]["compatible"] == false);
    CHECK(incomp.report["results"]["compatibility"]["offending_cone"] == 3);

    auto malformed = run_cli({"morphism", "-"}, "{\"source\": 3}");
    CHECK(malformed.code == 2);
}

TEST_CASE("construct command exit contract") {
    auto p3 = run_cli({"construct", "projective-space", "3"});
    CHECK(p3.code == 0);
    CHECK(parse_fan_document(p3.report["results"]["fan"]) == projective_space_fan(3));

    auto hirz = run_cli({"construct", "hirzebruch", "2"});
    CHECK(hirz.code == 0);
    CHECK(parse_fan_document(hirz.report["results"]["fan"]) == hirzebruch_fan(2));

    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    std::string p1 = write_doc("cli_p1.json", fan_document(projective_space_fan(1)));
    auto prod = run_cli({"construct", "product", p1, p2});
    CHECK(prod.code == 0);
    CHECK(parse_fan_document(prod.report["results"]["fan"]) ==
          product_fan(projective_space_fan(1), projective_space_fan(2)));

    auto sub = run_cli({"construct", "star-subdivision", p2, "1,1"});
    CHECK(sub.code == 0);
    CHECK(parse_fan_document(sub.report["results"]["fan"]) ==
          star_subdivision(projective_space_fan(2), vec({1, 1})));

    auto bun = run_cli({"construct", "bundle", p1, "0,1"});
    CHECK(bun.code == 0);
    CHECK(parse_fan_document(bun.report["results"]["fan"]) ==
          projectivized_split_bundle_fan(projective_space_fan(1), {vec({0, 1})}));

    auto unknown = run_cli({"construct", "weighted", "1,1,2"});
    CHECK(unknown.code == 2);
    auto badvec = run_cli({"construct", "star-subdivision", p2, "1,x"});
    CHECK(badvec.code == 2);
    auto badlen = run_cli({"construct", "star-subdivision", p2, "1,1,1"});
    CHECK(badlen.code == 2);
}

TEST_CASE("fiber product construction through the command line") {
    Fan p1 = projective_space_fan(1);
    ToricMorphism f{hirzebruch_fan(1), p1, mat({{1, 0}})};
    ToricMorphism g{hirzebruch_fan(0), p1, mat({{1, 0}})};
    std::string fd = write_doc("cli_mf1.json", morphism_document(f));
    std::string gd = write_doc("cli_mf0.json", morphism_document(g));
    auto fp = run_cli({"construct", "fiber-product", fd, gd});
    CHECK(fp.code == 0);
    Fan x = parse_fan_document(fp.report["results"]["fan"]);
    CHECK(x == product_fan(hirzebruch_fan(1), p1));

    // hypothesis violation: target not a projective line
    Fan bl = star_subdivision(projective_space_fan(2), vec({1, 1}));
    ToricMorphism h{bl, projective_space_fan(2), IntMatrix::identity(2)};
    std::string hd = write_doc("cli_blowdown2.json", morphism_document(h));
    auto bad = run_cli({"construct", "fiber-product", hd, hd});
    CHECK(bad.code == 2);
    CHECK(bad.report["diagnostics"][0] == "fiber product requires a projective-line target");
}

TEST_CASE("recognize command exit contract") {
    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    auto ok = run_cli({"recognize", p2});
    CHECK(ok.code == 0);
    CHECK(ok.report["results"]["projective_space"]["recognized"] == true);
    CHECK(ok.report["results"]["product"]["recognized"] == false);

    Json f0 = fan_document(hirzebruch_fan(0));
    auto quad = run_cli({"recognize", "-"}, serialize_document(f0));
    CHECK(quad.code == 0);
    CHECK(quad.report["results"]["projective_space"]["recognized"] == false);
    CHECK(quad.report["results"]["product"]["recognized"] == true);
    CHECK(parse_fan_document(quad.report["results"]["product"]["factor1"]) ==
          projective_space_fan(1));

    Fan big = product_fan(projective_space_fan(1), projective_space_fan(1));
    while (big.ray_count() < 17) {
        Cone c = big.cone(0);
        big = star_subdivision(big, primitive(add(c.generators[0], c.generators[1])));
    }
    auto oversize = run_cli({"recognize", "-"}, serialize_document(fan_document(big)));
    CHECK(oversize.code == 2);
    CHECK(oversize.report["diagnostics"][0] == "search too large: fan has more than 16 rays");

    auto malformed = run_cli({"recognize", "-"}, "{");
    CHECK(malformed.code == 2);
}

TEST_CASE("resolve command exit contract") {
    std::string p112 = write_doc("cli_p112.json", fan_document(weighted_p112()));
    auto ok = run_cli({"resolve", p112});
    CHECK(ok.code == 0);
    Fan resolved = parse_fan_document(ok.report["results"]["fan"]);
    CHECK(is_smooth(resolved));
    CHECK(resolved.ray_count() == 4);
    CHECK(resolved.rays()[3] == vec({0, -1}));
    CHECK(ok.report["results"]["steps"] == 1);

    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    auto smooth_in = run_cli({"resolve", p2});
    CHECK(smooth_in.code == 0);
    CHECK(smooth_in.report["results"]["steps"] == 0);

    auto malformed = run_cli({"resolve", "-"}, "42");
    CHECK(malformed.code == 2);
}

TEST_CASE("theorem1 command exit contract") {
    Fan bl = star_subdivision(projective_space_fan(2), vec({1, 1}));
    ToricMorphism blowdown{bl, projective_space_fan(2), IntMatrix::identity(2)};
    auto ok = run_cli({"theorem1", "-"}, serialize_document(morphism_document(blowdown)));
    CHECK(ok.code == 0);
    CHECK(ok.report["results"]["verdict"] == "confirmed");
    CHECK(ok.report["results"]["witness"]["basis_change"] == Json::parse("[[1,0],[0,1]]"));

    ToricMorphism sing{resolve(weighted_p112()), weighted_p112(), IntMatrix::identity(2)};
    auto viol = run_cli({"theorem1", "-"}, serialize_document(morphism_document(sing)));
    CHECK(viol.code == 2);
    CHECK(viol.report["results"]["verdict"] == "hypothesis violated");
    CHECK(viol.report["results"]["failures"] == Json::parse("[\"target not smooth\"]"));

    auto malformed = run_cli({"theorem1", "-"}, "null");
    CHECK(malformed.code == 2);
}

TEST_CASE("theorem2 command exit contract") {
    Fan p1 = projective_space_fan(1);
    ToricMorphism pf1{hirzebruch_fan(1), p1, mat({{1, 0}})};
    ToricMorphism pf0{hirzebruch_fan(0), p1, mat({{1, 0}})};
    Fan x = fiber_product_fan(pf1, pf0);
    ToricMorphism f{x, hirzebruch_fan(1), mat({{1, 0, 0}, {0, 1, 0}})};
    ToricMorphism g{x, hirzebruch_fan(0), mat({{1, 0, 0}, {0, 0, 1}})};
    std::string xd = write_doc("cli_t2x.json", fan_document(x));
    std::string fd = write_doc("cli_t2f.json", morphism_document(f));
    std::string gd = write_doc("cli_t2g.json", morphism_document(g));
    auto ok = run_cli({"theorem2", xd, fd, gd});
    CHECK(ok.code == 0);
    CHECK(ok.report["results"]["verdict"] == "fiber-product confirmed");

    // dimension gate violation
    Fan p1p1 = product_fan(p1, p1);
    ToricMorphism a{p1p1, p1, mat({{1, 0}})};
    ToricMorphism b{p1p1, p1, mat({{0, 1}})};
    std::string yd = write_doc("cli_t2y.json", fan_document(p1p1));
    std::string ad = write_doc("cli_t2a.json", morphism_document(a));
    std::string bd = write_doc("cli_t2b.json", morphism_document(b));
    auto viol = run_cli({"theorem2", yd, ad, bd});
    CHECK(viol.code == 2);
    CHECK(viol.report["results"]["verdict"] == "hypothesis violated");
    CHECK(viol.report["results"]["failures"] == Json::parse("[\"dimension sum mismatch\"]"));

    auto malformed = run_cli({"theorem2", xd, fd, "-"}, "{}");
    CHECK(malformed.code == 2);
}

TEST_CASE("batch mode emits one report per input") {
    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    std::string f1 = write_doc("cli_f1.json", fan_document(hirzebruch_fan(1)));
    auto batch = run_cli({"--batch", "analyze", p2, f1});
    CHECK(batch.code == 0);
    REQUIRE(batch.report.is_array());
    REQUIRE(batch.report.size() == 2);
    CHECK(batch.report[0]["results"]["picard_rank"] == 1);
    CHECK(batch.report[1]["results"]["picard_rank"] == 2);

    // exit code is the worst of the batch
    std::string half =
        write_doc("cli_half.json", fan_document(Fan(2, {vec({1, 0})}, {{0}})));
    auto mixed = run_cli({"--batch", "sequences", p2, half});
    CHECK(mixed.code == 1);
    CHECK(mixed.report[0]["results"]["exact"] == true);
    CHECK(mixed.report[1]["results"]["exact"] == false);

    // multiple inputs without --batch are refused
    auto refused = run_cli({"analyze", p2, f1});
    CHECK(refused.code == 2);
}

TEST_CASE("reports are deterministic") {
    std::string p2 = write_doc("cli_p2.json", fan_document(projective_space_fan(2)));
    auto a = run_cli({"analyze", p2});
    auto b = run_cli({"analyze", p2});
    CHECK(a.raw == b.raw);
    auto c = run_cli({"--seed", "12345", "analyze", p2});
    CHECK(c.report["results"]["complete"] == true);
}
