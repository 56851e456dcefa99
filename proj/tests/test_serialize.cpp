#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "smrel/classpoly.hpp"
#include "smrel/config.hpp"
#include "smrel/relations.hpp"
#include "smrel/search.hpp"
#include "smrel/serialize.hpp"
#include "smrel/trees.hpp"
#include "smrel/util.hpp"

using namespace smrel;
using namespace smrel::serialize;
using algnum::AlgebraicNumber;

namespace {

std::string temp_dir() {
    static int counter = 0;
    std::filesystem::path d =
        std::filesystem::temp_directory_path() /
        ("smrel_test_" + std::to_string(::getpid()) + "_" +
         std::to_string(counter++));
    std::filesystem::create_directories(d);
    return d.string();
}

}  // namespace

TEST_CASE("algebraic number round-trip: rational") {
    AlgebraicNumber a = AlgebraicNumber::from_rational(mpq_class(-22, 7));
    json j = algnum_json(a);
    AlgebraicNumber b = algnum_from_json(j);
    CHECK(b.is_rational());
    CHECK(b.rational_value() == mpq_class(-22, 7));
    CHECK(a.same_value(b));
}

TEST_CASE("algebraic number round-trip: quadratic conjugates") {
    auto ms = classpoly::singular_moduli(-15);
    REQUIRE(ms.size() == 2);
    for (const auto& m : ms) {
        json j = algnum_json(m);
        AlgebraicNumber back = algnum_from_json(j);
        CHECK(back.min_poly() == m.min_poly());
        CHECK(back.same_value(m));
    }
    // the two conjugates stay distinct through the round trip
    AlgebraicNumber b0 = algnum_from_json(algnum_json(ms[0]));
    CHECK(!b0.same_value(ms[1]));
}

TEST_CASE("algebraic number round-trip: complex cubic conjugates") {
    auto ms = classpoly::singular_moduli(-23);
    REQUIRE(ms.size() == 3);
    for (const auto& m : ms) {
        AlgebraicNumber back = algnum_from_json(algnum_json(m));
        CHECK(back.same_value(m));
    }
}

TEST_CASE("serialization is byte-identical across repeated builds") {
    auto ms = classpoly::singular_moduli(-23);
    std::string s1 = canonical_text(algnum_json(ms[1]));
    std::string s2 = canonical_text(algnum_json(ms[1]));
    CHECK(s1 == s2);
    json q1 = query_class_poly_json(-47);
    json q2 = query_class_poly_json(-47);
    CHECK(canonical_text(q1) == canonical_text(q2));
    CHECK(canonical_text(q1).back() == '\n');
}

TEST_CASE("certificate round-trip and re-verification") {
    std::vector<AlgebraicNumber> members = {AlgebraicNumber::from_integer(-32768),
                                            AlgebraicNumber::from_integer(-884736),
                                            AlgebraicNumber::from_integer(1728)};
    auto cert = relations::find_relation(members, 10);
    REQUIRE(cert.has_value());
    json j = certificate_json(members, *cert, {{"bound", "10"}});
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("kind") == "relation_certificate");

    ParsedCertificate parsed = certificate_from_json(j);
    REQUIRE(parsed.members.size() == 3);
    CHECK(parsed.exponents == cert->exponents);
    CHECK(parsed.mode == cert->mode);
    for (size_t i = 0; i < 3; ++i) CHECK(parsed.members[i].same_value(members[i]));

    CHECK(verify_report(j));
}

TEST_CASE("tampered certificate fails verification") {
    std::vector<AlgebraicNumber> members = {AlgebraicNumber::from_integer(4),
                                            AlgebraicNumber::from_integer(8)};
    auto cert = relations::find_relation(members, 10);
    REQUIRE(cert.has_value());
    json j = certificate_json(members, *cert, {});
    j["payload"]["exponents"][0] = "7";  // breaks 4^3 = 8^2
    CHECK(!verify_report(j));
}

TEST_CASE("separation witness round-trip verification") {
    using trees::GL2QElement;
    std::vector<GL2QElement> gs = {
        trees::canonicalize(std::array<mpz_class, 4>{1, 0, 0, 1}),
        trees::canonicalize(std::array<mpz_class, 4>{1, 0, 0, 2}),
        trees::canonicalize(std::array<mpz_class, 4>{2, 1, 0, 3}),
    };
    trees::SeparationWitness w = trees::separate(gs);
    json j = witness_json(gs, w);
    CHECK(j.at("kind") == "separation_witness");
    CHECK(verify_report(j));
    // flipping the survivor invalidates the witness
    json bad = j;
    long surv = bad["payload"]["survivor"].get<long>();
    bad["payload"]["survivor"] = (surv + 1) % (long)gs.size();
    CHECK(!verify_report(bad));
}

TEST_CASE("search report round-trip verification") {
    search::SearchOptions opt;
    opt.delta_max = 20;
    opt.n_max = 3;
    opt.rational_only = true;
    search::SearchReport rep = search::singular_dependent_search(opt);
    REQUIRE(!rep.findings.empty());
    json j = search_report_json(rep);
    CHECK(j.at("kind") == "search_report");
    CHECK(verify_report(j));
    CHECK(canonical_text(j) ==
          canonical_text(search_report_json(search::singular_dependent_search(opt))));
}

TEST_CASE("modular pair report verification") {
    modpoly::PairSearchOutcome out = modpoly::modular_pair_search(4, 2);
    json j = pair_report_json(out, 4, 2);
    CHECK(j.at("kind") == "modular_pair_report");
    CHECK(verify_report(j));
}

TEST_CASE("complexity report aggregates verify") {
    search::ComplexityReport r;
    r.kind = search::ReportKind::tuple_6_2;
    r.components = {{"|D_1|", mpz_class(4)}, {"|D_2|", mpz_class(11)}};
    r.delta = 11;
    json j = complexity_json(r);
    CHECK(verify_report(j));
    j["payload"]["delta"] = "12";
    CHECK(!verify_report(j));
}

TEST_CASE("query reports recompute and verify") {
    CHECK(verify_report(query_discriminants_json(50)));
    CHECK(verify_report(query_forms_json(-23)));
    CHECK(verify_report(query_class_poly_json(-23)));
    CHECK(verify_report(query_moduli_json(-15, 128)));
    CHECK(verify_report(query_moduli_json(-11, 128)));
    CHECK(verify_report(query_j_eval_json("0.25", "1.5", 96)));
    CHECK(verify_report(query_modpoly_json(2)));
    CHECK(verify_report(query_modpoly_eval_json(2, "1728", "287496")));
    CHECK(verify_report(query_isogeny_json(5, 1024, "1728", "287496")));
    CHECK(verify_report(query_isogeny_json(5, 1024, "0", "1")));
    CHECK(verify_report(query_tree_distance_json(2, "1,0,4", "1,0,1")));
}

TEST_CASE("tampered query payload fails verification") {
    json j = query_class_poly_json(-23);
    j["payload"]["coefficients"][0] = "5";
    CHECK(!verify_report(j));
    json d = query_tree_distance_json(3, "1,0,9", "1,0,1");
    d["payload"]["distance"] = 7;
    CHECK(!verify_report(d));
}

TEST_CASE("value designators parse") {
    AlgebraicNumber a = parse_value_designator("8000");
    CHECK(a.rational_value() == 8000);
    AlgebraicNumber b = parse_value_designator("-3/7");
    CHECK(b.rational_value() == mpq_class(-3, 7));
    AlgebraicNumber c = parse_value_designator("-15:1");
    auto ms = classpoly::singular_moduli(-15);
    CHECK(c.same_value(ms[1]));
    CHECK_THROWS_AS(parse_value_designator("xyz"), Error);
    CHECK_THROWS_AS(parse_value_designator("-15:9"), Error);
    CHECK_THROWS_AS(parse_value_designator(""), Error);
}

TEST_CASE("tree element designators parse") {
    trees::GL2QElement g = parse_tree_element("1,0,2");
    CHECK(g.a == 1);
    CHECK(g.b == 0);
    CHECK(g.d == 2);
    trees::GL2QElement h = parse_tree_element("1,0,0,2");
    CHECK(g == h);
    trees::GL2QElement s = parse_tree_element("0,-1,1,0");
    CHECK(s.is_identity());
    CHECK_THROWS_AS(parse_tree_element("1,2"), Error);
    CHECK_THROWS_AS(parse_tree_element("1,0,0,0"), Error);
    CHECK_THROWS_AS(parse_tree_element("a,b,c"), Error);
}

TEST_CASE("write_report is content-addressed and read_report validates") {
    std::string dir = temp_dir();
    json j = query_discriminants_json(20);
    std::string p1 = write_report(j, dir);
    std::string p2 = write_report(j, dir);
    CHECK(p1 == p2);  // identical content, identical path
    CHECK(p1.find(dir) == 0);
    CHECK(p1.substr(p1.size() - 5) == ".json");
    json back = read_report(p1);
    CHECK(back == j);
    CHECK(verify_report(back));

    // different content gets a different file
    std::string p3 = write_report(query_discriminants_json(24), dir);
    CHECK(p3 != p1);

    // malformed files fail parse
    std::string badpath = dir + "/bad.json";
    std::ofstream(badpath) << "{\"schema_version\": 2, \"kind\": \"x\"}";
    CHECK_THROWS_AS(read_report(badpath), Error);
    std::ofstream(badpath) << "not json";
    CHECK_THROWS_AS(read_report(badpath), Error);
    CHECK_THROWS_AS(read_report(dir + "/missing.json"), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config defaults validate and knobs apply") {
    config::Config c;
    config::validate(c);
    CHECK(c.precision_bits == 128);
    CHECK(c.delta_max == 200);
    CHECK(c.n_max == 5);
    CHECK(c.N_max == 10);
    CHECK(c.M_max == 12);

    config::apply_kv(c, "precision_bits", "256");
    CHECK(c.precision_bits == 256);
    config::apply_kv(c, "level_max", "7");
    CHECK(c.N_max == 7);
    config::apply_kv(c, "order_max", "9");
    CHECK(c.M_max == 9);
    config::apply_kv(c, "surrogate.c7", "3/2");
    CHECK(config::surrogate(c, "c7") == mpq_class(3, 2));
    CHECK(config::surrogate(c, "missing") == 1);

    CHECK_THROWS_AS(config::apply_kv(c, "bogus_key", "1"), Error);
    CHECK_THROWS_AS(config::apply_kv(c, "delta_max", "abc"), Error);

    config::Config bad;
    bad.precision_bits = 32;
    CHECK_THROWS_AS(config::validate(bad), Error);
    config::Config neg;
    neg.delta_max = -1;
    CHECK_THROWS_AS(config::validate(neg), Error);
    config::Config sur;
    sur.surrogate_constants["x"] = mpq_class(-1);
    CHECK_THROWS_AS(config::validate(sur), Error);
}

TEST_CASE("config precedence: flags beat environment beats file") {
    std::string dir = temp_dir();
    std::string path = dir + "/smrel.conf";
    {
        std::ofstream f(path);
        f << "# comment\n";
        f << "delta_max=50\n";
        f << "n_max=4\n";
        f << "precision_bits=192\n";
    }
    ::setenv("SMREL_DELTA_MAX", "75", 1);
    ::setenv("SMREL_N_MAX", "6", 1);
    config::Config c = config::load({{"delta_max", "99"}}, path);
    CHECK(c.delta_max == 99);          // flag wins
    CHECK(c.n_max == 6);               // env beats file
    CHECK(c.precision_bits == 192);    // file fills the rest
    ::unsetenv("SMREL_DELTA_MAX");
    ::unsetenv("SMREL_N_MAX");
    config::Config c2 = config::load({}, path);
    CHECK(c2.delta_max == 50);
    CHECK(c2.n_max == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config file errors fail parse") {
    std::string dir = temp_dir();
    std::string path = dir + "/broken.conf";
    std::ofstream(path) << "no_equals_sign\n";
    config::Config c;
    CHECK_THROWS_AS(config::apply_file(c, path), Error);
    CHECK_THROWS_AS(config::apply_file(c, dir + "/missing.conf"), Error);
    std::filesystem::remove_all(dir);
}
