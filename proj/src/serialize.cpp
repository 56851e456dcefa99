#include "smrel/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "smrel/classpoly.hpp"
#include "smrel/jfun.hpp"
#include "smrel/qforms.hpp"
#include "smrel/util.hpp"

namespace smrel::serialize {

namespace {

std::string zs(const mpz_class& z) { return z.get_str(); }

mpz_class z_of(const json& j) {
    if (!j.is_string()) fail_parse("expected a decimal-string integer");
    try {
        return mpz_class(j.get<std::string>());
    } catch (const std::exception&) {
        fail_parse("bad integer literal: " + j.get<std::string>());
    }
}

std::string fmt_double(double d) {
    std::ostringstream os;
    os << std::setprecision(17) << d;
    return os.str();
}

json poly_json(const IntPoly& p) {
    json a = json::array();
    for (const mpz_class& c : p.coeffs()) a.push_back(zs(c));
    return a;
}

IntPoly poly_of(const json& j) {
    if (!j.is_array() || j.empty()) fail_parse("expected a coefficient list");
    std::vector<mpz_class> c;
    for (const json& e : j) c.push_back(z_of(e));
    return IntPoly(std::move(c));
}

json gl2_json(const trees::GL2QElement& g) {
    return json{{"a", zs(g.a)}, {"b", zs(g.b)}, {"d", zs(g.d)}};
}

trees::GL2QElement gl2_of(const json& j) {
    trees::GL2QElement g;
    g.a = z_of(j.at("a"));
    g.b = z_of(j.at("b"));
    g.d = z_of(j.at("d"));
    return g;
}

json params_json(const std::vector<std::pair<std::string, std::string>>& kv) {
    json p = json::object();
    for (const auto& [k, v] : kv) p[k] = v;
    return p;
}

json top(const std::string& kind, json parameters, json payload,
         json verification) {
    return json{{"schema_version", 1},
                {"kind", kind},
                {"parameters", std::move(parameters)},
                {"payload", std::move(payload)},
                {"verification", std::move(verification)}};
}

json cert_body_json(const relations::RelationCertificate& cert) {
    json exps = json::array();
    for (const mpz_class& e : cert.exponents) exps.push_back(zs(e));
    json gen = json::array();
    for (const mpz_class& e : cert.kernel_generator) gen.push_back(zs(e));
    return json{{"exponents", exps},
                {"mode", cert.mode},
                {"numeric_precision", (long)cert.numeric_precision},
                {"minimal", cert.minimal},
                {"kernel_generator", gen},
                {"kernel_sign", cert.kernel_sign}};
}

relations::RelationCertificate cert_body_of(const json& j) {
    relations::RelationCertificate c;
    for (const json& e : j.at("exponents")) c.exponents.push_back(z_of(e));
    c.mode = j.at("mode").get<std::string>();
    c.numeric_precision = j.at("numeric_precision").get<long>();
    c.minimal = j.at("minimal").get<bool>();
    for (const json& e : j.at("kernel_generator"))
        c.kernel_generator.push_back(z_of(e));
    c.kernel_sign = j.at("kernel_sign").get<int>();
    return c;
}

/* members of a search finding, reconstructed the way they were found */
AlgebraicNumber member_of(const json& m) {
    if (m.at("rational").get<bool>())
        return AlgebraicNumber::from_integer(z_of(m.at("value")));
    long disc = m.at("disc").get<long>();
    int conj = m.at("conj").get<int>();
    std::vector<AlgebraicNumber> all = classpoly::singular_moduli(disc);
    if (conj < 0 || (size_t)conj >= all.size())
        fail_parse("conjugate index out of range");
    return all[(size_t)conj];
}

bool verify_relation_json(const json& j);
bool verify_search_json(const json& j);
bool verify_witness_json(const json& j);
bool verify_pairs_json(const json& j);
bool verify_complexity_payload(const json& payload);

bool verify_relation_json(const json& j) {
    ParsedCertificate pc = certificate_from_json(j);
    return relations::verify_relation(pc.members, pc.exponents) !=
           relations::Verify::refuted;
}

bool verify_complexity_payload(const json& payload) {
    mpz_class delta = z_of(payload.at("delta"));
    mpz_class agg = 0;
    for (const json& c : payload.at("components")) {
        mpz_class v = z_of(c.at("value"));
        if (v < 0) v = -v;
        if (v > agg) agg = v;
    }
    return agg == delta;
}

bool verify_search_json(const json& j) {
    const json& payload = j.at("payload");
    for (const json& f : payload.at("findings")) {
        std::vector<AlgebraicNumber> members;
        for (const json& m : f.at("members")) members.push_back(member_of(m));
        relations::RelationCertificate cert =
            cert_body_of(f.at("certificate"));
        if (relations::verify_relation(members, cert.exponents) ==
            relations::Verify::refuted)
            return false;
        if (!verify_complexity_payload(f.at("complexity"))) return false;
    }
    return true;
}

bool verify_witness_json(const json& j) {
    const json& payload = j.at("payload");
    std::array<mpz_class, 4> gamma;
    const json& gj = payload.at("gamma");
    if (!gj.is_array() || gj.size() != 4) fail_parse("gamma needs 4 entries");
    for (size_t i = 0; i < 4; ++i) gamma[i] = z_of(gj[i]);

    std::vector<trees::GL2QElement> elements, translated;
    for (const json& e : payload.at("elements")) elements.push_back(gl2_of(e));
    for (const json& e : payload.at("translated"))
        translated.push_back(gl2_of(e));
    long survivor = payload.at("survivor").get<long>();
    const json& per = payload.at("per_index");
    if (elements.size() != translated.size() ||
        per.size() != translated.size())
        fail_parse("witness arrays disagree in length");
    if (survivor < 0 || (size_t)survivor >= translated.size())
        fail_parse("survivor index out of range");

    long zeros = 0;
    for (size_t i = 0; i < translated.size(); ++i) {
        if (trees::translate(elements[i], elements[(size_t)survivor]) !=
            translated[i])
            return false;
        bool hit = trees::exact_j_zero_test(translated[i], gamma);
        if (hit != per[i].get<bool>()) return false;
        if (hit) ++zeros;
    }
    return zeros == 1 && per[(size_t)survivor].get<bool>();
}

bool verify_pairs_json(const json& j) {
    const json& payload = j.at("payload");
    for (const json& p : payload.at("pairs")) {
        unsigned long o1 = p.at("order1").get<unsigned long>();
        unsigned long k1 = p.at("k1").get<unsigned long>();
        unsigned long o2 = p.at("order2").get<unsigned long>();
        unsigned long k2 = p.at("k2").get<unsigned long>();
        long level = p.at("level").get<long>();
        unsigned long ring = p.at("ring").get<unsigned long>();
        if (o1 == 0 || o2 == 0 || ring % o1 != 0 || ring % o2 != 0)
            fail_parse("ring is not a common multiple of the orders");
        if (o1 == o2 && k1 == k2) return false; /* roots must be distinct */
        const modpoly::ModularPolynomial& f =
            modpoly::modular_polynomial(level, level);
        IntPoly v = modpoly::eval_cyclotomic(f, ring, k1 * (ring / o1),
                                             k2 * (ring / o2));
        if (!v.is_zero()) return false;
    }
    return true;
}

json ball_json(const CBall& b) {
    return json{{"re", b.re.str()},
                {"im", b.im.str()},
                {"rad", fmt_double(b.rad.to_double())}};
}

long long_param(const json& j, const std::string& key) {
    const json& params = j.at("parameters");
    const std::string s = params.at(key).get<std::string>();
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) fail_parse("bad parameter " + key);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail_parse("bad parameter " + key);
    }
}

std::string str_param(const json& j, const std::string& key) {
    return j.at("parameters").at(key).get<std::string>();
}

/* queries are pure functions of their parameters: re-run and compare */
json recompute_query(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "discriminant_census")
        return query_discriminants_json(long_param(j, "bound"));
    if (kind == "reduced_forms") return query_forms_json(long_param(j, "D"));
    if (kind == "class_polynomial")
        return query_class_poly_json(long_param(j, "D"));
    if (kind == "singular_moduli")
        return query_moduli_json(long_param(j, "D"),
                                 (Prec)long_param(j, "precision"));
    if (kind == "j_value")
        return query_j_eval_json(str_param(j, "re"), str_param(j, "im"),
                                 (Prec)long_param(j, "precision"));
    if (kind == "modular_polynomial")
        return query_modpoly_json(long_param(j, "level"));
    if (kind == "modular_polynomial_value")
        return query_modpoly_eval_json(long_param(j, "level"),
                                       str_param(j, "x"), str_param(j, "y"));
    if (kind == "isogeny_level")
        return query_isogeny_json(long_param(j, "level_max"),
                                  (Prec)long_param(j, "max_precision"),
                                  str_param(j, "x"), str_param(j, "y"));
    if (kind == "tree_distance")
        return query_tree_distance_json(long_param(j, "p"),
                                        str_param(j, "g1"),
                                        str_param(j, "g2"));
    fail_parse("unknown report kind \"" + kind + "\"");
}

}  // namespace

json algnum_json(const AlgebraicNumber& a, Prec box_prec) {
    CBall box = a.enclosure(box_prec);
    return json{{"min_poly", poly_json(a.min_poly())},
                {"box", json{{"re", box.re.str()},
                             {"im", box.im.str()},
                             {"rad", fmt_double(box.rad.to_double())},
                             {"prec", (long)box_prec}}}};
}

AlgebraicNumber algnum_from_json(const json& j) {
    IntPoly p = poly_of(j.at("min_poly"));
    if (p.degree() < 1) fail_parse("defining polynomial must be nonconstant");
    if (p.degree() == 1) {
        mpq_class r(-p[0], p[1]);
        r.canonicalize();
        return AlgebraicNumber::from_rational(r);
    }
    const json& bj = j.at("box");
    Prec prec = (Prec)bj.at("prec").get<long>();
    if (prec < 32 || prec > 1 << 20) fail_parse("unreasonable box precision");
    CBall box(prec);
    box.re = Real::parse(bj.at("re").get<std::string>(), prec);
    box.im = Real::parse(bj.at("im").get<std::string>(), prec);
    double rd;
    try {
        rd = std::stod(bj.at("rad").get<std::string>());
    } catch (const std::exception&) {
        fail_parse("bad box radius");
    }
    if (!(rd >= 0)) fail_parse("bad box radius");
    box.rad = Mag::from_d(rd);
    return AlgebraicNumber::make(p, box);
}

json certificate_json(
    const std::vector<AlgebraicNumber>& members,
    const relations::RelationCertificate& cert,
    const std::vector<std::pair<std::string, std::string>>& parameters) {
    if (members.size() != cert.exponents.size())
        fail_domain("certificate arity mismatch");
    json ms = json::array();
    for (const AlgebraicNumber& m : members) ms.push_back(algnum_json(m));
    json payload = cert_body_json(cert);
    payload["members"] = std::move(ms);
    json verification{
        {"method", cert.mode == "exact"
                       ? "exact factored-kernel identity"
                       : "certified ball product against the degree-height "
                         "separation gap"},
        {"command", "relation verify <file>"}};
    return top("relation_certificate", params_json(parameters),
               std::move(payload), std::move(verification));
}

ParsedCertificate certificate_from_json(const json& j) {
    if (j.at("kind").get<std::string>() != "relation_certificate")
        fail_parse("not a relation certificate");
    const json& payload = j.at("payload");
    ParsedCertificate pc;
    for (const json& m : payload.at("members"))
        pc.members.push_back(algnum_from_json(m));
    relations::RelationCertificate body = cert_body_of(payload);
    pc.exponents = std::move(body.exponents);
    pc.mode = std::move(body.mode);
    pc.numeric_precision = body.numeric_precision;
    if (pc.members.size() != pc.exponents.size())
        fail_parse("member/exponent arity mismatch");
    return pc;
}

json witness_json(const std::vector<trees::GL2QElement>& gs,
                  const trees::SeparationWitness& w) {
    json els = json::array(), tr = json::array(), per = json::array();
    for (const auto& g : gs) els.push_back(gl2_json(g));
    for (const auto& g : w.translated) tr.push_back(gl2_json(g));
    for (bool b : w.per_index) per.push_back(b);
    json gamma = json::array();
    for (const mpz_class& e : w.gamma) gamma.push_back(zs(e));
    json payload{{"elements", std::move(els)},
                 {"gamma", std::move(gamma)},
                 {"survivor", w.survivor},
                 {"translated", std::move(tr)},
                 {"per_index", std::move(per)},
                 {"z", w.z_description}};
    json verification{
        {"method", "exact corner-orbit vanishing test per index"},
        {"zero_count", 1}};
    return top("separation_witness", json::object(), std::move(payload),
               std::move(verification));
}

json complexity_json(const search::ComplexityReport& r) {
    json comps = json::array();
    for (const auto& [name, v] : r.components)
        comps.push_back(json{{"name", name}, {"value", zs(v)}});
    json payload{{"detail", search::report_kind_name(r.kind)},
                 {"components", std::move(comps)},
                 {"delta", zs(r.delta)}};
    json verification{{"method", "delta equals the max of the components"}};
    return top("complexity_report", json::object(), std::move(payload),
               std::move(verification));
}

json search_report_json(const search::SearchReport& rep) {
    json findings = json::array();
    for (const search::TupleFinding& f : rep.findings) {
        json ms = json::array();
        for (const search::TupleMember& m : f.members)
            ms.push_back(json{{"disc", m.disc},
                              {"conj", m.conj},
                              {"rational", m.rational},
                              {"value", zs(m.value)}});
        json comps = json::array();
        for (const auto& [name, v] : f.complexity.components)
            comps.push_back(json{{"name", name}, {"value", zs(v)}});
        findings.push_back(json{
            {"members", std::move(ms)},
            {"certificate", cert_body_json(f.cert)},
            {"complexity",
             json{{"detail", search::report_kind_name(f.complexity.kind)},
                  {"components", std::move(comps)},
                  {"delta", zs(f.complexity.delta)}}}});
    }
    json caveats = json::array();
    for (const std::string& c : rep.caveats) caveats.push_back(c);
    json payload{{"search", rep.kind},
                 {"findings", std::move(findings)},
                 {"exclusions", rep.exclusions},
                 {"caveats", std::move(caveats)}};
    json verification{
        {"method",
         "findings re-verified from reconstructed members; complexity "
         "re-aggregated"}};
    return top("search_report", params_json(rep.parameters),
               std::move(payload), std::move(verification));
}

json pair_report_json(const modpoly::PairSearchOutcome& o, long m_max,
                      long n_max) {
    json pairs = json::array();
    for (const modpoly::ModularPairCertificate& p : o.pairs)
        pairs.push_back(json{{"order1", p.order1},
                             {"k1", p.k1},
                             {"order2", p.order2},
                             {"k2", p.k2},
                             {"level", p.level},
                             {"ring", p.ring}});
    json payload{{"pairs", std::move(pairs)},
                 {"pairs_examined", o.pairs_examined},
                 {"caveat", o.caveat}};
    json verification{
        {"method", "each pair re-evaluated exactly in Z[zeta]/Phi_ring"}};
    return top("modular_pair_report",
               params_json({{"order_max", std::to_string(m_max)},
                            {"level_max", std::to_string(n_max)}}),
               std::move(payload), std::move(verification));
}

AlgebraicNumber parse_value_designator(const std::string& s) {
    size_t colon = s.find(':');
    if (colon == std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            fail_parse("bad value designator \"" + s + "\"");
        q.canonicalize();
        return AlgebraicNumber::from_rational(q);
    }
    long disc = 0, conj = 0;
    try {
        size_t u1 = 0, u2 = 0;
        disc = std::stol(s.substr(0, colon), &u1);
        conj = std::stol(s.substr(colon + 1), &u2);
        if (u1 != colon || u2 != s.size() - colon - 1)
            fail_parse("bad value designator \"" + s + "\"");
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail_parse("bad value designator \"" + s + "\"");
    }
    std::vector<AlgebraicNumber> all = classpoly::singular_moduli(disc);
    if (conj < 0 || (size_t)conj >= all.size())
        fail_parse("conjugate index out of range in \"" + s + "\"");
    return all[(size_t)conj];
}

trees::GL2QElement parse_tree_element(const std::string& csv) {
    std::vector<mpz_class> parts;
    size_t start = 0;
    while (start <= csv.size()) {
        size_t comma = csv.find(',', start);
        std::string piece = csv.substr(
            start, comma == std::string::npos ? std::string::npos
                                              : comma - start);
        size_t b = piece.find_first_not_of(" \t");
        size_t e = piece.find_last_not_of(" \t");
        if (b == std::string::npos)
            fail_parse("empty entry in tree element \"" + csv + "\"");
        try {
            parts.emplace_back(piece.substr(b, e - b + 1));
        } catch (const std::exception&) {
            fail_parse("bad integer in tree element \"" + csv + "\"");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() == 3)
        return trees::canonicalize(
            std::array<mpz_class, 4>{parts[0], parts[1], 0, parts[2]});
    if (parts.size() == 4)
        return trees::canonicalize(
            std::array<mpz_class, 4>{parts[0], parts[1], parts[2], parts[3]});
    fail_parse("tree element needs 3 or 4 entries: \"" + csv + "\"");
}

json query_discriminants_json(long bound) {
    json rows = json::array();
    for (long D : qforms::enumerate_discriminants(bound))
        rows.push_back(json{{"D", D}, {"h", qforms::class_number(D)}});
    return top("discriminant_census",
               params_json({{"bound", std::to_string(bound)}}),
               json{{"discriminants", std::move(rows)}},
               json{{"method", "recompute and compare"}});
}

json query_forms_json(long D) {
    json rows = json::array();
    for (const qforms::QuadForm& f : qforms::reduced_forms(D))
        rows.push_back(json{{"a", zs(f.a)}, {"b", zs(f.b)}, {"c", zs(f.c)}});
    return top("reduced_forms", params_json({{"D", std::to_string(D)}}),
               json{{"forms", std::move(rows)}},
               json{{"method", "recompute and compare"}});
}

json query_class_poly_json(long D) {
    return top("class_polynomial", params_json({{"D", std::to_string(D)}}),
               json{{"coefficients",
                     poly_json(classpoly::hilbert_class_poly(D))}},
               json{{"method", "recompute and compare"}});
}

json query_moduli_json(long D, Prec p) {
    IntPoly hp = classpoly::hilbert_class_poly(D);
    json conj = json::array();
    for (const CBall& b : classpoly::singular_moduli_balls(D, p))
        conj.push_back(ball_json(b));
    json rational;  /* null unless class number 1 */
    if (hp.degree() == 1) rational = zs(-hp[0]);
    return top("singular_moduli",
               params_json({{"D", std::to_string(D)},
                            {"precision", std::to_string((long)p)}}),
               json{{"class_number", hp.degree()},
                    {"min_poly", poly_json(hp)},
                    {"rational", std::move(rational)},
                    {"conjugates", std::move(conj)}},
               json{{"method", "recompute and compare"}});
}

json query_j_eval_json(const std::string& re, const std::string& im, Prec p) {
    CBall z(p);
    z.re = Real::parse(re, p);
    z.im = Real::parse(im, p);
    CBall v = jfun::j_eval(z, p);
    return top("j_value",
               params_json({{"re", re},
                            {"im", im},
                            {"precision", std::to_string((long)p)}}),
               json{{"value", ball_json(v)}},
               json{{"method", "recompute and compare"}});
}

json query_modpoly_json(long level) {
    const modpoly::ModularPolynomial& f =
        modpoly::modular_polynomial(level, level);
    json entries = json::array();
    for (long i = 0; i <= f.deg_x(); ++i)
        for (long k = 0; k <= f.deg_y(); ++k)
            if (f.at(i, k) != 0)
                entries.push_back(
                    json{{"i", i}, {"j", k}, {"c", zs(f.at(i, k))}});
    return top("modular_polynomial",
               params_json({{"level", std::to_string(level)}}),
               json{{"degree", f.deg_x()}, {"entries", std::move(entries)}},
               json{{"method", "recompute and compare"}});
}

json query_modpoly_eval_json(long level, const std::string& x,
                             const std::string& y) {
    mpq_class qx, qy;
    if (qx.set_str(x, 10) != 0 || qy.set_str(y, 10) != 0)
        fail_parse("modular-polynomial evaluation needs rational arguments");
    qx.canonicalize();
    qy.canonicalize();
    const modpoly::ModularPolynomial& f =
        modpoly::modular_polynomial(level, level);
    mpq_class v = modpoly::eval_exact(f, qx, qy);
    return top("modular_polynomial_value",
               params_json({{"level", std::to_string(level)},
                            {"x", x},
                            {"y", y}}),
               json{{"value", v.get_str()}},
               json{{"method", "recompute and compare"}});
}

json query_isogeny_json(long level_max, Prec max_precision,
                        const std::string& x, const std::string& y) {
    AlgebraicNumber ax = parse_value_designator(x);
    AlgebraicNumber ay = parse_value_designator(y);
    std::optional<long> n =
        modpoly::is_isogenous(ax, ay, level_max, max_precision);
    return top("isogeny_level",
               params_json({{"level_max", std::to_string(level_max)},
                            {"max_precision",
                             std::to_string((long)max_precision)},
                            {"x", x},
                            {"y", y}}),
               json{{"level", n ? *n : 0}},
               json{{"method", "recompute and compare"}});
}

json query_tree_distance_json(long p, const std::string& g1,
                              const std::string& g2) {
    trees::GL2QElement a = parse_tree_element(g1);
    trees::GL2QElement b = parse_tree_element(g2);
    long d = trees::tree_distance(trees::local_class(a, p),
                                  trees::local_class(b, p));
    return top("tree_distance",
               params_json({{"p", std::to_string(p)},
                            {"g1", g1},
                            {"g2", g2}}),
               json{{"distance", d},
                    {"node1", trees::local_class(a, p).str()},
                    {"node2", trees::local_class(b, p).str()}},
               json{{"method", "recompute and compare"}});
}

std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

std::string write_report(const json& j, const std::string& output_dir) {
    std::string text = canonical_text(j);
    std::filesystem::path dir(output_dir.empty() ? "." : output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail_internal("cannot create output directory " + dir.string());
    std::filesystem::path file = dir / (content_hash_hex(text) + ".json");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) fail_internal("cannot open " + file.string() + " for writing");
    out << text;
    out.close();
    if (!out) fail_internal("short write to " + file.string());
    return file.string();
}

json read_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_parse("cannot open report file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        fail_parse(std::string("malformed report: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version") ||
        !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<long>() != 1)
        fail_parse("unsupported schema version");
    if (!j.contains("kind") || !j["kind"].is_string())
        fail_parse("report has no kind");
    return j;
}

bool verify_report(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "relation_certificate") return verify_relation_json(j);
        if (kind == "search_report") return verify_search_json(j);
        if (kind == "separation_witness") return verify_witness_json(j);
        if (kind == "modular_pair_report") return verify_pairs_json(j);
        if (kind == "complexity_report")
            return verify_complexity_payload(j.at("payload"));
        return recompute_query(j).at("payload") == j.at("payload");
    } catch (const json::exception& e) {
        fail_parse(std::string("malformed ") + kind + ": " + e.what());
    }
}

}  // namespace smrel::serialize
