/* smrel — command-line front end over the shared C API.
 *
 * Exit codes: 0 completed clean; 2 usage/domain error; 3 precision
 * exhausted; 4 budget exhausted (searches: partial report written);
 * 5 indeterminate; 6 parse error; 7 internal error; 10 completed with
 * findings (searches that found something, verifications that refuted). */

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smrel.h"

namespace {

using json = nlohmann::json;

constexpr int kExitFindings = 10;

struct CtxDeleter {
    void operator()(smrel_ctx* c) const { smrel_ctx_free(c); }
};
using Ctx = std::unique_ptr<smrel_ctx, CtxDeleter>;

struct StrDeleter {
    void operator()(char* s) const { smrel_free_str(s); }
};
using CStr = std::unique_ptr<char, StrDeleter>;

int fail_with(const Ctx& ctx, int status) {
    std::cerr << "error: " << smrel_last_error(ctx.get()) << "\n";
    return status;
}

json parse_out(const char* text) { return json::parse(text); }

/* with --json: persist the canonical report and echo the path */
int persist(const Ctx& ctx, bool want_json, const char* report_text) {
    if (!want_json) return SMREL_OK;
    char* path = nullptr;
    int rc = smrel_write_report(ctx.get(), report_text, &path);
    if (rc != SMREL_OK) return fail_with(ctx, rc);
    CStr guard(path);
    std::cout << "report: " << path << "\n";
    return SMREL_OK;
}

std::string poly_pretty(const json& coeffs) {
    /* constant-first coefficient strings -> human polynomial in x */
    std::string out;
    for (size_t k = coeffs.size(); k-- > 0;) {
        std::string c = coeffs[k].get<std::string>();
        bool neg = !c.empty() && c[0] == '-';
        std::string mag = neg ? c.substr(1) : c;
        if (mag == "0" && coeffs.size() > 1) continue;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit = (mag == "1") && k > 0;
        if (!unit) out += mag;
        if (k > 0) {
            if (!unit) out += "*";
            out += "x";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

std::string ball_pretty(const json& b) {
    return b.at("re").get<std::string>() + " + " +
           b.at("im").get<std::string>() + "*i  (+/- " +
           b.at("rad").get<std::string>() + ")";
}

void print_certificate(const json& j) {
    const json& p = j.at("payload");
    std::cout << "mode: " << p.at("mode").get<std::string>() << "\n";
    std::cout << "exponents:";
    for (const json& e : p.at("exponents"))
        std::cout << " " << e.get<std::string>();
    std::cout << "\n";
    if (!p.at("kernel_generator").empty()) {
        std::cout << "kernel generator:";
        for (const json& e : p.at("kernel_generator"))
            std::cout << " " << e.get<std::string>();
        std::cout << "  (product sign " << p.at("kernel_sign").get<int>()
                  << ")\n";
    }
    if (p.at("minimal").get<bool>())
        std::cout << "minimal: every proper subset is independent\n";
}

void print_search_report(const json& j) {
    const json& p = j.at("payload");
    const json& findings = p.at("findings");
    std::cout << "findings: " << findings.size() << "\n";
    for (const json& f : findings) {
        std::cout << "  members:";
        for (const json& m : f.at("members")) {
            if (m.at("rational").get<bool>())
                std::cout << " " << m.at("value").get<std::string>() << " (D="
                          << m.at("disc").get<long>() << ")";
            else
                std::cout << " " << m.at("disc").get<long>() << ":"
                          << m.at("conj").get<int>();
        }
        std::cout << "\n  exponents:";
        for (const json& e : f.at("certificate").at("exponents"))
            std::cout << " " << e.get<std::string>();
        std::cout << "  [" << f.at("certificate").at("mode").get<std::string>()
                  << "]\n";
        std::cout << "  delta: "
                  << f.at("complexity").at("delta").get<std::string>() << "\n";
    }
    std::cout << "exclusions: " << p.at("exclusions").get<unsigned long>()
              << "\n";
    for (const json& c : p.at("caveats"))
        std::cout << "caveat: " << c.get<std::string>() << "\n";
}

bool budget_partial(const json& j) {
    for (const json& c : j.at("payload").at("caveats"))
        if (c.get<std::string>().find("budget exhausted") != std::string::npos)
            return true;
    return false;
}

int search_exit(const json& j) {
    if (budget_partial(j)) return SMREL_EBUDGET;
    return j.at("payload").at("findings").empty() ? 0 : kExitFindings;
}

void print_complexity(const json& j) {
    const json& p = j.at("payload");
    std::cout << "kind: " << p.at("detail").get<std::string>() << "\n";
    for (const json& c : p.at("components"))
        std::cout << "  " << c.at("name").get<std::string>() << " = "
                  << c.at("value").get<std::string>() << "\n";
    std::cout << "delta: " << p.at("delta").get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "certified arithmetic of special j-values: class polynomials, "
        "multiplicative-relation certificates, coset-tree separation, and "
        "complexity reports"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "KEY=VALUE configuration file");
    bool want_json = false;
    app.add_flag("--json", want_json,
                 "also write the machine report, content-addressed, into "
                 "output_dir");

    /* global configuration flags (override environment and file) */
    std::vector<std::pair<std::string, std::string>> flag_kv;
    auto cfg_opt = [&](const std::string& flag, const std::string& key,
                       const std::string& help) {
        app.add_option_function<std::string>(
               flag,
               [&flag_kv, key](const std::string& v) {
                   flag_kv.emplace_back(key, v);
               },
               help)
            ->expected(1);
    };
    cfg_opt("--precision", "precision_bits", "working precision in bits");
    cfg_opt("--delta-max", "delta_max", "discriminant magnitude bound");
    cfg_opt("--n-max", "n_max", "tuple size bound");
    cfg_opt("--level-max", "level_max", "modular-equation level budget");
    cfg_opt("--order-max", "order_max", "root-of-unity order budget");
    cfg_opt("--workers", "worker_count", "parallel candidate cap");
    cfg_opt("--output-dir", "output_dir", "directory for --json reports");
    app.add_option_function<std::vector<std::string>>(
        "--surrogate",
        [&flag_kv](const std::vector<std::string>& vs) {
            for (const std::string& v : vs) {
                size_t eq = v.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--surrogate needs name=p/q");
                flag_kv.emplace_back("surrogate." + v.substr(0, eq),
                                     v.substr(eq + 1));
            }
        },
        "search-sizing constant, name=p/q (repeatable)");

    /* ---- subcommands -------------------------------------------------- */
    long bound = 200;
    auto* sc_disc = app.add_subcommand(
        "discriminants", "discriminants and class numbers up to a bound");
    sc_disc->add_option("--bound", bound, "largest |D|")->required();

    long form_d = 0;
    auto* sc_forms =
        app.add_subcommand("forms", "reduced quadratic forms of D");
    sc_forms->add_option("-D,--discriminant", form_d, "discriminant")
        ->required();

    long cp_d = 0;
    auto* sc_cp =
        app.add_subcommand("class-poly", "Hilbert class polynomial of D");
    sc_cp->add_option("-D,--discriminant", cp_d, "discriminant")->required();

    long mod_d = 0;
    auto* sc_moduli =
        app.add_subcommand("moduli", "singular moduli of D with boxes");
    sc_moduli->add_option("-D,--discriminant", mod_d, "discriminant")
        ->required();

    std::string je_re, je_im;
    auto* sc_jeval = app.add_subcommand("j-eval", "j(re + i*im) as a box");
    sc_jeval->add_option("--re", je_re, "real part")->required();
    sc_jeval->add_option("--im", je_im, "imaginary part (positive)")
        ->required();

    auto* sc_rel =
        app.add_subcommand("relation", "find or verify relation certificates");
    sc_rel->require_subcommand(1);
    std::vector<std::string> rel_members;
    std::string rel_bound = "64";
    auto* sc_rel_find = sc_rel->add_subcommand(
        "find", "certified multiplicative relation among values");
    sc_rel_find
        ->add_option("members", rel_members,
                     "value designators (\"p\", \"p/q\", or \"disc:index\")")
        ->required()
        ->expected(-1);
    sc_rel_find->add_option("--bound", rel_bound, "exponent bound");
    std::string verify_path;
    auto* sc_rel_verify =
        sc_rel->add_subcommand("verify", "re-verify a written report");
    sc_rel_verify->add_option("file", verify_path, "report file")->required();

    auto* sc_mp =
        app.add_subcommand("modpoly", "modular polynomials");
    sc_mp->require_subcommand(1);
    long mp_level = 2;
    auto* sc_mp_build = sc_mp->add_subcommand("build", "compute Phi_N");
    sc_mp_build->add_option("-N,--level", mp_level, "level")->required();
    long mpe_level = 2;
    std::string mpe_x, mpe_y;
    auto* sc_mp_eval =
        sc_mp->add_subcommand("eval", "exact rational evaluation of Phi_N");
    sc_mp_eval->add_option("-N,--level", mpe_level, "level")->required();
    sc_mp_eval->add_option("-x", mpe_x, "first argument")->required();
    sc_mp_eval->add_option("-y", mpe_y, "second argument")->required();

    std::string iso_x, iso_y;
    auto* sc_iso = app.add_subcommand(
        "isogeny", "minimal modular-equation level joining two values");
    sc_iso->add_option("x", iso_x, "value designator")->required();
    sc_iso->add_option("y", iso_y, "value designator")->required();

    auto* sc_tree = app.add_subcommand("tree", "coset-tree operations");
    sc_tree->require_subcommand(1);
    long tree_p = 2;
    std::string td_g1, td_g2;
    auto* sc_tree_dist =
        sc_tree->add_subcommand("distance", "tree distance at a prime");
    sc_tree_dist->add_option("-p,--prime", tree_p, "prime")->required();
    sc_tree_dist->add_option("g1", td_g1, "element (a,b,d or 2x2 entries)")
        ->required();
    sc_tree_dist->add_option("g2", td_g2, "element")->required();
    std::vector<std::string> sep_gs;
    auto* sc_tree_sep = sc_tree->add_subcommand(
        "separate", "witness point where j vanishes along exactly one coset");
    sc_tree_sep
        ->add_option("--g", sep_gs, "element (repeat once per coset)")
        ->required();

    auto* sc_search = app.add_subcommand("search", "bounded searches");
    sc_search->require_subcommand(1);
    bool rational_only = false;
    auto* sc_sd = sc_search->add_subcommand(
        "singular-dependent",
        "minimal multiplicatively dependent tuples of singular moduli");
    sc_sd->add_flag("--rational-only", rational_only,
                    "restrict to class-number-1 values");
    auto* sc_pp = sc_search->add_subcommand(
        "pair-product", "sigma1*sigma2 = 1 scan (expected empty)");
    auto* sc_mpair = sc_search->add_subcommand(
        "modular-pairs",
        "root-of-unity pairs joined by a modular equation");

    auto* sc_cx = app.add_subcommand(
        "complexity", "complexity reports for tuples, pairs, and triples");
    std::vector<std::string> cx_values;
    std::string cx_mode = "tuple";
    sc_cx->add_option("values", cx_values, "value designators")
        ->required()
        ->expected(-1);
    sc_cx
        ->add_option("--mode", cx_mode,
                     "tuple | pair | triple-unity | triple-modulus")
        ->check(CLI::IsMember(
            {"tuple", "pair", "triple-unity", "triple-modulus"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : SMREL_EDOMAIN;
    }

    Ctx ctx(smrel_ctx_new());
    if (!ctx) {
        std::cerr << "error: cannot allocate context\n";
        return SMREL_EINTERNAL;
    }
    int rc = smrel_ctx_load(ctx.get(),
                            config_path.empty() ? nullptr
                                                : config_path.c_str());
    if (rc != SMREL_OK) return fail_with(ctx, rc);
    for (const auto& [k, v] : flag_kv) {
        rc = smrel_ctx_set(ctx.get(), k.c_str(), v.c_str());
        if (rc != SMREL_OK) return fail_with(ctx, rc);
    }

    char* out = nullptr;

    if (sc_disc->parsed()) {
        rc = smrel_discriminants(ctx.get(), bound, &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        std::printf("%8s %6s\n", "D", "h");
        for (const json& row : j.at("payload").at("discriminants"))
            std::printf("%8ld %6ld\n", row.at("D").get<long>(),
                        row.at("h").get<long>());
        return persist(ctx, want_json, out);
    }

    if (sc_forms->parsed()) {
        rc = smrel_reduced_forms(ctx.get(), form_d, &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        std::printf("%10s %10s %10s\n", "a", "b", "c");
        for (const json& f : j.at("payload").at("forms"))
            std::printf("%10s %10s %10s\n",
                        f.at("a").get<std::string>().c_str(),
                        f.at("b").get<std::string>().c_str(),
                        f.at("c").get<std::string>().c_str());
        return persist(ctx, want_json, out);
    }

    if (sc_cp->parsed()) {
        rc = smrel_class_poly(ctx.get(), cp_d, &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        std::cout << poly_pretty(j.at("payload").at("coefficients")) << "\n";
        return persist(ctx, want_json, out);
    }

    if (sc_moduli->parsed()) {
        rc = smrel_singular_moduli(ctx.get(), mod_d, &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        const json& p = j.at("payload");
        std::cout << "class number: " << p.at("class_number").get<long>()
                  << "\n";
        if (!p.at("rational").is_null())
            std::cout << "value: " << p.at("rational").get<std::string>()
                      << "\n";
        for (const json& b : p.at("conjugates"))
            std::cout << "  " << ball_pretty(b) << "\n";
        return persist(ctx, want_json, out);
    }

    if (sc_jeval->parsed()) {
        rc = smrel_j_eval(ctx.get(), je_re.c_str(), je_im.c_str(), &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        std::cout << ball_pretty(j.at("payload").at("value")) << "\n";
        return persist(ctx, want_json, out);
    }

    if (sc_rel_find->parsed()) {
        json members = json::array();
        for (const std::string& m : rel_members) members.push_back(m);
        rc = smrel_relation_find(ctx.get(), members.dump().c_str(),
                                 rel_bound.c_str(), &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        print_certificate(parse_out(out));
        return persist(ctx, want_json, out);
    }

    if (sc_rel_verify->parsed()) {
        int ok = 0;
        rc = smrel_verify_report_file(ctx.get(), verify_path.c_str(), &ok);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        std::cout << (ok ? "verified" : "REFUTED") << "\n";
        return ok ? 0 : SMREL_EDOMAIN;
    }

    if (sc_mp_build->parsed()) {
        if (want_json) {
            rc = smrel_modpoly_json(ctx.get(), mp_level, &out);
            if (rc != SMREL_OK) return fail_with(ctx, rc);
            CStr guard(out);
            json j = parse_out(out);
            std::cout << "level " << mp_level << ", degree "
                      << j.at("payload").at("degree").get<long>() << ", "
                      << j.at("payload").at("entries").size()
                      << " nonzero coefficients\n";
            return persist(ctx, want_json, out);
        }
        rc = smrel_modpoly_text(ctx.get(), mp_level, &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        std::cout << out;
        return 0;
    }

    if (sc_mp_eval->parsed()) {
        rc = smrel_modpoly_eval(ctx.get(), mpe_level, mpe_x.c_str(),
                                mpe_y.c_str(), &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        std::cout << j.at("payload").at("value").get<std::string>() << "\n";
        return persist(ctx, want_json, out);
    }

    if (sc_iso->parsed()) {
        long level = 0;
        rc = smrel_isogeny(ctx.get(), iso_x.c_str(), iso_y.c_str(), &level);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        if (level == 0)
            std::cout << "none within the configured level budget\n";
        else
            std::cout << "level " << level << "\n";
        return 0;
    }

    if (sc_tree_dist->parsed()) {
        long d = 0;
        rc = smrel_tree_distance(ctx.get(), tree_p, td_g1.c_str(),
                                 td_g2.c_str(), &d);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        std::cout << d << "\n";
        return 0;
    }

    if (sc_tree_sep->parsed()) {
        json els = json::array();
        for (const std::string& g : sep_gs) els.push_back(g);
        rc = smrel_tree_separate(ctx.get(), els.dump().c_str(), &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        const json& p = j.at("payload");
        std::cout << "survivor index: " << p.at("survivor").get<long>()
                  << "\n";
        std::cout << "gamma:";
        for (const json& e : p.at("gamma"))
            std::cout << " " << e.get<std::string>();
        std::cout << "\n" << p.at("z").get<std::string>() << "\n";
        std::cout << "vanishing pattern:";
        for (const json& b : p.at("per_index"))
            std::cout << " " << (b.get<bool>() ? "1" : "0");
        std::cout << "\n";
        return persist(ctx, want_json, out);
    }

    if (sc_sd->parsed()) {
        rc = smrel_search_singular_dependent(ctx.get(), rational_only ? 1 : 0,
                                             &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        print_search_report(j);
        int prc = persist(ctx, want_json, out);
        return prc != SMREL_OK ? prc : search_exit(j);
    }

    if (sc_pp->parsed()) {
        rc = smrel_search_pair_product(ctx.get(), &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        print_search_report(j);
        int prc = persist(ctx, want_json, out);
        return prc != SMREL_OK ? prc : search_exit(j);
    }

    if (sc_mpair->parsed()) {
        rc = smrel_search_modular_pairs(ctx.get(), &out);
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        const json& p = j.at("payload");
        std::cout << "pairs: " << p.at("pairs").size() << " (examined "
                  << p.at("pairs_examined").get<long>() << ")\n";
        for (const json& pr : p.at("pairs"))
            std::cout << "  zeta(" << pr.at("order1").get<long>() << ","
                      << pr.at("k1").get<long>() << ") ~ zeta("
                      << pr.at("order2").get<long>() << ","
                      << pr.at("k2").get<long>() << ")  level "
                      << pr.at("level").get<long>() << "\n";
        if (!p.at("caveat").get<std::string>().empty())
            std::cout << "caveat: " << p.at("caveat").get<std::string>()
                      << "\n";
        int prc = persist(ctx, want_json, out);
        if (prc != SMREL_OK) return prc;
        return p.at("pairs").empty() ? 0 : kExitFindings;
    }

    if (sc_cx->parsed()) {
        if (cx_mode == "tuple") {
            json members = json::array();
            for (const std::string& m : cx_values) members.push_back(m);
            rc = smrel_complexity_tuple(ctx.get(), members.dump().c_str(),
                                        &out);
        } else if (cx_mode == "pair") {
            if (cx_values.size() != 2) {
                std::cerr << "error: --mode pair needs exactly 2 values\n";
                return SMREL_EDOMAIN;
            }
            rc = smrel_complexity_pair(ctx.get(), cx_values[0].c_str(),
                                       cx_values[1].c_str(), &out);
        } else {
            if (cx_values.size() != 3) {
                std::cerr << "error: triple modes need exactly 3 values\n";
                return SMREL_EDOMAIN;
            }
            int variant = cx_mode == "triple-unity" ? 2 : 4;
            rc = smrel_verify_triple(ctx.get(), variant,
                                     cx_values[0].c_str(),
                                     cx_values[1].c_str(),
                                     cx_values[2].c_str(), &out);
        }
        if (rc != SMREL_OK) return fail_with(ctx, rc);
        CStr guard(out);
        json j = parse_out(out);
        if (j.is_null()) {
            std::cout << "no witness within the configured budgets\n";
            return 0;
        }
        print_complexity(j);
        return persist(ctx, want_json, out);
    }

    std::cerr << "error: no subcommand executed\n";
    return SMREL_EDOMAIN;
}
