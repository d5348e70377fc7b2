#include "torusfill/cli.hpp"

#include "torusfill/blowup.hpp"
#include "torusfill/divisor.hpp"
#include "torusfill/fillings.hpp"
#include "torusfill/json.hpp"
#include "torusfill/lattice.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <optional>
#include <ostream>

namespace torusfill::cli {

MonodromyString parse_string_arg(std::string_view text)
{
    MonodromyString out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ')
            tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ')
            tok.remove_suffix(1);
        if (tok.empty()) {
            if (text.find_first_not_of(' ') == std::string_view::npos)
                throw UsageError("empty integer list");
            throw UsageError("empty entry in integer list '" + std::string(text) + "'");
        }
        Int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
            throw UsageError("'" + std::string(tok) + "' is not an integer");
        out.entries.push_back(v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

namespace {

struct Common {
    bool json = false;
    bool timing = false;
    std::size_t limit = 0;
    std::string seed;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_flag("--json", c.json, "Emit a JSON report");
    sub->add_flag("--timing", c.timing, "Include wall-clock time in the report");
    sub->add_option("--limit", c.limit, "Enumeration resource cap (0 keeps the default)");
    sub->add_option("--seed", c.seed, "Accepted and ignored; every computation is deterministic");
}

std::size_t limit_or(const Common& c, std::size_t fallback)
{
    return c.limit == 0 ? fallback : c.limit;
}

Seq parse_seq(const std::string& text, const char* flag)
{
    try {
        return parse_string_arg(text).entries;
    } catch (const UsageError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

/// "a,b;c,d" -> rows
IntMatrix parse_matrix(const std::string& text)
{
    std::vector<Seq> rows;
    std::size_t pos = 0;
    while (true) {
        std::size_t semi = text.find(';', pos);
        rows.push_back(parse_seq(text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos), "--gram"));
        if (semi == std::string::npos)
            break;
        pos = semi + 1;
    }
    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            throw UsageError("--gram: rows have different lengths");
    return IntMatrix::from_rows(rows, rows.front().size());
}

std::string seq_text(const Json& a)
{
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            s += ", ";
        s += a[i].dump();
    }
    return s;
}

bool is_scalar_array(const Json& a)
{
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const Json& x) { return x.is_primitive(); });
}

void render_text(const Json& j, std::ostream& out, const std::string& indent)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const Json& v = it.value();
        if (key == "weights" && is_scalar_array(v)) {
            out << indent << "weights: (" << seq_text(v) << ") cyclic\n";
        } else if (v.is_object()) {
            out << indent << key << ":\n";
            render_text(v, out, indent + "  ");
        } else if (is_scalar_array(v)) {
            out << indent << key << ": [" << seq_text(v) << "]\n";
        } else if (v.is_array()) {
            out << indent << key << ":\n";
            std::size_t i = 0;
            for (const auto& item : v) {
                if (item.is_object()) {
                    out << indent << "  [" << i << "]\n";
                    render_text(item, out, indent + "    ");
                } else if (is_scalar_array(item)) {
                    out << indent << "  [" << seq_text(item) << "]\n";
                } else {
                    out << indent << "  " << item.dump() << "\n";
                }
                ++i;
            }
        } else if (v.is_string()) {
            out << indent << key << ": " << v.get<std::string>() << "\n";
        } else {
            out << indent << key << ": " << v.dump() << "\n";
        }
    }
}

Json trace_json(const Mat2& m)
{
    TraceClass tc = classify_trace(m);
    Json j;
    j["trace"] = tc.trace;
    j["class"] = to_string(tc.kind);
    return j;
}

Json h1_json(const Mat2& m)
{
    try {
        return to_json(h1_torus_bundle(m));
    } catch (const DomainError& e) {
        return Json(e.what());
    }
}

Json cmd_classify(const std::optional<std::string>& d_text, const std::optional<std::string>& m_text,
                  const Common& common, Json& input)
{
    if (d_text.has_value() == m_text.has_value())
        throw UsageError("classify: give exactly one of --d or --matrix");
    std::optional<Seq> d;
    Mat2 m = Mat2::identity();
    if (d_text) {
        d = parse_seq(*d_text, "--d");
        input["d"] = *d;
        m = compose_A(*d);
    } else {
        Seq e = parse_seq(*m_text, "--matrix");
        if (e.size() != 4)
            throw UsageError("--matrix: expected four entries a,b,c,d");
        input["matrix"] = e;
        m = Mat2(e[0], e[1], e[2], e[3]);
    }
    Json r;
    r["matrix"] = to_json(m);
    Json tc = trace_json(m);
    r["trace"] = tc["trace"];
    r["class"] = tc["class"];
    if (classify_trace(m).kind == TraceKind::Hyperbolic) {
        StandardForm sf = hyperbolic_standard_form(m);
        Json j;
        j["sign"] = sf.sign;
        j["d"] = sf.d;
        j["conjugator"] = to_json(sf.conjugator);
        r["standard_form"] = j;
    }
    r["h1"] = h1_json(m);
    if (d && is_hyperbolic_standard(*d)) {
        r["rho"] = rho(*d);
        auto w = is_embeddable(*d, limit_or(common, default_blowup_limit));
        r["embeddable"] = w.has_value();
        r["witness"] = w ? to_json(*w) : Json(nullptr);
    }
    return r;
}

Json cmd_embed(const std::string& d_text, const Common& common, Json& input)
{
    Seq d = parse_seq(d_text, "--d");
    input["d"] = d;
    const std::size_t limit = limit_or(common, default_blowup_limit);
    Json r;
    r["rho"] = rho(d);
    auto all = embedding_witnesses(d, limit);
    r["embeddable"] = !all.empty();
    r["witness"] = all.empty() ? Json(nullptr) : to_json(all.front());
    r["witness_count"] = all.size();
    return r;
}

Json cmd_cap(const std::string& kind, const std::optional<int>& eps, const std::optional<Int>& n,
             const std::optional<Int>& c1, const std::optional<std::string>& d_text,
             const std::optional<std::string>& s_text, std::size_t rotation, const Common& common, Json& input)
{
    auto need = [&](bool has, const char* flag) {
        if (!has)
            throw UsageError("cap --kind " + kind + " needs " + flag);
    };
    input["kind"] = kind;
    CapSpec spec;
    if (kind == "elliptic-left" || kind == "elliptic-right") {
        need(eps.has_value(), "--eps");
        input["eps"] = *eps;
        if (kind == "elliptic-left")
            spec = EllipticLeft{*eps};
        else
            spec = EllipticRight{*eps};
    } else if (kind == "parabolic") {
        need(n.has_value(), "--n");
        input["n"] = *n;
        spec = Parabolic{*n};
    } else if (kind == "hyp-single") {
        need(c1.has_value(), "--c1");
        input["c1"] = *c1;
        spec = HypSingle{*c1};
    } else if (kind == "hyp-cycle") {
        need(d_text.has_value(), "--d");
        Seq d = parse_seq(*d_text, "--d");
        input["d"] = d;
        HypCycle hc{d, {}, rotation};
        if (s_text) {
            hc.s = parse_seq(*s_text, "--s");
        } else {
            auto w = is_embeddable(d, limit_or(common, default_blowup_limit));
            if (!w)
                throw DomainError("cap: " + to_string(d) + " is not embeddable");
            hc.s = w->blowup;
            hc.rotation = w->rotation;
        }
        input["s"] = hc.s;
        input["rotation"] = hc.rotation;
        spec = hc;
    } else {
        throw UsageError("cap: unknown --kind '" + kind + "'");
    }

    Divisor D = realize_cap(spec);
    IntMatrix q = intersection_matrix(D);
    Mat2 mono = boundary_monodromy(spec);
    Json r;
    r["spec"] = describe(spec);
    r["ambient"] = D.ambient.str();
    r["divisor"] = to_json(D);
    r["dual_graph"] = to_json(dual_graph(D));
    r["anticanonical"] = anticanonical_check(D);
    r["boundary_monodromy"] = to_json(mono);
    r["boundary_trace"] = mono.trace();
    r["intersection_cokernel"] = to_json(cokernel_invariants(q));
    r["boundary_h1"] = h1_json(mono);
    r["negative_definite"] = is_negative_definite(q);
    r["complement"] = to_json(complement_homology(D));
    return r;
}

Json cmd_fillings(const std::string& d_text, const Common& common, Json& input)
{
    Seq d = parse_seq(d_text, "--d");
    input["d"] = d;
    HyperbolicCensus c = hyperbolic_filling_census(d, limit_or(common, default_blowup_limit));
    std::string diag;
    bool euler = euler_consistency(c.blown_up, c.invariants, &diag);
    Json r;
    r["monodromy"] = to_json(-compose_A(d));
    r["witness"] = to_json(c.witness);
    r["cap"] = to_json(c.cap);
    r["cap_weights"] = dual_graph(c.cap).weights;
    r["blown_up"] = to_json(c.blown_up);
    r["blown_up_target"] = c.blown_up_target;
    r["invariants"] = to_json(c.invariants);
    r["euler_consistency"] = euler;
    r["euler_detail"] = diag;
    r["configurations_agree"] = c.configurations_agree;
    Json configs = Json::array();
    for (const auto& cfg : c.configurations) {
        Json cj;
        cj["blowup"] = cfg.blowup;
        Json classes = Json::array();
        for (const auto& comp : cfg.divisor.components)
            classes.push_back(format_class(cfg.divisor.ambient, comp.coords));
        cj["classes"] = classes;
        cj["complement"] = to_json(cfg.homology);
        configs.push_back(std::move(cj));
    }
    r["configurations"] = std::move(configs);
    return r;
}

Json branch_json(const ParabolicBranch& br, bool raw)
{
    Json j;
    j["raw_count"] = br.raw.size();
    std::map<std::string, std::size_t> rejected;
    for (const auto& s : br.raw)
        if (s.rejected_by != ParabolicFilter::None)
            ++rejected[to_string(s.rejected_by)];
    Json rj;
    for (const auto& [k, v] : rejected)
        rj[k] = v;
    j["rejected"] = rj;
    Json filtered = Json::array();
    for (const auto& s : br.filtered) {
        Json sj = to_json(s);
        Divisor D = parabolic_divisor(s);
        FillingInvariants f = parabolic_filling(s);
        sj["filling"] = to_json(f);
        std::vector<Seq> classes{s.F, s.C};
        sj["orthogonal_lattice"] = to_json(lattice_invariants(orthogonal_complement(D.ambient.gram(), classes)));
        sj["euler_consistency"] = euler_consistency(D, f);
        filtered.push_back(std::move(sj));
    }
    j["filtered"] = std::move(filtered);
    if (raw) {
        Json all = Json::array();
        for (const auto& s : br.raw)
            all.push_back(to_json(s));
        j["raw"] = std::move(all);
    }
    return j;
}

Json cmd_parabolic(Int n, bool raw, Json& input)
{
    input["n"] = n;
    ParabolicReport rep = parabolic_solutions(n);
    Json r;
    r["monodromy"] = to_json(compose_A({0, checked::neg(n)}));
    r["cp2"] = branch_json(rep.cp2, raw);
    r["s2xs2"] = branch_json(rep.s2xs2, raw);
    return r;
}

Json cmd_distfill(std::size_t N, const std::string& site_text, const Common& common, Json& input,
                  std::vector<std::string>& warnings)
{
    DistfillSite site;
    if (site_text == "fourth")
        site = DistfillSite::FourthSphere;
    else if (site_text == "last")
        site = DistfillSite::LastSphere;
    else
        throw UsageError("distfill: --site must be 'fourth' or 'last'");
    input["n"] = N;
    input["site"] = site_text;
    DistfillResult res = distfill_family(N, site, limit_or(common, default_distfill_limit));
    warnings.insert(warnings.end(), res.warnings.begin(), res.warnings.end());
    return to_json(res);
}

Json cmd_contact(const std::string& d_text, const std::optional<std::string>& r_text, const Common& common,
                 Json& input)
{
    Seq d = parse_seq(d_text, "--d");
    input["d"] = d;
    Json r;
    if (r_text) {
        Seq rt = parse_seq(*r_text, "--r");
        input["r"] = rt;
        r["vot_count"] = rotation_tuple_product(d);
        r["double_cover"] = to_string(double_cover_obstruction(d, rt));
        return r;
    }
    ContactCensus c = tight_structure_census(d, limit_or(common, default_tuple_limit));
    r["vot_count"] = c.vot_count;
    r["ut_count"] = c.ut_count;
    std::size_t vot = 0, inconclusive = 0;
    for (const auto& t : c.rotation_tuples)
        (double_cover_obstruction(d, t) == DoubleCoverVerdict::VirtuallyOvertwisted ? vot : inconclusive)++;
    Json dc;
    dc["virtually-overtwisted"] = vot;
    dc["inconclusive"] = inconclusive;
    r["double_cover"] = dc;
    if (c.rotation_tuples.size() <= 64) {
        Json tuples = Json::array();
        for (const auto& t : c.rotation_tuples)
            tuples.push_back(t);
        r["rotation_tuples"] = std::move(tuples);
    }
    return r;
}

Json cmd_lattice(const std::optional<std::string>& gram_text, const std::optional<std::size_t>& N,
                 const std::string& model, const std::optional<std::string>& classes_text, Json& input)
{
    if (gram_text.has_value() == N.has_value())
        throw UsageError("lattice: give exactly one of --gram or --N");
    Json r;
    if (gram_text) {
        IntMatrix g = parse_matrix(*gram_text);
        input["gram"] = to_json(g);
        if (!g.is_symmetric())
            throw UsageError("--gram: matrix must be symmetric");
        r["invariants"] = to_json(lattice_invariants(g));
        Sublattice full(g, IntMatrix::identity(g.rows()).row_vectors());
        RadicalQuotient rq = radical_and_quotient(full);
        r["radical_rank"] = rq.radical_rank;
        r["quotient"] = to_json(rq.quotient);
        r["negative_definite"] = is_negative_definite(g);
        return r;
    }
    Ambient amb;
    if (model == "cp2")
        amb.model = SurfaceModel::CP2;
    else if (model == "s2xs2")
        amb.model = SurfaceModel::S2xS2;
    else
        throw UsageError("lattice: --model must be 'cp2' or 's2xs2'");
    amb.N = *N;
    input["ambient"] = amb.str();
    std::vector<Seq> classes;
    Json class_echo = Json::array();
    if (classes_text) {
        std::size_t pos = 0;
        while (true) {
            std::size_t semi = classes_text->find(';', pos);
            std::string tok = classes_text->substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
            classes.push_back(parse_class(amb, tok));
            class_echo.push_back(format_class(amb, classes.back()));
            if (semi == std::string::npos)
                break;
            pos = semi + 1;
        }
    }
    input["classes"] = class_echo;
    Sublattice comp = orthogonal_complement(amb.gram(), classes);
    Json basis = Json::array();
    for (const auto& b : comp.basis())
        basis.push_back(format_class(amb, b));
    r["complement_basis"] = basis;
    r["invariants"] = to_json(lattice_invariants(comp));
    RadicalQuotient rq = radical_and_quotient(comp);
    r["radical_rank"] = rq.radical_rank;
    r["quotient"] = to_json(rq.quotient);
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact computations for torus bundles, their caps and fillings", "torusfill"};
    app.require_subcommand(1);
    Common common;

    auto* classify = app.add_subcommand("classify", "Trace class, normal form, rho and embeddability");
    std::optional<std::string> d_text, m_text, s_text, r_text, gram_text, classes_text;
    std::optional<int> eps;
    std::optional<Int> n_opt, c1;
    std::optional<std::size_t> N_opt;
    std::size_t rotation = 0;
    std::string kind, site = "fourth", model = "cp2";
    bool raw = false;
    Int n_value = 0;
    std::size_t distfill_n = 0;

    classify->add_option("--d", d_text, "Monodromy string, e.g. 3,3,4,3,3");
    classify->add_option("--matrix", m_text, "Matrix entries a,b,c,d");
    add_common(classify, common);

    auto* embed = app.add_subcommand("embed", "Embeddability witness for a hyperbolic string");
    embed->add_option("--d", d_text, "Monodromy string")->required();
    add_common(embed, common);

    auto* cap = app.add_subcommand("cap", "Realize a cap divisor");
    cap->add_option("--kind", kind, "elliptic-left | elliptic-right | parabolic | hyp-single | hyp-cycle")->required();
    cap->add_option("--eps", eps, "eps in {-1,0,1}");
    cap->add_option("--n", n_opt, "Parabolic parameter n <= 4");
    cap->add_option("--c1", c1, "c1 >= 3");
    cap->add_option("--d", d_text, "Monodromy string for hyp-cycle");
    cap->add_option("--s", s_text, "Blowup sequence for hyp-cycle (default: first witness)");
    cap->add_option("--rotation", rotation, "Rotation of rho(d) dominated by --s");
    add_common(cap, common);

    auto* fillings = app.add_subcommand("fillings", "Filling census for an embeddable hyperbolic string");
    fillings->add_option("--d", d_text, "Monodromy string")->required();
    add_common(fillings, common);

    auto* parabolic = app.add_subcommand("parabolic", "Diophantine classification for the parabolic cap");
    parabolic->add_option("--n", n_value, "n <= 4")->required();
    parabolic->add_flag("--raw", raw, "Also list the unfiltered solutions");
    add_common(parabolic, common);

    auto* distfill = app.add_subcommand("distfill", "Complement determinants of the two divisor families");
    distfill->add_option("--n", distfill_n, "Number of extra blowups N >= 0")->required();
    distfill->add_option("--site", site, "Sphere receiving the extra blowups: fourth | last");
    add_common(distfill, common);

    auto* contact = app.add_subcommand("contact", "Rotation tuples and the double-cover test");
    contact->add_option("--d", d_text, "Monodromy string")->required();
    contact->add_option("--r", r_text, "A single rotation tuple to test");
    add_common(contact, common);

    auto* lattice = app.add_subcommand("lattice", "Invariants of a form or of an orthogonal complement");
    lattice->add_option("--gram", gram_text, "Symmetric Gram matrix, rows separated by ';'");
    lattice->add_option("--N", N_opt, "Number of blowups of the ambient");
    lattice->add_option("--model", model, "cp2 | s2xs2");
    lattice->add_option("--classes", classes_text, "Classes separated by ';', e.g. 'h-e1;e2-e3'");
    add_common(lattice, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        err << "run with --help for usage\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Json report;
    Json input;
    std::vector<std::string> warnings;
    std::string verb;
    try {
        Json results;
        if (classify->parsed()) {
            verb = "classify";
            results = cmd_classify(d_text, m_text, common, input);
        } else if (embed->parsed()) {
            verb = "embed";
            results = cmd_embed(*d_text, common, input);
        } else if (cap->parsed()) {
            verb = "cap";
            results = cmd_cap(kind, eps, n_opt, c1, d_text, s_text, rotation, common, input);
        } else if (fillings->parsed()) {
            verb = "fillings";
            results = cmd_fillings(*d_text, common, input);
        } else if (parabolic->parsed()) {
            verb = "parabolic";
            results = cmd_parabolic(n_value, raw, input);
        } else if (distfill->parsed()) {
            verb = "distfill";
            results = cmd_distfill(distfill_n, site, common, input, warnings);
        } else if (contact->parsed()) {
            verb = "contact";
            results = cmd_contact(*d_text, r_text, common, input);
        } else {
            verb = "lattice";
            results = cmd_lattice(gram_text, N_opt, model, classes_text, input);
        }
        report["verb"] = verb;
        report["input"] = input;
        report["results"] = results;
        report["warnings"] = warnings;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 1;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << "\n";
        return 1;
    }
    if (common.timing) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report["timing_ms"] = ms;
    }

    if (common.json) {
        out << report.dump(2) << "\n";
    } else {
        render_text(report, out, "");
    }
    for (const auto& w : warnings)
        err << "warning: " << w << "\n";
    return 0;
}

} // namespace torusfill::cli
