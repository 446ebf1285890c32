#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "hmf/hecke.hpp"
#include "hmf/io.hpp"
#include "hmf/suites.hpp"

namespace hmf {

namespace {

const Field* field_arg(long D) {
    if (D < 2 || !is_squarefree(D)) throw SchemaError("--field must be a squarefree integer D > 1, got " + std::to_string(D));
    return Field::get(D);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    std::ofstream o(path);
    if (!o) throw SchemaError("cannot write " + path);
    o << j.dump(2) << "\n";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Without --json: one line per top-level key, arrays and large objects summarized.
void emit(std::ostream& out, const json& j, bool as_json) {
    if (as_json) {
        out << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (v.is_structured()) {
            std::string d = v.dump();
            if (d.size() > 100) d = v.is_array() ? "[" + std::to_string(v.size()) + " items]" : "{" + std::to_string(v.size()) + " keys}";
            out << k << ": " << d << "\n";
        } else
            out << k << ": " << scalar_text(v) << "\n";
    }
}

long default_p(const Level& level) {
    Integer nn = level.n.norm().get_num();
    for (long p = 2;; ++p)
        if (is_prime(p) && mpz_divisible_ui_p(nn.get_mpz_t(), static_cast<unsigned long>(p)) == 0) return p;
}

json field_info(const Field* F) {
    RayClassGroup wide(F, FracIdeal::unit(F), false), narrow(F, FracIdeal::unit(F), true);
    return json{{"schema", "hmf.field/1"},
                {"D", F->D},
                {"disc", F->disc},
                {"omega", F->D % 4 == 1 ? "(1+sqrt(D))/2" : "sqrt(D)"},
                {"fundamental_unit", to_json(F->fundamental_unit())},
                {"eps_plus", to_json(F->eps_plus())},
                {"unit_norm", F->unit_norm()},
                {"class_number", wide.order()},
                {"narrow_class_number", narrow.order()},
                {"different", to_json(different(F))}};
}

json report_json(const SuiteReport& r) {
    return json{{"name", r.name}, {"pass", r.pass}, {"trials", r.trials}, {"detail", r.detail}};
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            long v = std::stol(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw SchemaError("expected a comma-separated integer list, got '" + s + "'");
        }
    }
    return out;
}

struct Args {
    bool json = false;
    long D = 5;
    std::string level = "u1", P, ideal = "1", ideal2, weight = "2,2,0,0", ring = "exact", prime, op, varpi, in, out,
                element, suite = "commutativity", only, fields, character = "default", a, r;
    long p = 0, zeta = 1, bound = 24, verify_bound = 130, check_bound = 50, trace_bound = 20, trials = 50, rational_prime = 11, cusp = 0, unit_power = 1;
    std::uint64_t seed = SuiteOptions{}.seed;
    bool smooth = false, narrow = false, strict = false, corrupt = false, require_smooth = false;
    bool have_fields = false;
};

ContextPtr context_arg(const Args& a, const Field* F, long p) {
    Level level = parse_level(F, a.level);
    ContextPtr ctx = Context::create(F, level, parse_weight(a.weight), parse_ring(F, a.ring, a.zeta), p);
    if (a.character == "default") return ctx->with_default_character();
    if (a.character == "none") return ctx;
    throw SchemaError("--character must be 'default' or 'none'");
}

int cmd_cusps(const Args& a, std::ostream& out, bool clasps_only) {
    const Field* F = field_arg(a.D);
    Level level = parse_level(F, a.level);
    std::optional<FracIdeal> P;
    if (!a.P.empty()) P = parse_ideal(F, a.P);
    long p = a.p;
    if (p == 0) p = P ? factor(*P).at(0).first.ell : default_p(level);
    CuspAtlas A(F, level, p);
    if (!clasps_only) {
        emit(out, atlas_to_json(A, P), a.json);
        return 0;
    }
    if (!A.is_neat(*P)) throw DomainError("level " + level.describe() + " is not P-neat; clasps need units = 1 mod n to be = 1 mod P");
    auto u0 = A.u0_cusps(*P);
    std::map<std::size_t, std::uint64_t> fiber;
    json cl = json::array();
    for (const auto& c : A.clasps(*P)) {
        fiber[c.u0]++;
        cl.push_back({{"index", c.index}, {"u0", c.u0}, {"cusp", c.base}, {"q", to_json(c.q)}, {"xi", c.xi}});
    }
    json fibers = json::array();
    for (const auto& u : u0)
        fibers.push_back({{"u0", u.index}, {"q", to_json(u.q1)}, {"size", fiber[u.index]}, {"phi", ResidueRing(u.q1).unit_count()}});
    emit(out,
         json{{"schema", "hmf.clasps/1"},
              {"field", {{"D", F->D}}},
              {"level", to_json(level)},
              {"P", to_json(*P)},
              {"cusps", A.size()},
              {"clasps", cl},
              {"fibers", fibers}},
         a.json);
    return 0;
}

int cmd_hecke_apply(const Args& a, std::ostream& out) {
    QExpFamily f = family_from_json(read_json(a.in));
    const Field* F = f.ctx->F;
    QExpFamily g;
    if (a.op == "Sv")
        g = apply_Sv(f, parse_ideal(F, a.prime));
    else {
        PrimeIdeal P = parse_prime(F, a.prime);
        if (a.op == "Tv")
            g = apply_Tv(f, P);
        else if (a.op == "Tp")
            g = a.varpi.empty() ? apply_Tp(f, P) : apply_Tp(f, P, parse_element(F, a.varpi));
        else if (a.op == "Sp")
            g = apply_Sp(f, P);
        else if (a.op == "Swp")
            g = apply_S_varpi(f, P, a.varpi.empty() ? f.ctx->normalized_uniformizer(P) : parse_element(F, a.varpi));
        else
            throw SchemaError("--op must be one of Tv, Sv, Tp, Sp, Swp");
    }
    json j = family_to_json(g);
    j["meta"] = {{"op", a.op}, {"prime", a.prime}};
    if (!a.out.empty()) {
        write_json(a.out, j);
        emit(out, json{{"written", a.out}, {"B", g.bound}, {"op", a.op}}, a.json);
    } else
        out << j.dump(2) << "\n";
    return 0;
}

int cmd_hecke_verify(const Args& a, std::ostream& out) {
    const Field* F = field_arg(a.D);
    long p = a.rational_prime;
    if (!is_prime(p)) throw SchemaError("--rational-prime must be prime");
    if (a.trials < 0) throw SchemaError("--trials must be non-negative");
    ContextPtr ctx = context_arg(a, F, p);
    auto ps = primes_above(F, p);
    SuiteReport r;
    if (a.suite == "commutativity") {
        if (ps.size() < 2) throw DomainError(std::to_string(p) + " does not split; commutativity needs two primes over p");
        r = check_commutativity(ctx, ps[0], ps[1], a.trials, a.seed, a.verify_bound);
    } else if (a.suite == "uniformizer") {
        r = SuiteReport{"uniformizer independence", true, 0, "T_p agrees under varpi and eps_plus varpi at every prime over p"};
        for (const auto& P : ps) {
            SuiteReport s = check_uniformizer_independence(ctx, P, a.trials, a.seed, a.verify_bound);
            r.trials += s.trials;
            if (!s.pass) {
                r = s;
                break;
            }
        }
    } else if (a.suite == "linearity") {
        long avoid = p * to_int64(ctx->level.n.norm().get_num());
        PrimeIdeal v = a.prime.empty() ? primes_up_to(F, 1000, avoid).at(0) : parse_prime(F, a.prime);
        r = check_linearity(ctx, ps[0], v, a.trials, a.seed, a.verify_bound);
    } else
        throw SchemaError("--suite must be commutativity, uniformizer or linearity");
    json j = report_json(r);
    j["schema"] = "hmf.report/1";
    j["meta"] = {{"seed", a.seed}, {"suite", a.suite}, {"context", context_to_json(*ctx)}, {"bound", a.verify_bound}};
    emit(out, j, a.json);
    return r.pass ? 0 : 1;
}

int cmd_verify_all(const Args& a, std::ostream& out) {
    SuiteOptions opt{a.seed, a.corrupt};
    std::set<long> ids;
    for (long i : parse_long_list(a.only)) ids.insert(i);
    std::set<long> fields;
    for (long D : parse_long_list(a.fields)) fields.insert(D);
    json results = json::array();
    bool pass = true;
    for (const auto& c : acceptance_criteria()) {
        if (!ids.empty() && !ids.count(c.id)) continue;
        if (a.have_fields && !std::all_of(c.fields.begin(), c.fields.end(), [&](long D) { return fields.count(D) > 0; }))
            continue;
        SuiteReport r = run_criterion(c, opt);
        json rj = report_json(r);
        rj["id"] = c.id;
        results.push_back(rj);
        pass = pass && r.pass;
    }
    json j{{"schema", "hmf.report/1"},
           {"meta", {{"seed", a.seed}, {"inject_corruption", a.corrupt}}},
           {"results", results},
           {"pass", pass}};
    if (a.json)
        out << j.dump(2) << "\n";
    else {
        for (const auto& r : results)
            out << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["id"].get<long>() << " " << r["name"].get<std::string>()
                << ": " << r["detail"].get<std::string>() << "\n";
        out << (pass ? "all passed" : "failures") << " (" << results.size() << " suites, seed " << a.seed << ")\n";
    }
    return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hilbert modular form q-expansions, cusps and Hecke operators over real quadratic fields", "hmf"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    app.add_flag("--json", a.json, "emit JSON");

    auto add_field = [&](CLI::App* s) { s->add_option("--field", a.D, "D of Q(sqrt D)")->required(); };
    auto add_context = [&](CLI::App* s) {
        s->add_option("--level", a.level, "u1, u1:<ideal> or full:<ideal>");
        s->add_option("--weight", a.weight, "k1,k2,m1,m2");
        s->add_option("--ring", a.ring, "exact or torsion:ell:i:exponent");
        s->add_option("--zeta", a.zeta, "order of the adjoined root of unity");
        s->add_option("--character", a.character, "default or none");
    };

    auto* field = app.add_subcommand("field", "field invariants");
    add_field(field);

    auto* classgroup = app.add_subcommand("classgroup", "(narrow) ray class group");
    add_field(classgroup);
    classgroup->add_option("--modulus", a.ideal, "integral ideal");
    classgroup->add_flag("--narrow", a.narrow);

    auto* cusps = app.add_subcommand("cusps", "cusp atlas, with U0(P) cusps when --P is given");
    add_field(cusps);
    cusps->add_option("--level", a.level);
    cusps->add_option("--P", a.P, "squarefree ideal over p");
    cusps->add_option("--p", a.p, "rational prime");

    auto* clasps = app.add_subcommand("clasps", "clasps of a P-neat level");
    add_field(clasps);
    clasps->add_option("--level", a.level)->required();
    clasps->add_option("--P", a.P)->required();
    clasps->add_option("--p", a.p);

    auto* qexp = app.add_subcommand("qexp", "q-expansion families");
    qexp->require_subcommand(1);
    auto* validate = qexp->add_subcommand("validate", "check admissibility of a family");
    validate->add_option("--in", a.in)->required();
    auto* eval = qexp->add_subcommand("eval", "read one coefficient");
    eval->add_option("--in", a.in)->required();
    eval->add_option("--m", a.element, "exponent element")->required();
    eval->add_option("--cusp", a.cusp, "stored cusp index");
    eval->add_option("--a", a.a, "idele ideal (instead of --cusp)");
    eval->add_option("--r", a.r, "idele residue mod n");
    eval->add_flag("--strict", a.strict, "fail beyond the truncation");
    auto* random = qexp->add_subcommand("random", "seeded random admissible family");
    add_field(random);
    add_context(random);
    random->add_option("--p", a.p)->required();
    random->add_option("--seed", a.seed);
    random->add_option("--bound", a.bound);
    random->add_option("--out", a.out);

    auto* hecke = app.add_subcommand("hecke", "Hecke operators");
    hecke->require_subcommand(1);
    auto* apply = hecke->add_subcommand("apply", "apply one operator to a family");
    apply->add_option("--op", a.op, "Tv, Sv, Tp, Sp or Swp")->required();
    apply->add_option("--prime", a.prime, "prime ideal literal")->required();
    apply->add_option("--varpi", a.varpi, "uniformizer for Tp and Swp");
    apply->add_option("--in", a.in)->required();
    apply->add_option("--out", a.out);
    auto* verify = hecke->add_subcommand("verify", "property suites");
    add_field(verify);
    add_context(verify);
    verify->add_option("--suite", a.suite, "commutativity, uniformizer or linearity");
    verify->add_option("--rational-prime", a.rational_prime);
    verify->add_option("--prime", a.prime, "v for the linearity suite");
    verify->add_option("--trials", a.trials);
    verify->add_option("--seed", a.seed);
    verify->add_option("--bound", a.verify_bound);

    auto* fan = app.add_subcommand("fan", "unit-periodic fans");
    fan->require_subcommand(1);
    auto* build = fan->add_subcommand("build", "fan on the totally positive cone of M");
    add_field(build);
    build->add_option("--M", a.ideal);
    build->add_option("--unit-power", a.unit_power, "unit = eps_plus^e");
    build->add_flag("--smooth", a.smooth);
    auto* check = fan->add_subcommand("check", "coverage, periodicity, smoothness");
    check->add_option("--in", a.in)->required();
    check->add_option("--bound", a.check_bound);
    check->add_flag("--require-smooth", a.require_smooth);
    auto* trace = fan->add_subcommand("trace", "free rank of Z[sigma cap M] over Z[sigma cap alpha M1]");
    add_field(trace);
    trace->add_option("--M", a.ideal);
    trace->add_option("--M1", a.ideal2)->required();
    trace->add_option("--alpha", a.element);
    trace->add_option("--bound", a.trace_bound);

    auto* all = app.add_subcommand("verify-all", "run the acceptance suites");
    all->add_option("--seed", a.seed);
    all->add_option("--only", a.only, "comma-separated criterion ids");
    auto* fields_opt = all->add_option("--fields", a.fields, "comma-separated D; criteria touching other fields are skipped");
    all->add_flag("--inject-corruption", a.corrupt);

    std::vector<const char*> argv{"hmf"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    a.have_fields = fields_opt->count() > 0;

    try {
        if (field->parsed()) {
            emit(out, field_info(field_arg(a.D)), a.json);
        } else if (classgroup->parsed()) {
            const Field* F = field_arg(a.D);
            FracIdeal n = parse_ideal(F, a.ideal);
            if (!n.is_integral()) throw SchemaError("modulus must be integral");
            RayClassGroup G(F, n, a.narrow);
            json gens = json::array();
            for (const auto& g : G.generators()) gens.push_back(to_json(g));
            emit(out,
                 json{{"schema", "hmf.classgroup/1"},
                      {"field", {{"D", F->D}}},
                      {"modulus", to_json(n)},
                      {"narrow", a.narrow},
                      {"order", G.order()},
                      {"structure", G.structure()},
                      {"generators", gens}},
                 a.json);
        } else if (cusps->parsed()) {
            return cmd_cusps(a, out, false);
        } else if (clasps->parsed()) {
            return cmd_cusps(a, out, true);
        } else if (validate->parsed()) {
            QExpFamily f = family_from_json(read_json(a.in));
            ValidationReport v = validate_family(f);
            json j{{"schema", "hmf.validation/1"}, {"valid", v.valid}};
            if (!v.valid) j.update({{"rep", v.rep}, {"key", to_json(v.key)}, {"message", v.message}});
            emit(out, j, a.json);
            return v.valid ? 0 : 1;
        } else if (eval->parsed()) {
            QExpFamily f = family_from_json(read_json(a.in));
            const Field* F = f.ctx->F;
            Element m = parse_element(F, a.element);
            Coeff c;
            if (!a.a.empty()) {
                IdeleRep t{parse_ideal(F, a.a), a.r.empty() ? F->one() : parse_element(F, a.r)};
                c = coefficient(f, t, m, a.strict);
            } else {
                if (a.cusp < 0 || a.cusp >= static_cast<long>(f.ctx->rep_count())) throw SchemaError("--cusp out of range");
                c = coefficient(f, static_cast<std::size_t>(a.cusp), m, a.strict);
            }
            emit(out, json{{"m", to_json(m)}, {"value", to_json(c)}, {"ring", to_json(f.ctx->ring)}}, a.json);
        } else if (random->parsed()) {
            const Field* F = field_arg(a.D);
            if (!is_prime(a.p)) throw SchemaError("--p must be prime");
            if (a.bound < 0) throw SchemaError("--bound must be non-negative");
            QExpFamily f = random_admissible_family(context_arg(a, F, a.p), a.seed, a.bound);
            json j = family_to_json(f);
            j["meta"] = {{"seed", a.seed}};
            if (!a.out.empty()) {
                write_json(a.out, j);
                emit(out, json{{"written", a.out}, {"B", f.bound}, {"seed", a.seed}}, a.json);
            } else
                out << j.dump(2) << "\n";
        } else if (apply->parsed()) {
            return cmd_hecke_apply(a, out);
        } else if (verify->parsed()) {
            return cmd_hecke_verify(a, out);
        } else if (build->parsed()) {
            const Field* F = field_arg(a.D);
            if (a.unit_power < 1) throw SchemaError("--unit-power must be positive");
            Fan f = build_unit_invariant_fan(parse_ideal(F, a.ideal), pow(F->eps_plus(), a.unit_power), a.smooth);
            emit(out, fan_to_json(f), a.json);
        } else if (check->parsed()) {
            Fan f = fan_from_json(read_json(a.in));
            FanReport r = check_fan(f, a.check_bound);
            bool ok = r.coverage && r.periodic && (!a.require_smooth || r.smooth);
            emit(out,
                 json{{"schema", "hmf.fancheck/1"},
                      {"coverage", r.coverage},
                      {"periodic", r.periodic},
                      {"smooth", r.smooth},
                      {"message", r.message},
                      {"pass", ok}},
                 a.json);
            return ok ? 0 : 1;
        } else if (trace->parsed()) {
            const Field* F = field_arg(a.D);
            FracIdeal M = parse_ideal(F, a.ideal), M1 = parse_ideal(F, a.ideal2);
            Element alpha = a.element.empty() ? F->one() : parse_element(F, a.element);
            if (alpha.is_zero() || !is_totally_positive(alpha)) throw DomainError("--alpha must be totally positive");
            Fan f = build_unit_invariant_fan(alpha * M1, F->eps_plus(), true);
            DegreeCertificate c = monoid_trace_degree(f.ray(0), f.ray(1), M, M1, alpha, a.trace_bound);
            json gens = json::array();
            for (const auto& g : c.generators) gens.push_back(to_json(g));
            emit(out,
                 json{{"schema", "hmf.trace/1"},
                      {"cone", {to_json(f.ray(0)), to_json(f.ray(1))}},
                      {"rank", c.rank},
                      {"index", to_string(c.index)},
                      {"bound", c.bound},
                      {"conclusive", c.conclusive},
                      {"generators", gens},
                      {"message", c.message}},
                 a.json);
        } else if (all->parsed()) {
            return cmd_verify_all(a, out);
        }
        return 0;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hmf
