#include "hmf/io.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace hmf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

long parse_long(const std::string& s, const std::string& what) {
    Rational q = parse_rational(s);
    if (q.get_den() != 1) throw SchemaError(what + " must be an integer: '" + s + "'");
    if (!q.get_num().fits_slong_p()) throw SchemaError(what + " out of range: '" + s + "'");
    return q.get_num().get_si();
}

const json& at(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
    return j.at(key);
}

long long_from_json(const json& j, const char* what) {
    if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
    return j.get<long>();
}

std::string string_from_json(const json& j, const char* what) {
    if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional) {
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        if (!j.contains(k)) throw SchemaError(std::string("missing key '") + k + "'");
        allowed.insert(k);
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw SchemaError("unknown key '" + k + "'");
}

Element parse_element(const Field* F, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw SchemaError("empty element literal");
    Element out = F->zero();
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        int sign = 1;
        if (term[0] == '+' || term[0] == '-') {
            if (term[0] == '-') sign = -1;
            term = term.substr(1);
        }
        if (term.empty()) throw SchemaError("malformed element literal '" + text + "'");
        if (term.back() == 'w') {
            std::string c = term.substr(0, term.size() - 1);
            if (!c.empty() && c.back() == '*') c.pop_back();
            Rational q = c.empty() ? Rational(1) : parse_rational(c);
            out = out + Element(F, 0, q * sign);
        } else {
            out = out + Element(F, parse_rational(term) * sign);
        }
        i = j;
    }
    return out;
}

FracIdeal parse_ideal(const Field* F, const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw SchemaError("empty ideal literal");
    if (s == "1" || s == "O") return FracIdeal::unit(F);
    if (s.rfind("p:", 0) == 0) return parse_prime(F, s).P;
    if (s.front() != '(' || s.back() != ')') throw SchemaError("malformed ideal literal '" + text + "'");
    std::vector<Element> gens;
    for (const auto& g : split(s.substr(1, s.size() - 2), ',')) gens.push_back(parse_element(F, g));
    bool any = std::any_of(gens.begin(), gens.end(), [](const Element& x) { return !x.is_zero(); });
    if (!any) throw SchemaError("ideal literal '" + text + "' generates zero");
    return FracIdeal::from_generators(F, gens);
}

PrimeIdeal parse_prime(const Field* F, const std::string& text) {
    std::string s = trim(text);
    if (s.rfind("p:", 0) == 0) {
        auto parts = split(s.substr(2), ':');
        if (parts.size() != 2) throw SchemaError("malformed prime literal '" + text + "'");
        long ell = parse_long(parts[0], "rational prime"), idx = parse_long(parts[1], "prime index");
        if (!is_prime(ell)) throw SchemaError("'" + parts[0] + "' is not a rational prime");
        auto ps = primes_above(F, ell);
        if (idx < 0 || idx >= static_cast<long>(ps.size()))
            throw SchemaError("prime index " + parts[1] + " out of range for " + parts[0]);
        return ps[static_cast<std::size_t>(idx)];
    }
    FracIdeal I = parse_ideal(F, s);
    try {
        return as_prime(I);
    } catch (const DomainError&) {
        throw SchemaError("ideal literal '" + text + "' is not prime");
    }
}

Level parse_level(const Field* F, const std::string& text) {
    std::string s = trim(text);
    auto colon = s.find(':');
    std::string kind = s.substr(0, colon);
    FracIdeal n = colon == std::string::npos ? FracIdeal::unit(F) : parse_ideal(F, s.substr(colon + 1));
    if (!n.is_integral()) throw SchemaError("level ideal must be integral");
    if (kind == "u1") return {LevelType::U1, n};
    if (kind == "full") return {LevelType::Full, n};
    throw SchemaError("level must be u1[:n] or full[:n], got '" + text + "'");
}

Weight parse_weight(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 4) throw SchemaError("weight must be k1,k2,m1,m2");
    return {parse_long(parts[0], "k1"), parse_long(parts[1], "k2"), parse_long(parts[2], "m1"), parse_long(parts[3], "m2")};
}

CoeffRing parse_ring(const Field* F, const std::string& text, long zeta_order) {
    if (zeta_order < 1) throw SchemaError("zeta order must be positive");
    std::string s = trim(text);
    if (s == "exact") return CoeffRing::exact(F, zeta_order);
    if (s.rfind("torsion:", 0) == 0) {
        auto parts = split(s.substr(8), ':');
        if (parts.size() != 3) throw SchemaError("ring must be torsion:ell:i:exponent");
        PrimeIdeal P = parse_prime(F, "p:" + parts[0] + ":" + parts[1]);
        long e = parse_long(parts[2], "exponent");
        if (e < 1) throw SchemaError("exponent must be positive");
        return CoeffRing::torsion(P, static_cast<int>(e), zeta_order);
    }
    throw SchemaError("ring must be 'exact' or 'torsion:ell:i:exponent', got '" + text + "'");
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Element& x) { return json{{"a", to_string(x.a)}, {"b", to_string(x.b)}}; }

json to_json(const FracIdeal& I) {
    return json::array({json::array({to_string(I.a()), "0"}), json::array({to_string(I.b()), to_string(I.c())})});
}

json to_json(const Weight& w) { return json::array({w.k1, w.k2, w.m1, w.m2}); }

json to_json(const Level& l) { return json{{"type", l.type == LevelType::U1 ? "u1" : "full"}, {"n", to_json(l.n)}}; }

json to_json(const CoeffRing& R) {
    if (!R.is_torsion()) return json{{"kind", "exact"}, {"zeta", R.zeta_order()}};
    return json{{"kind", "torsion"}, {"prime", to_json(R.prime().P)}, {"exponent", R.exponent()}, {"zeta", R.zeta_order()}};
}

json to_json(const Coeff& c) {
    json out = json::array();
    for (const auto& q : c) out.push_back(to_string(q));
    return out;
}

json to_json(const CharValue& v) { return json{{"zeta", v.zeta}, {"y", to_json(v.y)}}; }

const Field* field_from_json(const json& j) {
    require_keys(j, {"D"});
    long D = long_from_json(j.at("D"), "D");
    if (D < 2 || !is_squarefree(D)) throw SchemaError("D must be a squarefree integer > 1");
    return Field::get(D);
}

Rational rational_from_json(const json& j) { return parse_rational(string_from_json(j, "rational")); }

Element element_from_json(const Field* F, const json& j) {
    require_keys(j, {"a", "b"});
    return Element(F, rational_from_json(j.at("a")), rational_from_json(j.at("b")));
}

FracIdeal ideal_from_json(const Field* F, const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
        throw SchemaError("ideal must be HNF rows [[a, 0], [b, c]]");
    if (rational_from_json(j[0][1]) != 0) throw SchemaError("ideal HNF must have a zero in row 1");
    try {
        return FracIdeal::from_hnf(F, rational_from_json(j[0][0]), rational_from_json(j[1][0]), rational_from_json(j[1][1]));
    } catch (const DomainError& e) {
        throw SchemaError(std::string("invalid ideal: ") + e.what());
    }
}

Weight weight_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw SchemaError("weight must be [k1, k2, m1, m2]");
    return {long_from_json(j[0], "k1"), long_from_json(j[1], "k2"), long_from_json(j[2], "m1"), long_from_json(j[3], "m2")};
}

Level level_from_json(const Field* F, const json& j) {
    require_keys(j, {"type", "n"});
    std::string t = string_from_json(j.at("type"), "level type");
    FracIdeal n = ideal_from_json(F, j.at("n"));
    if (t == "u1") return {LevelType::U1, n};
    if (t == "full") return {LevelType::Full, n};
    throw SchemaError("level type must be u1 or full");
}

CoeffRing ring_from_json(const Field* F, const json& j) {
    std::string kind = string_from_json(at(j, "kind"), "ring kind");
    if (kind == "exact") {
        require_keys(j, {"kind", "zeta"});
        return CoeffRing::exact(F, long_from_json(j.at("zeta"), "zeta"));
    }
    if (kind == "torsion") {
        require_keys(j, {"kind", "prime", "exponent", "zeta"});
        FracIdeal P = ideal_from_json(F, j.at("prime"));
        PrimeIdeal Q;
        try {
            Q = as_prime(P);
        } catch (const DomainError&) {
            throw SchemaError("torsion ring prime is not prime");
        }
        return CoeffRing::torsion(Q, static_cast<int>(long_from_json(j.at("exponent"), "exponent")),
                                  long_from_json(j.at("zeta"), "zeta"));
    }
    throw SchemaError("ring kind must be exact or torsion");
}

Coeff coeff_from_json(const CoeffRing& R, const json& j) {
    if (!j.is_array() || j.size() != R.dim()) throw SchemaError("ring value must be an array of " + std::to_string(R.dim()) + " rationals");
    Coeff c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return R.normalize(c);
}

json context_to_json(const Context& ctx) {
    json j{{"field", {{"D", ctx.F->D}}},
           {"level", to_json(ctx.level)},
           {"weight", to_json(ctx.weight)},
           {"ring", to_json(ctx.ring)},
           {"p", ctx.p}};
    if (ctx.has_character()) {
        json vals = json::array();
        for (const auto& v : ctx.character().values) vals.push_back(to_json(v));
        j["character"] = vals;
    }
    return j;
}

ContextPtr context_from_json(const json& j) {
    require_keys(j, {"field", "level", "weight", "ring", "p"}, {"character"});
    const Field* F = field_from_json(j.at("field"));
    long p = long_from_json(j.at("p"), "p");
    if (!is_prime(p)) throw SchemaError("p must be a rational prime");
    ContextPtr ctx = Context::create(F, level_from_json(F, j.at("level")), weight_from_json(j.at("weight")),
                                     ring_from_json(F, j.at("ring")), p);
    if (j.contains("character")) {
        const json& c = j.at("character");
        if (c.is_string() && c.get<std::string>() == "default") return ctx->with_default_character();
        if (!c.is_array()) throw SchemaError("character must be an array of {zeta, y} or \"default\"");
        std::vector<CharValue> vals;
        for (const auto& v : c) {
            require_keys(v, {"zeta", "y"});
            vals.emplace_back(long_from_json(v.at("zeta"), "zeta"), element_from_json(F, v.at("y")));
        }
        ctx = ctx->with_character(vals);
    }
    return ctx;
}

json family_to_json(const QExpFamily& f) {
    json entries = json::array();
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        std::vector<Element> keys;
        for (const auto& [m, c] : f.coeffs[i]) keys.push_back(m);
        std::sort(keys.begin(), keys.end());
        for (const auto& m : keys) entries.push_back({{"t_index", i}, {"m", to_json(m)}, {"value", to_json(f.coeffs[i].at(m))}});
    }
    json constants = json::array();
    for (const auto& c : f.constants) constants.push_back(to_json(c));
    return json{{"schema", "hmf.family/1"},
                {"context", context_to_json(*f.ctx)},
                {"B", f.bound},
                {"entries", entries},
                {"constants", constants}};
}

QExpFamily family_from_json(const json& j) {
    require_keys(j, {"schema", "context", "B", "entries", "constants"}, {"meta"});
    if (j.at("schema") != "hmf.family/1") throw SchemaError("unsupported family schema");
    ContextPtr ctx = context_from_json(j.at("context"));
    long B = long_from_json(j.at("B"), "B");
    if (B < 0) throw SchemaError("B must be non-negative");
    QExpFamily f = zero_family(ctx, B);
    const CoeffRing& R = ctx->ring;
    const json& cs = j.at("constants");
    if (!cs.is_array() || cs.size() != ctx->rep_count())
        throw SchemaError("constants must list one value per cusp at infinity (" + std::to_string(ctx->rep_count()) + ")");
    for (std::size_t i = 0; i < cs.size(); ++i) f.constants[i] = coeff_from_json(R, cs[i]);
    if (!j.at("entries").is_array()) throw SchemaError("entries must be an array");
    for (const auto& e : j.at("entries")) {
        require_keys(e, {"t_index", "m", "value"});
        long i = long_from_json(e.at("t_index"), "t_index");
        if (i < 0 || i >= static_cast<long>(ctx->rep_count())) throw SchemaError("t_index out of range");
        Element m = element_from_json(ctx->F, e.at("m"));
        auto& mp = f.coeffs[static_cast<std::size_t>(i)];
        auto it = mp.find(m);
        if (it == mp.end())
            throw SchemaError("key " + to_string(m) + " is not a stored orbit representative of cusp " + std::to_string(i) +
                              " within B");
        it->second = coeff_from_json(R, e.at("value"));
    }
    return f;
}

json fan_to_json(const Fan& f) {
    json rays = json::array();
    for (const auto& r : f.window) {
        auto [x, y] = lattice_coords(f.M, r);
        rays.push_back(json::array({to_string(x), to_string(y)}));
    }
    return json{{"schema", "hmf.fan/1"},
                {"field", {{"D", f.M.field()->D}}},
                {"M", to_json(f.M)},
                {"unit", to_json(f.unit)},
                {"period", f.period()},
                {"rays", rays}};
}

Fan fan_from_json(const json& j) {
    require_keys(j, {"schema", "field", "M", "unit", "period", "rays"});
    if (j.at("schema") != "hmf.fan/1") throw SchemaError("unsupported fan schema");
    const Field* F = field_from_json(j.at("field"));
    Fan f{ideal_from_json(F, j.at("M")), element_from_json(F, j.at("unit")), {}};
    const json& rays = j.at("rays");
    if (!rays.is_array() || rays.empty()) throw SchemaError("rays must be a non-empty array");
    for (const auto& r : rays) {
        if (!r.is_array() || r.size() != 2) throw SchemaError("ray must be [x, y]");
        Rational x = rational_from_json(r[0]), y = rational_from_json(r[1]);
        if (x.get_den() != 1 || y.get_den() != 1) throw SchemaError("ray coordinates must be integers");
        f.window.push_back(from_coords(f.M, x.get_num(), y.get_num()));
    }
    if (long_from_json(j.at("period"), "period") != static_cast<long>(f.window.size()))
        throw SchemaError("period does not match the number of rays");
    return f;
}

json atlas_to_json(const CuspAtlas& A, const std::optional<FracIdeal>& P) {
    json cusps = json::array();
    for (const auto& c : A.cusps())
        cusps.push_back({{"index", c.index},
                         {"pair", c.pair},
                         {"orbit", c.orbit},
                         {"J", to_json(c.J)},
                         {"I", to_json(c.I)},
                         {"component", c.component},
                         {"at_infinity", c.at_infinity}});
    json j{{"schema", "hmf.atlas/1"},
           {"field", {{"D", A.field()->D}}},
           {"level", to_json(A.level())},
           {"p", A.p()},
           {"counts", {{"cusps", A.size()}, {"pairs", A.pair_count()}, {"orbits", A.orbit_count()},
                       {"components", A.component_count()}}},
           {"cusps", cusps},
           {"cusps_at_infinity", A.cusps_at_infinity()}};
    if (!P) return j;
    j["P"] = to_json(*P);
    json u0 = json::array();
    for (const auto& u : A.u0_cusps(*P))
        u0.push_back({{"index", u.index}, {"pi1", u.base}, {"pi2", u.pi2}, {"q1", to_json(u.q1)}, {"q2", to_json(u.q2)}});
    j["u0"] = u0;
    j["counts"]["u0"] = u0.size();
    auto idx = level_indices(*P);
    j["index_constants"] = {{"U0", to_string(idx.first)}, {"U1", to_string(idx.second)}};
    if (A.is_neat(*P)) {
        try {
            json cl = json::array();
            for (const auto& c : A.clasps(*P))
                cl.push_back({{"index", c.index}, {"u0", c.u0}, {"cusp", c.base}, {"q", to_json(c.q)}, {"xi", c.xi}});
            j["clasps"] = cl;
            j["counts"]["clasps"] = cl.size();
        } catch (const DomainError& e) {
            j["clasps"] = nullptr;
            j["clasps_note"] = e.what();
        }
    } else {
        j["clasps"] = nullptr;
        j["clasps_note"] = "level is not P-neat";
    }
    return j;
}

}  // namespace hmf
