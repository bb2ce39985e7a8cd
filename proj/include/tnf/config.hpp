#pragma once

#include "mono_fn.hpp"
#include "tnorm.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tnf {

enum class Backend { Exact, Float };

inline const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

struct Options {
    int grid = 101;
    std::optional<double> tol;
    Backend backend = Backend::Float;

    bool operator==(const Options&) const = default;
};

struct Config {
    MonoFn<Rational> f;
    TNorm<Rational> F = TNorm<Rational>::min();
    Options options;

    bool operator==(const Config& o) const { return f == o.f && F == o.F && options == o.options; }
};

// Schema or value error, located by a JSON pointer into the document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error("config error at " + (where.empty() ? std::string("/") : where) + ": " + what),
          where_(where) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

namespace config_detail {

using json = nlohmann::json;

inline const json& field(const json& j, const std::string& at, const char* key) {
    if (!j.is_object()) throw ConfigError(at, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(at, std::string("missing key '") + key + "'");
    return *it;
}

inline void only_keys(const json& j, const std::string& at, std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) throw ConfigError(at + "/" + it.key(), "unknown key");
    }
}

inline Rational number(const json& j, const std::string& at) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_number()) return rational_from_double(j.get<double>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(at, e.what());
    }
    throw ConfigError(at, "expected a number or a numeric string");
}

// Exact text: a terminating decimal when there is one, p/q otherwise.
inline std::string text(const Rational& q) {
    mpz_class den = q.get_den(), rest = den;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) rest /= 2, ++twos;
    while (rest % 5 == 0) rest /= 5, ++fives;
    if (rest != 1) return q.get_str();
    int k = std::max(twos, fives);
    if (k == 0) return q.get_num().get_str();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(k));
    mpz_class n = q.get_num() * (scale / den);
    bool neg = n < 0;
    if (neg) n = -n;
    std::string digits = n.get_str();
    if (digits.size() <= static_cast<std::size_t>(k)) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    return (neg ? "-" : "") + digits;
}

inline AnalyticForm<Rational> parse_form(const json& j, const std::string& at) {
    only_keys(j, at, {"kind", "params"});
    const auto& kind = field(j, at, "kind");
    const auto& params = field(j, at, "params");
    if (!params.is_array()) throw ConfigError(at + "/params", "expected an array");
    auto p = [&](std::size_t i) { return number(params[i], at + "/params/" + std::to_string(i)); };
    std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "linear") {
        if (params.size() != 2) throw ConfigError(at + "/params", "linear takes [slope, intercept]");
        return AnalyticForm<Rational>::linear(p(0), p(1));
    }
    if (k == "exponential") {
        if (params.size() != 3) throw ConfigError(at + "/params", "exponential takes [offset, scale, rate]");
        return AnalyticForm<Rational>::exponential(p(0), p(1), p(2));
    }
    throw ConfigError(at + "/kind", "unknown form kind (linear, exponential)");
}

inline MonoFn<Rational> parse_generator(const json& j, const std::string& at) {
    only_keys(j, at, {"pieces", "value_at_one"});
    const auto& ps = field(j, at, "pieces");
    if (!ps.is_array() || ps.empty()) throw ConfigError(at + "/pieces", "expected a non-empty array");
    std::vector<Piece<Rational>> pieces;
    bool linear = true;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::string pa = at + "/pieces/" + std::to_string(i);
        only_keys(ps[i], pa, {"left", "form", "value_at_left"});
        auto form = parse_form(field(ps[i], pa, "form"), pa + "/form");
        linear = linear && form.kind == FormKind::Linear;
        pieces.push_back({number(field(ps[i], pa, "left"), pa + "/left"), form,
                          number(field(ps[i], pa, "value_at_left"), pa + "/value_at_left")});
    }
    auto one = number(field(j, at, "value_at_one"), at + "/value_at_one");
    try {
        // exponential pieces are checked in floating point
        if (!linear) {
            std::vector<Piece<double>> dp;
            for (const auto& p : pieces) dp.push_back({to_double(p.left), p.form.cast<double>(), to_double(p.value_at_left)});
            (void)MonoFn<double>(dp, to_double(one));
            return MonoFn<Rational>(std::move(pieces), one, false);
        }
        return MonoFn<Rational>(std::move(pieces), one);
    } catch (const GeneratorError& e) {
        throw ConfigError(at, e.what());
    } catch (const DomainError& e) {
        throw ConfigError(at, e.what());
    }
}

inline NodeKind node_kind(const json& j, const std::string& at) {
    std::string k = j.is_string() ? j.get<std::string>() : "";
    for (auto n : {NodeKind::Min, NodeKind::Product, NodeKind::Lukasiewicz, NodeKind::NilpotentMin,
                   NodeKind::Scaled, NodeKind::Zero, NodeKind::OrdinalSum, NodeKind::Underline})
        if (k == node_name(n)) return n;
    throw ConfigError(at, "unknown t-norm kind '" + k + "'");
}

inline TNorm<Rational> parse_tnorm(const json& j, const std::string& at) {
    using T = TNorm<Rational>;
    auto kind = node_kind(field(j, at, "kind"), at + "/kind");
    try {
        switch (kind) {
        case NodeKind::Scaled:
            only_keys(j, at, {"kind", "lambda", "inner"});
            return T::scaled(number(field(j, at, "lambda"), at + "/lambda"),
                             parse_tnorm(field(j, at, "inner"), at + "/inner"));
        case NodeKind::Underline:
            only_keys(j, at, {"kind", "inner"});
            return T::underline(parse_tnorm(field(j, at, "inner"), at + "/inner"));
        case NodeKind::OrdinalSum: {
            only_keys(j, at, {"kind", "semantics", "summands"});
            const auto& sem = field(j, at, "semantics");
            SumSemantics s;
            if (sem == "closed") s = SumSemantics::ClosedSquare;
            else if (sem == "half_open") s = SumSemantics::HalfOpen;
            else throw ConfigError(at + "/semantics", "expected 'closed' or 'half_open'");
            const auto& ss = field(j, at, "summands");
            if (!ss.is_array()) throw ConfigError(at + "/summands", "expected an array");
            std::vector<T::SummandSpec> specs;
            for (std::size_t i = 0; i < ss.size(); ++i) {
                std::string sa = at + "/summands/" + std::to_string(i);
                only_keys(ss[i], sa, {"a", "b", "child", "role"});
                ChildKind role = ChildKind::TNorm;
                if (ss[i].contains("role")) {
                    const auto& r = ss[i]["role"];
                    if (r == "tsubnorm") role = ChildKind::TSubnorm;
                    else if (r != "tnorm") throw ConfigError(sa + "/role", "expected 'tnorm' or 'tsubnorm'");
                }
                specs.push_back({number(field(ss[i], sa, "a"), sa + "/a"), number(field(ss[i], sa, "b"), sa + "/b"),
                                 parse_tnorm(field(ss[i], sa, "child"), sa + "/child"), role});
            }
            return T::ordinal_sum(s, specs);
        }
        default:
            only_keys(j, at, {"kind"});
            return T::leaf(kind);
        }
    } catch (const TNormError& e) {
        throw ConfigError(at, e.what());
    }
}

inline Options parse_options(const json& j, const std::string& at) {
    Options o;
    only_keys(j, at, {"grid", "tol", "backend"});
    if (j.contains("grid")) {
        if (!j["grid"].is_number_integer() || j["grid"].get<long>() < 2)
            throw ConfigError(at + "/grid", "expected an integer >= 2");
        o.grid = j["grid"].get<int>();
    }
    if (j.contains("tol")) {
        if (!j["tol"].is_number() || j["tol"].get<double>() < 0)
            throw ConfigError(at + "/tol", "expected a non-negative number");
        o.tol = j["tol"].get<double>();
    }
    if (j.contains("backend")) {
        if (j["backend"] == "exact") o.backend = Backend::Exact;
        else if (j["backend"] == "float") o.backend = Backend::Float;
        else throw ConfigError(at + "/backend", "expected 'exact' or 'float'");
    }
    return o;
}

inline json form_json(const AnalyticForm<Rational>& f) {
    if (f.kind == FormKind::Linear) return {{"kind", "linear"}, {"params", {text(f.p0), text(f.p1)}}};
    return {{"kind", "exponential"}, {"params", {text(f.p0), text(f.p1), text(f.p2)}}};
}

inline json tnorm_json(const TNorm<Rational>& F) {
    json j{{"kind", node_name(F.kind())}};
    switch (F.kind()) {
    case NodeKind::Scaled:
        j["lambda"] = text(F.lambda());
        j["inner"] = tnorm_json(F.inner());
        break;
    case NodeKind::Underline: j["inner"] = tnorm_json(F.inner()); break;
    case NodeKind::OrdinalSum: {
        j["semantics"] = F.semantics() == SumSemantics::ClosedSquare ? "closed" : "half_open";
        json ss = json::array();
        for (const auto& s : F.summands())
            ss.push_back({{"a", text(s.a)},
                          {"b", text(s.b)},
                          {"role", s.kind == ChildKind::TNorm ? "tnorm" : "tsubnorm"},
                          {"child", tnorm_json(*s.child)}});
        j["summands"] = ss;
        break;
    }
    default: break;
    }
    return j;
}

} // namespace config_detail

inline Config parse_config(const nlohmann::json& j) {
    using namespace config_detail;
    if (!j.is_object()) throw ConfigError("", "expected an object");
    only_keys(j, "", {"generator", "tnorm", "options"});
    Config c;
    c.f = parse_generator(field(j, "", "generator"), "/generator");
    c.F = parse_tnorm(field(j, "", "tnorm"), "/tnorm");
    if (j.contains("options")) c.options = parse_options(j["options"], "/options");
    return c;
}

inline Config parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline nlohmann::json to_json(const Config& c) {
    using namespace config_detail;
    json pieces = json::array();
    for (const auto& p : c.f.pieces())
        pieces.push_back({{"left", text(p.left)}, {"form", form_json(p.form)}, {"value_at_left", text(p.value_at_left)}});
    json opts{{"grid", c.options.grid}, {"backend", backend_name(c.options.backend)}};
    if (c.options.tol) opts["tol"] = *c.options.tol;
    return {{"generator", {{"pieces", pieces}, {"value_at_one", text(c.f.value_at_one())}}},
            {"tnorm", tnorm_json(c.F)},
            {"options", opts}};
}

} // namespace tnf
