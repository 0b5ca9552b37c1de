#include "hclab/experiment.hpp"

#include "hclab/detail/overloaded.hpp"
#include "hclab/equidist.hpp"
#include "hclab/errors.hpp"
#include "hclab/parallel.hpp"
#include "hclab/repcheck.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace hclab {

using nlohmann::json;

std::string spec_hash(const json& spec)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : spec.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return fmt::format("{:016x}", h);
}

namespace {

const std::set<std::string> top_level_keys = {"schema", "description", "task", "group", "a", "sign", "weight",
                                              "sets", "horizons", "characters", "x_samples", "element", "k_max",
                                              "n_max", "ul_n_max", "tolerance", "nodes", "scan_grid", "ul"};

const std::set<std::string> tasks = {"equidist", "reps", "hctest", "padic", "all"};

std::string window_range(const PAdicContext& ctx)
{
    return fmt::format("[{}, {}]", -static_cast<int>(ctx.window), ctx.precision);
}

class Builder {
public:
    std::vector<std::string> diags;
    ExperimentPlan plan;

    void error(const std::string& where, const std::string& what) { diags.push_back(where + ": " + what); }

    bool check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
    {
        if (!obj.is_object()) {
            error(where, "expected an object");
            return false;
        }
        bool ok = true;
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.count(key)) {
                error(where, "unknown field '" + key + "'");
                ok = false;
            }
        }
        return ok;
    }

    std::optional<Rational> rational(const json& v, const std::string& where)
    {
        try {
            if (v.is_string())
                return parse_rational(v.get<std::string>());
            if (v.is_number_integer())
                return Rational(v.get<long long>());
        } catch (const ParseError& e) {
            error(where, e.what());
            return std::nullopt;
        }
        error(where, "expected a rational number as a string such as \"1/2\"");
        return std::nullopt;
    }

    std::optional<long long> integer(const json& obj, const std::string& key, long long min, const std::string& where)
    {
        if (!obj.contains(key))
            return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            error(where + "." + key, "expected an integer");
            return std::nullopt;
        }
        const long long x = v.get<long long>();
        if (x < min) {
            error(where + "." + key, "must be at least " + std::to_string(min));
            return std::nullopt;
        }
        return x;
    }

    bool group(const json& g)
    {
        if (!g.is_object() || !g.contains("group") || !g.at("group").is_string()) {
            error("group", "expected an object with a \"group\" field");
            return false;
        }
        const std::string kind = g.at("group").get<std::string>();
        if (kind == "circle") {
            check_keys(g, {"group"}, "group");
            plan.group = CircleGroup{};
            return true;
        }
        if (kind == "finite") {
            if (!check_keys(g, {"group", "name"}, "group"))
                return false;
            if (!g.contains("name") || !g.at("name").is_string()) {
                error("group", "finite groups need a \"name\" such as \"V4\" or \"Z6\"");
                return false;
            }
            try {
                plan.group = finite_group_by_name(g.at("name").get<std::string>());
            } catch (const std::exception& e) {
                error("group.name", e.what());
                return false;
            }
            return true;
        }
        if (kind == "zp" || kind == "qp") {
            const bool windowed = kind == "qp";
            std::set<std::string> allowed = {"group", "p", "precision"};
            if (windowed)
                allowed.insert("window");
            if (!check_keys(g, allowed, "group"))
                return false;
            const auto p = integer(g, "p", 2, "group");
            const auto k = integer(g, "precision", 1, "group");
            const auto m = windowed ? integer(g, "window", 0, "group") : std::optional<long long>(0);
            if (!p || !k || !m) {
                error("group", "p-adic groups need integer \"p\" and \"precision\"" +
                                   std::string(windowed ? " and \"window\"" : ""));
                return false;
            }
            PAdicContext ctx{static_cast<unsigned>(*p), static_cast<unsigned>(*k), static_cast<unsigned>(*m)};
            try {
                ctx.validate();
            } catch (const std::exception& e) {
                error("group", e.what());
                return false;
            }
            plan.group = ctx;
            return true;
        }
        error("group.group", "unknown group family '" + kind + "'");
        return false;
    }

    std::optional<PAdicNumber> padic_number(const PAdicContext& ctx, const json& v, const std::string& where)
    {
        if (v.is_object()) {
            if (!check_keys(v, {"digits"}, where) || !v.contains("digits") || !v.at("digits").is_array()) {
                error(where, "expected {\"digits\": [...]} or a rational string");
                return std::nullopt;
            }
            std::vector<unsigned> digits;
            for (const json& d : v.at("digits")) {
                if (!d.is_number_integer() || d.get<long long>() < 0 || d.get<long long>() >= ctx.p) {
                    error(where, "digits must be integers in [0, p)");
                    return std::nullopt;
                }
                digits.push_back(d.get<unsigned>());
            }
            try {
                return PAdicNumber::from_digits(ctx, digits);
            } catch (const std::exception& e) {
                error(where, e.what());
                return std::nullopt;
            }
        }
        auto r = rational(v, where);
        if (!r)
            return std::nullopt;
        try {
            return PAdicNumber::from_rational(ctx, *r);
        } catch (const std::exception& e) {
            error(where, e.what());
            return std::nullopt;
        }
    }

    std::optional<Element> element(const json& v, const std::string& where)
    {
        return std::visit(
            detail::overloaded{
                [&](const FiniteGroup& g) -> std::optional<Element> {
                    if (!v.is_number_integer() || v.get<long long>() < 0 ||
                        static_cast<std::size_t>(v.get<long long>()) >= g.order()) {
                        error(where, "expected an element index in [0, " + std::to_string(g.order()) + ")");
                        return std::nullopt;
                    }
                    return Element{static_cast<FiniteElement>(v.get<long long>())};
                },
                [&](const CircleGroup&) -> std::optional<Element> {
                    if (v.is_object()) {
                        if (!check_keys(v, {"named", "float"}, where))
                            return std::nullopt;
                        if (v.contains("named") && v.at("named").is_string()) {
                            const std::string name = v.at("named").get<std::string>();
                            if (name == "golden")
                                return Element{CircleElement::from_double((std::sqrt(5.0) - 1.0) / 2.0)};
                            if (name == "sqrt2_minus_1")
                                return Element{CircleElement::from_double(std::numbers::sqrt2 - 1.0)};
                            if (name == "inv_pi")
                                return Element{CircleElement::from_double(std::numbers::inv_pi)};
                            error(where, "unknown named angle '" + name + "' (golden, sqrt2_minus_1, inv_pi)");
                            return std::nullopt;
                        }
                        if (v.contains("float")) {
                            const json& f = v.at("float");
                            if (f.is_number())
                                return Element{CircleElement::from_double(f.get<double>())};
                            if (f.is_string()) {
                                try {
                                    return Element{CircleElement::from_double(std::stod(f.get<std::string>()))};
                                } catch (const std::exception&) {
                                }
                            }
                            error(where, "\"float\" must be a number");
                            return std::nullopt;
                        }
                        error(where, "expected {\"named\": ...} or {\"float\": ...}");
                        return std::nullopt;
                    }
                    auto r = rational(v, where);
                    if (!r)
                        return std::nullopt;
                    return Element{CircleElement::from_rational(*r)};
                },
                [&](const PAdicContext& ctx) -> std::optional<Element> {
                    auto x = padic_number(ctx, v, where);
                    if (!x)
                        return std::nullopt;
                    return Element{*x};
                },
            },
            plan.group);
    }

    std::optional<IntervalSet> circle_set(const json& v, const std::string& where)
    {
        if (v.is_string()) {
            if (v == "full")
                return IntervalSet::full();
            if (v == "empty")
                return IntervalSet();
            error(where, "unknown set name");
            return std::nullopt;
        }
        if (v.is_object()) {
            if (!check_keys(v, {"point"}, where) || !v.contains("point"))
                return std::nullopt;
            auto x = rational(v.at("point"), where + ".point");
            if (!x)
                return std::nullopt;
            return IntervalSet::point(frac(*x));
        }
        if (!v.is_array()) {
            error(where, "expected a set literal");
            return std::nullopt;
        }
        // [[lo, hi], kind] or a list of literals
        if (v.size() == 2 && v[0].is_array() && v[1].is_string()) {
            if (v[0].size() != 2) {
                error(where, "interval needs two endpoints");
                return std::nullopt;
            }
            auto lo = rational(v[0][0], where + "[0][0]");
            auto hi = rational(v[0][1], where + "[0][1]");
            if (!lo || !hi)
                return std::nullopt;
            if (*lo < 0 || *lo > 1 || *hi < 0 || *hi > 1) {
                error(where, "endpoints must lie in [0, 1]");
                return std::nullopt;
            }
            const std::string kind = v[1].get<std::string>();
            bool lc = false, hc = false;
            if (kind == "closed")
                lc = hc = true;
            else if (kind == "half_open")
                lc = true;
            else if (kind == "left_open")
                hc = true;
            else if (kind != "open") {
                error(where, "interval kind must be open, closed, half_open or left_open");
                return std::nullopt;
            }
            return IntervalSet::interval(*lo, *hi, lc, hc);
        }
        IntervalSet out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto part = circle_set(v[i], where + "[" + std::to_string(i) + "]");
            if (!part)
                return std::nullopt;
            out = out.unite(*part);
        }
        return out;
    }

    std::optional<BorelSet> set_literal(const json& v, const std::string& where)
    {
        return std::visit(
            detail::overloaded{
                [&](const CircleGroup&) -> std::optional<BorelSet> {
                    auto s = circle_set(v, where);
                    if (!s)
                        return std::nullopt;
                    return BorelSet{*s};
                },
                [&](const PAdicContext& ctx) -> std::optional<BorelSet> {
                    if (v.is_string()) {
                        if (v == "full")
                            return BorelSet{BallSet::whole(ctx)};
                        if (v == "empty")
                            return BorelSet{BallSet(ctx)};
                    }
                    if (v.is_array()) {
                        BallSet out(ctx);
                        for (std::size_t i = 0; i < v.size(); ++i) {
                            auto part = set_literal(v[i], where + "[" + std::to_string(i) + "]");
                            if (!part)
                                return std::nullopt;
                            out = out.unite(std::get<BallSet>(*part));
                        }
                        return BorelSet{out};
                    }
                    if (!check_keys(v, {"center", "radius_exp"}, where) || !v.contains("center") ||
                        !v.contains("radius_exp") || !v.at("radius_exp").is_number_integer()) {
                        error(where, "expected {\"center\": ..., \"radius_exp\": j}");
                        return std::nullopt;
                    }
                    auto c = padic_number(ctx, v.at("center"), where + ".center");
                    if (!c)
                        return std::nullopt;
                    const long long j = v.at("radius_exp").get<long long>();
                    if (j < -static_cast<long long>(ctx.window) || j > static_cast<long long>(ctx.precision)) {
                        error(where, "radius_exp " + std::to_string(j) + " outside the window " + window_range(ctx));
                        return std::nullopt;
                    }
                    return BorelSet{BallSet::ball(*c, static_cast<int>(j))};
                },
                [&](const FiniteGroup& g) -> std::optional<BorelSet> {
                    if (v.is_string()) {
                        if (v == "full")
                            return BorelSet{FiniteSubset::whole(g.order())};
                        if (v == "empty")
                            return BorelSet{FiniteSubset(g.order())};
                    }
                    if (!check_keys(v, {"elements"}, where) || !v.contains("elements") ||
                        !v.at("elements").is_array()) {
                        error(where, "expected {\"elements\": [...]}");
                        return std::nullopt;
                    }
                    FiniteSubset s(g.order());
                    for (const json& x : v.at("elements")) {
                        if (!x.is_number_integer() || x.get<long long>() < 0 ||
                            static_cast<std::size_t>(x.get<long long>()) >= g.order()) {
                            error(where, "element index out of range");
                            return std::nullopt;
                        }
                        s.insert(x.get<std::size_t>());
                    }
                    return BorelSet{s};
                },
            },
            plan.group);
    }

    std::optional<Weight> weight(const json& v)
    {
        const std::string where = "weight";
        if (!v.is_object()) {
            error(where, "expected an object");
            return std::nullopt;
        }
        try {
            if (v.contains("constant")) {
                if (!check_keys(v, {"constant"}, where))
                    return std::nullopt;
                auto c = rational(v.at("constant"), where + ".constant");
                if (!c)
                    return std::nullopt;
                return Weight::constant(plan.group, *c);
            }
            return std::visit(
                detail::overloaded{
                    [&](const CircleGroup&) -> std::optional<Weight> {
                        if (v.contains("expression")) {
                            if (!check_keys(v, {"expression"}, where) || !v.at("expression").is_string()) {
                                error(where, "\"expression\" must be a string");
                                return std::nullopt;
                            }
                            return Weight::expression(Expression::parse(v.at("expression").get<std::string>()));
                        }
                        if (v.contains("step")) {
                            if (!check_keys(v, {"step"}, where) || !v.at("step").is_array()) {
                                error(where, "\"step\" must be a list of pieces");
                                return std::nullopt;
                            }
                            std::vector<StepPiece> pieces;
                            for (std::size_t i = 0; i < v.at("step").size(); ++i) {
                                const json& p = v.at("step")[i];
                                const std::string pw = where + ".step[" + std::to_string(i) + "]";
                                if (!check_keys(p, {"set", "value"}, pw) || !p.contains("set") || !p.contains("value")) {
                                    error(pw, "pieces need \"set\" and \"value\"");
                                    return std::nullopt;
                                }
                                auto s = circle_set(p.at("set"), pw + ".set");
                                auto val = rational(p.at("value"), pw + ".value");
                                if (!s || !val)
                                    return std::nullopt;
                                pieces.push_back({*s, to_double(*val), *val});
                            }
                            try {
                                return Weight::step(StepFunction(std::move(pieces)));
                            } catch (const std::invalid_argument& e) {
                                error(where, e.what());
                                return std::nullopt;
                            }
                        }
                        error(where, "circle weights take \"expression\", \"step\" or \"constant\"");
                        return std::nullopt;
                    },
                    [&](const PAdicContext& ctx) -> std::optional<Weight> {
                        if (!check_keys(v, {"level", "values", "default", "locally_constant"}, where))
                            return std::nullopt;
                        const auto level = v.contains("level") && v.at("level").is_number_integer()
                                               ? std::optional<long long>(v.at("level").get<long long>())
                                               : std::nullopt;
                        if (!level || !v.contains("values") || !v.at("values").is_object()) {
                            error(where, "p-adic weights need an integer \"level\" and a \"values\" object");
                            return std::nullopt;
                        }
                        const long long stored = *level + static_cast<long long>(ctx.window);
                        if (stored < 0 || *level > static_cast<long long>(ctx.precision)) {
                            error(where + ".level", "level " + std::to_string(*level) + " outside the window " +
                                                        window_range(ctx));
                            return std::nullopt;
                        }
                        const auto sl = static_cast<unsigned>(stored);
                        std::vector<std::optional<Rational>> values(ctx.power(sl));
                        std::optional<Rational> fallback;
                        if (v.contains("default")) {
                            fallback = rational(v.at("default"), where + ".default");
                            if (!fallback)
                                return std::nullopt;
                        }
                        for (const auto& [key, val] : v.at("values").items()) {
                            const std::string kw = where + ".values[\"" + key + "\"]";
                            auto x = padic_number(ctx, json(key), kw);
                            auto r = rational(val, kw);
                            if (!x || !r)
                                return std::nullopt;
                            auto& slot = values[x->residue_at(sl)];
                            if (slot && *slot != *r) {
                                error(kw, "two keys name the same coset with different values");
                                return std::nullopt;
                            }
                            slot = *r;
                        }
                        CosetTable t;
                        t.level = sl;
                        for (std::size_t r = 0; r < values.size(); ++r) {
                            if (!values[r] && !fallback) {
                                error(where, "no value for coset " +
                                                 PAdicNumber::from_residue(ctx, r).to_string() +
                                                 " and no \"default\"");
                                return std::nullopt;
                            }
                            t.values.push_back(values[r] ? *values[r] : *fallback);
                        }
                        if (v.contains("locally_constant")) {
                            if (!v.at("locally_constant").is_boolean()) {
                                error(where + ".locally_constant", "expected true or false");
                                return std::nullopt;
                            }
                            t.declared_locally_constant = v.at("locally_constant").get<bool>();
                        }
                        return Weight::coset_table(ctx, std::move(t));
                    },
                    [&](const FiniteGroup& g) -> std::optional<Weight> {
                        if (!check_keys(v, {"values"}, where) || !v.contains("values") || !v.at("values").is_array()) {
                            error(where, "finite weights need a \"values\" list");
                            return std::nullopt;
                        }
                        std::vector<Rational> values;
                        for (std::size_t i = 0; i < v.at("values").size(); ++i) {
                            auto r = rational(v.at("values")[i], where + ".values[" + std::to_string(i) + "]");
                            if (!r)
                                return std::nullopt;
                            values.push_back(*r);
                        }
                        if (values.size() != g.order()) {
                            error(where, "need one value per group element");
                            return std::nullopt;
                        }
                        return Weight::finite_table(g, std::move(values));
                    },
                },
                plan.group);
        } catch (const Error& e) {
            error(where, e.what());
        } catch (const std::invalid_argument& e) {
            error(where, e.what());
        }
        return std::nullopt;
    }

    void build(const json& spec, const std::string& task_override)
    {
        if (!spec.is_object()) {
            error("spec", "expected a JSON object");
            return;
        }
        check_keys(spec, top_level_keys, "spec");
        plan.source = spec;
        plan.hash = spec_hash(spec);
        if (spec.contains("schema") && spec.at("schema") != 1)
            error("schema", "only schema 1 is supported");

        plan.task = task_override;
        if (plan.task.empty()) {
            if (spec.contains("task") && spec.at("task").is_string())
                plan.task = spec.at("task").get<std::string>();
            else
                plan.task = "all";
        }
        if (!tasks.count(plan.task))
            error("task", "unknown task '" + plan.task + "'");

        if (!spec.contains("group")) {
            error("group", "missing");
            return;
        }
        if (!group(spec.at("group")))
            return;

        if (spec.contains("a"))
            plan.a = element(spec.at("a"), "a");
        if (spec.contains("weight"))
            plan.weight = weight(spec.at("weight"));
        if (spec.contains("sign")) {
            if (spec.at("sign") == 1 || spec.at("sign") == -1)
                plan.sign = spec.at("sign").get<int>();
            else
                error("sign", "must be 1 or -1");
        }
        if (spec.contains("sets")) {
            if (!spec.at("sets").is_array())
                error("sets", "expected a list");
            else
                for (std::size_t i = 0; i < spec.at("sets").size(); ++i) {
                    const json& s = spec.at("sets")[i];
                    const std::string where = "sets[" + std::to_string(i) + "]";
                    if (!check_keys(s, {"id", "set"}, where) || !s.contains("set"))
                        continue;
                    std::string id = s.contains("id") && s.at("id").is_string() ? s.at("id").get<std::string>()
                                                                                : "set" + std::to_string(i);
                    if (auto b = set_literal(s.at("set"), where + ".set"))
                        plan.sets.push_back({id, *b});
                }
        }
        auto int_list = [&](const std::string& key, long long min, std::vector<long long>& out) {
            if (!spec.contains(key))
                return;
            if (!spec.at(key).is_array()) {
                error(key, "expected a list of integers");
                return;
            }
            for (const json& x : spec.at(key)) {
                if (!x.is_number_integer() || x.get<long long>() < min) {
                    error(key, "entries must be integers >= " + std::to_string(min));
                    return;
                }
                out.push_back(x.get<long long>());
            }
        };
        int_list("horizons", 2, plan.horizons);
        int_list("characters", std::numeric_limits<long long>::min(), plan.characters);
        if (auto x = integer(spec, "x_samples", 1, "spec"))
            plan.x_samples = static_cast<std::size_t>(*x);
        if (auto x = integer(spec, "k_max", 1, "spec"))
            plan.k_max = *x;
        if (auto x = integer(spec, "n_max", 1, "spec"))
            plan.config.monotone_n_max = *x;
        if (auto x = integer(spec, "ul_n_max", 1, "spec"))
            plan.config.ul_n_max = *x;
        if (auto x = integer(spec, "scan_grid", 1, "spec"))
            plan.config.scan_grid = static_cast<std::size_t>(*x);
        if (auto x = integer(spec, "nodes", 2, "spec")) {
            if (*x % 2 != 0)
                error("nodes", "must be even");
            plan.config.quadrature_nodes = static_cast<std::size_t>(*x);
        }
        if (spec.contains("tolerance")) {
            if (!spec.at("tolerance").is_number() || !(spec.at("tolerance").get<double>() > 0.0))
                error("tolerance", "must be a positive number");
            else
                plan.config.log_tolerance = spec.at("tolerance").get<double>();
        }
        if (spec.contains("element")) {
            if (auto e = element(spec.at("element"), "element"); e && std::holds_alternative<FiniteElement>(*e))
                plan.element = std::get<FiniteElement>(*e);
            else if (!std::holds_alternative<FiniteGroup>(plan.group))
                error("element", "only finite groups take an element index");
        }
        if (spec.contains("ul")) {
            const auto* ctx = std::get_if<PAdicContext>(&plan.group);
            if (!ctx || !spec.at("ul").is_array()) {
                error("ul", "U/L queries are a list and need a p-adic group");
            } else {
                for (std::size_t i = 0; i < spec.at("ul").size(); ++i) {
                    const json& q = spec.at("ul")[i];
                    const std::string where = "ul[" + std::to_string(i) + "]";
                    if (!check_keys(q, {"n", "center"}, where))
                        continue;
                    auto n = integer(q, "n", 1, where);
                    if (!n) {
                        error(where, "needs an integer \"n\" >= 1");
                        continue;
                    }
                    auto c = q.contains("center") ? padic_number(*ctx, q.at("center"), where + ".center")
                                                  : std::optional<PAdicNumber>(PAdicNumber(*ctx));
                    if (c)
                        plan.ul_queries.push_back({*n, *c});
                }
            }
        }
        requirements(spec);
    }

    void requirements(const json& spec)
    {
        const bool circle = std::holds_alternative<CircleGroup>(plan.group);
        const bool finite = std::holds_alternative<FiniteGroup>(plan.group);
        const bool padic = std::holds_alternative<PAdicContext>(plan.group);
        const std::string& t = plan.task;
        if (t == "equidist") {
            if (!spec.contains("a"))
                error("a", "equidist needs the rotation element a");
            if (plan.horizons.empty() && !spec.contains("horizons"))
                error("horizons", "equidist needs a list of horizons N");
            if (!spec.contains("sets") && !spec.contains("characters"))
                error("sets", "equidist needs \"sets\" or \"characters\"");
        }
        if (spec.contains("characters") && !circle)
            error("characters", "characters are only available on the circle");
        if (t == "reps") {
            if (!finite && !circle)
                error("group", "reps needs a finite group or the circle");
            if (circle && !spec.contains("a"))
                error("a", "reps on the circle needs the element a");
        }
        if (t == "hctest" || t == "padic") {
            if (!spec.contains("weight"))
                error("weight", t + " needs a weight");
            if (!spec.contains("a"))
                error("a", t + " needs the translation element a");
        }
        if (t == "padic" && !padic)
            error("group", "padic needs a zp or qp group");
    }
};

} // namespace

std::vector<std::string> validate(const json& spec, const std::string& task)
{
    Builder b;
    b.build(spec, task);
    return b.diags;
}

ExperimentPlan make_plan(const json& spec, const std::string& task)
{
    Builder b;
    b.build(spec, task);
    if (!b.diags.empty()) {
        std::string msg;
        for (const std::string& d : b.diags)
            msg += d + "\n";
        throw ParseError(msg);
    }
    return std::move(b.plan);
}

void write_atomically(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out)
            throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

std::string csv_number(double v)
{
    return fmt::format("{:.17g}", v);
}

std::string element_string(const Element& x)
{
    return std::visit(detail::overloaded{
                          [](const FiniteElement& e) { return std::to_string(e); },
                          [](const CircleElement& c) {
                              return c.is_exact() ? to_string(*c.exact()) : fmt::format("{:.17g}", c.angle());
                          },
                          [](const PAdicNumber& p) { return p.to_string(); },
                      },
                      x);
}

json group_json(const GroupContext& g)
{
    return std::visit(detail::overloaded{
                          [](const FiniteGroup& f) { return json{{"group", "finite"}, {"name", f.name()}, {"order", f.order()}}; },
                          [](const CircleGroup&) { return json{{"group", "circle"}}; },
                          [](const PAdicContext& c) {
                              json j{{"group", c.is_zp() ? "zp" : "qp"}, {"p", c.p}, {"precision", c.precision}};
                              if (!c.is_zp())
                                  j["window"] = c.window;
                              return j;
                          },
                      },
                      g);
}

json log_mass_json(const LogMass& m)
{
    return json{{"value", number(m.value())},
                {"exact", "ln(" + to_string(m.product) + ")/" + m.denominator.str()},
                {"zero", m.is_zero()}};
}

json ul_json(const ULWitness& u)
{
    json upper = json::array(), lower = json::array();
    for (auto r : u.upper)
        upper.push_back(r);
    for (auto r : u.lower)
        lower.push_back(r);
    return json{{"n", u.n},
                {"center", u.center.to_string()},
                {"valuation", u.valuation ? json(*u.valuation) : json(nullptr)},
                {"radius", to_string(u.radius)},
                {"ball_level", u.ball_level},
                {"cosets", u.cosets},
                {"U_nonempty", u.upper_nonempty()},
                {"L_nonempty", u.lower_nonempty()},
                {"U_witnesses", upper},
                {"L_witnesses", lower}};
}

json header(const ExperimentPlan& plan, const std::string& task)
{
    return json{{"schema", 1}, {"spec_hash", plan.hash}, {"task", task}, {"group", group_json(plan.group)}};
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace

json to_json(const VerdictReport& r)
{
    json j;
    j["verdict"] = to_string(r.verdict);
    json rule{{"kind", to_string(r.rule)}};
    if (r.n)
        rule["n"] = *r.n;
    if (r.k)
        rule["k"] = *r.k;
    if (r.value)
        rule["value"] = number(*r.value);
    if (r.exact_value)
        rule["exact_value"] = *r.exact_value;
    j["fired_rule"] = rule;
    j["witness"] = r.witness;
    j["evidence"] = r.evidence;
    j["tests_run"] = r.tests_run;
    j["tolerances"] = json{{"log_integral", r.config.log_tolerance},
                           {"quadrature_nodes", r.config.quadrature_nodes},
                           {"monotone_n_max", r.config.monotone_n_max},
                           {"ul_n_max", r.config.ul_n_max},
                           {"scan_grid", r.config.scan_grid}};
    if (r.log_integral) {
        json li{{"value", number(r.log_integral->value)}, {"nodes", r.log_integral->nodes},
                {"consistency", number(r.log_integral->consistency)}};
        if (r.log_integral->exact)
            li["exact"] = log_mass_json(*r.log_integral->exact);
        j["log_integral"] = li;
    }
    if (r.scan) {
        j["monotone_scan"] = json{{"n", r.scan->n ? json(*r.scan->n) : json(nullptr)},
                                  {"steps", r.scan->trace.size()},
                                  {"evidence", r.scan->evidence}};
    }
    if (!r.cosets.empty()) {
        json cs = json::array();
        for (const CosetVerdict& c : r.cosets)
            cs.push_back(json{{"coset", c.problem.representative.to_string()},
                              {"radius_exp", c.problem.radius_exp},
                              {"context", group_json(c.problem.context)},
                              {"a", c.problem.a.to_string()},
                              {"report", to_json(c.report)}});
        j["cosets"] = cs;
    }
    return j;
}

namespace {

std::filesystem::path run_equidist(const ExperimentPlan& plan, const std::filesystem::path& dir)
{
    const OrbitSequence seq{plan.group, *plan.a, plan.sign};
    struct Job {
        std::string id;
        const BorelSet* set;
        std::optional<long long> k;
        long long n;
    };
    std::vector<Job> jobs;
    for (const NamedSet& s : plan.sets)
        for (long long n : plan.horizons)
            jobs.push_back({s.id, &s.set, std::nullopt, n});
    for (long long k : plan.characters)
        for (long long n : plan.horizons)
            jobs.push_back({"chi_" + std::to_string(k), nullptr, k, n});

    std::vector<double> xs;
    for (std::size_t i = 0; i < plan.x_samples; ++i)
        xs.push_back(static_cast<double>(i) / static_cast<double>(plan.x_samples));

    std::vector<std::string> rows(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job& job = jobs[i];
        if (job.set) {
            const SupDeviation d = sup_deviation(*job.set, seq, job.n);
            rows[i] = fmt::format("{},{},{},\n", job.n, job.id, csv_number(to_double(d.value)));
        } else {
            const auto& a = std::get<CircleElement>(*plan.a);
            const auto sweep = uniform_convergence_sweep(TestFunction::character(*job.k), a, {job.n}, xs);
            rows[i] = fmt::format("{},{},{},{}\n", job.n, job.id, csv_number(sweep[0].deviation),
                                  sweep[0].bound ? csv_number(*sweep[0].bound) : "");
        }
    });
    std::string csv = "N,set_id,sup_deviation,bound\n";
    for (const std::string& r : rows)
        csv += r;
    const auto path = dir / "equidist.csv";
    write_atomically(path, csv);
    return path;
}

std::filesystem::path run_reps(const ExperimentPlan& plan, const std::filesystem::path& dir)
{
    json j = header(plan, "reps");
    if (const auto* g = std::get_if<FiniteGroup>(&plan.group)) {
        json elems = json::array();
        for (FiniteElement a = 0; a < g->order(); ++a) {
            if (plan.element && *plan.element != a)
                continue;
            const FixedIrrepCertificate c = fixed_irrep_multiplicity(a, *g);
            elems.push_back(json{{"element", a},
                                 {"order", c.element_order},
                                 {"generates", g->generates(a)},
                                 {"multiplicity", c.multiplicity},
                                 {"verdict", c.verdict}});
        }
        j["elements"] = elems;
        j["cyclic"] = g->is_cyclic();
        j["noncyclic_equivalence"] = noncyclic_equivalence_check(*g);
    } else {
        const auto& a = std::get<CircleElement>(*plan.a);
        const auto k = circle_has_fixed_character(a, plan.k_max);
        j["a"] = element_string(*plan.a);
        j["exact"] = a.is_exact();
        j["k_max"] = plan.k_max;
        j["fixed_character"] = k ? json(*k) : json(nullptr);
    }
    const auto path = dir / "reps.json";
    write_atomically(path, dump(j));
    return path;
}

std::vector<std::filesystem::path> run_hctest(const ExperimentPlan& plan, const std::filesystem::path& dir)
{
    const VerdictReport r = verdict(*plan.weight, *plan.a, plan.config);
    json j = header(plan, "hctest");
    j["a"] = element_string(*plan.a);
    j["weight"] = plan.weight->describe();
    j["report"] = to_json(r);
    const auto vpath = dir / "verdict.json";
    write_atomically(vpath, dump(j));

    std::string csv = "n,min,max,exact_min,exact_max\n";
    if (r.scan)
        for (const ScanRow& row : r.scan->trace)
            csv += fmt::format("{},{},{},{},{}\n", row.n, csv_number(row.min), csv_number(row.max),
                               row.exact_min ? to_string(*row.exact_min) : "",
                               row.exact_max ? to_string(*row.exact_max) : "");
    const auto spath = dir / "scan_trace.csv";
    write_atomically(spath, csv);
    return {vpath, spath};
}

std::vector<std::filesystem::path> run_padic(const ExperimentPlan& plan, const std::filesystem::path& dir)
{
    const Weight& w = *plan.weight;
    const PAdicNumber& a = std::get<PAdicNumber>(*plan.a);
    const PAdicContext& ctx = a.context();
    json j = header(plan, "padic");
    j["a"] = a.to_string();
    j["valuation"] = a.valuation() ? json(*a.valuation()) : json("PrecisionCap");
    j["weight"] = w.describe();

    const auto k = is_locally_constant(w);
    j["locally_constant_level"] = k ? json(*k) : json(nullptr);
    if (ctx.is_zp()) {
        const auto frag = locally_constant_obstruction(w, a);
        j["obstruction"] = frag ? json{{"k", frag->k}, {"n", frag->n}, {"value", to_string(frag->value)},
                                       {"witness", ul_json(frag->witness)}}
                                : json(nullptr);
    }
    if (!a.is_zero()) {
        const CosetLogIntegrals cl = coset_log_integrals(w, a);
        json cs = json::array();
        for (const CosetLogIntegral& c : cl.cosets)
            cs.push_back(json{{"coset", c.representative.to_string()},
                              {"radius_exp", c.radius_exp},
                              {"mean", log_mass_json(c.mean)},
                              {"mass", log_mass_json(c.mass)},
                              {"flagged", !c.mean.is_zero()}});
        j["coset_log_integrals"] = json{{"cosets", cs}, {"total", log_mass_json(cl.total)},
                                        {"total_matches_log_integral", cl.total_matches}};
        if (ctx.is_zp() && ctx.modulus() <= 729) {
            json diagrams = json::array();
            const PAdicNumber origin(ctx);
            for (const DiagramCheck& d : {check_translate_diagram(w, a, origin),
                                          check_multiplication_diagram(w, a),
                                          check_restriction_diagram(w, a, origin)})
                diagrams.push_back(json{{"name", d.name}, {"basis_size", d.basis_size}, {"commutes", d.commutes()}});
            j["diagrams"] = diagrams;
        }
    }

    std::vector<UlQuery> queries = plan.ul_queries;
    if (queries.empty() && !a.is_zero())
        for (long long n = 1; n <= plan.config.ul_n_max; ++n)
            queries.push_back({n, PAdicNumber(ctx)});
    std::string csv = "n,center,valuation,radius,ball_level,cosets,U_nonempty,L_nonempty,U_witnesses,L_witnesses\n";
    auto join = [](const std::vector<std::uint64_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    for (const UlQuery& q : queries) {
        const ULWitness u = ul_sets(w, a, q.n, q.center);
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", u.n, u.center.to_string(),
                           u.valuation ? std::to_string(*u.valuation) : "PrecisionCap", to_string(u.radius),
                           u.ball_level, u.cosets, u.upper_nonempty() ? 1 : 0, u.lower_nonempty() ? 1 : 0,
                           join(u.upper), join(u.lower));
    }
    j["report"] = to_json(verdict(w, a, plan.config));

    const auto jpath = dir / "padic.json";
    const auto cpath = dir / "padic_ul.csv";
    write_atomically(jpath, dump(j));
    write_atomically(cpath, csv);
    return {jpath, cpath};
}

} // namespace

std::vector<std::filesystem::path> run(const ExperimentPlan& plan, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    const bool all = plan.task == "all";
    const bool padic = std::holds_alternative<PAdicContext>(plan.group);
    if (plan.task == "equidist" || (all && plan.a && !plan.horizons.empty() && (!plan.sets.empty() || !plan.characters.empty())))
        written.push_back(run_equidist(plan, out_dir));
    if (plan.task == "reps" || (all && (std::holds_alternative<FiniteGroup>(plan.group) ||
                                        (std::holds_alternative<CircleGroup>(plan.group) && plan.a))))
        written.push_back(run_reps(plan, out_dir));
    if (plan.task == "hctest" || (all && plan.weight && plan.a))
        for (auto& p : run_hctest(plan, out_dir))
            written.push_back(p);
    if (plan.task == "padic" || (all && padic && plan.weight && plan.a))
        for (auto& p : run_padic(plan, out_dir))
            written.push_back(p);
    return written;
}

} // namespace hclab
