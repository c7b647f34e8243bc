// SPDX-License-Identifier: MIT

#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vcnls/symmetry.hpp"

namespace vcnls::cli {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Reader {
public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) fail("expected an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end()) return;
        out = convert<T>(*it, key);
    }

    template <class T>
    void get(const char* key, std::optional<T>& out) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end()) return;
        if (it->is_null()) {
            out.reset();
        } else {
            out = convert<T>(*it, key);
        }
    }

    /// Nested object or nullptr when absent.
    const json* child(const char* key) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    std::string path(const char* key) const { return path_ + "." + key; }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.count(key)) fail("unknown key '" + key + "'");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(path_ + ": " + msg); }

private:
    template <class T>
    T convert(const json& v, const char* key) const {
        const auto bad = [&](const char* expected) {
            throw ConfigError(path_ + "." + key + ": expected " + expected);
        };
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) bad("a boolean");
            return v.get<bool>();
        } else if constexpr (std::is_same_v<T, int>) {
            if (!v.is_number_integer()) bad("an integer");
            return v.get<int>();
        } else if constexpr (std::is_same_v<T, std::size_t>) {
            if (!v.is_number_unsigned()) bad("a non-negative integer");
            return v.get<std::size_t>();
        } else if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) bad("a number");
            return v.get<double>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) bad("a string");
            return v.get<std::string>();
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            if (!v.is_array()) bad("an array of numbers");
            std::vector<double> out;
            for (const auto& e : v) {
                if (!e.is_number()) bad("an array of numbers");
                out.push_back(e.get<double>());
            }
            return out;
        } else {
            static_assert(sizeof(T) == 0, "unsupported config type");
        }
    }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool cond, const std::string& path, const std::string& msg) {
    if (!cond) throw ConfigError(path + ": " + msg);
}

void require_decreasing_positive(const std::vector<double>& v, const std::string& path, std::size_t min_len) {
    require(v.size() >= min_len, path, "needs at least " + std::to_string(min_len) + " entries");
    for (std::size_t i = 0; i < v.size(); ++i) {
        require(v[i] > 0.0 && std::isfinite(v[i]), path, "entries must be positive");
        if (i > 0) require(v[i] < v[i - 1], path, "entries must strictly decrease");
    }
}

GroupConfig parse_group(const json& j, const std::string& path) {
    Reader r(j, path);
    GroupConfig g;
    r.get("a", g.a);
    r.get("b", g.b);
    r.get("c", g.c);
    r.get("d", g.d);
    r.get("theta", g.theta);
    r.finish();
    try {
        (void)g.element();
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
    return g;
}

SolutionConfig parse_solution(const json& j, const std::string& path) {
    Reader r(j, path);
    SolutionConfig s;
    r.get("family", s.family);
    r.get("epsilon", s.epsilon);
    r.get("gamma", s.gamma);
    r.get("k1", s.k1);
    r.get("k2", s.k2);
    r.get("k3", s.k3);
    r.get("k4", s.k4);
    if (const json* g = r.child("group"); g && !g->is_null()) s.group = parse_group(*g, r.path("group"));
    r.finish();
    require(s.family == "stationary" || s.family == "truncated" || s.family == "transformed", path,
            "family must be stationary, truncated or transformed");
    require(s.epsilon == 1 || s.epsilon == -1, path, "epsilon must be +1 or -1");
    require(s.gamma != 0.0 && std::isfinite(s.gamma), path, "gamma must be non-zero (truncation needs gamma != 0)");
    require(s.family != "transformed" || s.group.has_value(), path, "transformed family needs a group");
    return s;
}

QuadratureConfig parse_quadrature(const json& j, const std::string& path) {
    Reader r(j, path);
    QuadratureConfig q;
    r.get("abs_tol", q.abs_tol);
    r.get("rel_tol", q.rel_tol);
    r.get("max_subdivisions", q.max_subdivisions);
    r.finish();
    require(q.abs_tol > 0 && q.rel_tol > 0 && q.max_subdivisions > 0, path,
            "tolerances and max_subdivisions must be positive");
    return q;
}

LieCheckConfig parse_lie(const json& j) {
    Reader r(j, "lie_check");
    LieCheckConfig c;
    r.get("jacobi", c.jacobi);
    r.finish();
    return c;
}

VerifySolutionConfig parse_verify(const json& j) {
    Reader r(j, "verify_solution");
    VerifySolutionConfig c;
    if (const json* s = r.child("solution")) c.solution = parse_solution(*s, r.path("solution"));
    r.get("h1", c.h1);
    r.get("h2", c.h2);
    if (const json* probes = r.child("probes")) {
        require(probes->is_array() && !probes->empty(), r.path("probes"), "expected a non-empty array");
        c.probes.clear();
        for (std::size_t i = 0; i < probes->size(); ++i) {
            Reader pr((*probes)[i], r.path("probes") + "[" + std::to_string(i) + "]");
            ProbePoint p;
            pr.get("x", p.x);
            pr.get("t", p.t);
            pr.finish();
            require(p.x > 0.0, r.path("probes"), "probe x must be positive");
            c.probes.push_back(p);
        }
    }
    r.get("spacings", c.spacings);
    r.get("dt_ratio", c.dt_ratio);
    r.get("order_min", c.order_min);
    r.get("order_max", c.order_max);
    r.finish();
    require_decreasing_positive(c.spacings, r.path("spacings"), 2);
    require(c.dt_ratio > 0.0, r.path("dt_ratio"), "must be positive");
    require(c.order_min < c.order_max, "verify_solution", "order_min must be below order_max");
    for (const auto& p : c.probes) {
        require(p.x - c.spacings.front() > 0.0, r.path("probes"),
                "coarsest stencil leaves x > 0 at probe x = " + std::to_string(p.x));
    }
    return c;
}

BlowupScanConfig parse_blowup(const json& j) {
    Reader r(j, "blowup_scan");
    BlowupScanConfig c;
    r.get("amplitude", c.amplitude);
    r.get("offset_c", c.offset_c);
    r.get("p", c.p);
    r.get("eps", c.eps);
    r.get("slope_rel_tol", c.slope_rel_tol);
    r.get("linf_slope_tol", c.linf_slope_tol);
    r.get("argmax_tol", c.argmax_tol);
    if (const json* q = r.child("quadrature")) c.quadrature = parse_quadrature(*q, r.path("quadrature"));
    r.finish();
    require(!c.p.empty(), r.path("p"), "needs at least one exponent");
    for (double p : c.p) require(p > 2.0, r.path("p"), "every p must exceed 2 (the L_p tail diverges for p <= 2)");
    require_decreasing_positive(c.eps, r.path("eps"), 3);
    require(c.eps.front() / c.eps.back() >= 100.0, r.path("eps"), "ladder must span at least two decades");
    require(c.amplitude > 0.0 && c.offset_c > 0.0, "blowup_scan", "amplitude and offset_c must be positive");
    return c;
}

DistributionConfig parse_distribution(const json& j) {
    Reader r(j, "distribution_test");
    DistributionConfig c;
    r.get("p", c.p);
    r.get("amplitude", c.amplitude);
    r.get("offset_c", c.offset_c);
    if (const json* bumps = r.child("bumps")) {
        require(bumps->is_array() && !bumps->empty(), r.path("bumps"), "expected a non-empty array");
        c.bumps.clear();
        for (std::size_t i = 0; i < bumps->size(); ++i) {
            Reader br((*bumps)[i], r.path("bumps") + "[" + std::to_string(i) + "]");
            BumpConfig b;
            br.get("center", b.center);
            br.get("radius", b.radius);
            br.get("peak", b.peak);
            br.finish();
            require(b.radius > 0.0, r.path("bumps"), "radius must be positive");
            c.bumps.push_back(b);
        }
    }
    r.get("eps", c.eps);
    r.get("final_rel_tol", c.final_rel_tol);
    r.get("decay_ratio", c.decay_ratio);
    if (const json* q = r.child("quadrature")) c.quadrature = parse_quadrature(*q, r.path("quadrature"));
    r.finish();
    require(c.p > 2.0, r.path("p"), "p must exceed 2");
    require_decreasing_positive(c.eps, r.path("eps"), 2);
    require(c.amplitude > 0.0 && c.offset_c > 0.0, "distribution_test", "amplitude and offset_c must be positive");
    return c;
}

SimulateConfig parse_simulate(const json& j) {
    Reader r(j, "simulate");
    SimulateConfig c;
    if (const json* s = r.child("solution")) c.solution = parse_solution(*s, r.path("solution"));
    r.get("x_min", c.x_min);
    r.get("x_max", c.x_max);
    r.get("spacing", c.spacing);
    r.get("dt", c.dt);
    r.get("t_final", c.t_final);
    r.get("t_final_fraction", c.t_final_fraction);
    r.get("norm_track", c.norm_track);
    r.get("record_every", c.record_every);
    r.get("snapshot_times", c.snapshot_times);
    r.get("error_tol", c.error_tol);
    r.get("norm_rel_tol", c.norm_rel_tol);
    r.finish();
    require(c.x_min > 0.0 && c.x_min < c.x_max, "simulate", "need 0 < x_min < x_max");
    require(c.spacing > 0.0 && c.dt > 0.0, "simulate", "spacing and dt must be positive");
    require(c.t_final >= 0.0, r.path("t_final"), "must be >= 0");
    require(c.record_every > 0, r.path("record_every"), "must be >= 1");
    if (c.t_final_fraction) {
        require(*c.t_final_fraction >= 0.0 && *c.t_final_fraction < 1.0, r.path("t_final_fraction"),
                "must lie in [0, 1)");
        require(std::isfinite(c.solution.singular_time()), r.path("t_final_fraction"),
                "solution has no finite singular time");
    }
    const double t_final = c.resolved_t_final();
    for (double t : c.snapshot_times) {
        require(t >= 0.0 && t <= t_final, r.path("snapshot_times"), "times must lie in [0, t_final]");
    }
    for (double p : c.norm_track) require(p > 0.0, r.path("norm_track"), "exponents must be positive");
    return c;
}

json group_json(const GroupConfig& g) {
    return {{"a", g.a}, {"b", g.b}, {"c", g.c}, {"d", g.d ? json(*g.d) : json(nullptr)}, {"theta", g.theta}};
}

json solution_json(const SolutionConfig& s) {
    return {{"family", s.family}, {"epsilon", s.epsilon}, {"gamma", s.gamma}, {"k1", s.k1},
            {"k2", s.k2},         {"k3", s.k3},           {"k4", s.k4},
            {"group", s.group ? group_json(*s.group) : json(nullptr)}};
}

json quadrature_json(const QuadratureConfig& q) {
    return {{"abs_tol", q.abs_tol}, {"rel_tol", q.rel_tol}, {"max_subdivisions", q.max_subdivisions}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

GroupElement GroupConfig::element() const {
    if (d) return GroupElement(a, b, c, *d, theta);
    return GroupElement::from_abc(a, b, c, theta);
}

SolutionSpec SolutionConfig::build() const {
    const auto constants = truncation_constants(epsilon == 1 ? Sign::Plus : Sign::Minus, gamma);
    if (family == "truncated") return SolutionSpec::truncated(constants, k1, k2, k3, k4);
    auto stationary = SolutionSpec::stationary(constants, k1, k2, k3);
    if (family == "transformed") return SolutionSpec::transformed(group.value().element(), stationary);
    return stationary;
}

double SolutionConfig::singular_time() const {
    if (family == "truncated") {
        return k4 < 0.0 ? -k1 / k4 : std::numeric_limits<double>::infinity();
    }
    if (family == "transformed" && group && group->b < 0.0 && group->a > 0.0) {
        return -group->a / group->b;
    }
    return std::numeric_limits<double>::infinity();
}

BumpFunction BumpConfig::bump() const {
    return {center, radius, peak * std::exp(1.0)};
}

double SimulateConfig::resolved_t_final() const {
    return t_final_fraction ? *t_final_fraction * solution.singular_time() : t_final;
}

ExperimentConfig parse_config(const json& doc) {
    Reader r(doc, "config");
    ExperimentConfig c;
    if (const json* s = r.child("lie_check")) c.lie_check = parse_lie(*s);
    if (const json* s = r.child("verify_solution")) c.verify_solution = parse_verify(*s);
    if (const json* s = r.child("blowup_scan")) c.blowup_scan = parse_blowup(*s);
    if (const json* s = r.child("distribution_test")) c.distribution_test = parse_distribution(*s);
    if (const json* s = r.child("simulate")) c.simulate = parse_simulate(*s);
    r.finish();
    return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

json to_json(const ExperimentConfig& c) {
    json probes = json::array();
    for (const auto& p : c.verify_solution.probes) probes.push_back({{"x", p.x}, {"t", p.t}});
    json bumps = json::array();
    for (const auto& b : c.distribution_test.bumps) {
        bumps.push_back({{"center", b.center}, {"radius", b.radius}, {"peak", b.peak}});
    }
    const auto& v = c.verify_solution;
    const auto& bs = c.blowup_scan;
    const auto& d = c.distribution_test;
    const auto& s = c.simulate;
    return {
        {"lie_check", {{"jacobi", c.lie_check.jacobi}}},
        {"verify_solution",
         {{"solution", solution_json(v.solution)},
          {"h1", optional_json(v.h1)},
          {"h2", optional_json(v.h2)},
          {"probes", probes},
          {"spacings", v.spacings},
          {"dt_ratio", v.dt_ratio},
          {"order_min", v.order_min},
          {"order_max", v.order_max}}},
        {"blowup_scan",
         {{"amplitude", bs.amplitude},
          {"offset_c", bs.offset_c},
          {"p", bs.p},
          {"eps", bs.eps},
          {"slope_rel_tol", bs.slope_rel_tol},
          {"linf_slope_tol", bs.linf_slope_tol},
          {"argmax_tol", bs.argmax_tol},
          {"quadrature", quadrature_json(bs.quadrature)}}},
        {"distribution_test",
         {{"p", d.p},
          {"amplitude", d.amplitude},
          {"offset_c", d.offset_c},
          {"bumps", bumps},
          {"eps", d.eps},
          {"final_rel_tol", d.final_rel_tol},
          {"decay_ratio", d.decay_ratio},
          {"quadrature", quadrature_json(d.quadrature)}}},
        {"simulate",
         {{"solution", solution_json(s.solution)},
          {"x_min", s.x_min},
          {"x_max", s.x_max},
          {"spacing", s.spacing},
          {"dt", s.dt},
          {"t_final", s.t_final},
          {"t_final_fraction", optional_json(s.t_final_fraction)},
          {"norm_track", s.norm_track},
          {"record_every", s.record_every},
          {"snapshot_times", s.snapshot_times},
          {"error_tol", s.error_tol},
          {"norm_rel_tol", s.norm_rel_tol}}},
    };
}

}  // namespace vcnls::cli
