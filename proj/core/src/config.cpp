#include "combdrive/config.hpp"

#include "combdrive/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace combdrive {

using nlohmann::json;

namespace {

json cutoff_list(const std::vector<CutoffVariant> &v) {
    json a = json::array();
    for (auto c : v)
        a.push_back(to_string(c));
    return a;
}

json to_tree(const Config &c) {
    const auto &p = c.params;
    const auto &r = c.refine;
    const auto &s = c.sweep;
    return {
        {"params",
         {{"zeta", p.zeta}, {"L", p.L}, {"l", p.l}, {"alpha", p.alpha}, {"n", p.n}}},
        {"mesh",
         {{"zeta_cells", r.zeta_cells},
          {"gap_cells", r.gap_cells},
          {"middle_cells", r.middle_cells},
          {"zeta_grading", r.zeta_grading},
          {"middle_grading", r.middle_grading},
          {"corner_cell", r.corner_cell},
          {"subdivide", r.subdivide},
          {"node_budget", c.node_budget}}},
        {"solver",
         {{"tol", c.solver.tol},
          {"max_iter", c.solver.max_iter},
          {"precond", to_string(c.solver.precond)},
          {"threads", c.solver.threads}}},
        {"cutoff", {{"variant", to_string(c.cutoff)}, {"margin", c.cutoff_margin}}},
        {"physics", {{"epsilon0", c.physics.epsilon0}, {"V", c.physics.V}}},
        {"diagnostics", {{"quadrature", c.quadrature}, {"boundary_force", c.boundary_force}}},
        {"sweep",
         {{"alphas", s.alphas},
          {"n_values", s.n_values},
          {"levels", s.levels},
          {"cutoffs", cutoff_list(s.cutoffs)},
          {"workers", s.workers},
          {"record_walltime", s.record_walltime},
          {"study",
           {{"enabled", s.study.enabled},
            {"n", s.study.n},
            {"alpha", s.study.alpha},
            {"levels", s.study.levels},
            {"cutoffs", cutoff_list(s.study.cutoffs)}}}}},
    };
}

std::string kind_name(const json &v) {
    switch (v.type()) {
    case json::value_t::boolean: return "boolean";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    case json::value_t::number_float: return "number";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    default: return "null";
    }
}

bool same_kind(const json &schema, const json &v) {
    if (schema.is_number_float())
        return v.is_number();
    if (schema.is_number_integer())
        return v.is_number_integer();
    return kind_name(schema) == kind_name(v);
}

// Checks `v` against the shape of `schema` (the serialized defaults).
void check_shape(const json &schema, const json &v, const std::string &path,
                 std::vector<std::string> &errors) {
    if (schema.is_object()) {
        if (!v.is_object()) {
            errors.push_back(path + ": expected object, got " + kind_name(v));
            return;
        }
        for (const auto &[key, val] : v.items()) {
            const std::string sub = path.empty() ? key : path + "." + key;
            if (!schema.contains(key))
                errors.push_back(sub + ": unknown key");
            else
                check_shape(schema[key], val, sub, errors);
        }
        return;
    }
    if (schema.is_array()) {
        if (!v.is_array()) {
            errors.push_back(path + ": expected array, got " + kind_name(v));
            return;
        }
        if (schema.empty())
            return;
        for (std::size_t i = 0; i < v.size(); ++i)
            check_shape(schema[0], v[i], path + "[" + std::to_string(i) + "]", errors);
        return;
    }
    if (!same_kind(schema, v))
        errors.push_back(path + ": expected " + kind_name(schema) + ", got " + kind_name(v));
}

void merge(json &into, const json &from) {
    for (const auto &[key, val] : from.items()) {
        if (val.is_object() && into[key].is_object())
            merge(into[key], val);
        else
            into[key] = val;
    }
}

void apply_override(json &root, const std::string &item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ValidationError("override '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq), text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
        value = text;
    json *node = &root;
    std::size_t start = 0;
    for (;;) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (part.empty())
            throw ValidationError("override key '" + key + "' is malformed");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        json &next = (*node)[part];
        if (next.is_null())
            next = json::object();
        if (!next.is_object())
            throw ValidationError("override key '" + key + "' goes through a non-object");
        node = &next;
        start = dot + 1;
    }
}

std::vector<CutoffVariant> cutoffs_from(const json &a) {
    std::vector<CutoffVariant> out;
    for (const auto &v : a)
        out.push_back(cutoff_variant_from_string(v.get<std::string>()));
    return out;
}

Config from_tree(const json &t) {
    Config c;
    const auto &p = t.at("params");
    if (p.at("zeta").size() != 4)
        throw ValidationError("params.zeta must have 4 entries");
    if (p.at("l").size() != 3)
        throw ValidationError("params.l must have 3 entries");
    c.params.zeta = p.at("zeta").get<std::array<double, 4>>();
    c.params.l = p.at("l").get<std::array<double, 3>>();
    c.params.L = p.at("L").get<double>();
    c.params.alpha = p.at("alpha").get<double>();
    c.params.n = p.at("n").get<int>();

    const auto &m = t.at("mesh");
    c.refine.zeta_cells = m.at("zeta_cells").get<int>();
    c.refine.gap_cells = m.at("gap_cells").get<int>();
    c.refine.middle_cells = m.at("middle_cells").get<int>();
    c.refine.zeta_grading = m.at("zeta_grading").get<double>();
    c.refine.middle_grading = m.at("middle_grading").get<double>();
    c.refine.corner_cell = m.at("corner_cell").get<double>();
    c.refine.subdivide = m.at("subdivide").get<int>();
    if (m.at("node_budget").get<long long>() < 1)
        throw ValidationError("mesh.node_budget must be >= 1");
    c.node_budget = m.at("node_budget").get<std::size_t>();

    const auto &s = t.at("solver");
    c.solver.tol = s.at("tol").get<double>();
    c.solver.max_iter = s.at("max_iter").get<int>();
    c.solver.precond = preconditioner_from_string(s.at("precond").get<std::string>());
    c.solver.threads = s.at("threads").get<int>();

    c.cutoff = cutoff_variant_from_string(t.at("cutoff").at("variant").get<std::string>());
    c.cutoff_margin = t.at("cutoff").at("margin").get<double>();
    c.physics.epsilon0 = t.at("physics").at("epsilon0").get<double>();
    c.physics.V = t.at("physics").at("V").get<double>();
    c.quadrature = t.at("diagnostics").at("quadrature").get<int>();
    c.boundary_force = t.at("diagnostics").at("boundary_force").get<bool>();

    const auto &w = t.at("sweep");
    c.sweep.alphas = w.at("alphas").get<std::vector<double>>();
    c.sweep.n_values = w.at("n_values").get<std::vector<int>>();
    c.sweep.levels = w.at("levels").get<std::vector<int>>();
    c.sweep.cutoffs = cutoffs_from(w.at("cutoffs"));
    c.sweep.workers = w.at("workers").get<int>();
    c.sweep.record_walltime = w.at("record_walltime").get<bool>();
    const auto &st = w.at("study");
    c.sweep.study.enabled = st.at("enabled").get<bool>();
    c.sweep.study.n = st.at("n").get<int>();
    c.sweep.study.alpha = st.at("alpha").get<double>();
    c.sweep.study.levels = st.at("levels").get<std::vector<int>>();
    c.sweep.study.cutoffs = cutoffs_from(st.at("cutoffs"));
    return c;
}

bool strictly_increasing(const std::vector<int> &v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1])
            return false;
    return true;
}

} // namespace

std::vector<std::string> validate(const Config &c) {
    std::vector<std::string> out = validate(c.params);
    auto check = [&](bool ok, const std::string &msg) {
        if (!ok)
            out.push_back(msg);
    };
    const auto &r = c.refine;
    check(r.zeta_cells >= 1 && r.gap_cells >= 1 && r.middle_cells >= 1,
          "mesh cell counts must be >= 1");
    check(r.subdivide >= 1, "mesh.subdivide must be >= 1");
    check(r.zeta_grading >= 1.0 && r.middle_grading >= 1.0, "mesh gradings must be >= 1");
    check(r.corner_cell >= 0.0, "mesh.corner_cell must be >= 0");
    check(c.solver.tol > 0.0 && c.solver.tol < 1.0, "solver.tol must lie in (0, 1)");
    check(c.solver.max_iter >= 1, "solver.max_iter must be >= 1");
    check(c.solver.threads >= 1, "solver.threads must be >= 1");
    check(c.cutoff_margin > 0.0 && c.cutoff_margin <= 1.0, "cutoff.margin must lie in (0, 1]");
    check(c.physics.epsilon0 > 0.0, "physics.epsilon0 must be > 0");
    check(c.quadrature >= 1 && c.quadrature <= 5, "diagnostics.quadrature must be 1..5");

    const auto &s = c.sweep;
    check(!s.alphas.empty(), "sweep.alphas must not be empty");
    check(s.n_values.size() >= 3, "sweep.n_values needs at least 3 entries");
    check(strictly_increasing(s.n_values), "sweep.n_values must be strictly increasing");
    if (!s.n_values.empty() && s.n_values.front() >= 1)
        for (int n : s.n_values) {
            const int q = n / s.n_values.front();
            check(n % s.n_values.front() == 0 && (q & (q - 1)) == 0,
                  "sweep.n_values must be n0 times powers of 2 (got " + std::to_string(n) + ")");
        }
    check(!s.levels.empty() && strictly_increasing(s.levels) && s.levels.front() >= 1,
          "sweep.levels must be positive and strictly increasing");
    check(!s.cutoffs.empty(), "sweep.cutoffs must not be empty");
    check(s.workers >= 1, "sweep.workers must be >= 1");
    if (s.study.enabled) {
        check(s.study.n >= 1, "sweep.study.n must be >= 1");
        check(s.study.levels.size() >= 3 && strictly_increasing(s.study.levels) &&
                  s.study.levels.front() >= 1,
              "sweep.study.levels needs 3 positive increasing entries");
        check(!s.study.cutoffs.empty(), "sweep.study.cutoffs must not be empty");
    }
    for (double a : s.alphas) {
        CombParams q = c.params;
        q.alpha = a;
        for (int n : s.n_values) {
            q.n = n;
            for (const auto &v : validate(q))
                out.push_back("sweep case alpha=" + std::to_string(a) + " n=" + std::to_string(n) +
                              ": " + v);
        }
    }
    return out;
}

Config parse_config(const std::string &json_text, const std::vector<std::string> &overrides) {
    json user = json::parse(json_text, nullptr, false, true);
    if (user.is_discarded())
        throw ValidationError("config is not valid JSON");
    if (!user.is_object())
        throw ValidationError("config root must be an object");
    for (const auto &o : overrides)
        apply_override(user, o);

    const json schema = to_tree(Config{});
    std::vector<std::string> errors;
    check_shape(schema, user, "", errors);
    if (!errors.empty())
        throw ValidationError(std::move(errors));

    json tree = schema;
    merge(tree, user);
    Config c;
    try {
        c = from_tree(tree);
    } catch (const json::exception &e) {
        throw ValidationError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    auto v = validate(c);
    if (!v.empty())
        throw ValidationError(std::move(v));
    return c;
}

Config load_config(const std::string &path, const std::vector<std::string> &overrides) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string to_json(const Config &c, int indent) { return to_tree(c).dump(indent); }

namespace {
json point(Point p) { return json::array({p.x1, p.x2}); }
} // namespace

std::string domain_json(const RectilinearDomain &d, int indent) {
    json rects = json::array(), segs = json::array();
    for (const auto &r : d.rects)
        rects.push_back({{"x1", {r.x1min, r.x1max}},
                         {"x2", {r.x2min, r.x2max}},
                         {"region", std::string(to_string(r.region))}});
    for (const auto &s : d.boundary)
        segs.push_back({{"a", point(s.a)},
                        {"b", point(s.b)},
                        {"tag", std::string(to_string(s.tag))},
                        {"normal", point(s.normal)}});
    const char *kind = d.kind == DomainKind::Physical   ? "physical"
                       : d.kind == DomainKind::Rescaled ? "rescaled"
                                                        : "custom";
    json out = {{"kind", kind},
                {"periods", d.layout.periods},
                {"period", d.layout.period},
                {"x1_local", d.layout.x1_local},
                {"x2_levels", d.layout.x2_levels},
                {"l3", d.l3},
                {"area", d.area()},
                {"rects", rects},
                {"boundary", segs}};
    return out.dump(indent);
}

std::string mesh_json(const TensorMesh &m, int indent) {
    std::vector<int> active(m.active.begin(), m.active.end());
    std::vector<std::string> cls;
    cls.reserve(m.node_class.size());
    for (auto c : m.node_class)
        cls.push_back(c == NodeClass::Free             ? "F"
                      : c == NodeClass::DirichletRotor ? "R"
                      : c == NodeClass::DirichletStator ? "S"
                                                        : "X");
    json out = {{"x1", m.x1},
                {"x2", m.x2},
                {"periods", m.periods},
                {"cells_per_period", m.cells_per_period},
                {"active", active},
                {"node_class", cls},
                {"node_class_legend", {{"F", "free"}, {"R", "rotor"}, {"S", "stator"}, {"X", "exterior"}}}};
    return out.dump(indent);
}

} // namespace combdrive
