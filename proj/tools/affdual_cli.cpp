#include <affdual/affdual.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace affdual;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, resource = 3 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::string type;
    std::string order;
    int window = 3;
    std::string variant;
    std::string format = "json";
    bool dual = false;
    std::size_t max_nodes = 2'000'000;
    std::string output;
};

Json config_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["type"] = c.type;
    j["order"] = c.order;
    j["window"] = c.window;
    j["variant"] = c.variant;
    j["dual"] = c.dual;
    j["max_nodes"] = c.max_nodes;
    return j;
}

struct Result {
    Json report;
    std::string dot;
    bool passed = true;
};

using Namer = std::function<std::string(int)>;

// Word read along covers from the identity, lowest-ranked label first.
Namer poset_namer(const IntervalPoset& p, const MarkedGroup& g, std::vector<int> ranks) {
    return [&p, &g, ranks = std::move(ranks)](int id) -> std::string {
        auto node = p.node(id);
        if (!node) return "?" + std::to_string(id);
        if (*node == 0) return "1";
        std::string s;
        for (int x = 0; x != *node;) {
            const Cover* best = nullptr;
            for (const auto& c : p.up[static_cast<std::size_t>(x)])
                if (p.leq(c.to, *node) &&
                    (!best || ranks[static_cast<std::size_t>(c.gen)] < ranks[static_cast<std::size_t>(best->gen)]))
                    best = &c;
            s += (s.empty() ? "" : "*") + g.generators()[static_cast<std::size_t>(best->gen)].name;
            x = best->to;
        }
        return s;
    };
}

std::vector<int> index_ranks(const MarkedGroup& g) {
    std::vector<int> r(g.generators().size());
    std::iota(r.begin(), r.end(), 0);
    return r;
}

// Axial ranks when an axial order exists in this window, generator order otherwise.
std::vector<int> preferred_ranks(const EuclideanInterval& e) {
    try {
        return generator_ranks(*e.group, axial_order(e));
    } catch (const std::runtime_error&) {
        return index_ranks(*e.group);
    }
}

const char* row_name(std::optional<RowClass> r) {
    if (!r) return "unclassified";
    switch (*r) {
    case RowClass::bottom: return "bottom";
    case RowClass::middle: return "middle";
    case RowClass::top: return "top";
    }
    return "unclassified";
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string hasse_dot(const IntervalPoset& p, const MarkedGroup& g, const Namer& name) {
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=BT;\n";
    for (std::size_t v = 0; v < p.size(); ++v)
        os << "  n" << v << " [label=\"" << dot_escape(name(p.element[v])) << "\"];\n";
    for (std::size_t v = 0; v < p.size(); ++v)
        for (const auto& c : p.up[v])
            os << "  n" << v << " -> n" << c.to << " [label=\"" << dot_escape(g.generators()[static_cast<std::size_t>(c.gen)].name)
               << "\"];\n";
    os << "}\n";
    return os.str();
}

Json margin_json(const IntervalPoset& p) {
    Json j;
    j["nodes"] = p.size();
    j["covers"] = p.edge_count();
    j["certified"] = std::count(p.certified.begin(), p.certified.end(), true);
    j["window"] = p.window;
    j["top_rank"] = p.total;
    return j;
}

Json bowtie_json(const BowtieReport& b, const IntervalPoset& p, const Namer& name) {
    Json j;
    j["pairs_checked"] = b.pairs_checked;
    j["candidates"] = b.candidates;
    j["inconclusive"] = b.inconclusive;
    if (b.witness) {
        auto nm = [&](int node) { return name(p.element[static_cast<std::size_t>(node)]); };
        j["verdict"] = "non-lattice";
        j["witness"] = {{"u", nm(b.witness->u)}, {"v", nm(b.witness->v)}, {"z1", nm(b.witness->z1)}, {"z2", nm(b.witness->z2)}};
    } else {
        j["verdict"] = b.inconclusive ? "inconclusive" : "no-bowtie";
        j["witness"] = nullptr;
    }
    return j;
}

Json homology_json(const HomologyResult& h) {
    Json j;
    j["betti"] = h.betti;
    Json tor = Json::array();
    for (const auto& t : h.torsion) {
        Json d = Json::array();
        for (const auto& x : t) d.push_back(x.get_str());
        tor.push_back(d);
    }
    j["torsion"] = tor;
    j["euler"] = h.euler;
    return j;
}

Json presentation_json(const Presentation& pr) {
    Json j;
    j["generators"] = pr.generators;
    Json rels = Json::array();
    for (const auto& r : pr.relations) {
        Json words = Json::array();
        for (const auto& w : r) words.push_back(w);
        rels.push_back(words);
    }
    j["relations"] = rels;
    return j;
}

// ---- finite type A_n, realized on permutations

Result finite_command(const RunConfig& c, const CoxeterType& type) {
    if (type.family != Family::A) throw UsageError("finite types are supported for family A only");
    PermutationGroup g(type.rank + 1, c.dual);
    EnumerationLimits limits;
    limits.max_nodes = c.max_nodes;
    auto p = enumerate_interval(g, limits);
    certify_all(p);
    Namer name = [&g](int id) { return g.describe(id); };
    Result r;
    Json& j = r.report;
    j["margin"] = margin_json(p);
    if (c.command == "interval") {
        Json els = Json::array();
        for (std::size_t v = 0; v < p.size(); ++v)
            els.push_back({{"node", v}, {"element", name(p.element[v])}, {"rank", p.rank[v]}});
        j["elements"] = els;
        j["maximal_chains"] = count_chains(p, 0, p.top_node).get_str();
        auto bal = balance_check(p, g);
        j["balance"] = {{"checked", bal.checked}, {"violations", bal.violations.size()}};
        if (c.dual) j["noncrossing"] = {{"oracle_size", noncrossing_partitions(type.rank + 1).size()}};
        r.passed = bal.violations.empty();
        r.dot = hasse_dot(p, g, name);
    } else if (c.command == "lattice") {
        j["lattice"] = bowtie_json(bowtie_search(p, certified_oracle(p)), p, name);
    } else if (c.command == "presentation" || c.command == "homology") {
        auto k = interval_complex(p, g);
        if (c.command == "presentation") {
            j["presentation"] = presentation_json(reduced_presentation(k, name, [&g](int id) { return g.length_bound(id); }));
        } else {
            const auto cc = chain_complex(k);
            j["f_vector"] = k.f_vector();
            j["boundary_squares_to_zero"] = boundary_squares_to_zero(cc);
            j["homology"] = homology_json(homology(cc));
            r.passed = boundary_squares_to_zero(cc);
        }
    } else {
        throw UsageError("'" + c.command + "' needs an affine type");
    }
    return r;
}

// ---- affine types

Json component_json(const AffineComplex& k, const FiberedComponent& comp, const Namer& name) {
    Json j;
    j["kind"] = to_string(comp.kind);
    j["eta"] = comp.eta;
    j["period"] = comp.period;
    j["resolved"] = comp.resolved;
    j["alternates"] = comp.alternates;
    j["superior_types"] = comp.superior_types;
    j["phi_period"] = comp.phi_period;
    Json cells = Json::array();
    for (std::size_t i = comp.kprime_first; i <= comp.kprime_last && i < comp.cells.size(); ++i)
        cells.push_back({{"cell", simplex_name(comp.cells[i], name)}, {"xprime", k.in_xprime(comp.cells[i])}});
    j["kprime_cells"] = cells;
    return j;
}

std::string components_dot(const AffineComplex& k, const std::vector<FiberedComponent>& comps, const Namer& name) {
    std::ostringstream os;
    os << "digraph components {\n  rankdir=LR;\n  node [shape=box];\n";
    std::size_t id = 0;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        os << "  subgraph cluster_" << ci << " {\n    label=\"" << to_string(comp.kind) << " eta=" << comp.eta << "\";\n";
        const std::size_t first = comp.kind == ComponentKind::finite ? 0 : comp.kprime_first;
        const std::size_t start = id;
        for (std::size_t i = first; i <= comp.kprime_last && i < comp.cells.size(); ++i, ++id) {
            os << "    c" << id << " [label=\"" << dot_escape(simplex_name(comp.cells[i], name)) << "\"";
            if (k.in_xprime(comp.cells[i])) os << ", style=filled, fillcolor=black, fontcolor=white";
            os << "];\n";
            if (id > start) os << "    c" << id - 1 << " -> c" << id << ";\n";
        }
        if (comp.kind == ComponentKind::finite && id > start + 1) os << "    c" << id - 1 << " -> c" << start << ";\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

Json identity_json(const IdentityReport& rep) {
    Json j;
    j["k"] = rep.k;
    j["sizes"] = {{"W", rep.w_size}, {"D", rep.d_size}, {"F", rep.f_size}, {"C", rep.c_size}};
    j["top_weight"] = {{"W", rep.top_weight[0]}, {"D", rep.top_weight[1]}, {"F", rep.top_weight[2]}, {"C", rep.top_weight[3]}};
    j["intersection_holds"] = rep.intersection_holds;
    j["union_holds"] = rep.union_holds;
    j["w_in_c"] = rep.w_in_c;
    j["f_in_c"] = rep.f_in_c;
    j["checked"] = rep.checked;
    j["undecided"] = rep.undecided;
    j["violations"] = rep.violations;
    j["c_strictly_larger"] = rep.c_strictly_larger;
    j["f_not_w"] = rep.f_not_w ? Json(rep.f_not_w->str()) : Json(nullptr);
    j["collapse"] = rep.collapse;
    return j;
}

Result affine_command(const RunConfig& c, const CoxeterType& type) {
    std::optional<std::vector<std::size_t>> order;
    {
        CoxeterSystem sys(type);
        if (!c.order.empty()) order = parse_order(sys, c.order);
    }
    AffineInstance inst(type, order);
    EnumerationLimits limits;
    limits.max_nodes = c.max_nodes;
    auto e = make_interval(inst, c.window, limits);
    Result r;
    Json& j = r.report;
    j["order"] = inst.order_string();
    j["margin"] = margin_json(e.poset);
    j["axis_perturbed"] = inst.axis().data(c.window).perturbed;

    if (c.command == "interval") {
        const Namer name = poset_namer(e.poset, *e.group, index_ranks(*e.group));
        const auto& mu = inst.axis().mu();
        Json els = Json::array();
        for (std::size_t v = 0; v < e.poset.size(); ++v) {
            const auto& u = e.iso(static_cast<int>(v));
            els.push_back({{"node", v},
                           {"word", name(e.poset.element[v])},
                           {"rank", e.poset.rank[v]},
                           {"row", row_name(row_classify(u, e.w(), mu))},
                           {"certified", static_cast<bool>(e.poset.certified[v])},
                           {"matrix", u.str()}});
        }
        j["elements"] = els;
        Json covers = Json::array();
        for (std::size_t v = 0; v < e.poset.size(); ++v)
            for (const auto& cv : e.poset.up[v])
                covers.push_back({{"from", v}, {"to", cv.to}, {"label", e.group->generators()[static_cast<std::size_t>(cv.gen)].name}});
        j["covers"] = covers;
        const auto rc = row_census(e);
        j["row_census"] = {{"bottom", rc.bottom}, {"middle", rc.middle}, {"top", rc.top}, {"unclassified", rc.unclassified}};
        auto big = make_interval(inst, c.window + 2 * inst.axis().period(), limits);
        auto bal = balance_check(e, big);
        j["balance"] = {{"checked", bal.checked}, {"outside", bal.outside}, {"violations", bal.violations.size()}};
        r.passed = bal.violations.empty();
        r.dot = hasse_dot(e.poset, *e.group, name);
    } else if (c.command == "lattice") {
        const Namer name = poset_namer(e.poset, *e.group, index_ranks(*e.group));
        j["lattice"] = bowtie_json(bowtie_search(e.poset, affine_oracle(inst.system(), e.poset, *e.group)), e.poset, name);
    } else if (c.command == "shellability") {
        auto ax = axial_order(e);
        auto rep = shellability_check(e.poset, generator_ranks(*e.group, ax));
        j["axial_order"] = ax.names;
        j["shellability"] = {{"intervals", rep.intervals},
                             {"certified_intervals", rep.certified_intervals},
                             {"violations", rep.violations},
                             {"certified_violations", rep.certified_violations}};
        if (rep.first_violation)
            j["shellability"]["first_violation"] = {rep.first_violation->first, rep.first_violation->second};
        r.passed = rep.certified_violations == 0;
    } else if (c.command == "complexes" || c.command == "matching" || c.command == "homology") {
        AffineComplex k(e);
        auto an = k.analyze();
        const Namer name = poset_namer(e.poset, *e.group, preferred_ranks(e));
        j["xprime_f_vector"] = an.xprime.f_vector();
        j["kprime_f_vector"] = an.kprime.f_vector();
        if (c.command == "complexes") {
            Json comps = Json::array();
            for (const auto& comp : an.components) comps.push_back(component_json(k, comp, name));
            j["components"] = comps;
            j["finite"] = an.finite();
            j["infinite"] = an.infinite();
            j["checks"] = {{"resolved", an.resolved()},
                           {"xprime_covered", an.xprime_covered},
                           {"kprime_face_closed", an.kprime_face_closed},
                           {"xprime_in_kprime", an.xprime_in_kprime},
                           {"inverse_maps", an.inverse_maps},
                           {"face_identities", an.kprime.face_identities_hold()}};
            r.passed = an.resolved() && an.xprime_covered && an.kprime_face_closed && an.xprime_in_kprime && an.inverse_maps;
            r.dot = components_dot(k, an.components, name);
        } else if (c.command == "matching") {
            auto ax = axial_order(e);
            MorseMatching mm(k, ax);
            auto [mat, cert] = mm.build_and_verify(an.kprime);
            Json pairs = Json::array();
            for (const auto& [a, b] : mat.pairs) pairs.push_back({simplex_name(a, name), simplex_name(b, name)});
            j["pairs"] = pairs;
            Json cj;
            cj["ok"] = cert.ok();
            cj["involution"] = cert.involution;
            cj["dimension_consistent"] = cert.dimension_consistent;
            cj["regular_facets"] = cert.regular_facets;
            cj["irregular"] = cert.irregular ? Json({simplex_name(cert.irregular->first, name), simplex_name(cert.irregular->second, name)})
                                             : Json(nullptr);
            cj["critical_is_xprime"] = cert.critical_is_xprime;
            cj["acyclic"] = cert.acyclic;
            Json cyc = Json::array();
            for (const auto& s : cert.cycle) cyc.push_back(simplex_name(s, name));
            cj["cycle"] = cyc;
            cj["proper"] = cert.proper;
            cj["xi_fact1"] = cert.xi_fact1;
            cj["xi_fact2"] = cert.xi_fact2;
            cj["xi_acyclic"] = cert.xi_acyclic;
            cj["depth_finite"] = cert.depth_finite;
            cj["depth_vacuous"] = cert.depth_vacuous;
            cj["window_decisions"] = cert.window_decisions;
            cj["cases"] = cert.cases;
            j["certificate"] = cj;
            auto cm = component_matching(k, an.components);
            j["component_matching"] = {{"pairs", cm.pairs},
                                       {"unmatched_at_window", cm.unmatched_at_window},
                                       {"segment_critical", cm.segment_critical},
                                       {"eta_monotone", cm.eta_monotone},
                                       {"acyclic", cm.acyclic}};
            r.passed = cert.ok() && cm.segment_critical && cm.acyclic;
            std::ostringstream os;
            os << "digraph matching {\n";
            for (const auto& [a, b] : mat.pairs)
                os << "  \"" << dot_escape(simplex_name(a, name)) << "\" -> \"" << dot_escape(simplex_name(b, name)) << "\";\n";
            for (const auto& s : an.xprime.all_cells())
                os << "  \"" << dot_escape(simplex_name(s, name)) << "\" [style=filled, fillcolor=black, fontcolor=white];\n";
            os << "}\n";
            r.dot = os.str();
        } else {
            auto hc = compare_homology(an.kprime, an.xprime);
            j["kprime"] = homology_json(hc.kprime);
            j["xprime"] = homology_json(hc.xprime);
            j["equal"] = hc.equal;
            j["euler_equal"] = hc.euler_equal;
            j["boundary_squares_to_zero"] = hc.boundary_ok;
            r.passed = hc.equal && hc.boundary_ok;
        }
    } else if (c.command == "crystallographic") {
        auto d = crystallographic_data(e);
        auto next = make_interval(inst, c.window + 1, limits);
        auto dn = crystallographic_data(next);
        std::vector<VariantInterval> vs;
        for (auto v : {Variant::W, Variant::D, Variant::F, Variant::C}) vs.push_back(weighted_interval(d, v, limits));
        Json stable;
        for (std::size_t i : {std::size_t{1}, std::size_t{2}})
            stable[to_string(vs[i].variant)] = certify_if_stable(vs[i], weighted_interval(dn, vs[i].variant, limits));
        j["k"] = d.k;
        j["translations"] = d.T.size();
        j["horizontal_reflections"] = d.horizontal.size();
        j["stable_next_window"] = stable;
        auto rep = verify_union_intersection(e, vs[0], vs[1], vs[2], vs[3]);
        j["identities"] = identity_json(rep);
        Json lat;
        for (const auto& vi : vs) {
            if (!c.variant.empty() && parse_variant(c.variant) != vi.variant) continue;
            const Namer name = poset_namer(vi.poset, *vi.group, index_ranks(*vi.group));
            auto lr = lattice_check_crystallographic(vi);
            Json lj = bowtie_json(lr.bowtie, vi.poset, name);
            lj["size"] = vi.poset.size();
            lj["certified"] = lr.certified;
            lat[to_string(vi.variant)] = lj;
        }
        j["lattice"] = lat;
        r.passed = rep.intersection_holds && rep.union_holds && rep.w_in_c && rep.f_in_c;
    } else if (c.command == "presentation") {
        auto k = interval_complex(e.poset, *e.group);
        const Namer name = poset_namer(e.poset, *e.group, preferred_ranks(e));
        const auto& ess = inst.system().ess();
        auto pr = reduced_presentation(k, name, [&](int id) { return reflection_length(e.group->iso(id), ess); });
        j["presentation"] = presentation_json(pr);
        std::set<std::string> labels;
        for (const auto& s : k.cells(1)) labels.insert(name(s[0]));
        Json missing = Json::array();
        for (const auto& s : inst.system().simple()) {
            auto id = e.group->find(s);
            if (!id || !k.contains(Simplex{*id})) missing.push_back(s.str());
        }
        j["simple_reflections_missing"] = missing;
        r.passed = missing.empty();
    } else {
        throw UsageError("unknown command '" + c.command + "'");
    }
    return r;
}

Result run(const RunConfig& c) {
    CoxeterType type;
    try {
        type = parse_type(c.type);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    if (c.window < 1) throw UsageError("--window must be at least 1");
    if (!c.variant.empty()) {
        try {
            parse_variant(c.variant);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
    }
    if (c.format == "dot" && c.command != "interval" && c.command != "complexes" && c.command != "matching")
        throw UsageError("dot output is available for interval, complexes and matching");
    Result r;
    if (type.affine) {
        if (c.dual) throw UsageError("--dual applies to finite types");
        try {
            r = affine_command(c, type);
        } catch (const UnsupportedType& ex) {
            throw UsageError(ex.what());
        }
    } else {
        r = finite_command(c, type);
    }
    Json out;
    out["config"] = config_json(c);
    out["passed"] = r.passed;
    for (auto& [k, v] : r.report.items()) out[k] = v;
    r.report = std::move(out);
    return r;
}

void print_text(std::ostream& os, const Json& j, const std::string& prefix = "") {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object())
            print_text(os, v, key);
        else if (v.is_array() && !v.empty() && v[0].is_object())
            os << key << ": " << v.size() << " entries\n";
        else
            os << key << ": " << v.dump() << "\n";
    }
}

std::size_t default_max_nodes() {
    if (const char* env = std::getenv("AFFDUAL_MAX_NODES")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
        }
    }
    return 2'000'000;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual structures of affine Coxeter groups, checked with exact arithmetic"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.max_nodes = default_max_nodes();

    const std::vector<std::pair<std::string, std::string>> commands{
        {"interval", "enumerate [1,w] with covers, row census and balance"},
        {"lattice", "search for bowties among certified upper bounds"},
        {"shellability", "axial order and the increasing-chain check"},
        {"complexes", "fibered components of the interval complex"},
        {"matching", "Morse matching with its certificate"},
        {"homology", "integral homology of K' and X'"},
        {"crystallographic", "the D, F and C variants and their identities"},
        {"presentation", "presentation read off the interval complex"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--type", cfg.type, "type string such as A~2, B~3 or A4")->required();
        sub->add_option("--order", cfg.order, "comma-separated generator names");
        sub->add_option("--window", cfg.window, "window m")->capture_default_str();
        sub->add_option("--variant", cfg.variant, "W, D, F or C");
        sub->add_option("--format", cfg.format, "json, dot or text")
            ->check(CLI::IsMember({"json", "dot", "text"}))
            ->capture_default_str();
        sub->add_flag("--dual", cfg.dual, "dual structure for finite type A");
        sub->add_option("--max-nodes", cfg.max_nodes, "node cap (env AFFDUAL_MAX_NODES)");
        sub->add_option("--output,-o", cfg.output, "write the report here instead of stdout");
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    Result r;
    try {
        r = run(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const ResourceCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return resource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        Json fail;
        fail["config"] = config_json(cfg);
        fail["passed"] = false;
        fail["error"] = e.what();
        (cfg.output.empty() ? std::cout : std::cerr) << fail.dump(2) << "\n";
        return check_failed;
    }

    std::string text;
    if (cfg.format == "json") {
        text = r.report.dump(2) + "\n";
    } else if (cfg.format == "dot") {
        text = r.dot;
    } else {
        std::ostringstream os;
        print_text(os, r.report);
        text = os.str();
    }
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << cfg.output << "\n";
            return usage;
        }
        f << text;
    }
    return r.passed ? ok : check_failed;
}
