// horocost command-line driver: subcommand dispatch, config parsing, and
// CSV/JSON emission over the core library.

#include <horocost/balls.hpp>
#include <horocost/budget.hpp>
#include <horocost/correlations.hpp>
#include <horocost/group.hpp>
#include <horocost/horospace.hpp>
#include <horocost/onp.hpp>
#include <horocost/poisson_cost.hpp>
#include <horocost/rational.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace horocost;

namespace {

constexpr const char* kVersion = "1.0.0";

json rat_json(const Rat& r) { return rat_string(r); }

double rat_double(const Rat& r) {
    return static_cast<double>(boost::multiprecision::numerator(r)) /
           static_cast<double>(boost::multiprecision::denominator(r));
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(Int(text));
    return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
}

// Splits on `sep` at paren depth zero, so product elements "(a,b)" survive
// inside comma-separated lists.
std::vector<std::string> split_outside_parens(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::string strip_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<Element> parse_element_list(const GroupPtr& group, const std::string& text) {
    std::vector<Element> out;
    for (const auto& tok : split_outside_parens(text, ','))
        out.push_back(group->parse(strip_ws(tok)));
    return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    for (const auto& tok : split_outside_parens(text, ','))
        out.push_back(std::stoll(strip_ws(tok)));
    return out;
}

// "elem=value,elem=value" with elements possibly parenthesized.
template <class V, class Parse>
std::vector<std::pair<Element, V>> parse_assignments(const GroupPtr& group,
                                                     const std::string& text, Parse parse_value) {
    std::vector<std::pair<Element, V>> out;
    for (const auto& tok : split_outside_parens(text, ',')) {
        auto eq = tok.rfind('=');
        if (eq == std::string::npos)
            throw GroupError("expected elem=value assignments: " + tok);
        out.emplace_back(group->parse(strip_ws(tok.substr(0, eq))),
                         parse_value(strip_ws(tok.substr(eq + 1))));
    }
    return out;
}

// "g~h,g~h" edge lists.
std::vector<std::pair<Element, Element>> parse_edge_list(const GroupPtr& group,
                                                         const std::string& text) {
    std::vector<std::pair<Element, Element>> out;
    for (const auto& tok : split_outside_parens(text, ',')) {
        auto tilde = tok.find('~');
        if (tilde == std::string::npos) throw GroupError("expected g~h edges: " + tok);
        out.emplace_back(group->parse(strip_ws(tok.substr(0, tilde))),
                         group->parse(strip_ws(tok.substr(tilde + 1))));
    }
    return out;
}

// Space CSV: "atom,weight" rows, atom a non-negative integer id, weight a
// rational; atoms become single-index payloads.
WeightedFiniteSpace load_space_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot open space file: " + path);
    WeightedFiniteSpace space;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_ws(line);
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw GroupError("space rows are atom,weight: " + line);
        space.atoms.push_back({{static_cast<std::int32_t>(std::stoi(line.substr(0, comma)))}});
        space.weights.push_back(parse_rat(strip_ws(line.substr(comma + 1))));
    }
    space.validate();
    return space;
}

// Relation CSV: "atom,class" rows aligned with the space file's atom order.
FiniteRelation load_relation_csv(const std::string& path, const WeightedFiniteSpace& space) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot open relation file: " + path);
    std::vector<int> class_of(space.size(), -1);
    std::string line;
    while (std::getline(in, line)) {
        line = strip_ws(line);
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw GroupError("relation rows are atom,class: " + line);
        Element atom{{static_cast<std::int32_t>(std::stoi(line.substr(0, comma)))}};
        class_of.at(space.index_of(atom)) = std::stoi(strip_ws(line.substr(comma + 1)));
    }
    for (int c : class_of)
        if (c < 0) throw GroupError("relation file leaves an atom unclassified");
    return FiniteRelation::from_classes(class_of);
}

std::vector<std::size_t> load_section_csv(const std::string& path,
                                          const WeightedFiniteSpace& space) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot open section file: " + path);
    std::vector<std::size_t> section;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_ws(line);
        if (line.empty() || line[0] == '#') continue;
        section.push_back(
            space.index_of({{static_cast<std::int32_t>(std::stoi(line))}}));
    }
    return section;
}

struct CommonOpts {
    std::string group_desc;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_format = "json";
};

json echo_config(const CommonOpts& common, json extra) {
    extra["seed"] = common.seed;
    extra["threads"] = common.threads;
    if (!common.group_desc.empty()) extra["group"] = common.group_desc;
    return extra;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json report_frame(const json& config, json result) {
    return json{{"version", kVersion}, {"config", config}, {"result", std::move(result)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"horocost: ball combinatorics, horofunction measures, and exact costs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config")->description("plain key = value config file; flags override");

    CommonOpts common;
    app.add_option("--seed", common.seed, "PRNG seed")->capture_default_str()->configurable();
    app.add_option("--threads", common.threads, "thread cap forwarded to modules")
        ->capture_default_str();

    if (const char* env = std::getenv("HOROCOST_BUDGET"))
        set_element_budget(std::strtoull(env, nullptr, 10));

    // ---- growth ----
    auto* growth = app.add_subcommand("growth", "ball/sphere counts and Fekete bound");
    long long g_nmax = 5;
    growth->add_option("--group", common.group_desc)->required()->configurable();
    growth->add_option("--nmax", g_nmax)->configurable();
    growth->add_option("--out", common.out_format, "csv | json")->configurable();

    // ---- shells ----
    auto* shells = app.add_subcommand("shells", "spherical shell SS(n, eps)");
    long long sh_n = 0, sh_eps = 1;
    bool sh_list = false;
    shells->add_option("--group", common.group_desc)->required();
    shells->add_option("--n", sh_n)->required();
    shells->add_option("--eps", sh_eps);
    shells->add_flag("--list", sh_list, "include the elements themselves");
    shells->add_option("--out", common.out_format, "csv | json");

    // ---- subadd ----
    auto* subadd = app.add_subcommand("subadd", "check SS(n,eps)*SS(m,eps) covers S(n+m)");
    long long sa_n = 1, sa_m = 1, sa_eps = 1;
    subadd->add_option("--group", common.group_desc)->required();
    subadd->add_option("--n", sa_n)->required();
    subadd->add_option("--m", sa_m)->required();
    subadd->add_option("--eps", sa_eps);

    // ---- balanced ----
    auto* balanced = app.add_subcommand("balanced", "factor-to-product ball ratios");
    int b_factor = 1;
    long long b_nmax = 4;
    balanced->add_option("--group", common.group_desc, "a product(...) descriptor")->required();
    balanced->add_option("--factor", b_factor, "1 or 2")->check(CLI::Range(1, 2));
    balanced->add_option("--nmax", b_nmax);

    // ---- comparable ----
    auto* comparable = app.add_subcommand("comparable", "shell-ratio growth comparison");
    std::string c_g2;
    long long c_eps = 1, c_nmax = 6;
    comparable->add_option("--group", common.group_desc)->required();
    comparable->add_option("--other", c_g2)->required();
    comparable->add_option("--eps", c_eps);
    comparable->add_option("--nmax", c_nmax);

    // ---- separated ----
    auto* separated = app.add_subcommand("separated", "greedy F^2-separated subset of a ball");
    std::string sep_F;
    std::size_t sep_size = 2;
    long long sep_radius = 4;
    separated->add_option("--group", common.group_desc)->required();
    separated->add_option("--F", sep_F, "comma-separated symmetric set containing e")->required();
    separated->add_option("--size", sep_size);
    separated->add_option("--radius", sep_radius);

    // ---- onp / onp-sweep ----
    auto* onp = app.add_subcommand("onp", "overlapping-neighborhoods statistic");
    OnpQuery oq;
    long long onp_C = -1;
    std::uint64_t onp_samples = 0;
    onp->add_option("--group", common.group_desc)->required()->configurable();
    onp->add_option("--n", oq.n)->required()->configurable();
    onp->add_option("--r", oq.r)->required()->configurable();
    onp->add_option("--C", onp_C, "neighborhood enlargement; default 2*eps + C_q")->configurable();
    onp->add_option("--m", oq.m)->configurable();
    onp->add_option("--samples", onp_samples, "sample instead of exact enumeration")
        ->configurable();

    auto* sweep = app.add_subcommand("onp-sweep", "onp over n and r grids");
    std::string sw_nlist = "2", sw_rlist = "0,1,2";
    long long sw_C = -1, sw_m = 1;
    std::uint64_t sw_samples = 0;
    sweep->add_option("--group", common.group_desc)->required();
    sweep->add_option("--n-list", sw_nlist);
    sweep->add_option("--r-list", sw_rlist);
    sweep->add_option("--C", sw_C);
    sweep->add_option("--m", sw_m);
    sweep->add_option("--samples", sw_samples);

    // ---- witness ----
    auto* witness = app.add_subcommand("witness", "product witness path with distance bounds");
    std::string w_x, w_y;
    long long w_eps = 1;
    witness->add_option("--group", common.group_desc, "a product(...) descriptor")->required();
    witness->add_option("--x", w_x)->required();
    witness->add_option("--y", w_y)->required();
    witness->add_option("--eps", w_eps);

    // ---- horo-census / horo-mass / horo-section ----
    auto* census = app.add_subcommand("horo-census", "distinct horofunction window patterns");
    long long hc_n = 2, hc_R = 1;
    census->add_option("--group", common.group_desc)->required();
    census->add_option("--n", hc_n)->required();
    census->add_option("--R", hc_R);

    auto* mass = app.add_subcommand("horo-mass", "mu_n mass of the horoball H_{<=t}");
    long long hm_n = 2, hm_t = 0;
    mass->add_option("--group", common.group_desc)->required();
    mass->add_option("--n", hm_n)->required();
    mass->add_option("--t", hm_t)->required();

    auto* section = app.add_subcommand("horo-section", "section witness for a window horofunction");
    std::string hs_x;
    long long hs_n = 0, hs_R = -1, hs_eps = 1;
    section->add_option("--group", common.group_desc)->required();
    section->add_option("--x", hs_x)->required();
    section->add_option("--n", hs_n)->required();
    section->add_option("--R", hs_R, "window radius; default h(e) + 2*eps");
    section->add_option("--eps", hs_eps);

    // ---- corr ----
    auto* corr = app.add_subcommand("corr", "correlation table and pushforward pattern measure");
    std::string corr_obs, corr_window;
    std::string corr_weight = "1";
    corr->add_option("--action", common.group_desc,
                     "group descriptor; the regular translation action")
        ->required();
    corr->add_option("--obs", corr_obs, "observable CSV (atom, label)")->required();
    corr->add_option("--window", corr_window, "comma-separated window elements incl. e")
        ->required();
    corr->add_option("--atom-weight", corr_weight, "rational weight per atom");

    // ---- poisson-sample ----
    auto* psample = app.add_subcommand("poisson-sample", "Poisson point configuration on a space");
    std::string ps_space;
    psample->add_option("--space", ps_space, "space CSV (atom, weight)")->required();

    // ---- cost-finite / cost-ncost ----
    auto* cfinite = app.add_subcommand("cost-finite", "exact cost of a finite relation");
    std::string cf_space, cf_rel;
    cfinite->add_option("--space", cf_space)->required();
    cfinite->add_option("--rel", cf_rel, "relation CSV (atom, class)")->required();

    auto* cncost = app.add_subcommand("cost-ncost", "normalized cost over a complete section");
    std::string cn_space, cn_rel, cn_section;
    cncost->add_option("--space", cn_space)->required();
    cncost->add_option("--rel", cn_rel)->required();
    cncost->add_option("--section", cn_section, "section CSV (one atom per row)")->required();

    // ---- cost-bound ----
    auto* cbound = app.add_subcommand("cost-bound", "Monte Carlo cost-bound assembly");
    std::string cb_S, cb_G, cb_p;
    int cb_trials = 100;
    cbound->add_option("--group", common.group_desc)->required();
    cbound->add_option("--S", cb_S, "section atoms as elem=weight pairs")->required();
    cbound->add_option("--G", cb_G, "graphing edges as g~h pairs");
    cbound->add_option("--p", cb_p, "percolation law as elem=prob pairs");
    cbound->add_option("--trials", cb_trials);

    // ---- fixed-prob ----
    auto* fprob = app.add_subcommand("fixed-prob", "P(two Poisson(m) draws agree) and mode bound");
    std::string fp_mass = "1";
    fprob->add_option("--mass", fp_mass, "rational mean")->required();

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "sampled quasi-metric axiom check");
    int v_trials = 200, v_radius = 2;
    validate->add_option("--group", common.group_desc)->required();
    validate->add_option("--trials", v_trials);
    validate->add_option("--radius", v_radius);

    // Accept --config in either position by hoisting it ahead of the
    // subcommand name; CLI11 reads subcommand keys from [subcommand] sections
    // and lets explicit flags override file values.
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            std::string file = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            args.insert(args.begin(), {"--config", file});
            break;
        }
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"code", "cli"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }

    auto started = std::chrono::steady_clock::now();
    try {
        if (*growth) {
            auto group = parse_group_descriptor(common.group_desc);
            auto table = growth_table(group, g_nmax);
            if (common.out_format == "csv") {
                std::cout << "n,ball,sphere,log_ratio\n";
                for (long long n = 0; n <= g_nmax; ++n) {
                    std::cout << n << "," << table.ball_counts[n].str() << ","
                              << table.sphere_counts[n].str() << ","
                              << (n ? std::to_string(table.log_ratio[n - 1]) : "") << "\n";
                }
            } else {
                json rows = json::array();
                for (long long n = 0; n <= g_nmax; ++n) {
                    json row{{"n", n},
                             {"ball", table.ball_counts[n].str()},
                             {"sphere", table.sphere_counts[n].str()}};
                    if (n) row["log_ratio"] = table.log_ratio[n - 1];
                    rows.push_back(row);
                }
                emit(report_frame(echo_config(common, {{"nmax", g_nmax}}),
                                  {{"rows", rows},
                                   {"fekete_bound", table.fekete_bound},
                                   {"fekete_constant", table.fekete_constant}}));
            }
        } else if (*shells) {
            auto group = parse_group_descriptor(common.group_desc);
            auto ss = shell(group, sh_n, sh_eps);
            json result{{"size", ss.size()}};
            if (sh_list) {
                json elems = json::array();
                for (const auto& g : ss) elems.push_back(group->format(g));
                result["elements"] = elems;
            }
            emit(report_frame(echo_config(common, {{"n", sh_n}, {"eps", sh_eps}}), result));
        } else if (*subadd) {
            auto group = parse_group_descriptor(common.group_desc);
            auto rep = check_subadditivity(group, sa_n, sa_m, sa_eps);
            json result{{"passed", rep.passed}, {"sphere_size", rep.sphere_size}};
            if (rep.uncovered) result["uncovered"] = group->format(*rep.uncovered);
            emit(report_frame(
                echo_config(common, {{"n", sa_n}, {"m", sa_m}, {"eps", sa_eps}}), result));
            if (!rep.passed) return 1;
        } else if (*balanced) {
            auto group = parse_group_descriptor(common.group_desc);
            auto product = std::dynamic_pointer_cast<const ProductGroup>(group);
            if (!product) throw GroupError("balanced needs a product(...) descriptor");
            auto factor = b_factor == 1 ? product->left() : product->right();
            json rows = json::array();
            for (long long n = 1; n <= b_nmax; ++n) {
                Rat r = balanced_ratio(factor, group, n);
                rows.push_back({{"n", n}, {"ratio", rat_json(r)}, {"decimal", rat_double(r)}});
            }
            emit(report_frame(echo_config(common, {{"factor", b_factor}, {"nmax", b_nmax}}),
                              {{"rows", rows}}));
        } else if (*comparable) {
            auto g1 = parse_group_descriptor(common.group_desc);
            auto g2 = parse_group_descriptor(c_g2);
            auto rep = comparable_growth_report(g1, g2, c_eps, c_nmax);
            auto dump_side = [](const std::vector<Rat>& f,
                               const std::vector<std::vector<Rat>>& sums,
                               const std::vector<bool>& trend) {
                json side{{"f", json::array()},
                          {"partial_sums", json::array()},
                          {"diverging_trend", trend}};
                for (const auto& r : f) side["f"].push_back(rat_json(r));
                for (const auto& residue : sums) {
                    json s = json::array();
                    for (const auto& r : residue) s.push_back(rat_json(r));
                    side["partial_sums"].push_back(s);
                }
                return side;
            };
            emit(report_frame(
                echo_config(common, {{"other", c_g2}, {"eps", c_eps}, {"nmax", c_nmax}}),
                {{"forward", dump_side(rep.f1, rep.f1_partial_sums, rep.f1_diverging_trend)},
                 {"backward", dump_side(rep.f2, rep.f2_partial_sums, rep.f2_diverging_trend)}}));
        } else if (*separated) {
            auto group = parse_group_descriptor(common.group_desc);
            auto F = parse_element_list(group, sep_F);
            auto set = find_separated_set(group, F, sep_size, sep_radius);
            json elems = json::array();
            for (const auto& g : set) elems.push_back(group->format(g));
            emit(report_frame(
                echo_config(common,
                            {{"F", sep_F}, {"size", sep_size}, {"radius", sep_radius}}),
                {{"elements", elems}}));
        } else if (*onp) {
            oq.group = parse_group_descriptor(common.group_desc);
            oq.C = onp_C >= 0 ? onp_C : default_onp_constant(oq.group);
            oq.seed = common.seed;
            if (onp_samples) {
                oq.sampled = true;
                oq.sample_count = onp_samples;
            }
            auto res = onp_statistic(oq);
            emit(report_frame(
                echo_config(common, {{"n", oq.n},
                                     {"r", oq.r},
                                     {"C", oq.C},
                                     {"m", oq.m},
                                     {"samples", onp_samples}}),
                {{"n", oq.n},
                 {"r", oq.r},
                 {"ratio_num", res.numerator.str()},
                 {"ratio_den", res.denominator.str()},
                 {"estimate", res.estimate},
                 {"ci", res.ci_halfwidth},
                 {"exact", res.exact}}));
        } else if (*sweep) {
            auto group = parse_group_descriptor(common.group_desc);
            long long C = sw_C >= 0 ? sw_C : default_onp_constant(group);
            auto results = onp_sweep(group, parse_int_list(sw_nlist), parse_int_list(sw_rlist),
                                     C, sw_m, sw_samples > 0, sw_samples, common.seed);
            json rows = json::array();
            for (const auto& res : results)
                rows.push_back({{"n", res.query.n},
                                {"r", res.query.r},
                                {"ratio_num", res.numerator.str()},
                                {"ratio_den", res.denominator.str()},
                                {"estimate", res.estimate},
                                {"ci", res.ci_halfwidth}});
            emit(report_frame(
                echo_config(common, {{"n_list", sw_nlist},
                                     {"r_list", sw_rlist},
                                     {"C", C},
                                     {"m", sw_m},
                                     {"samples", sw_samples}}),
                {{"rows", rows}}));
        } else if (*witness) {
            auto group = parse_group_descriptor(common.group_desc);
            auto path = witness_path(group, group->parse(w_x), group->parse(w_y), w_eps);
            json steps = json::array();
            for (std::size_t t = 0; t < path.steps.size(); ++t)
                steps.push_back({{"t", t},
                                 {"point", group->format(path.steps[t].point)},
                                 {"d_x", path.steps[t].d_x},
                                 {"d_y", path.steps[t].d_y},
                                 {"d_e", path.steps[t].d_e}});
            emit(report_frame(
                echo_config(common, {{"x", w_x}, {"y", w_y}, {"eps", w_eps}}),
                {{"steps", steps},
                 {"bound_x", path.bound_x},
                 {"bound_y", path.bound_y},
                 {"bounds_hold", path.all_bounds_hold()}}));
            if (!path.all_bounds_hold()) return 1;
        } else if (*census) {
            auto group = parse_group_descriptor(common.group_desc);
            auto rep = boundary_census(group, hc_n, hc_R);
            json patterns = json::array();
            for (const auto& [vals, count] : rep.patterns)
                patterns.push_back({{"values", vals}, {"count", count.str()}});
            emit(report_frame(echo_config(common, {{"n", hc_n}, {"R", hc_R}}),
                              {{"pattern_count", rep.patterns.size()}, {"patterns", patterns}}));
        } else if (*mass) {
            auto group = parse_group_descriptor(common.group_desc);
            auto mm = mu_mass(group, hm_n, hm_t);
            json result{{"mass", rat_json(mm.mass)},
                        {"decimal", rat_double(mm.mass)},
                        {"bound_ok", mm.bound_ok}};
            if (mm.upper_bound) result["upper_bound"] = rat_json(*mm.upper_bound);
            emit(report_frame(echo_config(common, {{"n", hm_n}, {"t", hm_t}}), result));
        } else if (*section) {
            auto group = parse_group_descriptor(common.group_desc);
            Element x = group->parse(hs_x);
            long long he = group->norm(x) - hs_n;
            long long R = hs_R >= 0 ? hs_R : he + 2 * hs_eps;
            auto h = horofunction_window(group, x, hs_n, R);
            Element y = section_witness(group, h, hs_eps);
            emit(report_frame(
                echo_config(common,
                            {{"x", hs_x}, {"n", hs_n}, {"R", R}, {"eps", hs_eps}}),
                {{"witness", group->format(y)}, {"value", h.value_at(y)}}));
        } else if (*corr) {
            auto group = parse_group_descriptor(common.group_desc);
            ActionPtr action =
                std::make_shared<RegularAction>(group, parse_rat(corr_weight));
            auto obs = load_observable_csv(corr_obs, group);
            auto window = parse_element_list(group, corr_window);
            auto table = correlation_table(action, obs, window);
            auto pm = pushforward_F(action, obs, window);
            json entries = json::array();
            for (const auto& [key, value] : table.entries) {
                auto [a, b, f] = key;
                entries.push_back({{"a", table.alphabet[a]},
                                   {"b", b < 0 ? "*" : table.alphabet[b]},
                                   {"f", group->format(table.window[f])},
                                   {"value", rat_json(value)}});
            }
            json patterns = json::array();
            for (const auto& [labels, m] : pm.masses) {
                json ls = json::array();
                for (int l : labels) ls.push_back(l < 0 ? "*" : pm.alphabet[l]);
                patterns.push_back({{"labels", ls}, {"mass", rat_json(m)}});
            }
            emit(report_frame(
                echo_config(common, {{"obs", corr_obs},
                                     {"window", corr_window},
                                     {"atom_weight", corr_weight}}),
                {{"correlations", entries},
                 {"patterns", patterns},
                 {"star_mass", rat_json(pm.star_mass)}}));
        } else if (*psample) {
            auto space = load_space_csv(ps_space);
            auto config = poisson_sample(space, common.seed);
            json counts = json::array();
            for (std::size_t i = 0; i < space.size(); ++i)
                counts.push_back({{"atom", space.atoms[i].payload[0]},
                                  {"weight", rat_json(space.weights[i])},
                                  {"count", config.counts[i]}});
            emit(report_frame(echo_config(common, {{"space", ps_space}}),
                              {{"counts", counts}, {"empty", config.empty()}}));
        } else if (*cfinite) {
            auto space = load_space_csv(cf_space);
            auto rel = load_relation_csv(cf_rel, space);
            Rat cost = finite_cost(space, rel);
            emit(report_frame(echo_config(common, {{"space", cf_space}, {"rel", cf_rel}}),
                              {{"cost", rat_json(cost)}, {"decimal", rat_double(cost)}}));
        } else if (*cncost) {
            auto space = load_space_csv(cn_space);
            auto rel = load_relation_csv(cn_rel, space);
            auto sec = load_section_csv(cn_section, space);
            auto nc = normalized_cost(space, rel, sec);
            emit(report_frame(
                echo_config(common,
                            {{"space", cn_space}, {"rel", cn_rel}, {"section", cn_section}}),
                {{"value", rat_json(nc.value)},
                 {"decimal", rat_double(nc.value)},
                 {"restricted", rat_json(nc.restricted)},
                 {"section_mass", rat_json(nc.section_mass)},
                 {"gaboriau_holds", nc.gaboriau_holds}}));
        } else if (*cbound) {
            auto group = parse_group_descriptor(common.group_desc);
            WeightedFiniteSpace S;
            for (auto& [atom, w] :
                 parse_assignments<Rat>(group, cb_S, [](const std::string& s) {
                     return parse_rat(s);
                 })) {
                S.atoms.push_back(atom);
                S.weights.push_back(w);
            }
            S.validate();
            auto G = cb_G.empty() ? std::vector<std::pair<Element, Element>>{}
                                  : parse_edge_list(group, cb_G);
            std::vector<std::pair<Element, double>> p;
            if (!cb_p.empty())
                for (auto& [atom, prob] :
                     parse_assignments<double>(group, cb_p, [](const std::string& s) {
                         return std::stod(s);
                     }))
                    p.emplace_back(atom, prob);
            auto rep = cost_bound_estimate(group, S, G, p, cb_trials, common.seed);
            emit(report_frame(
                echo_config(common, {{"S", cb_S},
                                     {"G", cb_G},
                                     {"p", cb_p},
                                     {"trials", cb_trials}}),
                {{"weight_mean", rep.weight_mean},
                 {"weight_sigma", rep.weight_sigma},
                 {"dege_mean", rep.dege_mean},
                 {"dege_sigma", rep.dege_sigma},
                 {"perc_dege_mean", rep.perc_dege_mean},
                 {"perc_dege_sigma", rep.perc_dege_sigma},
                 {"exp_neg_mass", rep.exp_neg_mass},
                 {"p_total", rep.p_total},
                 {"graph_cost", rat_json(rep.graph_cost)},
                 {"assembled_bound", rep.assembled_bound},
                 {"degree_subadditivity_violations", rep.degree_subadditivity_violations}}));
        } else if (*fprob) {
            auto res = poisson_fixed_prob(parse_rat(fp_mass));
            emit(report_frame(echo_config(common, {{"mass", fp_mass}}),
                              {{"value", res.value},
                               {"bound", res.bound},
                               {"value_le_bound", res.value_le_bound}}));
        } else if (*validate) {
            auto group = parse_group_descriptor(common.group_desc);
            auto rep = validate_metric_axioms(group, v_trials, v_radius, common.seed);
            json violations = json::array();
            for (const auto& v : rep.violations) {
                json witnesses = json::array();
                for (const auto& w : v.witnesses) witnesses.push_back(group->format(w));
                violations.push_back(
                    {{"axiom", v.axiom}, {"witnesses", witnesses}, {"detail", v.detail}});
            }
            emit(report_frame(
                echo_config(common, {{"trials", v_trials}, {"radius", v_radius}}),
                {{"passed", rep.passed()}, {"violations", violations}}));
            if (!rep.passed()) return 1;
        }
    } catch (const BudgetError& e) {
        std::cerr << json{{"code", "budget"},
                          {"message", e.what()},
                          {"reached", e.reached}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const SeparationError& e) {
        std::cerr << json{{"code", "separation"},
                          {"message", e.what()},
                          {"achieved", e.achieved}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"code", "error"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "elapsed_ms=" << elapsed << "\n";
    return 0;
}
