#include "cli.hpp"

#include "vmet/amalgam.hpp"
#include "vmet/connect.hpp"
#include "vmet/divide.hpp"
#include "vmet/embed.hpp"
#include "vmet/json_io.hpp"
#include "vmet/space.hpp"
#include "vmet/ultra.hpp"
#include "vmet/value_set.hpp"

#include "CLI11.hpp"

#ifdef VMET_HAVE_OPENMP
#include <omp.h>
#endif

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace vmet::cli {
namespace {

using io::json;

// Problems with the invocation itself (unreadable file, missing flag data);
// reported on stderr with exit code 2, like flag parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return json::parse(in);
}

// Every subcommand writes one payload to -o (default stdout).
struct Common {
    std::string out = "-";
};

void emit(const Common& common, const std::string& text) {
    if (common.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(common.out);
    if (!out) throw UsageError("cannot write " + common.out);
    out << text;
}

void emit_json(const Common& common, const json& j) { emit(common, j.dump() + "\n"); }

void set_jobs(int jobs) {
#ifdef VMET_HAVE_OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

Rational rat_arg(const std::string& text, const std::string& what) {
    const auto r = Rational::try_parse(text);
    if (!r) throw UsageError(what + ": expected a rational like 3/4, got \"" + text + "\"");
    return *r;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ',')) parts.push_back(part);
    return parts;
}

std::vector<Rational> rat_list_arg(const std::string& text, const std::string& what) {
    std::vector<Rational> out;
    for (const std::string& tok : split_commas(text)) out.push_back(rat_arg(tok, what));
    return out;
}

std::size_t point_arg(const FiniteMetricSpace& space, const std::string& label, const std::string& what) {
    const auto idx = space.find(label);
    if (!idx) throw UsageError(what + ": no point labelled \"" + label + "\"");
    return *idx;
}

ValueSet values_for(const FiniteMetricSpace& space, const std::string& flag_path) {
    if (!flag_path.empty()) return io::value_set_from_json(read_json(flag_path));
    if (space.value_set()) return *space.value_set();
    throw UsageError("no value set: pass -V or bind one to the space");
}

json labels_json(const FiniteMetricSpace& space, const std::vector<std::size_t>& points) {
    json out = json::array();
    for (std::size_t p : points) out.push_back(space.label(p));
    return out;
}

json rats_json(const std::vector<Rational>& values) {
    json out = json::array();
    for (const Rational& v : values) out.push_back(v.str());
    return out;
}

std::vector<int> coloring_from_json(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("colors")) throw io::JsonFormatError("coloring: missing \"colors\"");
        arr = &j.at("colors");
    }
    if (!arr->is_array()) throw io::JsonFormatError("coloring: expected an array of 0/1");
    std::vector<int> out;
    for (const json& e : *arr) {
        if (!e.is_number_integer()) throw io::JsonFormatError("coloring: entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

json homogeneity_json(const HomogeneityResult& r) {
    json out{{"homogeneous", r.homogeneous}};
    if (!r.homogeneous) {
        out["kind"] = r.kind == HomogeneityResult::ViolationKind::DegreeMismatch ? "DegreeMismatch"
                                                                                 : "LeafPathMismatch";
        out["node_a"] = r.node_a;
        out["node_b"] = r.node_b;
    }
    return out;
}

json amalgam_json(const AmalgamResult& r) {
    json chosen = json::array();
    for (const auto& c : r.chosen) chosen.push_back(json{{"a", c.a}, {"b", c.b}, {"w", c.w.str()}});
    return json{{"space", io::to_json(r.space)}, {"chosen", std::move(chosen)}, {"admissible", rats_json(r.admissible)}};
}

const char* kind_name(SpaceError::Kind k) {
    switch (k) {
        case SpaceError::Kind::ShapeMismatch: return "ShapeMismatch";
        case SpaceError::Kind::DuplicateLabel: return "DuplicateLabel";
        case SpaceError::Kind::Symmetry: return "Symmetry";
        case SpaceError::Kind::Separation: return "Separation";
        case SpaceError::Kind::Triangle: return "Triangle";
        case SpaceError::Kind::Spectrum: return "Spectrum";
        case SpaceError::Kind::UnknownPoint: return "UnknownPoint";
        case SpaceError::Kind::EmptyFactor: return "EmptyFactor";
        case SpaceError::Kind::ValueSetTooSparse: return "ValueSetTooSparse";
    }
    return "SpaceError";
}

const char* kind_name(AmalgamError::Kind k) {
    switch (k) {
        case AmalgamError::Kind::NoAmalgam: return "NoAmalgam";
        case AmalgamError::Kind::InvalidSocket: return "InvalidSocket";
        case AmalgamError::Kind::FourValuesFailure: return "FourValuesFailure";
        case AmalgamError::Kind::PreconditionViolated: return "PreconditionViolated";
        case AmalgamError::Kind::HypothesisViolated: return "HypothesisViolated";
        case AmalgamError::Kind::EmptyOrbit: return "EmptyOrbit";
    }
    return "AmalgamError";
}

const char* kind_name(UltraError::Kind k) {
    switch (k) {
        case UltraError::Kind::NotUltrametric: return "NotUltrametric";
        case UltraError::Kind::InvalidTree: return "InvalidTree";
        case UltraError::Kind::UnknownNode: return "UnknownNode";
        case UltraError::Kind::BadSpec: return "BadSpec";
        case UltraError::Kind::SizeLimitExceeded: return "SizeLimitExceeded";
    }
    return "UltraError";
}

const char* kind_name(DivideError::Kind k) {
    switch (k) {
        case DivideError::Kind::BadBounds: return "BadBounds";
        case DivideError::Kind::CannotSeparate: return "CannotSeparate";
        case DivideError::Kind::Degenerate: return "Degenerate";
        case DivideError::Kind::BadSequence: return "BadSequence";
    }
    return "DivideError";
}

const char* kind_name(ValueSet::Error k) {
    switch (k) {
        case ValueSet::Error::NegativeValue: return "NegativeValue";
        case ValueSet::Error::MissingZero: return "MissingZero";
    }
    return "BadValueSet";
}

int domain_error(const char* kind, const std::exception& e) {
    std::cout << json{{"error", json{{"kind", kind}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
}

void register_values_commands(CLI::App& app) {
    {
        auto sub = app.add_subcommand("check-4vc", "four-values check of a value set");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto jobs = std::make_shared<int>(1);
        sub->add_option("values", *path, "value set JSON (- = stdin)")->required();
        sub->add_option("--jobs", *jobs, "worker threads for the quadruple scan");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, jobs] {
            const ValueSet V = io::value_set_from_json(read_json(*path));
            set_jobs(*jobs);
            const FourValuesResult r = *jobs > 1 ? four_values_check_parallel(V) : four_values_check(V);
            json out;
            if (r.ok()) {
                out["result"] = "ok";
            } else {
                out["result"] = "counterexample";
                json quad = json::array();
                for (const Rational& v : *r.counterexample) quad.push_back(v.str());
                out["quad"] = std::move(quad);
            }
            emit_json(*common, out);
        });
    }
    {
        auto sub = app.add_subcommand("dv", "induced distance table on the points of a value set");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        sub->add_option("values", *path, "value set JSON (- = stdin)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path] {
            const DvResult r = dv_distance(io::value_set_from_json(read_json(*path)));
            json table = json::array();
            for (const auto& row : r.table) table.push_back(rats_json(row));
            json out{{"ok", r.ok()}, {"points", rats_json(r.points)}, {"table", std::move(table)}};
            if (r.failure) {
                json triple = json::array();
                for (const Rational& v : *r.failure) triple.push_back(v.str());
                out["failure"] = std::move(triple);
            }
            emit_json(*common, out);
        });
    }
    {
        auto sub = app.add_subcommand("gaps", "half-gap report and runs of a value set");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        sub->add_option("values", *path, "value set JSON (- = stdin)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path] {
            const GapReport r = gap_report(io::value_set_from_json(read_json(*path)));
            json entries = json::array();
            for (const auto& e : r.entries) entries.push_back(json{{"w", e.w.str()}, {"gap", e.gap}});
            json runs = json::array();
            for (const auto& [lo, hi] : r.runs) runs.push_back(json::array({lo.str(), hi.str()}));
            emit_json(*common, json{{"entries", std::move(entries)}, {"runs", std::move(runs)}});
        });
    }
}

void register_space_commands(CLI::App& app) {
    {
        auto sub = app.add_subcommand("validate", "validate a space and summarize it");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            json out{{"ok", true},
                     {"points", m.size()},
                     {"diameter", m.diameter().str()},
                     {"min_positive_distance",
                      m.min_positive_distance() ? json(m.min_positive_distance()->str()) : json(nullptr)},
                     {"spectrum", rats_json(m.spectrum())},
                     {"ultrametric", is_ultrametric(m)},
                     {"value_set_bound", m.value_set().has_value()}};
            emit_json(*common, out);
        });
    }
    {
        auto sub = app.add_subcommand("embed", "enumerate isometric embeddings of a pattern into a target");
        auto common = std::make_shared<Common>();
        auto pattern = std::make_shared<std::string>();
        auto target = std::make_shared<std::string>();
        auto limit = std::make_shared<std::size_t>(0);
        auto jobs = std::make_shared<int>(1);
        sub->add_option("pattern", *pattern, "pattern space JSON")->required();
        sub->add_option("target", *target, "target space JSON")->required();
        sub->add_option("--limit", *limit, "stop after this many embeddings (0 = all)");
        sub->add_option("--jobs", *jobs, "worker threads for the search");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, pattern, target, limit, jobs] {
            const FiniteMetricSpace p = io::space_from_json(read_json(*pattern));
            const FiniteMetricSpace t = io::space_from_json(read_json(*target));
            set_jobs(*jobs);
            const auto found =
                *jobs > 1 ? isometric_embeddings_parallel(p, t, *limit) : isometric_embeddings(p, t, *limit);
            json list = json::array();
            for (const Embedding& e : found) list.push_back(labels_json(t, e.image));
            emit_json(*common, json{{"count", found.size()}, {"embeddings", std::move(list)}});
        });
    }
    {
        auto fixture = app.add_subcommand("fixture", "deterministic example spaces");
        fixture->require_subcommand(1);
        {
            auto sub = fixture->add_subcommand("chain-space", "equally spaced chain inside a value set");
            auto common = std::make_shared<Common>();
            auto values = std::make_shared<std::string>();
            auto ell = std::make_shared<std::string>();
            auto n = std::make_shared<std::size_t>();
            sub->add_option("-V,--values", *values, "value set JSON")->required();
            sub->add_option("--ell", *ell, "chain endpoint distance (rational)")->required();
            sub->add_option("-n,--steps", *n, "number of hops")->required();
            sub->add_option("-o,--output", common->out, "output path (- = stdout)");
            sub->callback([common, values, ell, n] {
                const ValueSet V = io::value_set_from_json(read_json(*values));
                emit_json(*common, io::to_json(chain_space(V, rat_arg(*ell, "--ell"), *n)));
            });
        }
        {
            auto sub = fixture->add_subcommand("example-mn", "the two-coordinate rational example space");
            auto common = std::make_shared<Common>();
            auto N = std::make_shared<std::size_t>();
            sub->add_option("-N,--max-denominator", *N, "largest denominator")->required();
            sub->add_option("-o,--output", common->out, "output path (- = stdout)");
            sub->callback([common, N] { emit_json(*common, io::to_json(example_space_mn(*N))); });
        }
        {
            auto sub = fixture->add_subcommand("sup-power", "n-fold sup-distance power of a base space");
            auto common = std::make_shared<Common>();
            auto base = std::make_shared<std::string>();
            auto n = std::make_shared<std::size_t>();
            sub->add_option("space", *base, "base space JSON")->required();
            sub->add_option("-n,--power", *n, "exponent")->required();
            sub->add_option("-o,--output", common->out, "output path (- = stdout)");
            sub->callback([common, base, n] {
                emit_json(*common, io::to_json(sup_power(io::space_from_json(read_json(*base)), *n)));
            });
        }
    }
}

void register_amalgam_commands(CLI::App& app) {
    {
        auto sub = app.add_subcommand("amalgamate", "glue two spaces over their shared labels");
        auto common = std::make_shared<Common>();
        auto m1 = std::make_shared<std::string>();
        auto m2 = std::make_shared<std::string>();
        auto values = std::make_shared<std::string>();
        sub->add_option("m1", *m1, "first space JSON")->required();
        sub->add_option("m2", *m2, "second space JSON")->required();
        sub->add_option("-V,--values", *values, "value set JSON")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, m1, m2, values] {
            const ValueSet V = io::value_set_from_json(read_json(*values));
            const AmalgamResult r =
                disjoint_amalgam(io::space_from_json(read_json(*m1)), io::space_from_json(read_json(*m2)), V);
            emit_json(*common, amalgam_json(r));
        });
    }
    {
        auto sub = app.add_subcommand("socket-realize", "add one point satisfying a distance socket");
        auto common = std::make_shared<Common>();
        auto space = std::make_shared<std::string>();
        auto socket = std::make_shared<std::string>();
        auto values = std::make_shared<std::string>();
        auto label = std::make_shared<std::string>();
        sub->add_option("space", *space, "space JSON")->required();
        sub->add_option("socket", *socket, "socket JSON")->required();
        sub->add_option("-V,--values", *values, "value set JSON (default: the space's bound set)");
        sub->add_option("--label", *label, "label for the new point");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, space, socket, values, label] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*space));
            const DSocket s = io::socket_from_json(m, read_json(*socket));
            const ValueSet V = values_for(m, *values);
            const RealizeResult r =
                realize_socket(m, s, V, label->empty() ? std::nullopt : std::make_optional(*label));
            emit_json(*common, json{{"space", io::to_json(r.space)},
                                    {"new_index", r.new_point},
                                    {"new_label", r.space.label(r.new_point)}});
        });
    }
    {
        auto sub = app.add_subcommand("build-urysohn", "grow a finite approximant by realizing sockets");
        auto common = std::make_shared<Common>();
        auto values = std::make_shared<std::string>();
        auto seed_space = std::make_shared<std::string>();
        auto max_points = std::make_shared<std::size_t>();
        auto seed = std::make_shared<std::uint64_t>();
        auto log_path = std::make_shared<std::string>();
        sub->add_option("-V,--values", *values, "value set JSON")->required();
        sub->add_option("--max-points", *max_points, "point budget")->required();
        sub->add_option("--seed", *seed, "tier shuffle seed (mandatory: no hidden entropy)")->required();
        sub->add_option("--seed-space", *seed_space, "starting space JSON (default: one point)");
        sub->add_option("--log", *log_path, "write the step log (JSON lines) here instead of stderr");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, values, seed_space, max_points, seed, log_path] {
            const ValueSet V = io::value_set_from_json(read_json(*values));
            std::optional<FiniteMetricSpace> start;
            if (!seed_space->empty()) start = io::space_from_json(read_json(*seed_space));
            const UrysohnResult r = urysohn_approximant(V, start, *max_points, *seed);

            std::ostringstream lines;
            for (const auto& entry : r.log)
                lines << json{{"step", entry.step},
                              {"new_label", entry.new_label},
                              {"socket", io::to_json(r.space, entry.socket)}}
                             .dump()
                      << "\n";
            if (log_path->empty()) {
                std::cerr << lines.str();
            } else {
                std::ofstream log(*log_path);
                if (!log) throw UsageError("cannot write " + *log_path);
                log << lines.str();
            }
            emit_json(*common, json{{"space", io::to_json(r.space)},
                                    {"realized_prefix", r.realized_prefix},
                                    {"steps", r.log.size()}});
        });
    }
}

void register_ultra_commands(CLI::App& app) {
    {
        auto sub = app.add_subcommand("nerve", "ball tree of an ultrametric space");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto format = std::make_shared<std::string>("json");
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--format", *format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, format] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const NerveResult r = nerve(m);
            if (*format == "dot") {
                emit(*common, io::to_dot(r.tree));
                return;
            }
            json balls = json::array();
            for (const auto& ball : r.balls) balls.push_back(labels_json(m, ball));
            emit_json(*common, json{{"tree", io::to_json(r.tree)}, {"balls", std::move(balls)}});
        });
    }
    {
        auto sub = app.add_subcommand("tree2space", "leaf space of a valued tree");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        sub->add_option("tree", *path, "tree JSON (- = stdin)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path] {
            emit_json(*common, io::to_json(tree_to_space(io::tree_from_json(read_json(*path)))));
        });
    }
    {
        auto sub = app.add_subcommand("homog-check", "read homogeneity off the ball tree");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto is_tree = std::make_shared<bool>(false);
        sub->add_option("input", *path, "space JSON, or tree JSON with --tree")->required();
        sub->add_flag("--tree", *is_tree, "input is a tree, not a space");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, is_tree] {
            const ValuedTree tree =
                *is_tree ? io::tree_from_json(read_json(*path)) : nerve(io::space_from_json(read_json(*path))).tree;
            emit_json(*common, homogeneity_json(homogeneity_check(tree)));
        });
    }
    {
        auto sub = app.add_subcommand("omega-gen", "layered tuple space from weights and degrees");
        auto common = std::make_shared<Common>();
        auto weights = std::make_shared<std::string>();
        auto degrees = std::make_shared<std::string>();
        auto cap = std::make_shared<std::size_t>(3);
        auto size_limit = std::make_shared<std::size_t>(4096);
        sub->add_option("--weights", *weights, "comma-separated rationals, strictly decreasing")->required();
        sub->add_option("--degrees", *degrees, "comma-separated branch counts; inf = unbounded")->required();
        sub->add_option("--cap", *cap, "branches materialized for unbounded levels");
        sub->add_option("--size-limit", *size_limit, "refuse to build more tuples than this");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, weights, degrees, cap, size_limit] {
            OmegaSpec spec;
            spec.weights = rat_list_arg(*weights, "--weights");
            for (const std::string& tok : split_commas(*degrees)) {
                if (tok == "inf" || tok == "*") {
                    spec.degrees.push_back(std::nullopt);
                } else {
                    try {
                        spec.degrees.push_back(static_cast<std::size_t>(std::stoul(tok)));
                    } catch (const std::exception&) {
                        throw UsageError("--degrees: expected a count or inf, got \"" + tok + "\"");
                    }
                }
            }
            spec.unbounded_cap = *cap;
            emit_json(*common, io::to_json(omega_sequence_space(spec, *size_limit)));
        });
    }
    {
        auto sub = app.add_subcommand("indiv-report", "homogeneity, spectrum and degree report");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto cap = std::make_shared<std::size_t>(3);
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--cap", *cap, "degree that stands in for unbounded branching");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, cap] {
            const IndivisibilityReport r = indivisibility_report(io::space_from_json(read_json(*path)), *cap);
            json nodes = json::array();
            for (const auto& n : r.internal_nodes)
                nodes.push_back(json{{"node", n.node},
                                     {"value", n.value.str()},
                                     {"degree", n.degree},
                                     {"status", n.status}});
            emit_json(*common, json{{"homogeneity", homogeneity_json(r.homogeneity)},
                                    {"spectrum", rats_json(r.spectrum)},
                                    {"spectrum_dually_well_ordered", r.spectrum_dually_well_ordered},
                                    {"diameter", r.diameter.str()},
                                    {"diameter_attained", r.diameter_attained},
                                    {"internal_nodes", std::move(nodes)}});
        });
    }
    {
        auto sub = app.add_subcommand("greedy-mono", "monochromatic self-copy under a 2-coloring");
        auto common = std::make_shared<Common>();
        auto space = std::make_shared<std::string>();
        auto coloring = std::make_shared<std::string>();
        sub->add_option("space", *space, "space JSON")->required();
        sub->add_option("coloring", *coloring, "array of 0/1 in point order")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, space, coloring] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*space));
            const GreedyMonoResult r = greedy_monochromatic_embedding(m, coloring_from_json(read_json(*coloring)));
            if (r.ok()) {
                emit_json(*common, json{{"result", "embedding"},
                                        {"into_color", r.into_color},
                                        {"image", labels_json(m, r.embedding->image)}});
            } else {
                emit_json(*common, json{{"result", "stuck"}, {"stuck_ball", labels_json(m, *r.stuck_ball)}});
            }
        });
    }
}

void register_connect_commands(CLI::App& app) {
    {
        auto sub = app.add_subcommand("eps-comp", "components of the eps-closeness graph");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--eps", *eps, "edge threshold (rational)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, eps] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            emit_json(*common, io::to_json(m, eps_components(m, rat_arg(*eps, "--eps"))));
        });
    }
    {
        auto sub = app.add_subcommand("lambda", "component-diameter profile of a point");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto point = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--point", *point, "point label")->required();
        sub->add_option("--eps", *eps, "evaluate one scale instead of the whole profile");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, point, eps] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const std::size_t a = point_arg(m, *point, "--point");
            if (!eps->empty()) {
                const Rational e = rat_arg(*eps, "--eps");
                emit_json(*common, json{{"point", *point}, {"eps", e.str()}, {"value", lambda_eps(m, a, e).str()}});
                return;
            }
            const LambdaProfile profile = lambda(m, a);
            json rows = json::array();
            for (const auto& row : profile.rows)
                rows.push_back(json{{"eps", row.eps.str()}, {"value", row.value.str()}});
            emit_json(*common, json{{"point", *point}, {"value", profile.value.str()}, {"rows", std::move(rows)}});
        });
    }
    {
        auto sub = app.add_subcommand("dstar", "largest ultrametric below the distance");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path] {
            emit_json(*common, io::to_json(subdominant_ultrametric(io::space_from_json(read_json(*path)))));
        });
    }
    {
        auto sub = app.add_subcommand("cantor", "component counts per scale");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path] {
            const CantorReport r = cantor_report(io::space_from_json(read_json(*path)));
            json levels = json::array();
            for (const auto& level : r.levels)
                levels.push_back(json{{"eps", level.eps.str()},
                                      {"components", level.components},
                                      {"connected", level.connected}});
            emit_json(*common, json{{"cantor_connected", r.cantor_connected}, {"levels", std::move(levels)}});
        });
    }
}

void register_divide_commands(CLI::App& app) {
    {
        auto sub = app.add_subcommand("ring", "points in a half-open distance ring");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto center = std::make_shared<std::string>();
        auto lo = std::make_shared<std::string>();
        auto hi = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--center", *center, "center label")->required();
        sub->add_option("--lo", *lo, "inner radius (inclusive)")->required();
        sub->add_option("--hi", *hi, "outer radius (exclusive)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, center, lo, hi] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const auto points =
                ring(m, point_arg(m, *center, "--center"), rat_arg(*lo, "--lo"), rat_arg(*hi, "--hi"));
            emit_json(*common, json{{"points", labels_json(m, points)}});
        });
    }
    {
        auto sub = app.add_subcommand("stripes", "alternating rings inside an open ball");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto center = std::make_shared<std::string>();
        auto ell = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--center", *center, "center label")->required();
        sub->add_option("-l,--ell", *ell, "ball radius (rational)")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, center, ell] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const Stripes s = stripes(m, point_arg(m, *center, "--center"), rat_arg(*ell, "--ell"));
            emit_json(*common, json{{"even", labels_json(m, s.even)}, {"odd", labels_json(m, s.odd)}});
        });
    }
    {
        auto sub = app.add_subcommand("cover", "disjoint open balls covering the space");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto bound = std::make_shared<std::string>();
        auto order = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--bound", *bound, "every radius stays below half of this")->required();
        sub->add_option("--order", *order, "comma-separated labels: center enumeration order");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, bound, order] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            std::vector<std::size_t> indices;
            if (!order->empty())
                for (const std::string& label : split_commas(*order))
                    indices.push_back(point_arg(m, label, "--order"));
            const BallCover cover =
                ball_cover(m, rat_arg(*bound, "--bound"), order->empty() ? nullptr : &indices);
            emit_json(*common, json{{"centers", labels_json(m, cover.centers)}, {"radii", rats_json(cover.radii)}});
        });
    }
    {
        auto sub = app.add_subcommand("partition", "even/odd split from stripes over a ball cover");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto bound = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--bound", *bound, "cover radius bound")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, bound] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const BallCover cover = ball_cover(m, rat_arg(*bound, "--bound"));
            const Stripes s = divisibility_partition(m, cover);
            emit_json(*common,
                      json{{"cover", json{{"centers", labels_json(m, cover.centers)}, {"radii", rats_json(cover.radii)}}},
                           {"even", labels_json(m, s.even)},
                           {"odd", labels_json(m, s.odd)}});
        });
    }
    {
        auto sub = app.add_subcommand("unbounded-partition", "escalating ring construction from a start point");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto start = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--start", *start, "anchor label")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, start] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const UnboundedPartition up = unbounded_partition(m, point_arg(m, *start, "--start"));
            emit_json(*common, json{{"a_seq", labels_json(m, up.a_seq)},
                                    {"r_seq", rats_json(up.r_seq)},
                                    {"steps", up.steps},
                                    {"even", labels_json(m, up.even)},
                                    {"odd", labels_json(m, up.odd)}});
        });
    }
    {
        auto sub = app.add_subcommand("ultra-partition", "spectrum-radius ball split of an ultrametric space");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto center = std::make_shared<std::string>();
        auto radii = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("--center", *center, "first ball center label")->required();
        sub->add_option("--radii", *radii, "comma-separated radii, starting at 0, strictly increasing")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, center, radii] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const UltraSpecPartition sp =
                ultra_spec_partition(m, point_arg(m, *center, "--center"), rat_list_arg(*radii, "--radii"));
            emit_json(*common, json{{"centers", labels_json(m, sp.centers)},
                                    {"even", labels_json(m, sp.even)},
                                    {"odd", labels_json(m, sp.odd)}});
        });
    }
    {
        auto sub = app.add_subcommand("scatter", "delete sub-isolated points to a fixpoint");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto values = std::make_shared<std::string>();
        auto sizes = std::make_shared<std::string>("2");
        sub->add_option("space", *path, "space JSON (- = stdin)")->required();
        sub->add_option("-W,--values", *values, "pattern distance pool JSON")->required();
        sub->add_option("--pattern-sizes", *sizes, "comma-separated pattern sizes");
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, values, sizes] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const ValueSet W = io::value_set_from_json(read_json(*values));
            std::vector<std::size_t> pattern_sizes;
            for (const std::string& tok : split_commas(*sizes)) {
                try {
                    pattern_sizes.push_back(static_cast<std::size_t>(std::stoul(tok)));
                } catch (const std::exception&) {
                    throw UsageError("--pattern-sizes: expected a count, got \"" + tok + "\"");
                }
            }
            const ScatterResult r = scattered_fixpoint(m, W, pattern_sizes);
            json chain = json::array();
            for (const auto& stage : r.chain) chain.push_back(labels_json(m, stage));
            emit_json(*common, json{{"sub_scattered", r.sub_scattered}, {"chain", std::move(chain)}});
        });
    }
    {
        auto sub = app.add_subcommand("experiment", "does any block hold an isometric copy of the whole space");
        auto common = std::make_shared<Common>();
        auto path = std::make_shared<std::string>();
        auto partition = std::make_shared<std::string>();
        sub->add_option("space", *path, "space JSON")->required();
        sub->add_option("partition", *partition, "partition JSON")->required();
        sub->add_option("-o,--output", common->out, "output path (- = stdout)");
        sub->callback([common, path, partition] {
            const FiniteMetricSpace m = io::space_from_json(read_json(*path));
            const DivisibilityReport r = divisibility_experiment(m, io::partition_from_json(m, read_json(*partition)));
            json blocks = json::array();
            for (const auto& block : r.blocks)
                blocks.push_back(json{{"points", labels_json(m, block.points)},
                                      {"contains_copy", block.contains_copy},
                                      {"witness", block.witness ? labels_json(m, block.witness->image) : json(nullptr)}});
            emit_json(*common, json{{"divisible", r.divisible}, {"blocks", std::move(blocks)}});
        });
    }
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"finite metric spaces over a value set: checks, amalgams, trees, partitions"};
    app.require_subcommand(1);
    register_values_commands(app);
    register_space_commands(app);
    register_amalgam_commands(app);
    register_ultra_commands(app);
    register_connect_commands(app);
    register_divide_commands(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const io::JsonFormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SpaceError& e) {
        return domain_error(kind_name(e.kind), e);
    } catch (const AmalgamError& e) {
        return domain_error(kind_name(e.kind), e);
    } catch (const UltraError& e) {
        return domain_error(kind_name(e.kind), e);
    } catch (const DivideError& e) {
        return domain_error(kind_name(e.kind), e);
    } catch (const ValueSet::BadValueSet& e) {
        return domain_error(kind_name(e.kind), e);
    } catch (const NotInSet& e) {
        return domain_error("NotInSet", e);
    } catch (const OrderViolation& e) {
        return domain_error("OrderViolation", e);
    } catch (const std::invalid_argument& e) {
        return domain_error("InvalidArgument", e);
    } catch (const std::exception& e) {
        return domain_error("Internal", e);
    }
    return 0;
}

}  // namespace vmet::cli
